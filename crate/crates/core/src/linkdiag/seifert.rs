//! Seifert matrices of knot diagrams.
//!
//! The diagram is first brought into closed-braid form by Vogel moves
//! (Reidemeister II moves that merge incoherent Seifert circles). The braid
//! word is then read off and the Seifert matrix of the canonical Seifert
//! surface of the closed braid is written down from the crossing data.

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::pd::{Arc, Component, Crossing, PDCode};
use crate::error::LinkError;
use crate::laurent::{determinant, LaurentPoly};

/// Integer Seifert matrix together with the genus of the surface it comes
/// from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    genus: usize,
}

impl SeifertMatrix {
    /// Wraps a square matrix of even dimension.
    pub fn new(entries: Vec<Vec<i64>>) -> Self {
        let dim = entries.len();
        assert!(entries.iter().all(|r| r.len() == dim), "Seifert matrix must be square");
        Self {
            genus: dim / 2,
            entries,
        }
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
            .collect()
    }

    /// `det(t V - V^T)` before normalization.
    pub fn alexander_determinant(&self) -> LaurentPoly {
        let n = self.dim();
        let m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        &LaurentPoly::monomial(self.entries[i][j], 1)
                            - &LaurentPoly::constant(self.entries[j][i])
                    })
                    .collect()
            })
            .collect();
        determinant(&m)
    }

    /// Signature of the symmetrized form `V + V^T`.
    pub fn signature(&self) -> i64 {
        let n = self.dim();
        let sym: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer(BigInt::from(self.entries[i][j] + self.entries[j][i])))
                    .collect()
            })
            .collect();
        symmetric_signature(sym)
    }
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
fn symmetric_signature(mut a: Vec<Vec<BigRational>>) -> i64 {
    let mut sig = 0i64;
    loop {
        let n = a.len();
        if n == 0 {
            return sig;
        }
        let pivot = (0..n).find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => match (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
                // Replace basis vector i by e_i + e_j to create a nonzero diagonal.
                Some((i, j)) => {
                    for k in 0..n {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..n {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                    i
                }
                None => return sig,
            },
        };
        let d = a[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        a = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| &a[i][j] - &(&a[i][p] * &a[p][j] / &d))
                    .collect()
            })
            .collect();
    }
}

/// Seifert circles of a diagram: each circle is the cyclic list of arcs it
/// runs through, and `circle_of` maps every arc to its circle.
struct Circles {
    circles: Vec<Vec<Arc>>,
    circle_of: HashMap<Arc, usize>,
}

fn seifert_circles(pd: &PDCode) -> Circles {
    // Oriented smoothing: the incoming under-strand turns into the outgoing
    // over-strand, the incoming over-strand into the outgoing under-strand.
    let mut next: HashMap<Arc, Arc> = HashMap::new();
    for x in pd.crossings() {
        next.insert(x.arcs[0], x.arcs[x.over_out_slot()]);
        next.insert(x.arcs[x.over_in_slot()], x.arcs[2]);
    }
    let mut circles = Vec::new();
    let mut circle_of = HashMap::new();
    for comp in pd.components() {
        for &start in &comp.arcs {
            if circle_of.contains_key(&start) {
                continue;
            }
            let id = circles.len();
            let mut circle = Vec::new();
            let mut a = start;
            loop {
                circle.push(a);
                circle_of.insert(a, id);
                a = match next.get(&a) {
                    Some(&b) => b,
                    None => break,
                };
                if a == start {
                    break;
                }
            }
            circles.push(circle);
        }
    }
    Circles { circles, circle_of }
}

/// Finds a face with two darts on different Seifert circles that run the
/// same way around the face.
fn find_vogel_pair(pd: &PDCode, circles: &Circles) -> Option<(Arc, Arc, bool)> {
    for face in pd.faces() {
        for (i, &(e1, o1)) in face.iter().enumerate() {
            for &(e2, o2) in &face[i + 1..] {
                if o1 == o2 && circles.circle_of[&e1] != circles.circle_of[&e2] {
                    return Some((e1, e2, o1));
                }
            }
        }
    }
    None
}

/// Pushes a finger of arc `x` over arc `y` across the face they share,
/// creating two crossings. `forward` says whether both arcs run along the
/// face boundary (face on their left) or both against it.
fn vogel_move(pd: &PDCode, x: Arc, y: Arc, forward: bool) -> Result<PDCode, LinkError> {
    let top = pd
        .components()
        .iter()
        .flat_map(|c| c.arcs.iter().copied())
        .max()
        .unwrap_or(0);
    let (xa, xb, xc) = (x, top + 1, top + 2);
    let (ya, yb, yc) = (y, top + 3, top + 4);
    let mut crossings: Vec<Crossing> = pd
        .crossings()
        .iter()
        .map(|c| {
            let mut c = *c;
            for slot in 0..4 {
                if c.slot_is_incoming(slot) {
                    if c.arcs[slot] == x {
                        c.arcs[slot] = xc;
                    } else if c.arcs[slot] == y {
                        c.arcs[slot] = yc;
                    }
                }
            }
            c
        })
        .collect();
    if forward {
        crossings.push(Crossing::new([yb, xb, yc, xa], 1));
        crossings.push(Crossing::new([ya, xb, yb, xc], -1));
    } else {
        crossings.push(Crossing::new([ya, xc, yb, xb], 1));
        crossings.push(Crossing::new([yb, xa, yc, xb], -1));
    }
    let components = pd
        .components()
        .iter()
        .map(|c| {
            let mut arcs = Vec::with_capacity(c.arcs.len() + 2);
            for &a in &c.arcs {
                arcs.push(a);
                if a == x {
                    arcs.extend([xb, xc]);
                } else if a == y {
                    arcs.extend([yb, yc]);
                }
            }
            Component {
                name: c.name.clone(),
                arcs,
            }
        })
        .collect();
    PDCode::new(crossings, components)
}

/// Rewrites a knot diagram into closed-braid form.
pub fn braid_form(pd: &PDCode) -> Result<PDCode, LinkError> {
    let mut current = pd.clone();
    let limit = 4 * pd.crossings().len() * pd.crossings().len() + 16;
    for _ in 0..limit {
        let circles = seifert_circles(&current);
        match find_vogel_pair(&current, &circles) {
            None => return Ok(current),
            Some((x, y, fwd)) => current = vogel_move(&current, x, y, fwd)?,
        }
    }
    Err(LinkError::InvalidDiagram("Vogel moves did not terminate".into()))
}

/// A closed braid read off a braid-form diagram: the crossing indices in
/// word order and the column (1-based generator index) of each crossing.
struct BraidReading {
    word: Vec<usize>,
    column: Vec<usize>,
}

fn read_braid(pd: &PDCode) -> Result<BraidReading, LinkError> {
    let fail = |msg: &str| LinkError::InvalidDiagram(format!("braid reading failed: {msg}"));
    let circles = seifert_circles(pd);
    let xs = pd.crossings();
    let n = circles.circles.len();
    // For each crossing, the circle with its neighbour on the right (outer)
    // and the one with its neighbour on the left (inner).
    let mut inner_of: Vec<Option<usize>> = vec![None; n];
    let mut is_inner = vec![false; n];
    let mut outer_inner = Vec::with_capacity(xs.len());
    for x in xs {
        let under_side = circles.circle_of[&x.arcs[0]];
        let over_side = circles.circle_of[&x.arcs[2]];
        let (outer, inner) = if x.sign > 0 {
            (over_side, under_side)
        } else {
            (under_side, over_side)
        };
        if outer == inner {
            return Err(fail("crossing joins a Seifert circle to itself"));
        }
        match inner_of[outer] {
            Some(i) if i != inner => return Err(fail("Seifert circles are not nested")),
            _ => inner_of[outer] = Some(inner),
        }
        is_inner[inner] = true;
        outer_inner.push((outer, inner));
    }
    let roots: Vec<usize> = (0..n).filter(|&c| !is_inner[c]).collect();
    if roots.len() != 1 {
        return Err(fail("Seifert circles do not form a single nest"));
    }
    let mut order = vec![roots[0]];
    while let Some(i) = inner_of[*order.last().unwrap()] {
        if order.contains(&i) {
            return Err(fail("Seifert circles are nested cyclically"));
        }
        order.push(i);
    }
    if order.len() != n {
        return Err(fail("diagram is not connected"));
    }
    let mut level = vec![0usize; n];
    for (k, &c) in order.iter().enumerate() {
        level[c] = k + 1;
    }
    let column: Vec<usize> = outer_inner.iter().map(|&(o, _)| level[o]).collect();
    let mut head: HashMap<Arc, usize> = HashMap::new();
    for (xi, x) in xs.iter().enumerate() {
        head.insert(x.arcs[0], xi);
        head.insert(x.arcs[x.over_in_slot()], xi);
    }
    // Chains in word order, which runs against the orientation of the circles.
    let mut chains: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (k, &c) in order.iter().enumerate() {
        let mut seq: Vec<usize> = circles.circles[c].iter().map(|a| head[a]).collect();
        seq.reverse();
        let start = if k == 0 {
            0
        } else {
            let prev = &chains[k - 1];
            let first = prev
                .iter()
                .copied()
                .find(|&xi| column[xi] == k)
                .ok_or_else(|| fail("empty column"))?;
            seq.iter()
                .position(|&xi| xi == first)
                .ok_or_else(|| fail("column crossing missing from circle"))?
        };
        seq.rotate_left(start);
        chains.push(seq);
    }
    let m = xs.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut indeg = vec![0usize; m];
    for chain in &chains {
        for w in chain.windows(2) {
            if succ[w[0]].insert(w[1]) {
                indeg[w[1]] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> = (0..m).filter(|&i| indeg[i] == 0).map(Reverse).collect();
    let mut word = Vec::with_capacity(m);
    while let Some(Reverse(i)) = heap.pop() {
        word.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                heap.push(Reverse(j));
            }
        }
    }
    if word.len() != m {
        return Err(fail("crossing order along the circles is cyclic"));
    }
    Ok(BraidReading { word, column })
}

/// Seifert matrix of the canonical surface of a closed braid, given the
/// crossing signs in word order and the column of each crossing.
///
/// Generators are the loops through two consecutive crossings of one column.
fn braid_seifert_matrix(signs: &[i64], columns: &[usize]) -> Vec<Vec<i64>> {
    let max_col = columns.iter().copied().max().unwrap_or(0);
    let mut gens: Vec<(usize, usize, usize)> = Vec::new();
    for col in 1..=max_col {
        let pos: Vec<usize> = (0..columns.len()).filter(|&k| columns[k] == col).collect();
        for w in pos.windows(2) {
            gens.push((col, w[0], w[1]));
        }
    }
    let g = gens.len();
    let mut v = vec![vec![0i64; g]; g];
    for (x, &(c, j, k)) in gens.iter().enumerate() {
        v[x][x] = -(signs[j] + signs[k]) / 2;
        for (y, &(c2, j2, k2)) in gens.iter().enumerate() {
            if c2 == c && j2 == k {
                if signs[k] > 0 {
                    v[x][y] = 1;
                } else {
                    v[y][x] = -1;
                }
            } else if c2 == c + 1 {
                if j < j2 && j2 < k && k < k2 {
                    v[x][y] = -1;
                } else if j2 < j && j < k2 && k2 < k {
                    v[x][y] = 1;
                }
            }
        }
    }
    v
}

/// Seifert matrix of a knot diagram via Seifert's algorithm on a braided
/// representative.
pub fn seifert_matrix(pd: &PDCode) -> Result<SeifertMatrix, LinkError> {
    let comps = pd.components().len();
    if comps != 1 {
        return Err(LinkError::NotAKnot(comps));
    }
    if pd.crossings().is_empty() {
        return Ok(SeifertMatrix::new(Vec::new()));
    }
    let braided = braid_form(pd)?;
    let reading = read_braid(&braided)?;
    let signs: Vec<i64> = reading
        .word
        .iter()
        .map(|&xi| i64::from(braided.crossings()[xi].sign))
        .collect();
    let columns: Vec<usize> = reading.word.iter().map(|&xi| reading.column[xi]).collect();
    Ok(SeifertMatrix::new(braid_seifert_matrix(&signs, &columns)))
}

/// Normalized Alexander polynomial `det(t V - V^T)` of a knot diagram.
pub fn alexander(pd: &PDCode) -> Result<LaurentPoly, LinkError> {
    let v = seifert_matrix(pd)?;
    Ok(v.alexander_determinant().normalize_alexander()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkdiag::morse::braid_closure;

    #[test]
    fn right_trefoil_matrix() {
        let pd = braid_closure(&[1, 1, 1], 2).unwrap();
        let v = seifert_matrix(&pd).unwrap();
        assert_eq!(v.entries(), &[vec![-1, 1], vec![0, -1]]);
        assert_eq!(v.signature(), -2);
        assert_eq!(alexander(&pd).unwrap(), LaurentPoly::from_pairs(&[(-1, 1), (0, -1), (1, 1)]));
    }

    #[test]
    fn unknot_has_empty_matrix() {
        let v = seifert_matrix(&PDCode::unknot()).unwrap();
        assert_eq!(v.dim(), 0);
        assert_eq!(alexander(&PDCode::unknot()).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn links_are_rejected() {
        let pd = braid_closure(&[1, 1], 2).unwrap();
        assert_eq!(seifert_matrix(&pd), Err(LinkError::NotAKnot(2)));
    }

    #[test]
    fn signature_of_indefinite_forms() {
        let hyperbolic = SeifertMatrix::new(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(hyperbolic.signature(), 0);
    }
}
