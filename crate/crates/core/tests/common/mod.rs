//! Test-only helpers: an independent Alexander polynomial from the Wirtinger
//! presentation, a Reidemeister move engine and small diagram generators.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use corkatlas_core::laurent::{determinant, LaurentPoly};
use corkatlas_core::linkdiag::{braid_closure, from_morse, Arc, Component, Crossing, MorseEvent, PDCode};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub fn load_pd(rel: &str) -> PDCode {
    let text = std::fs::read_to_string(fixture(rel)).unwrap();
    PDCode::parse(&text).unwrap()
}

/// Alexander polynomial of a knot from Fox calculus on the Wirtinger
/// presentation, normalized.
pub fn fox_alexander(pd: &PDCode) -> LaurentPoly {
    let xs = pd.crossings();
    if xs.is_empty() {
        return LaurentPoly::one();
    }
    let arcs: Vec<Arc> = pd.components().iter().flat_map(|c| c.arcs.iter().copied()).collect();
    let mut parent: HashMap<Arc, Arc> = arcs.iter().map(|&a| (a, a)).collect();
    fn find(p: &mut HashMap<Arc, Arc>, mut a: Arc) -> Arc {
        while p[&a] != a {
            a = p[&a];
        }
        a
    }
    for x in xs {
        let (b, d) = (find(&mut parent, x.arcs[1]), find(&mut parent, x.arcs[3]));
        parent.insert(b, d);
    }
    let mut gens: Vec<Arc> = arcs.iter().map(|&a| find(&mut parent, a)).collect();
    gens.sort();
    gens.dedup();
    let n = gens.len();
    if n == 1 {
        return LaurentPoly::one();
    }
    let idx: HashMap<Arc, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let t = LaurentPoly::t();
    let one = LaurentPoly::one();
    let mut rows = Vec::new();
    for x in xs {
        let mut row = vec![LaurentPoly::zero(); n];
        let o = idx[&find(&mut parent, x.arcs[1])];
        let a = idx[&find(&mut parent, x.arcs[0])];
        let c = idx[&find(&mut parent, x.arcs[2])];
        let (wa, wc, wo) = if x.sign > 0 {
            (t.clone(), -&one, &one - &t)
        } else {
            (one.clone(), -&t, &t - &one)
        };
        row[a] = &row[a] + &wa;
        row[c] = &row[c] + &wc;
        row[o] = &row[o] + &wo;
        rows.push(row);
    }
    let minor: Vec<Vec<LaurentPoly>> = rows[..n - 1].iter().map(|r| r[..n - 1].to_vec()).collect();
    determinant(&minor).normalize_alexander().unwrap()
}

fn max_arc(pd: &PDCode) -> Arc {
    pd.components().iter().flat_map(|c| c.arcs.iter().copied()).max().unwrap_or(0)
}

fn head_slot(pd: &PDCode, arc: Arc) -> Option<(usize, usize)> {
    pd.crossings().iter().enumerate().find_map(|(xi, x)| {
        (0..4).find(|&s| x.arcs[s] == arc && x.slot_is_incoming(s)).map(|s| (xi, s))
    })
}

fn tail_slot(pd: &PDCode, arc: Arc) -> Option<(usize, usize)> {
    pd.crossings().iter().enumerate().find_map(|(xi, x)| {
        (0..4).find(|&s| x.arcs[s] == arc && !x.slot_is_incoming(s)).map(|s| (xi, s))
    })
}

fn insert_after(comps: &[Component], arc: Arc, new: &[Arc]) -> Vec<Component> {
    comps
        .iter()
        .map(|c| {
            let mut arcs = Vec::new();
            for &a in &c.arcs {
                arcs.push(a);
                if a == arc {
                    arcs.extend_from_slice(new);
                }
            }
            Component {
                name: c.name.clone(),
                arcs,
            }
        })
        .collect()
}

/// Builds a crossing from the travel directions of the two strands and
/// their in/out labels. Directions are compass unit vectors.
fn local_crossing(under: (Arc, Arc, (i64, i64)), over: (Arc, Arc, (i64, i64))) -> Crossing {
    let (u_in, u_out, du) = under;
    let (o_in, o_out, d_o) = over;
    let angle = |v: (i64, i64)| match v {
        (1, 0) => 0,
        (0, 1) => 1,
        (-1, 0) => 2,
        _ => 3,
    };
    let neg = |v: (i64, i64)| (-v.0, -v.1);
    let mut slots = [0; 4];
    slots[angle(neg(du))] = u_in;
    slots[angle(du)] = u_out;
    slots[angle(neg(d_o))] = o_in;
    slots[angle(d_o)] = o_out;
    let start = angle(neg(du));
    let arcs = [0, 1, 2, 3].map(|k| slots[(start + k) % 4]);
    let sign = if d_o.0 * du.1 - d_o.1 * du.0 > 0 { 1 } else { -1 };
    Crossing::new(arcs, sign)
}

/// Reidemeister I: adds a kink of the given variant (0..4) on `arc`.
pub fn r1(pd: &PDCode, arc: Arc, variant: usize) -> Option<PDCode> {
    let (hx, hs) = head_slot(pd, arc)?;
    let top = max_arc(pd);
    let (x1, x2, x3) = (arc, top + 1, top + 2);
    let mut xs = pd.crossings().to_vec();
    xs[hx].arcs[hs] = x3;
    xs.push(match variant % 4 {
        0 => Crossing::new([x1, x3, x2, x2], 1),
        1 => Crossing::new([x1, x2, x2, x3], -1),
        2 => Crossing::new([x2, x2, x3, x1], 1),
        _ => Crossing::new([x2, x1, x3, x2], -1),
    });
    let comps = insert_after(pd.components(), arc, &[x2, x3]);
    Some(PDCode::new(xs, comps).expect("R1 produces a valid diagram"))
}

/// Reidemeister II: pushes a finger of the arc of dart `dx` across a face
/// over or under the arc of dart `dy`; both darts must lie on that face.
pub fn r2(pd: &PDCode, dx: (Arc, bool), dy: (Arc, bool), x_over: bool) -> PDCode {
    let (x, fx) = dx;
    let (y, fy) = dy;
    assert_ne!(x, y);
    let top = max_arc(pd);
    let (xa, xb, xc) = (x, top + 1, top + 2);
    let (ya, yb, yc) = (y, top + 3, top + 4);
    let mut xs = pd.crossings().to_vec();
    let (hx, hs) = head_slot(pd, x).unwrap();
    xs[hx].arcs[hs] = xc;
    let (hy, hys) = head_slot(pd, y).unwrap();
    xs[hy].arcs[hys] = yc;
    // x runs along the bottom of the face, y along the top; the finger rises
    // at the left position p1 and comes back down at p2.
    let x_east = fx;
    let y_east = !fy;
    let x_first_p1 = x_east;
    let y_first_p1 = y_east;
    let mut new = Vec::new();
    for p1 in [true, false] {
        let x_first = p1 == x_first_p1;
        let x_dir = if x_first { (0, 1) } else { (0, -1) };
        let (xi, xo) = if x_first { (xa, xb) } else { (xb, xc) };
        let y_first = p1 == y_first_p1;
        let y_dir = if y_east { (1, 0) } else { (-1, 0) };
        let (yi, yo) = if y_first { (ya, yb) } else { (yb, yc) };
        new.push(if x_over {
            local_crossing((yi, yo, y_dir), (xi, xo, x_dir))
        } else {
            local_crossing((xi, xo, x_dir), (yi, yo, y_dir))
        });
    }
    xs.extend(new);
    let comps = insert_after(pd.components(), x, &[xb, xc]);
    let comps = insert_after(&comps, y, &[yb, yc]);
    PDCode::new(xs, comps).expect("R2 produces a valid diagram")
}

/// Reidemeister III across a triangular face, when one of its strands is over
/// at both of its crossings and another is under at both.
pub fn r3(pd: &PDCode, face: &[(Arc, bool)]) -> Option<PDCode> {
    if face.len() != 3 {
        return None;
    }
    let xs = pd.crossings();
    let mut strands = Vec::new();
    for &(e, _) in face {
        let (t, ts) = tail_slot(pd, e)?;
        let (h, hs) = head_slot(pd, e)?;
        let over_t = ts != 2;
        let over_h = hs != 0;
        strands.push((t, ts, h, hs, over_t, over_h));
    }
    let mut cs: Vec<usize> = strands.iter().flat_map(|s| [s.0, s.2]).collect();
    cs.sort();
    cs.dedup();
    if cs.len() != 3 {
        return None;
    }
    let kinds: Vec<(bool, bool)> = strands.iter().map(|s| (s.4, s.5)).collect();
    let all_over = kinds.iter().filter(|k| **k == (true, true)).count();
    let all_under = kinds.iter().filter(|k| **k == (false, false)).count();
    if all_over != 1 || all_under != 1 {
        return None;
    }
    let mut out = xs.to_vec();
    for &(t, ts, h, hs, _, _) in &strands {
        // The strand passes slots (ts+2, ts) at its first crossing and
        // (hs, hs+2) at its second. Its crossings swap order along it.
        let in_s = xs[t].arcs[(ts + 2) % 4];
        let mid = xs[t].arcs[ts];
        let out_s = xs[h].arcs[(hs + 2) % 4];
        out[t].arcs[(ts + 2) % 4] = mid;
        out[t].arcs[ts] = out_s;
        out[h].arcs[hs] = in_s;
        out[h].arcs[(hs + 2) % 4] = mid;
    }
    Some(PDCode::new(out, pd.components().to_vec()).expect("R3 produces a valid diagram"))
}

/// Renumbers arcs by a bijection and permutes the crossing list.
pub fn relabel(pd: &PDCode, shift: u32, rotate: usize) -> PDCode {
    let map = |a: Arc| a * 3 + shift;
    let mut xs: Vec<Crossing> = pd
        .crossings()
        .iter()
        .map(|c| Crossing::new(c.arcs.map(map), c.sign))
        .collect();
    if !xs.is_empty() {
        let k = rotate % xs.len();
        xs.rotate_left(k);
    }
    let comps = pd
        .components()
        .iter()
        .map(|c| Component {
            name: c.name.clone(),
            arcs: c.arcs.iter().map(|&a| map(a)).collect(),
        })
        .collect();
    PDCode::new(xs, comps).unwrap()
}

/// Applies a move chosen by `(kind, a, b, variant)`; returns the input when
/// the chosen move does not apply.
pub fn apply_move(pd: &PDCode, kind: u8, a: usize, b: usize, variant: usize) -> PDCode {
    let arcs: Vec<Arc> = pd.components().iter().flat_map(|c| c.arcs.iter().copied()).collect();
    match kind % 3 {
        0 => {
            if pd.crossings().is_empty() {
                return pd.clone();
            }
            r1(pd, arcs[a % arcs.len()], variant).unwrap_or_else(|| pd.clone())
        }
        1 => {
            if pd.crossings().is_empty() {
                return pd.clone();
            }
            let faces = pd.faces();
            let face = &faces[a % faces.len()];
            if face.len() < 2 {
                return pd.clone();
            }
            let i = b % face.len();
            let j = (i + 1 + variant % (face.len() - 1)) % face.len();
            if face[i].0 == face[j].0 {
                return pd.clone();
            }
            r2(pd, face[i], face[j], variant % 2 == 0)
        }
        _ => {
            let faces = pd.faces();
            let tri: Vec<&Vec<(Arc, bool)>> = faces.iter().filter(|f| f.len() == 3).collect();
            if tri.is_empty() {
                return pd.clone();
            }
            r3(pd, tri[a % tri.len()]).unwrap_or_else(|| pd.clone())
        }
    }
}

/// Plat closure of a braid word on `2k` strands: caps pair neighbours at the
/// top and cups pair them at the bottom.
pub fn plat_closure(word: &[i32], k: usize) -> PDCode {
    let mut ev: Vec<MorseEvent> = (0..k).map(|i| MorseEvent::Cap(2 * i)).collect();
    ev.extend(word.iter().map(|&g| MorseEvent::Cross {
        pos: g.unsigned_abs() as usize - 1,
        over_left: g < 0,
    }));
    ev.extend((0..k).rev().map(|i| MorseEvent::Cup(2 * i)));
    from_morse(&ev).unwrap()
}

pub fn closure(word: &[i32], n: usize) -> PDCode {
    braid_closure(word, n).unwrap()
}
