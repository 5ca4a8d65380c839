//! Kirby diagrams held as algebraic data, with the moves acting on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::affine::{Affine, Params};
use crate::error::{KirbyError, ParseError};
use crate::smith::{cokernel, determinant, AbelianGroup};

/// A framed 2-handle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHandle {
    pub name: String,
    pub framing: Affine,
    /// For each 1-handle, the signed sequence of passes through its
    /// spanning disk, in the order met along the attaching circle.
    pub passes: Vec<Vec<i8>>,
    /// Fixture metadata: the attaching circle is an unknot.
    pub unknot: bool,
}

impl TwoHandle {
    pub fn algebraic_passes(&self, one_handle: usize) -> i64 {
        self.passes[one_handle].iter().map(|&s| i64::from(s)).sum()
    }

    pub fn geometric_passes(&self, one_handle: usize) -> usize {
        self.passes[one_handle].len()
    }
}

/// One-handles as dotted circles, 2-handles with framings and pass data,
/// and the pairwise linking numbers of 2-handles.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KirbyDiagram {
    one_handles: Vec<String>,
    two_handles: Vec<TwoHandle>,
    /// Symmetric, zero on the diagonal; the framing plays the diagonal role.
    linking: Vec<Vec<Affine>>,
    comments: Vec<String>,
}

/// Homological summary of a diagram at fixed parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyPresentation {
    pub h1: AbelianGroup,
    pub h2_rank: usize,
    /// Order of `H1` of the boundary; `None` when infinite.
    pub boundary_order: Option<BigInt>,
    pub mazur_shape: bool,
}

impl HomologyPresentation {
    pub fn is_contractible(&self) -> bool {
        self.h1.is_trivial() && self.h2_rank == 0
    }

    pub fn boundary_is_homology_sphere(&self) -> bool {
        self.boundary_order == Some(BigInt::from(1))
    }
}

impl fmt::Display for HomologyPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = match &self.boundary_order {
            Some(o) => o.to_string(),
            None => "infinite".to_string(),
        };
        write!(f, "H1={} H2={} boundary_order={order} mazur_shape={}", self.h1, self.h2_rank, self.mazur_shape)
    }
}

impl KirbyDiagram {
    /// The empty diagram, presenting the 4-ball.
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn one_handles(&self) -> &[String] {
        &self.one_handles
    }

    pub fn two_handles(&self) -> &[TwoHandle] {
        &self.two_handles
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    fn name_taken(&self, name: &str) -> bool {
        self.one_handles.iter().any(|h| h == name) || self.two_handles.iter().any(|h| h.name == name)
    }

    pub fn add_one_handle(&mut self, name: &str) -> Result<(), KirbyError> {
        if self.name_taken(name) {
            return Err(KirbyError::Invalid(format!("handle name '{name}' is used twice")));
        }
        self.one_handles.push(name.to_string());
        for h in &mut self.two_handles {
            h.passes.push(Vec::new());
        }
        Ok(())
    }

    pub fn add_two_handle(&mut self, name: &str, framing: Affine, unknot: bool) -> Result<(), KirbyError> {
        if self.name_taken(name) {
            return Err(KirbyError::Invalid(format!("handle name '{name}' is used twice")));
        }
        self.two_handles.push(TwoHandle {
            name: name.to_string(),
            framing,
            passes: vec![Vec::new(); self.one_handles.len()],
            unknot,
        });
        for row in &mut self.linking {
            row.push(Affine::zero());
        }
        self.linking.push(vec![Affine::zero(); self.two_handles.len()]);
        Ok(())
    }

    pub fn set_passes(&mut self, two: &str, one: &str, passes: Vec<i8>) -> Result<(), KirbyError> {
        if passes.iter().any(|&s| s != 1 && s != -1) {
            return Err(KirbyError::Invalid("pass signs must be +1 or -1".into()));
        }
        let j = self.one_index(one)?;
        let i = self.two_index(two)?;
        self.two_handles[i].passes[j] = passes;
        Ok(())
    }

    pub fn set_linking(&mut self, a: &str, b: &str, lk: Affine) -> Result<(), KirbyError> {
        let i = self.two_index(a)?;
        let j = self.two_index(b)?;
        if i == j {
            return Err(KirbyError::Invalid(format!("linking of '{a}' with itself is its framing")));
        }
        self.linking[i][j] = lk.clone();
        self.linking[j][i] = lk;
        Ok(())
    }

    pub fn two_index(&self, name: &str) -> Result<usize, KirbyError> {
        self.two_handles
            .iter()
            .position(|h| h.name == name)
            .ok_or_else(|| KirbyError::NotTwoHandle(name.to_string()))
    }

    pub fn one_index(&self, name: &str) -> Result<usize, KirbyError> {
        self.one_handles
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| KirbyError::NotOneHandle(name.to_string()))
    }

    pub fn two_handle(&self, name: &str) -> Result<&TwoHandle, KirbyError> {
        Ok(&self.two_handles[self.two_index(name)?])
    }

    pub fn linking(&self, a: &str, b: &str) -> Result<Affine, KirbyError> {
        let i = self.two_index(a)?;
        let j = self.two_index(b)?;
        Ok(self.q_entry(i, j))
    }

    /// Entry of the framing/linking matrix, with framings on the diagonal.
    fn q_entry(&self, i: usize, j: usize) -> Affine {
        if i == j {
            self.two_handles[i].framing.clone()
        } else {
            self.linking[i][j].clone()
        }
    }

    /// Slides 2-handle `slider` over 2-handle `over` along a band of sign `s`.
    pub fn handle_slide(&self, slider: &str, over: &str, s: i8) -> Result<Self, KirbyError> {
        let i = self.two_index(slider)?;
        let j = self.two_index(over)?;
        if i == j {
            return Err(KirbyError::Invalid(format!("cannot slide '{slider}' over itself")));
        }
        if s != 1 && s != -1 {
            return Err(KirbyError::Invalid("slide sign must be +1 or -1".into()));
        }
        let s64 = i64::from(s);
        let mut out = self.clone();
        let f = &(&self.q_entry(i, i) + &self.q_entry(j, j)) + &self.q_entry(i, j).scale_int(2 * s64);
        out.two_handles[i].framing = f;
        for k in 0..self.two_handles.len() {
            if k == i {
                continue;
            }
            let v = &self.q_entry(i, k) + &self.q_entry(j, k).scale_int(s64);
            out.linking[i][k] = v.clone();
            out.linking[k][i] = v;
        }
        for (p, q) in out.two_handles[i].passes.iter_mut().zip(&self.two_handles[j].passes) {
            if s > 0 {
                p.extend(q.iter().copied());
            } else {
                p.extend(q.iter().rev().map(|&x| -x));
            }
        }
        out.two_handles[i].unknot = false;
        Ok(out)
    }

    /// Adds an unknotted `sign`-framed 2-handle, unlinked from everything.
    pub fn blow_up(&self, sign: i8, name: &str) -> Result<Self, KirbyError> {
        if sign != 1 && sign != -1 {
            return Err(KirbyError::Invalid("blow-up sign must be +1 or -1".into()));
        }
        let mut out = self.clone();
        out.add_two_handle(name, Affine::int(i64::from(sign)), true)?;
        Ok(out)
    }

    /// A fresh handle name with the given prefix.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| !self.name_taken(n))
            .expect("unbounded search")
    }

    /// Removes an unknotted `±1`-framed 2-handle with no passes.
    pub fn blow_down(&self, name: &str) -> Result<Self, KirbyError> {
        let e = self.two_index(name)?;
        let fail = |why: &str| Err(KirbyError::NotBlowDownable(name.to_string(), why.to_string()));
        let h = &self.two_handles[e];
        let eps = match h.framing.as_constant() {
            Some(v) if v == 1.into() => 1,
            Some(v) if v == (-1).into() => -1,
            _ => return fail("framing is not a constant +1 or -1"),
        };
        if !h.unknot {
            return fail("attaching circle is not marked as an unknot");
        }
        if h.passes.iter().any(|p| !p.is_empty()) {
            return fail("attaching circle passes through a 1-handle");
        }
        let n = self.two_handles.len();
        let mut out = self.clone();
        for k in 0..n {
            if k == e {
                continue;
            }
            for l in k..n {
                if l == e {
                    continue;
                }
                let prod = match self.q_entry(k, e).checked_mul(&self.q_entry(l, e)) {
                    Some(p) => p,
                    None => return fail("linking numbers with it are not constant"),
                };
                let v = &self.q_entry(k, l) - &prod.scale_int(eps);
                if k == l {
                    out.two_handles[k].framing = v;
                } else {
                    out.linking[k][l] = v.clone();
                    out.linking[l][k] = v;
                }
            }
        }
        out.remove_two_handle(e);
        Ok(out)
    }

    fn remove_two_handle(&mut self, i: usize) {
        self.two_handles.remove(i);
        self.linking.remove(i);
        for row in &mut self.linking {
            row.remove(i);
        }
    }

    /// Cancels a 1-handle against a 2-handle passing through it exactly once.
    /// Other 2-handles are first slid over the cancelling 2-handle until they
    /// pass through the 1-handle algebraically zero times.
    pub fn cancel_pair(&self, one: &str, two: &str) -> Result<Self, KirbyError> {
        let j = self.one_index(one)?;
        let i = self.two_index(two)?;
        let passes = &self.two_handles[i].passes[j];
        if passes.len() != 1 {
            return Err(KirbyError::NotCancellable(
                one.to_string(),
                two.to_string(),
                format!("'{two}' passes through '{one}' {} times geometrically", passes.len()),
            ));
        }
        let p = passes[0];
        let mut out = self.clone();
        let others: Vec<String> = self
            .two_handles
            .iter()
            .filter(|h| h.name != two)
            .map(|h| h.name.clone())
            .collect();
        for k in others {
            let a = out.two_handle(&k)?.algebraic_passes(j);
            let s = if a * i64::from(p) > 0 { -1 } else { 1 };
            for _ in 0..a.abs() {
                out = out.handle_slide(&k, two, s)?;
            }
        }
        let i = out.two_index(two)?;
        out.remove_two_handle(i);
        out.one_handles.remove(j);
        for h in &mut out.two_handles {
            h.passes.remove(j);
        }
        Ok(out)
    }

    /// Integer framing/linking matrix at the given parameters.
    pub fn linking_matrix(&self, params: &Params) -> Result<Vec<Vec<i64>>, KirbyError> {
        let n = self.two_handles.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.q_entry(i, j).eval_int(params)).collect())
            .collect()
    }

    /// Algebraic pass counts, one row per 2-handle.
    pub fn pass_matrix(&self) -> Vec<Vec<i64>> {
        self.two_handles
            .iter()
            .map(|h| (0..self.one_handles.len()).map(|j| h.algebraic_passes(j)).collect())
            .collect()
    }

    /// Homology of the 4-manifold and the order of `H1` of its boundary.
    pub fn homology_presentation(&self, params: &Params) -> Result<HomologyPresentation, KirbyError> {
        let n1 = self.one_handles.len();
        let n2 = self.two_handles.len();
        let p = self.pass_matrix();
        let q = self.linking_matrix(params)?;
        let big = |v: i64| BigInt::from(v);
        // Boundary map C2 -> C1, one row per 1-handle.
        let d2: Vec<Vec<BigInt>> = (0..n1).map(|j| (0..n2).map(|i| big(p[i][j])).collect()).collect();
        let h1 = if n2 == 0 { AbelianGroup::free(n1) } else { cokernel(&d2, n1) };
        let rank = n1 - h1.rank;
        let h2_rank = n2 - rank;
        // Linking matrix of the surgery link with each dotted circle read as a
        // 0-framed unknot.
        let size = n1 + n2;
        let mut full = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n2 {
            for j in 0..n1 {
                full[n1 + i][j] = big(p[i][j]);
                full[j][n1 + i] = big(p[i][j]);
            }
            for k in 0..n2 {
                full[n1 + i][n1 + k] = big(q[i][k]);
            }
        }
        let det = determinant(&full).abs();
        let boundary_order = (!det.is_zero()).then_some(det);
        let mazur_shape = n1 == 1 && n2 == 1 && h1.is_trivial() && h2_rank == 0;
        Ok(HomologyPresentation {
            h1,
            h2_rank,
            boundary_order,
            mazur_shape,
        })
    }
}

fn pass_word(p: &[i8]) -> String {
    p.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

impl fmt::Display for KirbyDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kirby v1")?;
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        for h in &self.one_handles {
            writeln!(f, "H1 {h}")?;
        }
        for h in &self.two_handles {
            let flag = if h.unknot { " unknot" } else { "" };
            writeln!(f, "H2 {} {}{flag}", h.name, h.framing)?;
        }
        for h in &self.two_handles {
            for (j, p) in h.passes.iter().enumerate() {
                if !p.is_empty() {
                    writeln!(f, "PASS {} {} {}", h.name, self.one_handles[j], pass_word(p))?;
                }
            }
        }
        for i in 0..self.two_handles.len() {
            for j in i + 1..self.two_handles.len() {
                if !self.linking[i][j].is_zero() {
                    writeln!(f, "LK {} {} {}", self.two_handles[i].name, self.two_handles[j].name, self.linking[i][j])?;
                }
            }
        }
        Ok(())
    }
}

/// Errors from reading a Kirby diagram file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KirbyFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Kirby(#[from] KirbyError),
}

impl FromStr for KirbyDiagram {
    type Err = KirbyFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "kirby v1")) => {}
            _ => return Err(ParseError::new(1, 1, "expected header 'kirby v1'").into()),
        }
        let mut d = KirbyDiagram::empty();
        for (n, line) in lines {
            if let Some(c) = line.strip_prefix("# ") {
                d.comments.push(c.to_string());
                continue;
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            let err = |m: String| ParseError::new(n, 1, m);
            let expr = |s: &str| s.parse::<Affine>().map_err(|e| err(format!("bad expression '{s}': {e}")));
            let with_line = |e: KirbyError| KirbyFileError::Parse(err(e.to_string()));
            match t.as_slice() {
                [] => {}
                ["H1", name] => d.add_one_handle(name).map_err(with_line)?,
                ["H2", name, framing] => d.add_two_handle(name, expr(framing)?, false).map_err(with_line)?,
                ["H2", name, framing, "unknot"] => d.add_two_handle(name, expr(framing)?, true).map_err(with_line)?,
                ["PASS", two, one, word] => {
                    let mut passes = Vec::new();
                    for c in word.chars() {
                        passes.push(match c {
                            '+' => 1,
                            '-' => -1,
                            _ => return Err(err(format!("pass word '{word}' may only contain '+' and '-'")).into()),
                        });
                    }
                    d.set_passes(two, one, passes).map_err(with_line)?;
                }
                ["LK", a, b, v] => d.set_linking(a, b, expr(v)?).map_err(with_line)?,
                _ => return Err(err(format!("unrecognised line '{line}'")).into()),
            }
        }
        Ok(d)
    }
}
