//! Almost-special polyhedra with gleams: parity, Euler characteristic,
//! cellular homology, slope lengths and the hyperbolicity criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{ParseError, PolyhedronError};
use crate::smith::{cokernel, invariant_factors, AbelianGroup};

/// A triple edge of the singular graph, oriented from `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub from: usize,
    pub to: usize,
}

/// A region with its closure circuit, given as signed edge traversals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub name: String,
    pub circuit: Vec<(usize, i8)>,
    /// Number of Möbius bands among the bands along the closure circuit.
    pub mobius: u32,
    /// Combinatorial length: number of edge-sides the closure traverses.
    pub k: u32,
    pub boundary: bool,
}

/// A combinatorial almost-special polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPolyhedron {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    regions: Vec<Region>,
    comments: Vec<String>,
}

/// The built-in polyhedra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    Abalone,
    ATilde,
    BingsHouse,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Abalone, Builtin::ATilde, Builtin::BingsHouse];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Abalone => "abalone",
            Builtin::ATilde => "a_tilde",
            Builtin::BingsHouse => "bings_house",
        }
    }

    fn source(self) -> &'static str {
        match self {
            Builtin::Abalone => include_str!("../../../fixtures/poly/abalone.poly"),
            Builtin::ATilde => include_str!("../../../fixtures/poly/a_tilde.poly"),
            Builtin::BingsHouse => include_str!("../../../fixtures/poly/bings_house.poly"),
        }
    }
}

impl FromStr for Builtin {
    type Err = PolyhedronError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| PolyhedronError::Invalid(format!("unknown builtin polyhedron '{s}'")))
    }
}

/// Returns the fixed combinatorial encoding of a built-in polyhedron.
pub fn builtin(which: Builtin) -> SpecialPolyhedron {
    which
        .source()
        .parse()
        .expect("built-in polyhedron data is valid")
}

/// Free ranks and torsion of `H0`, `H1`, `H2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub groups: [AbelianGroup; 3],
}

impl Homology {
    /// True when `H0 = Z` and `H1 = H2 = 0`.
    pub fn is_acyclic(&self) -> bool {
        self.groups[0] == AbelianGroup::free(1) && self.groups[1].is_trivial() && self.groups[2].is_trivial()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups[0].rank as i64 - self.groups[1].rank as i64 + self.groups[2].rank as i64
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.groups[0], self.groups[1], self.groups[2])
    }
}

/// Cellular homology of a 2-complex: `n_vertices` 0-cells, 1-cells given by
/// their endpoints and 2-cells given by signed edge circuits.
pub fn cellular_homology(n_vertices: usize, edges: &[(usize, usize)], faces: &[Vec<(usize, i8)>]) -> Homology {
    let zero_row = |n: usize| vec![BigInt::zero(); n];
    // d1: C1 -> C0 as a matrix with one row per vertex.
    let mut d1: Vec<Vec<BigInt>> = (0..n_vertices).map(|_| zero_row(edges.len())).collect();
    for (j, &(from, to)) in edges.iter().enumerate() {
        d1[to][j] += 1;
        d1[from][j] -= 1;
    }
    // d2: C2 -> C1 with one row per edge.
    let mut d2: Vec<Vec<BigInt>> = (0..edges.len()).map(|_| zero_row(faces.len())).collect();
    for (j, face) in faces.iter().enumerate() {
        for &(e, s) in face {
            d2[e][j] += i64::from(s);
        }
    }
    let f1 = if edges.is_empty() { Vec::new() } else { invariant_factors(&d1) };
    let f2 = if faces.is_empty() { Vec::new() } else { invariant_factors(&d2) };
    let h0 = if edges.is_empty() {
        AbelianGroup::free(n_vertices)
    } else {
        cokernel(&d1, n_vertices)
    };
    let r1 = f1.len();
    let r2 = f2.len();
    let h1 = AbelianGroup {
        rank: edges.len() - r1 - r2,
        torsion: f2.into_iter().filter(|d| *d != BigInt::from(1)).collect(),
    };
    let h2 = AbelianGroup::free(faces.len() - r2);
    Homology { groups: [h0, h1, h2] }
}

/// Gleams on internal regions, keyed by region name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GleamAssignment(pub BTreeMap<String, Rational64>);

impl GleamAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Rational64)>) -> Self {
        Self(pairs.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn get(&self, region: &str) -> Option<Rational64> {
        self.0.get(region).copied()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }
}

fn is_integer(q: &Rational64) -> bool {
    q.is_integer()
}

impl SpecialPolyhedron {
    /// Builds and validates a polyhedron: names are unique, circuits of
    /// internal regions are closed walks whose length is `k`, every vertex has
    /// degree 4 and every edge is traversed by exactly three region sides.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, regions: Vec<Region>) -> Result<Self, PolyhedronError> {
        let p = Self {
            vertices,
            edges,
            regions,
            comments: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), PolyhedronError> {
        let invalid = |m: String| Err(PolyhedronError::Invalid(m));
        let mut names = BTreeSet::new();
        for n in self
            .vertices
            .iter()
            .chain(self.edges.iter().map(|e| &e.name))
            .chain(self.regions.iter().map(|r| &r.name))
        {
            if !names.insert(n.as_str()) {
                return invalid(format!("name '{n}' is used twice"));
            }
        }
        let nv = self.vertices.len();
        let mut degree = vec![0usize; nv];
        for e in &self.edges {
            if e.from >= nv || e.to >= nv {
                return invalid(format!("edge '{}' has an unknown endpoint", e.name));
            }
            degree[e.from] += 1;
            degree[e.to] += 1;
        }
        if let Some(v) = (0..nv).find(|&v| degree[v] != 4) {
            return invalid(format!("vertex '{}' has degree {} instead of 4", self.vertices[v], degree[v]));
        }
        let mut sides = vec![0usize; self.edges.len()];
        for r in &self.regions {
            for &(e, s) in &r.circuit {
                if e >= self.edges.len() || (s != 1 && s != -1) {
                    return invalid(format!("region '{}' has a malformed circuit", r.name));
                }
                sides[e] += 1;
            }
            if r.boundary {
                continue;
            }
            if r.k as usize != r.circuit.len() {
                return invalid(format!(
                    "region '{}' has k = {} but its circuit traverses {} edge sides",
                    r.name,
                    r.k,
                    r.circuit.len()
                ));
            }
            let ends = |&(e, s): &(usize, i8)| {
                let edge = &self.edges[e];
                if s > 0 {
                    (edge.from, edge.to)
                } else {
                    (edge.to, edge.from)
                }
            };
            for (i, step) in r.circuit.iter().enumerate() {
                let next = &r.circuit[(i + 1) % r.circuit.len()];
                if ends(step).1 != ends(next).0 {
                    return invalid(format!("circuit of region '{}' is not a closed walk", r.name));
                }
            }
        }
        if let Some(e) = (0..self.edges.len()).find(|&e| sides[e] != 3) {
            return invalid(format!(
                "edge '{}' is traversed by {} region sides instead of 3",
                self.edges[e].name, sides[e]
            ));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn region(&self, name: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.name == name)
    }

    pub fn internal_regions(&self) -> impl Iterator<Item = &Region> {
        self.regions.iter().filter(|r| !r.boundary)
    }

    /// `(vertices, edges, regions)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.regions.len())
    }

    /// `V - E + R` of the induced cell structure.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.regions.len() as i64
    }

    /// Cellular homology of a closed polyhedron.
    pub fn homology(&self) -> Result<Homology, PolyhedronError> {
        let boundary: Vec<&str> = self
            .regions
            .iter()
            .filter(|r| r.boundary)
            .map(|r| r.name.as_str())
            .collect();
        if !boundary.is_empty() {
            return Err(PolyhedronError::HasBoundary(boundary.join(", ")));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.from, e.to)).collect();
        let faces: Vec<Vec<(usize, i8)>> = self.regions.iter().map(|r| r.circuit.clone()).collect();
        Ok(cellular_homology(self.vertices.len(), &edges, &faces))
    }

    fn gleam_of(&self, g: &GleamAssignment, region: &str) -> Result<(Rational64, &Region), PolyhedronError> {
        let r = self
            .region(region)
            .ok_or_else(|| PolyhedronError::MissingRegion(region.to_string()))?;
        if r.boundary {
            return Err(PolyhedronError::BoundaryRegion(region.to_string()));
        }
        let v = g
            .get(region)
            .ok_or_else(|| PolyhedronError::MissingRegion(region.to_string()))?;
        Ok((v, r))
    }

    /// True iff `gl(R) - N(R)/2` is an integer for every internal region.
    pub fn check_gleam_parity(&self, g: &GleamAssignment) -> Result<bool, PolyhedronError> {
        let mut ok = true;
        for r in self.internal_regions() {
            let (v, _) = self.gleam_of(g, &r.name)?;
            ok &= is_integer(&(v - Rational64::new(i64::from(r.mobius), 2)));
        }
        Ok(ok)
    }

    /// Slope length of a region, returned as its exact square `4 gl(R)^2 + k(R)^2`.
    pub fn slope_length(&self, g: &GleamAssignment, region: &str) -> Result<Rational64, PolyhedronError> {
        let (v, r) = self.gleam_of(g, region)?;
        let k = Rational64::from_integer(i64::from(r.k));
        Ok(Rational64::from_integer(4) * v * v + k * k)
    }

    /// Smallest squared slope length over the internal regions.
    pub fn min_slope_length_sq(&self, g: &GleamAssignment) -> Result<Rational64, PolyhedronError> {
        let mut min: Option<Rational64> = None;
        for r in self.internal_regions() {
            let s = self.slope_length(g, &r.name)?;
            min = Some(min.map_or(s, |m| m.min(s)));
        }
        min.ok_or_else(|| PolyhedronError::Invalid("polyhedron has no internal regions".into()))
    }

    /// True iff every internal region has slope length greater than 6.
    pub fn hyperbolicity_criterion(&self, g: &GleamAssignment) -> Result<bool, PolyhedronError> {
        let mut ok = true;
        for r in self.internal_regions() {
            ok &= self.slope_length(g, &r.name)? > Rational64::from_integer(36);
        }
        Ok(ok)
    }
}

impl fmt::Display for SpecialPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poly v1")?;
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "V {}", self.vertices.join(" "))?;
        for e in &self.edges {
            writeln!(f, "E {} {} {}", e.name, self.vertices[e.from], self.vertices[e.to])?;
        }
        for r in &self.regions {
            let flag = if r.boundary { "boundary" } else { "internal" };
            let word: Vec<String> = r
                .circuit
                .iter()
                .map(|&(e, s)| format!("{}{}", if s > 0 { '+' } else { '-' }, self.edges[e].name))
                .collect();
            writeln!(f, "R {} {flag} N {} k {}: {}", r.name, r.mobius, r.k, word.join(" "))?;
        }
        Ok(())
    }
}

/// Errors from reading a polyhedron file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Polyhedron(#[from] PolyhedronError),
}

impl FromStr for SpecialPolyhedron {
    type Err = PolyFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "poly v1")) => {}
            _ => return Err(ParseError::new(1, 1, "expected header 'poly v1'").into()),
        }
        let mut comments = Vec::new();
        let mut vertices: Vec<String> = Vec::new();
        let mut edges = Vec::new();
        let mut regions = Vec::new();
        let vertex_index = |vs: &[String], name: &str, line: usize| {
            vs.iter()
                .position(|v| v == name)
                .ok_or_else(|| ParseError::new(line, 1, format!("unknown vertex '{name}'")))
        };
        for (n, line) in lines {
            if let Some(c) = line.strip_prefix("# ") {
                comments.push(c.to_string());
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.first().copied() {
                None => continue,
                Some("V") => vertices.extend(toks[1..].iter().map(|s| s.to_string())),
                Some("E") => {
                    if toks.len() != 4 {
                        return Err(ParseError::new(n, 1, "edge line is 'E name from to'").into());
                    }
                    edges.push(Edge {
                        name: toks[1].to_string(),
                        from: vertex_index(&vertices, toks[2], n)?,
                        to: vertex_index(&vertices, toks[3], n)?,
                    });
                }
                Some("R") => {
                    let (head, word) = line
                        .split_once(':')
                        .ok_or_else(|| ParseError::new(n, 1, "region line needs ':' before the circuit"))?;
                    let h: Vec<&str> = head.split_whitespace().collect();
                    if h.len() != 7 || h[3] != "N" || h[5] != "k" {
                        return Err(ParseError::new(n, 1, "region line is 'R name internal|boundary N n k k: word'").into());
                    }
                    let boundary = match h[2] {
                        "internal" => false,
                        "boundary" => true,
                        other => return Err(ParseError::new(n, 1, format!("unknown region flag '{other}'")).into()),
                    };
                    let num = |s: &str| {
                        s.parse::<u32>()
                            .map_err(|_| ParseError::new(n, 1, format!("expected a count, found '{s}'")))
                    };
                    let mut circuit = Vec::new();
                    for tok in word.split_whitespace() {
                        let (sign, name) = match tok.split_at(1) {
                            ("+", rest) => (1, rest),
                            ("-", rest) => (-1, rest),
                            _ => return Err(ParseError::new(n, 1, format!("circuit entry '{tok}' needs a sign")).into()),
                        };
                        let e = edges
                            .iter()
                            .position(|e: &Edge| e.name == name)
                            .ok_or_else(|| ParseError::new(n, 1, format!("unknown edge '{name}'")))?;
                        circuit.push((e, sign));
                    }
                    regions.push(Region {
                        name: h[1].to_string(),
                        circuit,
                        mobius: num(h[4])?,
                        k: num(h[6])?,
                        boundary,
                    });
                }
                Some(other) => return Err(ParseError::new(n, 1, format!("unrecognised line kind '{other}'")).into()),
            }
        }
        let mut p = SpecialPolyhedron::new(vertices, edges, regions)?;
        p.comments = comments;
        Ok(p)
    }
}
