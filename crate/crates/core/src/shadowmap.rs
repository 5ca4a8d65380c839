//! Gleam bookkeeping between a shadow and a Kirby diagram: twist numbers,
//! local corner contributions at crossings, disk gleams, the collapse of
//! boundary regions and the inverse solve from gleams to framings.
//!
//! A crossing record lists its four corner regions in the order
//! `++ +- -+ --`. The first sign says on which side of the over-strand the
//! corner lies, the second on which side of the under-strand (or of the
//! singular set for a curve-singular crossing). Corners `++` and `--`
//! contribute `+1/2`, corners `+-` and `-+` contribute `-1/2`:
//!
//! ```text
//!        +-  |  ++
//!     -------+------->  over
//!        --  |  -+
//!            v under
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{ParseError, ShadowError};
use crate::polyhedron::{builtin, Builtin, GleamAssignment, SpecialPolyhedron};

/// The geometric kind of a crossing in the projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    SelfCrossing,
    CurveCurve,
    CurveSingular,
}

impl CrossingKind {
    fn as_str(self) -> &'static str {
        match self {
            CrossingKind::SelfCrossing => "self",
            CrossingKind::CurveCurve => "curve-curve",
            CrossingKind::CurveSingular => "curve-singular",
        }
    }
}

impl FromStr for CrossingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "self" => Ok(CrossingKind::SelfCrossing),
            "curve-curve" => Ok(CrossingKind::CurveCurve),
            "curve-singular" => Ok(CrossingKind::CurveSingular),
            other => Err(format!("unknown crossing kind '{other}'")),
        }
    }
}

/// Local contribution of each corner slot, in the order `++ +- -+ --`.
pub const CORNER_CONTRIBUTIONS: [(i64, i64); 4] = [(1, 2), (-1, 2), (-1, 2), (1, 2)];

fn corner_value(slot: usize) -> Rational64 {
    let (n, d) = CORNER_CONTRIBUTIONS[slot];
    Rational64::new(n, d)
}

/// A crossing with its four adjacent corner regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerCrossing {
    pub kind: CrossingKind,
    pub corners: [String; 4],
}

impl LedgerCrossing {
    /// The same crossing with over and under exchanged.
    pub fn mirrored(&self) -> Self {
        let [pp, pm, mp, mm] = self.corners.clone();
        Self {
            kind: self.kind,
            corners: [pm, pp, mm, mp],
        }
    }
}

/// A region of the subdivision of the base by the curves and the singular set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubRegion {
    pub name: String,
    /// Region of the base polyhedron this piece merges into; `None` for
    /// boundary pieces that collapse onto the singular set.
    pub target: Option<String>,
}

impl SubRegion {
    pub fn is_boundary(&self) -> bool {
        self.target.is_none()
    }
}

/// A projected attaching circle with its framing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    /// Symbol naming the framing coefficient, such as `M`.
    pub symbol: String,
    /// The subregion `Int(D_j)` bounded by the curve.
    pub disk: String,
    pub tw: Rational64,
    pub framing: i64,
}

/// A projection of attaching circles onto a base polyhedron, with the
/// crossing ledger needed to read off gleams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedProjection {
    base: Builtin,
    regions: Vec<SubRegion>,
    curves: Vec<Curve>,
    crossings: Vec<LedgerCrossing>,
    comments: Vec<String>,
}

/// The families whose ledgers ship with the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LedgerFamily {
    A,
    ATilde,
    Bing,
}

impl LedgerFamily {
    pub const ALL: [LedgerFamily; 3] = [LedgerFamily::A, LedgerFamily::ATilde, LedgerFamily::Bing];

    pub fn ledger(self) -> AnnotatedProjection {
        let text = match self {
            LedgerFamily::A => include_str!("../../../fixtures/ledger/A.ledger"),
            LedgerFamily::ATilde => include_str!("../../../fixtures/ledger/At.ledger"),
            LedgerFamily::Bing => include_str!("../../../fixtures/ledger/B.ledger"),
        };
        text.parse().expect("built-in ledger data is valid")
    }
}

impl FromStr for LedgerFamily {
    type Err = ShadowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(LedgerFamily::A),
            "At" | "ATilde" => Ok(LedgerFamily::ATilde),
            "B" | "Bing" => Ok(LedgerFamily::Bing),
            other => Err(ShadowError::Invalid(format!("unknown family '{other}'"))),
        }
    }
}

/// The gleam of the disk region bounded by a curve: `n_j - tw(C_j)`.
pub fn disk_gleam(n: i64, tw: Rational64) -> Rational64 {
    Rational64::from_integer(n) - tw
}

impl AnnotatedProjection {
    pub fn new(
        base: Builtin,
        regions: Vec<SubRegion>,
        curves: Vec<Curve>,
        crossings: Vec<LedgerCrossing>,
    ) -> Result<Self, ShadowError> {
        let p = Self {
            base,
            regions,
            curves,
            crossings,
            comments: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), ShadowError> {
        let invalid = |m: String| Err(ShadowError::Invalid(m));
        let base = self.base_polyhedron();
        let internal: BTreeSet<&str> = base.internal_regions().map(|r| r.name.as_str()).collect();
        let mut names = BTreeSet::new();
        let mut covered = BTreeSet::new();
        for r in &self.regions {
            if !names.insert(r.name.as_str()) {
                return invalid(format!("subregion '{}' is listed twice", r.name));
            }
            if let Some(t) = &r.target {
                if !internal.contains(t.as_str()) {
                    return invalid(format!("subregion '{}' targets '{t}', not an internal region of the base", r.name));
                }
                covered.insert(t.as_str());
            }
        }
        if let Some(missing) = internal.difference(&covered).next() {
            return invalid(format!("base region '{missing}' receives no subregion"));
        }
        let mut curve_names = BTreeSet::new();
        for c in &self.curves {
            if !curve_names.insert(c.name.as_str()) {
                return invalid(format!("curve '{}' is listed twice", c.name));
            }
            match self.subregion(&c.disk) {
                Some(r) if !r.is_boundary() => {}
                _ => return invalid(format!("disk '{}' of curve '{}' is not an internal subregion", c.disk, c.name)),
            }
            if !(c.tw * Rational64::from_integer(2)).is_integer() {
                return invalid(format!("twist number of '{}' is not a half-integer", c.name));
            }
        }
        for x in &self.crossings {
            for r in &x.corners {
                if self.subregion(r).is_none() {
                    return Err(ShadowError::UnknownRegion(r.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> Builtin {
        self.base
    }

    pub fn base_polyhedron(&self) -> SpecialPolyhedron {
        builtin(self.base)
    }

    pub fn regions(&self) -> &[SubRegion] {
        &self.regions
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn crossings(&self) -> &[LedgerCrossing] {
        &self.crossings
    }

    pub fn subregion(&self, name: &str) -> Option<&SubRegion> {
        self.regions.iter().find(|r| r.name == name)
    }

    /// The same projection with the framing coefficients replaced, in curve order.
    pub fn with_framings(&self, framings: &[i64]) -> Result<Self, ShadowError> {
        if framings.len() != self.curves.len() {
            return Err(ShadowError::Invalid(format!(
                "expected {} framing coefficients, got {}",
                self.curves.len(),
                framings.len()
            )));
        }
        let mut p = self.clone();
        for (c, &n) in p.curves.iter_mut().zip(framings) {
            c.framing = n;
        }
        Ok(p)
    }

    /// Mirror image: over and under exchanged at every crossing, twist numbers
    /// and framing coefficients negated.
    pub fn mirrored(&self) -> Self {
        let mut p = self.clone();
        p.crossings = self.crossings.iter().map(LedgerCrossing::mirrored).collect();
        for c in &mut p.curves {
            c.tw = -c.tw;
            c.framing = -c.framing;
        }
        p
    }

    /// Sum of the local corner contributions adjacent to a subregion.
    pub fn region_gleam(&self, region: &str) -> Result<Rational64, ShadowError> {
        if self.subregion(region).is_none() {
            return Err(ShadowError::UnknownRegion(region.to_string()));
        }
        let mut total = Rational64::zero();
        for x in &self.crossings {
            for (slot, r) in x.corners.iter().enumerate() {
                if r == region {
                    total += corner_value(slot);
                }
            }
        }
        Ok(total)
    }

    /// Gleams of every subregion: corner contributions plus `n_j - tw(C_j)`
    /// on each disk region.
    pub fn subdivision_gleams(&self) -> Result<BTreeMap<String, Rational64>, ShadowError> {
        let mut out = BTreeMap::new();
        for r in &self.regions {
            out.insert(r.name.clone(), self.region_gleam(&r.name)?);
        }
        for c in &self.curves {
            *out.get_mut(&c.disk).expect("disk validated") += disk_gleam(c.framing, c.tw);
        }
        Ok(out)
    }

    /// Collapses the designated boundary subregions onto the singular set and
    /// merges the remaining pieces into their base regions, summing gleams.
    /// Every boundary subregion must be designated.
    pub fn collapse_boundary(
        &self,
        gleams: &BTreeMap<String, Rational64>,
        designated: &[&str],
    ) -> Result<(SpecialPolyhedron, GleamAssignment), ShadowError> {
        for &d in designated {
            match self.subregion(d) {
                None => return Err(ShadowError::UnknownRegion(d.to_string())),
                Some(r) if !r.is_boundary() => return Err(ShadowError::NotCollapsible(d.to_string())),
                Some(_) => {}
            }
        }
        if let Some(r) = self
            .regions
            .iter()
            .find(|r| r.is_boundary() && !designated.contains(&r.name.as_str()))
        {
            return Err(ShadowError::Invalid(format!("boundary subregion '{}' was not designated", r.name)));
        }
        let mut merged: BTreeMap<String, Rational64> = BTreeMap::new();
        for r in &self.regions {
            let Some(target) = &r.target else { continue };
            let g = gleams
                .get(&r.name)
                .ok_or_else(|| ShadowError::UnknownRegion(r.name.clone()))?;
            *merged.entry(target.clone()).or_insert_with(Rational64::zero) += g;
        }
        Ok((self.base_polyhedron(), GleamAssignment(merged)))
    }

    /// Names of all boundary subregions.
    pub fn boundary_regions(&self) -> Vec<&str> {
        self.regions
            .iter()
            .filter(|r| r.is_boundary())
            .map(|r| r.name.as_str())
            .collect()
    }

    /// The full forward pipeline: gleams of the base polyhedron produced by
    /// the current framing coefficients.
    pub fn forward(&self) -> Result<GleamAssignment, ShadowError> {
        let sub = self.subdivision_gleams()?;
        let (_, g) = self.collapse_boundary(&sub, &self.boundary_regions())?;
        Ok(g)
    }

    /// Framing coefficients, in curve order, whose forward image is `target`.
    /// The affine forward map is sampled at the origin and the unit vectors
    /// and the resulting linear system is solved exactly.
    pub fn solve_framings(&self, target: &GleamAssignment) -> Result<Vec<(String, i64)>, ShadowError> {
        let base = self.base_polyhedron();
        if !base.check_gleam_parity(target)? {
            return Err(ShadowError::ParityViolation(
                "target gleams violate gl(R) - N(R)/2 in Z".to_string(),
            ));
        }
        let regions: Vec<String> = base.internal_regions().map(|r| r.name.clone()).collect();
        let n = self.curves.len();
        let eval = |f: &[i64]| -> Result<Vec<Rational64>, ShadowError> {
            let g = self.with_framings(f)?.forward()?;
            Ok(regions.iter().map(|r| g.get(r).unwrap_or_else(Rational64::zero)).collect())
        };
        let origin = eval(&vec![0; n])?;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let v = eval(&e)?;
            columns.push(v.iter().zip(&origin).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        let rhs: Vec<Rational64> = regions
            .iter()
            .zip(&origin)
            .map(|(r, o)| target.get(r).expect("parity check saw every region") - o)
            .collect();
        // Augmented system with one row per base region.
        let mut a: Vec<Vec<Rational64>> = (0..regions.len())
            .map(|i| {
                let mut row: Vec<Rational64> = columns.iter().map(|c| c[i]).collect();
                row.push(rhs[i]);
                row
            })
            .collect();
        let solution = solve_unique(&mut a, n)
            .ok_or_else(|| ShadowError::Invalid("ledger does not determine the framings uniquely".into()))?;
        self.curves
            .iter()
            .zip(solution)
            .map(|(c, v)| {
                if v.is_integer() {
                    Ok((c.symbol.clone(), v.to_integer()))
                } else {
                    Err(ShadowError::ParityViolation(format!("framing {} would be {v}", c.symbol)))
                }
            })
            .collect()
    }
}

/// Gauss-Jordan elimination on an augmented matrix with `n` unknowns.
/// Returns the solution when it exists and is unique.
fn solve_unique(a: &mut [Vec<Rational64>], n: usize) -> Option<Vec<Rational64>> {
    let rows = a.len();
    let mut pivot_row = 0;
    for col in 0..n {
        let p = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let inv = Rational64::one() / a[pivot_row][col];
        for v in a[pivot_row].iter_mut() {
            *v *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col];
                for c in col..=n {
                    let sub = factor * a[pivot_row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| a[i][n]).collect())
}

/// Solves for the framings of a shipped family ledger.
pub fn solve_framings(family: LedgerFamily, target: &GleamAssignment) -> Result<Vec<(String, i64)>, ShadowError> {
    family.ledger().solve_framings(target)
}

impl fmt::Display for AnnotatedProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ledger v1")?;
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        writeln!(f, "BASE {}", self.base.name())?;
        for r in &self.regions {
            match &r.target {
                Some(t) => writeln!(f, "REGION {} internal -> {t}", r.name)?,
                None => writeln!(f, "REGION {} boundary", r.name)?,
            }
        }
        for c in &self.curves {
            writeln!(f, "CURVE {} {} {}", c.name, c.symbol, c.disk)?;
        }
        for c in &self.curves {
            writeln!(f, "TW {} {}", c.name, c.tw)?;
        }
        for c in &self.curves {
            writeln!(f, "FR {} {}", c.name, c.framing)?;
        }
        for x in &self.crossings {
            writeln!(f, "XG {} {}", x.kind.as_str(), x.corners.join(" "))?;
        }
        Ok(())
    }
}

/// Errors from reading a ledger file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LedgerFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Shadow(#[from] ShadowError),
}

impl FromStr for AnnotatedProjection {
    type Err = LedgerFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "ledger v1")) => {}
            _ => return Err(ParseError::new(1, 1, "expected header 'ledger v1'").into()),
        }
        let mut comments = Vec::new();
        let mut base = None;
        let mut regions = Vec::new();
        let mut curves: Vec<Curve> = Vec::new();
        let mut crossings = Vec::new();
        for (n, line) in lines {
            if let Some(c) = line.strip_prefix("# ") {
                comments.push(c.to_string());
                continue;
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            let err = |m: String| ParseError::new(n, 1, m);
            let shape = |ok: bool, usage: &str| if ok { Ok(()) } else { Err(err(format!("expected '{usage}'"))) };
            let curve_mut = |curves: &mut Vec<Curve>, name: &str| -> Result<usize, ParseError> {
                curves
                    .iter()
                    .position(|c| c.name == name)
                    .ok_or_else(|| err(format!("unknown curve '{name}'")))
            };
            match t.first().copied() {
                None => {}
                Some("BASE") => {
                    shape(t.len() == 2, "BASE name")?;
                    base = Some(t[1].parse::<Builtin>().map_err(|e| err(e.to_string()))?);
                }
                Some("REGION") => match t.as_slice() {
                    [_, name, "internal", "->", target] => regions.push(SubRegion {
                        name: name.to_string(),
                        target: Some(target.to_string()),
                    }),
                    [_, name, "boundary"] => regions.push(SubRegion {
                        name: name.to_string(),
                        target: None,
                    }),
                    _ => return Err(err("expected 'REGION name internal -> target' or 'REGION name boundary'".into()).into()),
                },
                Some("CURVE") => {
                    shape(t.len() == 4, "CURVE name symbol disk")?;
                    curves.push(Curve {
                        name: t[1].to_string(),
                        symbol: t[2].to_string(),
                        disk: t[3].to_string(),
                        tw: Rational64::zero(),
                        framing: 0,
                    });
                }
                Some("TW") => {
                    shape(t.len() == 3, "TW curve value")?;
                    let i = curve_mut(&mut curves, t[1])?;
                    curves[i].tw = t[2].parse().map_err(|_| err(format!("bad twist number '{}'", t[2])))?;
                }
                Some("FR") => {
                    shape(t.len() == 3, "FR curve n")?;
                    let i = curve_mut(&mut curves, t[1])?;
                    curves[i].framing = t[2].parse().map_err(|_| err(format!("bad framing '{}'", t[2])))?;
                }
                Some("XG") => {
                    shape(t.len() == 6, "XG kind r++ r+- r-+ r--")?;
                    crossings.push(LedgerCrossing {
                        kind: t[1].parse().map_err(err)?,
                        corners: [t[2], t[3], t[4], t[5]].map(str::to_string),
                    });
                }
                Some(other) => return Err(err(format!("unrecognised line kind '{other}'")).into()),
            }
        }
        let base = base.ok_or_else(|| ParseError::new(1, 1, "missing BASE line"))?;
        let mut p = AnnotatedProjection::new(base, regions, curves, crossings)?;
        p.comments = comments;
        Ok(p)
    }
}
