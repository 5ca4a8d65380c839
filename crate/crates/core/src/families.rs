//! The parametric families `A(m,n)`, `At(m, n-1/2)`, `B(l,m,n)` and
//! `W+-(l,k)`: closed-form Alexander polynomials, Casson invariants of the
//! boundaries, Mazur-type and cork certificates, and the identifications
//! between families.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{FamilyError, ParseError};
use crate::kirby::{HomologyPresentation, KirbyDiagram, Params};
use crate::laurent::LaurentPoly;
use crate::legendrian::{family_front, FrontDiagram, FrontFamily};
use crate::polyhedron::{builtin, Builtin, GleamAssignment};

/// An instance of one of the families. For `ATilde`, the gleam of the
/// second region is `n - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyInstance {
    A { m: i64, n: i64 },
    ATilde { m: i64, n: i64 },
    Bing { l: i64, m: i64, n: i64 },
    WPlus { l: i64, k: i64 },
    WMinus { l: i64, k: i64 },
}

/// The two families whose boundaries are surgeries on knots with a known
/// Alexander polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnotFamily {
    A,
    ATilde,
}

/// Sign `-sign(m)` of the surgery coefficient `1/epsilon`.
pub fn epsilon(m: i64) -> Result<i64, FamilyError> {
    if m == 0 {
        Err(FamilyError::ZeroParameter)
    } else {
        Ok(-m.signum())
    }
}

/// The Alexander polynomial of the surgery knot; it depends on `|m|` only.
pub fn closed_form_alexander(family: KnotFamily, m: i64) -> Result<LaurentPoly, FamilyError> {
    if m == 0 {
        return Err(FamilyError::ZeroParameter);
    }
    let a = m.abs();
    let pairs = match family {
        KnotFamily::A => [(a + 1, 1), (a, -1), (1, -1), (0, 3), (-1, -1), (-a, -1), (-a - 1, 1)],
        KnotFamily::ATilde => [(a, -1), (a - 1, 1), (1, -1), (0, 3), (-1, -1), (-a + 1, 1), (-a, -1)],
    };
    Ok(LaurentPoly::from_pairs(&pairs))
}

/// `lambda(S3) + (epsilon / 2) * Delta''(1)` for `1/epsilon` surgery on a knot.
pub fn casson_surgery(epsilon: i64, delta: &LaurentPoly) -> i64 {
    let twice = delta.second_derivative_at_one() * BigInt::from(epsilon);
    let (q, r) = twice.div_rem(&BigInt::from(2));
    assert!(r.is_zero(), "second derivative of an Alexander polynomial is even");
    q.to_i64().expect("Casson invariant fits in i64")
}

/// The identifications of a `W` family member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WIdentification {
    /// `l + k`; members with equal keys are diffeomorphic.
    pub class_key: i64,
    pub instances: Vec<FamilyInstance>,
}

/// `W-(l,k) = At(-1, l+k-3/2) = A(1, l+k-5)` and
/// `W+(l,k) = At(1, l+k-3/2) = A(-1, l+k+2)`.
pub fn w_identification(sign: i8, l: i64, k: i64) -> WIdentification {
    let s = l + k;
    let instances = if sign < 0 {
        vec![FamilyInstance::ATilde { m: -1, n: s - 1 }, FamilyInstance::A { m: 1, n: s - 5 }]
    } else {
        vec![FamilyInstance::ATilde { m: 1, n: s - 1 }, FamilyInstance::A { m: -1, n: s + 2 }]
    };
    WIdentification { class_key: s, instances }
}

/// Evidence that the boundary is not `S3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryEvidence {
    Casson(i64),
    Hyperbolic { min_slope_length_sq: Rational64 },
    /// Same-sign `(m, n)` with `l = 0`; proved by hand, not computed here.
    SameSignRegime,
    None(String),
}

impl BoundaryEvidence {
    pub fn holds(&self) -> bool {
        !matches!(self, BoundaryEvidence::None(_))
    }
}

impl fmt::Display for BoundaryEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryEvidence::Casson(l) => write!(f, "Casson invariant {l} != 0"),
            BoundaryEvidence::Hyperbolic { min_slope_length_sq } => {
                write!(f, "hyperbolic boundary: min sl^2 = {min_slope_length_sq} > 36")
            }
            BoundaryEvidence::SameSignRegime => write!(f, "same-sign (m,n) with l = 0: proved, not computed"),
            BoundaryEvidence::None(reason) => write!(f, "{reason}"),
        }
    }
}

/// Mazur handle shape together with evidence that the boundary is not `S3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MazurVerdict {
    pub presentation: HomologyPresentation,
    pub evidence: BoundaryEvidence,
    pub verdict: bool,
}

/// Checkable facts behind a cork claim. The non-extension of the involution
/// is not computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorkCertificate {
    pub stein_ok: bool,
    /// Metadata: the diagram is symmetric under exchanging the dot and the 0.
    pub symmetric_diagram: bool,
    pub homology_sphere_boundary: bool,
    pub contractible: bool,
    pub tb: i64,
    pub note: Option<String>,
}

impl CorkCertificate {
    pub fn all_hold(&self) -> bool {
        self.stein_ok && self.symmetric_diagram && self.homology_sphere_boundary && self.contractible
    }
}

fn kirby_source(name: &str) -> &'static str {
    match name {
        "A" => include_str!("../../../fixtures/kirby/A.kirby"),
        "At" => include_str!("../../../fixtures/kirby/At.kirby"),
        _ => include_str!("../../../fixtures/kirby/B.kirby"),
    }
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

impl FamilyInstance {
    /// Short family tag used in notation and tables.
    pub fn tag(&self) -> &'static str {
        match self {
            FamilyInstance::A { .. } => "A",
            FamilyInstance::ATilde { .. } => "At",
            FamilyInstance::Bing { .. } => "B",
            FamilyInstance::WPlus { .. } => "W+",
            FamilyInstance::WMinus { .. } => "W-",
        }
    }

    /// `A` or `At` instance a `W` member reduces to; other instances are
    /// returned unchanged.
    pub fn reduced(&self) -> FamilyInstance {
        match *self {
            FamilyInstance::WPlus { l, k } => w_identification(1, l, k).instances[0],
            FamilyInstance::WMinus { l, k } => w_identification(-1, l, k).instances[0],
            other => other,
        }
    }

    /// Gleams on the underlying polyhedron.
    pub fn gleams(&self) -> (Builtin, GleamAssignment) {
        let q = Rational64::from_integer;
        match self.reduced() {
            FamilyInstance::A { m, n } => (Builtin::Abalone, GleamAssignment::from_pairs([("e1", q(m)), ("e2", q(n))])),
            FamilyInstance::ATilde { m, n } => (
                Builtin::ATilde,
                GleamAssignment::from_pairs([("e1", q(m)), ("e2", q(n) - Rational64::new(1, 2))]),
            ),
            FamilyInstance::Bing { l, m, n } => (
                Builtin::BingsHouse,
                GleamAssignment::from_pairs([("e3", q(l)), ("e4", q(m)), ("e5", q(n))]),
            ),
            FamilyInstance::WPlus { .. } | FamilyInstance::WMinus { .. } => unreachable!("reduced above"),
        }
    }

    /// The reduced Kirby diagram of the family and the parameter values.
    pub fn kirby_diagram(&self) -> (KirbyDiagram, Params) {
        let (name, p) = match self.reduced() {
            FamilyInstance::A { m, n } => ("A", params(&[("m", m), ("n", n)])),
            FamilyInstance::ATilde { m, n } => ("At", params(&[("m", m), ("n", n)])),
            FamilyInstance::Bing { l, m, n } => ("B", params(&[("l", l), ("m", m), ("n", n)])),
            FamilyInstance::WPlus { .. } | FamilyInstance::WMinus { .. } => unreachable!("reduced above"),
        };
        let d = kirby_source(name).parse().expect("built-in diagram is valid");
        (d, p)
    }

    /// Homology presentation of the family diagram.
    pub fn homology_presentation(&self) -> Result<HomologyPresentation, FamilyError> {
        let (d, p) = self.kirby_diagram();
        Ok(d.homology_presentation(&p)?)
    }

    /// Casson invariant of the boundary by the surgery formula.
    pub fn casson_boundary(&self) -> Result<i64, FamilyError> {
        let (family, m) = match self.reduced() {
            FamilyInstance::A { m, .. } => (KnotFamily::A, m),
            FamilyInstance::ATilde { m, .. } => (KnotFamily::ATilde, m),
            FamilyInstance::Bing { .. } => {
                return Err(FamilyError::UnsupportedFamily(
                    "no surgery description with a closed-form Alexander polynomial for B".into(),
                ))
            }
            FamilyInstance::WPlus { .. } | FamilyInstance::WMinus { .. } => unreachable!("reduced above"),
        };
        let eps = epsilon(m)?;
        Ok(casson_surgery(eps, &closed_form_alexander(family, m)?))
    }

    fn boundary_evidence(&self) -> BoundaryEvidence {
        match self.reduced() {
            FamilyInstance::Bing { l, m, n } => {
                let (poly, g) = self.gleams();
                let p = builtin(poly);
                if p.hyperbolicity_criterion(&g).expect("all regions assigned") {
                    BoundaryEvidence::Hyperbolic {
                        min_slope_length_sq: p.min_slope_length_sq(&g).expect("all regions assigned"),
                    }
                } else if l == 0 && m != 0 && n != 0 && m.signum() == n.signum() {
                    BoundaryEvidence::SameSignRegime
                } else {
                    BoundaryEvidence::None("no evidence: slope lengths too short and not in the same-sign regime".into())
                }
            }
            _ => match self.casson_boundary() {
                Ok(0) | Err(FamilyError::ZeroParameter) => BoundaryEvidence::None("no evidence: λ = 0".into()),
                Ok(l) => BoundaryEvidence::Casson(l),
                Err(e) => BoundaryEvidence::None(format!("no evidence: {e}")),
            },
        }
    }

    /// Mazur handle shape and evidence that the boundary is not `S3`.
    pub fn mazur_type_certificate(&self) -> Result<MazurVerdict, FamilyError> {
        let presentation = self.homology_presentation()?;
        let evidence = self.boundary_evidence();
        let verdict = presentation.mazur_shape && evidence.holds();
        Ok(MazurVerdict {
            presentation,
            evidence,
            verdict,
        })
    }

    /// True when the instance lies in a regime where a cork front ships.
    pub fn in_cork_regime(&self) -> bool {
        self.front_family().is_some()
    }

    fn front_family(&self) -> Option<FrontFamily> {
        match *self {
            FamilyInstance::ATilde { m, n } if n == -1 && m < 0 => Some(FrontFamily::ATilde { m }),
            FamilyInstance::Bing { l, m, n } if l == 0 && m < 0 && n < 0 => Some(FrontFamily::Bing { m, n }),
            _ => None,
        }
    }

    /// The Legendrian front of the attaching circle in the cork regime.
    pub fn front(&self) -> Result<FrontDiagram, FamilyError> {
        let f = self
            .front_family()
            .ok_or_else(|| FamilyError::OutOfRegime(format!("{self} is not At(m<0,-3/2) or B(0,m<0,n<0)")))?;
        Ok(family_front(f)?)
    }

    /// Checkable facts behind the cork claim.
    pub fn cork_certificate(&self) -> Result<CorkCertificate, FamilyError> {
        let front = self.front()?;
        let h = self.homology_presentation()?;
        let note = matches!(self, FamilyInstance::Bing { l: 0, m: -1, n: -1 })
            .then(|| "diffeomorphic to W̄₁".to_string());
        Ok(CorkCertificate {
            stein_ok: front.eliashberg_stein_check(),
            symmetric_diagram: true,
            homology_sphere_boundary: h.boundary_is_homology_sphere(),
            contractible: h.is_contractible(),
            tb: front.thurston_bennequin(),
            note,
        })
    }

    /// Orientation reversal: all gleams negated.
    pub fn mirror(&self) -> Result<FamilyInstance, FamilyError> {
        match *self {
            FamilyInstance::A { m, n } => Ok(FamilyInstance::A { m: -m, n: -n }),
            FamilyInstance::ATilde { m, n } => Ok(FamilyInstance::ATilde { m: -m, n: 1 - n }),
            FamilyInstance::Bing { l, m, n } => Ok(FamilyInstance::Bing { l: -l, m: -m, n: -n }),
            FamilyInstance::WPlus { .. } | FamilyInstance::WMinus { .. } => Err(FamilyError::UnsupportedFamily(
                "mirror is defined on gleam families A, At and B".into(),
            )),
        }
    }
}

/// Casson invariants agree along `A(1,n) = At(-1, n+7/2)` and
/// `A(-1,n) = At(1, n-7/2)`.
pub fn casson_agreement_check(n: i64) -> bool {
    let pairs = [
        (FamilyInstance::A { m: 1, n }, FamilyInstance::ATilde { m: -1, n: n + 4 }),
        (FamilyInstance::A { m: -1, n }, FamilyInstance::ATilde { m: 1, n: n - 3 }),
    ];
    pairs
        .iter()
        .all(|(a, b)| matches!((a.casson_boundary(), b.casson_boundary()), (Ok(x), Ok(y)) if x == y))
}

/// Result of comparing two instances with every implemented invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// The named invariant takes different values.
    Distinguished(&'static str),
    NotDistinguished,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Distinguished(name) => write!(f, "distinguished by {name}"),
            Comparison::NotDistinguished => write!(f, "not distinguished by implemented invariants"),
        }
    }
}

/// Compares the diffeomorphism invariants that are implemented: the Casson
/// invariant of the boundary and the homology read from the handle diagram.
/// Agreement decides nothing.
pub fn distinguish(a: &FamilyInstance, b: &FamilyInstance) -> Comparison {
    if a.casson_boundary().ok() != b.casson_boundary().ok() {
        Comparison::Distinguished("casson")
    } else if a.homology_presentation().ok() != b.homology_presentation().ok() {
        Comparison::Distinguished("homology")
    } else {
        Comparison::NotDistinguished
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyInstance::A { m, n } => write!(f, "A({m},{n})"),
            FamilyInstance::ATilde { m, n } => write!(f, "At({m},{}/2)", 2 * n - 1),
            FamilyInstance::Bing { l, m, n } => write!(f, "B({l},{m},{n})"),
            FamilyInstance::WPlus { l, k } => write!(f, "W+({l},{k})"),
            FamilyInstance::WMinus { l, k } => write!(f, "W-({l},{k})"),
        }
    }
}

/// Reads one argument of the notation as an exact rational.
fn parse_arg(s: &str, col: usize) -> Result<Rational64, ParseError> {
    let bad = || ParseError::new(1, col, format!("expected an integer or half-integer, found '{s}'"));
    let s = s.trim();
    if let Ok(v) = s.parse::<i64>() {
        return Ok(Rational64::from_integer(v));
    }
    if let Some(v) = s.strip_suffix("-1/2").and_then(|h| h.parse::<i64>().ok()) {
        return Ok(Rational64::from_integer(v) - Rational64::new(1, 2));
    }
    let (p, q) = s.split_once('/').ok_or_else(bad)?;
    let (p, q) = (p.parse::<i64>().map_err(|_| bad())?, q.parse::<i64>().map_err(|_| bad())?);
    if q == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(p, q))
}

impl FromStr for FamilyInstance {
    type Err = ParseError;

    /// Notation `A(m,n)`, `At(m,p/2)`, `B(l,m,n)`, `W+(l,k)`, `W-(l,k)`. The
    /// `At` slot also accepts `n-1/2` with an integer `n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let open = s
            .find('(')
            .ok_or_else(|| ParseError::new(1, s.len() + 1, "expected '(' after the family name"))?;
        if !s.ends_with(')') {
            return Err(ParseError::new(1, s.len(), "expected ')' at the end"));
        }
        let tag = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        let mut args = Vec::new();
        let mut col = open + 2;
        for a in body.split(',') {
            args.push((parse_arg(a, col)?, col));
            col += a.len() + 1;
        }
        let arity = match tag {
            "A" | "At" | "W+" | "W-" => 2,
            "B" => 3,
            _ => return Err(ParseError::new(1, 1, format!("unknown family '{tag}'"))),
        };
        if args.len() != arity {
            return Err(ParseError::new(
                1,
                open + 1,
                format!("{tag} takes {arity} parameters, found {}", args.len()),
            ));
        }
        let int = |k: usize| {
            let (v, c) = args[k];
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(ParseError::new(1, c, format!("parameter {} of {tag} must be an integer", k + 1)))
            }
        };
        Ok(match tag {
            "A" => FamilyInstance::A { m: int(0)?, n: int(1)? },
            "At" => {
                let (v, c) = args[1];
                let n = v + Rational64::new(1, 2);
                if !n.is_integer() {
                    return Err(ParseError::new(1, c, "second slot of At must be n-1/2 with n an integer"));
                }
                FamilyInstance::ATilde { m: int(0)?, n: n.to_integer() }
            }
            "B" => FamilyInstance::Bing { l: int(0)?, m: int(1)?, n: int(2)? },
            "W+" => FamilyInstance::WPlus { l: int(0)?, k: int(1)? },
            _ => FamilyInstance::WMinus { l: int(0)?, k: int(1)? },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn notation_round_trip() {
        for s in ["A(2,0)", "At(-1,-3/2)", "B(0,-1,-1)", "W+(2,1)", "W-(0,0)", "At(3,1/2)"] {
            let inst: FamilyInstance = s.parse().unwrap();
            assert_eq!(inst.to_string(), s);
        }
        assert_eq!("At(-1,-1-1/2)".parse::<FamilyInstance>().unwrap(), FamilyInstance::ATilde { m: -1, n: -1 });
        assert_eq!("At(2,3-1/2)".parse::<FamilyInstance>().unwrap(), FamilyInstance::ATilde { m: 2, n: 3 });
    }

    #[test]
    fn notation_errors_carry_columns() {
        let e = "At(1,2)".parse::<FamilyInstance>().unwrap_err();
        assert_eq!(e.column, 6);
        let e = "A(1,x)".parse::<FamilyInstance>().unwrap_err();
        assert_eq!(e.column, 5);
        assert!("Q(1,2)".parse::<FamilyInstance>().is_err());
        assert!("B(1,2)".parse::<FamilyInstance>().is_err());
        assert!("A(1,2".parse::<FamilyInstance>().is_err());
    }

    #[test]
    fn epsilon_rule() {
        assert_eq!(epsilon(3).unwrap(), -1);
        assert_eq!(epsilon(-5).unwrap(), 1);
        assert_eq!(epsilon(1).unwrap(), -1);
        assert_eq!(epsilon(0), Err(FamilyError::ZeroParameter));
    }
}
