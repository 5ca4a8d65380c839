//! Legendrian fronts stored as counts: crossing signs, cusps, the framing
//! coefficient of the 2-handle and the ambient manifold.

use std::fmt;
use std::str::FromStr;

use crate::error::{LegendrianError, ParseError};

/// Where the front is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    S3,
    /// `#k S1 x S2`, with 1-handles drawn as pairs of balls.
    S1xS2,
}

impl Ambient {
    fn as_str(self) -> &'static str {
        match self {
            Ambient::S3 => "S3",
            Ambient::S1xS2 => "S1xS2",
        }
    }
}

/// A front diagram of a Legendrian attaching circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontDiagram {
    signs: Vec<i8>,
    left_cusps: u32,
    right_cusps: u32,
    framing: i64,
    ambient: Ambient,
    comments: Vec<String>,
}

/// Families with shipped Legendrian fronts, in their cork regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrontFamily {
    ATilde { m: i64 },
    Bing { m: i64, n: i64 },
}

impl FrontDiagram {
    pub fn new(
        signs: Vec<i8>,
        left_cusps: u32,
        right_cusps: u32,
        framing: i64,
        ambient: Ambient,
    ) -> Result<Self, LegendrianError> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(LegendrianError::Invalid("crossing signs must be +1 or -1".into()));
        }
        if (left_cusps + right_cusps) % 2 != 0 {
            return Err(LegendrianError::Invalid(format!(
                "cusp counts {left_cusps} + {right_cusps} must have even sum"
            )));
        }
        Ok(Self {
            signs,
            left_cusps,
            right_cusps,
            framing,
            ambient,
            comments: Vec::new(),
        })
    }

    /// The standard front of the Legendrian unknot in `S3`.
    pub fn unknot(framing: i64) -> Self {
        Self::new(Vec::new(), 1, 1, framing, Ambient::S3).expect("valid front")
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn left_cusps(&self) -> u32 {
        self.left_cusps
    }

    pub fn right_cusps(&self) -> u32 {
        self.right_cusps
    }

    pub fn framing(&self) -> i64 {
        self.framing
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).sum()
    }

    /// `tb = wr - #left cusps`.
    pub fn thurston_bennequin(&self) -> i64 {
        self.writhe() - i64::from(self.left_cusps)
    }

    /// The framing coefficient is at most `tb - 1`.
    pub fn eliashberg_stein_check(&self) -> bool {
        self.framing <= self.thurston_bennequin() - 1
    }

    pub fn with_framing(&self, framing: i64) -> Self {
        Self {
            framing,
            ..self.clone()
        }
    }

    /// Inserts a positive and a negative crossing at position `at`.
    pub fn with_cancelling_pair(&self, at: usize) -> Self {
        let mut out = self.clone();
        let at = at.min(out.signs.len());
        out.signs.splice(at..at, [1, -1]);
        out
    }
}

/// The front of the attaching circle of a family in its cork regime.
pub fn family_front(family: FrontFamily) -> Result<FrontDiagram, LegendrianError> {
    let (crossings, cusps) = match family {
        FrontFamily::ATilde { m } => {
            if m >= 0 {
                return Err(LegendrianError::OutOfRegime(format!("ATilde front needs m < 0, got m = {m}")));
            }
            (2 * m.unsigned_abs() + 1, 2 * m.unsigned_abs() - 1)
        }
        FrontFamily::Bing { m, n } => {
            if m >= 0 || n >= 0 {
                return Err(LegendrianError::OutOfRegime(format!(
                    "Bing front needs m < 0 and n < 0, got (m, n) = ({m}, {n})"
                )));
            }
            let s = 2 * m.unsigned_abs() + 2 * n.unsigned_abs();
            (s, s - 2)
        }
    };
    let cusps = u32::try_from(cusps).map_err(|_| LegendrianError::OutOfRegime("parameters too large".into()))?;
    FrontDiagram::new(vec![1; crossings as usize], cusps, cusps, 0, Ambient::S1xS2)
}

impl fmt::Display for FrontDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "front v1")?;
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        let word: String = self.signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect();
        if word.is_empty() {
            writeln!(f, "SIGNS")?;
        } else {
            writeln!(f, "SIGNS {word}")?;
        }
        writeln!(f, "CUSPS {} {}", self.left_cusps, self.right_cusps)?;
        writeln!(f, "FRAMING {}", self.framing)?;
        writeln!(f, "AMBIENT {}", self.ambient.as_str())
    }
}

/// Errors from reading a front file.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrontFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Legendrian(#[from] LegendrianError),
}

impl FromStr for FrontDiagram {
    type Err = FrontFileError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "front v1")) => {}
            _ => return Err(ParseError::new(1, 1, "expected header 'front v1'").into()),
        }
        let mut comments = Vec::new();
        let mut signs = None;
        let mut cusps = None;
        let mut framing = None;
        let mut ambient = None;
        for (n, line) in lines {
            if let Some(c) = line.strip_prefix("# ") {
                comments.push(c.to_string());
                continue;
            }
            let err = |m: String| ParseError::new(n, 1, m);
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(format!("expected an integer, found '{s}'")));
            let t: Vec<&str> = line.split_whitespace().collect();
            match t.as_slice() {
                [] => {}
                ["SIGNS"] => signs = Some(Vec::new()),
                ["SIGNS", word] => {
                    let mut v = Vec::new();
                    for (k, c) in word.chars().enumerate() {
                        v.push(match c {
                            '+' => 1,
                            '-' => -1,
                            _ => return Err(ParseError::new(n, 7 + k, format!("unexpected '{c}' in sign word")).into()),
                        });
                    }
                    signs = Some(v);
                }
                ["CUSPS", l, r] => {
                    let count = |s: &str| s.parse::<u32>().map_err(|_| err(format!("expected a cusp count, found '{s}'")));
                    cusps = Some((count(l)?, count(r)?));
                }
                ["FRAMING", k] => framing = Some(int(k)?),
                ["AMBIENT", "S3"] => ambient = Some(Ambient::S3),
                ["AMBIENT", "S1xS2"] => ambient = Some(Ambient::S1xS2),
                _ => return Err(err(format!("unrecognised line '{line}'")).into()),
            }
        }
        let missing = |what: &str| ParseError::new(1, 1, format!("missing {what} line"));
        let (l, r) = cusps.ok_or_else(|| missing("CUSPS"))?;
        let mut d = FrontDiagram::new(
            signs.ok_or_else(|| missing("SIGNS"))?,
            l,
            r,
            framing.ok_or_else(|| missing("FRAMING"))?,
            ambient.ok_or_else(|| missing("AMBIENT"))?,
        )?;
        d.comments = comments;
        Ok(d)
    }
}
