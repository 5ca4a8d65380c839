//! Affine expressions in named integer parameters with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::KirbyError;

/// Values of the parameters an expression may mention.
pub type Params = BTreeMap<String, i64>;

/// `c + sum a_i x_i` with rational `c`, `a_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    constant: Rational64,
    coeffs: BTreeMap<String, Rational64>,
}

impl Affine {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: impl Into<Rational64>) -> Self {
        Self {
            constant: c.into(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational64::from_integer(c))
    }

    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), Rational64::one());
        Self {
            constant: Rational64::zero(),
            coeffs,
        }
    }

    pub fn constant_term(&self) -> Rational64 {
        self.constant
    }

    pub fn coeff(&self, var: &str) -> Rational64 {
        self.coeffs.get(var).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.is_empty()
    }

    /// The value when the expression mentions no parameter.
    pub fn as_constant(&self) -> Option<Rational64> {
        self.coeffs.is_empty().then_some(self.constant)
    }

    fn cleaned(mut self) -> Self {
        self.coeffs.retain(|_, v| !v.is_zero());
        self
    }

    pub fn scale(&self, k: Rational64) -> Self {
        Self {
            constant: self.constant * k,
            coeffs: self.coeffs.iter().map(|(n, v)| (n.clone(), v * k)).collect(),
        }
        .cleaned()
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(Rational64::from_integer(k))
    }

    /// Product of two expressions when at least one of them is constant.
    pub fn checked_mul(&self, other: &Affine) -> Option<Affine> {
        match (self.as_constant(), other.as_constant()) {
            (Some(c), _) => Some(other.scale(c)),
            (_, Some(c)) => Some(self.scale(c)),
            _ => None,
        }
    }

    /// Exact value at the given parameters.
    pub fn eval(&self, params: &Params) -> Result<Rational64, KirbyError> {
        let mut v = self.constant;
        for (name, c) in &self.coeffs {
            let x = params
                .get(name)
                .ok_or_else(|| KirbyError::Invalid(format!("parameter '{name}' is not bound")))?;
            v += c * Rational64::from_integer(*x);
        }
        Ok(v)
    }

    /// Integer value at the given parameters.
    pub fn eval_int(&self, params: &Params) -> Result<i64, KirbyError> {
        let v = self.eval(params)?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(KirbyError::NonIntegralFraming(format!("{self} evaluates to {v}")))
        }
    }
}

impl From<i64> for Affine {
    fn from(c: i64) -> Self {
        Affine::int(c)
    }
}

impl Add for &Affine {
    type Output = Affine;

    fn add(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (n, v) in &rhs.coeffs {
            *out.coeffs.entry(n.clone()).or_insert_with(Rational64::zero) += v;
        }
        out.cleaned()
    }
}

impl Add for Affine {
    type Output = Affine;

    fn add(self, rhs: Affine) -> Affine {
        &self + &rhs
    }
}

impl Neg for &Affine {
    type Output = Affine;

    fn neg(self) -> Affine {
        self.scale(-Rational64::one())
    }
}

impl Neg for Affine {
    type Output = Affine;

    fn neg(self) -> Affine {
        -&self
    }
}

impl Sub for &Affine {
    type Output = Affine;

    fn sub(self, rhs: &Affine) -> Affine {
        self + &(-rhs)
    }
}

impl Sub for Affine {
    type Output = Affine;

    fn sub(self, rhs: Affine) -> Affine {
        &self - &rhs
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: Rational64, var: &str) -> fmt::Result {
    if c.is_one() {
        write!(f, "{var}")
    } else if c.is_integer() {
        write!(f, "{c}{var}")
    } else {
        write!(f, "{c}*{var}")
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, &c) in &self.coeffs {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            }
            write_coeff(f, c.abs(), name)?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if self.constant.is_zero() {
            Ok(())
        } else {
            let sign = if self.constant.is_negative() { "-" } else { "+" };
            write!(f, "{sign}{}", self.constant.abs())
        }
    }
}

impl FromStr for Affine {
    type Err = String;

    /// Accepts sums of terms such as `2m`, `-n`, `1/2`, `3/2*e`, `n-1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty expression".into());
        }
        let bytes = s.as_bytes();
        let mut out = Affine::zero();
        let mut i = 0;
        while i < bytes.len() {
            let start = i;
            let mut sign = Rational64::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if start != 0 {
                return Err(format!("expected '+' or '-' at position {}", i + 1));
            }
            let num_start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            let coeff = if i > num_start {
                s[num_start..i]
                    .parse::<Rational64>()
                    .map_err(|_| format!("bad number '{}'", &s[num_start..i]))?
            } else {
                Rational64::one()
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let id_start = i;
            if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
            }
            let term = if i > id_start {
                Affine::var(&s[id_start..i]).scale(coeff)
            } else if i > num_start {
                Affine::constant(coeff)
            } else {
                return Err(format!("expected a term at position {}", start + 1));
            };
            out = out + term.scale(sign);
        }
        Ok(out)
    }
}
