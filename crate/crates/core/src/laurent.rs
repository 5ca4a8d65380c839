//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are arbitrary-precision integers and exponents range over all
//! of `i64`. Zero coefficients are never stored, so structural equality is
//! polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{LaurentError, ParseError};

/// An integer Laurent polynomial `sum c_k t^k`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// A constant polynomial.
    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// The monomial `c t^e`.
    pub fn monomial<C: Into<BigInt>>(c: C, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in pairs {
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// Builds `sum coeffs[i] t^(low + i)`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^e` (zero when absent).
    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Stored terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms are stored.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Largest absolute value among the coefficients (zero for `0`).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by the unit `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Multiplies every coefficient by an integer.
    pub fn scale<C: Into<BigInt>>(&self, s: C) -> Self {
        let s = s.into();
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(*e, c * &s);
        }
        p
    }

    /// The substitution `t -> t^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value at `t = 1`: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact value at an integer point `t = x` with `x != 0`, returned as a
    /// reduced fraction `(numerator, denominator)` with positive denominator.
    pub fn eval_at(&self, x: i64) -> (BigInt, BigInt) {
        assert!(x != 0, "evaluation at t = 0 is undefined for Laurent polynomials");
        let low = self.min_exp().unwrap_or(0).min(0);
        let xb = BigInt::from(x);
        let mut num = BigInt::zero();
        for (e, c) in &self.terms {
            num += c * num_traits::pow(xb.clone(), (e - low) as usize);
        }
        let mut den = num_traits::pow(xb, (-low) as usize);
        if den.is_negative() {
            den = -den;
            num = -num;
        }
        let g = num.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num /= &g;
            den /= &g;
        }
        (num, den)
    }

    /// Second derivative evaluated at `t = 1`: `sum c_k k (k - 1)`.
    pub fn second_derivative_at_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| c * BigInt::from(*e) * BigInt::from(*e - 1))
            .sum()
    }

    /// True iff `coeff(k) == coeff(-k)` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Returns the unique unit multiple `±t^k p` that is symmetric and takes
    /// the value `+1` at `t = 1`.
    pub fn normalize_alexander(&self) -> Result<Self, LaurentError> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::NotAlexanderLike("zero polynomial".into())),
        };
        if (lo + hi) % 2 != 0 {
            return Err(LaurentError::NotAlexanderLike(format!(
                "span from t^{lo} to t^{hi} has no centred unit multiple"
            )));
        }
        let centred = self.shift(-(lo + hi) / 2);
        if !centred.is_symmetric() {
            return Err(LaurentError::NotAlexanderLike("no unit multiple is symmetric".into()));
        }
        let v = centred.eval_at_one();
        if v == BigInt::one() {
            Ok(centred)
        } else if v == -BigInt::one() {
            Ok(-centred)
        } else {
            Err(LaurentError::NotAlexanderLike(format!("value at t = 1 is {v}, not ±1")))
        }
    }

    /// Searches for an integer polynomial `f` with `f(1) = ±1` and
    /// `f(t) f(t^-1) = p` up to a unit.
    ///
    /// The degree of `f` is forced to half the span of `p`; coefficients are
    /// bounded by the largest absolute coefficient of `p`. Returns `None` when
    /// `p` is not Alexander-like, the forced degree exceeds `max_degree`, or the
    /// exhaustive search finds nothing.
    pub fn fox_milnor_factor(&self, max_degree: usize) -> Option<Self> {
        let target = self.normalize_alexander().ok()?;
        let span = (target.max_exp()? - target.min_exp()?) as usize;
        let d = span / 2;
        if d > max_degree {
            return None;
        }
        let bound = target.max_abs_coeff().to_i64()?;
        let c0 = target.coeff(0).to_i64()?;
        if c0 <= 0 {
            return None;
        }
        let mut coeffs = vec![0i64; d + 1];
        let mut found = None;
        fox_milnor_search(&target, d, bound, c0, 0, 0, &mut coeffs, &mut found);
        found
    }

    /// Exact division: returns `q` with `q * divisor == self`, or `None` when
    /// the division is not exact in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlo = divisor.min_exp()?;
        let dhi = divisor.max_exp()?;
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let stop = self.min_exp()? - dlo;
        while let Some(rhi) = rem.max_exp() {
            let e = rhi - dhi;
            if e < stop {
                return None;
            }
            let (q, r) = rem.coeff(rhi).div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let term = Self::monomial(q, e);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Human-readable rendering such as `t^2 - 2t + 3 - 2t^-1 + t^-2`, highest
    /// exponent first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var = match *e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if var.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{a}{var}"));
            }
        }
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn fox_milnor_search(
    target: &LaurentPoly,
    d: usize,
    bound: i64,
    c0: i64,
    idx: usize,
    sq_sum: i64,
    coeffs: &mut Vec<i64>,
    found: &mut Option<LaurentPoly>,
) {
    if found.is_some() {
        return;
    }
    if idx == d + 1 {
        if sq_sum != c0 || coeffs[d] == 0 {
            return;
        }
        let f = LaurentPoly::from_coeffs(0, coeffs);
        let v = f.eval_at_one();
        if !(v.is_one() || v == -BigInt::one()) {
            return;
        }
        let prod = &f * &f.bar();
        if prod.normalize_alexander().ok().as_ref() == Some(target) {
            *found = Some(f);
        }
        return;
    }
    for c in -bound..=bound {
        if idx == 0 && c <= 0 {
            continue;
        }
        let s = sq_sum + c * c;
        if s > c0 {
            continue;
        }
        // The extreme coefficient of f(t) f(1/t) is c_0 c_d.
        let first = if d == 0 { c } else { coeffs[0] };
        if idx == d && BigInt::from(first * c) != target.coeff(d as i64) {
            continue;
        }
        coeffs[idx] = c;
        fox_milnor_search(target, d, bound, c0, idx + 1, s, coeffs, found);
        coeffs[idx] = 0;
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Sparse pair notation: `[(-2,1),(-1,-2),(0,3),(1,-2),(2,1)]`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({e},{c})")?;
        }
        f.write_str("]")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    /// Parses the sparse pair notation. Exponents must be strictly increasing
    /// and coefficients nonzero, matching what [`fmt::Display`] produces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(1, 1, "expected a bracketed pair list"))?;
        let mut p = Self::zero();
        let mut last: Option<i64> = None;
        let mut rest = inner;
        let mut col = 2usize;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| ParseError::new(1, col, "expected '('"))?;
            let close = open
                .find(')')
                .ok_or_else(|| ParseError::new(1, col, "unterminated pair"))?;
            let pair = &open[..close];
            let (es, cs) = pair
                .split_once(',')
                .ok_or_else(|| ParseError::new(1, col, "expected 'exponent,coefficient'"))?;
            let e: i64 = es
                .trim()
                .parse()
                .map_err(|_| ParseError::new(1, col + 1, "bad exponent"))?;
            let c: BigInt = cs
                .trim()
                .parse()
                .map_err(|_| ParseError::new(1, col + 2 + es.len(), "bad coefficient"))?;
            if c.is_zero() {
                return Err(ParseError::new(1, col, "zero coefficients are not stored"));
            }
            if let Some(l) = last {
                if e <= l {
                    return Err(ParseError::new(1, col, "exponents must be strictly increasing"));
                }
            }
            last = Some(e);
            p.add_term(e, c);
            let consumed = 1 + close + 1;
            col += consumed;
            rest = &rest[consumed..];
            if let Some(r) = rest.strip_prefix(',') {
                rest = r;
                col += 1;
                if rest.is_empty() {
                    return Err(ParseError::new(1, col, "trailing comma"));
                }
            } else if !rest.is_empty() {
                return Err(ParseError::new(1, col, "expected ',' between pairs"));
            }
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(*e, -c.clone());
        }
        p
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Determinant of a square matrix of Laurent polynomials by fraction-free
/// Bareiss elimination. The empty matrix has determinant `1`.
pub fn determinant(matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let (factor, rest) = eliminate_units(matrix.to_vec());
    &factor * &bareiss(rest)
}

/// The inverse of `p` when it is a unit `±t^k`.
fn unit_inverse(p: &LaurentPoly) -> Option<LaurentPoly> {
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) if c.abs() == BigInt::from(1) => Some(LaurentPoly::monomial(c.clone(), -e)),
        _ => None,
    }
}

/// Repeatedly expands along a unit entry, choosing the one that creates the
/// least fill-in. Returns the accumulated factor and the remaining matrix.
fn eliminate_units(mut m: Vec<Vec<LaurentPoly>>) -> (LaurentPoly, Vec<Vec<LaurentPoly>>) {
    let mut factor = LaurentPoly::one();
    loop {
        let n = m.len();
        let row_nnz: Vec<usize> = m.iter().map(|r| r.iter().filter(|p| !p.is_zero()).count()).collect();
        let col_nnz: Vec<usize> = (0..n).map(|j| m.iter().filter(|r| !r[j].is_zero()).count()).collect();
        let mut best: Option<(usize, usize, usize, LaurentPoly)> = None;
        for (i, row) in m.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                let cost = (row_nnz[i] - 1) * (col_nnz[j].max(1) - 1);
                if best.as_ref().is_some_and(|b| b.2 <= cost) {
                    continue;
                }
                if let Some(inv) = unit_inverse(p) {
                    best = Some((i, j, cost, inv));
                }
            }
        }
        let Some((i, j, _, inv)) = best else {
            return (factor, m);
        };
        factor = &factor * &m[i][j];
        if (i + j) % 2 == 1 {
            factor = -factor;
        }
        let pivot_row: Vec<LaurentPoly> = m[i].iter().map(|p| p * &inv).collect();
        let mut next = Vec::with_capacity(n - 1);
        for (r, row) in m.iter().enumerate() {
            if r == i {
                continue;
            }
            let lead = &row[j];
            let new_row = (0..n)
                .filter(|&c| c != j)
                .map(|c| {
                    if lead.is_zero() || pivot_row[c].is_zero() {
                        row[c].clone()
                    } else {
                        &row[c] - &(lead * &pivot_row[c])
                    }
                })
                .collect();
            next.push(new_row);
        }
        m = next;
    }
}

/// Fraction-free Gaussian elimination.
fn bareiss(mut m: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut sign = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return LaurentPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss elimination divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}
