//! Exact integer polynomials in one variable and the checks run on them.

mod bivariate;
mod families;
mod series;
mod sturm;

pub use bivariate::{gessel_gamma, two_var_poly, BivariatePolynomial, GesselOutcome};
pub use families::{
    a_poly, d_poly, desarrangement_histogram, dtilde_poly, gamma_poly, narayana_poly, s_poly, s_split,
    separable_gamma, Family, Method,
};
pub use series::{cubic_residual, df_gr_sides, verify_df_gr_identity};
pub use sturm::{is_real_rooted, real_root_count};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A polynomial in `t` with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `t^i`; trailing zeros are trimmed, so the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.push(c.into());
        Self::new(coeffs)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// `1 + t`.
    pub fn one_plus_t() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `t = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Keeps only the terms of degree below `order`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// `a_i = a_{darga - i}` for every `i`, with zeros outside `0..=darga`.
    pub fn is_palindromic(&self, darga: usize) -> bool {
        self.palindrome_mismatch(darga).is_none()
    }

    fn palindrome_mismatch(&self, darga: usize) -> Option<usize> {
        if self.degree().is_some_and(|d| d > darga) {
            return self.degree();
        }
        (0..=darga).find(|&i| self.coeff(i) != self.coeff(darga - i))
    }

    /// Coefficients rise weakly then fall weakly between the first and last nonzero term.
    pub fn is_unimodal(&self) -> bool {
        let Some(lo) = self.low_degree() else { return true };
        let c = &self.coeffs[lo..];
        let mut i = 1;
        while i < c.len() && c[i] >= c[i - 1] {
            i += 1;
        }
        while i < c.len() && c[i] <= c[i - 1] {
            i += 1;
        }
        i == c.len()
    }

    /// Unique expansion `Σ γ_k t^k (1+t)^{darga-2k}`; fails unless palindromic of that darga.
    pub fn gamma_decompose(&self, darga: usize) -> Result<GammaVector> {
        if let Some(i) = self.palindrome_mismatch(darga) {
            return Err(Error::NotPalindromic {
                darga,
                detail: format!(
                    "coefficient of t^{i} is {} but coefficient of t^{} is {}",
                    self.coeff(i),
                    darga.saturating_sub(i),
                    if i <= darga { self.coeff(darga - i) } else { BigInt::zero() }
                ),
            });
        }
        let mut rest = self.clone();
        let mut gammas = Vec::new();
        for k in 0..=darga / 2 {
            let g = rest.coeff(k);
            if !g.is_zero() {
                rest = &rest - &Self::one_plus_t().pow(darga - 2 * k).shift(k).scale(&g);
            }
            gammas.push(g);
        }
        debug_assert!(rest.is_zero());
        Ok(GammaVector::from_full(darga, gammas))
    }

    /// JSON form: coefficient array as decimal strings, lowest degree first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|c| serde_json::Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("expected a coefficient array".into()))?;
        let coeffs = arr
            .iter()
            .map(|x| match x {
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string())),
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::Parse(format!("non-integer coefficient {n}"))),
                other => Err(Error::Parse(format!("bad coefficient {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    /// Coefficients as `i64`, if all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Writes the polynomial in variable `var`, e.g. `16t+104t^2` or `1+7x`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let a = c.abs();
            if i == 0 || !a.is_one() {
                out.push_str(&a.to_string());
            }
            match i {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

/// Accepts `16t+104t^2`, `1 + 4*t + t^2`, `-3t^5`, `0`; any single-letter variable.
impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = IntPolynomial::zero();
        for term in terms {
            acc = &acc + &parse_term(term)?;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> Result<IntPolynomial> {
    let bad = || Error::Parse(format!("bad polynomial term '{term}'"));
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    let var_pos = body.find(|c: char| c.is_ascii_alphabetic());
    let (coef_str, exp) = match var_pos {
        None => (body, 0),
        Some(p) => {
            let after = &body[p + 1..];
            let exp = if after.is_empty() {
                1
            } else {
                after.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
            };
            (body[..p].strip_suffix('*').unwrap_or(&body[..p]), exp)
        }
    };
    let coef = if coef_str.is_empty() {
        if var_pos.is_none() {
            return Err(bad());
        }
        BigInt::one()
    } else {
        coef_str.parse::<BigInt>().map_err(|_| bad())?
    };
    Ok(IntPolynomial::monomial(coef * sign, exp))
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;

            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |a, b| &a + &b)
    }
}

/// γ-coefficients of a palindromic polynomial: `Σ γ_k t^k (1+t)^{darga-2k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaVector {
    pub darga: usize,
    /// Index of the first nonzero coefficient (0 when all vanish).
    pub start: usize,
    /// `gammas[i] = γ_{start+i}`, running to `⌊darga/2⌋`.
    #[serde(serialize_with = "ser_bigints")]
    pub gammas: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    strs.serialize(s)
}

impl GammaVector {
    fn from_full(darga: usize, full: Vec<BigInt>) -> Self {
        let start = full.iter().position(|g| !g.is_zero()).unwrap_or(0);
        GammaVector { darga, start, gammas: full[start..].to_vec() }
    }

    /// `γ_k`, zero outside the stored range.
    pub fn gamma(&self, k: usize) -> BigInt {
        k.checked_sub(self.start).and_then(|i| self.gammas.get(i)).cloned().unwrap_or_default()
    }

    /// All `γ_0..γ_{⌊darga/2⌋}`.
    pub fn full(&self) -> Vec<BigInt> {
        (0..=self.darga / 2).map(|k| self.gamma(k)).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gammas.iter().all(|g| !g.is_negative())
    }

    pub fn reconstruct(&self) -> IntPolynomial {
        self.full()
            .iter()
            .enumerate()
            .map(|(k, g)| IntPolynomial::one_plus_t().pow(self.darga - 2 * k).shift(k).scale(g))
            .sum()
    }

    /// The γ-polynomial `Σ γ_k x^k`.
    pub fn as_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.full())
    }
}

/// Result of checking the interleaving chain of coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiralReport {
    /// Exponents in the order they must strictly increase.
    pub chain: Vec<usize>,
    /// Adjacent chain pairs that are equal instead of increasing.
    pub equalities: Vec<(usize, usize)>,
    /// Adjacent chain pairs that decrease.
    pub violations: Vec<(usize, usize)>,
}

impl SpiralReport {
    pub fn holds_strictly(&self) -> bool {
        self.equalities.is_empty() && self.violations.is_empty()
    }

    pub fn holds_weakly(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Chain `lo, hi, lo+1, hi-1, …` (or starting from `hi` when `from_top`) over the support.
fn interleave(lo: usize, hi: usize, from_top: bool) -> Vec<usize> {
    let (mut a, mut b) = (lo as isize, hi as isize);
    let mut chain = Vec::new();
    let mut top = from_top;
    while a <= b {
        if top {
            chain.push(b as usize);
            b -= 1;
        } else {
            chain.push(a as usize);
            a += 1;
        }
        top = !top;
    }
    chain
}

fn spiral_along(p: &IntPolynomial, chain: Vec<usize>) -> SpiralReport {
    let mut equalities = Vec::new();
    let mut violations = Vec::new();
    for w in chain.windows(2) {
        let (x, y) = (p.coeff(w[0]), p.coeff(w[1]));
        if x == y {
            equalities.push((w[0], w[1]));
        } else if x > y {
            violations.push((w[0], w[1]));
        }
    }
    SpiralReport { chain, equalities, violations }
}

/// Spiral check of the derangement polynomial in the exact form of the
/// interleaving inequalities: for `D_{2m}` the chain starts at the top
/// coefficient `d_{2m-1}`, for `D_{2m+1}` at `d_1`.
pub fn check_spiral(n: usize) -> SpiralReport {
    let d = d_poly(n, Method::Recurrence).expect("recurrence has no cap");
    let Some(hi) = d.degree() else {
        return SpiralReport { chain: Vec::new(), equalities: Vec::new(), violations: Vec::new() };
    };
    let from_top = n % 2 == 0;
    spiral_along(&d, interleave(1, hi, from_top))
}

/// Spiral check for any polynomial: tries both starting ends over the support
/// and returns the better of the two reports (fewest violations, then fewest equalities).
pub fn spiral_report(p: &IntPolynomial) -> SpiralReport {
    let (Some(lo), Some(hi)) = (p.low_degree(), p.degree()) else {
        return SpiralReport { chain: Vec::new(), equalities: Vec::new(), violations: Vec::new() };
    };
    let a = spiral_along(p, interleave(lo, hi, false));
    let b = spiral_along(p, interleave(lo, hi, true));
    let key = |r: &SpiralReport| (r.violations.len(), r.equalities.len());
    if key(&b) < key(&a) {
        b
    } else {
        a
    }
}
