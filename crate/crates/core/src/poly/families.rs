//! The descent polynomials: by recurrence and by brute-force enumeration.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{GammaVector, IntPolynomial};
use crate::error::{Error, Result};
use crate::perm::{BruteForceCap, Permutation, Permutations};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Sum over permutations, refused above the cap.
    Enumeration(BruteForceCap),
    Recurrence,
}

impl Method {
    /// Enumeration with the default cap.
    pub fn enumerate() -> Method {
        Method::Enumeration(BruteForceCap::default())
    }
}

/// The polynomial families the tools know by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Descents over separable permutations.
    S,
    /// Descents over derangements.
    D,
    /// Descents over all permutations (Eulerian).
    A,
    /// Descents over permutations with a fixed point.
    Dtilde,
    /// γ-polynomial of `S_n`, in `x`.
    Gamma,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::S, Family::D, Family::A, Family::Dtilde, Family::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Family::S => "S",
            Family::D => "D",
            Family::A => "A",
            Family::Dtilde => "Dtilde",
            Family::Gamma => "Gamma",
        }
    }

    pub fn variable(self) -> &'static str {
        if self == Family::Gamma {
            "x"
        } else {
            "t"
        }
    }

    pub fn poly(self, n: usize, method: Method) -> Result<IntPolynomial> {
        match self {
            Family::S => s_poly(n, method),
            Family::D => d_poly(n, method),
            Family::A => a_poly(n, method),
            Family::Dtilde => dtilde_poly(n, method),
            Family::Gamma => gamma_poly(n, method),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}' (expected S, D, A, Dtilde or Gamma)")))
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `Σ t^{stat(π)}` over permutations of `n` passing `keep`, split across rayon by first letter.
fn histogram<F, G>(n: usize, cap: BruteForceCap, keep: F, stat: G) -> Result<IntPolynomial>
where
    F: Fn(&Permutation) -> bool + Sync,
    G: Fn(&Permutation) -> usize + Sync,
{
    cap.check(n)?;
    let counts = (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut counts = vec![0u64; n];
            for p in Permutations::with_first(n, first).filter(|p| keep(p)) {
                counts[stat(&p)] += 1;
            }
            counts
        })
        .reduce(|| vec![0u64; n], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(IntPolynomial::new(counts.into_iter().map(BigInt::from).collect()))
}

/// `S_1..=S_n` by the recurrence; index 0 is unused.
fn s_sequence(n: usize) -> Vec<IntPolynomial> {
    let mut s = vec![IntPolynomial::zero(), IntPolynomial::one()];
    let t = IntPolynomial::t();
    for m in 2..=n {
        let mut inner = IntPolynomial::zero();
        for j in 1..=m.saturating_sub(2) {
            let mut bracket = s[m - j - 1].clone();
            for i in 1..=m - j - 1 {
                bracket = &bracket + &(&s[i] * &s[m - j - i]);
            }
            inner = &inner + &(&s[j] * &bracket);
        }
        let next = &(&IntPolynomial::one_plus_t() * &s[m - 1]) + &(&t * &inner);
        s.push(next);
    }
    s
}

/// Descent polynomial of separable permutations.
pub fn s_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => Ok(s_sequence(n).swap_remove(n)),
        Method::Enumeration(cap) => histogram(n, cap, Permutation::is_separable, Permutation::des),
    }
}

/// `(S⁽¹⁾_n, S⁽²⁾_n)`: the parts of `S_n` from trees rooted at `⊕` and at `⊖`.
/// Both are `1` at `n = 1` by convention.
pub fn s_split(n: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    require_positive(n)?;
    let s = s_sequence(n);
    let t = IntPolynomial::t();
    let mut plus = vec![IntPolynomial::zero(), IntPolynomial::one()];
    let mut minus = vec![IntPolynomial::zero(), IntPolynomial::one()];
    for m in 2..=n {
        let p: IntPolynomial = (1..m).map(|j| &s[j] * &minus[m - j]).sum();
        let q: IntPolynomial = (1..m).map(|j| &s[j] * &plus[m - j]).sum();
        plus.push(p);
        minus.push(&t * &q);
    }
    Ok((plus.swap_remove(n), minus.swap_remove(n)))
}

/// `(1 + (n-1)t) P + t(1-t) P'`, the step shared by the Eulerian-type recurrences.
fn eulerian_step(n: usize, prev: &IntPolynomial) -> IntPolynomial {
    let lin = IntPolynomial::from_i64s(&[1, n as i64 - 1]);
    let tt = IntPolynomial::from_i64s(&[0, 1, -1]);
    &(&lin * prev) + &(&tt * &prev.derivative())
}

/// Descent polynomial of derangements.
pub fn d_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => {
            let mut d = IntPolynomial::zero();
            for m in 2..=n {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                d = &IntPolynomial::monomial(sign, m - 1) + &eulerian_step(m, &d);
            }
            Ok(d)
        }
        Method::Enumeration(cap) => histogram(n, cap, Permutation::is_derangement, Permutation::des),
    }
}

/// Eulerian polynomial.
pub fn a_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => {
            let mut a = IntPolynomial::one();
            for m in 2..=n {
                a = eulerian_step(m, &a);
            }
            Ok(a)
        }
        Method::Enumeration(cap) => histogram(n, cap, |_| true, Permutation::des),
    }
}

/// Descent polynomial of permutations with at least one fixed point, `A_n - D_n`.
pub fn dtilde_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => {
            let mut d = IntPolynomial::one();
            for m in 2..=n {
                let sign = if m % 2 == 1 { 1 } else { -1 };
                d = &IntPolynomial::monomial(sign, m - 1) + &eulerian_step(m, &d);
            }
            Ok(d)
        }
        Method::Enumeration(cap) => histogram(n, cap, |p| !p.is_derangement(), Permutation::des),
    }
}

/// γ-polynomial `Γ_n(x) = Σ γ_k x^k` of `S_n`.
pub fn gamma_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => {
            let x = IntPolynomial::t();
            let mut g = vec![IntPolynomial::zero(), IntPolynomial::one()];
            for m in 2..=n {
                let mut inner = IntPolynomial::zero();
                for j in 1..=m.saturating_sub(2) {
                    let mut bracket = g[m - j - 1].clone();
                    for i in 1..=m - j - 1 {
                        bracket = &bracket + &(&g[i] * &g[m - j - i]);
                    }
                    inner = &inner + &(&g[j] * &bracket);
                }
                let next = &g[m - 1] + &(&x * &inner);
                g.push(next);
            }
            Ok(g.swap_remove(n))
        }
        Method::Enumeration(_) => Ok(s_poly(n, method)?.gamma_decompose(n - 1)?.as_polynomial()),
    }
}

/// γ-vector of `S_n` at darga `n - 1`.
pub fn separable_gamma(n: usize) -> Result<GammaVector> {
    s_poly(n, Method::Recurrence)?.gamma_decompose(n - 1)
}

/// Descent polynomial of 231-avoiding permutations (Narayana numbers).
pub fn narayana_poly(n: usize, method: Method) -> Result<IntPolynomial> {
    require_positive(n)?;
    match method {
        Method::Recurrence => {
            // N(n, k+1) = C(n,k) C(n,k+1) / n
            let binom = |a: usize, b: usize| -> BigInt {
                (0..b).fold(BigInt::from(1), |acc, i| acc * BigInt::from(a - i) / BigInt::from(i + 1))
            };
            Ok(IntPolynomial::new((0..n).map(|k| binom(n, k) * binom(n, k + 1) / BigInt::from(n)).collect()))
        }
        Method::Enumeration(cap) => {
            let pattern = [2, 3, 1];
            histogram(n, cap, |p| p.find_pattern(&pattern).is_none(), Permutation::des)
        }
    }
}

/// `Σ t^{ides(π)}` over desarrangements `π` of `n`.
pub fn desarrangement_histogram(n: usize, cap: BruteForceCap) -> Result<IntPolynomial> {
    require_positive(n)?;
    histogram(n, cap, Permutation::is_desarrangement, Permutation::ides)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn first_separable_polynomials() {
        let rec: Vec<String> = (1..=4).map(|n| s_poly(n, Method::Recurrence).unwrap().to_string()).collect();
        assert_eq!(rec, ["1", "1+t", "1+4t+t^2", "1+10t+10t^2+t^3"]);
        for n in 1..=7 {
            assert_eq!(s_poly(n, Method::Recurrence).unwrap(), s_poly(n, Method::enumerate()).unwrap());
        }
    }

    #[test]
    fn split_small_cases() {
        assert_eq!(s_split(2).unwrap(), (p("1"), p("t")));
        for n in 2..=8 {
            let (a, b) = s_split(n).unwrap();
            assert_eq!(&a + &b, s_poly(n, Method::Recurrence).unwrap());
        }
    }

    #[test]
    fn derangement_polynomials() {
        assert_eq!(d_poly(2, Method::Recurrence).unwrap(), p("t"));
        assert_eq!(d_poly(4, Method::Recurrence).unwrap(), p("4t+4t^2+t^3"));
        assert_eq!(d_poly(7, Method::Recurrence).unwrap(), p("32t+392t^2+896t^3+480t^4+54t^5"));
        for n in 1..=7 {
            assert_eq!(d_poly(n, Method::Recurrence).unwrap(), d_poly(n, Method::enumerate()).unwrap());
        }
    }

    #[test]
    fn eulerian_and_complement() {
        assert_eq!(a_poly(4, Method::Recurrence).unwrap(), p("1+11t+11t^2+t^3"));
        assert_eq!(dtilde_poly(4, Method::Recurrence).unwrap(), p("1+7t+7t^2"));
        for n in 1..=7 {
            let a = a_poly(n, Method::Recurrence).unwrap();
            let d = d_poly(n, Method::Recurrence).unwrap();
            assert_eq!(dtilde_poly(n, Method::Recurrence).unwrap(), &a - &d);
            assert_eq!(dtilde_poly(n, Method::enumerate()).unwrap(), &a - &d);
            assert_eq!(a, a_poly(n, Method::enumerate()).unwrap());
        }
    }

    #[test]
    fn gamma_recurrence() {
        assert_eq!(gamma_poly(3, Method::Recurrence).unwrap(), p("1+2t"));
        assert_eq!(gamma_poly(4, Method::Recurrence).unwrap(), p("1+7t"));
        assert_eq!(gamma_poly(6, Method::Recurrence).unwrap(), p("1+30t+61t^2"));
        for n in 1..=12 {
            assert_eq!(gamma_poly(n, Method::Recurrence).unwrap(), separable_gamma(n).unwrap().as_polynomial());
        }
    }

    #[test]
    fn narayana_by_pattern() {
        for n in 1..=7 {
            assert_eq!(narayana_poly(n, Method::Recurrence).unwrap(), narayana_poly(n, Method::enumerate()).unwrap());
        }
    }

    #[test]
    fn caps_and_domain() {
        assert!(matches!(s_poly(9, Method::enumerate()), Err(Error::ResourceCap { requested: 9, cap: 8 })));
        assert!(s_poly(0, Method::Recurrence).is_err());
        assert_eq!("dtilde".parse::<Family>().unwrap(), Family::Dtilde);
        assert!("Q".parse::<Family>().is_err());
    }
}
