//! Exact real-root counting: square-free factorisation followed by Sturm chains.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Rational coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn from_int(p: &IntPolynomial) -> RatPoly {
        RatPoly(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    fn trim(mut self) -> RatPoly {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn derivative(&self) -> RatPoly {
        RatPoly(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
            .trim()
    }

    fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        RatPoly((0..n).map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero)).collect()).trim()
    }

    fn neg(&self) -> RatPoly {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }

    fn monic(&self) -> RatPoly {
        let lc = self.leading().clone();
        RatPoly(self.0.iter().map(|c| c / &lc).collect())
    }

    /// Quotient and remainder.
    fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let mut rem = self.0.clone();
        let dd = d.degree();
        if self.0.len() < d.0.len() {
            return (RatPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.0.len() - dd];
        let lc = d.leading().clone();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (RatPoly(quot).trim(), RatPoly(rem).trim())
    }

    fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn sign_at_infinity(&self, negative: bool) -> i32 {
        let s = if self.leading().is_positive() { 1 } else { -1 };
        if negative && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }
}

/// Distinct real roots of a square-free polynomial.
fn sturm_distinct(p: &RatPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let changes = |negative: bool| {
        let signs: Vec<i32> = chain.iter().map(|q| q.sign_at_infinity(negative)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(true) - changes(false)
}

/// `(factor, multiplicity)` pairs with square-free, pairwise coprime factors.
fn square_free_parts(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.div_rem(&a0).0;
    let c = fp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        let next_b = b.div_rem(&a).0;
        let next_c = d.div_rem(&a).0;
        if a.degree() > 0 {
            out.push((a, i));
        }
        d = next_c.sub(&next_b.derivative());
        b = next_b;
        i += 1;
    }
    out
}

/// Number of real roots counted with multiplicity.
pub fn real_root_count(p: &IntPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::Domain("the zero polynomial has no finite root count".into()));
    }
    let f = RatPoly::from_int(p);
    if f.degree() == 0 {
        return Ok(0);
    }
    Ok(square_free_parts(&f).iter().map(|(g, m)| m * sturm_distinct(g)).sum())
}

/// Every root real; constants count as real-rooted.
pub fn is_real_rooted(p: &IntPolynomial) -> Result<bool> {
    Ok(real_root_count(p)? == p.degree().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(s: &str) -> usize {
        real_root_count(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(count("1+4t+t^2"), 2);
        assert_eq!(count("1+t^2"), 0);
        assert_eq!(count("1+2t+t^2"), 2);
        assert_eq!(count("t^3"), 3);
        assert_eq!(count("t^2+t^4"), 2);
        assert_eq!(count("-1+t^2"), 2);
        assert_eq!(count("5"), 0);
        // (t-1)^3 (t+2)^2 (t^2+1)
        let p: IntPolynomial = "t-1".parse::<IntPolynomial>().unwrap().pow(3);
        let q = &(&p * &"t+2".parse::<IntPolynomial>().unwrap().pow(2)) * &"1+t^2".parse().unwrap();
        assert_eq!(real_root_count(&q).unwrap(), 5);
        assert!(!is_real_rooted(&q).unwrap());
        assert!(real_root_count(&IntPolynomial::zero()).is_err());
    }
}
