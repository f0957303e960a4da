//! Truncated power-series identities.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::families::{d_poly, s_poly, Method};
use super::IntPolynomial;
use crate::error::Result;

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `T_r(n) = Σ_{k=0}^{min(n,r)} (-1)^k C(r,k) r^{n-k}`.
pub fn t_r(r: usize, n: usize) -> BigInt {
    (0..=n.min(r))
        .map(|k| {
            let term = binomial(r, k) * BigInt::from(r).pow((n - k) as u32);
            if k % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Both sides of the derangement series identity, truncated below `t^order`:
/// `D_n(t) / (1-t)^{n+1}` and `Σ_{r≥1} T_r(n) t^{r-1}`.
pub fn df_gr_sides(n: usize, order: usize) -> Result<(IntPolynomial, IntPolynomial)> {
    let d = d_poly(n, Method::Recurrence)?;
    let geometric = IntPolynomial::new((0..order).map(|j| binomial(n + j, n)).collect());
    let lhs = (&d * &geometric).truncate(order);
    let rhs = IntPolynomial::new((1..=order).map(|r| t_r(r, n)).collect());
    Ok((lhs, rhs))
}

pub fn verify_df_gr_identity(n: usize, order: usize) -> Result<bool> {
    let (lhs, rhs) = df_gr_sides(n, order)?;
    Ok(lhs == rhs)
}

fn series_mul(a: &[IntPolynomial], b: &[IntPolynomial], len: usize) -> Vec<IntPolynomial> {
    let mut out = vec![IntPolynomial::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Coefficients of `z^0..=z^order` in `z + (1+t)zS + tzS² + tS³ - S`, where
/// `S = Σ_{n≥1} S_n(t) z^n` is truncated at `z^order`. All vanish when the
/// recurrence for `S_n` is right.
pub fn cubic_residual(order: usize) -> Result<Vec<IntPolynomial>> {
    let len = order + 1;
    let mut s = vec![IntPolynomial::zero()];
    for n in 1..=order {
        s.push(s_poly(n, Method::Recurrence)?);
    }
    let s2 = series_mul(&s, &s, len);
    let s3 = series_mul(&s2, &s, len);
    let t = IntPolynomial::t();
    let opt = IntPolynomial::one_plus_t();
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        let mut r = -&s[m];
        if m == 1 {
            r = &r + &IntPolynomial::one();
        }
        if m >= 1 {
            r = &r + &(&opt * &s[m - 1]);
            r = &r + &(&t * &s2[m - 1]);
        }
        r = &r + &(&t * &s3[m]);
        out.push(r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_t_values() {
        let vals: Vec<BigInt> = (1..=3).map(|r| t_r(r, 2)).collect();
        assert_eq!(vals, [0, 1, 3].map(BigInt::from));
    }

    #[test]
    fn identity_for_two() {
        let (lhs, rhs) = df_gr_sides(2, 3).unwrap();
        assert_eq!(lhs, "t+3t^2".parse().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cubic_vanishes() {
        assert!(cubic_residual(8).unwrap().iter().all(IntPolynomial::is_zero));
    }
}
