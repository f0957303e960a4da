//! The joint `(ides, des)` distribution and its expansion in the basis
//! `(st)^i (1+st)^j (s+t)^{n-1-j-2i}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::families::separable_gamma;
use crate::error::{Error, Result};
use crate::perm::{BruteForceCap, Permutations};

/// Integer polynomial in `s` and `t`; `coeffs[a][b]` multiplies `s^a t^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePolynomial {
    coeffs: Vec<Vec<BigInt>>,
}

impl BivariatePolynomial {
    /// Zero polynomial with room for exponents up to `max_deg` in each variable.
    pub fn zero(max_deg: usize) -> Self {
        BivariatePolynomial { coeffs: vec![vec![BigInt::zero(); max_deg + 1]; max_deg + 1] }
    }

    pub fn max_deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, s_exp: usize, t_exp: usize) -> BigInt {
        self.coeffs.get(s_exp).and_then(|row| row.get(t_exp)).cloned().unwrap_or_default()
    }

    fn add_at(&mut self, s_exp: usize, t_exp: usize, c: &BigInt) {
        self.coeffs[s_exp][t_exp] += c;
    }

    /// Swaps the roles of `s` and `t`.
    pub fn transpose(&self) -> Self {
        let d = self.max_deg();
        let mut out = Self::zero(d);
        for a in 0..=d {
            for b in 0..=d {
                out.coeffs[b][a] = self.coeffs[a][b].clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Nonzero terms as `(s exponent, t exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for (a, row) in self.coeffs.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b, c.clone()));
                }
            }
        }
        out
    }

    /// `(st)^i (1+st)^j (s+t)^m`, inside a grid of size `max_deg`.
    fn basis(i: usize, j: usize, m: usize, max_deg: usize) -> Self {
        let mut out = Self::zero(max_deg);
        let binom = |n: usize, k: usize| -> BigInt {
            (0..k).fold(BigInt::one(), |acc, x| acc * BigInt::from(n - x) / BigInt::from(x + 1))
        };
        for a in 0..=j {
            for b in 0..=m {
                let c = binom(j, a) * binom(m, b);
                // (st)^{i+a} s^b t^{m-b}
                out.add_at(i + a + b, i + a + m - b, &c);
            }
        }
        out
    }
}

/// `Σ_{σ ∈ 𝔖_n} s^{ides(σ)} t^{des(σ)}`.
pub fn two_var_poly(n: usize, cap: BruteForceCap) -> Result<BivariatePolynomial> {
    cap.check(n)?;
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let grids: Vec<Vec<Vec<u64>>> = (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut g = vec![vec![0u64; n]; n];
            for p in Permutations::with_first(n, first) {
                g[p.ides()][p.des()] += 1;
            }
            g
        })
        .collect();
    let mut out = BivariatePolynomial::zero(n - 1);
    for g in grids {
        for (a, row) in g.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                if c > 0 {
                    out.add_at(a, b, &BigInt::from(c));
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GesselEntry {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub gamma: BigInt,
}

fn ser_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum GesselOutcome {
    Solved {
        n: usize,
        rank: usize,
        unknowns: usize,
        /// Coefficients in lexicographic `(i, j)` order.
        gammas: Vec<GesselEntry>,
        nonnegative: bool,
        /// `γ_{n,k,n-1-2k} ≥ γ^S_{n,k}` for every `k`.
        dominates_separable: bool,
    },
    /// The basis does not determine the coefficients uniquely.
    Indeterminate { n: usize, rank: usize, unknowns: usize },
}

/// Solves for `γ_{n,i,j}` exactly; reports the rank instead of assuming uniqueness.
pub fn gessel_gamma(n: usize, cap: BruteForceCap) -> Result<GesselOutcome> {
    let target = two_var_poly(n, cap)?;
    let d = n - 1;
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    for i in 0..=d / 2 {
        for j in 0..=d - 2 * i {
            unknowns.push((i, j));
        }
    }
    let columns: Vec<BivariatePolynomial> =
        unknowns.iter().map(|&(i, j)| BivariatePolynomial::basis(i, j, d - j - 2 * i, d)).collect();
    // Augmented matrix: one row per monomial s^a t^b.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for a in 0..=d {
        for b in 0..=d {
            let mut row: Vec<BigRational> =
                columns.iter().map(|c| BigRational::from_integer(c.coeff(a, b))).collect();
            row.push(BigRational::from_integer(target.coeff(a, b)));
            rows.push(row);
        }
    }
    let cols = unknowns.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    if rows[rank..].iter().any(|row| !row[cols].is_zero()) {
        return Err(Error::Domain(format!("no expansion of the n = {n} distribution in this basis")));
    }
    if rank < cols {
        return Ok(GesselOutcome::Indeterminate { n, rank, unknowns: cols });
    }
    let mut gammas = Vec::with_capacity(cols);
    for (row, &(i, j)) in rows.iter().zip(&unknowns) {
        let v = &row[cols];
        if !v.is_integer() {
            return Err(Error::Domain(format!("non-integral coefficient {v} at (i, j) = ({i}, {j})")));
        }
        gammas.push(GesselEntry { i, j, gamma: v.to_integer() });
    }
    let nonnegative = gammas.iter().all(|g| !g.gamma.is_negative());
    let sep = separable_gamma(n)?;
    let dominates_separable = (0..=d / 2).all(|k| {
        let g = gammas.iter().find(|e| e.i == k && e.j == d - 2 * k).map(|e| e.gamma.clone()).unwrap_or_default();
        g >= sep.gamma(k)
    });
    Ok(GesselOutcome::Solved { n, rank, unknowns: cols, gammas, nonnegative, dominates_separable })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_letters() {
        let p = two_var_poly(2, BruteForceCap::default()).unwrap();
        assert_eq!(p.terms(), vec![(0, 0, BigInt::from(1)), (1, 1, BigInt::from(1))]);
        match gessel_gamma(2, BruteForceCap::default()).unwrap() {
            GesselOutcome::Solved { gammas, .. } => {
                let nonzero: Vec<_> = gammas.iter().filter(|g| !g.gamma.is_zero()).collect();
                assert_eq!(nonzero.len(), 1);
                assert_eq!((nonzero[0].i, nonzero[0].j), (0, 1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symmetric_and_positive() {
        for n in 1..=6 {
            assert!(two_var_poly(n, BruteForceCap::default()).unwrap().is_symmetric());
            match gessel_gamma(n, BruteForceCap::default()).unwrap() {
                GesselOutcome::Solved { nonnegative, dominates_separable, rank, unknowns, .. } => {
                    assert!(nonnegative && dominates_separable);
                    assert_eq!(rank, unknowns);
                }
                other => panic!("{other:?}"),
            }
        }
    }
}
