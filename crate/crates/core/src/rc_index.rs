//! The rc-index: tree shapes grouped by the sequence of their right-chain lengths.
//!
//! Each shape contributes the noncommutative monomial `c_{l_1} c_{l_2} ⋯ c_{l_r}`
//! where `l_i` is the length of its `i`-th right chain.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::disk_tree::{enumerate_shapes, TreeShape};
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// A word in the generators `c_1, c_2, …`, stored as the list of indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NCMonomial(pub Vec<u32>);

impl NCMonomial {
    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the indices, `n - 1` for a monomial of `Φ_n`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn odd_factors(&self) -> usize {
        self.0.iter().filter(|&&f| f % 2 == 1).count()
    }

    pub fn even_factors(&self) -> usize {
        self.0.len() - self.odd_factors()
    }

    fn display_key(&self) -> (Reverse<usize>, Vec<u32>, Vec<u32>) {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        (Reverse(self.0.len()), parts, self.0.clone())
    }
}

/// Longer words first; among equal lengths, by the sorted multiset of
/// indices, then lexicographically.
impl Ord for NCMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.display_key().cmp(&other.display_key())
    }
}

impl PartialOrd for NCMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for NCMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == g {
                run += 1;
            }
            if run == 1 {
                write!(f, "c_{g}")?;
            } else {
                write!(f, "c_{g}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Monomial of a shape: its right-chain lengths in chain order.
pub fn monomial_of_shape(shape: &TreeShape) -> NCMonomial {
    NCMonomial(shape.right_chains().lengths().into_iter().map(|l| l as u32).collect())
}

/// `Φ_n`: multiplicity of each monomial over all shapes with `n - 1` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCIndex {
    pub n: usize,
    pub terms: BTreeMap<NCMonomial, u64>,
}

impl RCIndex {
    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn distinct_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn multiplicity(&self, m: &NCMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Substitutes `values[i - 1]` for `c_i`.
    pub fn evaluate(&self, values: &[BigInt]) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, &mult) in &self.terms {
            let mut prod = BigInt::from(mult);
            for &g in m.factors() {
                let v = values
                    .get(g as usize - 1)
                    .ok_or_else(|| Error::Domain(format!("no value supplied for c_{g}")))?;
                prod *= v;
            }
            total += prod;
        }
        Ok(total)
    }

    /// Every generator set to `value`.
    pub fn evaluate_constant(&self, value: i64) -> BigInt {
        let values = vec![BigInt::from(value); self.n.max(1)];
        self.evaluate(&values).expect("every generator has a value")
    }

    /// `c_i ↦ 2t^{i/2}` for even `i`, `t^{(i-1)/2}(1+t)` for odd `i`.
    pub fn substitute_ab(&self) -> IntPolynomial {
        let image = |g: u32| -> IntPolynomial {
            let g = g as usize;
            if g % 2 == 0 {
                IntPolynomial::monomial(2, g / 2)
            } else {
                IntPolynomial::one_plus_t().shift((g - 1) / 2)
            }
        };
        self.terms
            .iter()
            .map(|(m, &mult)| {
                let prod = m.factors().iter().fold(IntPolynomial::one(), |acc, &g| &acc * &image(g));
                prod.scale(&BigInt::from(mult))
            })
            .sum()
    }

    /// `Σ 2^{r_e}` over shapes with exactly `n - 1 - 2k` odd chains.
    pub fn gamma_from_shapes(&self, k: usize) -> BigInt {
        let Some(odd) = (self.n - 1).checked_sub(2 * k) else { return BigInt::zero() };
        self.terms
            .iter()
            .filter(|(m, _)| m.odd_factors() == odd)
            .map(|(m, &mult)| BigInt::from(mult) << m.even_factors())
            .sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(m, mult)| serde_json::json!({ "factors": m.0, "mult": mult }))
            .collect();
        serde_json::json!({ "n": self.n, "terms": terms })
    }

    /// Parses a listing such as `c_1^3+c_1c_2+2c_2c_1+c_3` for a given `n`.
    pub fn parse_listing(n: usize, s: &str) -> Result<RCIndex> {
        let mut terms = BTreeMap::new();
        for term in s.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            let (mult, m) = parse_term(term)?;
            *terms.entry(m).or_insert(0) += mult;
        }
        Ok(RCIndex { n, terms })
    }
}

fn parse_term(term: &str) -> Result<(u64, NCMonomial)> {
    let bad = || Error::Parse(format!("bad rc-index term '{term}'"));
    let chars: Vec<char> = term.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut pos = 0;
    let read_number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().ok()).flatten()
    };
    let explicit = read_number(&mut pos);
    let mult = explicit.unwrap_or(1);
    let mut factors = Vec::new();
    while pos < chars.len() {
        if chars[pos] != 'c' {
            return Err(bad());
        }
        pos += 1;
        if chars.get(pos) == Some(&'_') {
            pos += 1;
        }
        let g = read_number(&mut pos).ok_or_else(bad)? as u32;
        if g == 0 {
            return Err(bad());
        }
        let mut run = 1;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            run = read_number(&mut pos).ok_or_else(bad)? as usize;
        }
        factors.extend(std::iter::repeat(g).take(run));
    }
    // A bare number is a multiple of the empty word.
    if factors.is_empty() && explicit.is_none() {
        return Err(bad());
    }
    Ok((mult, NCMonomial(factors)))
}

impl fmt::Display for RCIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, &mult) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if mult != 1 {
                write!(f, "{mult}")?;
            }
            write!(f, "{m}")?;
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl FromStr for NCMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<NCMonomial> {
        match parse_term(s)? {
            (1, m) => Ok(m),
            _ => Err(Error::Parse(format!("'{s}' carries a multiplicity"))),
        }
    }
}

/// `Φ_n` by enumerating every shape with `n - 1` nodes.
pub fn phi(n: usize) -> Result<RCIndex> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let shapes: Vec<TreeShape> = enumerate_shapes(n).collect();
    let terms = shapes
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<NCMonomial, u64>, s| {
            *acc.entry(monomial_of_shape(s)).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    // The single shape with no nodes has no chains.
    let terms = if n == 1 { BTreeMap::from([(NCMonomial(Vec::new()), 1)]) } else { terms };
    Ok(RCIndex { n, terms })
}

/// Catalan number `C_m`.
pub fn catalan(m: usize) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..m {
        c = c * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk_tree::BinaryTree;

    #[test]
    fn small_indices() {
        assert_eq!(phi(2).unwrap().to_string(), "c_1");
        assert_eq!(phi(4).unwrap().to_string(), "c_1^3+c_1c_2+2c_2c_1+c_3");
        assert_eq!(
            phi(5).unwrap().to_string(),
            "c_1^4+c_1^2c_2+2c_1c_2c_1+3c_2c_1^2+2c_2^2+c_1c_3+3c_3c_1+c_4"
        );
        assert_eq!(phi(1).unwrap().to_string(), "1");
    }

    #[test]
    fn listing_round_trip() {
        let s = "c_1^3+c_1c_2+2c_2c_1+c_3";
        let idx = RCIndex::parse_listing(4, s).unwrap();
        assert_eq!(idx, phi(4).unwrap());
        assert_eq!(idx.to_string(), s);
        assert_eq!("c1^2c3".parse::<NCMonomial>().unwrap(), NCMonomial(vec![1, 1, 3]));
        assert!("2c_1".parse::<NCMonomial>().is_err());
        assert!(RCIndex::parse_listing(4, "c_0").is_err());
        assert!(RCIndex::parse_listing(4, "x_1").is_err());
        assert_eq!(RCIndex::parse_listing(1, "1").unwrap(), phi(1).unwrap());
    }

    #[test]
    fn evaluations() {
        let idx = phi(4).unwrap();
        assert_eq!(idx.evaluate_constant(1), BigInt::from(5));
        assert_eq!(idx.evaluate_constant(2), BigInt::from(22));
        assert!(idx.evaluate(&[BigInt::from(1), BigInt::from(1)]).is_err());
        assert_eq!(idx.substitute_ab().to_string(), "1+10t+10t^2+t^3");
        assert_eq!(phi(2).unwrap().substitute_ab().to_string(), "1+t");
    }

    #[test]
    fn gamma_by_shapes() {
        let idx = phi(4).unwrap();
        assert_eq!(idx.gamma_from_shapes(0), BigInt::from(1));
        assert_eq!(idx.gamma_from_shapes(1), BigInt::from(7));
        assert_eq!(phi(5).unwrap().gamma_from_shapes(2), BigInt::from(10));
    }

    #[test]
    fn combs() {
        let left = TreeShape::new(BinaryTree::from_preorder_code("111100000").unwrap());
        assert_eq!(monomial_of_shape(&left).to_string(), "c_1^4");
        let right = TreeShape::new(BinaryTree::from_preorder_code("101010100").unwrap());
        assert_eq!(monomial_of_shape(&right).to_string(), "c_4");
    }

    #[test]
    fn json_shape() {
        let v = phi(4).unwrap().to_json();
        assert_eq!(
            v,
            serde_json::json!({"n":4,"terms":[
                {"factors":[1,1,1],"mult":1},{"factors":[1,2],"mult":1},
                {"factors":[2,1],"mult":2},{"factors":[3],"mult":1}]})
        );
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<BigInt> = (0..8).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132, 429].map(BigInt::from));
    }
}
