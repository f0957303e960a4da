//! Permutations in one-line notation and the descent-type statistics on them.
//!
//! All positions and values exposed by this module are 1-based.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, PatternWitness, Result};

/// The two patterns whose joint avoidance characterises separable permutations.
pub const SEPARABILITY_PATTERNS: [[u32; 4]; 2] = [[2, 4, 1, 3], [3, 1, 4, 2]];

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, checking that `word` uses each of `1..=n` once.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::Domain("permutation must have length at least 1".into()));
        }
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            if v == 0 || v as usize > n {
                return Err(Error::Domain(format!("value {v} out of range 1..={n}")));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::Domain(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u32).collect() }
    }

    /// The singleton permutation `1`.
    pub fn one() -> Self {
        Permutation::identity(1)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// `π_i` for 1-based `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.word[i - 1]
    }

    /// `DES(π) = { i ∈ [n-1] : π_i > π_{i+1} }`, ascending.
    pub fn descent_set(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn des(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Double descents `π_{i-1} > π_i > π_{i+1}` with `π_0 = π_{n+1} = +∞`.
    ///
    /// Position 1 is a double descent iff `π_1 > π_2`; position `n` never is.
    pub fn double_descents(&self) -> usize {
        let n = self.word.len();
        let get = |i: usize| -> u64 {
            if i == 0 || i == n + 1 {
                u64::MAX
            } else {
                self.word[i - 1] as u64
            }
        };
        (1..=n).filter(|&i| get(i - 1) > get(i) && get(i) > get(i + 1)).count()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { word: inv }
    }

    /// Number of `i ∈ [n-1]` such that `i+1` appears to the left of `i`.
    pub fn ides(&self) -> usize {
        self.inverse_descent_set().len()
    }

    /// The values `i` for which `i+1` sits left of `i`.
    pub fn inverse_descent_set(&self) -> Vec<usize> {
        let mut pos = vec![0usize; self.word.len() + 1];
        for (i, &v) in self.word.iter().enumerate() {
            pos[v as usize] = i;
        }
        (1..self.word.len()).filter(|&i| pos[i + 1] < pos[i]).collect()
    }

    /// The word read right to left.
    pub fn reverse(&self) -> Permutation {
        Permutation { word: self.word.iter().rev().copied().collect() }
    }

    /// `π ⊕ σ`: `σ` is shifted up by `|π|` and placed after `π`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.word.len() as u32;
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + k));
        Permutation { word }
    }

    /// `π ⊖ σ`: `π` is shifted up by `|σ|` and placed before `σ`.
    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let l = other.word.len() as u32;
        let mut word: Vec<u32> = self.word.iter().map(|&v| v + l).collect();
        word.extend_from_slice(&other.word);
        Permutation { word }
    }

    /// 1-based positions of the leftmost occurrence of `pattern`, if any.
    ///
    /// Backtracking search over subsequences; a partial choice is abandoned as
    /// soon as its relative order disagrees with the pattern's prefix.
    pub fn find_pattern(&self, pattern: &[u32]) -> Option<Vec<usize>> {
        let k = pattern.len();
        if k == 0 {
            return Some(Vec::new());
        }
        if k > self.word.len() {
            return None;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(k);
        if self.extend_occurrence(pattern, 0, &mut chosen) {
            Some(chosen.into_iter().map(|i| i + 1).collect())
        } else {
            None
        }
    }

    fn extend_occurrence(&self, pattern: &[u32], start: usize, chosen: &mut Vec<usize>) -> bool {
        let j = chosen.len();
        if j == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - j;
        for pos in start..=self.word.len() - remaining {
            let v = self.word[pos];
            let consistent = chosen.iter().enumerate().all(|(t, &q)| {
                (self.word[q] < v) == (pattern[t] < pattern[j])
            });
            if consistent {
                chosen.push(pos);
                if self.extend_occurrence(pattern, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        self.find_pattern(&pattern.word).is_some()
    }

    /// An occurrence of 2413 or 3142, if the permutation has one.
    pub fn separability_witness(&self) -> Option<PatternWitness> {
        SEPARABILITY_PATTERNS.iter().find_map(|pat| {
            self.find_pattern(pat).map(|positions| PatternWitness { pattern: pat.to_vec(), positions })
        })
    }

    pub fn is_separable(&self) -> bool {
        self.separability_witness().is_none()
    }

    pub fn is_derangement(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize != i + 1)
    }

    /// Least `i` with `π_i < π_{i+1}`, using `π_{n+1} = +∞`.
    pub fn first_ascent(&self) -> usize {
        self.word
            .windows(2)
            .position(|w| w[0] < w[1])
            .map(|i| i + 1)
            .unwrap_or(self.word.len())
    }

    /// A permutation whose first ascent is even.
    pub fn is_desarrangement(&self) -> bool {
        self.first_ascent() % 2 == 0
    }

    /// Maps `(π, j) ∈ 𝔖_{n-1} × [n]` to `σ ∈ 𝔖_n` with `σ_n = j` and the
    /// entries of `π` that are `≥ j` shifted up by one.
    ///
    /// `ides(σ) = ides(π)` when `j - 1` is an inverse descent of `π` or `j = n`,
    /// and `ides(π) + 1` otherwise.
    pub fn insert_map(&self, j: u32) -> Result<Permutation> {
        let n = self.word.len() as u32 + 1;
        if j == 0 || j > n {
            return Err(Error::Domain(format!("insertion value {j} outside 1..={n}")));
        }
        let mut word: Vec<u32> = self.word.iter().map(|&v| if v >= j { v + 1 } else { v }).collect();
        word.push(j);
        Ok(Permutation { word })
    }

    /// Shorthand for tests and fixtures: digits of a decimal literal, `n ≤ 9`.
    pub fn from_digits(s: &str) -> Result<Permutation> {
        let word = s
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("'{c}' is not a digit"))))
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(word)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Space- or comma-separated values, or a single run of digits when `n ≤ 9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let tokens: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() == 1 && tokens[0].len() > 1 {
            return Permutation::from_digits(tokens[0]);
        }
        let word = tokens
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("'{t}' is not a number"))))
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(word)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Lexicographic enumeration of `𝔖_n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<u32>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations { current: (n >= 1).then(|| (1..=n as u32).collect()) }
    }

    /// All permutations of `1..=n` starting with `first`, lexicographically.
    ///
    /// The `n` prefix classes partition `𝔖_n`, which is how the brute-force
    /// routines split work across threads.
    pub fn with_first(n: usize, first: u32) -> impl Iterator<Item = Permutation> {
        let mut start: Vec<u32> = vec![first];
        start.extend((1..=n as u32).filter(|&v| v != first));
        Permutations { current: Some(start) }.take_while(move |p| p.word[0] == first)
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        // Standard next-permutation step.
        if let Some(i) = (0..next.len().saturating_sub(1)).rev().find(|&i| next[i] < next[i + 1]) {
            let j = (i + 1..next.len()).rev().find(|&j| next[j] > next[i]).unwrap();
            next.swap(i, j);
            next[i + 1..].reverse();
            self.current = Some(next);
        }
        Some(Permutation { word: cur })
    }
}

/// Upper limit on `n` for routines that walk all of `𝔖_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCap(usize);

impl BruteForceCap {
    pub const DEFAULT: usize = 8;
    pub const MAX: usize = 10;

    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > Self::MAX {
            return Err(Error::ResourceCap { requested: max_n, cap: Self::MAX });
        }
        Ok(BruteForceCap(max_n))
    }

    pub fn max_n(self) -> usize {
        self.0
    }

    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::ResourceCap { requested: n, cap: self.0 })
        } else {
            Ok(())
        }
    }
}

impl Default for BruteForceCap {
    fn default() -> Self {
        BruteForceCap(Self::DEFAULT)
    }
}
