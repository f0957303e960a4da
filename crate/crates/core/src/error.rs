use std::fmt;

use thiserror::Error;

/// An occurrence of one of the two non-separable patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    /// The pattern that occurs, in one-line notation (`2413` or `3142`).
    pub pattern: Vec<u32>,
    /// 1-based positions of the occurrence in the permutation.
    pub positions: Vec<usize>,
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pat: String = self.pattern.iter().map(|v| v.to_string()).collect();
        write!(f, "{pat} at positions {:?}", self.positions)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("permutation is not separable: contains {0}")]
    NotSeparable(PatternWitness),

    #[error("polynomial is not palindromic of darga {darga}: {detail}")]
    NotPalindromic { darga: usize, detail: String },

    #[error("tree is not in {family}: {detail}")]
    NotInFamily { family: &'static str, detail: String },

    #[error("n = {requested} exceeds the brute-force cap {cap}")]
    ResourceCap { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
