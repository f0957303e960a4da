//! Separable permutations, di-sk trees and the descent polynomials built on them.

pub mod cache;
pub mod disk_tree;
pub mod error;
pub mod gamma_bij;
pub mod perm;
pub mod poly;
pub mod rc_index;
pub mod schroder;
pub mod verify;

pub use error::{Error, Result};
