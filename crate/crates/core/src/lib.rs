//! Exact and approximate tools for degree-10 surfaces `w² = F(x, y, z)` in
//! the weighted projective space `P(1, 1, 2, 5)`.
//!
//! `F` is written as `Σ_k q_k(x, y) z^k` with binary forms `q_k` of degree
//! `10 − 2k`. The crate normalizes such equations, decides GIT stability
//! for the `SL₂` action on `(x, y)`, screens singularities and computes
//! orbit dimensions.

pub mod binary_forms;
pub mod error;
pub mod field;
pub mod moduli;
pub mod normalizer;
pub mod parallel;
pub mod poly;
pub mod singularities;
pub mod stability;
pub mod surface;

pub use error::{Error, Result};
