//! Coefficient fields.
//!
//! Three fields carry the computations in this crate:
//!
//! * [`Gq`], the Gaussian rationals `Q(i)`, used by every exact decision;
//! * [`Cx`], complex numbers with a configurable binary working precision,
//!   used by root finding and the numeric oracles;
//! * `Fp<P>`, word-sized prime fields with `P ≡ 1 (mod 4)`, used for the
//!   modular smoothness certificate.
//!
//! Generic polynomial code is written against [`Field`]; code that needs a
//! notion of "numerically zero" uses [`Coeff`].

mod approx;
mod gaussian;
pub(crate) mod modp;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use approx::{Cx, Precision, Real};
pub use gaussian::Gq;

/// A commutative field of characteristic zero or large characteristic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

/// Coefficients that can be compared against a tolerance.
///
/// Exact fields treat "negligible" as "zero" and ignore the tolerance.
pub trait Coeff: Field {
    /// Absolute value as a double, saturating for very large values.
    fn magnitude(&self) -> f64;

    /// `|self| ≤ tol · max(1, scale)`.
    fn is_negligible(&self, scale: f64, tol: f64) -> bool;

    fn is_exact() -> bool;

    fn to_cx(&self, bits: usize) -> Cx;
}
