use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_int::ops::{Abs, BitTest, UnsignedAbs};
use dashu_int::IBig;
use dashu_ratio::RBig;

use super::{Coeff, Cx, Field};

/// A Gaussian rational `re + im·i` with `re, im ∈ Q`.
///
/// Ordering is lexicographic on `(re, im)`; it carries no algebraic meaning
/// and only serves deterministic tie-breaking.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gq {
    pub re: RBig,
    pub im: RBig,
}

impl Gq {
    pub fn new(re: RBig, im: RBig) -> Self {
        Gq { re, im }
    }

    pub fn real(re: RBig) -> Self {
        Gq { re, im: RBig::ZERO }
    }

    pub fn i() -> Self {
        Gq { re: RBig::ZERO, im: RBig::ONE }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gq::real(RBig::from_parts_signed(IBig::from(num), IBig::from(den)))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> RBig {
        if self.im.is_zero() {
            self.re.sqr()
        } else {
            self.re.sqr() + self.im.sqr()
        }
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> IBig {
        let a = IBig::from(self.re.denominator().clone());
        let b = IBig::from(self.im.denominator().clone());
        lcm(&a, &b)
    }

    /// Largest bit length among the numerators and denominators of both parts.
    pub fn bit_height(&self) -> usize {
        [&self.re, &self.im]
            .iter()
            .map(|r| r.numerator().unsigned_abs().bit_len().max(r.denominator().bit_len()))
            .max()
            .unwrap_or(0)
    }

    /// Exact fifth root inside `Q(i)`, if one exists.
    ///
    /// Real inputs are handled by integer roots of numerator and denominator;
    /// non-real inputs by rounding a numerical root to the simplest nearby
    /// Gaussian rational and verifying it.
    pub fn fifth_root(&self) -> Option<Gq> {
        if self.is_zero() {
            return Some(Gq::zero());
        }
        if self.is_real() {
            let num = self.re.numerator();
            let den = IBig::from(self.re.denominator().clone());
            let rn = num.nth_root(5);
            let rd = den.nth_root(5);
            if rn.pow(5) == *num && rd.pow(5) == den {
                return Some(Gq::real(RBig::from_parts_signed(rn, rd)));
            }
            return None;
        }
        let approx = self.to_cx(256);
        for root in approx.nth_roots(5) {
            if let Some(candidate) = root.rationalize(100) {
                if candidate.pow(5) == *self {
                    return Some(candidate);
                }
            }
        }
        None
    }
}

pub(crate) fn lcm(a: &IBig, b: &IBig) -> IBig {
    use dashu_int::ops::Gcd;
    if a.is_zero() || b.is_zero() {
        return IBig::ZERO;
    }
    let g = IBig::from(a.gcd(b));
    (a / &g * b).abs()
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::real(RBig::from(n))
    }
}

impl From<RBig> for Gq {
    fn from(r: RBig) -> Self {
        Gq::real(r)
    }
}

impl PartialOrd for Gq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Gq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl<'a> Add<&'a Gq> for Gq {
    type Output = Gq;
    fn add(self, rhs: &'a Gq) -> Gq {
        Gq { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, rhs: Gq) -> Gq {
        self + &rhs
    }
}

impl<'a> Sub<&'a Gq> for Gq {
    type Output = Gq;
    fn sub(self, rhs: &'a Gq) -> Gq {
        Gq { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, rhs: Gq) -> Gq {
        self - &rhs
    }
}

impl<'a> Mul<&'a Gq> for Gq {
    type Output = Gq;
    fn mul(self, rhs: &'a Gq) -> Gq {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gq::real(self.re * &rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Gq { re, im }
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, rhs: Gq) -> Gq {
        self * &rhs
    }
}

impl<'a> Div<&'a Gq> for Gq {
    type Output = Gq;
    fn div(self, rhs: &'a Gq) -> Gq {
        if rhs.im.is_zero() {
            return Gq { re: self.re / &rhs.re, im: self.im / &rhs.re };
        }
        let n = rhs.norm();
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &n;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &n;
        Gq { re, im }
    }
}

impl Div for Gq {
    type Output = Gq;
    fn div(self, rhs: Gq) -> Gq {
        self / &rhs
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq { re: -self.re, im: -self.im }
    }
}

impl<'a> AddAssign<&'a Gq> for Gq {
    fn add_assign(&mut self, rhs: &'a Gq) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl<'a> SubAssign<&'a Gq> for Gq {
    fn sub_assign(&mut self, rhs: &'a Gq) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl<'a> MulAssign<&'a Gq> for Gq {
    fn mul_assign(&mut self, rhs: &'a Gq) {
        if self.im.is_zero() && rhs.im.is_zero() {
            self.re *= &rhs.re;
        } else {
            *self = std::mem::take(self) * rhs;
        }
    }
}

impl Field for Gq {
    fn zero() -> Self {
        Gq { re: RBig::ZERO, im: RBig::ZERO }
    }
    fn one() -> Self {
        Gq { re: RBig::ONE, im: RBig::ZERO }
    }
    fn from_i64(n: i64) -> Self {
        Gq::from(n)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Coeff for Gq {
    fn magnitude(&self) -> f64 {
        let re = self.re.to_f64().value();
        let im = self.im.to_f64().value();
        re.hypot(im)
    }

    fn is_negligible(&self, _scale: f64, _tol: f64) -> bool {
        self.is_zero()
    }

    fn is_exact() -> bool {
        true
    }

    fn to_cx(&self, bits: usize) -> Cx {
        Cx::from_gq(self, bits)
    }
}

/// Canonical text: `p/q`, `p/q*i`, `p/q+r/s*i` or `p/q-r/s*i`.
impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.numerator() < &IBig::ZERO {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_round_trips() {
        let a = Gq::new(RBig::from(3), RBig::from(-2));
        let b = Gq::new(RBig::from_parts_signed(1.into(), 2.into()), RBig::from(5));
        let q = a.clone() / &b;
        assert_eq!(q * &b, a);
        assert_eq!(Gq::i() * Gq::i(), Gq::from(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gq::ratio(3, 4).to_string(), "3/4");
        assert_eq!(Gq::from(-2).to_string(), "-2");
        assert_eq!(Gq::new(RBig::ZERO, RBig::from(2)).to_string(), "2*i");
        assert_eq!(Gq::new(RBig::ONE, RBig::from(-3)).to_string(), "1-3*i");
        assert_eq!(Gq::new(RBig::ONE, RBig::from_parts_signed(1.into(), 3.into())).to_string(), "1+1/3*i");
    }

    #[test]
    fn fifth_roots() {
        assert_eq!(Gq::from(32).fifth_root(), Some(Gq::from(2)));
        assert_eq!(Gq::ratio(-1, 243).fifth_root(), Some(Gq::ratio(-1, 3)));
        assert_eq!(Gq::from(2).fifth_root(), None);
        let w = Gq::new(RBig::from(1), RBig::from(1));
        assert_eq!(w.pow(5).fifth_root().map(|r| r.pow(5)), Some(w.pow(5)));
        assert_eq!(Gq::new(RBig::from(1), RBig::from(2)).fifth_root(), None);
    }

    #[test]
    fn ordering_is_lexicographic() {
        let y_coef = Gq::from(0);
        let x_coef = Gq::from(1);
        assert!(y_coef < x_coef);
        assert!(Gq::new(RBig::ONE, RBig::from(-1)) < Gq::new(RBig::ONE, RBig::ZERO));
    }
}
