use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::ops::UnsignedAbs;
use dashu_ratio::RBig;
use num_complex::Complex64;

use super::{Coeff, Field, Gq};

/// Binary floating point real with per-value working precision.
pub type Real = FBig<HalfEven, 2>;

/// Working precision for the approximate mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Precision {
    /// Significand bits carried by every approximate value.
    pub bits: usize,
    /// Relative comparison tolerance τ.
    pub tolerance: f64,
}

impl Precision {
    pub const DEFAULT_BITS: usize = 128;

    /// Precision with the matching default tolerance `τ = 2^(−bits/2)`.
    pub fn bits(bits: usize) -> Self {
        let bits = bits.max(32);
        Precision { bits, tolerance: (-(bits as f64) / 2.0).exp2() }
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        Precision { tolerance, ..self }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::bits(Self::DEFAULT_BITS)
    }
}

/// Complex number with arbitrary-precision binary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Real,
    pub im: Real,
}

fn real_with_precision(x: Real, bits: usize) -> Real {
    x.with_precision(bits).value()
}

fn real_from_f64(x: f64, bits: usize) -> Real {
    let v = Real::try_from(x).unwrap_or(Real::ZERO);
    real_with_precision(v, bits)
}

fn real_to_rational(x: &Real) -> RBig {
    RBig::try_from(x.clone()).unwrap_or(RBig::ZERO)
}

impl Cx {
    pub fn new(re: Real, im: Real) -> Self {
        Cx { re, im }
    }

    pub fn from_gq(g: &Gq, bits: usize) -> Self {
        Cx {
            re: g.re.to_float(bits).value(),
            im: g.im.to_float(bits).value(),
        }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Cx { re: real_from_f64(re, bits), im: real_from_f64(im, bits) }
    }

    pub fn from_complex64(z: Complex64, bits: usize) -> Self {
        Cx::from_f64(z.re, z.im, bits)
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, bits: usize) -> Self {
        Cx {
            re: real_with_precision(self.re.clone(), bits),
            im: real_with_precision(self.im.clone(), bits),
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }

    pub fn conj(&self) -> Self {
        Cx { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> Real {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, factor: &Real) -> Self {
        Cx { re: &self.re * factor, im: &self.im * factor }
    }

    /// All `n`-th roots, refined by Newton's method from double-precision
    /// starting values.
    pub fn nth_roots(&self, n: u32) -> Vec<Cx> {
        let bits = self.precision().max(64);
        let z = self.to_complex64();
        if z.norm() == 0.0 {
            return vec![Cx::zero().with_precision(bits); n as usize];
        }
        let principal = z.powf(1.0 / n as f64);
        let iterations = 4 + (bits as f64 / 50.0).log2().ceil().max(0.0) as usize;
        (0..n)
            .map(|k| {
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                let mut r = Cx::from_complex64(principal * w, bits);
                let nn = Cx::from_i64(n as i64);
                for _ in 0..iterations {
                    let rn1 = r.pow(n - 1);
                    let f = rn1.clone() * &r - self;
                    let df = nn.clone() * &rn1;
                    if df.is_zero() {
                        break;
                    }
                    r = r - f / df;
                }
                r
            })
            .collect()
    }

    /// The simplest Gaussian rational within relative distance
    /// `2^(−bits)` of this value. Always returns a candidate; callers verify.
    pub fn rationalize(&self, bits: usize) -> Option<Gq> {
        let scale = self.magnitude().max(1.0);
        if !scale.is_finite() {
            return None;
        }
        let delta = RBig::try_from((-(bits as f64)).exp2() * scale).ok()?;
        let simplest = |x: &Real| -> RBig {
            let c = real_to_rational(x);
            RBig::simplest_in(&c - &delta, &c + &delta)
        };
        Some(Gq::new(simplest(&self.re), simplest(&self.im)))
    }

    /// Decimal rendering with `digits` significant digits per part.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let re = fmt_real(&self.re, digits);
        if self.im.repr().significand().is_zero() {
            return re;
        }
        let im = fmt_real(&self.im, digits);
        if self.re.repr().significand().is_zero() {
            return format!("{im}*i");
        }
        if let Some(stripped) = im.strip_prefix('-') {
            format!("{re}-{stripped}*i")
        } else {
            format!("{re}+{im}*i")
        }
    }
}

fn fmt_real(x: &Real, digits: usize) -> String {
    if x.repr().significand().is_zero() {
        return "0".to_string();
    }
    let v = x.to_f64().value();
    if digits <= 17 || !v.is_finite() {
        return format!("{:.*e}", digits.saturating_sub(1).min(16), v);
    }
    let dec = x.to_decimal().value().with_precision(digits).value();
    let (signif, exp) = dec.into_repr().into_parts();
    let neg = signif < dashu_int::IBig::ZERO;
    let mut s = signif.unsigned_abs().to_string();
    let mut e = exp + s.len() as isize - 1;
    while s.len() > 1 && s.ends_with('0') {
        s.pop();
    }
    if s.is_empty() {
        s.push('0');
        e = 0;
    }
    let mantissa = if s.len() > 1 { format!("{}.{}", &s[..1], &s[1..]) } else { s };
    format!("{}{}e{}", if neg { "-" } else { "" }, mantissa, e)
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr for Cx {
            type Output = Cx;
            fn $m(self, rhs: Cx) -> Cx {
                $tr::$m(self, &rhs)
            }
        }
    };
}

impl<'a> Add<&'a Cx> for Cx {
    type Output = Cx;
    fn add(self, rhs: &'a Cx) -> Cx {
        Cx { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a Cx> for Cx {
    type Output = Cx;
    fn sub(self, rhs: &'a Cx) -> Cx {
        Cx { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a Cx> for Cx {
    type Output = Cx;
    fn mul(self, rhs: &'a Cx) -> Cx {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Cx { re, im }
    }
}

impl<'a> Div<&'a Cx> for Cx {
    type Output = Cx;
    fn div(self, rhs: &'a Cx) -> Cx {
        let mut den = rhs.norm_sqr();
        if den.precision() == 0 {
            let bits = self.precision().max(Precision::DEFAULT_BITS);
            den = real_with_precision(den, bits);
        }
        assert!(!den.repr().significand().is_zero(), "division by zero in Cx");
        let re = (&self.re * &rhs.re + &self.im * &rhs.im) / &den;
        let im = (&self.im * &rhs.re - &self.re * &rhs.im) / &den;
        Cx { re, im }
    }
}

forward_by_value!(Add, add);
forward_by_value!(Sub, sub);
forward_by_value!(Mul, mul);
forward_by_value!(Div, div);

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<'a> AddAssign<&'a Cx> for Cx {
    fn add_assign(&mut self, rhs: &'a Cx) {
        *self = std::mem::replace(self, Cx::zero()) + rhs;
    }
}

impl<'a> SubAssign<&'a Cx> for Cx {
    fn sub_assign(&mut self, rhs: &'a Cx) {
        *self = std::mem::replace(self, Cx::zero()) - rhs;
    }
}

impl<'a> MulAssign<&'a Cx> for Cx {
    fn mul_assign(&mut self, rhs: &'a Cx) {
        *self = std::mem::replace(self, Cx::zero()) * rhs;
    }
}

impl Field for Cx {
    // Constants carry the default precision: a precision of zero means
    // "unlimited" to the float backend and would propagate through products.
    fn zero() -> Self {
        Cx::from_i64(0)
    }
    fn one() -> Self {
        Cx::from_i64(1)
    }
    fn from_i64(n: i64) -> Self {
        let bits = Precision::DEFAULT_BITS;
        Cx { re: real_with_precision(Real::from(n), bits), im: real_with_precision(Real::ZERO, bits) }
    }
    fn is_zero(&self) -> bool {
        self.re.repr().significand().is_zero() && self.im.repr().significand().is_zero()
    }
}

impl Coeff for Cx {
    fn magnitude(&self) -> f64 {
        let re = self.re.to_f64().value();
        let im = self.im.to_f64().value();
        re.hypot(im)
    }

    fn is_negligible(&self, scale: f64, tol: f64) -> bool {
        self.magnitude() <= tol * scale.max(1.0)
    }

    fn is_exact() -> bool {
        false
    }

    fn to_cx(&self, bits: usize) -> Cx {
        self.with_precision(bits)
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(20))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_keeps_working_precision() {
        let a = Cx::from_i64(1).with_precision(128);
        let b = Cx::from_i64(3);
        let q = a / b;
        let back = q.clone() * &Cx::from_i64(3) - &Cx::from_i64(1);
        assert!(back.magnitude() < 1e-36);
        assert!(q.precision() >= 128);
    }

    #[test]
    fn fifth_roots_of_two() {
        let two = Cx::from_i64(2).with_precision(200);
        for r in two.nth_roots(5) {
            let err = r.pow(5) - &two;
            assert!(err.magnitude() < 1e-55, "{err}");
        }
    }

    #[test]
    fn rationalize_recovers_simple_values() {
        let g = Gq::new(RBig::from_parts_signed((-7).into(), 3.into()), RBig::from_parts_signed(5.into(), 11.into()));
        let z = Cx::from_gq(&g, 160);
        assert_eq!(z.rationalize(100), Some(g));
    }

    #[test]
    fn decimal_rendering() {
        let z = Cx::from_gq(&Gq::ratio(1, 4), 128);
        assert_eq!(z.to_decimal_string(25), "2.5e-1");
        let w = Cx::from_f64(-1.5, 2.0, 128);
        assert_eq!(w.to_decimal_string(25), "-1.5e0+2e0*i");
    }
}
