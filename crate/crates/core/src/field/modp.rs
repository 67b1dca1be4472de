//! Prime fields `F_p` with `p ≡ 1 (mod 4)`, so that `i` has an image.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::{Field, Gq};

/// Primes just below 2^62, all `≡ 1 (mod 4)`.
pub(crate) const P1: u64 = 4_611_686_018_427_387_817;
pub(crate) const P2: u64 = 4_611_686_018_427_387_761;
pub(crate) const P3: u64 = 4_611_686_018_427_387_737;

const fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

const fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

const fn sqrt_minus_one(p: u64) -> u64 {
    let mut g = 2u64;
    loop {
        if pow_mod(g, (p - 1) / 2, p) == p - 1 {
            return pow_mod(g, (p - 1) / 4, p);
        }
        g += 1;
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub(crate) struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub const SQRT_MINUS_ONE: u64 = sqrt_minus_one(P);

    fn reduce_int(n: &IBig) -> u64 {
        let r = n % IBig::from(P);
        let r = i128::try_from(r).expect("remainder fits");
        r.rem_euclid(P as i128) as u64
    }

    fn reduce_rational(r: &RBig) -> Option<Self> {
        let den = r.denominator() % UBig::from(P);
        let den = u64::try_from(den).expect("remainder fits");
        if den == 0 {
            return None;
        }
        Some(Fp(Self::reduce_int(r.numerator())) / Fp(den))
    }

    /// Image of a Gaussian rational under `i ↦ √−1 mod P`; `None` when a
    /// denominator vanishes modulo `P`.
    pub fn reduce(g: &Gq) -> Option<Self> {
        let re = Self::reduce_rational(&g.re)?;
        if g.im.is_zero() {
            return Some(re);
        }
        let im = Self::reduce_rational(&g.im)?;
        Some(re + im * Fp(Self::SQRT_MINUS_ONE))
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { P - (rhs.0 - self.0) })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(mul_mod(self.0, rhs.0, P))
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "division by zero in F_p");
        self * Fp(pow_mod(rhs.0, P - 2, P))
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

macro_rules! by_ref {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl<'a, const P: u64> $tr<&'a Fp<P>> for Fp<P> {
            type Output = Fp<P>;
            fn $m(self, rhs: &'a Fp<P>) -> Fp<P> {
                $tr::$m(self, *rhs)
            }
        }
        impl<'a, const P: u64> $atr<&'a Fp<P>> for Fp<P> {
            fn $am(&mut self, rhs: &'a Fp<P>) {
                *self = $tr::$m(*self, *rhs);
            }
        }
    };
}

by_ref!(Add, add, AddAssign, add_assign);
by_ref!(Sub, sub, SubAssign, sub_assign);
by_ref!(Mul, mul, MulAssign, mul_assign);

impl<'a, const P: u64> Div<&'a Fp<P>> for Fp<P> {
    type Output = Fp<P>;
    fn div(self, rhs: &'a Fp<P>) -> Fp<P> {
        self / *rhs
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(n: i64) -> Self {
        Fp((n as i128).rem_euclid(P as i128) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
