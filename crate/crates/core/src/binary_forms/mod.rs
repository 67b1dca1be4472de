//! Homogeneous binary forms in `x, y`.
//!
//! A form of degree `d` is stored as `d + 1` coefficients in descending
//! `x`-power: position `t` holds the coefficient of `x^(d−t) y^t`. All
//! multiplicity questions about the `q_k` reduce to gcd computations on these
//! forms; nothing here ever extracts a radical.

mod exact;
mod roots;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field, Gq};
use crate::poly::Poly;

pub use exact::{
    distinct_linear_factor_count, divides, gcd, gcd_all, high_multiplicity_locus, multiplicity_at,
    resultant, squarefree_decomposition, squarefree_part,
};
pub use roots::{complex_roots, complex_roots_approx, exact_linear_factors, polynomial_roots, ProjectiveRoot};

/// Partial-derivative variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm<K> {
    coeffs: Vec<K>,
}

impl<K: Field> BinaryForm<K> {
    /// Panics on an empty coefficient vector (there is no degree −1 form).
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form needs degree + 1 coefficients");
        BinaryForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { coeffs: vec![K::zero(); degree + 1] }
    }

    pub fn constant(c: K) -> Self {
        BinaryForm { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    /// `c · x^i y^j`.
    pub fn monomial(c: K, i: usize, j: usize) -> Self {
        let mut f = Self::zero(i + j);
        f.coeffs[j] = c;
        f
    }

    pub fn x() -> Self {
        Self::monomial(K::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(K::one(), 0, 1)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    /// Coefficient of `x^i y^j`; `i` is implied by the degree.
    pub fn coeff_of_y_power(&self, j: usize) -> &K {
        &self.coeffs[j]
    }

    pub fn set_coeff_of_y_power(&mut self, j: usize, c: K) {
        self.coeffs[j] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Multiplicity of `y` as a factor: the index of the first nonzero coefficient.
    pub fn y_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicity of `x` as a factor.
    pub fn x_multiplicity(&self) -> Option<usize> {
        self.coeffs.iter().rev().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "adding forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "subtracting forms of different degree");
        BinaryForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b).collect())
    }

    pub fn scale(&self, s: &K) -> Self {
        BinaryForm::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a.clone() * b);
                }
            }
        }
        BinaryForm::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal partial derivative; the derivative of a constant is the
    /// degree-0 zero form.
    pub fn derivative(&self, var: Var) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        let coeffs = (0..d)
            .map(|t| match var {
                // x^(d−t) y^t  ↦ (d−t) x^(d−1−t) y^t
                Var::X => self.coeffs[t].clone() * K::from_i64((d - t) as i64),
                // x^(d−t−1) y^(t+1) ↦ (t+1) x^(d−1−t) y^t
                Var::Y => self.coeffs[t + 1].clone() * K::from_i64((t + 1) as i64),
            })
            .collect();
        BinaryForm::new(coeffs)
    }

    /// Mixed partial `∂x^a ∂y^b`.
    pub fn partial(&self, a: usize, b: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..a {
            f = f.derivative(Var::X);
        }
        for _ in 0..b {
            f = f.derivative(Var::Y);
        }
        f
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        let d = self.degree();
        let mut total = K::zero();
        let mut ypow = K::one();
        let mut xpows = vec![K::one(); d + 1];
        for k in 1..=d {
            xpows[k] = xpows[k - 1].clone() * x;
        }
        for (t, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                total += &(c.clone() * &xpows[d - t] * &ypow);
            }
            ypow *= y;
        }
        total
    }

    /// `f(t, 1)` as a univariate polynomial in `t`.
    pub fn dehomogenize(&self) -> Poly<K> {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `y^degree · p(x / y)`; requires `deg p ≤ degree`.
    pub fn homogenize(p: &Poly<K>, degree: usize) -> Self {
        let c = p.coeffs();
        assert!(c.len() <= degree + 1, "polynomial degree exceeds target form degree");
        let mut coeffs = vec![K::zero(); degree + 1];
        for (k, v) in c.iter().enumerate() {
            coeffs[degree - k] = v.clone();
        }
        BinaryForm::new(coeffs)
    }

    /// Scaled so that the first nonzero coefficient (highest `x`-power) is 1.
    /// The zero form is returned unchanged.
    pub fn canonical(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv()),
            None => self.clone(),
        }
    }

    /// Substitution `x ↦ m[0][0]·x + m[0][1]·y`, `y ↦ m[1][0]·x + m[1][1]·y`.
    pub fn substitute(&self, m: &[[K; 2]; 2]) -> Self {
        let d = self.degree();
        let lx = BinaryForm::new(vec![m[0][0].clone(), m[0][1].clone()]);
        let ly = BinaryForm::new(vec![m[1][0].clone(), m[1][1].clone()]);
        let mut xp = vec![Self::one()];
        let mut yp = vec![Self::one()];
        for k in 1..=d {
            xp.push(xp[k - 1].mul(&lx));
            yp.push(yp[k - 1].mul(&ly));
        }
        let mut out = Self::zero(d);
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&xp[d - t].mul(&yp[t]).scale(c));
        }
        out
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> BinaryForm<L> {
        BinaryForm::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Coeff> BinaryForm<K> {
    pub fn scale_hint(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Zero up to the relative tolerance `tol`.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(1.0, tol))
    }
}

/// A linear form `u·x + v·y` with `(u, v) ≠ (0, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<K> {
    u: K,
    v: K,
}

impl<K: Field> LinearForm<K> {
    pub fn new(u: K, v: K) -> Result<Self> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { u, v })
    }

    pub fn x() -> Self {
        LinearForm { u: K::one(), v: K::zero() }
    }

    pub fn y() -> Self {
        LinearForm { u: K::zero(), v: K::one() }
    }

    pub fn u(&self) -> &K {
        &self.u
    }

    pub fn v(&self) -> &K {
        &self.v
    }

    /// Representative with leading nonzero coefficient equal to one.
    pub fn canonical(&self) -> Self {
        if self.u.is_zero() {
            LinearForm { u: K::zero(), v: K::one() }
        } else {
            LinearForm { u: K::one(), v: self.v.clone() / &self.u }
        }
    }

    /// Proportionality test (exact fields).
    pub fn equivalent(&self, other: &Self) -> bool {
        (self.u.clone() * &other.v - self.v.clone() * &other.u).is_zero()
    }

    /// The point `[x : y]` of the projective line where the form vanishes.
    pub fn zero_point(&self) -> (K, K) {
        (-self.v.clone(), self.u.clone())
    }

    pub fn as_form(&self) -> BinaryForm<K> {
        BinaryForm::new(vec![self.u.clone(), self.v.clone()])
    }

    pub fn eval(&self, x: &K, y: &K) -> K {
        self.u.clone() * x + self.v.clone() * y
    }

    /// The linear form vanishing at `[x : y]`.
    pub fn vanishing_at(x: &K, y: &K) -> Result<Self> {
        LinearForm::new(y.clone(), -x.clone()).map(|l| l.canonical())
    }

    /// `ℓ ∘ m`, where `m` substitutes the variables as in
    /// [`BinaryForm::substitute`].
    pub fn substitute(&self, m: &[[K; 2]; 2]) -> Self {
        let u = self.u.clone() * &m[0][0] + self.v.clone() * &m[1][0];
        let v = self.u.clone() * &m[0][1] + self.v.clone() * &m[1][1];
        LinearForm { u, v }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> LinearForm<L> {
        LinearForm { u: f(&self.u), v: f(&self.v) }
    }
}

impl LinearForm<Gq> {
    /// Lexicographic key on the canonical representative.
    pub fn sort_key(&self) -> (Gq, Gq) {
        let c = self.canonical();
        (c.u, c.v)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, i: usize, j: usize) -> fmt::Result {
    let mut parts = Vec::new();
    match i {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{j}")),
    }
    f.write_str(&parts.join("*"))
}

/// Writes `c·mono` as a signed term; returns whether anything was written.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &Gq,
    first: bool,
    mono: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result,
    mono_is_one: bool,
) -> fmt::Result {
    let (neg, body) = if c.is_real() {
        let s = c.re.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    };
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    if mono_is_one {
        return f.write_str(&body);
    }
    if body != "1" {
        write!(f, "{body}*")?;
    }
    mono(f)
}

impl fmt::Display for BinaryForm<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (t, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, first, &|f| fmt_monomial(f, d - t, t), d == 0)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Display for LinearForm<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_form().fmt(f)
    }
}

impl fmt::Display for LinearForm<crate::field::Cx> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        if c.u.is_zero() {
            return f.write_str("y");
        }
        write!(f, "x + ({})*y", c.v.to_decimal_string(17))
    }
}
