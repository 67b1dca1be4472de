//! Surface equations `w² = F(x, y, z)` with `F = Σ_k q_k(x, y) z^k`,
//! normal forms and their 32-coordinate points.

mod document;
mod parse;

use std::fmt;

use crate::binary_forms::{write_term, BinaryForm};
use crate::error::{Error, Result};
use crate::field::{Coeff, Field, Gq};

pub use document::{
    equation_from_document, equation_to_document, parse_coefficient, read_equation, DocumentCoeff, EquationDocument,
    TransformationDocument,
};
pub use parse::parse_expression;

/// Degree of `q_k`.
pub const fn block_degree(k: usize) -> usize {
    10 - 2 * k
}

/// `F = Σ_{k=0}^{5} q_k z^k` with `deg q_k = 10 − 2k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceEquation<K> {
    q: [BinaryForm<K>; 6],
}

impl<K: Field> SurfaceEquation<K> {
    pub fn new(q: [BinaryForm<K>; 6]) -> Result<Self> {
        for (k, f) in q.iter().enumerate() {
            if f.degree() != block_degree(k) {
                return Err(Error::Invalid(format!(
                    "q{k} has degree {}, expected {}",
                    f.degree(),
                    block_degree(k)
                )));
            }
        }
        Ok(SurfaceEquation { q })
    }

    pub fn zero() -> Self {
        SurfaceEquation { q: std::array::from_fn(|k| BinaryForm::zero(block_degree(k))) }
    }

    pub fn q(&self, k: usize) -> &BinaryForm<K> {
        &self.q[k]
    }

    pub fn blocks(&self) -> &[BinaryForm<K>; 6] {
        &self.q
    }

    /// The `z⁵` coefficient.
    pub fn leading(&self) -> &K {
        &self.q[5].coeffs()[0]
    }

    pub fn is_normal_form(&self) -> bool {
        self.q[4].is_zero() && self.leading().clone() == K::one()
    }

    pub fn eval(&self, x: &K, y: &K, z: &K) -> K {
        let mut acc = K::zero();
        for f in self.q.iter().rev() {
            acc = acc * z + &f.eval(x, y);
        }
        acc
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> SurfaceEquation<L> {
        SurfaceEquation { q: std::array::from_fn(|k| self.q[k].map(&f)) }
    }
}

/// `F = z⁵ + Σ_{k=0}^{3} q_k z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<K> {
    q: [BinaryForm<K>; 4],
}

impl<K: Field> NormalForm<K> {
    pub fn new(q: [BinaryForm<K>; 4]) -> Result<Self> {
        for (k, f) in q.iter().enumerate() {
            if f.degree() != block_degree(k) {
                return Err(Error::Invalid(format!(
                    "q{k} has degree {}, expected {}",
                    f.degree(),
                    block_degree(k)
                )));
            }
        }
        Ok(NormalForm { q })
    }

    pub fn q(&self, k: usize) -> &BinaryForm<K> {
        &self.q[k]
    }

    pub fn blocks(&self) -> &[BinaryForm<K>; 4] {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(|f| f.is_zero())
    }

    pub fn to_equation(&self) -> SurfaceEquation<K> {
        SurfaceEquation {
            q: std::array::from_fn(|k| match k {
                0..=3 => self.q[k].clone(),
                4 => BinaryForm::zero(2),
                _ => BinaryForm::one(),
            }),
        }
    }

    pub fn from_equation(f: &SurfaceEquation<K>) -> Result<Self> {
        if !f.is_normal_form() {
            return Err(Error::NotNormalForm);
        }
        Ok(NormalForm { q: std::array::from_fn(|k| f.q[k].clone()) })
    }

    /// `q_k ↦ q_k ∘ A` for every block.
    pub fn act(&self, a: &[[K; 2]; 2]) -> Self {
        NormalForm { q: std::array::from_fn(|k| self.q[k].substitute(a)) }
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> NormalForm<L> {
        NormalForm { q: std::array::from_fn(|k| self.q[k].map(&f)) }
    }
}

/// Position of the coefficient of `x^i y^j` in `q_k` within a
/// [`CoefficientPoint`]: blocks `k = 3, 2, 1, 0`, descending `i` inside a block.
pub fn point_index(k: usize, i: usize, j: usize) -> Result<usize> {
    if k > 3 || i + j != block_degree(k) {
        return Err(Error::Invalid(format!("no coordinate x^{i} y^{j} in block {k}")));
    }
    let offset: usize = (k + 1..=3).map(|b| block_degree(b) + 1).sum();
    Ok(offset + j)
}

/// The `(k, i, j)` label of every coordinate, in point order.
pub fn point_labels() -> Vec<(usize, usize, usize)> {
    (0..=3)
        .rev()
        .flat_map(|k| {
            let d = block_degree(k);
            (0..=d).map(move |j| (k, d - j, j))
        })
        .collect()
}

pub const POINT_DIMENSION: usize = 32;

/// The 32 coefficients of a normal form, a point of `P(4⁵, 6⁷, 8⁹, 10¹¹)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientPoint<K> {
    entries: Vec<K>,
}

impl<K: Field> CoefficientPoint<K> {
    pub fn new(entries: Vec<K>) -> Result<Self> {
        if entries.len() != POINT_DIMENSION {
            return Err(Error::Invalid(format!("a coefficient point has 32 entries, got {}", entries.len())));
        }
        if entries.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid("not a projective point: all coordinates vanish".into()));
        }
        Ok(CoefficientPoint { entries })
    }

    pub fn from_normal_form(nf: &NormalForm<K>) -> Result<Self> {
        let entries = (0..=3).rev().flat_map(|k| nf.q(k).coeffs().iter().cloned()).collect();
        Self::new(entries)
    }

    pub fn to_normal_form(&self) -> NormalForm<K> {
        let mut q: [BinaryForm<K>; 4] = std::array::from_fn(|k| BinaryForm::zero(block_degree(k)));
        for (pos, (k, _, j)) in point_labels().into_iter().enumerate() {
            q[k].set_coeff_of_y_power(j, self.entries[pos].clone());
        }
        NormalForm { q }
    }

    pub fn entries(&self) -> &[K] {
        &self.entries
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> Result<&K> {
        Ok(&self.entries[point_index(k, i, j)?])
    }
}

/// `x ↦ A₁₁x + A₁₂y, y ↦ A₂₁x + A₂₂y, z ↦ αz + r(x, y), w ↦ βw`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformation<K> {
    pub a: [[K; 2]; 2],
    pub alpha: K,
    pub r: BinaryForm<K>,
    pub beta: K,
}

fn mat_mul<K: Field>(a: &[[K; 2]; 2], b: &[[K; 2]; 2]) -> [[K; 2]; 2] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i][0].clone() * &b[0][j] + a[i][1].clone() * &b[1][j]))
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, t| acc * (n - t) as i64 / (t + 1) as i64)
}

impl<K: Field> Transformation<K> {
    pub fn identity() -> Self {
        Transformation {
            a: [[K::one(), K::zero()], [K::zero(), K::one()]],
            alpha: K::one(),
            r: BinaryForm::zero(2),
            beta: K::one(),
        }
    }

    pub fn linear(a: [[K; 2]; 2]) -> Self {
        Transformation { a, ..Self::identity() }
    }

    pub fn z_map(alpha: K, r: BinaryForm<K>) -> Self {
        Transformation { alpha, r, ..Self::identity() }
    }

    pub fn determinant(&self) -> K {
        self.a[0][0].clone() * &self.a[1][1] - self.a[0][1].clone() * &self.a[1][0]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    fn validate(&self) -> Result<()> {
        if self.determinant().is_zero() {
            return Err(Error::Invalid("singular linear part".into()));
        }
        if self.alpha.is_zero() || self.beta.is_zero() {
            return Err(Error::Invalid("z- and w-scales must be nonzero".into()));
        }
        if self.r.degree() != 2 {
            return Err(Error::Invalid("the z-shift must be a quadratic form".into()));
        }
        Ok(())
    }

    /// The transformation applying `self` first and then `other`, in the
    /// sense `apply(apply(F, self), other) = apply(F, self.then(other))`.
    pub fn then(&self, other: &Self) -> Self {
        Transformation {
            a: mat_mul(&self.a, &other.a),
            alpha: self.alpha.clone() * &other.alpha,
            r: other.r.scale(&self.alpha).add(&self.r.substitute(&other.a)),
            beta: self.beta.clone() * &other.beta,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        self.validate()?;
        let det_inv = self.determinant().inv();
        let a = [
            [self.a[1][1].clone() * &det_inv, -(self.a[0][1].clone() * &det_inv)],
            [-(self.a[1][0].clone() * &det_inv), self.a[0][0].clone() * &det_inv],
        ];
        let alpha = self.alpha.inv();
        let r = self.r.substitute(&a).scale(&-alpha.clone());
        Ok(Transformation { a, alpha, r, beta: self.beta.inv() })
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Transformation<L> {
        Transformation {
            a: std::array::from_fn(|i| std::array::from_fn(|j| f(&self.a[i][j]))),
            alpha: f(&self.alpha),
            r: self.r.map(&f),
            beta: f(&self.beta),
        }
    }
}

/// `F' = F(A·(x, y), αz + r(x, y)) / β²`.
pub fn apply_transformation<K: Field>(f: &SurfaceEquation<K>, t: &Transformation<K>) -> Result<SurfaceEquation<K>> {
    t.validate()?;
    let moved: Vec<BinaryForm<K>> = f.q.iter().map(|q| q.substitute(&t.a)).collect();
    let mut r_pows = vec![BinaryForm::one()];
    let mut alpha_pows = vec![K::one()];
    for m in 1..=5 {
        r_pows.push(r_pows[m - 1].mul(&t.r));
        alpha_pows.push(alpha_pows[m - 1].clone() * &t.alpha);
    }
    let beta2_inv = (t.beta.clone() * &t.beta).inv();
    let mut out = SurfaceEquation::zero();
    for (k, qk) in moved.iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        for m in 0..=k {
            let c = K::from_i64(binomial(k, m)) * &alpha_pows[m] * &beta2_inv;
            let term = qk.mul(&r_pows[k - m]).scale(&c);
            out.q[m] = out.q[m].add(&term);
        }
    }
    Ok(out)
}

impl<K: Coeff> SurfaceEquation<K> {
    pub fn scale_hint(&self) -> f64 {
        self.q.iter().map(|f| f.scale_hint()).fold(0.0, f64::max)
    }
}

fn fmt_xyz(f: &mut fmt::Formatter<'_>, i: usize, j: usize, k: usize) -> fmt::Result {
    let mut parts = Vec::new();
    for (name, e) in [("x", i), ("y", j), ("z", k)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    f.write_str(&parts.join("*"))
}

/// Expression syntax accepted by [`parse_expression`], highest `z`-power first.
impl fmt::Display for SurfaceEquation<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..=5).rev() {
            let d = block_degree(k);
            for (t, c) in self.q[k].coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (d - t, t);
                write_term(f, c, first, &|f| fmt_xyz(f, i, j, k), i + j + k == 0)?;
                first = false;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Display for NormalForm<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_equation().fmt(f)
    }
}
