//! Dense univariate polynomials and small dense linear algebra over a [`Field`].

use crate::field::{Coeff, Field};

/// Univariate polynomial; `coeffs[k]` is the coefficient of `t^k`. Never
/// stores trailing zeros, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// `t − root`.
    pub fn linear(root: &K) -> Self {
        Poly { coeffs: vec![-root.clone(), K::one()] }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc *= t;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * K::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![K::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-K::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a.clone() * b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(K::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), Poly::new(rem));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(c.clone() * d);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics in debug builds if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            Some(l) if !l.is_zero() => self.scale(&l.inv()),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.monic(), b.monic());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Yun's square-free decomposition of a nonzero polynomial: monic,
    /// pairwise coprime, square-free `(g_m, m)` with `self = lead · Π g_m^m`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = c.sub(&b.derivative());
        let mut m = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = Poly::gcd(&b, &d);
            let nb = b.exact_div(&a);
            let nc = d.exact_div(&a);
            d = nc.sub(&nb.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, m));
            }
            b = nb;
            m += 1;
        }
        out
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<K: Coeff> Poly<K> {
    /// Largest coefficient magnitude.
    pub fn scale_hint(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

/// Determinant by Gaussian elimination with first-nonzero pivoting.
///
/// Intended for exact fields; a square matrix of size zero has determinant one.
pub fn determinant<K: Field>(mut m: Vec<Vec<K>>) -> K {
    let n = m.len();
    let mut det = K::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return K::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let p_inv = p.inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * &p_inv;
            for c in col..n {
                let delta = factor.clone() * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    det
}

/// Rank by Gaussian elimination (exact fields only).
pub fn rank<K: Field>(mut m: Vec<Vec<K>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(piv, rank);
        let p_inv = m[rank][col].inv();
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() * &p_inv;
            for c in col..cols {
                let delta = factor.clone() * &m[rank][c];
                m[r][c] -= &delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Sylvester resultant of `f` and `g` given by coefficient vectors in
/// *descending* order with formal degrees `f.len() − 1` and `g.len() − 1`.
pub fn sylvester_resultant<K: Field>(f: &[K], g: &[K]) -> K {
    let d = f.len().saturating_sub(1);
    let e = g.len().saturating_sub(1);
    let n = d + e;
    let mut m = vec![vec![K::zero(); n]; n];
    for r in 0..e {
        for (k, c) in f.iter().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..d {
        for (k, c) in g.iter().enumerate() {
            m[e + r][r + k] = c.clone();
        }
    }
    determinant(m)
}

/// The polynomial of degree `< values.len()` taking `values[k]` at `t = k`.
pub fn interpolate_at_naturals<K: Field>(values: &[K]) -> Poly<K> {
    let n = values.len();
    let mut dd: Vec<K> = values.to_vec();
    for j in 1..n {
        let inv_j = K::from_i64(j as i64).inv();
        for i in (j..n).rev() {
            dd[i] = (dd[i].clone() - &dd[i - 1]) * &inv_j;
        }
    }
    // Newton form: Σ dd[j] Π_{k<j} (t − k), expanded by Horner.
    let mut acc = Poly::zero();
    for j in (0..n).rev() {
        acc = acc.mul(&Poly::linear(&K::from_i64(j as i64))).add(&Poly::constant(dd[j].clone()));
    }
    acc
}
