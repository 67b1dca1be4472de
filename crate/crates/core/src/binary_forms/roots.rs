//! Numerical roots of binary forms (Aberth iteration).

use num_complex::Complex64;

use super::{multiplicity_at, squarefree_decomposition, BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Coeff, Cx, Field, Gq};
use crate::poly::Poly;

/// A point of `P¹` where a form vanishes, described by the linear form
/// vanishing there, with its multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveRoot {
    pub direction: LinearForm<Cx>,
    pub multiplicity: u32,
}

impl ProjectiveRoot {
    /// `t` with the root at `[t : 1]`, or `None` for the root `y = 0`.
    pub fn affine(&self) -> Option<Cx> {
        let c = self.direction.canonical();
        if c.u().is_zero() {
            None
        } else {
            Some(-c.v().clone())
        }
    }
}

fn horner64(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn aberth_f64(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let bound = (1..=n)
        .map(|k| c[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = horner64(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let step = w / (1.0 - w * s);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn horner(c: &[Cx], z: &Cx) -> (Cx, Cx) {
    let mut p = Cx::zero();
    let mut dp = Cx::zero();
    for a in c.iter().rev() {
        dp = dp * z + &p;
        p = p * z + a;
    }
    (p, dp)
}

/// All roots (with repetition) of a polynomial with nonzero leading
/// coefficient, refined to roughly `bits` bits.
pub fn polynomial_roots(p: &Poly<Cx>, bits: usize) -> Vec<Cx> {
    let n = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    let c: Vec<Cx> = p.coeffs().iter().map(|a| a.with_precision(bits)).collect();
    if n == 1 {
        return vec![-c[0].clone() / &c[1]];
    }
    let start = aberth_f64(&c.iter().map(Cx::to_complex64).collect::<Vec<_>>());
    let mut z: Vec<Cx> = start.into_iter().map(|s| Cx::from_complex64(s, bits)).collect();
    let target = (-(bits as f64) + 6.0).exp2();
    let mut previous = f64::INFINITY;
    for iteration in 0..60 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let (pv, dp) = horner(&c, &z[i]);
            if pv.is_zero() || dp.is_zero() {
                continue;
            }
            let w = pv / dp;
            let mut s = Cx::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i].clone() - &z[j];
                    if !d.is_zero() {
                        s += &(Cx::one() / d);
                    }
                }
            }
            let den = Cx::one() - w.clone() * &s;
            let step = if den.is_zero() { w } else { w / den };
            worst = worst.max(step.magnitude() / z[i].magnitude().max(1.0));
            z[i] = z[i].clone() - &step;
        }
        // Multiple roots only converge linearly; stop once progress stalls.
        if worst < target || (iteration > 3 && worst > 0.7 * previous) {
            break;
        }
        previous = worst;
    }
    z
}

fn to_cx_form(f: &BinaryForm<Gq>, bits: usize) -> Poly<Cx> {
    f.dehomogenize().map(|c| c.to_cx(bits))
}

/// Distinct roots of a nonzero exact form with their exact multiplicities.
///
/// Multiplicities come from an exact square-free decomposition, so the
/// numerical part only ever sees simple roots.
pub fn complex_roots(f: &BinaryForm<Gq>, bits: usize) -> Result<Vec<ProjectiveRoot>> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f)? {
        let mut g = g;
        if g.y_multiplicity() == Some(1) {
            out.push(ProjectiveRoot { direction: LinearForm::y(), multiplicity: m });
            g = BinaryForm::new(g.coeffs()[1..].to_vec());
        }
        for t in polynomial_roots(&to_cx_form(&g, bits), bits) {
            let direction = LinearForm::new(Cx::one(), -t).expect("u = 1");
            out.push(ProjectiveRoot { direction, multiplicity: m });
        }
    }
    Ok(out)
}

/// Roots of an approximate form. Leading coefficients below `tol` (relative
/// to the coefficient scale) count as roots at `y = 0`; nearby roots are
/// merged into clusters and replaced by their centroid.
pub fn complex_roots_approx(f: &BinaryForm<Cx>, tol: f64, bits: usize) -> Result<Vec<ProjectiveRoot>> {
    let scale = f.scale_hint();
    let coeffs = f.coeffs();
    if coeffs.iter().all(|c| c.is_negligible(scale, tol)) {
        return Err(Error::ZeroForm("complex_roots_approx"));
    }
    let at_infinity = coeffs.iter().take_while(|c| c.is_negligible(scale, tol)).count();
    let mut out = Vec::new();
    if at_infinity > 0 {
        out.push(ProjectiveRoot { direction: LinearForm::y(), multiplicity: at_infinity as u32 });
    }
    let p = Poly::new(coeffs[at_infinity..].iter().rev().cloned().collect());
    let roots = polynomial_roots(&p, bits);
    let n = roots.len().max(1);
    let radius = (6.0 - bits as f64 / n as f64).exp2().max(tol.sqrt());
    let mut cluster_of: Vec<usize> = (0..roots.len()).collect();
    for i in 0..roots.len() {
        for j in 0..i {
            let d = (roots[i].clone() - &roots[j]).magnitude();
            if d <= radius * roots[i].magnitude().max(1.0) {
                let (a, b) = (cluster_of[i], cluster_of[j]);
                for c in cluster_of.iter_mut() {
                    if *c == a {
                        *c = b;
                    }
                }
            }
        }
    }
    let mut seen: Vec<usize> = Vec::new();
    for &c in &cluster_of {
        if seen.contains(&c) {
            continue;
        }
        seen.push(c);
        let members: Vec<&Cx> = (0..roots.len()).filter(|&k| cluster_of[k] == c).map(|k| &roots[k]).collect();
        let mut sum = Cx::zero();
        for m in &members {
            sum += m;
        }
        let mut centroid = sum / Cx::from_i64(members.len() as i64);
        if members.len() > 1 {
            centroid = refine_multiple_root(&p, members.len(), centroid, bits);
        }
        let direction = LinearForm::new(Cx::one(), -centroid).expect("u = 1");
        out.push(ProjectiveRoot { direction, multiplicity: members.len() as u32 });
    }
    Ok(out)
}

/// Newton iteration on `p^(m−1)`, for which a root of multiplicity `m` is simple.
fn refine_multiple_root(p: &Poly<Cx>, m: usize, start: Cx, bits: usize) -> Cx {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let c = d.coeffs();
    let mut z = start;
    for _ in 0..8 {
        let (v, dv) = horner(c, &z);
        if v.is_zero() || dv.is_zero() {
            break;
        }
        let step = v / dv;
        let small = step.magnitude() <= (-(bits as f64) + 4.0).exp2() * z.magnitude().max(1.0);
        z = z - step;
        if small {
            break;
        }
    }
    z
}

/// Working precision large enough to pin down rational roots of `f`.
fn rational_root_bits(f: &BinaryForm<Gq>, bits: usize) -> usize {
    let h: usize = f.coeffs().iter().map(Gq::bit_height).sum::<usize>()
        + f.coeffs().iter().map(Gq::bit_height).max().unwrap_or(0);
    bits.max(2 * h + 64)
}

/// Linear factors of `f` defined over `Q(i)`, canonical and sorted, each with
/// its exact multiplicity. Found numerically and then verified exactly.
pub fn exact_linear_factors(f: &BinaryForm<Gq>, bits: usize) -> Result<Vec<(LinearForm<Gq>, u32)>> {
    let work = rational_root_bits(f, bits);
    let mut out = Vec::new();
    for root in complex_roots(f, work)? {
        let candidate = match root.affine() {
            None => LinearForm::y(),
            Some(t) => match t.rationalize(work - 16) {
                Some(r) => LinearForm::new(Gq::one(), -r)?,
                None => continue,
            },
        };
        let m = multiplicity_at(f, &candidate, 0.0)? as u32;
        if m > 0 {
            out.push((candidate, m));
        }
    }
    out.sort_by_key(|a| a.0.sort_key());
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(c: &[i64]) -> BinaryForm<Gq> {
        BinaryForm::new(c.iter().map(|&v| Gq::from(v)).collect())
    }

    #[test]
    fn roots_of_unity() {
        // x^5 − y^5
        let roots = complex_roots(&form(&[1, 0, 0, 0, 0, -1]), 128).unwrap();
        assert_eq!(roots.len(), 5);
        for r in roots {
            let t = r.affine().unwrap();
            assert!((t.pow(5) - &Cx::one()).magnitude() < 1e-30);
        }
    }

    #[test]
    fn multiplicities_and_infinity() {
        // y^2 (x − y)^3 (x + 2y)
        let f = BinaryForm::y()
            .pow(2)
            .mul(&form(&[1, -1]).pow(3))
            .mul(&form(&[1, 2]));
        let roots = complex_roots(&f, 128).unwrap();
        let mut mults: Vec<u32> = roots.iter().map(|r| r.multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 2, 3]);
        assert!(roots.iter().any(|r| r.affine().is_none() && r.multiplicity == 2));
    }

    #[test]
    fn exact_factors_are_found() {
        // (2x − 3y)^2 (x + i y)(x^2 + 2y^2)
        let l1 = BinaryForm::new(vec![Gq::from(2), Gq::from(-3)]);
        let l2 = BinaryForm::new(vec![Gq::one(), Gq::i()]);
        let f = l1.pow(2).mul(&l2).mul(&form(&[1, 0, 2]));
        let factors = exact_linear_factors(&f, 128).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.contains(&(LinearForm::new(Gq::one(), Gq::ratio(-3, 2)).unwrap(), 2)));
        assert!(factors.contains(&(LinearForm::new(Gq::one(), Gq::i()).unwrap(), 1)));
    }

    #[test]
    fn approximate_clusters() {
        // (x − y)^3 (x + 3y) in floating point
        let f = form(&[1, -1]).pow(3).mul(&form(&[1, 3])).map(|c| c.to_cx(128));
        let roots = complex_roots_approx(&f, 1e-30, 128).unwrap();
        assert_eq!(roots.len(), 2);
        let triple = roots.iter().find(|r| r.multiplicity == 3).unwrap();
        assert!((triple.affine().unwrap() - &Cx::one()).magnitude() < 1e-20);
    }
}
