//! Reduction of `w² = F` with nonzero `z⁵` coefficient to normal form.
//!
//! A Tschirnhaus shift `z ↦ z − q₄/(5q₅)` removes the `z⁴` term; the scale
//! `z ↦ q₅^(−1/5)·z` then makes the equation monic in `z`. The fifth root is
//! taken exactly when it exists in `Q(i)`.

use crate::binary_forms::BinaryForm;
use crate::error::{Error, Result};
use crate::field::{Coeff, Cx, Field, Gq, Precision};
use crate::surface::{apply_transformation, NormalForm, SurfaceEquation, Transformation};

pub fn is_normal_form<K: Field>(f: &SurfaceEquation<K>) -> bool {
    f.is_normal_form()
}

/// The shift killing `q₄`, applied. Fails when `q₅ = 0`.
pub fn tschirnhaus_shift<K: Field>(f: &SurfaceEquation<K>) -> Result<(SurfaceEquation<K>, Transformation<K>)> {
    let q5 = f.leading();
    if q5.is_zero() {
        return Err(Error::DegenerateLeading);
    }
    let c = -(K::from_i64(5) * q5).inv();
    let t = Transformation::z_map(K::one(), f.q(4).scale(&c));
    Ok((apply_transformation(f, &t)?, t))
}

fn z_scale<K: Field>(alpha: K) -> Transformation<K> {
    Transformation::z_map(alpha, BinaryForm::zero(2))
}

fn truncate_to_normal_form<K: Field>(f: &SurfaceEquation<K>) -> NormalForm<K> {
    NormalForm::new(std::array::from_fn(|k| f.q(k).clone())).expect("block degrees are preserved")
}

/// Approximate normalization with the size of what was discarded.
#[derive(Clone, Debug)]
pub struct ApproxNormalization {
    pub normal_form: NormalForm<Cx>,
    pub transformation: Transformation<Cx>,
    /// `max(|q̂₄|, |q̂₅ − 1|)` relative to the coefficient scale.
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub enum Normalized {
    Exact { normal_form: NormalForm<Gq>, transformation: Transformation<Gq> },
    Approximate(ApproxNormalization),
    /// `q₄ = 0` but `q₅` has no fifth root in `Q(i)`: the equation is monic
    /// up to the residual unit `q₅`.
    Partial { equation: SurfaceEquation<Gq>, transformation: Transformation<Gq>, residual_unit: Gq },
}

/// Exact normalization. Without an exact fifth root of `q₅`, either falls
/// back to approximate scaling (`approx = Some(precision)`) or returns the
/// partial normal form.
pub fn to_normal_form(f: &SurfaceEquation<Gq>, approx: Option<Precision>) -> Result<Normalized> {
    let (shifted, shift) = tschirnhaus_shift(f)?;
    let q5 = shifted.leading().clone();
    if let Some(root) = q5.inv().fifth_root() {
        let t = shift.then(&z_scale(root));
        let out = apply_transformation(f, &t)?;
        debug_assert!(out.is_normal_form());
        return Ok(Normalized::Exact { normal_form: truncate_to_normal_form(&out), transformation: t });
    }
    match approx {
        None => Ok(Normalized::Partial { equation: shifted, transformation: shift, residual_unit: q5 }),
        Some(p) => {
            let g = shifted.map(|c| c.to_cx(p.bits));
            let alpha = principal_fifth_root(&q5.to_cx(p.bits).inv());
            let scale = z_scale(alpha);
            let out = apply_transformation(&g, &scale)?;
            let t = shift.map(|c| c.to_cx(p.bits)).then(&scale);
            Ok(Normalized::Approximate(finish_approx(&out, t)))
        }
    }
}

fn principal_fifth_root(c: &Cx) -> Cx {
    c.nth_roots(5).into_iter().next().expect("five roots")
}

fn finish_approx(out: &SurfaceEquation<Cx>, transformation: Transformation<Cx>) -> ApproxNormalization {
    let scale = out.scale_hint().max(1.0);
    let q4 = out.q(4).scale_hint();
    let q5 = (out.leading().clone() - &Cx::one()).magnitude();
    ApproxNormalization {
        normal_form: truncate_to_normal_form(out),
        transformation,
        residual: q4.max(q5) / scale,
    }
}

/// Normalization of an approximate equation at the precision of its
/// coefficients; `q₅` below `tol` relative to the coefficient scale counts as zero.
pub fn to_normal_form_approx(f: &SurfaceEquation<Cx>, tol: f64) -> Result<ApproxNormalization> {
    if f.leading().is_negligible(f.scale_hint(), tol) {
        return Err(Error::DegenerateLeading);
    }
    let (shifted, shift) = tschirnhaus_shift(f)?;
    let scale = z_scale(principal_fifth_root(&shifted.leading().inv()));
    let out = apply_transformation(&shifted, &scale)?;
    Ok(finish_approx(&out, shift.then(&scale)))
}
