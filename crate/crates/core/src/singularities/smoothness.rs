//! Smoothness of the branch curve `B = Z(F) ⊂ P(1,1,2)`.
//!
//! With `D = Res_z(F, F_z)`, `R_x = Res_z(F, F_x)` and `R_y = Res_z(F, F_y)`
//! (binary forms of degrees 40, 45, 45), the `[x : y]` of every singular
//! point is a common root of all three. A unit gcd modulo a prime lifts to
//! a unit gcd over `Q(i)`, so the cheap test runs first.

use std::fmt;

use crate::binary_forms::{
    complex_roots, exact_linear_factors, gcd_all, multiplicity_at, polynomial_roots, BinaryForm, LinearForm, Var,
};
use crate::error::{Error, Result};
use crate::field::modp::{Fp, P1, P2, P3};
use crate::field::{Coeff, Cx, Field, Gq, Precision};
use crate::poly::{interpolate_at_naturals, sylvester_resultant, Poly};
use crate::surface::NormalForm;

/// Affine chart of `P(1,1,2)` holding a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Chart {
    /// `y = 1`, `t = x`.
    YOne,
    /// `x = 1`, `t = y`.
    XOne,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    pub chart: Chart,
    pub t: Cx,
    pub z: Cx,
    /// Exact coordinates `(t, z)` when both are in `Q(i)`.
    pub exact: Option<(Gq, Gq)>,
}

impl SingularPoint {
    /// Homogeneous coordinates `[x : y : z]`.
    pub fn coordinates(&self) -> [Cx; 3] {
        match self.chart {
            Chart::YOne => [self.t.clone(), Cx::one(), self.z.clone()],
            Chart::XOne => [Cx::one(), self.t.clone(), self.z.clone()],
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some((t, z)) => match self.chart {
                Chart::YOne => write!(f, "[{t}:1:{z}]"),
                Chart::XOne => write!(f, "[1:{t}:{z}]"),
            },
            None => {
                let [x, y, z] = self.coordinates();
                write!(f, "[{}:{}:{}]", x.to_decimal_string(12), y.to_decimal_string(12), z.to_decimal_string(12))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Smoothness {
    Smooth,
    SingularAt(Vec<SingularPoint>),
    Inconclusive { reason: String },
}

impl Smoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Smoothness::Smooth)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Smoothness::Smooth => "Smooth",
            Smoothness::SingularAt(_) => "SingularAt",
            Smoothness::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Descending `z`-coefficients of `F`, `F_z`, `F_x`, `F_y`.
struct ZColumns<K> {
    f: Vec<BinaryForm<K>>,
    fz: Vec<BinaryForm<K>>,
    fx: Vec<BinaryForm<K>>,
    fy: Vec<BinaryForm<K>>,
}

impl<K: Field> ZColumns<K> {
    fn new(nf: &NormalForm<K>) -> Self {
        let q = |k: usize| -> BinaryForm<K> {
            match k {
                5 => BinaryForm::one(),
                4 => BinaryForm::zero(2),
                _ => nf.q(k).clone(),
            }
        };
        let f = (0..=5).rev().map(q).collect();
        let fz = (1..=5).rev().map(|k| q(k).scale(&K::from_i64(k as i64))).collect();
        let fx = (0..=4).rev().map(|k| q(k).derivative(Var::X)).collect();
        let fy = (0..=4).rev().map(|k| q(k).derivative(Var::Y)).collect();
        ZColumns { f, fz, fx, fy }
    }

    fn at(column: &[BinaryForm<K>], x: &K, y: &K) -> Vec<K> {
        column.iter().map(|q| q.eval(x, y)).collect()
    }

    /// `Res_z(a, b)` as a binary form of the given degree, by evaluation
    /// at `[t : 1]` for `t = 0, 1, …, degree` and interpolation.
    fn resultant_form(a: &[BinaryForm<K>], b: &[BinaryForm<K>], degree: usize) -> BinaryForm<K> {
        let one = K::one();
        let values: Vec<K> = (0..=degree)
            .map(|t| {
                let t = K::from_i64(t as i64);
                sylvester_resultant(&Self::at(a, &t, &one), &Self::at(b, &t, &one))
            })
            .collect();
        BinaryForm::homogenize(&interpolate_at_naturals(&values), degree)
    }

    fn resultants(&self) -> [BinaryForm<K>; 3] {
        [
            Self::resultant_form(&self.f, &self.fz, 40),
            Self::resultant_form(&self.f, &self.fx, 45),
            Self::resultant_form(&self.f, &self.fy, 45),
        ]
    }
}

/// Degree of the gcd of the nonzero reductions modulo `P`; `None` when `P`
/// divides a denominator or every reduction vanishes. Since the reduction of
/// the gcd over `Q(i)` divides this gcd, the degree is an upper bound.
fn modular_gcd_degree<const P: u64>(nf: &NormalForm<Gq>) -> Option<usize> {
    let mut blocks: [BinaryForm<Fp<P>>; 4] = std::array::from_fn(|k| BinaryForm::zero(nf.q(k).degree()));
    for (k, block) in blocks.iter_mut().enumerate() {
        let coeffs = nf.q(k).coeffs().iter().map(Fp::<P>::reduce).collect::<Option<Vec<_>>>()?;
        *block = BinaryForm::new(coeffs);
    }
    let reduced = NormalForm::new(blocks).ok()?;
    let forms = ZColumns::new(&reduced).resultants();
    let nonzero: Vec<&BinaryForm<Fp<P>>> = forms.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    Some(gcd_all(nonzero).ok()?.degree())
}

/// Tries to write the gcd of `forms` as a product of the lines `x`, `y` and
/// the rational linear factors of the `q_k`, given an upper bound on its
/// degree. Succeeds only when the exact multiplicities found add up to the
/// bound, in which case the product is the gcd.
fn gcd_from_candidates(
    nf: &NormalForm<Gq>,
    forms: &[&BinaryForm<Gq>],
    bound: usize,
    bits: usize,
) -> Result<Option<Vec<(LinearForm<Gq>, u32)>>> {
    let mut candidates = vec![LinearForm::x(), LinearForm::y()];
    for q in nf.blocks().iter().filter(|q| !q.is_zero()) {
        candidates.extend(exact_linear_factors(q, bits)?.into_iter().map(|(l, _)| l));
    }
    candidates.sort_by_key(LinearForm::sort_key);
    candidates.dedup();
    let mut factors = Vec::new();
    let mut total = 0;
    for l in candidates {
        let mut m = usize::MAX;
        for f in forms {
            m = m.min(multiplicity_at(f, &l, 0.0)?);
            if m == 0 {
                break;
            }
        }
        if m > 0 {
            total += m;
            factors.push((l, m as u32));
        }
    }
    Ok((total == bound).then_some(factors))
}

fn z_poly<K: Field>(column: &[BinaryForm<K>], x: &K, y: &K) -> Poly<K> {
    let mut coeffs = ZColumns::at(column, x, y);
    coeffs.reverse();
    Poly::new(coeffs)
}

fn chart_of(x: &Gq, y: &Gq) -> (Chart, Gq) {
    if y.is_zero() {
        (Chart::XOne, Gq::zero())
    } else {
        (Chart::YOne, x.clone() / y)
    }
}

fn chart_point(chart: Chart, t: &Gq) -> (Gq, Gq) {
    match chart {
        Chart::YOne => (t.clone(), Gq::one()),
        Chart::XOne => (Gq::one(), t.clone()),
    }
}

/// Singular points over an exact `[x : y]`: roots of
/// `gcd(F, F_z, F_x, F_y)(x, y, z)` in `z`.
fn points_over_exact(cols: &ZColumns<Gq>, l: &LinearForm<Gq>, bits: usize) -> Vec<SingularPoint> {
    let (x0, y0) = l.zero_point();
    let (chart, t) = chart_of(&x0, &y0);
    let (x, y) = chart_point(chart, &t);
    let h = [&cols.fz, &cols.fx, &cols.fy]
        .iter()
        .fold(z_poly(&cols.f, &x, &y), |acc, col| Poly::gcd(&acc, &z_poly(col, &x, &y)));
    if h.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let h = h.exact_div(&Poly::gcd(&h, &h.derivative()));
    let tc = t.to_cx(bits);
    polynomial_roots(&h.map(|c| c.to_cx(bits)), bits)
        .into_iter()
        .map(|z| {
            let exact = z.rationalize(bits / 2).filter(|r| h.eval(r).is_zero()).map(|r| (t.clone(), r));
            let z = exact.as_ref().map_or(z, |(_, r)| r.to_cx(bits));
            SingularPoint { chart, t: tc.clone(), z, exact }
        })
        .collect()
}

enum Located {
    Singular(SingularPoint),
    Ambiguous,
    Regular,
}

/// Candidate points over an approximate `[t : 1]`: roots of `F_z`,
/// judged by the relative size of `F`, `F_x`, `F_y` there.
fn points_over_approx(cols: &ZColumns<Gq>, t: &Cx, bits: usize, tol: f64) -> Vec<Located> {
    let approx = |col: &[BinaryForm<Gq>]| -> Vec<BinaryForm<Cx>> {
        col.iter().map(|q| q.map(|c| c.to_cx(bits))).collect()
    };
    let (f, fz, fx, fy) = (approx(&cols.f), approx(&cols.fz), approx(&cols.fx), approx(&cols.fy));
    let one = Cx::one();
    let magnitudes = |col: &[BinaryForm<Cx>]| -> Vec<f64> {
        let mut m: Vec<f64> = ZColumns::at(col, t, &one).iter().map(Coeff::magnitude).collect();
        m.reverse();
        m
    };
    let scale_at = |mags: &[f64], z: f64| -> f64 {
        mags.iter().enumerate().map(|(k, m)| m * z.powi(k as i32)).sum::<f64>().max(1.0)
    };
    let (mf, mx, my) = (magnitudes(&f), magnitudes(&fx), magnitudes(&fy));
    let (pf, px, py) = (z_poly(&f, t, &one), z_poly(&fx, t, &one), z_poly(&fy, t, &one));
    polynomial_roots(&z_poly(&fz, t, &one), bits)
        .into_iter()
        .map(|z| {
            let r = z.magnitude();
            let residual = [(&pf, &mf), (&px, &mx), (&py, &my)]
                .iter()
                .map(|(p, m)| p.eval(&z).magnitude() / scale_at(m, r))
                .fold(0.0, f64::max);
            if residual <= tol {
                Located::Singular(SingularPoint { chart: Chart::YOne, t: t.clone(), z, exact: None })
            } else if residual < tol.sqrt() {
                Located::Ambiguous
            } else {
                Located::Regular
            }
        })
        .collect()
}

/// Decides whether the branch curve of `nf` is smooth.
///
/// `Smooth` from the modular or exact resultant test is a proof; the
/// remaining verdicts locate points numerically at `precision`.
pub fn smoothness_certify(nf: &NormalForm<Gq>, precision: Precision) -> Result<Smoothness> {
    if nf.is_zero() {
        return Err(Error::Invalid("not a projective point: all coefficients vanish".into()));
    }
    let degrees = [modular_gcd_degree::<P1>(nf), modular_gcd_degree::<P2>(nf), modular_gcd_degree::<P3>(nf)];
    if degrees.contains(&Some(0)) {
        return Ok(Smoothness::Smooth);
    }
    let cols = ZColumns::new(nf);
    let forms = cols.resultants();
    let nonzero: Vec<&BinaryForm<Gq>> = forms.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Smoothness::Inconclusive { reason: "branch curve has a multiple component".into() });
    }
    let bits = 2 * precision.bits;
    let known = match degrees.iter().flatten().min() {
        Some(&bound) => gcd_from_candidates(nf, &nonzero, bound, bits)?,
        None => None,
    };
    let (factors, rest) = match known {
        Some(factors) => (factors, BinaryForm::one()),
        None => {
            let g = gcd_all(nonzero)?;
            if g.degree() == 0 {
                return Ok(Smoothness::Smooth);
            }
            let factors = exact_linear_factors(&g, bits)?;
            let mut rest = g;
            for (l, m) in &factors {
                let factor = l.as_form().pow(*m);
                rest = BinaryForm::homogenize(
                    &rest.dehomogenize().exact_div(&factor.dehomogenize()),
                    rest.degree() - factor.degree(),
                );
            }
            (factors, rest)
        }
    };
    let mut points = Vec::new();
    for (l, _) in &factors {
        points.extend(points_over_exact(&cols, l, bits));
    }
    let mut ambiguous = false;
    if rest.degree() > 0 {
        for root in complex_roots(&rest, bits)? {
            let Some(t) = root.affine() else { continue };
            for located in points_over_approx(&cols, &t, bits, precision.tolerance) {
                match located {
                    Located::Singular(p) => points.push(p),
                    Located::Ambiguous => ambiguous = true,
                    Located::Regular => {}
                }
            }
        }
    }
    if !points.is_empty() {
        return Ok(Smoothness::SingularAt(points));
    }
    if ambiguous {
        return Ok(Smoothness::Inconclusive { reason: "residuals in the ambiguous band".into() });
    }
    Ok(Smoothness::Smooth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::tests::nf;

    fn certify(s: &str) -> Smoothness {
        smoothness_certify(&nf(s), Precision::default()).unwrap()
    }

    #[test]
    fn fermat_is_smooth() {
        assert_eq!(certify("z^5 + x^10 + y^10"), Smoothness::Smooth);
    }

    #[test]
    fn cusp_at_the_origin_of_the_y_chart() {
        let Smoothness::SingularAt(points) = certify("z^5 + x^8*z") else { panic!() };
        assert!(points.iter().any(|p| p.chart == Chart::YOne && p.exact == Some((Gq::zero(), Gq::zero()))));
    }

    #[test]
    fn node_over_a_rational_point_with_nonzero_z() {
        // (z − y²)² · cubic + x¹⁰ is singular at [0:1:1].
        let Smoothness::SingularAt(points) = certify("(z - y^2)^2*(z^3 + 2*y^2*z^2 - y^4*z + 5*y^6) + x^10") else {
            panic!()
        };
        assert!(points.iter().any(|p| p.exact == Some((Gq::zero(), Gq::one()))));
    }

    #[test]
    fn singular_points_satisfy_the_equations() {
        let p = nf("(z - y^2)^2*(z^3 + 2*y^2*z^2 - y^4*z + 5*y^6) + x^10");
        let f = p.to_equation();
        let Smoothness::SingularAt(points) = smoothness_certify(&p, Precision::default()).unwrap() else { panic!() };
        for point in points {
            let (t, z) = point.exact.unwrap();
            let (x, y) = chart_point(point.chart, &t);
            assert!(f.eval(&x, &y, &z).is_zero());
        }
    }

    #[test]
    fn candidate_gcd_matches_euclid() {
        let p = nf("z^5 + y*(x^3 - y^3)*z^3 + y^2*(x^4 - y^4)*z^2 + y^3*(x^5 - y^5)*z + y^4*(x^6 - y^6)");
        let forms = ZColumns::new(&p).resultants();
        let nonzero: Vec<&BinaryForm<Gq>> = forms.iter().filter(|g| !g.is_zero()).collect();
        let g = gcd_all(nonzero.iter().copied()).unwrap();
        let bound = modular_gcd_degree::<P1>(&p).unwrap();
        assert_eq!(bound, g.degree());
        let factors = gcd_from_candidates(&p, &nonzero, bound, 256).unwrap().unwrap();
        let product = factors.iter().fold(BinaryForm::one(), |acc, (l, m)| acc.mul(&l.as_form().pow(*m)));
        assert_eq!(product.canonical(), g.canonical());
        assert!(gcd_from_candidates(&p, &nonzero, bound + 1, 256).unwrap().is_none());
    }
}
