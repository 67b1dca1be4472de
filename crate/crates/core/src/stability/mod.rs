//! GIT stability of normal forms under `SL₂` acting on `(x, y)`.
//!
//! In coordinates adapted to a linear form `ℓ`, the coefficient of
//! `x^i y^j` in `q_k` has weight `2j − (10 − 2k)`. All weights along `ℓ`
//! are nonnegative exactly when `ℓ^(5−k) | q_k` for every nonzero `q_k`,
//! and positive exactly when `ℓ^(6−k) | q_k`. Both conditions are decided
//! for all `ℓ` at once by gcds of [`high_multiplicity_locus`] forms.

mod oracle;

use std::fmt;

use crate::binary_forms::{exact_linear_factors, gcd_all, high_multiplicity_locus, complex_roots, BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Cx, Field, Gq, Precision};
use crate::surface::{block_degree, NormalForm};

pub use oracle::{oracle_classify, random_frame, OracleOptions, OracleReport};

/// `μ`-exponent of the coefficient of `x^i y^j` in `q_k` under
/// `diag(μ, μ⁻¹)`.
pub fn coordinate_weight(k: usize, i: usize, j: usize) -> Result<i64> {
    if k > 3 || i + j != block_degree(k) {
        return Err(Error::Invalid(format!("x^{i} y^{j} is not a monomial of q{k}")));
    }
    Ok(2 * j as i64 - block_degree(k) as i64)
}

/// Required multiplicities `(m₀, m₁, m₂, m₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MultiplicityProfile(pub [usize; 4]);

impl MultiplicityProfile {
    /// `m_k = 5 − k`: met by some `ℓ` iff the point is not stable.
    pub const NOT_STABLE: Self = MultiplicityProfile([5, 4, 3, 2]);
    /// `m_k = 6 − k`: met by some `ℓ` iff the point is unstable.
    pub const UNSTABLE: Self = MultiplicityProfile([6, 5, 4, 3]);
    /// `m_k = 4 − k`: met iff some point `[x₀ : y₀ : 0]` has multiplicity ≥ 4.
    pub const MULTIPLICITY_FOUR: Self = MultiplicityProfile([4, 3, 2, 1]);

    /// Written highest block first, as `(m₀, m₁, m₂, m₃)`.
    pub fn thresholds(&self) -> [usize; 4] {
        self.0
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

/// One-parameter subgroup `diag(μ^r, μ^−r)` in the coordinates given by
/// `frame` (a substitution matrix of determinant one).
#[derive(Clone, Debug, PartialEq)]
pub struct OnePS<K> {
    pub frame: [[K; 2]; 2],
    pub exponent: u32,
}

impl<K: Field> OnePS<K> {
    /// The subgroup adapted to `ℓ`: its frame satisfies `ℓ ∘ frame = y`.
    pub fn adapted(l: &LinearForm<K>) -> Self {
        let c = l.canonical();
        let frame = if c.u().is_zero() {
            [[K::one(), K::zero()], [K::zero(), K::one()]]
        } else {
            [[c.v().clone(), K::one()], [-K::one(), K::zero()]]
        };
        OnePS { frame, exponent: 1 }
    }
}

/// A destabilizing direction, exact when it is defined over `Q(i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Direction {
    Exact(LinearForm<Gq>),
    Approximate(LinearForm<Cx>),
}

impl Direction {
    pub fn is_exact(&self) -> bool {
        matches!(self, Direction::Exact(_))
    }

    pub fn to_cx(&self, bits: usize) -> LinearForm<Cx> {
        match self {
            Direction::Exact(l) => l.map(|c| crate::field::Coeff::to_cx(c, bits)),
            Direction::Approximate(l) => l.clone(),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Exact(l) => l.canonical().fmt(f),
            Direction::Approximate(l) => l.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub direction: Direction,
    pub profile: MultiplicityProfile,
    /// Product of all directions meeting the profile (canonical gcd).
    pub locus: BinaryForm<Gq>,
}

impl Witness {
    pub fn one_ps_exact(&self) -> Option<OnePS<Gq>> {
        match &self.direction {
            Direction::Exact(l) => Some(OnePS::adapted(l)),
            Direction::Approximate(_) => None,
        }
    }

    pub fn one_ps_approx(&self, bits: usize) -> OnePS<Cx> {
        OnePS::adapted(&self.direction.to_cx(bits))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StabilityClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl StabilityClass {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityClass::Stable => "Stable",
            StabilityClass::StrictlySemistable => "StrictlySemistable",
            StabilityClass::Unstable => "Unstable",
        }
    }
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    pub witness: Option<Witness>,
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(w) = &self.witness {
            write!(f, ", witness {}, profile {}", w.direction, w.profile)?;
        }
        Ok(())
    }
}

/// `(min, max)` of the weights of the nonzero coefficients of `q_k ∘ frame`.
pub fn weight_span_in_frame<K: Field>(nf: &NormalForm<K>, frame: &[[K; 2]; 2]) -> Option<(i64, i64)> {
    let mut span: Option<(i64, i64)> = None;
    for k in 0..=3 {
        let moved = nf.q(k).substitute(frame);
        for (j, c) in moved.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = 2 * j as i64 - block_degree(k) as i64;
            span = Some(match span {
                None => (w, w),
                Some((lo, hi)) => (lo.min(w), hi.max(w)),
            });
        }
    }
    span
}

/// Weight span along the subgroup adapted to `ℓ`; `None` for the zero point.
pub fn weight_span<K: Field>(nf: &NormalForm<K>, l: &LinearForm<K>) -> Option<(i64, i64)> {
    weight_span_in_frame(nf, &OnePS::adapted(l).frame)
}

fn smallest_direction(locus: &BinaryForm<Gq>, bits: usize) -> Result<Direction> {
    if let Some((l, _)) = exact_linear_factors(locus, bits)?.into_iter().next() {
        return Ok(Direction::Exact(l));
    }
    let mut roots: Vec<LinearForm<Cx>> = complex_roots(locus, bits)?.into_iter().map(|r| r.direction.canonical()).collect();
    roots.sort_by(|a, b| {
        let key = |l: &LinearForm<Cx>| {
            let z = l.v().to_complex64();
            (l.u().is_zero() as u8 ^ 1, z.re, z.im)
        };
        key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal)
    });
    roots
        .into_iter()
        .next()
        .map(Direction::Approximate)
        .ok_or_else(|| Error::Invalid("locus without roots".into()))
}

/// Gcd over the nonzero `q_k` of their loci of multiplicity `≥ m_k`. `None`
/// when no block constrains the direction.
pub fn profile_locus(nf: &NormalForm<Gq>, profile: &MultiplicityProfile) -> Result<Option<BinaryForm<Gq>>> {
    let mut loci = Vec::new();
    for k in 0..=3 {
        let m = profile.0[k];
        if m == 0 || nf.q(k).is_zero() {
            continue;
        }
        loci.push(high_multiplicity_locus(nf.q(k), m)?);
        if loci.last().is_some_and(|g| g.degree() == 0) {
            return Ok(Some(BinaryForm::one()));
        }
    }
    if loci.is_empty() {
        return Ok(None);
    }
    gcd_all(loci.iter()).map(Some)
}

/// A direction `ℓ` with `mult_ℓ(q_k) ≥ m_k` for every nonzero `q_k`, if any.
/// Among several, exact directions come first, then the lexicographically
/// smallest canonical coefficients.
pub fn nonstable_witness(nf: &NormalForm<Gq>, profile: &MultiplicityProfile) -> Result<Option<Witness>> {
    if nf.is_zero() {
        return Err(Error::Invalid("not a projective point: all coefficients vanish".into()));
    }
    let locus = match profile_locus(nf, profile)? {
        None => {
            return Ok(Some(Witness {
                direction: Direction::Exact(LinearForm::y()),
                profile: *profile,
                locus: BinaryForm::zero(0),
            }))
        }
        Some(g) if g.degree() == 0 => return Ok(None),
        Some(g) => g,
    };
    let direction = smallest_direction(&locus, Precision::DEFAULT_BITS)?;
    Ok(Some(Witness { direction, profile: *profile, locus }))
}

pub fn classify(nf: &NormalForm<Gq>) -> Result<StabilityVerdict> {
    let Some(not_stable) = nonstable_witness(nf, &MultiplicityProfile::NOT_STABLE)? else {
        return Ok(StabilityVerdict { class: StabilityClass::Stable, witness: None });
    };
    if let Some(w) = nonstable_witness(nf, &MultiplicityProfile::UNSTABLE)? {
        return Ok(StabilityVerdict { class: StabilityClass::Unstable, witness: Some(w) });
    }
    Ok(StabilityVerdict { class: StabilityClass::StrictlySemistable, witness: Some(not_stable) })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::binary_forms::multiplicity_at;
    use crate::surface::parse_expression;

    pub(crate) fn nf(s: &str) -> NormalForm<Gq> {
        NormalForm::from_equation(&parse_expression(s).unwrap()).unwrap()
    }

    const Y_POWERS: &str = "z^5 + y^4*z^3 + y^6*z^2 + y^8*z + y^10";
    const MONOMIAL: &str = "z^5 + x^2*y^2*z^3 + x^3*y^3*z^2 + x^4*y^4*z + x^5*y^5";
    const REMARK: &str =
        "z^5 + y*(x^3 - y^3)*z^3 + y^2*(x^4 - y^4)*z^2 + y^3*(x^5 - y^5)*z + y^4*(x^6 - y^6)";

    #[test]
    fn weights() {
        assert_eq!(coordinate_weight(3, 1, 3).unwrap(), 2);
        assert_eq!(coordinate_weight(0, 5, 5).unwrap(), 0);
        assert_eq!(coordinate_weight(3, 0, 4).unwrap(), 4);
        assert!(coordinate_weight(2, 1, 1).is_err());
    }

    #[test]
    fn weight_span_examples() {
        assert_eq!(weight_span(&nf(Y_POWERS), &LinearForm::y()), Some((4, 10)));
        let fermat = nf("z^5 + x^10 + y^10");
        assert_eq!(weight_span(&fermat, &LinearForm::y()), Some((-10, 10)));
        let p = nf("z^5 + x^3*y*z^3 + 2*x*y^9");
        let (lo, hi) = weight_span(&p, &LinearForm::y()).unwrap();
        assert_eq!(weight_span(&p, &LinearForm::x()), Some((-hi, -lo)));
    }

    #[test]
    fn adapted_frames_send_the_direction_to_y() {
        let l = LinearForm::new(Gq::from(3), Gq::ratio(1, 2)).unwrap();
        let ps = OnePS::adapted(&l);
        let m = &ps.frame;
        assert_eq!(m[0][0].clone() * &m[1][1] - m[0][1].clone() * &m[1][0], Gq::one());
        assert_eq!(l.canonical().as_form().substitute(m), BinaryForm::y());
    }

    #[test]
    fn witnesses() {
        let w = nonstable_witness(&nf(MONOMIAL), &MultiplicityProfile::NOT_STABLE).unwrap().unwrap();
        assert_eq!(w.direction, Direction::Exact(LinearForm::y()));
        assert_eq!(nonstable_witness(&nf("z^5 + x^10 + y^10"), &MultiplicityProfile::NOT_STABLE).unwrap(), None);
        let w = nonstable_witness(
            &nf("z^5 - 10*y^4*z^3 + 20*y^6*z^2 - 15*y^8*z + 4*y^10"),
            &MultiplicityProfile::UNSTABLE,
        )
        .unwrap()
        .unwrap();
        assert_eq!(w.direction, Direction::Exact(LinearForm::y()));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&nf("z^5 + x^10 + y^10")).unwrap().class, StabilityClass::Stable);
        let v = classify(&nf(Y_POWERS)).unwrap();
        assert_eq!(v.to_string(), "Unstable, witness y, profile (6,5,4,3)");
        let v = classify(&nf(MONOMIAL)).unwrap();
        assert_eq!(v.to_string(), "StrictlySemistable, witness y, profile (5,4,3,2)");
        assert_eq!(classify(&nf(REMARK)).unwrap().class, StabilityClass::Stable);
        assert!(classify(&nf("z^5")).is_err());
    }

    #[test]
    fn irrational_directions_are_reported_approximately() {
        // Common factor x² − 2y² of multiplicity exactly 5 − k.
        let v = classify(&nf("z^5 + (x^2 - 2*y^2)^2*z^3 + (x^2 - 2*y^2)^3*z^2 + (x^2-2*y^2)^4*z + (x^2 - 2*y^2)^5")).unwrap();
        assert_eq!(v.class, StabilityClass::StrictlySemistable);
        let w = v.witness.unwrap();
        assert!(!w.direction.is_exact());
        assert_eq!(w.locus.degree(), 2);
        let l = w.direction.to_cx(128);
        let t = -l.canonical().v().clone();
        assert!((t.clone() * &t - &Cx::from_i64(2)).to_complex64().norm() < 1e-30);
    }

    #[test]
    fn witness_meets_its_profile() {
        for s in [Y_POWERS, MONOMIAL] {
            let p = nf(s);
            let v = classify(&p).unwrap();
            let w = v.witness.unwrap();
            let Direction::Exact(l) = &w.direction else { panic!() };
            for k in 0..=3 {
                if !p.q(k).is_zero() {
                    assert!(multiplicity_at(p.q(k), l, 0.0).unwrap() >= w.profile.0[k]);
                }
            }
        }
    }
}
