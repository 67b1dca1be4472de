//! Singularity screens for the branch curve `z⁵ + Σ q_k z^k` of a normal form.
//!
//! These are necessary conditions for canonical singularities, not a
//! classification: a passed screen does not prove the surface canonical.

mod smoothness;

use std::fmt;

use crate::binary_forms::{gcd, squarefree_part, BinaryForm};
use crate::error::{Error, Result};
use crate::field::{Gq, Precision};
use crate::stability::{nonstable_witness, Direction, MultiplicityProfile};
use crate::surface::NormalForm;

pub use smoothness::{smoothness_certify, Chart, SingularPoint, Smoothness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaChecks {
    pub q5_nonzero: bool,
    pub q0_or_q1_nonzero: bool,
    /// Distinct linear factors of `Π q_k` over the nonzero `q_k`.
    pub distinct_factor_count: usize,
    /// Degree of the same product.
    pub factor_count_with_multiplicity: usize,
}

impl LemmaChecks {
    /// The two conditions that gate the screen. The factor counts are
    /// reported but do not gate.
    pub fn passed(&self) -> bool {
        self.q5_nonzero && self.q0_or_q1_nonzero
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultScreen {
    Passed,
    FailedAt(Direction),
}

impl MultScreen {
    pub fn passed(&self) -> bool {
        matches!(self, MultScreen::Passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Overall {
    CanonicalScreenPassed,
    WorseThanCanonical,
    NotGeneralTypeForm,
}

impl Overall {
    pub fn name(&self) -> &'static str {
        match self {
            Overall::CanonicalScreenPassed => "CanonicalScreenPassed",
            Overall::WorseThanCanonical => "WorseThanCanonical",
            Overall::NotGeneralTypeForm => "NotGeneralTypeForm",
        }
    }
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScreenReport {
    pub lemma_checks: LemmaChecks,
    pub mult_screen: MultScreen,
    pub smoothness: Smoothness,
    pub overall: Overall,
}

pub fn lemma_conditions(nf: &NormalForm<Gq>) -> Result<LemmaChecks> {
    let mut distinct: Option<BinaryForm<Gq>> = None;
    let mut with_multiplicity = 0;
    for q in nf.blocks().iter().filter(|q| !q.is_zero()) {
        with_multiplicity += q.degree();
        let s = squarefree_part(q)?;
        distinct = Some(match distinct {
            None => s,
            // lcm of square-free forms
            Some(acc) => {
                let g = gcd(&acc, &s)?;
                let cofactor = BinaryForm::homogenize(
                    &s.dehomogenize().exact_div(&g.dehomogenize()),
                    s.degree() - g.degree(),
                );
                acc.mul(&cofactor)
            }
        });
    }
    Ok(LemmaChecks {
        q5_nonzero: true,
        q0_or_q1_nonzero: !nf.q(0).is_zero() || !nf.q(1).is_zero(),
        distinct_factor_count: distinct.map_or(0, |s| s.degree()),
        factor_count_with_multiplicity: with_multiplicity,
    })
}

/// Looks for a point `[x₀ : y₀ : 0]` of multiplicity `≥ 4`, i.e. a direction
/// `ℓ` with `mult_ℓ(q_k) ≥ 4 − k` for every nonzero `q_k`.
pub fn mult_screen(nf: &NormalForm<Gq>) -> Result<MultScreen> {
    if nf.is_zero() {
        return Err(Error::Invalid("not a projective point: all coefficients vanish".into()));
    }
    Ok(match nonstable_witness(nf, &MultiplicityProfile::MULTIPLICITY_FOUR)? {
        Some(w) => MultScreen::FailedAt(w.direction),
        None => MultScreen::Passed,
    })
}

pub fn screen(nf: &NormalForm<Gq>) -> Result<ScreenReport> {
    screen_with(nf, Precision::default())
}

pub fn screen_with(nf: &NormalForm<Gq>, precision: Precision) -> Result<ScreenReport> {
    let lemma_checks = lemma_conditions(nf)?;
    let mult_screen = mult_screen(nf)?;
    let smoothness = smoothness_certify(nf, precision)?;
    let overall = if !lemma_checks.passed() {
        Overall::NotGeneralTypeForm
    } else if !mult_screen.passed() {
        Overall::WorseThanCanonical
    } else {
        Overall::CanonicalScreenPassed
    };
    Ok(ScreenReport { lemma_checks, mult_screen, smoothness, overall })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_forms::{multiplicity_at, LinearForm};
    use crate::stability::tests::nf;

    const REMARK: &str =
        "z^5 + y*(x^3 - y^3)*z^3 + y^2*(x^4 - y^4)*z^2 + y^3*(x^5 - y^5)*z + y^4*(x^6 - y^6)";

    #[test]
    fn lemma_counts() {
        let c = lemma_conditions(&nf("z^5 + x^10 + y^10")).unwrap();
        assert_eq!(c, LemmaChecks { q5_nonzero: true, q0_or_q1_nonzero: true, distinct_factor_count: 10, factor_count_with_multiplicity: 10 });
        let c = lemma_conditions(&nf("z^5 + (x^2 + y^2)^5")).unwrap();
        assert_eq!((c.distinct_factor_count, c.factor_count_with_multiplicity), (2, 10));
        let c = lemma_conditions(&nf("z^5 + x^6*z^2")).unwrap();
        assert!(!c.q0_or_q1_nonzero);
        // shared factors are counted once
        let c = lemma_conditions(&nf("z^5 + x^4*z^3 + x^2*y^4*z^2")).unwrap();
        assert_eq!((c.distinct_factor_count, c.factor_count_with_multiplicity), (2, 10));
    }

    #[test]
    fn remark_family_fails_at_y() {
        assert_eq!(mult_screen(&nf(REMARK)).unwrap(), MultScreen::FailedAt(Direction::Exact(LinearForm::y())));
        let report = screen(&nf(REMARK)).unwrap();
        assert_eq!(report.overall, Overall::WorseThanCanonical);
        assert!(matches!(report.smoothness, Smoothness::SingularAt(_)));
    }

    #[test]
    fn single_block_cases() {
        assert_eq!(mult_screen(&nf("z^5 + x^10 + y^10")).unwrap(), MultScreen::Passed);
        assert_eq!(mult_screen(&nf("z^5 + x^4*z^3")).unwrap(), MultScreen::FailedAt(Direction::Exact(LinearForm::x())));
        let fermat = screen(&nf("z^5 + x^10 + y^10")).unwrap();
        assert_eq!(fermat.overall, Overall::CanonicalScreenPassed);
        assert_eq!(fermat.smoothness, Smoothness::Smooth);
        assert_eq!(screen(&nf("z^5 + x^6*z^2")).unwrap().overall, Overall::NotGeneralTypeForm);
    }

    #[test]
    fn failure_matches_direct_multiplicity() {
        let p = nf(REMARK);
        let MultScreen::FailedAt(Direction::Exact(l)) = mult_screen(&p).unwrap() else { panic!() };
        let point_mult = (0..=3)
            .filter(|&k| !p.q(k).is_zero())
            .map(|k| multiplicity_at(p.q(k), &l, 0.0).unwrap() + k)
            .min()
            .unwrap()
            .min(5);
        assert!(point_mult >= 4);
    }
}
