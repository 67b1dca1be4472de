//! Numerical cross-check of [`classify`](super::classify): candidate
//! directions are the complex roots of the `q_k`, multiplicities are found
//! by synthetic division with a tolerance, and random `SL₂` frames are
//! checked against the weight conditions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{weight_span_in_frame, MultiplicityProfile, StabilityClass};
use crate::binary_forms::{complex_roots, multiplicity_at, BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Coeff, Cx, Gq};
use crate::surface::NormalForm;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleOptions {
    pub bits: usize,
    pub tolerance: f64,
    pub frames: usize,
    pub seed: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { bits: 128, tolerance: 1e-9, frames: 16, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub class: StabilityClass,
    /// A direction meeting the strongest profile that some direction meets.
    pub direction: Option<LinearForm<Cx>>,
    pub candidates: usize,
    pub frames_checked: usize,
    /// Random frames whose weight span contradicts `class`.
    pub frame_contradictions: usize,
}

/// A random integer matrix of determinant one with entries of size about `height`.
pub fn random_frame(rng: &mut impl Rng, height: i64) -> [[Gq; 2]; 2] {
    let mut a = 0;
    while a == 0 {
        a = rng.random_range(-height..=height);
    }
    let b = rng.random_range(-height..=height);
    let c = rng.random_range(-height..=height);
    // a·d − b·c = 1
    let d = Gq::from(1 + b * c) / Gq::from(a);
    [[Gq::from(a), Gq::from(b)], [Gq::from(c), d]]
}

fn meets(mults: &[Option<usize>; 4], profile: &MultiplicityProfile) -> bool {
    mults.iter().zip(profile.0).all(|(m, need)| m.is_none_or(|m| m >= need))
}

fn contradicts(class: StabilityClass, span: (i64, i64)) -> bool {
    let (lo, hi) = span;
    match class {
        StabilityClass::Stable => !(lo < 0 && hi > 0),
        StabilityClass::StrictlySemistable => !(lo <= 0 && hi >= 0),
        StabilityClass::Unstable => false,
    }
}

pub fn oracle_classify(nf: &NormalForm<Gq>, options: &OracleOptions) -> Result<OracleReport> {
    if nf.is_zero() {
        return Err(Error::Invalid("not a projective point: all coefficients vanish".into()));
    }
    let approx: Vec<Option<BinaryForm<Cx>>> = (0..=3)
        .map(|k| (!nf.q(k).is_zero()).then(|| nf.q(k).map(|c| c.to_cx(options.bits))))
        .collect();
    let mut candidates: Vec<LinearForm<Cx>> = Vec::new();
    for k in 0..=3 {
        if nf.q(k).is_zero() {
            continue;
        }
        candidates.extend(complex_roots(nf.q(k), options.bits)?.into_iter().map(|r| r.direction));
    }
    let mut best: Option<(StabilityClass, LinearForm<Cx>)> = None;
    for l in &candidates {
        let mut mults = [None; 4];
        for k in 0..=3 {
            if let Some(f) = &approx[k] {
                mults[k] = Some(multiplicity_at(f, l, options.tolerance)?);
            }
        }
        let class = if meets(&mults, &MultiplicityProfile::UNSTABLE) {
            StabilityClass::Unstable
        } else if meets(&mults, &MultiplicityProfile::NOT_STABLE) {
            StabilityClass::StrictlySemistable
        } else {
            continue;
        };
        if best.as_ref().is_none_or(|(c, _)| class > *c) {
            best = Some((class, l.clone()));
        }
    }
    let (class, direction) = match best {
        Some((c, l)) => (c, Some(l)),
        None => (StabilityClass::Stable, None),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut frame_contradictions = 0;
    for _ in 0..options.frames {
        let frame = random_frame(&mut rng, 5);
        if let Some(span) = weight_span_in_frame(nf, &frame) {
            if contradicts(class, span) {
                frame_contradictions += 1;
            }
        }
    }
    Ok(OracleReport {
        class,
        direction,
        candidates: candidates.len(),
        frames_checked: options.frames,
        frame_contradictions,
    })
}
