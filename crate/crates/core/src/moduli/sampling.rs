//! Seeded random normal forms and stratum statistics.
//!
//! Sample `i` of a run with seed `s` is drawn from ChaCha8 stream `i` of
//! seed `s`, so every sample is reproducible on its own.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binary_forms::{multiplicity_at, squarefree_part, BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Field, Gq};
use crate::parallel::{map_indexed, Execution};
use crate::singularities::{screen, Overall, Smoothness};
use crate::stability::{classify, StabilityClass};
use crate::surface::{block_degree, NormalForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// All 32 coefficients independent.
    Generic,
    /// `q_k = ℓ^(4−k)·c_k` with square-free `c_k` prime to `ℓ`.
    Remark,
    /// `q_k = c_k·x^(5−k)·y^(5−k)`.
    Monomial,
    /// `q_k = y^(6−k)·c_k`.
    YPower,
    /// Each coefficient is nonzero with probability 1/4.
    Sparse,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Generic, Family::Remark, Family::Monomial, Family::YPower, Family::Sparse];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Remark => "remark",
            Family::Monomial => "monomial",
            Family::YPower => "ypower",
            Family::Sparse => "sparse",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family '{s}'")))
    }
}

/// `p/q` with `|p| ≤ height` and `1 ≤ q ≤ height`.
pub fn random_rational(rng: &mut impl Rng, height: i64) -> Gq {
    let num = rng.random_range(-height..=height);
    let den = rng.random_range(1..=height);
    Gq::ratio(num, den)
}

fn nonzero_rational(rng: &mut impl Rng, height: i64) -> Gq {
    loop {
        let c = random_rational(rng, height);
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_form(rng: &mut impl Rng, degree: usize, height: i64) -> BinaryForm<Gq> {
    BinaryForm::new((0..=degree).map(|_| random_rational(rng, height)).collect())
}

fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn remark_cofactor(rng: &mut impl Rng, l: &LinearForm<Gq>, degree: usize, height: i64) -> Result<BinaryForm<Gq>> {
    loop {
        let c = random_form(rng, degree, height);
        if c.is_zero() {
            continue;
        }
        if squarefree_part(&c)?.degree() == degree && multiplicity_at(&c, l, 0.0)? == 0 {
            return Ok(c);
        }
    }
}

fn draw(family: Family, rng: &mut impl Rng, height: i64) -> Result<NormalForm<Gq>> {
    let blocks: [BinaryForm<Gq>; 4] = match family {
        Family::Generic => std::array::from_fn(|k| random_form(rng, block_degree(k), height)),
        Family::Sparse => std::array::from_fn(|k| {
            let coeffs = (0..=block_degree(k))
                .map(|_| if rng.random_ratio(1, 4) { nonzero_rational(rng, height) } else { Gq::from(0) })
                .collect();
            BinaryForm::new(coeffs)
        }),
        Family::Monomial => std::array::from_fn(|k| {
            BinaryForm::monomial(nonzero_rational(rng, height), 5 - k, 5 - k)
        }),
        Family::YPower => std::array::from_fn(|k| {
            let cofactor = random_form(rng, 4 - k, height);
            BinaryForm::y().pow(6 - k as u32).mul(&cofactor)
        }),
        Family::Remark => {
            let l = if rng.random_ratio(1, 4) {
                LinearForm::y()
            } else {
                LinearForm::new(Gq::from(1), random_rational(rng, height))?
            };
            let mut q: [BinaryForm<Gq>; 4] = std::array::from_fn(|k| BinaryForm::zero(block_degree(k)));
            for (k, block) in q.iter_mut().enumerate() {
                let cofactor = remark_cofactor(rng, &l, 6 - k, height)?;
                *block = l.as_form().pow(4 - k as u32).mul(&cofactor);
            }
            q
        }
    };
    let nf = NormalForm::new(blocks)?;
    if nf.is_zero() {
        return draw(family, rng, height);
    }
    Ok(nf)
}

/// Sample `index` of `family` under `seed`. Never the zero point.
pub fn sample_family(family: Family, seed: u64, index: u64, height: i64) -> Result<NormalForm<Gq>> {
    if height < 1 {
        return Err(Error::Invalid("coefficient height must be at least 1".into()));
    }
    draw(family, &mut rng_for(seed, index), height)
}

pub fn sample_normal_form(seed: u64, height: i64) -> Result<NormalForm<Gq>> {
    sample_family(Family::Generic, seed, 0, height)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StratumCounts {
    pub n: usize,
    pub stable: usize,
    pub strictly_semistable: usize,
    pub unstable: usize,
    pub screen_passed: usize,
    pub worse_than_canonical: usize,
    pub not_general_type: usize,
    pub smooth: usize,
    pub singular: usize,
    pub inconclusive: usize,
}

impl StratumCounts {
    pub fn fraction(&self, count: usize) -> f64 {
        count as f64 / self.n as f64
    }
}

struct Outcome {
    class: StabilityClass,
    overall: Overall,
    smoothness: Smoothness,
}

fn evaluate(family: Family, seed: u64, index: u64, height: i64) -> Result<Outcome> {
    let nf = sample_family(family, seed, index, height)?;
    let class = classify(&nf)?.class;
    let report = screen(&nf)?;
    Ok(Outcome { class, overall: report.overall, smoothness: report.smoothness })
}

pub fn stratum_stats(n: usize, seed: u64, height: i64) -> Result<StratumCounts> {
    stratum_stats_with(Family::Generic, n, seed, height, Execution::default())
}

/// Classifies and screens samples `0..n`; the counts do not depend on
/// `execution`.
pub fn stratum_stats_with(
    family: Family,
    n: usize,
    seed: u64,
    height: i64,
    execution: Execution,
) -> Result<StratumCounts> {
    if n == 0 {
        return Err(Error::Invalid("need at least one sample".into()));
    }
    if height < 1 {
        return Err(Error::Invalid("coefficient height must be at least 1".into()));
    }
    let outcomes = map_indexed(n, execution, |i| evaluate(family, seed, i as u64, height));
    let mut counts = StratumCounts { n, ..Default::default() };
    for outcome in outcomes {
        let o = outcome?;
        match o.class {
            StabilityClass::Stable => counts.stable += 1,
            StabilityClass::StrictlySemistable => counts.strictly_semistable += 1,
            StabilityClass::Unstable => counts.unstable += 1,
        }
        match o.overall {
            Overall::CanonicalScreenPassed => counts.screen_passed += 1,
            Overall::WorseThanCanonical => counts.worse_than_canonical += 1,
            Overall::NotGeneralTypeForm => counts.not_general_type += 1,
        }
        match o.smoothness {
            Smoothness::Smooth => counts.smooth += 1,
            Smoothness::SingularAt(_) => counts.singular += 1,
            Smoothness::Inconclusive { .. } => counts.inconclusive += 1,
        }
    }
    Ok(counts)
}
