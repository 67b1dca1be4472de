//! Output documents. Field order is the serialization order.

use serde::Serialize;

use surfgit::moduli::{Family, RankReport, StratumCounts};
use surfgit::singularities::{MultScreen, ScreenReport, Smoothness};
use surfgit::stability::{OracleReport, StabilityVerdict};
use surfgit::surface::{EquationDocument, TransformationDocument};

pub const TOOL: &str = "surfgit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: &'static str,
    pub precision: usize,
}

impl Header {
    pub fn new(mode: &'static str, precision: usize) -> Self {
        Header { tool: TOOL, version: VERSION, mode, precision }
    }
}

#[derive(Serialize)]
pub struct NormalizeDocument {
    #[serde(flatten)]
    pub header: Header,
    pub partial: bool,
    pub normal_form: EquationDocument,
    pub transformation: TransformationDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Serialize)]
pub struct OracleSection {
    pub class: String,
    pub agrees: bool,
    pub direction: Option<String>,
    pub candidates: usize,
    pub frames_checked: usize,
    pub frame_contradictions: usize,
}

impl OracleSection {
    pub fn new(report: &OracleReport, exact_class: Option<&str>) -> Self {
        OracleSection {
            class: report.class.name().to_string(),
            agrees: exact_class.is_none_or(|c| c == report.class.name()),
            direction: report.direction.as_ref().map(|l| l.to_string()),
            candidates: report.candidates,
            frames_checked: report.frames_checked,
            frame_contradictions: report.frame_contradictions,
        }
    }
}

#[derive(Serialize)]
pub struct StabilitySection {
    pub class: String,
    pub witness: Option<String>,
    pub profile: Option<String>,
    pub witness_exact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
}

impl StabilitySection {
    pub fn new(verdict: &StabilityVerdict) -> Self {
        let w = verdict.witness.as_ref();
        StabilitySection {
            class: verdict.class.name().to_string(),
            witness: w.map(|w| w.direction.to_string()),
            profile: w.map(|w| w.profile.to_string()),
            witness_exact: w.map(|w| w.direction.is_exact()),
            oracle: None,
        }
    }
}

#[derive(Serialize)]
pub struct LemmaSection {
    pub q5_nonzero: bool,
    pub q0_or_q1_nonzero: bool,
    pub distinct_factor_count: usize,
    pub factor_count_with_multiplicity: usize,
}

#[derive(Serialize)]
pub struct MultScreenSection {
    pub passed: bool,
    pub failed_at: Option<String>,
}

#[derive(Serialize)]
pub struct SmoothnessSection {
    pub verdict: &'static str,
    pub points: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize)]
pub struct ScreenSection {
    pub lemma_checks: LemmaSection,
    pub mult_screen: MultScreenSection,
    pub smoothness: SmoothnessSection,
    pub overall: &'static str,
}

impl ScreenSection {
    pub fn new(report: &ScreenReport) -> Self {
        let l = &report.lemma_checks;
        let (points, reason) = match &report.smoothness {
            Smoothness::Smooth => (Vec::new(), None),
            Smoothness::SingularAt(points) => (points.iter().map(|p| p.to_string()).collect(), None),
            Smoothness::Inconclusive { reason } => (Vec::new(), Some(reason.clone())),
        };
        ScreenSection {
            lemma_checks: LemmaSection {
                q5_nonzero: l.q5_nonzero,
                q0_or_q1_nonzero: l.q0_or_q1_nonzero,
                distinct_factor_count: l.distinct_factor_count,
                factor_count_with_multiplicity: l.factor_count_with_multiplicity,
            },
            mult_screen: match &report.mult_screen {
                MultScreen::Passed => MultScreenSection { passed: true, failed_at: None },
                MultScreen::FailedAt(d) => MultScreenSection { passed: false, failed_at: Some(d.to_string()) },
            },
            smoothness: SmoothnessSection { verdict: report.smoothness.name(), points, reason },
            overall: report.overall.name(),
        }
    }

    pub fn text(&self) -> String {
        let l = &self.lemma_checks;
        let mut out = format!("overall: {}\n", self.overall);
        out += &format!(
            "lemma checks: q5 nonzero {}, q0 or q1 nonzero {}, distinct factors {}, factors with multiplicity {}\n",
            l.q5_nonzero, l.q0_or_q1_nonzero, l.distinct_factor_count, l.factor_count_with_multiplicity
        );
        out += &match &self.mult_screen.failed_at {
            None => "multiplicity screen: passed\n".to_string(),
            Some(d) => format!("multiplicity screen: failed at {d}\n"),
        };
        out += &format!("smoothness: {}", self.smoothness.verdict);
        if !self.smoothness.points.is_empty() {
            out += &format!(" {}", self.smoothness.points.join(" "));
        }
        if let Some(r) = &self.smoothness.reason {
            out += &format!(" ({r})");
        }
        out
    }
}

#[derive(Serialize)]
pub struct OrbitSection {
    pub rank: usize,
    pub orbit_dim: usize,
    pub moduli_dim_estimate: usize,
    pub moduli_dim_affine: usize,
    pub stabilizer_finite: bool,
}

impl OrbitSection {
    pub fn new(r: &RankReport) -> Self {
        OrbitSection {
            rank: r.rank,
            orbit_dim: r.orbit_dim,
            moduli_dim_estimate: r.moduli_dim_estimate,
            moduli_dim_affine: r.moduli_dim_affine,
            stabilizer_finite: r.stabilizer_finite,
        }
    }
}

#[derive(Serialize)]
pub struct VerdictDocument {
    #[serde(flatten)]
    pub header: Header,
    pub input: EquationDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub screen: Option<ScreenSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitSection>,
}

#[derive(Serialize)]
pub struct SampleDocument {
    #[serde(flatten)]
    pub header: Header,
    pub seed: u64,
    pub index: u64,
    pub height: i64,
    pub family: String,
    pub normal_form: EquationDocument,
}

#[derive(Serialize)]
pub struct Table<T> {
    pub stable: T,
    pub strictly_semistable: T,
    pub unstable: T,
    pub screen_passed: T,
    pub worse_than_canonical: T,
    pub not_general_type: T,
    pub smooth: T,
    pub singular: T,
    pub inconclusive: T,
}

impl<T> Table<T> {
    fn from_counts(c: &StratumCounts, f: impl Fn(usize) -> T) -> Self {
        Table {
            stable: f(c.stable),
            strictly_semistable: f(c.strictly_semistable),
            unstable: f(c.unstable),
            screen_passed: f(c.screen_passed),
            worse_than_canonical: f(c.worse_than_canonical),
            not_general_type: f(c.not_general_type),
            smooth: f(c.smooth),
            singular: f(c.singular),
            inconclusive: f(c.inconclusive),
        }
    }
}

#[derive(Serialize)]
pub struct StatsDocument {
    #[serde(flatten)]
    pub header: Header,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub height: i64,
    pub counts: Table<usize>,
    pub fractions: Table<f64>,
}

impl StatsDocument {
    pub fn new(header: Header, family: Family, seed: u64, height: i64, c: &StratumCounts) -> Self {
        StatsDocument {
            header,
            family: family.name().to_string(),
            n: c.n,
            seed,
            height,
            counts: Table::from_counts(c, |k| k),
            fractions: Table::from_counts(c, |k| c.fraction(k)),
        }
    }

    pub fn text(&self) -> String {
        let rows = [
            ("stable", self.counts.stable, self.fractions.stable),
            ("strictly_semistable", self.counts.strictly_semistable, self.fractions.strictly_semistable),
            ("unstable", self.counts.unstable, self.fractions.unstable),
            ("screen_passed", self.counts.screen_passed, self.fractions.screen_passed),
            ("worse_than_canonical", self.counts.worse_than_canonical, self.fractions.worse_than_canonical),
            ("not_general_type", self.counts.not_general_type, self.fractions.not_general_type),
            ("smooth", self.counts.smooth, self.fractions.smooth),
            ("singular", self.counts.singular, self.fractions.singular),
            ("inconclusive", self.counts.inconclusive, self.fractions.inconclusive),
        ];
        let mut out = format!(
            "family {} n {} seed {} height {}\n",
            self.family, self.n, self.seed, self.height
        );
        for (name, count, fraction) in rows {
            out += &format!("{name:<22}{count:>7} {fraction:>7.3}\n");
        }
        out.pop();
        out
    }
}
