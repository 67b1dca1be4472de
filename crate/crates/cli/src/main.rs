//! `surfgit`: normal forms, stability, singularity screens and orbit
//! dimensions of `w² = F(x, y, z)` in `P(1,1,2,5)`.
//!
//! Exit codes: 0 for every verdict, 1 for bad input or flags, 2 when
//! `q₅ = 0`, 3 when an analysis needs a normal form and none was given.

mod report;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use surfgit::field::{Coeff, Field, Gq, Precision};
use surfgit::moduli::{orbit_rank, sample_family, stratum_stats_with, Family};
use surfgit::normalizer::{to_normal_form, to_normal_form_approx, ApproxNormalization, Normalized};
use surfgit::parallel::Execution;
use surfgit::singularities::screen_with;
use surfgit::stability::{classify, oracle_classify, OracleOptions};
use surfgit::surface::{equation_to_document, read_equation, CoefficientPoint, NormalForm, SurfaceEquation};
use surfgit::Error;

use report::{
    Header, NormalizeDocument, OracleSection, OrbitSection, SampleDocument, ScreenSection, StabilitySection,
    StatsDocument, VerdictDocument,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Approx,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        }
    }
}

#[derive(Parser)]
#[command(name = "surfgit", version, about = "GIT stability and singularity screens for w^2 = F(x,y,z) in P(1,1,2,5)")]
struct Cli {
    #[arg(long, value_enum, default_value = "exact", global = true)]
    mode: Mode,
    /// Working precision in bits for approximate arithmetic.
    #[arg(long, default_value_t = Precision::DEFAULT_BITS, global = true, value_parser = parse_precision)]
    precision: usize,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

fn parse_precision(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(b) if (32..=65536).contains(&b) => Ok(b),
        _ => Err("expected a bit count between 32 and 65536".into()),
    }
}

#[derive(Args)]
struct Input {
    /// Equation file: a JSON document or a polynomial expression.
    file: Option<String>,
    /// Equation given inline, e.g. "z^5 + x^10 + y^10".
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Args)]
struct Analysis {
    #[command(flatten)]
    input: Input,
    /// Normalize the input first when it is not in normal form.
    #[arg(long)]
    auto_normalize: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce an equation to normal form.
    Normalize {
        #[command(flatten)]
        input: Input,
        /// Finish with approximate arithmetic when q5 has no exact fifth root.
        #[arg(long)]
        allow_approx: bool,
    },
    /// Decide stability of a normal form.
    Classify {
        #[command(flatten)]
        analysis: Analysis,
        /// Also run the numerical oracle and report agreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the singularity screens.
    Screen(Analysis),
    /// Rank of the infinitesimal action and the moduli dimension.
    OrbitDim(Analysis),
    /// Draw a random normal form.
    Sample {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        height: i64,
        #[arg(long, default_value = "generic")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        index: u64,
    },
    /// Classify and screen many random normal forms.
    Stats {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..))]
        height: i64,
        #[arg(long, default_value = "generic")]
        family: Family,
        /// Evaluate samples on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Usage(String),
    DegenerateLeading,
    NotNormalForm,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::DegenerateLeading => 2,
            Failure::NotNormalForm => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::DegenerateLeading => "the z^5 coefficient vanishes; not a surface of this kind".into(),
            Failure::NotNormalForm => "input is not in normal form (use --auto-normalize)".into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateLeading => Failure::DegenerateLeading,
            Error::NotNormalForm => Failure::NotNormalForm,
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_input(input: &Input) -> Result<SurfaceEquation<Gq>, Failure> {
    let text = match (&input.file, &input.expr) {
        (_, Some(e)) => e.clone(),
        (Some(path), None) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        (None, None) => return Err(Failure::Usage("no input: give a file or --expr".into())),
    };
    Ok(read_equation(&text)?)
}

/// The normal form to analyse. When the fifth root of `q₅` is irrational,
/// the partial normal form is divided by `q₅`; this rescales `w` by `√q₅`
/// and gives an isomorphic surface.
fn analysis_input(a: &Analysis) -> Result<NormalForm<Gq>, Failure> {
    let f = read_input(&a.input)?;
    if f.leading().is_zero() {
        return Err(Failure::DegenerateLeading);
    }
    if f.is_normal_form() {
        return Ok(NormalForm::from_equation(&f)?);
    }
    if !a.auto_normalize {
        return Err(Failure::NotNormalForm);
    }
    match to_normal_form(&f, None)? {
        Normalized::Exact { normal_form, .. } => Ok(normal_form),
        Normalized::Partial { equation, residual_unit, .. } => {
            let inv = residual_unit.inv();
            Ok(NormalForm::new(std::array::from_fn(|k| equation.q(k).scale(&inv)))?)
        }
        Normalized::Approximate(_) => unreachable!("exact normalization without fallback"),
    }
}

fn require_exact(mode: Mode, what: &str) -> Result<(), Failure> {
    match mode {
        Mode::Exact => Ok(()),
        Mode::Approx => Err(Failure::Usage(format!("{what} requires --mode exact"))),
    }
}

fn render<T: Serialize>(json: bool, doc: &T, text: impl FnOnce() -> String) -> String {
    if json {
        serde_json::to_string_pretty(doc).expect("documents serialize")
    } else {
        text()
    }
}

fn approx_document(header: Header, out: ApproxNormalization) -> (NormalizeDocument, String) {
    let doc = NormalizeDocument {
        header,
        partial: false,
        normal_form: equation_to_document(&out.normal_form.to_equation(), true),
        transformation: out.transformation.to_document(),
        residual_unit: None,
        residual: Some(out.residual),
    };
    let text = serde_json::to_string(&doc.normal_form).expect("documents serialize");
    (doc, text)
}

fn normalize(cli: &Cli, input: &Input, allow_approx: bool) -> Outcome {
    let f = read_input(input)?;
    let header = Header::new(cli.mode.name(), cli.precision);
    let precision = Precision::bits(cli.precision);
    let (doc, text) = match cli.mode {
        Mode::Exact => match to_normal_form(&f, allow_approx.then_some(precision))? {
            Normalized::Exact { normal_form, transformation } => {
                let doc = NormalizeDocument {
                    header,
                    partial: false,
                    normal_form: equation_to_document(&normal_form.to_equation(), true),
                    transformation: transformation.to_document(),
                    residual_unit: None,
                    residual: None,
                };
                (doc, normal_form.to_string())
            }
            Normalized::Partial { equation, transformation, residual_unit } => {
                let text = format!("partial normal form, residual unit {residual_unit}\n{equation}");
                let doc = NormalizeDocument {
                    header,
                    partial: true,
                    normal_form: equation_to_document(&equation, false),
                    transformation: transformation.to_document(),
                    residual_unit: Some(residual_unit.to_string()),
                    residual: None,
                };
                (doc, text)
            }
            Normalized::Approximate(out) => approx_document(header, out),
        },
        Mode::Approx => {
            let g = f.map(|c| c.to_cx(precision.bits));
            approx_document(header, to_normal_form_approx(&g, precision.tolerance)?)
        }
    };
    Ok(render(cli.json, &doc, || text))
}

fn classify_cmd(cli: &Cli, analysis: &Analysis, with_oracle: bool) -> Outcome {
    let nf = analysis_input(analysis)?;
    let options = OracleOptions { bits: cli.precision, seed: cli.seed, ..OracleOptions::default() };
    let (mut section, line) = match cli.mode {
        Mode::Exact => {
            let verdict = classify(&nf)?;
            (StabilitySection::new(&verdict), verdict.to_string())
        }
        Mode::Approx => {
            let report = oracle_classify(&nf, &options)?;
            let section = StabilitySection {
                class: report.class.name().to_string(),
                witness: report.direction.as_ref().map(|l| l.to_string()),
                profile: None,
                witness_exact: report.direction.as_ref().map(|_| false),
                oracle: None,
            };
            let line = match &report.direction {
                Some(l) => format!("{}, witness {l}", report.class),
                None => report.class.to_string(),
            };
            (section, line)
        }
    };
    let mut text = line;
    if with_oracle {
        let report = oracle_classify(&nf, &options)?;
        let oracle = OracleSection::new(&report, Some(&section.class));
        text += &format!("\noracle: {} ({})", oracle.class, if oracle.agrees { "agrees" } else { "disagrees" });
        section.oracle = Some(oracle);
    }
    let doc = VerdictDocument {
        header: Header::new(cli.mode.name(), cli.precision),
        input: equation_to_document(&nf.to_equation(), true),
        stability: Some(section),
        screen: None,
        orbit: None,
    };
    Ok(render(cli.json, &doc, || text))
}

fn screen_cmd(cli: &Cli, analysis: &Analysis) -> Outcome {
    require_exact(cli.mode, "screen")?;
    let nf = analysis_input(analysis)?;
    let section = ScreenSection::new(&screen_with(&nf, Precision::bits(cli.precision))?);
    let text = section.text();
    let doc = VerdictDocument {
        header: Header::new(cli.mode.name(), cli.precision),
        input: equation_to_document(&nf.to_equation(), true),
        stability: None,
        screen: Some(section),
        orbit: None,
    };
    Ok(render(cli.json, &doc, || text))
}

fn orbit_cmd(cli: &Cli, analysis: &Analysis) -> Outcome {
    require_exact(cli.mode, "orbit-dim")?;
    let nf = analysis_input(analysis)?;
    let point = CoefficientPoint::from_normal_form(&nf)?;
    let section = OrbitSection::new(&orbit_rank(&point)?);
    let text = format!(
        "rank {}, orbit dimension {}, moduli dimension {} (affine count {}), finite stabilizer {}",
        section.rank, section.orbit_dim, section.moduli_dim_estimate, section.moduli_dim_affine, section.stabilizer_finite
    );
    let doc = VerdictDocument {
        header: Header::new(cli.mode.name(), cli.precision),
        input: equation_to_document(&nf.to_equation(), true),
        stability: None,
        screen: None,
        orbit: Some(section),
    };
    Ok(render(cli.json, &doc, || text))
}

fn sample_cmd(cli: &Cli, height: i64, family: Family, index: u64) -> Outcome {
    let nf = sample_family(family, cli.seed, index, height)?;
    let doc = SampleDocument {
        header: Header::new(Mode::Exact.name(), cli.precision),
        seed: cli.seed,
        index,
        height,
        family: family.name().to_string(),
        normal_form: equation_to_document(&nf.to_equation(), true),
    };
    Ok(render(cli.json, &doc, || nf.to_string()))
}

fn stats_cmd(cli: &Cli, n: u64, height: i64, family: Family, sequential: bool) -> Outcome {
    require_exact(cli.mode, "stats")?;
    let execution = if sequential { Execution::Sequential } else { Execution::default() };
    let counts = stratum_stats_with(family, n as usize, cli.seed, height, execution)?;
    let doc = StatsDocument::new(Header::new(cli.mode.name(), cli.precision), family, cli.seed, height, &counts);
    Ok(render(cli.json, &doc, || doc.text()))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Normalize { input, allow_approx } => normalize(cli, input, *allow_approx),
        Command::Classify { analysis, oracle } => classify_cmd(cli, analysis, *oracle),
        Command::Screen(analysis) => screen_cmd(cli, analysis),
        Command::OrbitDim(analysis) => orbit_cmd(cli, analysis),
        Command::Sample { height, family, index } => sample_cmd(cli, *height, *family, *index),
        Command::Stats { n, height, family, sequential } => stats_cmd(cli, *n, *height, *family, *sequential),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
