//! Acceptance criteria, one line of output per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use surfgit::binary_forms::{exact_linear_factors, BinaryForm, LinearForm};
use surfgit::field::{Coeff, Field, Gq};
use surfgit::moduli::{orbit_rank, random_rational, sample_family, stratum_stats_with, Family};
use surfgit::normalizer::{to_normal_form, to_normal_form_approx, Normalized};
use surfgit::parallel::Execution;
use surfgit::singularities::{screen, Overall};
use surfgit::stability::{
    classify, coordinate_weight, oracle_classify, random_frame, weight_span, Direction, OracleOptions, StabilityClass,
};
use surfgit::surface::{
    apply_transformation, block_degree, parse_expression, point_labels, CoefficientPoint, NormalForm, SurfaceEquation,
};

const SEED: u64 = 20_241_015;

fn nf(s: &str) -> NormalForm<Gq> {
    NormalForm::from_equation(&parse_expression(s).unwrap()).unwrap()
}

/// Degenerate and special points, with the expected class.
fn curated() -> Vec<(&'static str, StabilityClass)> {
    use StabilityClass::*;
    vec![
        ("z^5 + x^10 + y^10", Stable),
        ("z^5 + x^2*y^2*z^3 + x^3*y^3*z^2 + x^4*y^4*z + x^5*y^5", StrictlySemistable),
        ("z^5 + 3*x^2*y^2*z^3 - x^3*y^3*z^2 + 1/2*x^4*y^4*z + 7*x^5*y^5", StrictlySemistable),
        ("z^5 + y^4*z^3 + y^6*z^2 + y^8*z + y^10", Unstable),
        ("z^5 + x*y^3*z^3 + x^2*y^4*z^2 + y^8*z + x^3*y^7", Unstable),
        ("z^5 + y*(x^3 - y^3)*z^3 + y^2*(x^4 - y^4)*z^2 + y^3*(x^5 - y^5)*z + y^4*(x^6 - y^6)", Stable),
        ("z^5 + (x-2*y)*(x^3 + y^3 + x*y^2)*z^3 + (x-2*y)^2*(x^4 - 3*y^4)*z^2 + (x-2*y)^3*(x^5 + x*y^4 + y^5)*z + (x-2*y)^4*(x^6 - x*y^5 + 5*y^6)", Stable),
        ("z^5 + (x^2 - 2*y^2)^2*z^3 + (x^2 - 2*y^2)^3*z^2 + (x^2-2*y^2)^4*z + (x^2 - 2*y^2)^5", StrictlySemistable),
        ("z^5 + x^10", Unstable),
        ("z^5 + x^5*y^5", StrictlySemistable),
        ("z^5 + x^4*y^6", Unstable),
        ("z^5 + x^4*z^3", Unstable),
        ("z^5 + (x^4 + y^4)*z^3", Stable),
        ("z^5 + x^2*y^2*z^3", StrictlySemistable),
        ("z^5 + x^6*z^2", Unstable),
        ("z^5 + (x^6 + y^6)*z^2", Stable),
        ("z^5 + x^8*z", Unstable),
        ("z^5 + (x^8 - y^8)*z", Stable),
        ("z^5 + x^10 + x*y^3*z^3", Stable),
        ("z^5 + y^10 + x^4*y^2*z^2", Stable),
        ("z^5 + x^5*y^5 + x^3*y^5*z", StrictlySemistable),
        ("z^5 + x^6*y^4 + x^5*y^3*z + x^4*y^2*z^2", Unstable),
        ("z^5 + i*x^10 + (2-i)*y^10 + x^2*y^2*z^3", Stable),
    ]
}

fn mixed_sample(seed: u64, index: u64) -> NormalForm<Gq> {
    let family = Family::ALL[index as usize % Family::ALL.len()];
    sample_family(family, seed, index, 10).unwrap()
}

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dimension_28() -> Outcome {
    let mut rank_four = 0;
    for i in 0..100 {
        let p = CoefficientPoint::from_normal_form(&sample_family(Family::Generic, SEED, i, 10).unwrap()).unwrap();
        let r = orbit_rank(&p).unwrap();
        if r.rank == 4 && r.moduli_dim_estimate == 28 {
            rank_four += 1;
        }
    }
    let fermat = orbit_rank(&CoefficientPoint::from_normal_form(&nf("z^5 + x^10 + y^10")).unwrap()).unwrap();
    check(
        rank_four >= 99 && fermat.rank == 4 && fermat.moduli_dim_estimate == 28,
        format!("{rank_four}/100 random points of rank 4 and dimension 28; Fermat rank {} dimension {}", fermat.rank, fermat.moduli_dim_estimate),
    )
}

fn screen_implies_stable() -> Outcome {
    let mut passed = 0;
    let mut violations = 0;
    for i in 0..1000 {
        let p = mixed_sample(SEED + 1, i);
        if screen(&p).unwrap().overall == Overall::CanonicalScreenPassed {
            passed += 1;
            if classify(&p).unwrap().class != StabilityClass::Stable {
                violations += 1;
            }
        }
    }
    check(violations == 0, format!("{passed} of 1000 points passed the screen, {violations} of them not stable"))
}

fn remark_family() -> Outcome {
    let mut hits = 0;
    for i in 0..100 {
        let p = sample_family(Family::Remark, SEED + 2, i, 10).unwrap();
        let class = classify(&p).unwrap().class;
        let overall = screen(&p).unwrap().overall;
        if class == StabilityClass::Stable && overall == Overall::WorseThanCanonical {
            hits += 1;
        }
    }
    check(hits == 100, format!("{hits}/100 instances are (Stable, WorseThanCanonical)"))
}

fn oracle_agreement() -> Outcome {
    let options = OracleOptions { tolerance: 1e-9, ..OracleOptions::default() };
    let mut disagreements = Vec::new();
    let mut total = 0;
    let mut run = |label: String, p: &NormalForm<Gq>| {
        total += 1;
        let exact = classify(p).unwrap().class;
        let oracle = oracle_classify(p, &options).unwrap();
        if exact != oracle.class || oracle.frame_contradictions > 0 {
            disagreements.push(label);
        }
    };
    for i in 0..1000 {
        run(format!("sample {i}"), &mixed_sample(SEED + 3, i));
    }
    for (s, _) in curated() {
        run(s.to_string(), &nf(s));
    }
    check(
        disagreements.is_empty(),
        format!("{}/{total} agree{}", total - disagreements.len(), if disagreements.is_empty() { String::new() } else { format!("; first disagreement: {}", disagreements[0]) }),
    )
}

fn random_equation(rng: &mut ChaCha8Rng, q5: Gq) -> SurfaceEquation<Gq> {
    let mut q: [BinaryForm<Gq>; 6] =
        std::array::from_fn(|k| BinaryForm::new((0..=block_degree(k)).map(|_| random_rational(rng, 10)).collect()));
    q[5] = BinaryForm::constant(q5);
    SurfaceEquation::new(q).unwrap()
}

fn normalizer_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut exact_ok = 0;
    for _ in 0..1000 {
        let f = random_equation(&mut rng, Gq::one());
        if let Normalized::Exact { normal_form, transformation } = to_normal_form(&f, None).unwrap() {
            let image = apply_transformation(&f, &transformation).unwrap();
            if image.q(4).is_zero() && image == normal_form.to_equation() {
                exact_ok += 1;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let mut q5 = Gq::new(random_rational(&mut rng, 10).re, random_rational(&mut rng, 10).re);
        while q5.is_zero() {
            q5 = random_rational(&mut rng, 10);
        }
        let f = random_equation(&mut rng, q5).map(|c| c.to_cx(128));
        let out = to_normal_form_approx(&f, 1e-30).unwrap();
        let image = apply_transformation(&f, &out.transformation).unwrap();
        let relative = image.q(4).scale_hint() / image.scale_hint().max(1.0);
        worst = worst.max(relative).max(out.residual);
    }
    check(
        exact_ok == 1000 && worst < 1e-10,
        format!("{exact_ok}/1000 exact inputs reproduced exactly; worst approximate z^4 residual {worst:.2e}"),
    )
}

/// Weight of `x^i y^j` read off from the action of `diag(2, 1/2)`.
fn weight_by_action(i: usize, j: usize) -> i64 {
    let m = BinaryForm::monomial(Gq::one(), i, j);
    let moved = m.substitute(&[[Gq::from(2), Gq::zero()], [Gq::zero(), Gq::ratio(1, 2)]]);
    let c = moved.coeff_of_y_power(j).clone();
    let mut e = 0i64;
    let mut v = c;
    while v != Gq::one() {
        if v.magnitude() > 1.0 {
            v = v / Gq::from(2);
            e -= 1;
        } else {
            v = v * Gq::from(2);
            e += 1;
        }
    }
    e
}

fn weight_fidelity() -> Outcome {
    let mut table_ok = 0;
    for (k, i, j) in point_labels() {
        let w = coordinate_weight(k, i, j).unwrap();
        if w == 2 * j as i64 - (10 - 2 * k as i64) && w == weight_by_action(i, j) {
            table_ok += 1;
        }
    }
    let mut pattern_ok = 0;
    let mut failures = Vec::new();
    let cases = curated();
    for (s, expected) in &cases {
        let p = nf(s);
        let verdict = classify(&p).unwrap();
        let ok = verdict.class == *expected
            && match (&verdict.class, &verdict.witness) {
                (StabilityClass::Stable, None) => {
                    let mut directions = vec![LinearForm::x(), LinearForm::y()];
                    for k in 0..=3 {
                        if !p.q(k).is_zero() {
                            directions.extend(exact_linear_factors(p.q(k), 128).unwrap().into_iter().map(|(l, _)| l));
                        }
                    }
                    directions.iter().all(|l| weight_span(&p, l).unwrap().0 < 0)
                }
                (class, Some(w)) => {
                    let (lo, _) = match &w.direction {
                        Direction::Exact(l) => weight_span(&p, l).unwrap(),
                        Direction::Approximate(_) => {
                            let ps = w.one_ps_approx(128);
                            let approx = p.map(|c| c.to_cx(128));
                            let mut lo = i64::MAX;
                            for k in 0..=3 {
                                let moved = approx.q(k).substitute(&ps.frame);
                                let scale = approx.q(k).scale_hint();
                                for (j, c) in moved.coeffs().iter().enumerate() {
                                    if !c.is_negligible(scale, 1e-20) {
                                        lo = lo.min(2 * j as i64 - block_degree(k) as i64);
                                    }
                                }
                            }
                            (lo, 0)
                        }
                    };
                    match class {
                        StabilityClass::Unstable => lo > 0,
                        _ => lo == 0,
                    }
                }
                _ => false,
            };
        if ok {
            pattern_ok += 1;
        } else {
            failures.push(*s);
        }
    }
    check(
        table_ok == 32 && failures.is_empty(),
        format!("{table_ok}/32 coordinate weights; sign patterns match on {pattern_ok}/{} curated points{}", cases.len(), failures.first().map_or(String::new(), |s| format!("; mismatch at {s}"))),
    )
}

fn genericity() -> Outcome {
    let a = stratum_stats_with(Family::Generic, 1000, 7, 10, Execution::default()).unwrap();
    let b = stratum_stats_with(Family::Generic, 1000, 7, 10, Execution::Sequential).unwrap();
    let stable = a.fraction(a.stable);
    check(
        stable >= 0.99 && a.unstable == 0 && a == b,
        format!("stable {stable:.3}, unstable {:.3}, smooth {:.3}, repeat run identical: {}", a.fraction(a.unstable), a.fraction(a.smooth), a == b),
    )
}

fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut changes = 0;
    for i in 0..1000 {
        let p = mixed_sample(SEED + 6, i);
        let class = classify(&p).unwrap().class;
        let rank = orbit_rank(&CoefficientPoint::from_normal_form(&p).unwrap()).unwrap().rank;
        let moved = p.act(&random_frame(&mut rng, 5));
        let mut lambda = random_rational(&mut rng, 10);
        while lambda.is_zero() {
            lambda = random_rational(&mut rng, 10);
        }
        let scaled = NormalForm::new(std::array::from_fn(|k| p.q(k).scale(&lambda.pow(block_degree(k) as u32)))).unwrap();
        for q in [&moved, &scaled] {
            if classify(q).unwrap().class != class
                || orbit_rank(&CoefficientPoint::from_normal_form(q).unwrap()).unwrap().rank != rank
            {
                changes += 1;
            }
        }
    }
    check(changes == 0, format!("1000 conjugations and 1000 rescalings, {changes} verdict changes"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("dimension 28 from the orbit rank", dimension_28),
        ("screened points are stable", screen_implies_stable),
        ("remark family is stable and worse than canonical", remark_family),
        ("exact and numerical stability agree", oracle_agreement),
        ("normalizer soundness", normalizer_soundness),
        ("weight formula fidelity", weight_fidelity),
        ("genericity statistics", genericity),
        ("SL2 and scaling invariance", invariance),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {title}: {detail} ({secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {title}: {detail} ({secs:.1}s)", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
