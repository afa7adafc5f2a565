//! Named verification suites: the closed-form examples, the representation
//! identities, the monotonicity and symmetry theorems, and the stochastic
//! oracles, each reduced to a list of numeric checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use libm::log;

use crate::distributions::{catalog, symmetric_triangular, Distribution};
use crate::measures::{kerridge, kl_divergence, relative_information};
use crate::numerics::digamma;
use crate::oracle::{ks_critical_value, ks_two_sample, mc_measure, stream_extract_records_seeded, McConfig};
use crate::record_measures::{
    cpi_cdf_difference_form, cpi_closed_form, cpi_direct, cpi_expectation_form, cri_direct, cri_expectation_form,
    cri_hazard_forms, cri_mean_difference_form, kerridge_record, kerridge_record_closed_form, kerridge_record_gamma,
    kerridge_record_quadrature, scale_shift_check, EvalMethod, RecordMeasure, RecordMeasureRequest,
};
use crate::records::{sample_record, RecordSpec, Side};
use crate::{QuadratureConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    PaperExamples,
    Propositions,
    Monotonicity,
    Symmetry,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::PaperExamples,
        Suite::Propositions,
        Suite::Monotonicity,
        Suite::Symmetry,
        Suite::Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::PaperExamples => "paper-examples",
            Suite::Propositions => "propositions",
            Suite::Monotonicity => "monotonicity",
            Suite::Symmetry => "symmetry",
            Suite::Oracle => "oracle",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.as_str() == name)
    }
}

/// How `actual` is compared with `expected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `|actual - expected| <= tolerance`
    Equal,
    /// `actual <= expected + tolerance`
    AtMost,
    /// `actual >= expected - tolerance`
    AtLeast,
    /// `actual > expected + tolerance`
    Exceeds,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "==",
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Exceeds => ">",
        }
    }

    fn holds(self, actual: f64, expected: f64, tol: f64) -> bool {
        match self {
            Relation::Equal => (actual - expected).abs() <= tol,
            Relation::AtMost => actual <= expected + tol,
            Relation::AtLeast => actual >= expected - tol,
            Relation::Exceeds => actual > expected + tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the value could not be computed.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: String, relation: Relation, expected: f64, actual: Result<f64>, tolerance: f64) {
        let check = match actual {
            Ok(a) => Check {
                passed: relation.holds(a, expected, tolerance),
                name,
                relation,
                expected,
                actual: a,
                tolerance,
                error: None,
            },
            Err(e) => Check {
                name,
                relation,
                expected,
                actual: f64::NAN,
                tolerance,
                passed: false,
                error: Some(e.to_string()),
            },
        };
        self.0.push(check);
    }

    fn eq(&mut self, name: String, expected: f64, actual: Result<f64>, tol: f64) {
        self.push(name, Relation::Equal, expected, actual, tol);
    }

    // both sides computed; a failure on the reference side is reported too
    fn agree(&mut self, name: String, expected: Result<f64>, actual: Result<f64>, tol: f64) {
        match expected {
            Ok(e) => self.eq(name, e, actual, tol),
            Err(e) => self.eq(name, f64::NAN, Err(e), tol),
        }
    }
}

/// Runs one suite. `seed` only affects the oracle suite.
pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let mut c = Checks::default();
    match suite {
        Suite::PaperExamples => paper_examples(&mut c),
        Suite::Propositions => propositions(&mut c),
        Suite::Monotonicity => monotonicity(&mut c),
        Suite::Symmetry => symmetry(&mut c),
        Suite::Oracle => oracle(&mut c, seed),
    }
    Report {
        suite,
        seed,
        checks: c.0,
    }
}

fn upper(n: u32, k: u32) -> RecordSpec {
    RecordSpec::upper(n, k).expect("n, k >= 1")
}

fn lower(n: u32, k: u32) -> RecordSpec {
    RecordSpec::lower(n, k).expect("n, k >= 1")
}

fn value(r: Result<crate::MeasureResult>) -> Result<f64> {
    r.map(|m| m.value)
}

const THETAS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const CLOSED_TOL: f64 = 1e-12;

fn paper_examples(c: &mut Checks) {
    let cfg = QuadratureConfig::default();
    let tight = cfg.tightened(0.01);

    // Kerridge closed forms vs the printed formulas, and quadrature vs both
    for n in 1..=5 {
        for k in 1..=5 {
            let (nf, kf) = (n as f64, k as f64);
            let s = upper(n, k);
            let mut family = |label: String, d: Distribution, spec: RecordSpec, want: f64| {
                c.eq(format!("{label} closed"), want, kerridge_record_closed_form(&d, spec), CLOSED_TOL);
                c.eq(format!("{label} quad"), want, value(kerridge_record_quadrature(&d, spec, &cfg)), 1e-7);
            };
            for theta in THETAS {
                family(
                    format!("kerridge exponential({theta}) upper n={n} k={k}"),
                    Distribution::exponential(theta).unwrap(),
                    s,
                    nf / kf - log(theta),
                );
                family(
                    format!("kerridge pareto({theta}) upper n={n} k={k}"),
                    Distribution::pareto(theta).unwrap(),
                    s,
                    (1.0 + 1.0 / theta) * nf / kf - log(theta),
                );
            }
            for spec in [s, lower(n, k)] {
                family(
                    format!("kerridge uniform {} n={n} k={k}", spec.side().as_str()),
                    Distribution::uniform01(),
                    spec,
                    0.0,
                );
            }
            family(
                format!("kerridge power-dec upper n={n} k={k}"),
                Distribution::power_decreasing(),
                s,
                -log(3.0) + 2.0 * nf / (3.0 * kf),
            );
        }
    }

    // Weibull: derived closed form vs quadrature; printed form at k = 1
    for (lambda, beta) in [(1.0, 2.0), (2.0, 0.5)] {
        let d = Distribution::weibull(lambda, beta).unwrap();
        for n in 1..=4 {
            for k in 1..=3 {
                let label = format!("kerridge weibull({lambda},{beta}) upper n={n} k={k}");
                c.agree(
                    format!("{label} quad vs derived"),
                    kerridge_record_closed_form(&d, upper(n, k)),
                    value(kerridge_record_quadrature(&d, upper(n, k), &cfg)),
                    1e-7,
                );
                if k == 1 {
                    let printed = digamma(n as f64)
                        .map(|psi| n as f64 - log(beta) - log(lambda) / beta - (beta - 1.0) / beta * psi);
                    c.agree(
                        format!("{label} printed form"),
                        printed,
                        kerridge_record_closed_form(&d, upper(n, k)),
                        CLOSED_TOL,
                    );
                }
            }
        }
    }

    // cumulative residual inaccuracy: exponential and uniform
    for n in 1..=5 {
        for k in 1..=5 {
            let (nf, kf) = (n as f64, k as f64);
            for theta in THETAS {
                let d = Distribution::exponential(theta).unwrap();
                c.eq(
                    format!("cri exponential({theta}) n={n} k={k}"),
                    nf * (nf + 1.0) / (2.0 * theta * kf * kf),
                    value(cri_direct(&d, upper(n, k), &tight)),
                    1e-8,
                );
            }
            let want: f64 = (0..n)
                .map(|i| (i + 1) as f64 * libm::pow(kf, i as f64) / libm::pow(kf + 1.0, (i + 2) as f64))
                .sum();
            let u = Distribution::uniform01();
            c.eq(format!("cri uniform n={n} k={k}"), want, value(cri_direct(&u, upper(n, k), &tight)), 1e-10);
            c.eq(format!("cpi uniform n={n} k={k}"), want, value(cpi_direct(&u, lower(n, k), &tight)), 1e-10);
        }
    }

    // individual worked values
    let e1 = Distribution::exponential(1.0).unwrap();
    let u = Distribution::uniform01();
    let p2 = Distribution::power_increasing(2).unwrap();
    c.eq(
        "kerridge exponential(2) upper n=3 k=2".into(),
        0.806_852_819_4,
        value(kerridge_record(&Distribution::exponential(2.0).unwrap(), upper(3, 2), EvalMethod::Auto, &cfg)),
        1e-10,
    );
    c.eq(
        "cpi power-inc(2) n=1 k=1".into(),
        2.0 / 9.0,
        value(cpi_direct(&p2, lower(1, 1), &cfg)),
        1e-10,
    );
    for (d, name, n, k, a, b, want) in [
        (&e1, "exponential(1)", 2, 1, 2.0, 3.0, 6.0),
        (&u, "uniform", 1, 1, 1.0, 0.0, 0.25),
        (&u, "uniform", 1, 2, 3.0, -1.0, 1.0 / 3.0),
    ] {
        let r = scale_shift_check(d, upper(n, k), a, b, &cfg);
        c.eq(
            format!("cri scale-shift {name} n={n} k={k} a={a} b={b}"),
            want,
            r.map(|(lhs, _)| lhs.value),
            1e-7,
        );
    }
}

fn propositions(c: &mut Checks) {
    let cfg = QuadratureConfig::default();
    let parents = catalog();
    for d in &parents {
        let name = d.name();
        let params = d
            .params()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        let label = format!("{name}({params})");
        for n in 1..=3 {
            for k in 1..=3 {
                let s = upper(n, k);
                let direct = value(cri_direct(d, s, &cfg));
                let tag = |form: &str| format!("{form} {label} n={n} k={k}");
                c.agree(tag("cri expectation form"), direct.clone(), value(cri_expectation_form(d, s, &cfg)), 1e-6);
                c.agree(tag("cri mean-difference form"), direct.clone(), value(cri_mean_difference_form(d, s, &cfg)), 1e-6);
                let forms = cri_hazard_forms(d, s, &cfg);
                c.agree(tag("cri hazard form"), direct.clone(), forms.clone().map(|f| f.0.value), 1e-6);
                c.agree(tag("cri density form"), direct.clone(), forms.map(|f| f.1.value), 1e-6);
                for (a, b) in [(2.0, 3.0), (0.5, -1.0)] {
                    let r = scale_shift_check(d, s, a, b, &cfg);
                    c.agree(
                        tag(&format!("cri scale-shift a={a} b={b}")),
                        r.clone().map(|x| x.1.value),
                        r.map(|x| x.0.value),
                        1e-7,
                    );
                }

                let s = lower(n, k);
                let direct = value(cpi_direct(d, s, &cfg));
                c.agree(tag("cpi cdf-difference form"), direct.clone(), value(cpi_cdf_difference_form(d, s, &cfg)), 1e-6);
                c.agree(tag("cpi expectation form"), direct.clone(), value(cpi_expectation_form(d, s, &cfg)), 1e-6);
                if cpi_closed_form(d, s).is_ok() {
                    c.agree(tag("cpi closed form"), direct, cpi_closed_form(d, s), 1e-8);
                }
            }
        }
        for side in [Side::Upper, Side::Lower] {
            for n in 1..=4 {
                for k in 1..=4 {
                    let s = RecordSpec::new(side, n, k).unwrap();
                    let tag = format!("kerridge paths {label} {} n={n} k={k}", side.as_str());
                    let g = value(kerridge_record_gamma(d, s, &cfg));
                    c.agree(format!("{tag} gamma vs quad"), g.clone(), value(kerridge_record_quadrature(d, s, &cfg)), 1e-7);
                    if let Ok(closed) = kerridge_record_closed_form(d, s) {
                        c.agree(format!("{tag} closed vs gamma"), g, Ok(closed), 1e-7);
                    }
                }
            }
        }
    }

    // generic two-distribution identities
    for x in &parents {
        let h = x.entropy_closed_form().expect("catalog entropies are known");
        let label = x.name();
        c.eq(format!("kerridge(X,X) - entropy {label}"), h, value(kerridge(x, x, &cfg)), 1e-9);
        c.eq(format!("kl(X,X) {label}"), 0.0, value(kl_divergence(x, x, &cfg)), 1e-9);
        c.eq(format!("relinfo(X,X) {label}"), 0.0, value(relative_information(x, x, &cfg)), 1e-9);
        for y in &parents {
            let Ok(kl) = kl_divergence(x, y, &cfg) else { continue };
            let pair = format!("{label} vs {}", y.name());
            c.push(format!("kl >= 0 {pair}"), Relation::AtLeast, 0.0, Ok(kl.value), 1e-10);
            c.eq(format!("kerridge decomposition {pair}"), h + kl.value, value(kerridge(x, y, &cfg)), 1e-8);
        }
    }
}

fn monotonicity(c: &mut Checks) {
    let cfg = QuadratureConfig::default();
    for m in [2, 3] {
        let d = Distribution::power_increasing(m).unwrap();
        for k in 1..=3 {
            for side in [Side::Upper, Side::Lower] {
                let seq: Vec<Result<f64>> = (1..=6)
                    .map(|n| value(kerridge_record(&d, RecordSpec::new(side, n, k).unwrap(), EvalMethod::Auto, &cfg)))
                    .collect();
                for n in 1..6 {
                    let (rel, word) = match side {
                        Side::Upper => (Relation::AtMost, "nonincreasing"),
                        Side::Lower => (Relation::AtLeast, "nondecreasing"),
                    };
                    let name = format!("kerridge power-inc({m}) {} {word} k={k} n={n}->{}", side.as_str(), n + 1);
                    match &seq[n as usize - 1] {
                        Ok(prev) => c.push(name, rel, *prev, seq[n as usize].clone(), 1e-9),
                        Err(e) => c.push(name, rel, f64::NAN, Err(e.clone()), 1e-9),
                    }
                }
            }
        }
    }

    // example families: increasing in n, decreasing in k and theta
    type Family = (&'static str, fn(f64) -> Distribution);
    let families: [Family; 2] = [
        ("exponential", |t| Distribution::exponential(t).unwrap()),
        ("pareto", |t| Distribution::pareto(t).unwrap()),
    ];
    for (name, make) in families {
        let h = |theta: f64, n: u32, k: u32| kerridge_record_closed_form(&make(theta), upper(n, k));
        for theta in THETAS {
            for n in 1..=4 {
                for k in 1..=4 {
                    if let Ok(here) = h(theta, n, k) {
                        let tag = format!("kerridge {name}({theta}) n={n} k={k}");
                        c.push(format!("{tag} increasing in n"), Relation::Exceeds, here, h(theta, n + 1, k), 0.0);
                        c.push(format!("{tag} decreasing in k"), Relation::AtMost, here, h(theta, n, k + 1), -1e-12);
                        c.push(format!("{tag} decreasing in theta"), Relation::AtMost, here, h(theta * 2.0, n, k), -1e-12);
                    }
                }
            }
        }
    }
}

fn symmetry(c: &mut Checks) {
    let cfg = QuadratureConfig::default();
    for d in [Distribution::uniform01(), symmetric_triangular()] {
        for n in 1..=4 {
            for k in 1..=4 {
                let up = value(kerridge_record(&d, upper(n, k), EvalMethod::GammaExpectation, &cfg));
                let lo = value(kerridge_record(&d, lower(n, k), EvalMethod::GammaExpectation, &cfg));
                c.agree(format!("kerridge upper = lower {} n={n} k={k}", d.name()), up, lo, 1e-8);
            }
        }
    }
    let e = Distribution::exponential(1.0).unwrap();
    let up = value(kerridge_record(&e, upper(2, 1), EvalMethod::GammaExpectation, &cfg));
    let lo = value(kerridge_record(&e, lower(2, 1), EvalMethod::GammaExpectation, &cfg));
    let gap = up.and_then(|u| lo.map(|l| (u - l).abs()));
    c.push("kerridge upper != lower exponential(1) n=2 k=1".into(), Relation::Exceeds, 0.1, gap, 0.0);
}

/// Replications per KS comparison in the oracle suite.
pub const KS_DRAWS: usize = 100_000;
/// Seeded repetitions in the Monte Carlo coverage check.
pub const COVERAGE_RUNS: u64 = 200;

fn oracle(c: &mut Checks, seed: u64) {
    let alpha = 0.001;
    let crit = ks_critical_value(alpha, KS_DRAWS, Some(KS_DRAWS));
    for (pi, d) in [Distribution::exponential(1.0).unwrap(), Distribution::uniform01()]
        .iter()
        .enumerate()
    {
        for side in [Side::Upper, Side::Lower] {
            for k in 1..=3u32 {
                let stream_seed = seed ^ ((pi as u64) << 40 | (side as u64) << 36 | (k as u64) << 32);
                let runs: Result<Vec<Vec<f64>>> = (0..KS_DRAWS as u64)
                    .map(|r| stream_extract_records_seeded(d, side, k, 3, stream_seed, r))
                    .collect();
                for n in 1..=3u32 {
                    let name = format!("ks stream vs gamma {} {} n={n} k={k}", d.name(), side.as_str());
                    let stat = runs.clone().map(|runs| {
                        let mut a: Vec<f64> = runs.iter().map(|r| r[n as usize - 1]).collect();
                        let spec = RecordSpec::new(side, n, k).unwrap();
                        let mut b = sample_record(d, spec, stream_seed.wrapping_add(n as u64), KS_DRAWS);
                        ks_two_sample(&mut a, &mut b)
                    });
                    c.push(name, Relation::AtMost, crit, stat, 0.0);
                }
            }
        }
    }

    let cfg = QuadratureConfig::default();
    let e = Distribution::exponential(1.0).unwrap();
    let spec = upper(2, 1);
    let truth = value(kerridge_record_quadrature(&e, spec, &cfg));
    let req = RecordMeasureRequest::new(e, spec, RecordMeasure::Kerridge, EvalMethod::MonteCarlo).unwrap();
    let coverage = truth.clone().and_then(|t| {
        let mut covered = 0u64;
        for r in 0..COVERAGE_RUNS {
            let mc = McConfig::new(10_000, seed.wrapping_add(r))?;
            let est = mc_measure(&req, &mc)?;
            if (est.value - t).abs() <= est.abs_error_estimate {
                covered += 1;
            }
        }
        Ok(covered as f64 / COVERAGE_RUNS as f64)
    });
    c.push(
        "mc 3-sigma coverage kerridge exponential(1) upper n=2 k=1".into(),
        Relation::AtLeast,
        0.99,
        coverage,
        0.0,
    );

    for (d, n, k, want) in [
        (Distribution::exponential(1.0).unwrap(), 2, 1, 2.0),
        (Distribution::uniform01(), 3, 2, 0.0),
        (Distribution::power_decreasing(), 1, 1, -log(3.0) + 2.0 / 3.0),
    ] {
        let name = format!("mc kerridge {} upper n={n} k={k}", d.name());
        let req = RecordMeasureRequest::new(d, upper(n, k), RecordMeasure::Kerridge, EvalMethod::MonteCarlo).unwrap();
        match McConfig::new(1_000_000, seed).and_then(|mc| mc_measure(&req, &mc)) {
            Ok(r) => c.eq(name, want, Ok(r.value), r.abs_error_estimate.max(1e-12)),
            Err(err) => c.eq(name, want, Err(err), 0.0),
        }
    }
}
