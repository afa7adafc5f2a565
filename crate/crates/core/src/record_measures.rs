//! Inaccuracy between a k-record law and its parent.
//!
//! Three measures are covered: Kerridge inaccuracy `H(f_{R}, f_X)` for
//! either side, cumulative residual inaccuracy `H(F̄_{U}, F̄_X)` for upper
//! records, and cumulative past inaccuracy `H(F_{L}, F_X)` for lower
//! records. Each has a closed form for some parents, a direct quadrature
//! path, and a gamma-expectation path through `T ~ Gamma(n, rate k)`.
//! The remaining functions evaluate the alternative representations as
//! independent integrals so they can be compared against the direct path.

use alloc::format;

use libm::{exp, log, pow};

use crate::distributions::{Distribution, Family, Law};
use crate::measures::{kerridge, quad_measure, MeasureResult, Method};
use crate::numerics::{digamma, gamma_expectation, integrate, ln_factorial, log_gamma, IntegrationError, Interval};
use crate::oracle::{mc_measure, McConfig};
use crate::records::{RecordDistribution, RecordSpec, Side};
use crate::{Error, QuadratureConfig, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecordMeasure {
    Kerridge,
    Cri,
    Cpi,
}

impl RecordMeasure {
    pub fn as_str(self) -> &'static str {
        match self {
            RecordMeasure::Kerridge => "kerridge",
            RecordMeasure::Cri => "cri",
            RecordMeasure::Cpi => "cpi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalMethod {
    #[default]
    Auto,
    ClosedForm,
    Quadrature,
    GammaExpectation,
    MonteCarlo,
}

impl EvalMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EvalMethod::Auto => "auto",
            EvalMethod::ClosedForm => "closed",
            EvalMethod::Quadrature => "quad",
            EvalMethod::GammaExpectation => "gamma",
            EvalMethod::MonteCarlo => "mc",
        }
    }
}

/// A validated record measure evaluation: CRI is defined for upper records
/// and CPI for lower records.
#[derive(Debug, Clone)]
pub struct RecordMeasureRequest {
    parent: Distribution,
    spec: RecordSpec,
    measure: RecordMeasure,
    method: EvalMethod,
}

impl RecordMeasureRequest {
    pub fn new(parent: Distribution, spec: RecordSpec, measure: RecordMeasure, method: EvalMethod) -> Result<Self> {
        match (measure, spec.side()) {
            (RecordMeasure::Cri, Side::Lower) => Err(Error::InvalidRequest("cri is defined for upper records")),
            (RecordMeasure::Cpi, Side::Upper) => Err(Error::InvalidRequest("cpi is defined for lower records")),
            _ => Ok(Self {
                parent,
                spec,
                measure,
                method,
            }),
        }
    }

    pub fn parent(&self) -> &Distribution {
        &self.parent
    }

    pub fn spec(&self) -> RecordSpec {
        self.spec
    }

    pub fn measure(&self) -> RecordMeasure {
        self.measure
    }

    pub fn method(&self) -> EvalMethod {
        self.method
    }

    pub fn evaluate(&self, quad: &QuadratureConfig, mc: &McConfig) -> Result<MeasureResult> {
        if self.method == EvalMethod::MonteCarlo {
            return mc_measure(self, mc);
        }
        let (p, s, m) = (&self.parent, self.spec, self.method);
        match self.measure {
            RecordMeasure::Kerridge => kerridge_record(p, s, m, quad),
            RecordMeasure::Cri => cri_upper_record(p, s, m, quad),
            RecordMeasure::Cpi => cpi_lower_record(p, s, m, quad),
        }
    }
}

fn no_closed_form(measure: &'static str, parent: &Distribution) -> Error {
    Error::NoClosedForm {
        measure,
        dist: parent.name(),
    }
}

// Gamma-path integration errors on (0, inf) mean the expectation does not exist
// in any usable sense; report them as divergence.
fn gamma_path<G: Fn(f64) -> f64>(what: &str, g: G, n: u32, k: u32, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    match gamma_expectation(g, n, k, cfg) {
        Ok(r) => Ok(MeasureResult::new(r.value, Method::GammaExpectation, r.abs_error_estimate)),
        Err(e @ (IntegrationError::NotConverged { .. } | IntegrationError::NonFinite { .. })) => {
            Err(Error::Divergent(format!("{what}: gamma expectation failed ({e})")))
        }
    }
}

fn require_side(spec: RecordSpec, side: Side, msg: &'static str) -> Result<()> {
    if spec.side() == side {
        Ok(())
    } else {
        Err(Error::InvalidRequest(msg))
    }
}

// ---------------------------------------------------------------- Kerridge

/// Closed form of `H(f_{R_{n,k}}, f_X)` where one is known.
pub fn kerridge_record_closed_form(parent: &Distribution, spec: RecordSpec) -> Result<f64> {
    let (n, k) = (spec.n() as f64, spec.k() as f64);
    let upper = spec.side() == Side::Upper;
    let v = match parent.family() {
        Family::Exponential { theta } if upper => n / k - log(*theta),
        Family::Pareto { theta } if upper => (1.0 + 1.0 / theta) * n / k - log(*theta),
        Family::Weibull { lambda, beta } if upper => {
            let e_log_t = digamma(n)? - log(k);
            n / k - log(*beta) - log(*lambda) / beta - (beta - 1.0) / beta * e_log_t
        }
        Family::Uniform01 => 0.0,
        Family::PowerDecreasing if upper => -log(3.0) + 2.0 * n / (3.0 * k),
        // lower: X = e^{-T/m}, so -log f = -log m + (m-1) T / m
        Family::PowerIncreasing { m } if !upper => {
            let m = *m as f64;
            -log(m) + (m - 1.0) * n / (m * k)
        }
        Family::Affine { base, scale, .. } => kerridge_record_closed_form(base, spec)? + log(*scale),
        _ => return Err(no_closed_form("kerridge", parent)),
    };
    Ok(v)
}

/// `E[-log f_X(x(T))]` with `x(T)` the gamma transform.
pub fn kerridge_record_gamma(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    gamma_path(
        "kerridge",
        |t| parent.neg_ln_pdf_at_transform(spec.side(), t),
        spec.n(),
        spec.k(),
        cfg,
    )
}

/// `-∫ f_{R_{n,k}} log f_X` by quadrature in x.
pub fn kerridge_record_quadrature(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    kerridge(&RecordDistribution::new(parent.clone(), spec), parent, cfg)
}

/// Kerridge inaccuracy between the record law and its parent. `Auto` uses the
/// closed form when one is known, else the gamma path.
pub fn kerridge_record(
    parent: &Distribution,
    spec: RecordSpec,
    method: EvalMethod,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    match method {
        EvalMethod::ClosedForm => kerridge_record_closed_form(parent, spec).map(MeasureResult::closed_form),
        EvalMethod::Quadrature => kerridge_record_quadrature(parent, spec, cfg),
        EvalMethod::GammaExpectation => kerridge_record_gamma(parent, spec, cfg),
        EvalMethod::Auto => match kerridge_record_closed_form(parent, spec) {
            Ok(v) => Ok(MeasureResult::closed_form(v)),
            Err(Error::NoClosedForm { .. }) => kerridge_record_gamma(parent, spec, cfg),
            Err(e) => Err(e),
        },
        EvalMethod::MonteCarlo => Err(Error::InvalidRequest("Monte Carlo evaluation needs an McConfig")),
    }
}

// ------------------------------------------------- cumulative measures

// sum_{i<n} (k^i / i!) S^k u^{i+1}, with S the parent sf (upper) or cdf
// (lower) and u = -log S; in log space.
fn cumulative_integrand(parent: &Distribution, spec: RecordSpec, x: f64) -> f64 {
    let ln_s = match spec.side() {
        Side::Upper => parent.ln_sf(x),
        Side::Lower => parent.ln_cdf(x),
    };
    let u = -ln_s;
    if !(u > 0.0) || ln_s == f64::NEG_INFINITY {
        return 0.0;
    }
    let (ln_k, ln_u) = (log(spec.k() as f64), log(u));
    let base = spec.k() as f64 * ln_s;
    (0..spec.n())
        .map(|i| exp(i as f64 * ln_k - ln_factorial(i) + base + (i + 1) as f64 * ln_u))
        .sum()
}

fn cumulative_direct(what: &'static str, parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    let s = parent.support();
    quad_measure(what, |x| cumulative_integrand(parent, spec, x), s.lower, s.upper, cfg)
}

// (1/k^2) sum_i (i+1) E_{T_{i+2,k}}[S/f at x(T)], where S(x(t)) = e^{-t}.
fn cumulative_expectation(what: &'static str, parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    let k = spec.k();
    let mut value = 0.0;
    let mut err = 0.0;
    for i in 0..spec.n() {
        let r = gamma_path(
            what,
            |t| exp(parent.neg_ln_pdf_at_transform(spec.side(), t) - t),
            i + 2,
            k,
            cfg,
        )?;
        value += (i + 1) as f64 * r.value;
        err += (i + 1) as f64 * r.abs_error_estimate;
    }
    let scale = 1.0 / (k as f64 * k as f64);
    Ok(MeasureResult::new(value * scale, Method::GammaExpectation, err * scale))
}

// sum_{i<n} (i+1) k^i c^{i+1} / (c k + d)^{i+2}: shared shape of several
// closed forms below.
fn weighted_geometric(n: u32, k: f64, c: f64, d: f64) -> f64 {
    (0..n)
        .map(|i| (i + 1) as f64 * pow(k, i as f64) * pow(c, (i + 1) as f64) / pow(c * k + d, (i + 2) as f64))
        .sum()
}

/// Closed form of the upper-record cumulative residual inaccuracy.
pub fn cri_closed_form(parent: &Distribution, spec: RecordSpec) -> Result<f64> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    let (n, k) = (spec.n(), spec.k() as f64);
    let v = match parent.family() {
        Family::Exponential { theta } => {
            let n = n as f64;
            n * (n + 1.0) / (2.0 * theta * k * k)
        }
        Family::Uniform01 => weighted_geometric(n, k, 1.0, 1.0),
        // sf (1-x)^3: the uniform computation with u scaled by 3
        Family::PowerDecreasing => weighted_geometric(n, k, 3.0, 1.0),
        // sf x^{-theta}: in y = log x the integrand is theta^{i+1} y^{i+1} e^{-(theta k - 1) y}
        Family::Pareto { theta } => {
            if theta * k <= 1.0 {
                return Err(Error::Divergent(format!(
                    "cri: sf^k of pareto({theta}) is not integrable for k = {k}"
                )));
            }
            weighted_geometric(n, k, *theta, -1.0)
        }
        // substitute s = lambda x^beta
        Family::Weibull { lambda, beta } => {
            let mut sum = 0.0;
            for i in 0..n {
                let a = (i + 1) as f64 + 1.0 / beta;
                sum += exp(i as f64 * log(k) - ln_factorial(i) + log_gamma(a)? - a * log(k));
            }
            sum / (beta * pow(*lambda, 1.0 / beta))
        }
        Family::Affine { base, scale, .. } => scale * cri_closed_form(base, spec)?,
        _ => return Err(no_closed_form("cri", parent)),
    };
    Ok(v)
}

/// `sum_i (k^i/i!) ∫ F̄^k (-log F̄)^{i+1}` by quadrature.
pub fn cri_direct(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    cumulative_direct("cri", parent, spec, cfg)
}

/// `(1/k^2) sum_i (i+1) E_{U_{i+2,k}}[1/hazard]` via gamma expectations.
pub fn cri_expectation_form(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    cumulative_expectation("cri", parent, spec, cfg)
}

/// Cumulative residual inaccuracy of the upper record against its parent.
/// `Auto` uses the closed form when known, else direct quadrature.
pub fn cri_upper_record(
    parent: &Distribution,
    spec: RecordSpec,
    method: EvalMethod,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    match method {
        EvalMethod::ClosedForm => cri_closed_form(parent, spec).map(MeasureResult::closed_form),
        EvalMethod::Quadrature => cri_direct(parent, spec, cfg),
        EvalMethod::GammaExpectation => cri_expectation_form(parent, spec, cfg),
        EvalMethod::Auto => match cri_closed_form(parent, spec) {
            Ok(v) => Ok(MeasureResult::closed_form(v)),
            Err(Error::NoClosedForm { .. }) => cri_direct(parent, spec, cfg),
            Err(e) => Err(e),
        },
        EvalMethod::MonteCarlo => Err(Error::InvalidRequest("Monte Carlo evaluation needs an McConfig")),
    }
}

/// `sum_i ((i+1)/k) (mu_{i+2,k} - mu_{i+1,k})` with `mu_{m,k} = E[U_{m,k}]`.
pub fn cri_mean_difference_form(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    let (n, k) = (spec.n(), spec.k());
    let mean = |m: u32| gamma_path("record mean", |t| parent.record_transform(Side::Upper, t), m, k, cfg);
    let mut prev = mean(1)?;
    let mut value = 0.0;
    let mut err = 0.0;
    for i in 0..n {
        let next = mean(i + 2)?;
        let w = (i + 1) as f64 / k as f64;
        value += w * (next.value - prev.value);
        err += w * (next.abs_error_estimate + prev.abs_error_estimate);
        prev = next;
    }
    Ok(MeasureResult::new(value, Method::GammaExpectation, err))
}

/// The two double-integral representations obtained by changing the order
/// of integration: over the hazard rate, and over `F̄^{k-1} f`.
pub fn cri_hazard_forms(
    parent: &Distribution,
    spec: RecordSpec,
    cfg: &QuadratureConfig,
) -> Result<(MeasureResult, MeasureResult)> {
    require_side(spec, Side::Upper, "cri is defined for upper records")?;
    let s = parent.support();
    let inner_cfg = cfg.tightened(0.1);
    let record = RecordDistribution::new(parent.clone(), spec);
    let k = spec.k() as f64;

    // ∫ hazard(t) [∫_t^hi sf_U(x) dx] dt, sf_U = F̄^k sum_i (k u)^i / i!
    let hazard_form = quad_measure(
        "cri hazard form",
        |t| {
            let inner = match integrate(|x| record.sf(x), Interval::from_bounds(t, s.upper), &inner_cfg) {
                Ok(r) => r.value,
                Err(_) => return f64::NAN,
            };
            if inner == 0.0 {
                0.0
            } else {
                parent.hazard(t) * inner
            }
        },
        s.lower,
        s.upper,
        cfg,
    )?;

    // ∫ F̄^{k-1}(t) f(t) [∫_lo^t sum_i (k u)^{i+1} / i! dx] dt
    let g = |x: f64| {
        let ku = -k * parent.ln_sf(x);
        if !(ku > 0.0) {
            return 0.0;
        }
        let ln_ku = log(ku);
        (0..spec.n())
            .map(|i| exp((i + 1) as f64 * ln_ku - ln_factorial(i)))
            .sum::<f64>()
    };
    let density_form = quad_measure(
        "cri density form",
        |t| {
            let w = exp((k - 1.0) * parent.ln_sf(t) + parent.ln_pdf(t));
            if w == 0.0 {
                return 0.0;
            }
            match integrate(g, Interval::from_bounds(s.lower, t), &inner_cfg) {
                Ok(r) => w * r.value,
                Err(_) => f64::NAN,
            }
        },
        s.lower,
        s.upper,
        cfg,
    )?;
    Ok((hazard_form, density_form))
}

/// Scale–shift property of the upper-record CRI: returns the CRI computed
/// directly on the parent of `aX + b`, and `a` times the CRI on `X`.
pub fn scale_shift_check(
    parent: &Distribution,
    spec: RecordSpec,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(MeasureResult, MeasureResult)> {
    let transformed = parent.affine(a, b)?;
    let lhs = cri_direct(&transformed, spec, cfg)?;
    let rhs = cri_upper_record(parent, spec, EvalMethod::Auto, cfg)?.scaled(a);
    Ok((lhs, rhs))
}

/// Closed form of the lower-record cumulative past inaccuracy.
pub fn cpi_closed_form(parent: &Distribution, spec: RecordSpec) -> Result<f64> {
    require_side(spec, Side::Lower, "cpi is defined for lower records")?;
    let (n, k) = (spec.n(), spec.k() as f64);
    let v = match parent.family() {
        Family::Uniform01 => weighted_geometric(n, k, 1.0, 1.0),
        // cdf x^m: the uniform computation with u scaled by m
        Family::PowerIncreasing { m } => weighted_geometric(n, k, *m as f64, 1.0),
        Family::Affine { base, scale, .. } => scale * cpi_closed_form(base, spec)?,
        _ => return Err(no_closed_form("cpi", parent)),
    };
    Ok(v)
}

/// `sum_i (k^i/i!) ∫ F^k (-log F)^{i+1}` by quadrature.
pub fn cpi_direct(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Lower, "cpi is defined for lower records")?;
    cumulative_direct("cpi", parent, spec, cfg)
}

/// `(1/k^2) sum_i (i+1) E_{L_{i+2,k}}[F/f]` via gamma expectations; the
/// expectation is over the record variable `L_{i+2,k}`.
pub fn cpi_expectation_form(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Lower, "cpi is defined for lower records")?;
    cumulative_expectation("cpi", parent, spec, cfg)
}

/// Cumulative past inaccuracy of the lower record against its parent.
/// `Auto` uses the closed form when known, else direct quadrature.
pub fn cpi_lower_record(
    parent: &Distribution,
    spec: RecordSpec,
    method: EvalMethod,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    require_side(spec, Side::Lower, "cpi is defined for lower records")?;
    match method {
        EvalMethod::ClosedForm => cpi_closed_form(parent, spec).map(MeasureResult::closed_form),
        EvalMethod::Quadrature => cpi_direct(parent, spec, cfg),
        EvalMethod::GammaExpectation => cpi_expectation_form(parent, spec, cfg),
        EvalMethod::Auto => match cpi_closed_form(parent, spec) {
            Ok(v) => Ok(MeasureResult::closed_form(v)),
            Err(Error::NoClosedForm { .. }) => cpi_direct(parent, spec, cfg),
            Err(e) => Err(e),
        },
        EvalMethod::MonteCarlo => Err(Error::InvalidRequest("Monte Carlo evaluation needs an McConfig")),
    }
}

/// `∫ sum_i ((i+1)/k) (F_{L_{i+2,k}} - F_{L_{i+1,k}}) dx`.
pub fn cpi_cdf_difference_form(parent: &Distribution, spec: RecordSpec, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    require_side(spec, Side::Lower, "cpi is defined for lower records")?;
    let (n, k) = (spec.n(), spec.k());
    let laws: alloc::vec::Vec<RecordDistribution> = (1..=n + 1)
        .map(|m| spec.with_n(m).map(|s| RecordDistribution::new(parent.clone(), s)))
        .collect::<Result<_>>()?;
    let s = parent.support();
    quad_measure(
        "cpi cdf difference form",
        |x| {
            let mut sum = 0.0;
            let mut prev = laws[0].cdf_sf(x);
            for i in 0..n as usize {
                let next = laws[i + 1].cdf_sf(x);
                // subtract whichever pair is small to avoid cancellation
                let diff = if next.0 < 0.5 { next.0 - prev.0 } else { prev.1 - next.1 };
                sum += (i + 1) as f64 / k as f64 * diff;
                prev = next;
            }
            sum
        },
        s.lower,
        s.upper,
        cfg,
    )
}
