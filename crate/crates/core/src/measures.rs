//! Two-distribution inaccuracy and divergence measures, by quadrature.
//!
//! `X` is the true law and `Y` the assumed one. Record-based versions come
//! from passing a [`RecordDistribution`](crate::RecordDistribution) as `X`.
//! Cumulative measures integrate only where the integrand is not identically
//! zero (or one, for the extropy products), which for the survival-based
//! measures starts at the lower end of the supports.

use alloc::format;

use libm::fabs;

use crate::distributions::{Law, Support};
use crate::numerics::{integrate, IntegrationError, Interval, QuadratureConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
    GammaExpectation,
    MonteCarlo,
}

impl Method {
    /// Tag used in output records; matches the CLI `--method` vocabulary.
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Quadrature => "quad",
            Method::GammaExpectation => "gamma",
            Method::MonteCarlo => "mc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    pub abs_error_estimate: f64,
}

impl MeasureResult {
    pub fn closed_form(value: f64) -> Self {
        Self {
            value,
            method: Method::ClosedForm,
            abs_error_estimate: 0.0,
        }
    }

    pub(crate) fn new(value: f64, method: Method, abs_error_estimate: f64) -> Self {
        Self {
            value,
            method,
            abs_error_estimate: abs_error_estimate.max(0.0),
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * fabs(factor),
            ..self
        }
    }
}

// u log u -> 0 below this
const NEGLIGIBLE: f64 = 1e-300;
const TAIL_PROBES: [f64; 2] = [1e6, 1e12];

/// Integrates a measure's integrand, reporting divergence instead of a
/// numerical failure when the range is unbounded and the tail does not decay.
pub(crate) fn quad_measure<F: Fn(f64) -> f64>(
    what: &'static str,
    f: F,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    if !(lo < hi) {
        return Ok(MeasureResult::new(0.0, Method::Quadrature, 0.0));
    }
    let interval = Interval::from_bounds(lo, hi);
    let tail_fails = |anchor: f64, dir: f64| {
        let [near, far] = TAIL_PROBES.map(|d| {
            let x = anchor + dir * d;
            fabs(d * f(x))
        });
        far.is_nan() || (far > 1e-6 && far >= 0.5 * near)
    };
    if (hi.is_infinite() && tail_fails(if lo.is_finite() { lo } else { 0.0 }, 1.0))
        || (lo.is_infinite() && tail_fails(if hi.is_finite() { hi } else { 0.0 }, -1.0))
    {
        return Err(Error::Divergent(format!("{what}: integrand tail does not decay")));
    }
    match integrate(&f, interval, cfg) {
        Ok(r) => Ok(MeasureResult::new(r.value, Method::Quadrature, r.abs_error_estimate)),
        Err(IntegrationError::NotConverged { partial, .. }) if !interval.is_bounded() => Err(Error::Divergent(
            format!("{what}: quadrature on an unbounded range did not settle (partial {partial})"),
        )),
        Err(e) => Err(e.into()),
    }
}

fn check_containment<X: Law + ?Sized, Y: Law + ?Sized>(x: &X, y: &Y, what: &'static str) -> Result<Support> {
    let sx = x.support();
    let sy = y.support();
    if sx.lower < sy.lower || sx.upper > sy.upper {
        return Err(Error::Divergent(format!(
            "{what}: support ({}, {}) is not inside the reference support ({}, {})",
            sx.lower, sx.upper, sy.lower, sy.upper
        )));
    }
    for p in sx.interior_points(16) {
        if x.pdf(p) > 0.0 && !(y.pdf(p) > 0.0) {
            return Err(Error::Divergent(format!("{what}: reference density vanishes at {p}")));
        }
    }
    Ok(sx)
}

/// Kerridge inaccuracy `-∫ f_X log f_Y`.
pub fn kerridge<X: Law + ?Sized, Y: Law + ?Sized>(x: &X, y: &Y, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    let s = check_containment(x, y, "kerridge")?;
    quad_measure(
        "kerridge",
        |t| {
            let fx = x.pdf(t);
            if fx == 0.0 {
                0.0
            } else {
                -fx * y.ln_pdf(t)
            }
        },
        s.lower,
        s.upper,
        cfg,
    )
}

/// Shannon entropy: the closed form when one is supplied, else `kerridge(X, X)`.
pub fn shannon_entropy<X: Law + ?Sized>(x: &X, closed_form: Option<f64>, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    match closed_form {
        Some(v) => Ok(MeasureResult::closed_form(v)),
        None => kerridge(x, x, cfg),
    }
}

/// Extropy inaccuracy `-1/2 ∫ f_X f_Y`.
pub fn extropy_inaccuracy<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let (sx, sy) = (x.support(), y.support());
    let r = quad_measure(
        "extropy inaccuracy",
        |t| x.pdf(t) * y.pdf(t),
        sx.lower.max(sy.lower),
        sx.upper.min(sy.upper),
        cfg,
    )?;
    Ok(r.scaled(-0.5))
}

/// Cumulative residual extropy inaccuracy `-1/2 ∫ F̄_X F̄_Y`.
pub fn cumulative_residual_extropy_inaccuracy<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let (sx, sy) = (x.support(), y.support());
    let lo = sx.lower.min(sy.lower);
    if lo.is_infinite() {
        return Err(Error::Divergent("CRIJ: survival product is 1 on an unbounded lower range".into()));
    }
    let r = quad_measure(
        "CRIJ",
        |t| x.sf(t) * y.sf(t),
        lo,
        sx.upper.min(sy.upper),
        cfg,
    )?;
    Ok(r.scaled(-0.5))
}

/// Cumulative past extropy inaccuracy `-1/2 ∫ F_X F_Y`.
pub fn cumulative_past_extropy_inaccuracy<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let (sx, sy) = (x.support(), y.support());
    let hi = sx.upper.max(sy.upper);
    if hi.is_infinite() {
        return Err(Error::Divergent("CPIJ: cdf product tends to 1 on an unbounded upper range".into()));
    }
    let r = quad_measure("CPIJ", |t| x.cdf(t) * y.cdf(t), sx.lower.max(sy.lower), hi, cfg)?;
    Ok(r.scaled(-0.5))
}

/// `-1/2 ∫ F̄²`, the survival-based cumulative extropy of one law.
pub fn cumulative_survival_extropy<X: Law + ?Sized>(x: &X, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    cumulative_residual_extropy_inaccuracy(x, x, cfg)
}

/// `-1/2 ∫ F²`, the cdf-based cumulative extropy of one law.
pub fn cumulative_distribution_extropy<X: Law + ?Sized>(x: &X, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    cumulative_past_extropy_inaccuracy(x, x, cfg)
}

/// Kullback–Leibler divergence `∫ f_X log(f_X / f_Y)`.
pub fn kl_divergence<X: Law + ?Sized, Y: Law + ?Sized>(x: &X, y: &Y, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    let s = check_containment(x, y, "kl")?;
    quad_measure(
        "kl",
        |t| {
            let fx = x.pdf(t);
            if fx == 0.0 {
                0.0
            } else {
                fx * (x.ln_pdf(t) - y.ln_pdf(t))
            }
        },
        s.lower,
        s.upper,
        cfg,
    )
}

/// Relative information `1/2 ∫ f_X (f_X - f_Y)`.
pub fn relative_information<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let s = x.support();
    let r = quad_measure(
        "relative information",
        |t| {
            let fx = x.pdf(t);
            if fx == 0.0 {
                0.0
            } else {
                fx * (fx - y.pdf(t))
            }
        },
        s.lower,
        s.upper,
        cfg,
    )?;
    Ok(r.scaled(0.5))
}

/// Cumulative residual inaccuracy `-∫ F̄_X log F̄_Y`.
pub fn cumulative_residual_inaccuracy<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let (sx, sy) = (x.support(), y.support());
    if sx.upper > sy.upper {
        return Err(Error::Divergent("cri: reference survival vanishes inside the true support".into()));
    }
    quad_measure(
        "cri",
        |t| {
            let s = x.sf(t);
            if s <= NEGLIGIBLE {
                0.0
            } else {
                -s * y.ln_sf(t)
            }
        },
        sy.lower,
        sx.upper,
        cfg,
    )
}

/// Cumulative past inaccuracy `-∫ F_X log F_Y`.
pub fn cumulative_past_inaccuracy<X: Law + ?Sized, Y: Law + ?Sized>(
    x: &X,
    y: &Y,
    cfg: &QuadratureConfig,
) -> Result<MeasureResult> {
    let (sx, sy) = (x.support(), y.support());
    if sx.lower < sy.lower {
        return Err(Error::Divergent("cpi: reference cdf vanishes inside the true support".into()));
    }
    quad_measure(
        "cpi",
        |t| {
            let c = x.cdf(t);
            if c <= NEGLIGIBLE {
                0.0
            } else {
                -c * y.ln_cdf(t)
            }
        },
        sx.lower,
        sy.upper,
        cfg,
    )
}

/// Cumulative residual entropy `-∫ F̄ log F̄`.
pub fn cumulative_residual_entropy<X: Law + ?Sized>(x: &X, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    cumulative_residual_inaccuracy(x, x, cfg)
}

/// Cumulative past entropy `-∫ F log F`.
pub fn cumulative_past_entropy<X: Law + ?Sized>(x: &X, cfg: &QuadratureConfig) -> Result<MeasureResult> {
    cumulative_past_inaccuracy(x, x, cfg)
}
