//! Parent distributions: the parametric catalog, caller-supplied laws, and
//! positive affine images of either.
//!
//! Every law carries closed-form log-density, log-survival and log-cdf so that
//! record integrands deep in a tail never go through `log(0)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use libm::{exp, expm1, log, log1p, pow, sqrt};

use crate::numerics::digamma;
use crate::records::Side;
use crate::{Error, Result};

/// Open support interval `(lower, upper)`; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    pub upper: f64,
}

impl Support {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || !(lower < upper) {
            return Err(Error::Parameter {
                name: "support",
                value: lower,
                reason: "lower end must be below upper end",
            });
        }
        Ok(Self { lower, upper })
    }

    pub const fn positive() -> Self {
        Self {
            lower: 0.0,
            upper: f64::INFINITY,
        }
    }

    pub const fn unit() -> Self {
        Self {
            lower: 0.0,
            upper: 1.0,
        }
    }

    /// Closed membership; endpoint values are one-sided limits.
    pub fn contains(&self, x: f64) -> bool {
        x >= self.lower && x <= self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn interval(&self) -> crate::Interval {
        crate::Interval::from_bounds(self.lower, self.upper)
    }

    /// `count` strictly interior points, evenly spaced on bounded supports and
    /// spread by `p / (1 - p)` along infinite ends.
    pub fn interior_points(&self, count: usize) -> Vec<f64> {
        (0..count)
            .map(|j| {
                let p = (j as f64 + 0.5) / count as f64;
                match (self.lower.is_finite(), self.upper.is_finite()) {
                    (true, true) => self.lower + p * (self.upper - self.lower),
                    (true, false) => self.lower + p / (1.0 - p),
                    (false, true) => self.upper - (1.0 - p) / p,
                    (false, false) => log(p / (1.0 - p)),
                }
            })
            .collect()
    }
}

/// The functional interface every measure integrates against.
pub trait Law {
    fn support(&self) -> Support;
    fn pdf(&self, x: f64) -> f64;
    fn ln_pdf(&self, x: f64) -> f64 {
        log(self.pdf(x))
    }
    fn cdf(&self, x: f64) -> f64;
    fn sf(&self, x: f64) -> f64 {
        1.0 - self.cdf(x)
    }
    fn ln_cdf(&self, x: f64) -> f64 {
        log(self.cdf(x))
    }
    fn ln_sf(&self, x: f64) -> f64 {
        log(self.sf(x))
    }
}

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A caller-supplied law. Built through [`CustomLaw::new`] and
/// [`CustomLaw::build`], which checks the functions against each other.
#[derive(Clone)]
pub struct CustomLaw {
    name: String,
    support: Support,
    pdf: RealFn,
    cdf: RealFn,
    quantile: RealFn,
    sf: Option<RealFn>,
    isf: Option<RealFn>,
    ln_pdf: Option<RealFn>,
}

impl core::fmt::Debug for CustomLaw {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CustomLaw")
            .field("name", &self.name)
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

const PROBE_POINTS: usize = 16;

impl CustomLaw {
    pub fn new(
        name: impl Into<String>,
        support: Support,
        pdf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        cdf: impl Fn(f64) -> f64 + Send + Sync + 'static,
        quantile: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            support,
            pdf: Arc::new(pdf),
            cdf: Arc::new(cdf),
            quantile: Arc::new(quantile),
            sf: None,
            isf: None,
            ln_pdf: None,
        }
    }

    /// Survival function, when `1 - cdf` would lose precision in the upper tail.
    pub fn with_sf(mut self, sf: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.sf = Some(Arc::new(sf));
        self
    }

    /// Inverse survival function `q -> x` with `sf(x) = q`. Used for the
    /// upper-record transform in place of `quantile(1 - q)`.
    pub fn with_isf(mut self, isf: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.isf = Some(Arc::new(isf));
        self
    }

    pub fn with_ln_pdf(mut self, ln_pdf: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.ln_pdf = Some(Arc::new(ln_pdf));
        self
    }

    /// Probes the supplied functions at 16 interior quantiles and wraps them
    /// as a [`Distribution`].
    pub fn build(self) -> Result<Distribution> {
        let mut last_cdf = f64::NEG_INFINITY;
        for j in 0..PROBE_POINTS {
            let p = (j as f64 + 0.5) / PROBE_POINTS as f64;
            let x = (self.quantile)(p);
            let fail = |probe| Err(Error::Probe { probe, x });
            if !(x > self.support.lower && x < self.support.upper) {
                return fail("quantile lies inside the support");
            }
            let f = (self.pdf)(x);
            if !(f >= 0.0) || !f.is_finite() {
                return fail("pdf is finite and nonnegative");
            }
            let c = (self.cdf)(x);
            if !(c >= last_cdf) || !(0.0..=1.0).contains(&c) {
                return fail("cdf is monotone with values in [0, 1]");
            }
            last_cdf = c;
            let back = (self.quantile)(c);
            if (back - x).abs() > 1e-8 * x.abs().max(1.0) {
                return fail("quantile inverts cdf");
            }
            let h = 1e-5 * x.abs().max(1.0);
            let slope = ((self.cdf)(x + h) - (self.cdf)(x - h)) / (2.0 * h);
            if (slope - f).abs() > 1e-4 * f.max(1.0) {
                return fail("cdf derivative matches pdf");
            }
            if let Some(sf) = &self.sf {
                if (sf(x) + c - 1.0).abs() > 1e-12 {
                    return fail("sf complements cdf");
                }
            }
            if let Some(isf) = &self.isf {
                if (isf(1.0 - p) - x).abs() > 1e-8 * x.abs().max(1.0) {
                    return fail("isf mirrors quantile");
                }
            }
            if let Some(lp) = &self.ln_pdf {
                if f > 0.0 && (lp(x) - log(f)).abs() > 1e-10 * log(f).abs().max(1.0) {
                    return fail("ln_pdf matches log of pdf");
                }
            }
        }
        Ok(Distribution {
            family: Family::Custom(Arc::new(self)),
        })
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    /// Rate `theta`: `f(x) = theta e^{-theta x}` on `(0, inf)`.
    Exponential { theta: f64 },
    /// `f(x) = theta x^{-(theta+1)}` on `(1, inf)`.
    Pareto { theta: f64 },
    /// `f(x) = lambda beta x^{beta-1} e^{-lambda x^beta}` on `(0, inf)`.
    Weibull { lambda: f64, beta: f64 },
    Uniform01,
    /// `f(x) = 3 (1-x)^2` on `(0, 1)`.
    PowerDecreasing,
    /// `f(x) = m x^{m-1}` on `(0, 1)`, `m >= 2`.
    PowerIncreasing { m: u32 },
    Custom(Arc<CustomLaw>),
    /// Law of `scale * X + shift`, `scale > 0`.
    Affine {
        base: Box<Distribution>,
        scale: f64,
        shift: f64,
    },
}

/// A continuous parent law. Cheap to clone and immutable.
#[derive(Debug, Clone)]
pub struct Distribution {
    family: Family,
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Parameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

// -log(1 - e^{-t}), accurate for both small and large t.
#[inline]
fn neg_ln_one_minus_exp(t: f64) -> f64 {
    -ln_one_minus_exp(-t)
}

// log(1 - e^{s}) for s <= 0.
#[inline]
fn ln_one_minus_exp(s: f64) -> f64 {
    if s > -core::f64::consts::LN_2 {
        log(-expm1(s))
    } else {
        log1p(-exp(s))
    }
}

impl Distribution {
    pub fn exponential(theta: f64) -> Result<Self> {
        let theta = positive("theta", theta)?;
        Ok(Family::Exponential { theta }.into())
    }

    pub fn pareto(theta: f64) -> Result<Self> {
        let theta = positive("theta", theta)?;
        Ok(Family::Pareto { theta }.into())
    }

    pub fn weibull(lambda: f64, beta: f64) -> Result<Self> {
        let lambda = positive("lambda", lambda)?;
        let beta = positive("beta", beta)?;
        Ok(Family::Weibull { lambda, beta }.into())
    }

    pub fn uniform01() -> Self {
        Family::Uniform01.into()
    }

    pub fn power_decreasing() -> Self {
        Family::PowerDecreasing.into()
    }

    pub fn power_increasing(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parameter {
                name: "m",
                value: m as f64,
                reason: "density m x^(m-1) is increasing only for m >= 2",
            });
        }
        Ok(Family::PowerIncreasing { m }.into())
    }

    /// Law of `scale * X + shift`.
    pub fn affine(&self, scale: f64, shift: f64) -> Result<Self> {
        let scale = positive("a", scale)?;
        if !shift.is_finite() {
            return Err(Error::Parameter {
                name: "b",
                value: shift,
                reason: "must be finite",
            });
        }
        Ok(Family::Affine {
            base: Box::new(self.clone()),
            scale,
            shift,
        }
        .into())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Short name used in CLI flags and output records.
    pub fn name(&self) -> String {
        match &self.family {
            Family::Exponential { .. } => "exponential".into(),
            Family::Pareto { .. } => "pareto".into(),
            Family::Weibull { .. } => "weibull".into(),
            Family::Uniform01 => "uniform".into(),
            Family::PowerDecreasing => "power-dec".into(),
            Family::PowerIncreasing { .. } => "power-inc".into(),
            Family::Custom(c) => c.name.clone(),
            Family::Affine { base, .. } => format!("affine({})", base.name()),
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match &self.family {
            Family::Exponential { theta } | Family::Pareto { theta } => alloc::vec![("theta", *theta)],
            Family::Weibull { lambda, beta } => alloc::vec![("lambda", *lambda), ("beta", *beta)],
            Family::PowerIncreasing { m } => alloc::vec![("m", *m as f64)],
            Family::Uniform01 | Family::PowerDecreasing | Family::Custom(_) => Vec::new(),
            Family::Affine { base, scale, shift } => {
                let mut p = base.params();
                p.push(("a", *scale));
                p.push(("b", *shift));
                p
            }
        }
    }

    pub fn quantile(&self, p: f64) -> f64 {
        if !(0.0..=1.0).contains(&p) {
            return f64::NAN;
        }
        match &self.family {
            Family::Exponential { theta } => -log1p(-p) / theta,
            Family::Pareto { theta } => exp(-log1p(-p) / theta),
            Family::Weibull { lambda, beta } => pow(-log1p(-p) / lambda, 1.0 / beta),
            Family::Uniform01 => p,
            Family::PowerDecreasing => -expm1(log1p(-p) / 3.0),
            Family::PowerIncreasing { m } => pow(p, 1.0 / *m as f64),
            Family::Custom(c) => (c.quantile)(p),
            Family::Affine { base, scale, shift } => scale * base.quantile(p) + shift,
        }
    }

    /// Inverse survival: the `x` with `sf(x) = q`.
    pub fn isf(&self, q: f64) -> f64 {
        if !(0.0..=1.0).contains(&q) {
            return f64::NAN;
        }
        match &self.family {
            Family::Exponential { theta } => -log(q) / theta,
            Family::Pareto { theta } => pow(q, -1.0 / theta),
            Family::Weibull { lambda, beta } => pow(-log(q) / lambda, 1.0 / beta),
            Family::Uniform01 => 1.0 - q,
            Family::PowerDecreasing => 1.0 - pow(q, 1.0 / 3.0),
            Family::PowerIncreasing { m } => exp(log1p(-q) / *m as f64),
            Family::Custom(c) => match &c.isf {
                Some(isf) => isf(q),
                None => (c.quantile)(1.0 - q),
            },
            Family::Affine { base, scale, shift } => scale * base.isf(q) + shift,
        }
    }

    pub fn hazard(&self, x: f64) -> f64 {
        exp(self.ln_pdf(x) - self.ln_sf(x))
    }

    pub fn reversed_hazard(&self, x: f64) -> f64 {
        exp(self.ln_pdf(x) - self.ln_cdf(x))
    }

    /// The point `x` with `-log sf(x) = t` (upper side) or `-log cdf(x) = t`
    /// (lower side): `F^{-1}(1 - e^{-t})` and `F^{-1}(e^{-t})` respectively.
    pub fn record_transform(&self, side: Side, t: f64) -> f64 {
        match side {
            Side::Upper => self.upper_transform(t),
            Side::Lower => self.lower_transform(t),
        }
    }

    fn upper_transform(&self, t: f64) -> f64 {
        match &self.family {
            Family::Exponential { theta } => t / theta,
            Family::Pareto { theta } => exp(t / theta),
            Family::Weibull { lambda, beta } => pow(t / lambda, 1.0 / beta),
            Family::Uniform01 => -expm1(-t),
            Family::PowerDecreasing => -expm1(-t / 3.0),
            Family::PowerIncreasing { m } => exp(log(-expm1(-t)) / *m as f64),
            Family::Custom(c) => match &c.isf {
                Some(isf) => isf(exp(-t)),
                None => (c.quantile)(-expm1(-t)),
            },
            Family::Affine { base, scale, shift } => scale * base.upper_transform(t) + shift,
        }
    }

    fn lower_transform(&self, t: f64) -> f64 {
        match &self.family {
            Family::Exponential { theta } => neg_ln_one_minus_exp(t) / theta,
            Family::Pareto { theta } => exp(neg_ln_one_minus_exp(t) / theta),
            Family::Weibull { lambda, beta } => pow(neg_ln_one_minus_exp(t) / lambda, 1.0 / beta),
            Family::Uniform01 => exp(-t),
            Family::PowerDecreasing => -expm1(log(-expm1(-t)) / 3.0),
            Family::PowerIncreasing { m } => exp(-t / *m as f64),
            Family::Custom(c) => (c.quantile)(exp(-t)),
            Family::Affine { base, scale, shift } => scale * base.lower_transform(t) + shift,
        }
    }

    /// `-log f(x)` at `x = record_transform(side, t)`, kept in log space where
    /// the transformed point itself would underflow.
    pub fn neg_ln_pdf_at_transform(&self, side: Side, t: f64) -> f64 {
        match &self.family {
            Family::Weibull { lambda, beta } => {
                // H(x) = lambda x^beta equals t (upper) or -log(1 - e^{-t}) (lower)
                let h = match side {
                    Side::Upper => t,
                    Side::Lower => neg_ln_one_minus_exp(t),
                };
                let ln_x = (log(h) - log(*lambda)) / beta;
                -(log(lambda * beta) + (beta - 1.0) * ln_x - h)
            }
            Family::Affine { base, scale, .. } => base.neg_ln_pdf_at_transform(side, t) + log(*scale),
            // the remaining catalog members have -log f linear in t or in
            // -log(1 - e^{-t}), which stays accurate where x(t) has rounded
            // onto a support end
            Family::Exponential { theta } => {
                -log(*theta)
                    + match side {
                        Side::Upper => t,
                        Side::Lower => neg_ln_one_minus_exp(t),
                    }
            }
            Family::Pareto { theta } => {
                let ln_x = match side {
                    Side::Upper => t,
                    Side::Lower => neg_ln_one_minus_exp(t),
                } / theta;
                -log(*theta) + (theta + 1.0) * ln_x
            }
            Family::Uniform01 => 0.0,
            Family::PowerDecreasing => {
                -log(3.0)
                    + 2.0 / 3.0
                        * match side {
                            Side::Upper => t,
                            Side::Lower => neg_ln_one_minus_exp(t),
                        }
            }
            Family::PowerIncreasing { m } => {
                let m = *m as f64;
                -log(m)
                    + (m - 1.0) / m
                        * match side {
                            Side::Upper => neg_ln_one_minus_exp(t),
                            Side::Lower => t,
                        }
            }
            Family::Custom(_) => -self.ln_pdf(self.record_transform(side, t)),
        }
    }

    /// Shannon entropy, where a closed form is known.
    pub fn entropy_closed_form(&self) -> Option<f64> {
        match &self.family {
            Family::Exponential { theta } => Some(1.0 - log(*theta)),
            Family::Pareto { theta } => Some(1.0 + 1.0 / theta - log(*theta)),
            Family::Weibull { lambda, beta } => {
                let psi1 = digamma(1.0).ok()?;
                Some(1.0 - log(*beta) - log(*lambda) / beta - (beta - 1.0) / beta * psi1)
            }
            Family::Uniform01 => Some(0.0),
            Family::PowerDecreasing => Some(2.0 / 3.0 - log(3.0)),
            Family::PowerIncreasing { m } => {
                let m = *m as f64;
                Some((m - 1.0) / m - log(m))
            }
            Family::Custom(_) => None,
            Family::Affine { base, scale, .. } => Some(base.entropy_closed_form()? + log(*scale)),
        }
    }

    fn standardize(&self, x: f64) -> f64 {
        match &self.family {
            Family::Affine { scale, shift, .. } => (x - shift) / scale,
            _ => x,
        }
    }
}

impl From<Family> for Distribution {
    fn from(family: Family) -> Self {
        Self { family }
    }
}

enum Region {
    Below,
    Inside,
    Above,
}

impl Distribution {
    fn region(&self, x: f64) -> Region {
        let s = self.support();
        if x < s.lower {
            Region::Below
        } else if x > s.upper {
            Region::Above
        } else {
            Region::Inside
        }
    }
}

impl Law for Distribution {
    fn support(&self) -> Support {
        match &self.family {
            Family::Exponential { .. } | Family::Weibull { .. } => Support::positive(),
            Family::Pareto { .. } => Support {
                lower: 1.0,
                upper: f64::INFINITY,
            },
            Family::Uniform01 | Family::PowerDecreasing | Family::PowerIncreasing { .. } => Support::unit(),
            Family::Custom(c) => c.support,
            Family::Affine { base, scale, shift } => {
                let s = base.support();
                Support {
                    lower: scale * s.lower + shift,
                    upper: scale * s.upper + shift,
                }
            }
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below | Region::Above => 0.0,
            Region::Inside => match &self.family {
                Family::Uniform01 => 1.0,
                Family::PowerDecreasing => 3.0 * (1.0 - x) * (1.0 - x),
                Family::PowerIncreasing { m } => *m as f64 * pow(x, (*m - 1) as f64),
                Family::Custom(c) => (c.pdf)(x),
                Family::Affine { base, scale, .. } => base.pdf(self.standardize(x)) / scale,
                _ => exp(self.ln_pdf(x)),
            },
        }
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below | Region::Above => f64::NEG_INFINITY,
            Region::Inside => match &self.family {
                Family::Exponential { theta } => log(*theta) - theta * x,
                Family::Pareto { theta } => log(*theta) - (theta + 1.0) * log(x),
                Family::Weibull { lambda, beta } => {
                    log(lambda * beta) + (beta - 1.0) * log(x) - lambda * pow(x, *beta)
                }
                Family::Uniform01 => 0.0,
                Family::PowerDecreasing => log(3.0) + 2.0 * log1p(-x),
                Family::PowerIncreasing { m } => log(*m as f64) + (*m - 1) as f64 * log(x),
                Family::Custom(c) => match &c.ln_pdf {
                    Some(lp) => lp(x),
                    None => log((c.pdf)(x)),
                },
                Family::Affine { base, scale, .. } => base.ln_pdf(self.standardize(x)) - log(*scale),
            },
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below => 0.0,
            Region::Above => 1.0,
            Region::Inside => match &self.family {
                Family::Exponential { theta } => -expm1(-theta * x),
                Family::Pareto { theta } => -expm1(-theta * log(x)),
                Family::Weibull { lambda, beta } => -expm1(-lambda * pow(x, *beta)),
                Family::Uniform01 => x,
                Family::PowerDecreasing => -expm1(3.0 * log1p(-x)),
                Family::PowerIncreasing { m } => pow(x, *m as f64),
                Family::Custom(c) => (c.cdf)(x),
                Family::Affine { base, .. } => base.cdf(self.standardize(x)),
            },
        }
    }

    fn sf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below => 1.0,
            Region::Above => 0.0,
            Region::Inside => match &self.family {
                Family::Uniform01 => 1.0 - x,
                Family::PowerDecreasing => {
                    let y = 1.0 - x;
                    y * y * y
                }
                Family::PowerIncreasing { m } => -expm1(*m as f64 * log(x)),
                Family::Custom(c) => match &c.sf {
                    Some(sf) => sf(x),
                    None => 1.0 - (c.cdf)(x),
                },
                Family::Affine { base, .. } => base.sf(self.standardize(x)),
                _ => exp(self.ln_sf(x)),
            },
        }
    }

    fn ln_cdf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below => f64::NEG_INFINITY,
            Region::Above => 0.0,
            Region::Inside => match &self.family {
                Family::Exponential { .. } | Family::Pareto { .. } | Family::Weibull { .. } => {
                    ln_one_minus_exp(self.ln_sf(x))
                }
                Family::Uniform01 => log(x),
                Family::PowerDecreasing => ln_one_minus_exp(3.0 * log1p(-x)),
                Family::PowerIncreasing { m } => *m as f64 * log(x),
                Family::Custom(c) => log((c.cdf)(x)),
                Family::Affine { base, .. } => base.ln_cdf(self.standardize(x)),
            },
        }
    }

    fn ln_sf(&self, x: f64) -> f64 {
        match self.region(x) {
            Region::Below => 0.0,
            Region::Above => f64::NEG_INFINITY,
            Region::Inside => match &self.family {
                Family::Exponential { theta } => -theta * x,
                Family::Pareto { theta } => -theta * log(x),
                Family::Weibull { lambda, beta } => -lambda * pow(x, *beta),
                Family::Uniform01 => log1p(-x),
                Family::PowerDecreasing => 3.0 * log1p(-x),
                Family::PowerIncreasing { m } => ln_one_minus_exp(*m as f64 * log(x)),
                Family::Custom(c) => match &c.sf {
                    Some(sf) => log(sf(x)),
                    None => log1p(-(c.cdf)(x)),
                },
                Family::Affine { base, .. } => base.ln_sf(self.standardize(x)),
            },
        }
    }
}

/// Symmetric triangular law on `(0, 1)` with mode 1/2, as a custom law.
pub fn symmetric_triangular() -> Distribution {
    CustomLaw::new(
        "triangular",
        Support::unit(),
        |x| if x < 0.5 { 4.0 * x } else { 4.0 * (1.0 - x) },
        |x| {
            if x < 0.5 {
                2.0 * x * x
            } else {
                1.0 - 2.0 * (1.0 - x) * (1.0 - x)
            }
        },
        |p| if p < 0.5 { sqrt(0.5 * p) } else { 1.0 - sqrt(0.5 * (1.0 - p)) },
    )
    .with_sf(|x| {
        if x < 0.5 {
            1.0 - 2.0 * x * x
        } else {
            2.0 * (1.0 - x) * (1.0 - x)
        }
    })
    .with_isf(|q| if q < 0.5 { 1.0 - sqrt(0.5 * q) } else { sqrt(0.5 * (1.0 - q)) })
    .build()
    .expect("triangular law is self-consistent")
}

/// One representative of each catalog family (two Weibull shapes), the set
/// swept by the invariant suites.
pub fn catalog() -> Vec<Distribution> {
    alloc::vec![
        Distribution::exponential(1.0).unwrap(),
        Distribution::exponential(2.0).unwrap(),
        Distribution::pareto(3.0).unwrap(),
        Distribution::weibull(1.0, 2.0).unwrap(),
        Distribution::weibull(2.0, 0.5).unwrap(),
        Distribution::uniform01(),
        Distribution::power_decreasing(),
        Distribution::power_increasing(2).unwrap(),
        Distribution::power_increasing(3).unwrap(),
    ]
}
