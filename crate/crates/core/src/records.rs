//! Laws of the n-th upper and lower k-record values of a parent distribution.
//!
//! Both sides share one code path: the lower side substitutes `F` for the
//! survival function `F̄` everywhere. With `u = -log F̄(x)` (upper) the record
//! density is `k^n u^{n-1} e^{-(k-1)u} f(x) / (n-1)!` and the record survival
//! is the Poisson tail `Q(n, k u)`.

use alloc::vec::Vec;

use libm::log;
use rand_core::RngCore;

use crate::distributions::{Distribution, Law, Support};
use crate::numerics::{gamma_pq_int, ln_factorial};
use crate::oracle::{exponential_draw, seeded_rng};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
        }
    }
}

/// `(side, n, k)`: the n-th upper or lower k-record value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RecordSpec {
    side: Side,
    n: u32,
    k: u32,
}

impl RecordSpec {
    pub fn new(side: Side, n: u32, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter {
                name: "n",
                value: 0.0,
                reason: "record index starts at 1",
            });
        }
        if k == 0 {
            return Err(Error::Parameter {
                name: "k",
                value: 0.0,
                reason: "record width starts at 1",
            });
        }
        Ok(Self { side, n, k })
    }

    pub fn upper(n: u32, k: u32) -> Result<Self> {
        Self::new(Side::Upper, n, k)
    }

    pub fn lower(n: u32, k: u32) -> Result<Self> {
        Self::new(Side::Lower, n, k)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::new(self.side, n, self.k)
    }
}

/// Law of `U_{n,k}` or `L_{n,k}`; usable anywhere a [`Law`] is expected.
#[derive(Debug, Clone)]
pub struct RecordDistribution {
    parent: Distribution,
    spec: RecordSpec,
}

impl RecordDistribution {
    pub fn new(parent: Distribution, spec: RecordSpec) -> Self {
        Self { parent, spec }
    }

    pub fn parent(&self) -> &Distribution {
        &self.parent
    }

    pub fn spec(&self) -> RecordSpec {
        self.spec
    }

    // (-log F̄, log F̄) for upper; (-log F, log F) for lower
    fn exposure(&self, x: f64) -> (f64, f64) {
        let ln_tail = match self.spec.side {
            Side::Upper => self.parent.ln_sf(x),
            Side::Lower => self.parent.ln_cdf(x),
        };
        (-ln_tail, ln_tail)
    }

    /// `(cdf, sf)`, each accurate in its own small regime.
    pub fn cdf_sf(&self, x: f64) -> (f64, f64) {
        let (u, _) = self.exposure(x);
        let z = self.spec.k as f64 * u;
        let (p, q) = gamma_pq_int(self.spec.n, z);
        match self.spec.side {
            Side::Upper => (p, q),
            Side::Lower => (q, p),
        }
    }
}

impl Law for RecordDistribution {
    fn support(&self) -> Support {
        self.parent.support()
    }

    fn pdf(&self, x: f64) -> f64 {
        let lp = self.ln_pdf(x);
        if lp == f64::NEG_INFINITY {
            0.0
        } else {
            libm::exp(lp)
        }
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        let s = self.parent.support();
        if !(x >= s.lower && x <= s.upper) {
            return f64::NEG_INFINITY;
        }
        let RecordSpec { n, k, .. } = self.spec;
        let (u, ln_tail) = self.exposure(x);
        let ln_f = self.parent.ln_pdf(x);
        if ln_f == f64::NEG_INFINITY || u.is_nan() {
            return f64::NEG_INFINITY;
        }
        let mut v = n as f64 * log(k as f64) - ln_factorial(n - 1) + ln_f;
        if n > 1 {
            if !(u > 0.0) || u.is_infinite() {
                return f64::NEG_INFINITY;
            }
            v += (n - 1) as f64 * log(u);
        }
        if k > 1 {
            if ln_tail == f64::NEG_INFINITY {
                return f64::NEG_INFINITY;
            }
            v += (k - 1) as f64 * ln_tail;
        }
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    }

    fn cdf(&self, x: f64) -> f64 {
        self.cdf_sf(x).0
    }

    fn sf(&self, x: f64) -> f64 {
        self.cdf_sf(x).1
    }
}

pub fn record_pdf(parent: &Distribution, spec: RecordSpec, x: f64) -> f64 {
    RecordDistribution::new(parent.clone(), spec).pdf(x)
}

pub fn record_cdf(parent: &Distribution, spec: RecordSpec, x: f64) -> f64 {
    RecordDistribution::new(parent.clone(), spec).cdf(x)
}

/// `F^{-1}(1 - e^{-t})` (upper) or `F^{-1}(e^{-t})` (lower): the record value
/// corresponding to the gamma variable `T = t`.
pub fn gamma_transform_point(parent: &Distribution, side: Side, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain {
            function: "gamma_transform_point",
            value: t,
        });
    }
    Ok(parent.record_transform(side, t))
}

/// Draws `T ~ Gamma(n, rate k)` as a sum of `n` exponentials of rate `k`.
pub fn gamma_draw<R: RngCore>(rng: &mut R, n: u32, k: u32) -> f64 {
    let mut t = 0.0;
    for _ in 0..n {
        t += exponential_draw(rng);
    }
    t / k as f64
}

/// `count` iid draws of the record value, via the gamma representation.
pub fn sample_record_with<R: RngCore>(
    parent: &Distribution,
    spec: RecordSpec,
    rng: &mut R,
    count: usize,
) -> Vec<f64> {
    (0..count)
        .map(|_| parent.record_transform(spec.side, gamma_draw(rng, spec.n, spec.k)))
        .collect()
}

/// Seeded form of [`sample_record_with`]; identical seeds give identical
/// sequences.
pub fn sample_record(parent: &Distribution, spec: RecordSpec, seed: u64, count: usize) -> Vec<f64> {
    let mut rng = seeded_rng(seed, 0);
    sample_record_with(parent, spec, &mut rng, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::catalog;
    use crate::numerics::{integrate, QuadratureConfig};
    use crate::oracle::{ks_critical_value, ks_one_sample};
    use libm::exp;

    fn rec(d: &Distribution, side: Side, n: u32, k: u32) -> RecordDistribution {
        RecordDistribution::new(d.clone(), RecordSpec::new(side, n, k).unwrap())
    }

    #[test]
    fn spec_validation() {
        assert!(RecordSpec::upper(0, 1).is_err());
        assert!(RecordSpec::lower(1, 0).is_err());
        assert!(RecordSpec::upper(1, 1).is_ok());
    }

    #[test]
    fn pdf_examples() {
        let u = Distribution::uniform01();
        let e = Distribution::exponential(1.0).unwrap();
        assert!((record_pdf(&u, RecordSpec::upper(1, 1).unwrap(), 0.3) - 1.0).abs() < 1e-15);
        assert!((record_pdf(&e, RecordSpec::upper(2, 1).unwrap(), 1.0) - exp(-1.0)).abs() < 1e-15);
        assert!((record_pdf(&u, RecordSpec::lower(2, 1).unwrap(), 0.5) - log(2.0)).abs() < 1e-15);
        assert_eq!(record_pdf(&u, RecordSpec::upper(2, 1).unwrap(), 1.5), 0.0);
        assert_eq!(record_pdf(&u, RecordSpec::upper(2, 2).unwrap(), -0.5), 0.0);
    }

    #[test]
    fn cdf_examples() {
        let e = Distribution::exponential(1.0).unwrap();
        let u = Distribution::uniform01();
        let v = record_cdf(&e, RecordSpec::upper(2, 1).unwrap(), 1.0);
        assert!((v - 0.264_241_117_7).abs() < 1e-10);
        assert!((record_cdf(&u, RecordSpec::lower(1, 2).unwrap(), 0.5) - 0.25).abs() < 1e-15);
        for d in catalog() {
            for x in d.support().interior_points(9) {
                let c = record_cdf(&d, RecordSpec::upper(1, 1).unwrap(), x);
                assert!((c - d.cdf(x)).abs() < 1e-15, "{}", d.name());
            }
        }
    }

    #[test]
    fn first_record_has_parent_law() {
        for d in catalog() {
            let r = rec(&d, Side::Upper, 1, 1);
            for x in d.support().interior_points(13) {
                let (a, b) = (r.pdf(x), d.pdf(x));
                assert!((a - b).abs() <= 1e-13 * b.max(1.0), "{} at {x}", d.name());
            }
        }
    }

    #[test]
    fn record_pdf_normalized() {
        let cfg = QuadratureConfig::default();
        for d in catalog() {
            for side in [Side::Upper, Side::Lower] {
                for n in 1..=5 {
                    for k in 1..=5 {
                        let r = rec(&d, side, n, k);
                        let mass = integrate(|x| r.pdf(x), d.support().interval(), &cfg).unwrap();
                        assert!(
                            (mass.value - 1.0).abs() < 1e-8,
                            "{} {side:?} n={n} k={k}: {}",
                            d.name(),
                            mass.value
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cdf_derivative_matches_pdf() {
        for d in catalog() {
            for side in [Side::Upper, Side::Lower] {
                for n in 1..=4 {
                    for k in 1..=4 {
                        let r = rec(&d, side, n, k);
                        for x in d.support().interior_points(11) {
                            let h = 1e-6 * x.abs().max(1.0);
                            let slope = (r.cdf(x + h) - r.cdf(x - h)) / (2.0 * h);
                            let f = r.pdf(x);
                            assert!(
                                (slope - f).abs() <= 1e-6 * f.max(1.0),
                                "{} {side:?} n={n} k={k} x={x}: {slope} vs {f}",
                                d.name()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn upper_records_grow_stochastically() {
        for d in catalog() {
            for k in 1..=3 {
                for n in 1..=4 {
                    let a = rec(&d, Side::Upper, n, k);
                    let b = rec(&d, Side::Upper, n + 1, k);
                    for x in d.support().interior_points(17) {
                        assert!(b.cdf(x) <= a.cdf(x) + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn cdf_matches_integrated_pdf() {
        let cfg = QuadratureConfig::default();
        let e = Distribution::exponential(1.0).unwrap();
        let r = rec(&e, Side::Lower, 3, 2);
        for x in [0.1, 0.5, 2.0] {
            let area = integrate(|t| r.pdf(t), crate::Interval::Finite(0.0, x), &cfg).unwrap();
            assert!((area.value - r.cdf(x)).abs() < 1e-8);
        }
    }

    #[test]
    fn transform_point_examples() {
        let e = Distribution::exponential(1.0).unwrap();
        let p = Distribution::pareto(2.0).unwrap();
        let u = Distribution::uniform01();
        assert_eq!(gamma_transform_point(&e, Side::Upper, 2.0).unwrap(), 2.0);
        assert!((gamma_transform_point(&p, Side::Upper, 2.0).unwrap() - core::f64::consts::E).abs() < 1e-14);
        assert!((gamma_transform_point(&u, Side::Lower, 1.0).unwrap() - exp(-1.0)).abs() < 1e-16);
        assert!(gamma_transform_point(&u, Side::Lower, 0.0).is_err());
        assert!(gamma_transform_point(&u, Side::Lower, -1.0).is_err());
    }

    #[test]
    fn gamma_transform_consistency() {
        // E[g(X(T))] over the gamma law equals the x-space record moment
        let cfg = QuadratureConfig::default();
        for d in [Distribution::exponential(1.0).unwrap(), Distribution::uniform01()] {
            for side in [Side::Upper, Side::Lower] {
                for (n, k) in [(1, 1), (2, 3), (4, 2)] {
                    let r = rec(&d, side, n, k);
                    for power in [1.0, 2.0] {
                        let via_gamma = crate::numerics::gamma_expectation(
                            |t| libm::pow(d.record_transform(side, t), power),
                            n,
                            k,
                            &cfg,
                        )
                        .unwrap();
                        let via_x = integrate(|x| libm::pow(x, power) * r.pdf(x), d.support().interval(), &cfg)
                            .unwrap();
                        assert!(
                            (via_gamma.value - via_x.value).abs() < 1e-7,
                            "{} {side:?} n={n} k={k} p={power}",
                            d.name()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sample_moments() {
        let e = Distribution::exponential(1.0).unwrap();
        let draws = sample_record(&e, RecordSpec::upper(2, 1).unwrap(), 11, 1_000_000);
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!((mean - 2.0).abs() < 3.0 * libm::sqrt(2.0) / 1e3, "{mean}");

        let u = Distribution::uniform01();
        let draws = sample_record(&u, RecordSpec::upper(1, 1).unwrap(), 12, 1_000_000);
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!((mean - 0.5).abs() < 3.0 / libm::sqrt(12.0) / 1e3, "{mean}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let e = Distribution::exponential(1.0).unwrap();
        let spec = RecordSpec::lower(3, 2).unwrap();
        assert_eq!(sample_record(&e, spec, 5, 100), sample_record(&e, spec, 5, 100));
        assert_ne!(sample_record(&e, spec, 5, 100), sample_record(&e, spec, 6, 100));
    }

    #[test]
    fn samples_follow_record_cdf() {
        let n_draws = 100_000;
        let crit = ks_critical_value(0.001, n_draws, None);
        for d in [Distribution::exponential(1.0).unwrap(), Distribution::uniform01(), Distribution::pareto(3.0).unwrap()] {
            for side in [Side::Upper, Side::Lower] {
                let spec = RecordSpec::new(side, 3, 2).unwrap();
                let r = RecordDistribution::new(d.clone(), spec);
                let mut xs = sample_record(&d, spec, 99, n_draws);
                let ks = ks_one_sample(&mut xs, |x| r.cdf(x));
                assert!(ks < crit, "{} {side:?}: D = {ks} vs {crit}", d.name());
            }
        }
    }
}
