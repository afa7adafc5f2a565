//! Brute-force checks that do not rely on the gamma representation's
//! closed forms: definitional k-record extraction from iid streams, Monte
//! Carlo estimates of the record measures, and Kolmogorov–Smirnov statistics.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`). A run with seed `s`
//! draws batch `b` from stream `b` of the generator keyed by `s`, so batches
//! are independent and results do not depend on how work is scheduled.

use alloc::vec::Vec;

use libm::{log, sqrt};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distributions::Distribution;
use crate::measures::{MeasureResult, Method};
use crate::record_measures::{RecordMeasure, RecordMeasureRequest};
use crate::records::Side;
use crate::{Error, Result};

/// Identifies the generator in output metadata.
pub const GENERATOR: &str = "ChaCha8 (rand_chacha 0.9), stream per batch";

/// Hard cap on stream length for one realization of the record sequence.
pub const MAX_STREAM_DRAWS: u64 = 100_000_000;

const MIN_SAMPLES: usize = 1000;
const CONTAMINATION_LIMIT: f64 = 1e-4;

pub(crate) fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform on the open interval (0, 1).
pub(crate) fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

pub(crate) fn exponential_draw<R: RngCore>(rng: &mut R) -> f64 {
    -log(open_unit(rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    samples: usize,
    seed: u64,
    batch: usize,
}

impl McConfig {
    pub fn new(samples: usize, seed: u64) -> Result<Self> {
        if samples < MIN_SAMPLES {
            return Err(Error::Parameter {
                name: "samples",
                value: samples as f64,
                reason: "at least 1000 Monte Carlo samples are required",
            });
        }
        Ok(Self {
            samples,
            seed,
            batch: 4096,
        })
    }

    pub fn with_batch(mut self, batch: usize) -> Result<Self> {
        if batch == 0 {
            return Err(Error::Parameter {
                name: "batch",
                value: 0.0,
                reason: "batch size must be positive",
            });
        }
        self.batch = batch;
        Ok(self)
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn batch(&self) -> usize {
        self.batch
    }
}

/// Running mean and variance (Welford), mergeable across batches.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let d = x - self.mean;
        self.mean += d / self.count as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        let n = (self.count + other.count) as f64;
        let d = other.mean - self.mean;
        self.mean += d * other.count as f64 / n;
        self.m2 += other.m2 + d * d * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    fn std(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            sqrt(self.m2 / (self.count - 1) as f64)
        }
    }
}

/// Monte Carlo estimate of a record measure from gamma-representation draws.
///
/// Kerridge averages `-log f(X)` over record draws. CRI and CPI average
/// `(1/k^2) sum_i (i+1) / lambda(X_{i+2})`, one set of partial sums of
/// exponential draws serving every index. The error estimate is three
/// standard errors.
pub fn mc_measure(request: &RecordMeasureRequest, cfg: &McConfig) -> Result<MeasureResult> {
    let parent = request.parent();
    let spec = request.spec();
    let (side, n, k) = (spec.side(), spec.n(), spec.k());
    let rate = k as f64;
    let functional = |rng: &mut ChaCha8Rng| -> f64 {
        match request.measure() {
            RecordMeasure::Kerridge => {
                let mut t = 0.0;
                for _ in 0..n {
                    t += exponential_draw(rng);
                }
                parent.neg_ln_pdf_at_transform(side, t / rate)
            }
            RecordMeasure::Cri | RecordMeasure::Cpi => {
                let mut t = exponential_draw(rng) / rate;
                let mut sum = 0.0;
                for i in 0..n {
                    t += exponential_draw(rng) / rate;
                    // F̄ (or F) at the transformed point is exactly e^{-t}
                    sum += (i + 1) as f64 * libm::exp(parent.neg_ln_pdf_at_transform(side, t) - t);
                }
                sum / (rate * rate)
            }
        }
    };

    let mut total = Moments::default();
    let mut bad = 0u64;
    let mut remaining = cfg.samples;
    let mut stream = 0u64;
    while remaining > 0 {
        let size = remaining.min(cfg.batch);
        let mut rng = seeded_rng(cfg.seed, stream);
        let mut m = Moments::default();
        for _ in 0..size {
            let v = functional(&mut rng);
            if v.is_finite() {
                m.push(v);
            } else {
                bad += 1;
            }
        }
        total.merge(&m);
        remaining -= size;
        stream += 1;
    }
    let drawn = cfg.samples as u64;
    if bad as f64 > CONTAMINATION_LIMIT * drawn as f64 || total.count == 0 {
        return Err(Error::Contamination { bad, total: drawn });
    }
    let se = total.std() / sqrt(total.count as f64);
    Ok(MeasureResult::new(total.mean, Method::MonteCarlo, 3.0 * se))
}

/// One realization of the first `n_max` k-record values, read off an iid
/// stream by definition: the n-th upper k-record is the k-th largest
/// observation at the n-th time a draw beats the current k-th largest.
/// Lower records mirror this with the k-th smallest.
pub fn stream_extract_records<R: RngCore>(
    parent: &Distribution,
    side: Side,
    k: u32,
    n_max: u32,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if k == 0 || n_max == 0 {
        return Err(Error::InvalidRequest("k and n_max must be at least 1"));
    }
    // Values are stored oriented so that "larger is more extreme".
    let orient = match side {
        Side::Upper => 1.0,
        Side::Lower => -1.0,
    };
    let draw = |rng: &mut R| {
        let u = open_unit(rng);
        match side {
            Side::Upper => parent.isf(u),
            Side::Lower => parent.quantile(u),
        }
    };
    let k = k as usize;
    let mut top: Vec<f64> = (0..k).map(|_| orient * draw(rng)).collect();
    top.sort_by(f64::total_cmp);
    let mut draws = k as u64;
    let mut records = Vec::with_capacity(n_max as usize);
    records.push(orient * top[0]);
    while records.len() < n_max as usize {
        if draws >= MAX_STREAM_DRAWS {
            return Err(Error::IncompleteExtraction {
                found: records.len(),
                requested: n_max as usize,
                draws,
            });
        }
        let x = orient * draw(rng);
        draws += 1;
        if x > top[0] {
            let pos = top.partition_point(|&v| v < x);
            top.insert(pos, x);
            top.remove(0);
            records.push(orient * top[0]);
        }
    }
    Ok(records)
}

/// Seeded form of [`stream_extract_records`], replication `replication`
/// drawing from its own stream.
pub fn stream_extract_records_seeded(
    parent: &Distribution,
    side: Side,
    k: u32,
    n_max: u32,
    seed: u64,
    replication: u64,
) -> Result<Vec<f64>> {
    let mut rng = seeded_rng(seed, replication);
    stream_extract_records(parent, side, k, n_max, &mut rng)
}

/// One-sample Kolmogorov–Smirnov statistic. Sorts `xs` in place.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &mut [f64], cdf: F) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample Kolmogorov–Smirnov statistic. Sorts both slices in place.
pub fn ks_two_sample(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Asymptotic KS critical value at level `alpha` for sample sizes `n` and,
/// for the two-sample test, `m`.
pub fn ks_critical_value(alpha: f64, n: usize, m: Option<usize>) -> f64 {
    let c = sqrt(-log(alpha / 2.0) / 2.0);
    let n = n as f64;
    match m {
        None => c / sqrt(n),
        Some(m) => {
            let m = m as f64;
            c * sqrt((n + m) / (n * m))
        }
    }
}
