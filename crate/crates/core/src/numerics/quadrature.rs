//! Globally adaptive 21-point Gauss–Kronrod quadrature.
//!
//! Unbounded ranges are split into a unit-width finite piece next to the
//! finite endpoint and a tail mapped onto `(0, 1]` by `u = 1 / (1 + x - c)`.
//! Keeping the piece next to the endpoint in x-space preserves resolution of
//! endpoint singularities, which the `1 - u` cancellation would destroy.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights, paired with XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Integration range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    /// `[a, b]`.
    Finite(f64, f64),
    /// `[a, +inf)`.
    SemiInfinite(f64),
    /// `(-inf, b]`.
    NegSemiInfinite(f64),
    WholeLine,
}

impl Interval {
    /// Picks the variant matching possibly infinite bounds `lo <= hi`.
    pub fn from_bounds(lo: f64, hi: f64) -> Self {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => Interval::Finite(lo, hi),
            (true, false) => Interval::SemiInfinite(lo),
            (false, true) => Interval::NegSemiInfinite(hi),
            (false, false) => Interval::WholeLine,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, Interval::Finite(..))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureConfig {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> crate::Result<Self> {
        let cfg = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> crate::Result<()> {
        let bad = |name, value| crate::Error::Parameter {
            name,
            value,
            reason: "must be positive",
        };
        if !(self.abs_tol > 0.0) {
            return Err(bad("abs_tol", self.abs_tol));
        }
        if !(self.rel_tol > 0.0) {
            return Err(bad("rel_tol", self.rel_tol));
        }
        if self.max_subdivisions == 0 {
            return Err(bad("max_subdivisions", 0.0));
        }
        Ok(())
    }

    /// Same configuration with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum IntegrationError {
    #[error(
        "quadrature did not converge: partial value {partial} with error estimate {abs_error} after {evaluations} evaluations"
    )]
    NotConverged {
        partial: f64,
        abs_error: f64,
        evaluations: usize,
    },

    #[error("integrand returned {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    // x = c + (1 - u) / u
    TailUp(f64),
    // x = c - (1 - u) / u
    TailDown(f64),
}

impl Map {
    #[inline]
    fn apply<F: Fn(f64) -> f64>(self, f: &F, u: f64) -> (f64, f64) {
        match self {
            Map::Identity => (u, f(u)),
            Map::TailUp(c) => {
                let x = c + (1.0 - u) / u;
                (x, f(x) / (u * u))
            }
            Map::TailDown(c) => {
                let x = c - (1.0 - u) / u;
                (x, f(x) / (u * u))
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    map: Map,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = libm::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

fn gauss_kronrod<F: Fn(f64) -> f64>(
    f: &F,
    map: Map,
    a: f64,
    b: f64,
) -> Result<Segment, IntegrationError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    let eval = |u: f64| -> Result<f64, IntegrationError> {
        let (x, y) = map.apply(f, u);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(IntegrationError::NonFinite { x, value: y })
        }
    };

    let fc = eval(center)?;
    let mut res_k = WGK[10] * fc;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let error = rescale_error((res_k - res_g) * half, res_abs * h, res_asc * h);
    Ok(Segment {
        a,
        b,
        map,
        value: res_k * half,
        error,
    })
}

const EVALS_PER_SEGMENT: usize = 21;

/// Integrates `f` over `interval`.
///
/// Stops once the summed error estimate is below
/// `max(abs_tol, rel_tol * |value|)`. Fails when the subdivision budget runs
/// out, when every remaining segment is too narrow to split, or when `f`
/// returns a non-finite value.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    interval: Interval,
    cfg: &QuadratureConfig,
) -> Result<IntegrationResult, IntegrationError> {
    let mut pieces: Vec<(f64, f64, Map)> = Vec::with_capacity(4);
    let mut sign = 1.0;
    match interval {
        Interval::Finite(a, b) => {
            if a == b {
                return Ok(IntegrationResult {
                    value: 0.0,
                    abs_error_estimate: 0.0,
                    evaluations: 0,
                });
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if b < a {
                sign = -1.0;
            }
            pieces.push((lo, hi, Map::Identity));
        }
        Interval::SemiInfinite(a) => {
            pieces.push((a, a + 1.0, Map::Identity));
            pieces.push((0.0, 1.0, Map::TailUp(a + 1.0)));
        }
        Interval::NegSemiInfinite(b) => {
            pieces.push((b - 1.0, b, Map::Identity));
            pieces.push((0.0, 1.0, Map::TailDown(b - 1.0)));
        }
        Interval::WholeLine => {
            pieces.push((-1.0, 1.0, Map::Identity));
            pieces.push((0.0, 1.0, Map::TailUp(1.0)));
            pieces.push((0.0, 1.0, Map::TailDown(-1.0)));
        }
    }

    let mut heap = BinaryHeap::with_capacity(64);
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 0;
    for (a, b, map) in pieces {
        heap.push(gauss_kronrod(&f, map, a, b)?);
        evaluations += EVALS_PER_SEGMENT;
    }

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        heap.iter()
            .chain(frozen.iter())
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };

    let mut subdivisions = 0;
    loop {
        let (value, error) = totals(&heap, &frozen);
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.abs());
        if error <= tol {
            return Ok(IntegrationResult {
                value: sign * value,
                abs_error_estimate: error,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else {
            return Err(IntegrationError::NotConverged {
                partial: sign * value,
                abs_error: error,
                evaluations,
            });
        };
        if subdivisions >= cfg.max_subdivisions {
            heap.push(worst);
            return Err(IntegrationError::NotConverged {
                partial: sign * value,
                abs_error: error,
                evaluations,
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen.push(worst);
            continue;
        }
        heap.push(gauss_kronrod(&f, worst.map, worst.a, mid)?);
        heap.push(gauss_kronrod(&f, worst.map, mid, worst.b)?);
        evaluations += 2 * EVALS_PER_SEGMENT;
        subdivisions += 1;
    }
}
