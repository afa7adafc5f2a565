use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, fabs, hypot, log, sqrt};

use super::quadrature::{integrate, IntegrationError, IntegrationResult, Interval, QuadratureConfig};
use super::special::{gamma_pq_int, ln_factorial};

/// Generalized Gauss–Laguerre rule for the probability weight
/// `s^alpha e^{-s} / Gamma(alpha + 1)` on `(0, inf)`.
///
/// Nodes are eigenvalues of the Jacobi matrix (Golub–Welsch); the weights are
/// squared first components of its eigenvectors, so they sum to one.
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(points: usize, alpha: f64) -> Self {
        assert!(points >= 1 && alpha > -1.0);
        let n = points;
        let mut d: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + alpha + 1.0).collect();
        let mut e: Vec<f64> = (0..n)
            .map(|i| {
                if i + 1 < n {
                    let j = (i + 1) as f64;
                    sqrt(j * (j + alpha))
                } else {
                    0.0
                }
            })
            .collect();
        let mut z = vec![0.0; n];
        z[0] = 1.0;
        tridiagonal_ql(&mut d, &mut e, &mut z);

        let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z.into_iter().map(|v| v * v)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Self { nodes, weights }
    }

    /// `sum_j w_j g(s_j)`; nodes with underflowed weight are skipped. `None`
    /// if `g` is not finite at a node that carries weight.
    pub fn apply<G: Fn(f64) -> f64>(&self, g: G) -> Option<f64> {
        let mut sum = 0.0;
        for (&s, &w) in self.nodes.iter().zip(&self.weights) {
            if w == 0.0 {
                continue;
            }
            let v = g(s);
            if !v.is_finite() {
                return None;
            }
            sum += w * v;
        }
        Some(sum)
    }
}

// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
// `e[i]` couples rows i and i+1. Only the first row of the eigenvector
// matrix is tracked, in `z`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fabs(d[m]) + fabs(d[m + 1]);
                if fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

// Gamma probability beyond which a non-finite integrand value is dropped.
const TAIL_MASS: f64 = 1e-14;
const START_POINTS: usize = 64;
const MAX_POINTS: usize = 512;

/// Log-density of `T ~ Gamma(shape n, rate k)`.
pub fn gamma_log_density(t: f64, n: u32, k: u32) -> f64 {
    if !(t > 0.0) {
        return if n == 1 && t == 0.0 {
            log(k as f64)
        } else {
            f64::NEG_INFINITY
        };
    }
    let mut v = n as f64 * log(k as f64) - k as f64 * t - ln_factorial(n - 1);
    if n > 1 {
        v += (n - 1) as f64 * log(t);
    }
    v
}

/// `E[g(T)]` for `T ~ Gamma(shape n, rate k)`.
///
/// Gauss–Laguerre with 64 nodes, doubled until two consecutive estimates
/// agree to tolerance (at most 512 nodes); otherwise adaptive quadrature of
/// `g` against the gamma density. A non-finite `g(t)` is treated as 0 where
/// the gamma mass beyond `t` (either side) is below 1e-14; this absorbs
/// `x(t)` rounding onto a support end in floating point.
pub fn gamma_expectation<G: Fn(f64) -> f64>(
    g: G,
    n: u32,
    k: u32,
    cfg: &QuadratureConfig,
) -> Result<IntegrationResult, IntegrationError> {
    assert!(n >= 1 && k >= 1, "gamma shape and rate must be positive integers");
    let rate = k as f64;
    let g = |t: f64| {
        let v = g(t);
        if v.is_finite() {
            return v;
        }
        let (p, q) = gamma_pq_int(n, rate * t);
        if p < TAIL_MASS || q < TAIL_MASS {
            0.0
        } else {
            v
        }
    };
    let alpha = (n - 1) as f64;
    let mut evaluations = 0;
    let mut previous: Option<f64> = None;
    let mut points = START_POINTS;
    while points <= MAX_POINTS {
        let rule = GaussLaguerre::new(points, alpha);
        evaluations += points;
        let Some(estimate) = rule.apply(|s| g(s / rate)) else {
            break;
        };
        if let Some(prev) = previous {
            let diff = fabs(estimate - prev);
            if diff <= cfg.abs_tol.max(cfg.rel_tol * fabs(estimate)) {
                return Ok(IntegrationResult {
                    value: estimate,
                    abs_error_estimate: diff,
                    evaluations,
                });
            }
        }
        previous = Some(estimate);
        points *= 2;
    }

    let integrand = |t: f64| {
        let ld = gamma_log_density(t, n, k);
        let w = exp(ld);
        if w == 0.0 {
            return 0.0;
        }
        w * g(t)
    };
    let mut r = integrate(integrand, Interval::SemiInfinite(0.0), cfg)?;
    r.evaluations += evaluations;
    Ok(r)
}
