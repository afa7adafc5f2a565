use libm::{exp, log};

use crate::{Error, Result};

const FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

/// `n!` as a float; exact for `n <= 20`.
pub fn factorial(n: u32) -> f64 {
    match FACTORIALS.get(n as usize) {
        Some(&f) => f as f64,
        None => exp(lanczos_ln_gamma(n as f64 + 1.0)),
    }
}

/// `log(n!)`, going through the exact factorial table up to `20!`.
pub fn ln_factorial(n: u32) -> f64 {
    match FACTORIALS.get(n as usize) {
        Some(&f) => log(f as f64),
        None => lanczos_ln_gamma(n as f64 + 1.0),
    }
}

const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];

// g = 671/128 Lanczos sum; about 1.5e-15 relative on (0, 170].
fn lanczos_ln_gamma(x: f64) -> f64 {
    let tmp = x + 5.242_187_5;
    let tmp = (x + 0.5) * log(tmp) - tmp;
    let mut ser = 0.999_999_999_999_997_092;
    let mut y = x;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    tmp + log(2.506_628_274_631_000_5 * ser / x)
}

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain {
            function: "log_gamma",
            value: x,
        });
    }
    if x <= 21.0 && x == libm::floor(x) {
        return Ok(ln_factorial(x as u32 - 1));
    }
    Ok(lanczos_ln_gamma(x))
}

/// Digamma `psi(x) = d/dx log Gamma(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(Error::Domain {
            function: "digamma",
            value: x,
        });
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < 10.0 {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // Bernoulli tail through B_14.
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2
                                        * (1.0 / 132.0
                                            - inv2 * (691.0 / 32760.0 - inv2 / 12.0))))));
    Ok(shift + log(x) - 0.5 / x - series)
}

/// Regularized incomplete gamma pair `(P(n, z), Q(n, z))` for integer shape.
///
/// `Q(n, z) = e^{-z} sum_{i<n} z^i / i!` is the Poisson lower tail. Whichever
/// of the two is small is summed directly, so both keep full relative
/// precision in their small regime.
pub fn gamma_pq_int(n: u32, z: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    if !(z > 0.0) {
        return (0.0, 1.0);
    }
    if z.is_infinite() {
        return (1.0, 0.0);
    }
    let lz = log(z);
    if z < n as f64 {
        // P = e^{-z} z^n / n! * sum_j z^j / ((n+1)...(n+j))
        let lead = -z + n as f64 * lz - ln_factorial(n);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut j = 1.0;
        loop {
            term *= z / (n as f64 + j);
            sum += term;
            if term < sum * 1e-17 {
                break;
            }
            j += 1.0;
        }
        let p = exp(lead) * sum;
        (p, 1.0 - p)
    } else {
        let mut q = 0.0;
        for i in 0..n {
            q += exp(-z + i as f64 * lz - ln_factorial(i));
        }
        let q = q.min(1.0);
        (1.0 - q, q)
    }
}
