//! Trilogarithm `Li₃(x)` on `[0, 1]`.

use crate::{Error, Result};

const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// `(k, ζ(3−k)/k!)` for the nonzero terms of the log-series with `k ≥ 3`.
/// `ζ` vanishes at the negative even integers, so only odd `3−k` survive.
const LOG_SERIES: [(i32, f64); 8] = [
    (3, -0.5 / 6.0),
    (4, -1.0 / 12.0 / 24.0),
    (6, 1.0 / 120.0 / 720.0),
    (8, -1.0 / 252.0 / 40_320.0),
    (10, 1.0 / 240.0 / 3_628_800.0),
    (12, -1.0 / 132.0 / 479_001_600.0),
    (14, 691.0 / 32_760.0 / 87_178_291_200.0),
    (16, -1.0 / 12.0 / 20_922_789_888_000.0),
];

/// Trilogarithm with an absolute truncation error below `1e-15`.
///
/// Below `x = 1/2` the defining power series is summed until its geometric
/// tail bound drops under the tolerance; above it the expansion in
/// `μ = ln x` around `x = 1` is used, where `|μ| < ln 2`.
pub fn li3(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("Li3 argument must lie in [0, 1], got {x}")));
    }
    if x == 1.0 {
        return Ok(ZETA3);
    }
    if x <= 0.5 {
        return Ok(power_series(x));
    }
    let mu = x.ln();
    let mut sum = ZETA3 + ZETA2 * mu + 0.5 * mu * mu * (1.5 - (-mu).ln());
    for &(k, c) in LOG_SERIES.iter() {
        sum += c * mu.powi(k);
    }
    Ok(sum)
}

fn power_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = x;
    let mut k = 1.0_f64;
    loop {
        sum += power / (k * k * k);
        // the remaining terms are bounded by x^{k+1}/((k+1)³(1−x))
        let next = power * x;
        let k1 = k + 1.0;
        if next / (k1 * k1 * k1 * (1.0 - x)) < 1e-17 {
            return sum;
        }
        power = next;
        k = k1;
    }
}
