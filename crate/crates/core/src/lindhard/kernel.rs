//! Numerical evaluation of the Lindhard kernels `f_L(z, u)` and `f_T(z, u)`.
//!
//! Three routes, chosen per point:
//!
//! - direct evaluation of the logarithms;
//! - a Taylor series in `z` around the semiclassical limit, used for small
//!   `z` away from `u = ±1`, where the direct form divides a difference of
//!   two nearly equal logarithm terms by `z`;
//! - an inverse-power series in `u ± z`, used when both `|u ± z|` are large,
//!   where the direct form cancels `O(u²)` terms to leave `O(1)`.
//!
//! The complex routines return the branch that is analytic in the upper half
//! plane `Im u > 0`. On the real axis only their real part is meaningful.

use num_complex::Complex64;

/// Minimum `|u ± z|` for the inverse-power series.
const LARGE_ARGUMENT: f64 = 3.0;
/// Largest `z` handled by the Taylor series in `z`.
const SMALL_Z: f64 = 0.05;
/// Taylor series needs `z` below this fraction of the distance to `u = ±1`.
const TAYLOR_RATIO: f64 = 0.1;
/// Below this `|1 − w²|` the weighted logarithm is rewritten around its zero.
pub(crate) const NEAR_SINGULAR: f64 = 1e-8;

const MAX_TERMS: usize = 200;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kernels {
    pub longitudinal: Complex64,
    pub transverse: Complex64,
}

/// Principal logarithm with the boundary value taken from above the cut:
/// `clog(-x) = ln x + iπ` also when the imaginary part is a negative zero.
pub(crate) fn clog(w: Complex64) -> Complex64 {
    let w = if w.im == 0.0 {
        Complex64::new(w.re, 0.0)
    } else {
        w
    };
    w.ln()
}

/// `(1 − w²)^power · log((w + 1)/(w − 1))`, finite at `w = ±1`.
pub(crate) fn weighted_log(w: Complex64, power: i32) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = (one - w) * (one + w);
    if s.norm() < NEAR_SINGULAR {
        if s == Complex64::new(0.0, 0.0) {
            return s;
        }
        // w − 1 = −s/(w + 1) near w = 1; w + 1 = s/(1 − w) near w = −1
        let ratio = if (w - one).norm() < (w + one).norm() {
            -(w + one) * (w + one) / s
        } else {
            -s / ((w - one) * (w - one))
        };
        return s.powi(power) * ratio.ln();
    }
    s.powi(power) * ((w + one) / (w - one)).ln()
}

/// Real-axis counterpart of [`weighted_log`] with `log|…|`.
pub(crate) fn weighted_log_abs(w: f64, power: i32) -> f64 {
    let s = (1.0 - w) * (1.0 + w);
    if s == 0.0 {
        return 0.0;
    }
    if s.abs() < NEAR_SINGULAR {
        let ratio = if (w - 1.0).abs() < (w + 1.0).abs() {
            (w + 1.0) * (w + 1.0) / s
        } else {
            s / ((w - 1.0) * (w - 1.0))
        };
        return s.powi(power) * ratio.abs().ln();
    }
    s.powi(power) * ((w + 1.0) / (w - 1.0)).abs().ln()
}

pub(crate) fn direct(z: f64, u: Complex64) -> Kernels {
    let wm = Complex64::new(z, 0.0) - u;
    let wp = Complex64::new(z, 0.0) + u;
    let longitudinal = 0.5 + (weighted_log(wm, 1) + weighted_log(wp, 1)) / (8.0 * z);
    let transverse = 0.375 * (1.0 + 3.0 * u * u + z * z)
        - 3.0 * (weighted_log(wm, 2) + weighted_log(wp, 2)) / (32.0 * z);
    Kernels {
        longitudinal,
        transverse,
    }
}

/// Real parts on the real axis from the `log|…|` forms.
pub(crate) fn direct_real(z: f64, u: f64) -> (f64, f64) {
    let (wm, wp) = (z - u, z + u);
    let l = 0.5 + (weighted_log_abs(wm, 1) + weighted_log_abs(wp, 1)) / (8.0 * z);
    let t = 0.375 * (1.0 + 3.0 * u * u + z * z)
        - 3.0 * (weighted_log_abs(wm, 2) + weighted_log_abs(wp, 2)) / (32.0 * z);
    (l, t)
}

/// `[(u + z)^−k − (u − z)^−k] / (2z)` without cancellation for small `z/u`.
fn odd_difference(u: Complex64, z: f64, k: i32) -> Complex64 {
    if z < 0.25 * u.norm() {
        let t = z / u;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut binom = k as f64; // C(k, 1)
        let mut tpow = Complex64::new(1.0, 0.0);
        let t2 = t * t;
        let mut j = 1;
        while j <= k {
            sum += binom * tpow;
            // C(k, j+2) from C(k, j)
            let jf = j as f64;
            let kf = k as f64;
            binom *= (kf - jf) * (kf - jf - 1.0) / ((jf + 1.0) * (jf + 2.0));
            tpow *= t2;
            j += 2;
        }
        let one = Complex64::new(1.0, 0.0);
        -sum / (u.powi(k + 1) * (one - t2).powi(k))
    } else {
        let wp = u + z;
        let wm = u - z;
        (wp.powi(-k) - wm.powi(-k)) / (2.0 * z)
    }
}

/// Inverse-power series, valid for `|u ± z| > 1`.
///
/// `f_L = Σ Δ_k/(k(k+2))` and `f_T = 1 − Σ 3Δ_k/(k(k+2)(k+4))` over odd `k`,
/// with `Δ_k` from [`odd_difference`].
pub(crate) fn asymptotic(z: f64, u: Complex64) -> Kernels {
    let mut fl = Complex64::new(0.0, 0.0);
    let mut ft = Complex64::new(1.0, 0.0);
    for n in 0..MAX_TERMS {
        let k = 2 * n as i32 + 1;
        let kf = k as f64;
        let d = odd_difference(u, z, k);
        let tl = d / (kf * (kf + 2.0));
        let tt = 3.0 * d / (kf * (kf + 2.0) * (kf + 4.0));
        fl += tl;
        ft -= tt;
        if n >= 2 && tl.norm() <= 1e-17 * fl.norm() && tt.norm() <= 1e-17 * ft.norm() {
            break;
        }
    }
    Kernels {
        longitudinal: fl,
        transverse: ft,
    }
}

/// Taylor coefficients `L^(j)(u)/j!` of `L(w) = log((w+1)/(w−1))`, `j = 0..=n`.
fn log_taylor(u: Complex64, n: usize) -> Vec<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let ip = one / (u + one);
    let im = one / (u - one);
    let mut out = Vec::with_capacity(n + 1);
    out.push(((u + one) / (u - one)).ln());
    let (mut pp, mut pm) = (one, one);
    for j in 1..=n {
        pp *= ip;
        pm *= im;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        out.push(sign * (pp - pm) / j as f64);
    }
    out
}

/// Taylor series in `z` around the semiclassical kernels.
///
/// With `H = (1 − w²)L` and `G = (1 − w²)²L`:
/// `f_L = 1/2 + (1/4) Σ z^{2n} H^{(2n+1)}(u)/(2n+1)!`,
/// `f_T = 3/8 (1 + 3u² + z²) − (3/16) Σ z^{2n} G^{(2n+1)}(u)/(2n+1)!`.
pub(crate) fn small_z(z: f64, u: Complex64) -> Kernels {
    const ORDERS: usize = 12;
    let nmax = 2 * ORDERS + 1;
    let lt = log_taylor(u, nmax);
    let one = Complex64::new(1.0, 0.0);
    let u2 = u * u;
    // Taylor coefficients of 1 − w² and (1 − w²)² at u
    let p1 = [one - u2, -2.0 * u, -one];
    let p2 = [
        (one - u2) * (one - u2),
        4.0 * u * (u2 - one),
        6.0 * u2 - 2.0,
        4.0 * u,
        one,
    ];
    let taylor = |poly: &[Complex64], n: usize| -> Complex64 {
        poly.iter()
            .enumerate()
            .filter(|(k, _)| *k <= n)
            .map(|(k, c)| c * lt[n - k])
            .sum()
    };
    let mut sl = Complex64::new(0.0, 0.0);
    let mut st = Complex64::new(0.0, 0.0);
    let z2 = z * z;
    let mut zpow = 1.0;
    for n in 0..=ORDERS {
        let order = 2 * n + 1;
        let tl = zpow * taylor(&p1, order);
        let tt = zpow * taylor(&p2, order);
        sl += tl;
        st += tt;
        if n >= 1 && tl.norm() <= 1e-17 * sl.norm().max(1e-300) && tt.norm() <= 1e-17 * st.norm().max(1e-300) {
            break;
        }
        zpow *= z2;
    }
    Kernels {
        longitudinal: 0.5 + 0.25 * sl,
        transverse: 0.375 * (1.0 + 3.0 * u2 + z2) - 0.1875 * st,
    }
}

enum Route {
    Asymptotic,
    SmallZ,
    Direct,
}

fn route(z: f64, u: Complex64) -> Route {
    if (u + z).norm() >= LARGE_ARGUMENT && (u - z).norm() >= LARGE_ARGUMENT {
        return Route::Asymptotic;
    }
    let one = Complex64::new(1.0, 0.0);
    let dist = (u - one).norm().min((u + one).norm());
    if z <= SMALL_Z && z <= TAYLOR_RATIO * dist {
        Route::SmallZ
    } else {
        Route::Direct
    }
}

/// Both kernels for `Im u ≥ 0`; the upper-half-plane branch.
pub(crate) fn evaluate(z: f64, u: Complex64) -> Kernels {
    match route(z, u) {
        Route::Asymptotic => asymptotic(z, u),
        Route::SmallZ => small_z(z, u),
        Route::Direct => direct(z, u),
    }
}

/// Real parts of both kernels for real `u`.
pub(crate) fn evaluate_real(z: f64, u: f64) -> (f64, f64) {
    let uc = Complex64::new(u, 0.0);
    match route(z, uc) {
        Route::Asymptotic => {
            let k = asymptotic(z, uc);
            (k.longitudinal.re, k.transverse.re)
        }
        Route::SmallZ => {
            let k = small_z(z, uc);
            (k.longitudinal.re, k.transverse.re)
        }
        Route::Direct => direct_real(z, u),
    }
}

/// Semiclassical transverse kernel
/// `3u²/2 − (3u(1 − u²)/4) log((u − 1)/(u + 1))`.
pub(crate) fn semiclassical_transverse(u: Complex64) -> Complex64 {
    if u.norm() >= LARGE_ARGUMENT {
        // Σ 3 u^{−2n} / ((2n+1)(2n+3))
        let inv2 = 1.0 / (u * u);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for n in 0..MAX_TERMS {
            let nf = n as f64;
            let term = 3.0 * p / ((2.0 * nf + 1.0) * (2.0 * nf + 3.0));
            sum += term;
            if term.norm() <= 1e-17 * sum.norm() {
                break;
            }
            p *= inv2;
        }
        return sum;
    }
    let one = Complex64::new(1.0, 0.0);
    1.5 * u * u - 0.75 * u * (one - u * u) * clog((u - one) / (u + one))
}
