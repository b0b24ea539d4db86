//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use egas::casimir::{pressure_constant_r_series, pressure_curve, pressure_zero_matsubara, PressureQuery, QuadratureOptions};
use egas::collisional::{
    eps_t_conti_vignale, eps_t_warren_ferrell, low_freq_expansion, CollisionalModel,
};
use egas::lindhard::{
    classify_region, eps_transverse, f_longitudinal, f_transverse, f_transverse_semiclassical, static_expansion,
    LindhardPoint, Region,
};
use egas::materials::{perfect_conductor_pressure, Material, CONSTANTS, ROOM_TEMPERATURE_K};
use egas::quadrature::{integrate, Tolerance};
use egas::reflection::{
    chi_from_permittivities, landau_susceptibility, r_p_svetovoy, rho0_magnitude, solve_static_p,
    static_p_closed_form, static_p_linear_system, ReflectionPair, StaticModel,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn gap_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.2e-6 * (50f64.ln() * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn perfect_conductor() -> Outcome {
    let start = Instant::now();
    let query = PressureQuery::new(1e-6, ROOM_TEMPERATURE_K).map_err(|e| e.to_string())?;
    let pc = |k| {
        Ok(ReflectionPair {
            r_s: 1.0,
            r_p: 1.0,
            k,
            model: StaticModel::PerfectConductor,
        })
    };
    let got = pressure_zero_matsubara(query, pc, QuadratureOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let want = perfect_conductor_pressure(1e-6, ROOM_TEMPERATURE_K);
    let rel = ((got.total - want) / want).abs();
    check(
        rel < 1e-8 && elapsed < 0.1,
        format!("p = {:.6e} Pa, closed form {want:.6e} Pa, rel. error {rel:.1e}, {elapsed:.4} s", got.total),
    )
}

fn drude_half_of_pc() -> Outcome {
    let grid = gap_grid(50);
    let curve = pressure_curve(&grid, ROOM_TEMPERATURE_K, StaticModel::Drude, &Material::gold(), QuadratureOptions::default())
        .map_err(|e| e.to_string())?;
    let worst = curve
        .iter()
        .map(|p| (p.result.total / p.perfect_conductor - 0.5).abs() / 0.5)
        .fold(0.0, f64::max);
    check(worst < 1e-10, format!("max |p/p_PC - 0.5|/0.5 = {worst:.1e} over 50 gaps"))
}

fn nickel_doubling() -> Outcome {
    let grid = gap_grid(50);
    let opts = QuadratureOptions::default();
    let ni = pressure_curve(&grid, ROOM_TEMPERATURE_K, StaticModel::Drude, &Material::nickel(), opts).map_err(|e| e.to_string())?;
    let au = pressure_curve(&grid, ROOM_TEMPERATURE_K, StaticModel::Drude, &Material::gold(), opts).map_err(|e| e.to_string())?;
    let r = 109.0 / 111.0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut oracle_gap: f64 = 0.0;
    for ((a, b), &d) in ni.iter().zip(&au).zip(&grid) {
        let ratio = a.result.total / b.result.total;
        lo = lo.min(ratio);
        hi = hi.max(ratio);
        let s_ni = pressure_constant_r_series(r, -1.0, d, ROOM_TEMPERATURE_K).map_err(|e| e.to_string())?;
        let s_au = pressure_constant_r_series(0.0, -1.0, d, ROOM_TEMPERATURE_K).map_err(|e| e.to_string())?;
        oracle_gap = oracle_gap.max((ratio - s_ni.total / s_au.total).abs());
    }
    check(
        (lo - 1.95).abs() <= 0.01 && (hi - 1.95).abs() <= 0.01 && oracle_gap < 1e-8,
        format!("ratio in [{lo:.8}, {hi:.8}], deviation from Li3 series {oracle_gap:.1e}"),
    )
}

fn landau() -> Outcome {
    let gold = Material::gold();
    let chi = landau_susceptibility(&gold);
    let value_ok = (chi + 3.6e-6).abs() <= 0.1e-6;

    let m = gold.collisionless();
    let s = m.scales();
    let q = 0.1 * s.k_f;
    let mut last = f64::INFINITY;
    let mut direct = f64::INFINITY;
    for k in 4..=10 {
        let omega = q * s.v_f * 10f64.powi(-k);
        let e = static_expansion(q, omega, &m).map_err(|e| e.to_string())?;
        let t = e.transverse.map_err(|e| e.to_string())?;
        let bridged = chi_from_permittivities(q, omega, e.longitudinal.value, t.value).map_err(|e| e.to_string())?;
        // the bridge defines μ0χ/μ; to leading order this is χ
        let reduced = bridged / (1.0 + bridged);
        last = (reduced - s.chi_landau).norm() / s.chi_landau.abs();
        direct = (bridged - s.chi_landau).norm() / s.chi_landau.abs();
    }
    check(
        value_ok && last < 1e-6,
        format!("chi = {chi:.4e}; bridge mu0*chi/mu rel. error {last:.1e} (chi itself differs by {direct:.1e})"),
    )
}

fn nonlocal_rp() -> Outcome {
    let gold = Material::gold();
    let lambda = gold.scales().thomas_fermi_length;
    let mut ok = true;
    let mut notes = Vec::new();

    let mut worst_limit: f64 = 0.0;
    for k in [1e-5, 1e-4, 1e-3, 1e-2, 1e-1] {
        let sol = solve_static_p(k / lambda, &gold).map_err(|e| e.to_string())?;
        worst_limit = worst_limit.max((sol.r_p + 1.0).abs() / (3.0 * k));
    }
    ok &= worst_limit <= 1.0;
    notes.push(format!("max |r_p+1|/(3k) = {worst_limit:.3}"));

    let mut worst_closed: f64 = 0.0;
    for i in 0..60 {
        let k = 1e-3 * 10f64.powf(i as f64 / 15.0);
        let a = static_p_closed_form(k).map_err(|e| e.to_string())?;
        let b = static_p_linear_system(k).map_err(|e| e.to_string())?;
        let sol = solve_static_p(k / lambda, &gold).map_err(|e| e.to_string())?;
        let rho = rho0_magnitude(k / lambda, &gold).map_err(|e| e.to_string())?;
        worst_closed = worst_closed
            .max((a.r_p - b.r_p).abs())
            .max((sol.r_p - b.r_p).abs())
            .max(((-sol.rho0 - rho) / rho).abs())
            .max((a.t_l - b.t_l).abs())
            .max((a.t_p - b.t_p).abs());
    }
    ok &= worst_closed < 1e-12;
    notes.push(format!("closed form vs linear system {worst_closed:.1e}"));

    let mut coefficients = Vec::new();
    for j in 0..6 {
        let k = 1e-2 * 2f64.powi(j);
        let exact = solve_static_p(k / lambda, &gold).map_err(|e| e.to_string())?.r_p;
        let sv = r_p_svetovoy(k / lambda, &gold);
        coefficients.push((sv - exact).abs() / (k * k));
    }
    let (cmin, cmax) = coefficients
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &c| (a.min(c), b.max(c)));
    // a first-order disagreement would make the coefficient grow like 1/k;
    // the leading second-order coefficient is 4
    ok &= cmax < 5.0 && (coefficients[0] - 4.0).abs() < 0.5;
    notes.push(format!("|Svetovoy - r_p|/(k^2) in [{cmin:.3}, {cmax:.3}]"));

    let mut rng = StdRng::seed_from_u64(5);
    let mut worst_residual: f64 = 0.0;
    for _ in 0..50 {
        let k = 10f64.powf(rng.random_range(-3.0..1.0));
        let sol = solve_static_p(k / lambda, &gold).map_err(|e| e.to_string())?;
        let kl = sol.k_lambda();
        for i in 0..20 {
            let zeta = 8.0 * i as f64 / 19.0 - 2.0;
            let phi = sol.phi(zeta);
            let d2 = sol.phi_derivative(zeta, 2);
            let rho = sol.rho(zeta);
            // ∇²φ = −ρ/ε0 and ∇²ρ = ρ/Λ² with the transverse −K² term
            let poisson = (d2 - kl * kl * phi + rho).abs() / d2.abs().max((kl * kl * phi).abs()).max(rho.abs()).max(1e-300);
            let screening = if zeta >= 0.0 {
                let r2 = sol.rho_derivative(zeta, 2);
                (r2 - kl * kl * rho - rho).abs() / r2.abs().max(1e-300)
            } else {
                0.0
            };
            worst_residual = worst_residual.max(poisson).max(screening);
        }
        let continuity = ((sol.phi_vacuum(0.0) - sol.phi(0.0)).abs())
            .max((sol.phi_slope_vacuum() - sol.phi_derivative(0.0, 1)).abs())
            .max(sol.p_normal(0.0).abs())
            .max(sol.p_tangential(0.0).abs());
        // Gauss: φ'(0) + k² ∫φ = ∫ρ over the metal
        let integral_phi = sol.t_p / kl + sol.t_l / sol.kappa_lambda();
        let gauss = (sol.phi_slope_vacuum() + kl * kl * integral_phi - sol.total_charge()).abs();
        worst_residual = worst_residual.max(continuity).max(gauss);
    }
    ok &= worst_residual < 1e-9;
    notes.push(format!("BVP residual {worst_residual:.1e}"));
    check(ok, notes.join("; "))
}

fn low_frequency() -> Outcome {
    let gold = Material::gold();
    let s = gold.scales();
    let omega = 1e-5 / s.tau;
    let mut worst: f64 = 0.0;
    for ql in [0.01, 0.1, 0.3] {
        let q = ql / s.mean_free_path;
        let wf = eps_t_warren_ferrell(q, omega, &gold).map_err(|e| e.to_string())?.value;
        let wf0 = low_freq_expansion(q, omega, &gold, CollisionalModel::WarrenFerrell).map_err(|e| e.to_string())?.value;
        let cv = eps_t_conti_vignale(q, omega, &gold).map_err(|e| e.to_string())?.value;
        let cv0 = low_freq_expansion(q, omega, &gold, CollisionalModel::ContiVignale).map_err(|e| e.to_string())?.value;
        worst = worst.max((wf - wf0).norm() / wf0.norm()).max((cv - cv0).norm() / cv0.norm());
    }
    check(worst < 1e-2, format!("max relative deviation {worst:.2e}"))
}

fn branch_cuts() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut transparent = 0usize;
    let mut nonzero = 0usize;
    let mut n = 0usize;
    while n < 10_000 {
        let z: f64 = rng.random_range(0.01..2.5);
        let u: f64 = rng.random_range(0.0..3.5);
        if ((u + z) - 1.0).abs() < 1e-6 || ((u - z).abs() - 1.0).abs() < 1e-6 || u == 0.0 {
            continue;
        }
        n += 1;
        let real = LindhardPoint::real(z, u).map_err(|e| e.to_string())?;
        let shifted = LindhardPoint::new(z, Complex64::new(u, 1e-8)).map_err(|e| e.to_string())?;
        let (l0, t0) = (f_longitudinal(&real), f_transverse(&real));
        let (l1, t1) = (f_longitudinal(&shifted), f_transverse(&shifted));
        let dl = (l0 - l1).norm() / l0.norm().max(1.0);
        let dt = (t0 - t1).norm() / t0.norm().max(1.0);
        worst = worst.max(dl).max(dt);
        if classify_region(z, u).region == Region::Transparent {
            transparent += 1;
            if l0.im != 0.0 || t0.im != 0.0 {
                nonzero += 1;
            }
        }
    }
    check(
        worst < 1e-5 && nonzero == 0,
        format!("max deviation {worst:.1e} over {n} points; {transparent} transparent points, {nonzero} with Im != 0"),
    )
}

/// `(3/4) ∫ (1 − μ²) u/(u + μ) dμ` over `[−1, 1]`.
fn velocity_space(u: Complex64) -> Result<Complex64, String> {
    let tol = Tolerance {
        absolute: 1e-13,
        relative: 1e-13,
        max_subdivisions: 2000,
    };
    let kernel = |mu: f64| (1.0 - mu * mu) * u / (u + mu);
    let re = integrate(|mu| kernel(mu).re, -1.0, 1.0, tol).map_err(|e| e.to_string())?;
    let im = integrate(|mu| kernel(mu).im, -1.0, 1.0, tol).map_err(|e| e.to_string())?;
    Ok(0.75 * Complex64::new(re.value, im.value))
}

fn semiclassical_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for im in [0.1, 1.0] {
        for i in 0..10 {
            let u = Complex64::new(-2.0 + 5.0 * i as f64 / 9.0, im);
            let closed = f_transverse_semiclassical(u).map_err(|e| e.to_string())?;
            worst = worst.max((closed - velocity_space(u)?).norm());
        }
    }
    check(worst < 1e-8, format!("max |f_sc - angular quadrature| = {worst:.1e} on 20 points"))
}

fn read_csv(args: &[&str]) -> Result<Vec<Vec<String>>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_egas"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("egas {args:?} exited with {}", out.status));
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok(text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect())
}

/// `D(2h)/D(h)` of the symmetric second difference around `x0`: about 4 for
/// a smooth curve, about 2 for a kink.
fn curvature_scaling(f: impl Fn(f64) -> f64, x0: f64, h: f64) -> f64 {
    let d = |h: f64| f(x0 * (1.0 + h)) - 2.0 * f(x0) + f(x0 * (1.0 - h));
    d(2.0 * h) / d(h)
}

fn dataset_checks(suite_start: Instant) -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();

    let rows = read_csv(&["sigma-vs-omega", "--model", "plasma", "--q-ell", "1"])?;
    let real_parts_zero = rows.iter().all(|r| r[1].parse::<f64>() == Ok(0.0));
    let imag_nonzero = rows.iter().all(|r| r[2].parse::<f64>().map(|v| v > 0.0).unwrap_or(false));
    ok &= real_parts_zero && imag_nonzero;
    notes.push(format!("plasma Re sigma = 0 on {} rows: {}", rows.len(), real_parts_zero && imag_nonzero));

    let gold = Material::gold();
    let s = gold.scales();
    let omega = 1.0 / s.tau;
    let q0 = omega / s.v_f;
    let re_sigma = |model: &str, q: f64| -> f64 {
        let e = match model {
            "lindhard" => eps_transverse(q, omega, &gold),
            "wf" => eps_t_warren_ferrell(q, omega, &gold),
            _ => eps_t_conti_vignale(q, omega, &gold),
        };
        (-Complex64::i() * omega * CONSTANTS.eps0 * (e.expect("finite permittivity").value - 1.0)).re
    };
    let kink = curvature_scaling(|q| re_sigma("lindhard", q), q0, 0.02);
    let wf = curvature_scaling(|q| re_sigma("wf", q), q0, 0.02);
    let cv = curvature_scaling(|q| re_sigma("cv", q), q0, 0.02);
    let smooth = |r: f64| (r - 4.0).abs() < 0.5;
    ok &= (kink - 2.0).abs() < 0.5 && smooth(wf) && smooth(cv);
    notes.push(format!("curvature scaling at q = omega/v_F: lindhard {kink:.2}, wf {wf:.2}, cv {cv:.2}"));

    let rows = read_csv(&["sigma-vs-q", "--model", "km22", "--km-sign", "flipped", "--omega-tau", "0.5"])?;
    // q = 1/(v_T τ) is qℓ = v_F/v_T
    let threshold = s.v_f / s.v_t;
    let mut sign_ok = true;
    for r in &rows {
        let ql: f64 = r[0].parse().map_err(|_| "bad q_ell".to_string())?;
        let re: f64 = r[1].parse().map_err(|_| "bad re_sigma_norm".to_string())?;
        if (ql > threshold) != (re < 0.0) {
            sign_ok = false;
        }
    }
    ok &= sign_ok;
    notes.push(format!("km22 flipped Re sigma < 0 exactly beyond q*ell = {threshold:.4}: {sign_ok}"));

    let elapsed = suite_start.elapsed().as_secs_f64();
    ok &= elapsed < 60.0;
    notes.push(format!("suite time {elapsed:.2} s"));
    check(ok, notes.join("; "))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("perfect-conductor pressure", Box::new(perfect_conductor)),
        ("Drude/PC ratio", Box::new(drude_half_of_pc)),
        ("nickel near-doubling", Box::new(nickel_doubling)),
        ("Landau susceptibility", Box::new(landau)),
        ("nonlocal r_p", Box::new(nonlocal_rp)),
        ("low-frequency expansions", Box::new(low_frequency)),
        ("branch-cut integrity", Box::new(branch_cuts)),
        ("oracle equivalence", Box::new(semiclassical_oracle)),
        ("dataset checks", Box::new(move || dataset_checks(start))),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] {} {name}: {detail}", i + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
