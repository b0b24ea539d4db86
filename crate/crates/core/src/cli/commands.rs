use std::path::Path;
use std::time::Instant;

use serde_json::json;

use super::table::{emit, Cell, RunManifest, Table};
use super::{
    resolve_material, usage, Command, Failure, KmSign, LandauMapArgs, PressureArgs, PressureModel, SigmaModel,
    SigmaVsOmegaArgs, SigmaVsQArgs, StaticProfilesArgs, Which,
};
use crate::casimir::{pressure_curve, QuadratureOptions};
use crate::collisional::{
    conductivity_from_eps, eps_local, eps_t_conti_vignale, eps_t_km22, eps_t_warren_ferrell, Conductivity,
    Km22Sign, LocalModel,
};
use crate::lindhard::{classify_region, eps_transverse, f_longitudinal, f_transverse, LindhardPoint};
use crate::materials::{DerivedScales, Material, CONSTANTS, ROOM_TEMPERATURE_K};
use crate::quadrature::Tolerance;
use crate::reflection::{solve_static_p, StaticModel};
use crate::Result as CoreResult;

/// Everything a command hands back for emission.
struct Output {
    table: Table,
    material: Material,
    parameters: serde_json::Value,
    grid: serde_json::Value,
    notes: Vec<String>,
}

pub(super) fn execute(command: &Command, args: Vec<String>) -> Result<(), Failure> {
    let start = Instant::now();
    let (name, common, out) = match command {
        Command::Pressure(a) => ("pressure", &a.common, pressure(a)?),
        Command::SigmaVsOmega(a) => ("sigma-vs-omega", &a.common, sigma_vs_omega(a)?),
        Command::SigmaVsQ(a) => ("sigma-vs-q", &a.common, sigma_vs_q(a)?),
        Command::LandauMap(a) => ("landau-map", &a.common, landau_map(a)?),
        Command::StaticProfiles(a) => ("static-profiles", &a.common, static_profiles(a)?),
    };
    let manifest = RunManifest {
        tool: "egas",
        version: env!("CARGO_PKG_VERSION"),
        command: name.to_string(),
        args,
        material: json!({
            "parameters": out.material,
            "derived": out.material.scales(),
        }),
        parameters: out.parameters,
        grid: out.grid,
        notes: out.notes,
        rows: out.table.rows.len(),
        output: common.output.clone(),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    emit(&out.table, &manifest, common.output.as_deref().map(Path::new)).map_err(|e| Failure::Io(e.to_string()))
}

fn log_grid(min: f64, max: f64, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    if !(min > 0.0 && min.is_finite() && max.is_finite()) {
        return usage(format!("{what}: bounds must be positive and finite"));
    }
    if n == 0 || max < min || (n > 1 && max == min) || (n == 1 && max != min) {
        return usage(format!("{what}: need min < max with at least two points, or min = max with one"));
    }
    if n == 1 {
        return Ok(vec![min]);
    }
    let ratio = (max / min).ln();
    let mut grid: Vec<f64> = (0..n).map(|i| min * (ratio * i as f64 / (n - 1) as f64).exp()).collect();
    grid[n - 1] = max;
    Ok(grid)
}

fn linear_grid(min: f64, max: f64, n: usize, what: &str) -> Result<Vec<f64>, Failure> {
    if !(min.is_finite() && max.is_finite() && min < max && n >= 2) {
        return usage(format!("{what}: need finite min < max and at least two points"));
    }
    let step = (max - min) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| min + step * i as f64).collect();
    grid[n - 1] = max;
    Ok(grid)
}

fn describe_material(t: &mut Table, name: &str, m: &Material, s: &DerivedScales) {
    t.meta("material", name);
    t.meta_float("hbar_omega_p_ev", m.plasma_energy_ev);
    t.meta_float("vf_over_c", m.vf_over_c);
    t.meta_float("mu_over_mu0", m.mu_over_mu0);
    t.meta_float("omega_p_tau", s.omega_tau());
}

fn pressure(a: &PressureArgs) -> Result<Output, Failure> {
    let (m, config_t) = resolve_material(&a.common, "gold")?;
    let temperature = a.temperature_k.or(config_t).unwrap_or(ROOM_TEMPERATURE_K);
    if !(temperature > 0.0 && temperature.is_finite()) {
        return usage("temperature must be positive");
    }
    let grid_um = log_grid(a.d_min, a.d_max, a.d_points, "gap grid")?;
    let grid: Vec<f64> = grid_um.iter().map(|d| d * 1e-6).collect();
    let model = match a.model {
        PressureModel::Drude => StaticModel::Drude,
        PressureModel::Plasma => StaticModel::Plasma,
        PressureModel::Pc => StaticModel::PerfectConductor,
        PressureModel::Nonlocal => StaticModel::Nonlocal,
    };
    let options = QuadratureOptions {
        tolerance: Tolerance {
            max_subdivisions: a.max_subdivisions,
            ..Tolerance::default()
        },
        ..QuadratureOptions::default()
    };
    let curve = pressure_curve(&grid, temperature, model, &m, options)?;

    let s = m.scales();
    let mut t = Table::new(vec!["d_um", "p_Pa", "p_s_Pa", "p_p_Pa", "p_over_pc"]);
    t.meta("command", "pressure");
    t.meta("model", format!("{model:?}"));
    describe_material(&mut t, a.common.material.as_deref().unwrap_or("gold"), &m, &s);
    t.meta_float("temperature_k", temperature);
    t.meta_float("thomas_fermi_length_nm", s.thomas_fermi_length * 1e9);
    t.meta_float("plasma_wavelength_nm", s.plasma_wavelength * 1e9);
    for (row, d_um) in curve.iter().zip(&grid_um) {
        let r = &row.result;
        t.push(vec![
            (*d_um).into(),
            r.total.into(),
            r.s.into(),
            r.p.into(),
            (r.total / row.perfect_conductor).into(),
        ]);
    }
    let converged = curve.iter().all(|r| r.result.converged);
    Ok(Output {
        table: t,
        material: m,
        parameters: json!({
            "model": format!("{model:?}"),
            "temperature_k": temperature,
            "x_max": options.x_max,
            "tolerance": {"absolute": options.tolerance.absolute, "relative": options.tolerance.relative},
            "max_subdivisions": a.max_subdivisions,
            "all_converged": converged,
        }),
        grid: json!({"d_um": {"min": a.d_min, "max": a.d_max, "points": a.d_points, "spacing": "log"}}),
        notes: vec!["positive pressure means attraction".into()],
    })
}

fn km_sign(s: KmSign) -> Km22Sign {
    match s {
        KmSign::AsPrinted => Km22Sign::AsPrinted,
        KmSign::Flipped => Km22Sign::Flipped,
    }
}

fn sigma_point(model: SigmaModel, q: f64, omega: f64, m: &Material, sign: Km22Sign) -> CoreResult<Conductivity> {
    let e = match model {
        SigmaModel::Lindhard => eps_transverse(q, omega, m)?,
        SigmaModel::Wf => eps_t_warren_ferrell(q, omega, m)?,
        SigmaModel::Cv => eps_t_conti_vignale(q, omega, m)?,
        SigmaModel::Km22 => eps_t_km22(q, omega, m, sign)?,
        SigmaModel::Drude => eps_local(omega, m, LocalModel::Drude)?,
        SigmaModel::Plasma => eps_local(omega, m, LocalModel::Plasma)?,
    };
    conductivity_from_eps(&e, m)
}

/// Conductivity cells `re, im, flagged`; a failed point is kept as NaN and
/// flagged.
fn sigma_cells(model: SigmaModel, q: f64, omega: f64, m: &Material, sign: Km22Sign) -> (Cell, Cell, Cell) {
    match sigma_point(model, q, omega, m, sign) {
        Ok(c) if c.normalized.re.is_finite() && c.normalized.im.is_finite() => {
            (c.normalized.re.into(), c.normalized.im.into(), Cell::Int(0))
        }
        _ => (f64::NAN.into(), f64::NAN.into(), Cell::Int(1)),
    }
}

fn band_label(q: f64, omega: f64, s: &DerivedScales) -> &'static str {
    classify_region(q / (2.0 * s.k_f), omega / (q * s.v_f)).region.label()
}

fn sigma_material(common: &super::Common) -> Result<(Material, DerivedScales), Failure> {
    let (m, _) = resolve_material(common, "gold")?;
    let s = m.scales();
    if s.collisionless {
        return usage("conductivity sweeps are scaled by the lifetime; the material must have finite hbar/tau");
    }
    Ok((m, s))
}

fn sigma_notes(model: SigmaModel, sign: KmSign) -> Vec<String> {
    let mut notes = vec![
        "conductivities are normalised by eps0 * Omega".to_string(),
        "band: real-axis Landau-damping region of the collisionless (z, u)".to_string(),
    ];
    if model == SigmaModel::Km22 {
        notes.push(format!("km22 sign variant: {sign:?}"));
    }
    notes
}

fn sigma_vs_omega(a: &SigmaVsOmegaArgs) -> Result<Output, Failure> {
    let (m, s) = sigma_material(&a.common)?;
    if !(a.q_ell > 0.0 && a.q_ell.is_finite()) {
        return usage("--q-ell must be positive");
    }
    let grid = log_grid(a.omega_tau_min, a.omega_tau_max, a.omega_tau_points, "omega-tau grid")?;
    let q = a.q_ell / s.mean_free_path;
    let sign = km_sign(a.km_sign);

    let mut t = Table::new(vec!["omega_tau", "re_sigma_norm", "im_sigma_norm", "band", "flagged"]);
    t.meta("command", "sigma-vs-omega");
    t.meta("model", format!("{:?}", a.model).to_lowercase());
    describe_material(&mut t, a.common.material.as_deref().unwrap_or("gold"), &m, &s);
    t.meta_float("q_ell", a.q_ell);
    t.meta_float("kf_ell", s.k_f * s.mean_free_path);
    for &wt in &grid {
        let omega = wt / s.tau;
        let (re, im, flag) = sigma_cells(a.model, q, omega, &m, sign);
        t.push(vec![wt.into(), re, im, band_label(q, omega, &s).into(), flag]);
    }
    Ok(Output {
        table: t,
        material: m,
        parameters: json!({"model": format!("{:?}", a.model), "q_ell": a.q_ell, "km_sign": format!("{:?}", a.km_sign)}),
        grid: json!({"omega_tau": {"min": a.omega_tau_min, "max": a.omega_tau_max, "points": a.omega_tau_points, "spacing": "log"}}),
        notes: sigma_notes(a.model, a.km_sign),
    })
}

fn sigma_vs_q(a: &SigmaVsQArgs) -> Result<Output, Failure> {
    let (m, s) = sigma_material(&a.common)?;
    if !(a.omega_tau > 0.0 && a.omega_tau.is_finite()) {
        return usage("--omega-tau must be positive");
    }
    let grid = log_grid(a.q_ell_min, a.q_ell_max, a.q_ell_points, "q-ell grid")?;
    let omega = a.omega_tau / s.tau;
    let sign = km_sign(a.km_sign);
    // q = ω/v_F is qℓ = ωτ
    let onset = grid
        .iter()
        .enumerate()
        .min_by(|x, y| {
            let dx = (x.1 / a.omega_tau).ln().abs();
            let dy = (y.1 / a.omega_tau).ln().abs();
            dx.total_cmp(&dy)
        })
        .map(|(i, _)| i)
        .unwrap_or(0);

    let mut t = Table::new(vec![
        "q_ell",
        "re_sigma_norm",
        "im_sigma_norm",
        "band",
        "landau_onset_marker",
        "flagged",
    ]);
    t.meta("command", "sigma-vs-q");
    t.meta("model", format!("{:?}", a.model).to_lowercase());
    describe_material(&mut t, a.common.material.as_deref().unwrap_or("gold"), &m, &s);
    t.meta_float("omega_tau", a.omega_tau);
    t.meta_float("kf_ell", s.k_f * s.mean_free_path);
    for (i, &ql) in grid.iter().enumerate() {
        let q = ql / s.mean_free_path;
        let (re, im, flag) = sigma_cells(a.model, q, omega, &m, sign);
        t.push(vec![ql.into(), re, im, band_label(q, omega, &s).into(), (i == onset).into(), flag]);
    }
    let mut notes = sigma_notes(a.model, a.km_sign);
    notes.push("omega_tau = 0.1 and 1 are the usual choices; the default is 1".into());
    Ok(Output {
        table: t,
        material: m,
        parameters: json!({"model": format!("{:?}", a.model), "omega_tau": a.omega_tau, "km_sign": format!("{:?}", a.km_sign)}),
        grid: json!({"q_ell": {"min": a.q_ell_min, "max": a.q_ell_max, "points": a.q_ell_points, "spacing": "log"}}),
        notes,
    })
}

fn landau_map(a: &LandauMapArgs) -> Result<Output, Failure> {
    let (m, _) = resolve_material(&a.common, "fig4")?;
    let s = m.scales();
    let zs = linear_grid(a.z_min, a.z_max, a.z_points, "z grid")?;
    let ws = linear_grid(a.omega_min, a.omega_max, a.omega_points, "omega grid")?;
    if a.z_min <= 0.0 || a.omega_min <= 0.0 {
        return usage("map grids must start above zero");
    }
    // Ω/(k_F v_F)
    let ratio = s.omega_p / (s.k_f * s.v_f);

    let mut t = Table::new(vec!["q_over_2kF", "omega_norm", "omega_times_im_eps", "region_label"]);
    t.meta("command", "landau-map");
    t.meta("which", format!("{:?}", a.which).to_lowercase());
    describe_material(&mut t, a.common.material.as_deref().unwrap_or("fig4"), &m, &s);
    t.meta_float("omega_p_over_kf_vf", ratio);
    t.meta("omega_norm", "omega/(k_F v_F)");
    t.meta("omega_times_im_eps", "(omega/Omega) Im eps/eps0");
    for &z in &zs {
        for &w in &ws {
            let u = w / (2.0 * z);
            let p = LindhardPoint::real(z, u)?;
            let value = match a.which {
                Which::Longitudinal => 3.0 * ratio * w * f_longitudinal(&p).im / (4.0 * z * z),
                Which::Transverse => -ratio * f_transverse(&p).im / w,
            };
            t.push(vec![z.into(), w.into(), value.into(), classify_region(z, u).region.label().into()]);
        }
    }
    Ok(Output {
        table: t,
        material: m,
        parameters: json!({"which": format!("{:?}", a.which), "omega_p_over_kf_vf": ratio}),
        grid: json!({
            "q_over_2kF": {"min": a.z_min, "max": a.z_max, "points": a.z_points, "spacing": "linear"},
            "omega_norm": {"min": a.omega_min, "max": a.omega_max, "points": a.omega_points, "spacing": "linear"},
        }),
        notes: vec!["collisionless real-axis evaluation".into()],
    })
}

fn static_profiles(a: &StaticProfilesArgs) -> Result<Output, Failure> {
    let (m, _) = resolve_material(&a.common, "gold")?;
    if !(a.k_lambda > 0.0 && a.k_lambda.is_finite()) {
        return usage("--k-lambda must be positive");
    }
    if !(a.z_vacuum > 0.0 && a.z_metal > 0.0) {
        return usage("--z-vacuum and --z-metal must be positive");
    }
    let vacuum = linear_grid(-a.z_vacuum, 0.0, a.z_points, "vacuum grid")?;
    let metal = linear_grid(0.0, a.z_metal, a.z_points, "metal grid")?;
    let s = m.scales();
    let sol = solve_static_p(a.k_lambda / s.thomas_fermi_length, &m)?;
    let norm = s.v_f * s.v_f / (6.0 * CONSTANTS.eps0 * s.omega_p * s.omega_p);

    let mut t = Table::new(vec!["z_over_Lambda", "side", "phi", "P_L", "rho"]);
    t.meta("command", "static-profiles");
    describe_material(&mut t, a.common.material.as_deref().unwrap_or("gold"), &m, &s);
    t.meta_float("k_lambda", a.k_lambda);
    t.meta_float("kappa_lambda", sol.kappa_lambda());
    t.meta_float("r_p", sol.r_p);
    t.meta_float("rho0", sol.rho0);
    t.meta_float("rho0_vf2_over_6eps0_omega2", sol.rho0 * norm);
    t.meta_float("thomas_fermi_length_nm", s.thomas_fermi_length * 1e9);
    t.meta("units", "phi per unit incident potential; P_L (normal component) in eps0/Lambda; rho in eps0/Lambda^2; rho0 in C/m^3 per volt");
    for &z in &vacuum {
        t.push(vec![z.into(), "vacuum".into(), sol.phi_vacuum(z).into(), 0.0.into(), 0.0.into()]);
    }
    for &z in &metal {
        t.push(vec![z.into(), "metal".into(), sol.phi(z).into(), sol.p_normal(z).into(), sol.rho(z).into()]);
    }
    Ok(Output {
        table: t,
        material: m,
        parameters: json!({"k_lambda": a.k_lambda, "r_p": sol.r_p, "rho0": sol.rho0, "kappa_lambda": sol.kappa_lambda()}),
        grid: json!({"z_over_Lambda": {"vacuum": [-a.z_vacuum, 0.0], "metal": [0.0, a.z_metal], "points_per_side": a.z_points}}),
        notes: vec![
            "rho0 carries the sign of Poisson's equation: negative charge below a positive surface potential".into(),
        ],
    })
}
