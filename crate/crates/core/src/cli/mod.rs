//! Command-line front end of the `egas` binary.
//!
//! Every subcommand writes one CSV table (`#` metadata lines, a header row,
//! then data) and a JSON manifest next to it. Exit codes: `0` success, `2`
//! usage or configuration error, `3` numerical failure.

mod commands;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::materials::{ConfigOverrides, Material};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "egas", version, about = "Nonlocal electron-gas response and zero-frequency Casimir pressure datasets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero-frequency Casimir pressure against the gap.
    Pressure(PressureArgs),
    /// Transverse conductivity against frequency at fixed qℓ.
    SigmaVsOmega(SigmaVsOmegaArgs),
    /// Transverse conductivity against wave vector at fixed ωτ.
    SigmaVsQ(SigmaVsQArgs),
    /// ω·Im ε of the Lindhard functions over the (q, ω) plane.
    LandauMap(LandauMapArgs),
    /// Potential, polarisation and charge of the static screening problem.
    StaticProfiles(StaticProfilesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Material preset: gold, nickel, fig4 (alias landau-map).
    #[arg(long)]
    pub material: Option<String>,
    /// File of `key = value` material overrides.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output CSV path (default: stdout, manifest on stderr).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PressureModel {
    Drude,
    Plasma,
    Pc,
    Nonlocal,
}

#[derive(Debug, Clone, Args)]
pub struct PressureArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "drude")]
    pub model: PressureModel,
    /// Smallest gap [μm].
    #[arg(long, default_value_t = 0.2)]
    pub d_min: f64,
    /// Largest gap [μm].
    #[arg(long, default_value_t = 10.0)]
    pub d_max: f64,
    #[arg(long, default_value_t = 50)]
    pub d_points: usize,
    /// Temperature [K]; falls back to the config file, then 293 K.
    #[arg(long)]
    pub temperature_k: Option<f64>,
    /// Panel budget of the adaptive quadrature.
    #[arg(long, default_value_t = 200)]
    pub max_subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SigmaModel {
    Lindhard,
    Wf,
    Cv,
    Km22,
    Drude,
    Plasma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KmSign {
    AsPrinted,
    Flipped,
}

#[derive(Debug, Clone, Args)]
pub struct SigmaVsOmegaArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "wf")]
    pub model: SigmaModel,
    #[arg(long, default_value_t = 1.0)]
    pub q_ell: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub omega_tau_min: f64,
    #[arg(long, default_value_t = 1e2)]
    pub omega_tau_max: f64,
    #[arg(long, default_value_t = 100)]
    pub omega_tau_points: usize,
    #[arg(long, value_enum, default_value = "as-printed")]
    pub km_sign: KmSign,
}

#[derive(Debug, Clone, Args)]
pub struct SigmaVsQArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "wf")]
    pub model: SigmaModel,
    /// Fixed ωτ; 0.1 and 1 are the usual choices.
    #[arg(long, default_value_t = 1.0)]
    pub omega_tau: f64,
    #[arg(long, default_value_t = 1e-2)]
    pub q_ell_min: f64,
    #[arg(long, default_value_t = 1e2)]
    pub q_ell_max: f64,
    #[arg(long, default_value_t = 100)]
    pub q_ell_points: usize,
    #[arg(long, value_enum, default_value = "as-printed")]
    pub km_sign: KmSign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Longitudinal,
    Transverse,
}

#[derive(Debug, Clone, Args)]
pub struct LandauMapArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value = "longitudinal")]
    pub which: Which,
    /// Smallest `q/2k_F`.
    #[arg(long, default_value_t = 0.02)]
    pub z_min: f64,
    #[arg(long, default_value_t = 1.6)]
    pub z_max: f64,
    #[arg(long, default_value_t = 80)]
    pub z_points: usize,
    /// Smallest `ω/(k_F v_F)`.
    #[arg(long, default_value_t = 0.02)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 80)]
    pub omega_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct StaticProfilesArgs {
    #[command(flatten)]
    pub common: Common,
    /// `KΛ`.
    #[arg(long, default_value_t = 1.0)]
    pub k_lambda: f64,
    /// Samples per side of the surface; `z = 0` appears on both sides.
    #[arg(long, default_value_t = 101)]
    pub z_points: usize,
    /// Vacuum extent in units of Λ.
    #[arg(long, default_value_t = 4.0)]
    pub z_vacuum: f64,
    /// Metal extent in units of Λ.
    #[arg(long, default_value_t = 6.0)]
    pub z_metal: f64,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numerical(_) | Failure::Io(_) => EXIT_NUMERICAL,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidMaterial(_) | Error::Config(_) | Error::Collisionless => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Material after preset selection and config overrides, plus any
/// temperature read from the config file.
pub(crate) fn resolve_material(common: &Common, default: &str) -> Result<(Material, Option<f64>), Failure> {
    let name = common.material.as_deref().unwrap_or(default);
    let base = Material::preset(name).ok_or_else(|| Failure::Usage(format!("unknown material {name:?}")))?;
    let Some(path) = &common.config else {
        return Ok((base, None));
    };
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let overrides = ConfigOverrides::parse(&text)?;
    Ok((overrides.apply(base)?, overrides.temperature_k))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match commands::execute(&cli.command, echo) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("egas: {f}");
            f.exit_code()
        }
    }
}
