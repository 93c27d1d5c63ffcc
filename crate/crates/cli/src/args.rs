use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cpshift", version, about = "Non-retarded atom energy shifts near a wire or a halfplane")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Options shared by every subcommand. Anything left unset falls back to
/// the config file, then to the built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with `units`, `format`, `timing` and a `[numerics]` table
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// reduced: 1/(4 pi eps0) = 1; si: metres, C^2 m^2, joules
    #[arg(long, global = true, value_enum)]
    pub units: Option<Units>,
    /// relative tolerance of each kappa integral
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,
    /// stop an order sum once terms fall below this fraction of the total
    #[arg(long, global = true)]
    pub series_tol: Option<f64>,
    #[arg(long, global = true)]
    pub max_terms: Option<u32>,
    /// write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// add wall time to each record (output is then no longer reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients and shift near a wire of radius R.
    Wire(WireArgs),
    /// Coefficients and shift near a conducting halfplane.
    Halfplane(HalfplaneArgs),
    /// Tabulate over a grid of one geometric parameter.
    Sweep(SweepArgs),
    /// Run the consistency and oracle checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct WireArgs {
    #[arg(long = "R")]
    pub radius: f64,
    /// distance of the atom from the axis
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    pub rho: Option<f64>,
    /// gap between the atom and the wire surface
    #[arg(long)]
    pub d: Option<f64>,
    #[command(flatten)]
    pub dipole: DipoleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct HalfplaneArgs {
    /// distance from the edge
    #[arg(long)]
    pub rho: f64,
    /// angle from the sheet, in (0, 2 pi)
    #[arg(long)]
    pub phi: f64,
    #[command(flatten)]
    pub dipole: DipoleArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct DipoleArgs {
    /// mean-square dipole: one value (isotropic) or rho,phi,z
    #[arg(long, value_delimiter = ',', num_args = 1..=3)]
    pub mu2: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Geometry {
    Wire,
    Halfplane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Variable {
    #[value(name = "d_over_R")]
    #[serde(rename = "d_over_R")]
    DOverR,
    #[value(name = "phi")]
    #[serde(rename = "phi")]
    Phi,
    #[value(name = "rho")]
    #[serde(rename = "rho")]
    Rho,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::DOverR => "d_over_R",
            Variable::Phi => "phi",
            Variable::Rho => "rho",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub geometry: Geometry,
    /// d_over_R for the wire; phi (default) or rho for the halfplane
    #[arg(long, value_enum)]
    pub variable: Option<Variable>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// wire radius
    #[arg(long = "R", default_value_t = 1.0)]
    pub radius: f64,
    /// fixed distance from the edge in a phi sweep
    #[arg(long, default_value_t = 1.0)]
    pub rho: f64,
    /// fixed angle in a rho sweep
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
    pub phi: f64,
    #[command(flatten)]
    pub dipole: DipoleArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    /// run only these checks (repeatable)
    #[arg(long)]
    pub only: Vec<String>,
    /// override a budget, e.g. `--tolerance wronskian=1e-10`
    #[arg(long, value_parser = parse_override)]
    pub tolerance: Vec<(String, f64)>,
    /// print the check names and exit
    #[arg(long)]
    pub list: bool,
    /// scale K_m by 1 + eps inside the Bessel checks
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub perturb_k: f64,
}

fn parse_override(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = value.parse().map_err(|e| format!("bad tolerance `{value}`: {e}"))?;
    if !(v >= 0.0 && v.is_finite()) {
        return Err(format!("tolerance must be >= 0, got {v}"));
    }
    Ok((name.to_string(), v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Reduced,
    Rationalized,
    Si,
}

impl From<Units> for cpshift_core::Units {
    fn from(u: Units) -> Self {
        match u {
            Units::Reduced => cpshift_core::Units::Reduced,
            Units::Rationalized => cpshift_core::Units::Rationalized,
            Units::Si => cpshift_core::Units::Si,
        }
    }
}
