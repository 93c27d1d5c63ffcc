//! Command-line front end for `cpshift-core`.

pub mod args;
pub mod config;
pub mod error;
pub mod output;
pub mod record;
pub mod sweep;
pub mod validate;

use cpshift_core::{DipoleMeanSquares, HalfplaneGeometry, WireGeometry};

use args::{Cli, Command, DipoleArgs, Format};
pub use error::CliError;

fn dipole(args: &DipoleArgs) -> Result<Option<DipoleMeanSquares>, CliError> {
    let Some(v) = &args.mu2 else { return Ok(None) };
    let mu2 = match v[..] {
        [iso] => DipoleMeanSquares::isotropic(iso)?,
        [a, b, c] => DipoleMeanSquares::new(a, b, c)?,
        _ => {
            return Err(CliError::Invalid(format!(
                "--mu2 takes one value or three (rho,phi,z), got {}",
                v.len()
            )))
        }
    };
    Ok(Some(mu2))
}

/// Runs one parsed invocation, writing its output. The error carries the
/// exit status.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let settings = config::resolve(&cli.common)?;
    let out = cli.common.output.as_deref();
    match &cli.command {
        Command::Wire(a) => {
            let geom = match (a.rho, a.d) {
                (Some(rho), None) => WireGeometry::new(a.radius, rho)?,
                (None, Some(d)) => WireGeometry::from_gap(a.radius, d)?,
                _ => return Err(CliError::Invalid("give exactly one of --rho and --d".into())),
            };
            let mu2 = dipole(&a.dipole)?;
            let (rec, err) = record::wire_record(&geom, mu2.as_ref(), &settings);
            if let Some(e) = err {
                return Err(e.into());
            }
            let fmt = settings.format.unwrap_or(Format::Json);
            output::emit(&output::render(&[rec], fmt)?, out)
        }
        Command::Halfplane(a) => {
            let geom = HalfplaneGeometry::new(a.rho, a.phi)?;
            let mu2 = dipole(&a.dipole)?;
            let rec = record::halfplane_record(&geom, mu2.as_ref(), &settings);
            let fmt = settings.format.unwrap_or(Format::Json);
            output::emit(&output::render(&[rec], fmt)?, out)
        }
        Command::Sweep(a) => {
            let spec = sweep::SweepSpec::from_args(a)?;
            let mu2 = dipole(&a.dipole)?;
            let rows = sweep::run_sweep(a, &spec, mu2.as_ref(), &settings)?;
            let fmt = settings.format.unwrap_or(Format::Csv);
            output::emit(&output::render(&rows, fmt)?, out)
        }
        Command::Validate(a) => {
            if a.list {
                let names: String = validate::CHECKS.iter().map(|c| format!("{}\n", c.name)).collect();
                return output::emit(names.as_bytes(), out);
            }
            let report = validate::run_suite(a, settings.numerics, settings.fingerprint.clone(), settings.timing)?;
            let mut bytes = serde_json::to_vec_pretty(&report).expect("plain data");
            bytes.push(b'\n');
            output::emit(&bytes, out)?;
            if report.passed {
                Ok(())
            } else {
                Err(CliError::ValidationFailed)
            }
        }
    }
}
