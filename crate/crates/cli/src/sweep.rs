use cpshift_core::{DipoleMeanSquares, HalfplaneGeometry, WireGeometry};
use rayon::prelude::*;

use crate::args::{Geometry, Spacing, SweepArgs, Variable};
use crate::config::Settings;
use crate::error::CliError;
use crate::record::{halfplane_record, wire_record, Record};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: Variable,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepSpec {
    /// Defaults per geometry and variable; explicit arguments win.
    pub fn from_args(args: &SweepArgs) -> Result<Self, CliError> {
        let variable = args.variable.unwrap_or(match args.geometry {
            Geometry::Wire => Variable::DOverR,
            Geometry::Halfplane => Variable::Phi,
        });
        let (start, stop, points, spacing) = match (args.geometry, variable) {
            (Geometry::Wire, Variable::DOverR) => (0.1, 100.0, 60, Spacing::Log),
            (Geometry::Halfplane, Variable::Phi) => (0.01, std::f64::consts::PI, 60, Spacing::Linear),
            (Geometry::Halfplane, Variable::Rho) => (0.1, 10.0, 60, Spacing::Log),
            (g, v) => {
                return Err(CliError::Invalid(format!(
                    "cannot sweep {} for the {g:?} geometry",
                    v.name()
                )))
            }
        };
        let spec = SweepSpec {
            variable,
            start: args.start.unwrap_or(start),
            stop: args.stop.unwrap_or(stop),
            points: args.points.unwrap_or(points),
            spacing: args.spacing.unwrap_or(spacing),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Invalid(m));
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return bad(format!("sweep bounds must be finite, got [{}, {}]", self.start, self.stop));
        }
        if self.start >= self.stop {
            return bad(format!("sweep needs start < stop, got [{}, {}]", self.start, self.stop));
        }
        if self.points < 2 {
            return bad(format!("sweep needs at least 2 points, got {}", self.points));
        }
        if self.spacing == Spacing::Log && self.start <= 0.0 {
            return bad(format!("log spacing needs start > 0, got {}", self.start));
        }
        Ok(())
    }

    /// Grid values; the end points are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n {
                    return self.stop;
                }
                let t = i as f64 / n as f64;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * t,
                    Spacing::Log => (self.start.ln() + (self.stop / self.start).ln() * t).exp(),
                }
            })
            .collect()
    }
}

/// Computes every grid point in parallel and returns the rows in grid order.
/// Numerical failures are recorded in the row's status column.
pub fn run_sweep(
    args: &SweepArgs,
    spec: &SweepSpec,
    mu2: Option<&DipoleMeanSquares>,
    settings: &Settings,
) -> Result<Vec<Record>, CliError> {
    let grid = spec.grid();
    match args.geometry {
        Geometry::Wire => {
            let geoms = grid
                .iter()
                .map(|&x| WireGeometry::from_gap(args.radius, x * args.radius))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(geoms
                .par_iter()
                .map(|g| wire_record(g, mu2, settings).0)
                .collect())
        }
        Geometry::Halfplane => {
            let geoms = grid
                .iter()
                .map(|&x| match spec.variable {
                    Variable::Rho => HalfplaneGeometry::new(x, args.phi),
                    _ => HalfplaneGeometry::new(args.rho, x),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(geoms
                .par_iter()
                .map(|g| lead_with(spec.variable.name(), halfplane_record(g, mu2, settings)))
                .collect())
        }
    }
}

/// Moves `key` to the first column.
fn lead_with(key: &str, rec: Record) -> Record {
    let mut out = Record::new();
    if let Some(v) = rec.get(key) {
        out.insert(key.to_string(), v.clone());
    }
    for (k, v) in rec {
        if k != key {
            out.insert(k, v);
        }
    }
    out
}
