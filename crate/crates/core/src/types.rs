//! Geometry, dipole and result types shared by the wire and halfplane solvers.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::SeriesPolicy;

/// Vacuum permittivity in F/m (CODATA 2022).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_818_8e-12;

/// A point in cylindrical coordinates `(rho, phi, z)`.
///
/// The `z` axis runs along the wire axis or along the edge of the halfplane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylPoint {
    pub rho: f64,
    pub phi: f64,
    pub z: f64,
}

impl CylPoint {
    pub const fn new(rho: f64, phi: f64, z: f64) -> Self {
        Self { rho, phi, z }
    }

    pub fn to_cartesian(self) -> Point3 {
        let (s, c) = self.phi.sin_cos();
        Point3::new(self.rho * c, self.rho * s, self.z)
    }

    /// Checks that the point lies strictly off the halfplane, which occupies
    /// `phi = 0` (equivalently `phi = 2 pi`).
    pub fn check_off_halfplane(self) -> Result<()> {
        if !(self.rho.is_finite() && self.phi.is_finite() && self.z.is_finite()) {
            return Err(Error::invalid(format!("non-finite point {self:?}")));
        }
        if self.rho <= 0.0 {
            return Err(Error::invalid(format!("rho must be > 0, got {}", self.rho)));
        }
        if self.phi <= 0.0 || self.phi >= TAU {
            return Err(Error::invalid(format!(
                "phi = {} lies on the conductor or outside (0, 2 pi)",
                self.phi
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn distance(self, other: Point3) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Direction of a dipole component in the local cylindrical frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Rho,
    Phi,
    Z,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::Rho, Component::Phi, Component::Z];

    pub fn name(self) -> &'static str {
        match self {
            Component::Rho => "rho",
            Component::Phi => "phi",
            Component::Z => "z",
        }
    }
}

/// The three geometric coefficients multiplying the mean-square dipole
/// components in the energy shift. Units are 1/length^3.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct XiTriple {
    pub xi_rho: f64,
    pub xi_phi: f64,
    pub xi_z: f64,
    pub err_rho: f64,
    pub err_phi: f64,
    pub err_z: f64,
}

impl XiTriple {
    /// A triple with zero error estimates.
    pub const fn exact(xi_rho: f64, xi_phi: f64, xi_z: f64) -> Self {
        Self {
            xi_rho,
            xi_phi,
            xi_z,
            err_rho: 0.0,
            err_phi: 0.0,
            err_z: 0.0,
        }
    }

    pub fn get(&self, c: Component) -> f64 {
        match c {
            Component::Rho => self.xi_rho,
            Component::Phi => self.xi_phi,
            Component::Z => self.xi_z,
        }
    }

    pub fn error(&self, c: Component) -> f64 {
        match c {
            Component::Rho => self.err_rho,
            Component::Phi => self.err_phi,
            Component::Z => self.err_z,
        }
    }

    pub(crate) fn set(&mut self, c: Component, value: f64, err: f64) {
        match c {
            Component::Rho => (self.xi_rho, self.err_rho) = (value, err),
            Component::Phi => (self.xi_phi, self.err_phi) = (value, err),
            Component::Z => (self.xi_z, self.err_z) = (value, err),
        }
    }

    /// Multiplies values and error estimates by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let f = factor.abs();
        Self {
            xi_rho: self.xi_rho * factor,
            xi_phi: self.xi_phi * factor,
            xi_z: self.xi_z * factor,
            err_rho: self.err_rho * f,
            err_phi: self.err_phi * f,
            err_z: self.err_z * f,
        }
    }

    /// `length^3 * Xi`, the dimensionless form (`d^3 Xi` for the wire,
    /// `rho^3 Xi` for the halfplane).
    pub fn dimensionless(&self, length: f64) -> Self {
        self.scaled(length * length * length)
    }

    /// Largest componentwise deviation from `other`, relative to the
    /// largest component of `other`. Unlike [`Self::max_relative_deviation`]
    /// this stays meaningful when one component of `other` vanishes.
    pub fn max_scaled_deviation(&self, other: &XiTriple) -> f64 {
        let scale = Component::ALL
            .iter()
            .map(|&c| other.get(c).abs())
            .fold(0.0, f64::max);
        Component::ALL
            .iter()
            .map(|&c| (self.get(c) - other.get(c)).abs() / scale)
            .fold(0.0, f64::max)
    }

    pub fn max_relative_deviation(&self, other: &XiTriple) -> f64 {
        Component::ALL
            .iter()
            .map(|&c| ((self.get(c) - other.get(c)) / other.get(c)).abs())
            .fold(0.0, f64::max)
    }
}

/// Mean-square dipole moment components of the atom.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DipoleMeanSquares {
    pub mu2_rho: f64,
    pub mu2_phi: f64,
    pub mu2_z: f64,
}

impl DipoleMeanSquares {
    pub fn new(mu2_rho: f64, mu2_phi: f64, mu2_z: f64) -> Result<Self> {
        for (name, v) in [("rho", mu2_rho), ("phi", mu2_phi), ("z", mu2_z)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(format!(
                    "mean-square dipole component {name} must be finite and >= 0, got {v}"
                )));
            }
        }
        Ok(Self {
            mu2_rho,
            mu2_phi,
            mu2_z,
        })
    }

    pub fn isotropic(mu2: f64) -> Result<Self> {
        Self::new(mu2, mu2, mu2)
    }

    pub fn get(&self, c: Component) -> f64 {
        match c {
            Component::Rho => self.mu2_rho,
            Component::Phi => self.mu2_phi,
            Component::Z => self.mu2_z,
        }
    }
}

/// Unit system for energy output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// `1/(4 pi eps0) = 1`; lengths and dipoles in any consistent units.
    #[default]
    Reduced,
    /// `eps0 = 1`, so the shift carries an explicit `1/(4 pi)`.
    Rationalized,
    /// Lengths in m, mean-square dipoles in C^2 m^2, energy in J.
    Si,
}

impl Units {
    /// The Coulomb prefactor `1/(4 pi eps0)` in this unit system.
    pub fn coulomb_prefactor(self) -> f64 {
        match self {
            Units::Reduced => 1.0,
            Units::Rationalized => 1.0 / (4.0 * PI),
            Units::Si => 1.0 / (4.0 * PI * VACUUM_PERMITTIVITY),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energy {
    pub value: f64,
    pub abs_error: f64,
}

/// `-(1/(4 pi eps0)) * sum_i Xi_i <mu_i^2>`; never positive.
pub fn energy_shift(xi: &XiTriple, mu2: &DipoleMeanSquares, units: Units) -> Energy {
    let pref = units.coulomb_prefactor();
    let (sum, err) = Component::ALL.iter().fold((0.0, 0.0), |(s, e), &c| {
        (s + xi.get(c) * mu2.get(c), e + xi.error(c) * mu2.get(c))
    });
    Energy {
        value: -pref * sum,
        abs_error: pref * err,
    }
}

/// Numerical tolerances shared by the wire solvers.
///
/// Tolerances apply to the dimensionless integrals evaluated in units where
/// the atom's distance from the axis is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NumericsConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub series: SeriesPolicy,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            series: SeriesPolicy::default(),
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::invalid(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::invalid(format!("abs_tol must be >= 0, got {}", self.abs_tol)));
        }
        self.series.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dipole_gives_zero_shift() {
        let xi = XiTriple::exact(1.0, 2.0, 3.0);
        let e = energy_shift(&xi, &DipoleMeanSquares::default(), Units::Reduced);
        assert_eq!(e.value, 0.0);
    }

    #[test]
    fn rationalized_units_carry_four_pi() {
        let xi = XiTriple::exact(1.0, 2.0, 3.0);
        let mu2 = DipoleMeanSquares::isotropic(1.0).unwrap();
        let r = energy_shift(&xi, &mu2, Units::Reduced).value;
        let h = energy_shift(&xi, &mu2, Units::Rationalized).value;
        assert_eq!(r, -6.0);
        assert!((h - r / (4.0 * PI)).abs() < 1e-15);
    }

    #[test]
    fn negative_dipole_rejected() {
        assert!(DipoleMeanSquares::new(1.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn halfplane_point_validation() {
        assert!(CylPoint::new(1.0, 0.0, 0.0).check_off_halfplane().is_err());
        assert!(CylPoint::new(1.0, TAU, 0.0).check_off_halfplane().is_err());
        assert!(CylPoint::new(0.0, 1.0, 0.0).check_off_halfplane().is_err());
        assert!(CylPoint::new(1.0, 1.0, 0.0).check_off_halfplane().is_ok());
    }
}
