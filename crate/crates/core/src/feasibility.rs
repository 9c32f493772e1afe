//! Order-of-magnitude sizing of a carbon-nanotube hoop holding a lead
//! particle.
//!
//! The hoop is a ring of `N` cells of `n` carbon atoms, so `R = N l_c / (2 pi)`
//! and `m_H = N n m_c`. The particle radius and mass follow from
//! `alpha = R / r_p` and `beta = m_p / m_H` with `m_p = rho (4/3) pi r_p^3`;
//! eliminating `m_p` gives
//!
//! ```text
//! N^2 = 6 pi^2 alpha^3 beta n m_c / (rho l_c^3)
//! ```
//!
//! The resonance lifetime `143 m_H R^2 / hbar` then scales as
//! `alpha^{9/2} beta^{3/2} n^{5/2}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{BOLTZMANN_SI, HBAR_SI};

/// Mass of a carbon-12 atom in kg.
pub const CARBON_MASS: f64 = 1.992_646_879_92e-26;
/// C-C bond length in m.
pub const BOND_LENGTH: f64 = 1.5e-10;
/// Density of lead in kg/m^3.
pub const LEAD_DENSITY: f64 = 1.1e4;
/// Resonance lifetime in units of `m_H R^2 / hbar`.
pub const LIFETIME_COEFFICIENT: f64 = 143.0;

/// Exponents of `(alpha, beta, n)` in the number of hoop cells.
pub const CELL_COUNT_EXPONENTS: (f64, f64, f64) = (1.5, 0.5, 0.5);
/// Exponents of `(alpha, beta, n)` in the lifetime.
pub const LIFETIME_EXPONENTS: (f64, f64, f64) = (4.5, 1.5, 2.5);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityParams {
    /// `R / r_p`
    pub alpha: f64,
    /// `m_p / m_H`
    pub beta: f64,
    /// Atoms around the minor circumference.
    pub n: f64,
    pub carbon_mass: f64,
    pub bond_length: f64,
    pub particle_density: f64,
}

impl Default for FeasibilityParams {
    fn default() -> Self {
        Self {
            alpha: 50.0,
            beta: 50.0,
            n: 50.0,
            carbon_mass: CARBON_MASS,
            bond_length: BOND_LENGTH,
            particle_density: LEAD_DENSITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub params: FeasibilityParams,
    /// Number of cells around the hoop.
    pub cells: f64,
    pub hoop_radius: f64,
    pub hoop_mass: f64,
    pub particle_radius: f64,
    pub particle_mass: f64,
    /// Resonance lifetime in seconds.
    pub lifetime: f64,
    /// `hbar^2 / (m_H R^2 k_B)` in kelvin.
    pub temperature: f64,
}

impl FeasibilityParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("n", self.n),
            ("carbon_mass", self.carbon_mass),
            ("bond_length", self.bond_length),
            ("particle_density", self.particle_density),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {v}"),
                ));
            }
        }
        Ok(())
    }

    pub fn estimate(&self) -> Result<FeasibilityReport> {
        self.validate()?;
        let cells = (6.0 * PI * PI * self.alpha.powi(3) * self.beta * self.n * self.carbon_mass
            / (self.particle_density * self.bond_length.powi(3)))
        .sqrt();
        let hoop_radius = cells * self.bond_length / (2.0 * PI);
        let hoop_mass = cells * self.n * self.carbon_mass;
        let particle_radius = hoop_radius / self.alpha;
        let particle_mass = self.particle_density * 4.0 / 3.0 * PI * particle_radius.powi(3);
        let mr2 = hoop_mass * hoop_radius * hoop_radius;
        Ok(FeasibilityReport {
            params: *self,
            cells,
            hoop_radius,
            hoop_mass,
            particle_radius,
            particle_mass,
            lifetime: LIFETIME_COEFFICIENT * mr2 / HBAR_SI,
            temperature: HBAR_SI * HBAR_SI / (mr2 * BOLTZMANN_SI),
        })
    }
}
