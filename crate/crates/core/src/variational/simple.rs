//! Constant interior, power-law exterior trial function.
//!
//! The interior is `1` for `r < R`. Each odd exterior wave is
//! `a_l (R/r)^{l+1} P_l(mu)` with `a_l = (2l+1) O_{0,l}` fixed by projecting
//! the interior constant onto `P_l`. All radial integrals are elementary.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::specfun::overlap;

/// Contribution of one exterior channel, angular factor and `a_l^2` included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleChannel {
    pub l: u32,
    pub amplitude: f64,
    pub gradient: f64,
    pub centrifugal: f64,
    pub rotation: f64,
    pub norm: f64,
}

impl SimpleChannel {
    pub fn energy(&self) -> f64 {
        self.gradient + self.centrifugal + self.rotation
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleTrial {
    pub channels: Vec<SimpleChannel>,
    /// Running energy sum after each channel, in units of `W`.
    pub cumulative_energy: Vec<f64>,
    /// Running norm including the interior `4 pi R^3 / 3`.
    pub cumulative_norm: Vec<f64>,
}

impl SimpleTrial {
    /// Rayleigh quotient of the full truncated trial, in units of `W`.
    pub fn quotient(&self) -> f64 {
        self.cumulative_energy.last().copied().unwrap_or(0.0)
            / self.cumulative_norm.last().copied().unwrap_or(1.0)
    }

    pub fn l_max(&self) -> u32 {
        self.channels.last().map_or(0, |c| c.l)
    }
}

/// Channel-resolved energy of the simple trial up to exterior order `l_max`.
pub fn simple_trial_energy(params: &ModelParams, l_max: u32) -> Result<SimpleTrial> {
    if l_max % 2 != 1 {
        return Err(Error::invalid(
            "L",
            format!("must be odd and >= 1, got {l_max}"),
        ));
    }
    let r = params.hoop_radius();
    let w = params.threshold();
    let kin = params.hbar().powi(2) / (2.0 * params.reduced_mass());
    let mut channels = Vec::new();
    let mut cumulative_energy = Vec::new();
    let mut cumulative_norm = Vec::new();
    let mut energy = 0.0;
    let mut norm = 4.0 * PI * r.powi(3) / 3.0;
    for l in (1..=l_max).step_by(2) {
        let lf = f64::from(l);
        let amplitude = (2.0 * lf + 1.0) * overlap(0, l)?;
        let scale = amplitude * amplitude * 4.0 * PI / (2.0 * lf + 1.0);
        let radial_norm = r.powi(3) / (2.0 * lf - 1.0);
        let ch = SimpleChannel {
            l,
            amplitude,
            gradient: scale * kin * (lf + 1.0).powi(2) * r / (2.0 * lf + 1.0),
            centrifugal: scale * kin * lf * (lf + 1.0) * r / (2.0 * lf + 1.0),
            rotation: scale * params.rotational_energy(l) * radial_norm,
            norm: scale * radial_norm,
        };
        energy += ch.energy();
        norm += ch.norm;
        channels.push(ch);
        cumulative_energy.push(energy / w);
        cumulative_norm.push(norm);
    }
    Ok(SimpleTrial {
        channels,
        cumulative_energy,
        cumulative_norm,
    })
}
