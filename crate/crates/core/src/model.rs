//! Physical model, channel bookkeeping and kinematics.
//!
//! The hoop has radius `R`, mass `m_H` and moment of inertia `I = m_H R^2 / 2`
//! about a diameter. A channel pairs a particle partial wave `l` with the hoop
//! spin state of the same `l` (total angular momentum zero), so the hoop
//! carries rotational energy `hbar^2 l(l+1) / 2I`. Even waves live inside the
//! sphere `r < R`, odd waves outside. The threshold `W` is the rotational
//! energy of the lowest exterior channel, `l = 1`.
//!
//! Natural units are `hbar = m_H = R = 1` with an infinitely heavy particle,
//! in which `I = 1/2` and `W = 2`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Reduced Planck constant in J s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Boltzmann constant in J/K.
pub const BOLTZMANN_SI: f64 = 1.380_649e-23;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    hbar: f64,
    hoop_radius: f64,
    hoop_mass: f64,
    /// `None` is an infinitely heavy particle.
    particle_mass: Option<f64>,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self::natural()
    }
}

impl ModelParams {
    /// `hbar = m_H = R = 1`, infinite particle mass.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            hoop_radius: 1.0,
            hoop_mass: 1.0,
            particle_mass: None,
        }
    }

    pub fn new(
        hbar: f64,
        hoop_radius: f64,
        hoop_mass: f64,
        particle_mass: Option<f64>,
    ) -> Result<Self> {
        positive("hbar", hbar)?;
        positive("hoop_radius", hoop_radius)?;
        positive("hoop_mass", hoop_mass)?;
        if let Some(m) = particle_mass {
            positive("particle_mass", m)?;
        }
        Ok(Self {
            hbar,
            hoop_radius,
            hoop_mass,
            particle_mass,
        })
    }

    /// SI model (metres, kilograms) with the CODATA value of hbar.
    pub fn si(hoop_radius: f64, hoop_mass: f64, particle_mass: Option<f64>) -> Result<Self> {
        Self::new(HBAR_SI, hoop_radius, hoop_mass, particle_mass)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn hoop_radius(&self) -> f64 {
        self.hoop_radius
    }

    pub fn hoop_mass(&self) -> f64 {
        self.hoop_mass
    }

    pub fn particle_mass(&self) -> Option<f64> {
        self.particle_mass
    }

    pub fn reduced_mass(&self) -> f64 {
        match self.particle_mass {
            None => self.hoop_mass,
            Some(mp) => self.hoop_mass * mp / (self.hoop_mass + mp),
        }
    }

    pub fn moment_of_inertia(&self) -> f64 {
        0.5 * self.hoop_mass * self.hoop_radius * self.hoop_radius
    }

    /// Hoop rotational energy `hbar^2 l(l+1) / 2I`.
    pub fn rotational_energy(&self, l: u32) -> f64 {
        let l = f64::from(l);
        self.hbar * self.hbar * l * (l + 1.0) / (2.0 * self.moment_of_inertia())
    }

    /// Threshold `W = 2 hbar^2 / 2I`.
    pub fn threshold(&self) -> f64 {
        self.rotational_energy(1)
    }

    /// `hbar^2 / (m_H R^2)`; equals `W / 2`.
    pub fn energy_unit(&self) -> f64 {
        self.hbar * self.hbar / (self.hoop_mass * self.hoop_radius * self.hoop_radius)
    }

    /// `m_H R^2 / hbar`, the unit lifetimes are reported in.
    pub fn time_unit(&self) -> f64 {
        self.hoop_mass * self.hoop_radius * self.hoop_radius / self.hbar
    }

    /// Absolute energy for a value given in units of `W`.
    pub fn energy(&self, e_over_w: f64) -> f64 {
        e_over_w * self.threshold()
    }

    /// `(2 m_mu / hbar^2) R^2`, converting a kinetic energy into `(kR)^2`.
    pub(crate) fn k2r2_per_energy(&self) -> f64 {
        2.0 * self.reduced_mass() * self.hoop_radius * self.hoop_radius / (self.hbar * self.hbar)
    }

    /// Signed dimensionless `(kR)^2 = 2 m_mu (E - E_rot) R^2 / hbar^2`.
    pub(crate) fn signed_k2r2(&self, l: u32, energy: f64) -> f64 {
        self.k2r2_per_energy() * (energy - self.rotational_energy(l))
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {v}"),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Interior,
    Exterior,
}

/// A partial wave together with the matching hoop spin state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Channel {
    region: Region,
    l: u32,
}

impl Channel {
    /// Interior channel; `n` must be even.
    pub fn interior(n: u32) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::invalid(
                "l",
                format!("interior channels are even, got {n}"),
            ));
        }
        Ok(Self {
            region: Region::Interior,
            l: n,
        })
    }

    /// Exterior channel; `l` must be odd.
    pub fn exterior(l: u32) -> Result<Self> {
        if l % 2 != 1 {
            return Err(Error::invalid(
                "l",
                format!("exterior channels are odd, got {l}"),
            ));
        }
        Ok(Self {
            region: Region::Exterior,
            l,
        })
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn rotational_energy(&self, params: &ModelParams) -> f64 {
        params.rotational_energy(self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    Propagating,
    Evanescent,
}

/// Channel wavenumber `k` (propagating) or decay constant `kappa`
/// (evanescent), in inverse length units of the model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelWavenumber {
    pub kind: WaveKind,
    pub magnitude: f64,
}

impl ChannelWavenumber {
    pub fn is_propagating(&self) -> bool {
        self.kind == WaveKind::Propagating
    }
}

/// Wavenumber of `ch` at total energy `energy`.
///
/// At exactly `E = E_rot` the magnitude is zero and the kind is reported as
/// propagating.
pub fn wavenumber(params: &ModelParams, ch: Channel, energy: f64) -> Result<ChannelWavenumber> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(Error::Domain {
            function: "wavenumber",
            value: energy,
            reason: "energy must be positive",
        });
    }
    let k2r2 = params.signed_k2r2(ch.l, energy);
    let r = params.hoop_radius;
    Ok(if k2r2 >= 0.0 {
        ChannelWavenumber {
            kind: WaveKind::Propagating,
            magnitude: k2r2.sqrt() / r,
        }
    } else {
        ChannelWavenumber {
            kind: WaveKind::Evanescent,
            magnitude: (-k2r2).sqrt() / r,
        }
    })
}

/// Velocity used in the transit frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TransitConvention {
    /// Asymptotic kinetic energy in the exterior P channel, `E - W`.
    #[default]
    ExteriorKinetic,
    /// The full energy `E`.
    TotalEnergy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    /// `nu_T = v / 2R`
    pub transit: f64,
    /// `nu_R`, the `l: 0 -> 1` hoop transition frequency.
    pub rotational: f64,
}

impl Frequencies {
    pub fn ratio(&self) -> f64 {
        self.rotational / self.transit
    }
}

/// Transit and rotational frequencies at energy `energy > W`.
pub fn frequencies(
    params: &ModelParams,
    energy: f64,
    convention: TransitConvention,
) -> Result<Frequencies> {
    let w = params.threshold();
    if !(energy.is_finite() && energy > w) {
        return Err(Error::BelowThreshold {
            e_over_w: energy / w,
        });
    }
    let kinetic = match convention {
        TransitConvention::ExteriorKinetic => energy - w,
        TransitConvention::TotalEnergy => energy,
    };
    let v = (2.0 * kinetic / params.reduced_mass()).sqrt();
    let r = params.hoop_radius;
    // delta(L^2) = 2 hbar^2 for the 0 <-> 1 transition
    let rotational = params.hbar * 2.0 / (2.0 * PI * params.hoop_mass * r * r);
    Ok(Frequencies {
        transit: v / (2.0 * r),
        rotational,
    })
}

/// Classical rotation period of the hoop with unit spin,
/// `2 pi I / (hbar sqrt(2))`.
pub fn rotation_period(params: &ModelParams) -> f64 {
    2.0 * PI * params.moment_of_inertia() / (params.hbar * 2f64.sqrt())
}

/// Centrifugal barrier plus hoop rotational offset,
/// `hbar^2 l(l+1) / (2 m_mu r^2) + E_rot(l)`.
pub fn effective_potential(params: &ModelParams, ch: Channel, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain {
            function: "effective_potential",
            value: r,
            reason: "radius must be positive",
        });
    }
    let rh = params.hoop_radius;
    match ch.region {
        Region::Exterior if r < rh => Err(Error::Domain {
            function: "effective_potential",
            value: r,
            reason: "exterior channels need r >= R",
        }),
        Region::Interior if r > rh => Err(Error::Domain {
            function: "effective_potential",
            value: r,
            reason: "interior channels need r <= R",
        }),
        _ => {
            let l = f64::from(ch.l);
            let centrifugal =
                params.hbar * params.hbar * l * (l + 1.0) / (2.0 * params.reduced_mass() * r * r);
            Ok(centrifugal + ch.rotational_energy(params))
        }
    }
}
