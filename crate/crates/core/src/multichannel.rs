//! Static-hoop matching for an incident P wave with several open channels.
//!
//! Inside, each even channel `n <= N` carries `j_n(k_n r) P_n`. Outside, a
//! unit incoming `h_1^(2)(k_1 r) P_1` is accompanied by outgoing odd waves
//! `c_l u_l(r) P_l`, `l <= L`, with `u_l = h_l^(1)(k_l r)` when the channel is
//! open and `u_l = k_l(kappa_l r)` when it is closed. Projecting the exterior
//! wave onto `P_n` over the half interval `mu in [0, 1]` and requiring the
//! logarithmic derivative of each interior channel to match gives one linear
//! row per interior channel:
//!
//! ```text
//! sum_l c_l O_{n,l} (j_n x_l u_l' - x_n j_n' u_l)
//!     = -O_{n,1} (j_n x_1 h_1^(2)' - x_n j_n' h_1^(2))
//! ```
//!
//! with `x = kR` and primes on the radial functions taken with respect to
//! their argument. `(N+2)/2` rows against `(L+1)/2` unknowns requires
//! `L = N + 1`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{wavenumber, Channel, ModelParams, WaveKind};
use crate::parallel::try_par_map;
use crate::specfun::{overlap, sph_h1, sph_j, sph_k, sph_y, BesselPair};

/// Systems with a 1-norm condition number above this are reported singular.
pub const MAX_CONDITION: f64 = 1e14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncationScheme {
    n_max: u32,
    l_max: u32,
}

impl TruncationScheme {
    /// Even `n_max`, odd `l_max = n_max + 1`.
    pub fn new(n_max: u32, l_max: u32) -> Result<Self> {
        let reason = if !n_max.is_multiple_of(2) {
            Some("N must be even")
        } else if l_max % 2 != 1 {
            Some("L must be odd")
        } else if l_max != n_max + 1 {
            Some("open channel counts differ: need (N+2)/2 = (L+1)/2")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::Truncation {
                n_max,
                l_max,
                reason,
            }),
            None => Ok(Self { n_max, l_max }),
        }
    }

    /// Scheme with exterior cutoff `l_max` and the matching interior cutoff.
    pub fn from_l(l_max: u32) -> Result<Self> {
        Self::new(l_max.saturating_sub(1), l_max)
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Number of equations, equal to the number of unknowns.
    pub fn dimension(&self) -> usize {
        (self.n_max as usize + 2) / 2
    }

    pub fn interior_orders(&self) -> impl Iterator<Item = u32> {
        (0..=self.n_max).step_by(2)
    }

    pub fn exterior_orders(&self) -> impl Iterator<Item = u32> {
        (1..=self.l_max).step_by(2)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    pub e_over_w: f64,
    pub k1r: f64,
    pub truncation: TruncationScheme,
    /// `(l, c_l)` for odd `l <= L`.
    pub amplitudes: Vec<(u32, Complex64)>,
    /// 1-norm condition number of the matching matrix.
    pub condition: f64,
    /// `|A c - b| / (|A| |c|)`
    pub relative_residual: f64,
    /// `k_1 R >= 10 L`, where the high-energy limit is expected to hold.
    pub high_energy: bool,
}

impl AmplitudeSet {
    /// `S = c_1`
    pub fn s(&self) -> Complex64 {
        self.amplitudes[0].1
    }

    /// `chi` in `S = e^{2i delta} e^{-chi}`.
    pub fn chi(&self) -> f64 {
        0.0 - self.s().norm().ln()
    }

    /// `j_1^out / j_1^in = |c_1|^2`
    pub fn elasticity(&self) -> f64 {
        self.s().norm_sqr()
    }

    /// `delta` in `[0, pi)`.
    pub fn delta(&self) -> f64 {
        let d = 0.5 * self.s().arg();
        if d < 0.0 {
            d + std::f64::consts::PI
        } else {
            d
        }
    }

    /// `sum_{l > 1} |c_l|^2`
    pub fn outgoing_above_p(&self) -> f64 {
        self.amplitudes
            .iter()
            .skip(1)
            .map(|(_, c)| c.norm_sqr())
            .sum::<f64>()
            + 0.0
    }

    pub fn amplitude(&self, l: u32) -> Option<Complex64> {
        self.amplitudes
            .iter()
            .find(|(ll, _)| *ll == l)
            .map(|(_, c)| *c)
    }
}

/// Radial function and `x u'(x)` at `r = R` for an outgoing exterior wave.
fn exterior_wave(params: &ModelParams, l: u32, energy: f64) -> Result<(Complex64, Complex64)> {
    let kw = wavenumber(params, Channel::exterior(l)?, energy)?;
    let x = kw.magnitude * params.hoop_radius();
    if x == 0.0 {
        return Err(Error::ClosedChannel {
            l,
            e_over_w: energy / params.threshold(),
        });
    }
    Ok(match kw.kind {
        WaveKind::Propagating => {
            let h = sph_h1(l, x)?;
            (h.value, x * h.derivative)
        }
        WaveKind::Evanescent => {
            let k = sph_k(l, x)?;
            (
                Complex64::new(k.value, 0.0),
                Complex64::new(x * k.derivative, 0.0),
            )
        }
    })
}

fn interior_wave(params: &ModelParams, n: u32, energy: f64) -> Result<(BesselPair<f64>, f64)> {
    let kw = wavenumber(params, Channel::interior(n)?, energy)?;
    if kw.kind != WaveKind::Propagating || kw.magnitude == 0.0 {
        return Err(Error::ClosedChannel {
            l: n,
            e_over_w: energy / params.threshold(),
        });
    }
    let x = kw.magnitude * params.hoop_radius();
    Ok((sph_j(n, x)?, x))
}

fn one_norm(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves the matching system at total energy `energy` for truncation
/// `trunc`, with a unit incoming P wave.
pub fn solve_static_system(
    params: &ModelParams,
    energy: f64,
    trunc: TruncationScheme,
) -> Result<AmplitudeSet> {
    let w = params.threshold();
    let e_over_w = energy / w;
    if !(energy.is_finite() && energy > w) {
        return Err(Error::BelowThreshold { e_over_w });
    }
    let dim = trunc.dimension();
    let exterior: Vec<(Complex64, Complex64)> = trunc
        .exterior_orders()
        .map(|l| exterior_wave(params, l, energy))
        .collect::<Result<_>>()?;
    let (h1, xdh1) = exterior[0];
    let (h2, xdh2) = (h1.conj(), xdh1.conj());

    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    let mut b = DVector::<Complex64>::zeros(dim);
    for (row, n) in trunc.interior_orders().enumerate() {
        let (j, xn) = interior_wave(params, n, energy)?;
        let xdj = xn * j.derivative;
        for (col, l) in trunc.exterior_orders().enumerate() {
            let (u, xdu) = exterior[col];
            a[(row, col)] = overlap(n, l)? * (j.value * xdu - xdj * u);
        }
        b[row] = -overlap(n, 1)? * (j.value * xdh2 - xdj * h2);
    }

    let lu = a.clone().lu();
    let inverse = lu.try_inverse().ok_or(Error::SingularSystem {
        condition: f64::INFINITY,
    })?;
    let condition = one_norm(&a) * one_norm(&inverse);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::SingularSystem { condition });
    }
    let c = lu.solve(&b).ok_or(Error::SingularSystem { condition })?;
    let resid = (&a * &c - &b).norm();
    let relative_residual = resid / (a.norm() * c.norm()).max(f64::MIN_POSITIVE);

    let k1r = params.signed_k2r2(1, energy).sqrt();
    Ok(AmplitudeSet {
        e_over_w,
        k1r,
        truncation: trunc,
        amplitudes: trunc.exterior_orders().zip(c.iter().copied()).collect(),
        condition,
        relative_residual,
        high_energy: k1r >= 10.0 * f64::from(trunc.l_max),
    })
}

/// Total energy at which the exterior P wave has `k_1 R = k1r`.
pub fn energy_for_k1r(params: &ModelParams, k1r: f64) -> f64 {
    params.threshold() + k1r * k1r / params.k2r2_per_energy()
}

/// Solves the system for every `(energy, truncation)` pair, in order.
pub fn static_scan(
    params: &ModelParams,
    jobs: &[(f64, TruncationScheme)],
) -> Result<Vec<AmplitudeSet>> {
    try_par_map(jobs, |&(e, t)| solve_static_system(params, e, t))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticResidual {
    pub n: u32,
    /// `sin(a_1 - a_n)` with `a_n = k_n R - (pi/2)(n+1)`, `a_1 = k_1 R - pi/2`;
    /// vanishes exactly when the two tangent arguments differ by a multiple
    /// of `pi`.
    pub phase: f64,
    /// `(k_n tan a_n - k_1 tan a_1) / k_1`
    pub tangent: f64,
    /// Exact matching row at `c_1 = -1`, `c_{l>1} = 0`, normalized so that it
    /// tends to `phase` at large `k R`:
    /// `x_n (j_n(x_n) x_1 y_1'(x_1) - x_n j_n'(x_n) y_1(x_1))`.
    pub exact: f64,
}

/// Residuals of the high-energy conditions `k_n tan[k_n R - (pi/2)(n+1)] =
/// k_1 tan(k_1 R - pi/2)` for each interior channel under the candidate
/// solution `c_1 = -1`, `c_{l>1} = 0`.
pub fn asymptotic_check(
    params: &ModelParams,
    energy: f64,
    trunc: TruncationScheme,
) -> Result<Vec<AsymptoticResidual>> {
    let w = params.threshold();
    if !(energy > w) {
        return Err(Error::BelowThreshold {
            e_over_w: energy / w,
        });
    }
    let x1 = params.signed_k2r2(1, energy).sqrt();
    let y1 = sph_y(1, x1)?;
    let a1 = x1 - FRAC_PI_2;
    trunc
        .interior_orders()
        .map(|n| {
            let (j, xn) = interior_wave(params, n, energy)?;
            let an = xn - FRAC_PI_2 * f64::from(n + 1);
            Ok(AsymptoticResidual {
                n,
                phase: (a1 - an).sin(),
                tangent: (xn * an.tan() - x1 * a1.tan()) / x1,
                exact: xn * (j.value * x1 * y1.derivative - xn * j.derivative * y1.value),
            })
        })
        .collect()
}
