//! Rayleigh-Ritz over Bessel-function trial waves.
//!
//! For a construction energy `e W` every channel gets its free radial
//! solution at that energy, normalized to 1 at `r = R`:
//!
//! * interior `n = 0`: `j_0(k_0 r)`;
//! * interior `n >= 2`: `i_n(kappa_n r)`;
//! * exterior `l`: `k_l(kappa_l r)`, or `(R/r)^{l+1}` where `kappa_l = 0`.
//!
//! The interior amplitudes `c_n` are free. The exterior amplitudes follow
//! from projecting the interior wave at `r = R`, `a_l = (2l+1) sum_n c_n
//! O_{n,l}`. Both `<H>` and `<1>` are then quadratic forms in `c`, and the
//! smallest generalized eigenvalue is the minimum Rayleigh quotient.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::quadrature::GaussLegendre;
use crate::specfun::{sph_i_scaled, sph_j, sph_k_scaled, OverlapTable};

const QUAD_ORDER: usize = 20;
const QUAD_REL_TOL: f64 = 1e-12;
const QUAD_ABS_TOL: f64 = 1e-15;
const POWER_LAW_CUTOFF: f64 = 1e-12;

/// Radial shape in the dimensionless radius `s = r / R`.
#[derive(Debug, Clone, Copy)]
enum Radial {
    Spherical { x: f64, at_edge: f64 },
    GrowingModified { n: u32, x: f64, at_edge: f64 },
    DecayingModified { l: u32, x: f64, at_edge: f64 },
    Power { l: u32 },
}

impl Radial {
    fn interior(n: u32, k2r2: f64) -> Result<Self> {
        if n == 0 {
            let x = k2r2.max(0.0).sqrt();
            let at_edge = sph_j(0, x)?.value;
            if at_edge.abs() < 1e-8 {
                return Err(Error::Domain {
                    function: "interior trial wave",
                    value: x,
                    reason: "j_0 vanishes at the hoop radius",
                });
            }
            Ok(Radial::Spherical { x, at_edge })
        } else {
            let x = (-k2r2).sqrt();
            Ok(Radial::GrowingModified {
                n,
                x,
                at_edge: sph_i_scaled(n, x)?.value,
            })
        }
    }

    fn exterior(l: u32, k2r2: f64) -> Result<Self> {
        let x2 = -k2r2;
        if x2 <= POWER_LAW_CUTOFF {
            return Ok(Radial::Power { l });
        }
        let x = x2.sqrt();
        Ok(Radial::DecayingModified {
            l,
            x,
            at_edge: sph_k_scaled(l, x)?.value,
        })
    }

    /// Value and `d/ds` at `s > 0`.
    fn eval(&self, s: f64) -> (f64, f64) {
        match *self {
            Radial::Spherical { x, at_edge } => match sph_j(0, x * s) {
                Ok(p) => (p.value / at_edge, x * p.derivative / at_edge),
                Err(_) => (f64::NAN, f64::NAN),
            },
            Radial::GrowingModified { n, x, at_edge } => match sph_i_scaled(n, x * s) {
                Ok(p) => {
                    let g = (x * (s - 1.0)).exp() / at_edge;
                    (p.value * g, x * p.derivative * g)
                }
                Err(_) => (f64::NAN, f64::NAN),
            },
            Radial::DecayingModified { l, x, at_edge } => match sph_k_scaled(l, x * s) {
                Ok(p) => {
                    let g = (-x * (s - 1.0)).exp() / at_edge;
                    (p.value * g, x * p.derivative * g)
                }
                Err(_) => (f64::NAN, f64::NAN),
            },
            Radial::Power { l } => {
                let p = -f64::from(l + 1);
                (s.powf(p), p * s.powf(p - 1.0))
            }
        }
    }
}

/// Dimensionless radial integrals `(∫ f'^2 s^2, ∫ f^2, ∫ f^2 s^2)`.
fn radial_integrals(gl: &GaussLegendre, radial: Radial, interior: bool) -> (f64, f64, f64) {
    let int =
        |g: &dyn Fn(f64) -> f64| gl.integrate_adaptive(g, 0.0, 1.0, QUAD_REL_TOL, QUAD_ABS_TOL);
    if interior {
        let grad = int(&|s| {
            let (_, d) = radial.eval(s);
            d * d * s * s
        });
        let cent = int(&|s| radial.eval(s).0.powi(2));
        let norm = int(&|s| {
            let (f, _) = radial.eval(s);
            f * f * s * s
        });
        (grad, cent, norm)
    } else {
        // s = 1/t, ds = dt / t^2
        let grad = int(&|t| {
            let (_, d) = radial.eval(1.0 / t);
            d * d / (t * t * t * t)
        });
        let cent = int(&|t| radial.eval(1.0 / t).0.powi(2) / (t * t));
        let norm = int(&|t| radial.eval(1.0 / t).0.powi(2) / (t * t * t * t));
        (grad, cent, norm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ChannelForm {
    energy: f64,
    norm: f64,
}

/// Channel energies and norms for one construction energy, reusable for
/// every truncation within the bounds it was built with.
#[derive(Debug, Clone)]
pub struct TrialBasis {
    e: f64,
    threshold: f64,
    interior: Vec<ChannelForm>,
    exterior: Vec<ChannelForm>,
    overlaps: OverlapTable,
}

impl TrialBasis {
    /// Builds integrals for `n <= n_max` and `l <= l_max` at construction
    /// energy `e` (units of `W`), `0 < e <= 1`.
    pub fn new(params: &ModelParams, e: f64, n_max: u32, l_max: u32) -> Result<Self> {
        check_truncation(n_max, l_max)?;
        if !(e > 0.0 && e <= 1.0) {
            return Err(Error::invalid(
                "e",
                format!("construction energy must lie in (0, 1], got {e}"),
            ));
        }
        let gl = GaussLegendre::new(QUAD_ORDER);
        let energy = params.energy(e);
        let r = params.hoop_radius();
        let kin = params.hbar().powi(2) / (2.0 * params.reduced_mass());
        let form = |l: u32, radial: Radial, interior: bool| -> Result<ChannelForm> {
            let (grad, cent, norm) = radial_integrals(&gl, radial, interior);
            if !(grad.is_finite() && cent.is_finite() && norm.is_finite()) {
                return Err(Error::Domain {
                    function: "trial radial integral",
                    value: e,
                    reason: "integrand is not finite",
                });
            }
            let lf = f64::from(l);
            let ang = 4.0 * PI / (2.0 * lf + 1.0);
            let cent = if l == 0 { 0.0 } else { lf * (lf + 1.0) * cent };
            Ok(ChannelForm {
                energy: ang
                    * (kin * r * (grad + cent) + params.rotational_energy(l) * r.powi(3) * norm),
                norm: ang * r.powi(3) * norm,
            })
        };
        let interior = (0..=n_max)
            .step_by(2)
            .map(|n| form(n, Radial::interior(n, params.signed_k2r2(n, energy))?, true))
            .collect::<Result<_>>()?;
        let exterior = (1..=l_max)
            .step_by(2)
            .map(|l| {
                form(
                    l,
                    Radial::exterior(l, params.signed_k2r2(l, energy))?,
                    false,
                )
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            e,
            threshold: params.threshold(),
            interior,
            exterior,
            overlaps: OverlapTable::new(n_max, l_max),
        })
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn n_max(&self) -> u32 {
        2 * (self.interior.len() as u32 - 1)
    }

    pub fn l_max(&self) -> u32 {
        2 * self.exterior.len() as u32 - 1
    }

    /// `<H>` and `<1>` as matrices over the interior amplitudes.
    pub fn forms(&self, n_max: u32, l_max: u32) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
        check_truncation(n_max, l_max)?;
        if n_max > self.n_max() || l_max > self.l_max() {
            return Err(Error::Truncation {
                n_max,
                l_max,
                reason: "exceeds the bounds the basis was built with",
            });
        }
        let dim = (n_max / 2 + 1) as usize;
        let mut h = DMatrix::zeros(dim, dim);
        let mut m = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            h[(i, i)] += self.interior[i].energy;
            m[(i, i)] += self.interior[i].norm;
        }
        let mut v = vec![0.0; dim];
        for (j, l) in (1..=l_max).step_by(2).enumerate() {
            let ext = self.exterior[j];
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = f64::from(2 * l + 1) * self.overlaps.get(2 * i as u32, l)?;
            }
            for a in 0..dim {
                for b in 0..dim {
                    let vv = v[a] * v[b];
                    h[(a, b)] += ext.energy * vv;
                    m[(a, b)] += ext.norm * vv;
                }
            }
        }
        Ok((h, m))
    }

    /// Minimum Rayleigh quotient over the interior amplitudes, in units of `W`.
    pub fn quotient(&self, n_max: u32, l_max: u32) -> Result<f64> {
        let (h, m) = self.forms(n_max, l_max)?;
        let chol = m.cholesky().ok_or(Error::NotPositiveDefinite {
            n_max,
            l_max,
            e: self.e,
        })?;
        let l = chol.l();
        let x = l
            .solve_lower_triangular(&h)
            .ok_or(Error::NotPositiveDefinite {
                n_max,
                l_max,
                e: self.e,
            })?;
        let c = l
            .solve_lower_triangular(&x.transpose())
            .ok_or(Error::NotPositiveDefinite {
                n_max,
                l_max,
                e: self.e,
            })?;
        let c = 0.5 * (&c + c.transpose());
        let min = SymmetricEigen::new(c).eigenvalues.min();
        Ok(min / self.threshold)
    }
}

fn check_truncation(n_max: u32, l_max: u32) -> Result<()> {
    let reason = if !n_max.is_multiple_of(2) {
        Some("N must be even")
    } else if l_max % 2 != 1 {
        Some("L must be odd")
    } else if l_max < n_max + 1 {
        Some("need L >= N + 1")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::Truncation {
            n_max,
            l_max,
            reason,
        }),
        None => Ok(()),
    }
}

/// Minimum Rayleigh quotient for one `(N, L, e)`, in units of `W`.
pub fn bessel_trial_quotient(params: &ModelParams, n_max: u32, l_max: u32, e: f64) -> Result<f64> {
    TrialBasis::new(params, e, n_max, l_max)?.quotient(n_max, l_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_p_wave_integrals() {
        // (R/r)^2: ∫ f'^2 s^2 = 4/3, ∫ f^2 = 1/3, ∫ f^2 s^2 = 1
        let gl = GaussLegendre::new(QUAD_ORDER);
        let (g, c, n) = radial_integrals(&gl, Radial::Power { l: 1 }, false);
        assert!((g - 4.0 / 3.0).abs() < 1e-13);
        assert!((c - 1.0 / 3.0).abs() < 1e-13);
        assert!((n - 1.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = ModelParams::natural();
        assert!(TrialBasis::new(&p, 1.5, 0, 1).is_err());
        assert!(TrialBasis::new(&p, 0.0, 0, 1).is_err());
        assert!(TrialBasis::new(&p, 0.5, 2, 1).is_err());
        let b = TrialBasis::new(&p, 0.5, 2, 5).unwrap();
        assert!(b.quotient(4, 5).is_err());
        assert!(b.quotient(2, 3).is_ok());
    }

    #[test]
    fn larger_basis_never_raises_minimum() {
        let p = ModelParams::natural();
        let b = TrialBasis::new(&p, 1.0, 6, 9).unwrap();
        let e: Vec<f64> = [0, 2, 4, 6]
            .iter()
            .map(|&n| b.quotient(n, 9).unwrap())
            .collect();
        assert!(e.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{e:?}");
    }
}
