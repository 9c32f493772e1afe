//! Single-channel scattering with only the S wave inside and the P wave
//! outside.
//!
//! Inside, the radial function is `j_0(k_0 r)`; outside it is
//! `h_1^(2)(k_1 r) + S h_1^(1)(k_1 r)` for a unit incoming P wave.
//! Continuity of the logarithmic derivative at `r = R` fixes `S`; the
//! Legendre overlap multiplies both sides and drops out. Because the interior
//! log-derivative is real and `h^(2)` is the conjugate of `h^(1)`, `|S| = 1`
//! below the F-wave threshold.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::model::{frequencies, rotation_period, ModelParams, TransitConvention};
use crate::parallel::try_par_map;
use crate::search::{bisect, golden_max};
use crate::specfun::{sph_h1, sph_j, sph_k_scaled};

/// Upper end of the single-open-channel window in units of `W`
/// (`E_rot(3) / W`).
pub const SINGLE_CHANNEL_LIMIT: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMatrixPoint {
    pub e_over_w: f64,
    pub k1r: f64,
    pub s: Complex64,
    /// Phase shift in radians; `[0, pi)` for an isolated point, continuous
    /// along a scan after [`unwrap_phases`].
    pub delta: f64,
    /// `sin^2(delta)`, independent of the branch of `delta`.
    pub sin2_delta: f64,
    /// Inelasticity `-ln|S|`.
    pub chi: f64,
}

fn sp_s_matrix_from_kr(k0r: f64, k1r: f64) -> Result<Complex64> {
    let j0 = sph_j(0, k0r)?;
    let h1 = sph_h1(1, k1r)?;
    let (h, dh) = (h1.value, h1.derivative);
    // S = -(k1 h2' j0 - k0 j0' h2) / (k1 h1' j0 - k0 j0' h1), multiplied
    // through by j0 so zeros of j0 are harmless
    let den = k1r * dh * j0.value - k0r * j0.derivative * h;
    let num = k1r * dh.conj() * j0.value - k0r * j0.derivative * h.conj();
    Ok(-num / den)
}

fn point_from_s(e_over_w: f64, k1r: f64, s: Complex64) -> SMatrixPoint {
    let modulus = s.norm();
    let mut delta = 0.5 * s.arg();
    if delta < 0.0 {
        delta += PI;
    }
    SMatrixPoint {
        e_over_w,
        k1r,
        s,
        delta,
        sin2_delta: 0.5 * (1.0 - s.re / modulus),
        chi: 0.0 - modulus.ln(),
    }
}

/// S-matrix of the restricted S/P problem at total energy `energy > W`.
pub fn s_matrix_sp(params: &ModelParams, energy: f64) -> Result<SMatrixPoint> {
    let w = params.threshold();
    let e_over_w = energy / w;
    if !(energy.is_finite() && energy > w) {
        return Err(Error::BelowThreshold { e_over_w });
    }
    let k0r = params.signed_k2r2(0, energy).sqrt();
    let k1r = params.signed_k2r2(1, energy).sqrt();
    let s = sp_s_matrix_from_kr(k0r, k1r)?;
    Ok(point_from_s(e_over_w, k1r, s))
}

/// Shifts each `delta` by a multiple of `pi` so the sequence is continuous,
/// keeping the first point in `[0, pi)`.
pub fn unwrap_phases(points: &mut [SMatrixPoint]) {
    let Some(first) = points.first_mut() else {
        return;
    };
    first.delta = first.delta.rem_euclid(PI);
    let mut prev = first.delta;
    for p in points.iter_mut().skip(1) {
        let turns = ((prev - p.delta) / PI).round();
        p.delta += turns * PI;
        prev = p.delta;
    }
}

/// Evaluates [`s_matrix_sp`] on energies given in units of `W` and unwraps
/// the phase along the scan.
pub fn phase_scan(params: &ModelParams, e_over_w: &[f64]) -> Result<Vec<SMatrixPoint>> {
    let mut out = try_par_map(e_over_w, |&e| s_matrix_sp(params, params.energy(e)))?;
    unwrap_phases(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSearch {
    /// Coarse grid in units of `W`.
    pub grid: Grid,
    /// Refinement tolerance in units of `W`.
    pub tolerance: f64,
    pub convention: TransitConvention,
}

impl Default for ResonanceSearch {
    fn default() -> Self {
        Self {
            grid: Grid::linear(1.0001, 1.2, 400).expect("static grid"),
            tolerance: 1e-10,
            convention: TransitConvention::ExteriorKinetic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceReport {
    pub e_peak_over_w: f64,
    pub sin2_at_peak: f64,
    /// Half-maximum crossings below and above the peak, units of `W`.
    pub half_max_low: f64,
    pub half_max_high: f64,
    /// Full width at half maximum of `sin^2(delta)`, units of `W`.
    pub fwhm_over_w: f64,
    /// `tau = hbar / Delta E` in units of `m_H R^2 / hbar`.
    pub lifetime: f64,
    /// `tau` in the time unit of the model parameters.
    pub lifetime_abs: f64,
    /// `Delta E` in the energy unit of the model parameters.
    pub fwhm_abs: f64,
    /// `nu_R / nu_T` at the peak.
    pub nu_ratio: f64,
    /// `tau` over the unit-spin rotation period.
    pub rotation_ratio: f64,
}

/// Locates the first maximum of `sin^2(delta)` on the search grid and its
/// half-maximum crossings.
pub fn find_resonance(params: &ModelParams, search: &ResonanceSearch) -> Result<ResonanceReport> {
    let grid = search.grid.points();
    if grid[0] <= 1.0 {
        return Err(Error::BelowThreshold { e_over_w: grid[0] });
    }
    let sin2 = |e: f64| s_matrix_sp(params, params.energy(e)).map(|p| p.sin2_delta);
    let samples = try_par_map(&grid, |&e| sin2(e))?;
    // first local maximum that reaches above one half
    let peak_idx = (1..samples.len() - 1)
        .find(|&i| samples[i] >= samples[i - 1] && samples[i] >= samples[i + 1] && samples[i] > 0.5)
        .ok_or(Error::NoPeak(
            "no interior local maximum of sin^2(delta) above 1/2 on the grid",
        ))?;

    let sin2_or_nan = |e: f64| sin2(e).unwrap_or(f64::NAN);
    let tol = search.tolerance;
    let e_peak = golden_max(sin2_or_nan, grid[peak_idx - 1], grid[peak_idx + 1], tol);
    let sin2_at_peak = sin2(e_peak)?;

    let below = (0..peak_idx).rev().find(|&i| samples[i] < 0.5);
    let above = (peak_idx + 1..samples.len()).find(|&i| samples[i] < 0.5);
    let (Some(lo_idx), Some(hi_idx)) = (below, above) else {
        return Err(Error::NoPeak(
            "half-maximum crossings not bracketed by the grid",
        ));
    };
    let half = |e: f64| sin2_or_nan(e) - 0.5;
    let half_max_low = bisect(half, grid[lo_idx], e_peak, tol);
    let half_max_high = bisect(half, e_peak, grid[hi_idx], tol);

    let fwhm_over_w = half_max_high - half_max_low;
    let fwhm_abs = params.energy(fwhm_over_w);
    let lifetime_abs = params.hbar() / fwhm_abs;
    let nu = frequencies(params, params.energy(e_peak), search.convention)?;
    Ok(ResonanceReport {
        e_peak_over_w: e_peak,
        sin2_at_peak,
        half_max_low,
        half_max_high,
        fwhm_over_w,
        lifetime: lifetime_abs / params.time_unit(),
        lifetime_abs,
        fwhm_abs,
        nu_ratio: nu.ratio(),
        rotation_ratio: lifetime_abs / rotation_period(params),
    })
}

/// `k_0 R` at the threshold energy `W`.
fn interior_k0r_at_threshold(params: &ModelParams) -> f64 {
    params.signed_k2r2(0, params.threshold()).sqrt()
}

/// Ratio of the interior S-wave to the exterior P-wave logarithmic
/// derivative at threshold, `[k_0 R cot(k_0 R) - 1] / (-2)`.
///
/// At threshold the exterior P wave decays as `r^{-2}`, so its logarithmic
/// derivative is `-2/R`.
pub fn log_derivative_ratio_at_threshold(params: &ModelParams) -> f64 {
    let x = interior_k0r_at_threshold(params);
    (x / x.tan() - 1.0) / -2.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MismatchPoint {
    pub e_over_w: f64,
    /// `R (psi_in'/psi_in - psi_out'/psi_out)` at `r = R`.
    pub mismatch: f64,
}

fn mismatch_at(params: &ModelParams, e_over_w: f64) -> Result<f64> {
    if !(e_over_w > 0.0 && e_over_w < 1.0) {
        return Err(Error::Domain {
            function: "bound_state_scan",
            value: e_over_w,
            reason: "energies must lie strictly inside (0, W)",
        });
    }
    let energy = params.energy(e_over_w);
    let k0r = params.signed_k2r2(0, energy).sqrt();
    let kappa_r = (-params.signed_k2r2(1, energy)).sqrt();
    let interior = sph_j(0, k0r)?.log_derivative(k0r);
    let exterior = sph_k_scaled(1, kappa_r)?.log_derivative(kappa_r);
    Ok(interior - exterior)
}

/// Interior-minus-exterior logarithmic-derivative mismatch below threshold
/// with the exterior P wave evanescent. A bound state would show up as a
/// zero.
pub fn bound_state_scan(params: &ModelParams, e_over_w: &[f64]) -> Result<Vec<MismatchPoint>> {
    try_par_map(e_over_w, |&e| {
        Ok(MismatchPoint {
            e_over_w: e,
            mismatch: mismatch_at(params, e)?,
        })
    })
}

/// Number of sign changes (or exact zeros) along a mismatch curve.
pub fn sign_changes(points: &[MismatchPoint]) -> usize {
    let zeros = points.iter().filter(|p| p.mismatch == 0.0).count();
    zeros
        + points
            .windows(2)
            .filter(|w| w[0].mismatch * w[1].mismatch < 0.0)
            .count()
}
