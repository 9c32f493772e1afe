//! Fits of the truncated minima and their `N -> ∞` limit.
//!
//! At fixed `N` the minima grow like `alpha_N + beta_N ln L`. The slopes
//! shrink like `N^{-p}`; `p` is fitted from `ln beta_N` against `ln N`, and
//! both `alpha_N` and `beta_N` are extrapolated linearly in `N^{-p}`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Fits with a coefficient of determination below this are rejected.
pub const MIN_R_SQUARED: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
}

impl LinearFit {
    pub fn at(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares `y = intercept + slope x`.
///
/// A perfect fit of data with no spread in `y` reports `r_squared = 1`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InsufficientData("need at least two points per fit"));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("abscissae are all equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_tot: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    let ss_res: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(LinearFit {
        intercept,
        slope,
        r_squared,
    })
}

fn require(what: &'static str, fit: LinearFit) -> Result<LinearFit> {
    if fit.r_squared >= MIN_R_SQUARED {
        Ok(fit)
    } else {
        Err(Error::PoorFit {
            what,
            r2: fit.r_squared,
            min: MIN_R_SQUARED,
        })
    }
}

/// `E(N, L) = alpha + beta ln L` at one `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogFit {
    pub n_max: u32,
    pub alpha: f64,
    pub beta: f64,
    pub r_squared: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Extrapolation {
    pub fits: Vec<LogFit>,
    /// Fitted damping exponent `p` in `beta_N ~ N^{-p}`.
    pub exponent: f64,
    pub exponent_fit: LinearFit,
    /// `lim alpha_N`, the extrapolated energy in units of `W`.
    pub bound: f64,
    /// `lim beta_N`; close to zero when the divergence is damped.
    pub slope_limit: f64,
    pub alpha_fit: LinearFit,
    pub beta_fit: LinearFit,
    /// The same limits taken linearly in `1/N`.
    pub bound_inverse_n: f64,
    pub slope_limit_inverse_n: f64,
}

/// Extrapolates minima `(N, L, E)` to `N -> ∞`, using every `N >= n_min`
/// that has at least three distinct `L`. Repeated `(N, L)` keep the lowest
/// energy.
pub fn extrapolate_bound(points: &[(u32, u32, f64)], n_min: u32) -> Result<Extrapolation> {
    let mut table: BTreeMap<u32, BTreeMap<u32, f64>> = BTreeMap::new();
    for &(n, l, e) in points {
        if n < n_min.max(1) || !e.is_finite() {
            continue;
        }
        let slot = table.entry(n).or_default().entry(l).or_insert(e);
        if e < *slot {
            *slot = e;
        }
    }
    let mut fits = Vec::new();
    for (&n, row) in &table {
        if row.len() < 3 {
            continue;
        }
        let x: Vec<f64> = row.keys().map(|&l| f64::from(l).ln()).collect();
        let y: Vec<f64> = row.values().copied().collect();
        let fit = require("ln L", linear_fit(&x, &y)?)?;
        fits.push(LogFit {
            n_max: n,
            alpha: fit.intercept,
            beta: fit.slope,
            r_squared: fit.r_squared,
            points: row.len(),
        });
    }
    if fits.len() < 3 {
        return Err(Error::InsufficientData(
            "need at least three N, each with three or more L",
        ));
    }
    if fits.iter().any(|f| f.beta <= 0.0) {
        return Err(Error::InsufficientData(
            "ln L slopes must be positive to fit their decay in N",
        ));
    }
    let ln_n: Vec<f64> = fits.iter().map(|f| f64::from(f.n_max).ln()).collect();
    let ln_b: Vec<f64> = fits.iter().map(|f| f.beta.ln()).collect();
    let exponent_fit = linear_fit(&ln_n, &ln_b)?;
    let exponent = -exponent_fit.slope;

    let alphas: Vec<f64> = fits.iter().map(|f| f.alpha).collect();
    let betas: Vec<f64> = fits.iter().map(|f| f.beta).collect();
    let xp: Vec<f64> = fits
        .iter()
        .map(|f| f64::from(f.n_max).powf(-exponent))
        .collect();
    let alpha_fit = require("alpha_N", linear_fit(&xp, &alphas)?)?;
    let beta_fit = linear_fit(&xp, &betas)?;

    let x1: Vec<f64> = fits.iter().map(|f| 1.0 / f64::from(f.n_max)).collect();
    let alpha_inv = linear_fit(&x1, &alphas)?;
    let beta_inv = linear_fit(&x1, &betas)?;

    Ok(Extrapolation {
        bound: alpha_fit.intercept,
        slope_limit: beta_fit.intercept,
        exponent,
        exponent_fit,
        alpha_fit,
        beta_fit,
        bound_inverse_n: alpha_inv.intercept,
        slope_limit_inverse_n: beta_inv.intercept,
        fits,
    })
}
