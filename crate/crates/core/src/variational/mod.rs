//! Variational upper bounds on the lowest energy of the hoop-particle system.
//!
//! Two trial families are provided: a constant interior with power-law
//! exterior waves ([`simple_trial_energy`]), whose energy diverges
//! logarithmically in the exterior cutoff, and Bessel-function waves
//! ([`TrialBasis`]) minimized over the interior amplitudes. The Bessel
//! minima are scanned over the construction energy `e` and extrapolated to
//! an infinite interior basis with [`extrapolate_bound`].

mod bessel_trial;
mod extrapolate;
mod simple;

pub use bessel_trial::{bessel_trial_quotient, TrialBasis};
pub use extrapolate::{
    extrapolate_bound, linear_fit, Extrapolation, LinearFit, LogFit, MIN_R_SQUARED,
};
pub use simple::{simple_trial_energy, SimpleChannel, SimpleTrial};

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::parallel::try_par_map;
use crate::search::golden_min;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalResult {
    pub n_max: u32,
    pub l_max: u32,
    /// Minimum Rayleigh quotient over amplitudes and `e`, in units of `W`.
    pub e_min: f64,
    /// Construction energy at the minimum, in units of `W`.
    pub e_star: f64,
}

/// Construction energies scanned before refinement.
pub fn default_e_grid() -> Vec<f64> {
    let mut e: Vec<f64> = (1..=9).map(|i| f64::from(i) / 10.0).collect();
    e.extend_from_slice(&[0.95, 0.98, 0.99, 0.995, 0.999, 1.0]);
    e
}

/// Interior cutoffs `0, 2, ..., 12`.
pub fn default_n_values() -> Vec<u32> {
    (0..=12).step_by(2).collect()
}

/// Exterior cutoffs up to 41.
pub fn default_l_values() -> Vec<u32> {
    vec![3, 5, 7, 9, 11, 15, 21, 31, 41]
}

/// `(N, L)` pairs with `L >= N + 1`.
pub fn truncation_pairs(n_values: &[u32], l_values: &[u32]) -> Vec<(u32, u32)> {
    n_values
        .iter()
        .flat_map(|&n| {
            l_values
                .iter()
                .filter(move |&&l| l > n)
                .map(move |&l| (n, l))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariationalScan {
    /// `(N, L, e, E_min(N, L, e))` on the scan grid, in `(N, L, e)` order.
    pub samples: Vec<(u32, u32, f64, f64)>,
    /// Minimum over `e` for each `(N, L)`, refined off the grid.
    pub results: Vec<VariationalResult>,
}

/// Minimizes the Bessel-trial quotient over `e_grid` for every `(N, L)`.
///
/// One basis is built per construction energy and shared by all
/// truncations. When the lowest grid value is at an interior grid point it
/// is refined by golden section between its neighbours.
pub fn bessel_trial_scan(
    params: &ModelParams,
    pairs: &[(u32, u32)],
    e_grid: &[f64],
) -> Result<VariationalScan> {
    if pairs.is_empty() || e_grid.is_empty() {
        return Err(Error::InsufficientData("empty truncation or e grid"));
    }
    let n_top = pairs.iter().map(|p| p.0).max().unwrap_or(0);
    let l_top = pairs.iter().map(|p| p.1).max().unwrap_or(1);
    let mut e_sorted = e_grid.to_vec();
    e_sorted.sort_by(f64::total_cmp);
    e_sorted.dedup();

    let bases = try_par_map(&e_sorted, |&e| TrialBasis::new(params, e, n_top, l_top))?;
    let table = try_par_map(pairs, |&(n, l)| {
        bases
            .iter()
            .map(|b| b.quotient(n, l))
            .collect::<Result<Vec<f64>>>()
    })?;

    let results = try_par_map(&(0..pairs.len()).collect::<Vec<_>>(), |&k| {
        let (n, l) = pairs[k];
        let row = &table[k];
        let (i, &best) = row
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty grid");
        let mut result = VariationalResult {
            n_max: n,
            l_max: l,
            e_min: best,
            e_star: e_sorted[i],
        };
        if i > 0 && i + 1 < row.len() {
            let f = |e: f64| bessel_trial_quotient(params, n, l, e).unwrap_or(f64::INFINITY);
            let e = golden_min(f, e_sorted[i - 1], e_sorted[i + 1], 1e-6);
            let v = f(e);
            if v < result.e_min {
                result.e_min = v;
                result.e_star = e;
            }
        }
        Ok(result)
    })?;

    let mut samples = Vec::with_capacity(pairs.len() * e_sorted.len());
    for (k, &(n, l)) in pairs.iter().enumerate() {
        for (i, &e) in e_sorted.iter().enumerate() {
            samples.push((n, l, e, table[k][i]));
        }
    }
    Ok(VariationalScan { samples, results })
}

/// Minimum over `e_grid` (with refinement) for a single truncation.
pub fn bessel_trial_minimize(
    params: &ModelParams,
    n_max: u32,
    l_max: u32,
    e_grid: &[f64],
) -> Result<VariationalResult> {
    Ok(bessel_trial_scan(params, &[(n_max, l_max)], e_grid)?.results[0])
}

/// Default scan followed by extrapolation over `N >= 2`.
pub fn default_bound(params: &ModelParams) -> Result<(VariationalScan, Extrapolation)> {
    let pairs = truncation_pairs(&default_n_values(), &default_l_values());
    let scan = bessel_trial_scan(params, &pairs, &default_e_grid())?;
    let pts: Vec<(u32, u32, f64)> = scan
        .results
        .iter()
        .map(|r| (r.n_max, r.l_max, r.e_min))
        .collect();
    let ex = extrapolate_bound(&pts, 2)?;
    Ok((scan, ex))
}
