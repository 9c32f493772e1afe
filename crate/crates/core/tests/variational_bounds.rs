use std::f64::consts::PI;

use fluxhoop::variational::{
    bessel_trial_quotient, bessel_trial_scan, default_bound, default_e_grid, extrapolate_bound,
    linear_fit, simple_trial_energy, truncation_pairs, TrialBasis,
};
use fluxhoop::{Error, ModelParams};
use proptest::prelude::*;

/// Composite Simpson rule with `n` (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

#[test]
fn s_plus_p_quotient_matches_direct_quadrature() {
    // interior sin(2r)/(2r), exterior 1.5 (R/r)^2 P_1, natural units, e = 1
    let j0 = |r: f64| {
        if r == 0.0 {
            1.0
        } else {
            (2.0 * r).sin() / (2.0 * r)
        }
    };
    let dj0 = |r: f64| {
        if r == 0.0 {
            0.0
        } else {
            (2.0 * r * (2.0 * r).cos() - (2.0 * r).sin()) / (2.0 * r * r)
        }
    };
    let edge = j0(1.0);
    let e_in = simpson(|r| 0.5 * (dj0(r) / edge).powi(2) * r * r, 0.0, 1.0, 20_000);
    let n_in = simpson(|r| (j0(r) / edge).powi(2) * r * r, 0.0, 1.0, 20_000);
    // exterior on t = 1/r: f = t^2, f' = -2 t^3, dr = dt / t^2
    let grad = simpson(|t| 0.5 * 4.0 * t * t, 0.0, 1.0, 2_000);
    let cent = simpson(|t| 0.5 * 2.0 * t * t, 0.0, 1.0, 2_000);
    let norm = simpson(|_| 1.0, 0.0, 1.0, 2_000);
    let a1 = 1.5;
    let ext = 4.0 * PI / 3.0 * a1 * a1;
    let h = 4.0 * PI * e_in + ext * (grad + cent + 2.0 * norm);
    let m = 4.0 * PI * n_in + ext * norm;
    let oracle = h / m / 2.0;
    let got = bessel_trial_quotient(&ModelParams::natural(), 0, 1, 1.0).unwrap();
    assert!((got - oracle).abs() < 1e-8, "{got} vs {oracle}");
}

#[test]
fn simple_trial_matches_quadrature() {
    let t = simple_trial_energy(&ModelParams::natural(), 3).unwrap();
    for ch in &t.channels {
        let l = f64::from(ch.l);
        let scale = ch.amplitude * ch.amplitude * 4.0 * PI / (2.0 * l + 1.0);
        // f = t^{l+1}, df/dr = -(l+1) t^{l+2}, dr = dt / t^2
        let n = 4_000;
        let grad = simpson(|t| 0.5 * (l + 1.0).powi(2) * t.powf(2.0 * l), 0.0, 1.0, n);
        let cent = simpson(|t| 0.5 * l * (l + 1.0) * t.powf(2.0 * l), 0.0, 1.0, n);
        let norm = simpson(|t| t.powf(2.0 * l - 2.0), 0.0, 1.0, n);
        let rot = l * (l + 1.0) * norm;
        assert!(
            (ch.gradient - scale * grad).abs() < 1e-10,
            "{ch:?} {}",
            scale * grad
        );
        assert!((ch.centrifugal - scale * cent).abs() < 1e-10);
        assert!((ch.rotation - scale * rot).abs() < 1e-10);
        assert!((ch.norm - scale * norm).abs() < 1e-10);
    }
    assert!((t.channels[0].amplitude - 1.5).abs() < 1e-15);
}

#[test]
fn simple_trial_diverges_logarithmically() {
    let t = simple_trial_energy(&ModelParams::natural(), 201).unwrap();
    let (x, y): (Vec<f64>, Vec<f64>) = t
        .channels
        .iter()
        .zip(&t.cumulative_energy)
        .filter(|(c, _)| c.l >= 21)
        .map(|(c, e)| (f64::from(c.l).ln(), *e))
        .unzip();
    let fit = linear_fit(&x, &y).unwrap();
    assert!(fit.slope > 0.0);
    assert!(fit.r_squared > 0.9);
    // l * (channel energy) levels off
    let tail: Vec<f64> = t
        .channels
        .iter()
        .rev()
        .take(20)
        .map(|c| c.energy() * f64::from(c.l))
        .collect();
    let spread = tail.iter().cloned().fold(f64::MIN, f64::max)
        - tail.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread / tail[0] < 0.05);
}

#[test]
fn minima_fall_with_n_and_grow_with_l() {
    let p = ModelParams::natural();
    let pairs = truncation_pairs(&[0, 2, 4, 6], &[7, 11, 15, 21, 31]);
    let scan = bessel_trial_scan(&p, &pairs, &[0.5, 0.9, 1.0]).unwrap();
    for a in &scan.samples {
        for b in &scan.samples {
            if b.0 == a.0 + 2 && b.1 == a.1 && b.2 == a.2 {
                assert!(b.3 <= a.3 + 1e-12, "{a:?} {b:?}");
            }
        }
    }
    for r in &scan.results {
        assert!(r.e_min > 1.0, "{r:?}");
    }
    let row: Vec<_> = scan.results.iter().filter(|r| r.n_max == 2).collect();
    let x: Vec<f64> = row.iter().map(|r| f64::from(r.l_max).ln()).collect();
    let y: Vec<f64> = row.iter().map(|r| r.e_min).collect();
    let fit = linear_fit(&x, &y).unwrap();
    assert!(fit.slope > 0.0 && fit.r_squared > 0.9);
}

#[test]
fn norm_matrix_is_positive_definite() {
    let p = ModelParams::natural();
    for e in default_e_grid() {
        let b = TrialBasis::new(&p, e, 12, 41).unwrap();
        for (n, l) in truncation_pairs(&[0, 4, 12], &[13, 41]) {
            let (_, m) = b.forms(n, l).unwrap();
            assert!(m.clone().cholesky().is_some());
            assert!(b.quotient(n, l).is_ok());
        }
    }
}

#[test]
fn default_extrapolation() {
    let (scan, ex) = default_bound(&ModelParams::natural()).unwrap();
    assert!(scan.results.iter().all(|r| r.e_min > 1.0));
    assert!((1.10..=1.18).contains(&ex.bound), "{}", ex.bound);
    assert!(ex.fits.windows(2).all(|w| w[1].beta < w[0].beta));
    assert!(ex.slope_limit.abs() < ex.fits[0].beta / 10.0);
    assert!(ex.fits.iter().all(|f| f.r_squared >= 0.9));
}

#[test]
fn synthetic_extrapolation_recovers_alpha() {
    let (a_inf, a, b, p) = (1.137, -0.4, 0.09, 0.6);
    let mut pts = Vec::new();
    for n in [2u32, 4, 6, 8, 10, 12] {
        let np = f64::from(n).powf(-p);
        for l in [3u32, 7, 15, 31] {
            pts.push((n, l, a_inf + a * np + b * np * f64::from(l).ln()));
        }
    }
    let ex = extrapolate_bound(&pts, 2).unwrap();
    assert!((ex.bound - a_inf).abs() < 1e-10);
    assert!((ex.exponent - p).abs() < 1e-10);
    assert!(ex.slope_limit.abs() < 1e-10);
}

#[test]
fn too_little_data_is_reported() {
    let pts = [(2u32, 3u32, 1.0), (2, 5, 1.1), (2, 7, 1.2)];
    assert!(matches!(
        extrapolate_bound(&pts, 2),
        Err(Error::InsufficientData(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enlarging_the_basis_never_raises_the_minimum(e in 0.05f64..=1.0, lh in 2u32..12) {
        let p = ModelParams::natural();
        let l = 2 * lh + 1;
        let b = TrialBasis::new(&p, e, l - 1, l).unwrap();
        let mut prev = f64::INFINITY;
        for n in (0..l).step_by(2) {
            let q = b.quotient(n, l).unwrap();
            prop_assert!(q <= prev + 1e-12);
            prev = q;
        }
    }
}
