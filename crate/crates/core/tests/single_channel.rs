use std::f64::consts::PI;

use fluxhoop::model::rotation_period;
use fluxhoop::scattering::{
    bound_state_scan, find_resonance, log_derivative_ratio_at_threshold, phase_scan, s_matrix_sp,
    sign_changes, ResonanceSearch, SINGLE_CHANNEL_LIMIT,
};
use fluxhoop::ModelParams;
use num_complex::Complex64;
use proptest::prelude::*;

/// S from elementary closed forms: j_0 = sin x / x and
/// h_1(x) = -e^{ix} (x + i) / x^2.
fn closed_form_s(e_over_w: f64) -> Complex64 {
    let k0 = (4.0 * e_over_w).sqrt();
    let k1 = (4.0 * (e_over_w - 1.0)).sqrt();
    let i = Complex64::i();
    let h1 = |x: f64| -(i * x).exp() * (x + i) / (x * x);
    let dh1 = |x: f64| {
        // d/dx[-e^{ix}(x+i)/x^2]
        let e = (i * x).exp();
        -(i * e * (x + i) + e) / (x * x) + 2.0 * e * (x + i) / (x * x * x)
    };
    let interior = k0 * (k0.cos() / k0.sin() - 1.0 / k0);
    let lh1 = k1 * dh1(k1) / h1(k1);
    let lh2 = k1 * dh1(k1).conj() / h1(k1).conj();
    -(h1(k1).conj() / h1(k1)) * (interior - lh2) / (interior - lh1)
}

#[test]
fn matches_closed_form_oracle() {
    let p = ModelParams::natural();
    for i in 0..200 {
        let e = 1.0005 + 4.99 * f64::from(i) / 199.0;
        let s = s_matrix_sp(&p, p.energy(e)).unwrap().s;
        let o = closed_form_s(e);
        assert!((s - o).norm() < 1e-11, "E/W={e}: {s} vs {o}");
    }
}

#[test]
fn unitary_over_whole_window() {
    let p = ModelParams::natural();
    let grid: Vec<f64> = (1..=5000)
        .map(|i| 1.0 + (SINGLE_CHANNEL_LIMIT - 1.0) * f64::from(i) / 5001.0)
        .collect();
    for pt in phase_scan(&p, &grid).unwrap() {
        assert!((pt.s.norm() - 1.0).abs() < 1e-12, "{}", pt.e_over_w);
        assert!(pt.chi.abs() < 1e-12);
    }
}

#[test]
fn threshold_ratio() {
    let r = log_derivative_ratio_at_threshold(&ModelParams::natural());
    let cot2 = 1.0 / 2f64.tan();
    assert!((r - (1.0 - 2.0 * cot2) / 2.0).abs() < 1e-12);
    assert!((r - 0.958).abs() < 1e-3);
}

#[test]
fn resonance_near_threshold() {
    let p = ModelParams::natural();
    let r = find_resonance(&p, &ResonanceSearch::default()).unwrap();
    assert!(
        (1.010..=1.016).contains(&r.e_peak_over_w),
        "{}",
        r.e_peak_over_w
    );
    assert!((r.sin2_at_peak - 1.0).abs() < 1e-9);
    assert!((120.0..=165.0).contains(&r.lifetime), "{}", r.lifetime);
    assert!((r.lifetime * r.fwhm_abs - 1.0).abs() < 1e-15);
    assert!((r.rotation_ratio - r.lifetime / rotation_period(&p)).abs() < 1e-9);
    assert!((50.0..=300.0).contains(&r.rotation_ratio));
    assert!((2.5..=3.1).contains(&r.nu_ratio));
    // delta passes pi/2 at the peak
    let at = s_matrix_sp(&p, p.energy(r.e_peak_over_w)).unwrap();
    assert!((at.delta - PI / 2.0).abs() < 1e-4);
}

#[test]
fn no_bound_state_below_threshold() {
    let p = ModelParams::natural();
    let grid: Vec<f64> = (0..2000)
        .map(|i| 0.05 + 0.949 * f64::from(i) / 1999.0)
        .collect();
    let pts = bound_state_scan(&p, &grid).unwrap();
    assert_eq!(sign_changes(&pts), 0);
    assert!(pts.iter().all(|m| m.mismatch > 0.0));
    // approaches 2 cot 2 + 1 as E -> W
    let last = bound_state_scan(&p, &[1.0 - 1e-9]).unwrap()[0].mismatch;
    assert!((last - (2.0 / 2f64.tan() + 1.0)).abs() < 1e-3);
}

proptest! {
    #[test]
    fn unitarity_anywhere(e in 1.0000001f64..5.9999) {
        let p = ModelParams::natural();
        let pt = s_matrix_sp(&p, p.energy(e)).unwrap();
        prop_assert!((pt.s.norm() - 1.0).abs() < 1e-12);
        prop_assert!((0.0..PI).contains(&pt.delta));
        prop_assert!((0.0..=1.0).contains(&pt.sin2_delta));
    }

    #[test]
    fn independent_of_hoop_size(e in 1.001f64..5.9, r in 0.1f64..10.0, m in 0.1f64..10.0) {
        let a = ModelParams::natural();
        let b = ModelParams::new(1.0, r, m, None).unwrap();
        let sa = s_matrix_sp(&a, a.energy(e)).unwrap().s;
        let sb = s_matrix_sp(&b, b.energy(e)).unwrap().s;
        prop_assert!((sa - sb).norm() < 1e-10);
    }
}
