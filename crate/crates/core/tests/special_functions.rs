use fluxhoop::quadrature::GaussLegendre;
use fluxhoop::specfun::{
    legendre_p, overlap, sph_i, sph_i_scaled, sph_j, sph_j_array, sph_k, sph_k_scaled, sph_y,
    sph_y_array, OverlapTable,
};
use proptest::prelude::*;

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn jy_wronskian_to_1e12() {
    let mut worst = 0.0f64;
    for n in 0..=40 {
        for x in log_grid(0.1, 200.0, 300) {
            let j = sph_j(n, x).unwrap();
            let y = sph_y(n, x).unwrap();
            let w = j.value * y.derivative - j.derivative * y.value;
            worst = worst.max((w * x * x - 1.0).abs());
        }
    }
    assert!(worst < 1e-12, "worst relative Wronskian error {worst:e}");
}

#[test]
fn ik_wronskian() {
    // i_n k_n' - i_n' k_n = -1/x^2 with k_0 = e^{-x}/x
    for n in 0..=30 {
        for x in log_grid(0.05, 300.0, 120) {
            let i = sph_i_scaled(n, x).unwrap();
            let k = sph_k_scaled(n, x).unwrap();
            let w = i.value * k.derivative - i.derivative * k.value;
            assert!((w * x * x + 1.0).abs() < 1e-12, "n={n} x={x}: {w}");
        }
    }
}

#[test]
fn arrays_satisfy_three_term_recurrence() {
    for x in [0.3, 2.0, 17.5, 90.0] {
        let j = sph_j_array(40, x).unwrap();
        let y = sph_y_array(40, x).unwrap();
        for n in 1..40usize {
            let c = (2 * n + 1) as f64 / x;
            let rj = j[n - 1] + j[n + 1] - c * j[n];
            let ry = y[n - 1] + y[n + 1] - c * y[n];
            let sj = j[n - 1].abs() + j[n + 1].abs() + (c * j[n]).abs();
            let sy = y[n - 1].abs() + y[n + 1].abs() + (c * y[n]).abs();
            assert!(rj.abs() <= 1e-13 * sj, "j n={n} x={x}");
            assert!(ry.abs() <= 1e-13 * sy, "y n={n} x={x}");
        }
    }
}

fn double_factorial(n: i64) -> f64 {
    let mut p = 1.0;
    let mut k = n;
    while k > 1 {
        p *= k as f64;
        k -= 2;
    }
    p
}

#[test]
fn small_argument_series() {
    // j_n(x) = x^n/(2n+1)!! (1 - z/(1!(2n+3)) + z^2/(2!(2n+3)(2n+5)) - ...), z = x^2/2
    for n in 0..=10u32 {
        for x in [1e-3, 1e-2, 0.05, 0.099] {
            let z = x * x / 2.0;
            let mut term = 1.0;
            let mut sum = 1.0;
            for k in 1..6 {
                term *= -z / (k as f64 * (2 * n + 2 * k + 1) as f64);
                sum += term;
            }
            let expect = x.powi(n as i32) / double_factorial(2 * n as i64 + 1) * sum;
            let got = sph_j(n, x).unwrap().value;
            assert!(
                (got / expect - 1.0).abs() < 1e-13,
                "n={n} x={x}: {got} vs {expect}"
            );
        }
    }
}

#[test]
fn closed_forms() {
    let x: f64 = 3.7;
    let (s, c) = x.sin_cos();
    assert!((sph_j(1, x).unwrap().value - (s / (x * x) - c / x)).abs() < 1e-15);
    assert!((sph_y(1, x).unwrap().value - (-c / (x * x) - s / x)).abs() < 1e-15);
    assert!((sph_i(0, x).unwrap().value - x.sinh() / x).abs() < 1e-13);
    assert!((sph_k(0, x).unwrap().value - (-x).exp() / x).abs() < 1e-16);
    let k1 = (-x).exp() / x * (1.0 + 1.0 / x);
    assert!((sph_k(1, x).unwrap().value - k1).abs() < 1e-16);
}

#[test]
fn overlap_hand_values() {
    assert!((overlap(0, 1).unwrap() - 0.5).abs() < 1e-12);
    assert!((overlap(2, 1).unwrap() - 0.125).abs() < 1e-12);
    assert!((overlap(0, 3).unwrap() + 0.125).abs() < 1e-12);
}

#[test]
fn overlap_matches_quadrature() {
    let gl = GaussLegendre::new(64);
    let table = OverlapTable::new(40, 41);
    let mut worst = 0.0f64;
    for n in (0..=40).step_by(2) {
        for l in (1..=41).step_by(2) {
            let q = gl.integrate(
                |mu| legendre_p(n, mu).unwrap() * legendre_p(l, mu).unwrap(),
                0.0,
                1.0,
            );
            let closed = overlap(n, l).unwrap();
            assert_eq!(closed, table.get(n, l).unwrap());
            worst = worst.max((q - closed).abs());
        }
    }
    assert!(worst < 1e-12, "worst overlap error {worst:e}");
}

proptest! {
    #[test]
    fn wronskian_holds_anywhere(n in 0u32..=40, x in 0.1f64..200.0) {
        let j = sph_j(n, x).unwrap();
        let y = sph_y(n, x).unwrap();
        let w = j.value * y.derivative - j.derivative * y.value;
        prop_assert!((w * x * x - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overlaps_are_bounded(n in 0u32..60, l in 0u32..60) {
        let (n, l) = (2 * n, 2 * l + 1);
        let o = overlap(n, l).unwrap();
        prop_assert!(o.abs() <= 1.0);
        prop_assert!(o.is_finite());
    }

    #[test]
    fn parity_violations_are_errors(n in 0u32..60, l in 0u32..60) {
        let bad = n % 2 == 1 || l % 2 == 0;
        prop_assert_eq!(overlap(n, l).is_err(), bad);
    }

    #[test]
    fn legendre_is_bounded(n in 0u32..80, mu in -1.0f64..=1.0) {
        prop_assert!(legendre_p(n, mu).unwrap().abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn modified_functions_are_positive(n in 0u32..40, x in 1e-3f64..500.0) {
        prop_assert!(sph_i_scaled(n, x).unwrap().value > 0.0);
        prop_assert!(sph_k_scaled(n, x).unwrap().value > 0.0);
    }
}
