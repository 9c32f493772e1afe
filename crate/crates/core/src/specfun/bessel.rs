//! Spherical Bessel, Neumann, Hankel and modified spherical Bessel functions
//! of real positive argument, each returned together with its derivative.
//!
//! * `j_n`: Miller's downward recurrence when `x <= n`, upward otherwise,
//!   normalized against the closed forms of `j_0` / `j_1`.
//! * `y_n`: upward recurrence from `y_0 = -cos x / x`.
//! * `h_n^(1,2) = j_n ± i y_n`.
//! * `i_n`: downward recurrence normalized by `i_0 = sinh x / x`.
//! * `k_n`: upward recurrence from `k_0 = e^{-x} / x`.
//!
//! The third-kind modified function uses `k_0(x) = e^{-x}/x` without the
//! `pi/2` prefactor some references carry. Only logarithmic derivatives and
//! amplitude ratios enter the physics, so the normalization is immaterial
//! as long as it is used consistently.
//!
//! `i_n` and `k_n` are also available exponentially scaled
//! (`e^{-x} i_n`, `e^{x} k_n`) for arguments where the plain values would
//! overflow or underflow.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    J,
    Y,
    H1,
    H2,
    I,
    K,
}

/// Function value and first derivative with respect to the argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselPair<T> {
    pub value: T,
    pub derivative: T,
}

impl BesselPair<f64> {
    /// `x f'(x) / f(x)`
    pub fn log_derivative(&self, x: f64) -> f64 {
        x * self.derivative / self.value
    }

    fn to_complex(self) -> BesselPair<Complex64> {
        BesselPair {
            value: Complex64::new(self.value, 0.0),
            derivative: Complex64::new(self.derivative, 0.0),
        }
    }
}

const RESCALE_ABOVE: f64 = 1e200;
const RESCALE_BY: f64 = 1e-200;

fn check_argument(function: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            reason: "argument must be finite and > 0",
        })
    }
}

fn miller_start(nmax: u32, x: f64) -> u32 {
    let base = f64::from(nmax) + x.ceil();
    (base + 20.0 + (40.0 * (base + 1.0)).sqrt()) as u32
}

/// Runs `f_{k-1} = (2k+1)/x f_k + sign * f_{k+1}` downward from a large
/// order and returns unnormalized `f_0 ..= f_nmax`.
fn downward(nmax: u32, x: f64, sign: f64) -> Vec<f64> {
    let start = miller_start(nmax, x);
    let mut out = vec![0.0; nmax as usize + 1];
    let mut upper = 0.0; // f_{k+1}
    let mut cur = 1e-30; // f_k
    for k in (1..=start).rev() {
        let lower = f64::from(2 * k + 1) / x * cur + sign * upper;
        upper = cur;
        cur = lower;
        if k <= nmax {
            out[k as usize] = upper;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            upper *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
    }
    out[0] = cur;
    out
}

/// `j_0 ..= j_nmax` at `x > 0`.
pub fn sph_j_array(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_argument("sph_j", x)?;
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    if nmax == 0 {
        return Ok(vec![j0]);
    }
    if x > f64::from(nmax) {
        let mut out = Vec::with_capacity(nmax as usize + 1);
        out.push(j0);
        out.push((j0 - c) / x);
        for k in 1..nmax {
            let next = f64::from(2 * k + 1) / x * out[k as usize] - out[k as usize - 1];
            out.push(next);
        }
        return Ok(out);
    }
    let mut f = downward(nmax, x, -1.0);
    // j_0 has zeros at multiples of pi; normalize against the larger of j_0, j_1
    let scale = if x < 1.0 {
        j0 / f[0]
    } else {
        let j1 = (j0 - c) / x;
        if j0.abs() >= j1.abs() {
            j0 / f[0]
        } else {
            j1 / f[1]
        }
    };
    f.iter_mut().for_each(|v| *v *= scale);
    Ok(f)
}

/// `y_0 ..= y_nmax` at `x > 0`.
pub fn sph_y_array(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_argument("sph_y", x)?;
    let (s, c) = x.sin_cos();
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(-c / x);
    if nmax >= 1 {
        out.push(-c / (x * x) - s / x);
    }
    for k in 1..nmax {
        let next = f64::from(2 * k + 1) / x * out[k as usize] - out[k as usize - 1];
        if !next.is_finite() {
            return Err(Error::Range {
                function: "sph_y",
                order: k + 1,
                x,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// `e^{-x} i_0 ..= e^{-x} i_nmax` at `x > 0`.
pub fn sph_i_scaled_array(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_argument("sph_i", x)?;
    let i0 = -(-2.0 * x).exp_m1() / (2.0 * x);
    let mut f = downward(nmax, x, 1.0);
    let scale = i0 / f[0];
    f.iter_mut().for_each(|v| *v *= scale);
    Ok(f)
}

/// `e^{x} k_0 ..= e^{x} k_nmax` at `x > 0`.
pub fn sph_k_scaled_array(nmax: u32, x: f64) -> Result<Vec<f64>> {
    check_argument("sph_k", x)?;
    let mut out = Vec::with_capacity(nmax as usize + 1);
    out.push(1.0 / x);
    if nmax >= 1 {
        out.push((1.0 + 1.0 / x) / x);
    }
    for k in 1..nmax {
        let next = out[k as usize - 1] + f64::from(2 * k + 1) / x * out[k as usize];
        if !next.is_finite() {
            return Err(Error::Range {
                function: "sph_k",
                order: k + 1,
                x,
            });
        }
        out.push(next);
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Range {
            function: "sph_k",
            order: 0,
            x,
        });
    }
    Ok(out)
}

/// Derivative of order `n` from an array holding orders `0..=max(n, 1)`,
/// for the families obeying `f_n' = f_{n-1} - (n+1)/x f_n` and
/// `f_0' = sign0 * f_1`.
fn derivative_from(arr: &[f64], n: u32, x: f64, sign_lower: f64, sign0: f64) -> f64 {
    let n_us = n as usize;
    if n == 0 {
        sign0 * arr[1]
    } else {
        sign_lower * arr[n_us - 1] - f64::from(n + 1) / x * arr[n_us]
    }
}

pub fn sph_j(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let arr = sph_j_array(n.max(1), x)?;
    Ok(BesselPair {
        value: arr[n as usize],
        derivative: derivative_from(&arr, n, x, 1.0, -1.0),
    })
}

pub fn sph_y(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let arr = sph_y_array(n.max(1), x)?;
    Ok(BesselPair {
        value: arr[n as usize],
        derivative: derivative_from(&arr, n, x, 1.0, -1.0),
    })
}

/// `e^{-x} i_n(x)` and `e^{-x} i_n'(x)`.
pub fn sph_i_scaled(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let arr = sph_i_scaled_array(n.max(1), x)?;
    Ok(BesselPair {
        value: arr[n as usize],
        derivative: derivative_from(&arr, n, x, 1.0, 1.0),
    })
}

/// `e^{x} k_n(x)` and `e^{x} k_n'(x)`.
pub fn sph_k_scaled(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let arr = sph_k_scaled_array(n.max(1), x)?;
    Ok(BesselPair {
        value: arr[n as usize],
        derivative: derivative_from(&arr, n, x, -1.0, -1.0),
    })
}

fn unscale(
    function: &'static str,
    n: u32,
    x: f64,
    p: BesselPair<f64>,
    factor: f64,
) -> Result<BesselPair<f64>> {
    let out = BesselPair {
        value: p.value * factor,
        derivative: p.derivative * factor,
    };
    if out.value.is_finite() && out.derivative.is_finite() {
        Ok(out)
    } else {
        Err(Error::Range {
            function,
            order: n,
            x,
        })
    }
}

pub fn sph_i(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let p = sph_i_scaled(n, x)?;
    unscale("sph_i", n, x, p, x.exp())
}

pub fn sph_k(n: u32, x: f64) -> Result<BesselPair<f64>> {
    let p = sph_k_scaled(n, x)?;
    unscale("sph_k", n, x, p, (-x).exp())
}

pub fn sph_h1(n: u32, x: f64) -> Result<BesselPair<Complex64>> {
    let j = sph_j(n, x)?;
    let y = sph_y(n, x)?;
    Ok(BesselPair {
        value: Complex64::new(j.value, y.value),
        derivative: Complex64::new(j.derivative, y.derivative),
    })
}

pub fn sph_h2(n: u32, x: f64) -> Result<BesselPair<Complex64>> {
    let h = sph_h1(n, x)?;
    Ok(BesselPair {
        value: h.value.conj(),
        derivative: h.derivative.conj(),
    })
}

/// Any of the six spherical families, as complex numbers.
pub fn sph_bessel(kind: BesselKind, n: u32, x: f64) -> Result<BesselPair<Complex64>> {
    match kind {
        BesselKind::J => sph_j(n, x).map(BesselPair::to_complex),
        BesselKind::Y => sph_y(n, x).map(BesselPair::to_complex),
        BesselKind::H1 => sph_h1(n, x),
        BesselKind::H2 => sph_h2(n, x),
        BesselKind::I => sph_i(n, x).map(BesselPair::to_complex),
        BesselKind::K => sph_k(n, x).map(BesselPair::to_complex),
    }
}
