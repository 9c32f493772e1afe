//! Half-interval Legendre overlaps `O_{n,l} = ∫_0^1 P_n(mu) P_l(mu) dmu`
//! for even `n` and odd `l`.
//!
//! Integrating Legendre's equation by parts over `[0, 1]` leaves only the
//! boundary term at `mu = 0`, where `P_l(0) = 0` and `P_n'(0) = 0`:
//!
//! ```text
//! O_{n,l} = P_n(0) P_l'(0) / (l(l+1) - n(n+1))
//! ```

use crate::error::{Error, Result};

/// `P_n(0)` for even `n`: `(-1)^{n/2} (n-1)!! / n!!`.
fn legendre_at_zero_even(n: u32) -> f64 {
    let mut p = 1.0;
    let mut k = 2;
    while k <= n {
        p *= -f64::from(k - 1) / f64::from(k);
        k += 2;
    }
    p
}

fn check_parity(n: u32, l: u32) -> Result<()> {
    if n.is_multiple_of(2) && l % 2 == 1 {
        Ok(())
    } else {
        Err(Error::Parity { n, l })
    }
}

fn overlap_unchecked(n: u32, l: u32) -> f64 {
    // P_l'(0) = l P_{l-1}(0)
    let dpl = f64::from(l) * legendre_at_zero_even(l - 1);
    let (nf, lf) = (f64::from(n), f64::from(l));
    legendre_at_zero_even(n) * dpl / (lf * (lf + 1.0) - nf * (nf + 1.0))
}

/// `O_{n,l}` for even `n >= 0` and odd `l >= 1`.
pub fn overlap(n: u32, l: u32) -> Result<f64> {
    check_parity(n, l)?;
    Ok(overlap_unchecked(n, l))
}

/// Cached `O_{n,l}` for `n <= n_max`, `l <= l_max`; immutable once built.
#[derive(Debug, Clone)]
pub struct OverlapTable {
    n_max: u32,
    l_max: u32,
    values: Vec<f64>,
}

impl OverlapTable {
    pub fn new(n_max: u32, l_max: u32) -> Self {
        let n_max = n_max - n_max % 2;
        let l_max = if l_max.is_multiple_of(2) {
            l_max.saturating_sub(1)
        } else {
            l_max
        };
        let rows = n_max / 2 + 1;
        let cols = l_max.div_ceil(2);
        let mut values = Vec::with_capacity((rows * cols) as usize);
        for i in 0..rows {
            for j in 0..cols {
                values.push(overlap_unchecked(2 * i, 2 * j + 1));
            }
        }
        Self {
            n_max,
            l_max,
            values,
        }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Cached when inside the table bounds, computed on demand otherwise.
    pub fn get(&self, n: u32, l: u32) -> Result<f64> {
        check_parity(n, l)?;
        if n <= self.n_max && l <= self.l_max {
            let cols = self.l_max.div_ceil(2);
            Ok(self.values[((n / 2) * cols + (l - 1) / 2) as usize])
        } else {
            Ok(overlap_unchecked(n, l))
        }
    }
}
