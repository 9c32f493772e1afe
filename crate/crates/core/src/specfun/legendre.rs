use crate::error::{Error, Result};

/// `P_n(mu)` by Bonnet's recurrence.
pub fn legendre_p(n: u32, mu: f64) -> Result<f64> {
    if !(mu.abs() <= 1.0) {
        return Err(Error::Domain {
            function: "legendre_p",
            value: mu,
            reason: "|mu| must not exceed 1",
        });
    }
    Ok(legendre_unchecked(n, mu))
}

pub(crate) fn legendre_unchecked(n: u32, mu: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = mu;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0) * mu * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_n(mu)` and `P_n'(mu)` for `|mu| < 1`.
pub(crate) fn legendre_with_derivative(n: u32, mu: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let p = legendre_unchecked(n, mu);
    let pm1 = legendre_unchecked(n - 1, mu);
    let nf = f64::from(n);
    (p, nf * (pm1 - mu * p) / (1.0 - mu * mu))
}
