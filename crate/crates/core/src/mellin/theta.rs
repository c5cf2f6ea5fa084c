use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `Σ_{n=1}^{n_cap} 2 exp(−π n² x²)`, the theta series without its constant
/// term.
pub fn theta_series(x: f64, n_cap: u32) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("theta series needs x > 0, got {x}")));
    }
    let x2 = x * x;
    Ok((1..=n_cap).map(|n| {
        let n = f64::from(n);
        2.0 * (-PI * n * n * x2).exp()
    }).sum())
}

/// Number of terms after which the tail of [`theta_series`] is below 1e−14.
fn tail_cap(x: f64) -> u32 {
    // Tail after N terms is below 2e^{−π(N+1)²x²}/(1 − e^{−πx²}).
    let mut n = 1u32;
    loop {
        let next = f64::from(n + 1);
        let tail = 2.0 * (-PI * next * next * x * x).exp() / (1.0 - (-PI * x * x).exp());
        if tail < 1e-14 || n > 10_000_000 {
            return n;
        }
        n += 1;
    }
}

/// θ̃(x) at full double accuracy. Small arguments go through the Poisson
/// identity `θ̃(x) = θ̃(1/x)/x + 1/x − 1`.
pub fn theta_tilde(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidArgument(format!("theta series needs x > 0, got {x}")));
    }
    if x >= 1.0 {
        theta_series(x, tail_cap(x))
    } else {
        let inv = 1.0 / x;
        Ok(theta_series(inv, tail_cap(inv))? * inv + inv - 1.0)
    }
}
