use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;
pub const INTERVAL_TOL: f64 = 1e-14;

/// Root of `g` in [lo, hi], given a sign change (or a zero) at the ends.
///
/// Stops when the bracket is at most 1e-14·max(1, |t|) wide; running out
/// of iterations is a convergence error.
pub fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut g_lo = g(lo);
    let g_hi = g(hi);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() || g_lo.is_nan() || g_hi.is_nan() {
        return Err(Error::Convergence(format!("no sign change on [{lo:e}, {hi:e}]")));
    }
    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= INTERVAL_TOL * mid.abs().max(1.0) {
            return Ok(mid);
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!(
        "bisection did not reach width {INTERVAL_TOL:e} within {MAX_ITERATIONS} iterations"
    )))
}
