use std::fmt;

use crate::func::ScalarFunction;
use crate::repr::density::{DensityClass, HDensity};
use crate::repr::integral::value_and_deriv;

/// Table nodes per decade of t.
pub const NODES_PER_DECADE: usize = 64;

/// The table covers t ∈ [10^-TABLE_DECADES, 10^TABLE_DECADES].
pub const TABLE_DECADES: usize = 12;

/// Representing function of a density mean, tabulated once on a log grid.
///
/// Stores g(u) = ln f(e^u) and g'(u) = t f'(t)/f(t) at the nodes and
/// interpolates g with monotone cubic Hermite pieces. Outside the table the
/// quadrature is evaluated directly.
#[derive(Clone)]
pub struct DensityMean {
    density: HDensity,
    label: String,
    log_f: Vec<f64>,
    slope: Vec<f64>,
}

impl DensityMean {
    pub fn new(density: HDensity, label: impl Into<String>) -> Self {
        let half = TABLE_DECADES * NODES_PER_DECADE;
        let step = Self::step();
        let mut log_f = vec![0.0; 2 * half + 1];
        let mut slope = vec![0.0; 2 * half + 1];
        for k in 0..=half {
            let u = k as f64 * step;
            let t = u.exp();
            let (f, df) = value_and_deriv(&density, t);
            let (g, dg) = (f.ln(), t * df / f);
            log_f[half + k] = g;
            slope[half + k] = dg;
            // t·f(1/t) = f(t) gives g(−u) = g(u) − u; f(1/t) = 1/f(t) gives g(−u) = −g(u)
            match density.class() {
                DensityClass::Symmetric => {
                    log_f[half - k] = g - u;
                    slope[half - k] = 1.0 - dg;
                }
                DensityClass::SelfAdjoint => {
                    log_f[half - k] = -g;
                    slope[half - k] = dg;
                }
            }
        }
        log_f[half] = 0.0;
        DensityMean { density, label: label.into(), log_f, slope }
    }

    fn step() -> f64 {
        std::f64::consts::LN_10 / NODES_PER_DECADE as f64
    }

    pub fn density(&self) -> &HDensity {
        &self.density
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// (g(u), g'(u)) by Hermite interpolation, or None off the table.
    fn interpolate(&self, u: f64) -> Option<(f64, f64)> {
        let half = TABLE_DECADES * NODES_PER_DECADE;
        let step = Self::step();
        let x = u / step + half as f64;
        if !(x >= 0.0 && x <= (2 * half) as f64) {
            return None;
        }
        let k = (x.floor() as usize).min(2 * half - 1);
        let th = x - k as f64;
        let (g0, g1) = (self.log_f[k], self.log_f[k + 1]);
        let (mut m0, mut m1) = (self.slope[k] * step, self.slope[k + 1] * step);
        let delta = g1 - g0;
        // Fritsch-Carlson limiter
        if delta == 0.0 {
            m0 = 0.0;
            m1 = 0.0;
        } else {
            let a = m0 / delta;
            let b = m1 / delta;
            let r = a * a + b * b;
            if r > 9.0 {
                let tau = 3.0 / r.sqrt();
                m0 *= tau;
                m1 *= tau;
            }
        }
        let th2 = th * th;
        let th3 = th2 * th;
        let h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
        let h10 = th3 - 2.0 * th2 + th;
        let h01 = -2.0 * th3 + 3.0 * th2;
        let h11 = th3 - th2;
        let g = h00 * g0 + h10 * m0 + h01 * g1 + h11 * m1;
        let dh00 = 6.0 * th2 - 6.0 * th;
        let dh10 = 3.0 * th2 - 4.0 * th + 1.0;
        let dh01 = -dh00;
        let dh11 = 3.0 * th2 - 2.0 * th;
        let dg = (dh00 * g0 + dh10 * m0 + dh01 * g1 + dh11 * m1) / step;
        Some((g, dg))
    }
}

impl ScalarFunction for DensityMean {
    fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return f64::NAN;
        }
        match self.interpolate(t.ln()) {
            Some((g, _)) => g.exp(),
            None => value_and_deriv(&self.density, t).0,
        }
    }

    fn deriv(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return f64::NAN;
        }
        match self.interpolate(t.ln()) {
            Some((g, dg)) => g.exp() * dg / t,
            None => value_and_deriv(&self.density, t).1,
        }
    }
}

impl PartialEq for DensityMean {
    fn eq(&self, other: &Self) -> bool {
        self.density == other.density
    }
}

impl fmt::Debug for DensityMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityMean")
            .field("label", &self.label)
            .field("density", &self.density)
            .finish()
    }
}
