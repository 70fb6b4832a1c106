//! Real functions of one variable, with derivatives where known.

use std::sync::Arc;

/// A real function on (part of) the real line.
pub trait ScalarFunction: Send + Sync {
    fn eval(&self, t: f64) -> f64;

    /// Defaults to a central difference.
    fn deriv(&self, t: f64) -> f64 {
        central_difference(|x| self.eval(x), t)
    }
}

/// Central difference with step cbrt(ε)·|x| (cbrt(ε) at the origin).
pub fn central_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h0 = f64::EPSILON.cbrt() * if x == 0.0 { 1.0 } else { x.abs() };
    // make x ± h exactly representable so the divisor is exact
    let h = (x + h0) - x;
    (f(x + h) - f(x - h)) / (2.0 * h)
}

impl<T: ScalarFunction + ?Sized> ScalarFunction for Arc<T> {
    fn eval(&self, t: f64) -> f64 {
        (**self).eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        (**self).deriv(t)
    }
}

impl<T: ScalarFunction + ?Sized> ScalarFunction for &T {
    fn eval(&self, t: f64) -> f64 {
        (**self).eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        (**self).deriv(t)
    }
}

/// Closure-backed function; the derivative is numeric unless supplied.
pub struct FnScalar<F> {
    f: F,
    df: Option<Box<dyn Fn(f64) -> f64 + Send + Sync>>,
}

impl<F: Fn(f64) -> f64 + Send + Sync> FnScalar<F> {
    pub fn new(f: F) -> Self {
        FnScalar { f, df: None }
    }

    pub fn with_deriv(f: F, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        FnScalar { f, df: Some(Box::new(df)) }
    }
}

impl<F: Fn(f64) -> f64 + Send + Sync> ScalarFunction for FnScalar<F> {
    fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        match &self.df {
            Some(df) => df(t),
            None => central_difference(&self.f, t),
        }
    }
}

/// Log-spaced grid with `count` points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count).map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp()).collect()
        }
    }
}
