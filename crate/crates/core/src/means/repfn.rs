use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::func::ScalarFunction;

/// Which functional identity a representing function satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// t·f(1/t) = f(t)
    Symmetric,
    /// f(1/t) = 1/f(t)
    SelfAdjoint,
    /// Both identities (√t).
    SymmetricSelfAdjoint,
    General,
}

impl SymmetryClass {
    pub fn is_symmetric(self) -> bool {
        matches!(self, SymmetryClass::Symmetric | SymmetryClass::SymmetricSelfAdjoint)
    }

    pub fn is_self_adjoint(self) -> bool {
        matches!(self, SymmetryClass::SelfAdjoint | SymmetryClass::SymmetricSelfAdjoint)
    }
}

/// f(t) = 1σt for a mean σ, or any positive function on (0, ∞) handled
/// with the same machinery (ψ quotients, daggers, transposes).
#[derive(Clone)]
pub struct RepresentingFunction {
    func: Arc<dyn ScalarFunction>,
    class: SymmetryClass,
    label: String,
}

impl RepresentingFunction {
    pub fn new(label: impl Into<String>, class: SymmetryClass, func: Arc<dyn ScalarFunction>) -> Self {
        RepresentingFunction { func, class, label: label.into() }
    }

    pub fn from_fn(
        label: impl Into<String>,
        class: SymmetryClass,
        func: impl ScalarFunction + 'static,
    ) -> Self {
        Self::new(label, class, Arc::new(func))
    }

    pub fn class(&self) -> SymmetryClass {
        self.class
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluates f, failing on a non-finite result.
    pub fn try_eval(&self, t: f64) -> Result<f64> {
        let v = self.func.eval(t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Domain(format!("{} undefined at t = {t:e}", self.label)))
        }
    }

    /// t ↦ t/f(t), the representing function of the adjoint mean.
    pub fn dagger(&self) -> RepresentingFunction {
        let class = match self.class {
            SymmetryClass::Symmetric => SymmetryClass::General,
            other => other,
        };
        Self::from_fn(format!("dagger({})", self.label), class, Dagger(self.clone()))
    }

    /// t ↦ t·f(1/t), the representing function of (A, B) ↦ BσA.
    pub fn transpose(&self) -> RepresentingFunction {
        if self.class.is_symmetric() {
            return self.clone();
        }
        Self::from_fn(format!("transpose({})", self.label), self.class, Transpose(self.clone()))
    }

    /// Largest relative deviation from t·f(1/t) = f(t) on the grid.
    pub fn symmetry_defect(&self, grid: &[f64]) -> f64 {
        grid.iter()
            .map(|&t| ((t * self.eval(1.0 / t) - self.eval(t)) / self.eval(t)).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from f(1/t)·f(t) = 1 on the grid.
    pub fn self_adjoint_defect(&self, grid: &[f64]) -> f64 {
        grid.iter().map(|&t| (self.eval(1.0 / t) * self.eval(t) - 1.0).abs()).fold(0.0, f64::max)
    }
}

impl ScalarFunction for RepresentingFunction {
    fn eval(&self, t: f64) -> f64 {
        self.func.eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        self.func.deriv(t)
    }
}

impl fmt::Debug for RepresentingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepresentingFunction")
            .field("label", &self.label)
            .field("class", &self.class)
            .finish()
    }
}

/// Free function form of [`RepresentingFunction::dagger`].
pub fn dagger(f: &RepresentingFunction) -> RepresentingFunction {
    f.dagger()
}

struct Dagger(RepresentingFunction);

impl ScalarFunction for Dagger {
    fn eval(&self, t: f64) -> f64 {
        t / self.0.eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        let f = self.0.eval(t);
        (f - t * self.0.deriv(t)) / (f * f)
    }
}

struct Transpose(RepresentingFunction);

impl ScalarFunction for Transpose {
    fn eval(&self, t: f64) -> f64 {
        t * self.0.eval(1.0 / t)
    }
    fn deriv(&self, t: f64) -> f64 {
        let s = 1.0 / t;
        self.0.eval(s) - self.0.deriv(s) * s
    }
}

/// Closed-form catalog functions with analytic derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Catalog {
    Arithmetic,
    Harmonic,
    Geometric,
    Power(f64),
    Heinz(f64),
    Heron(f64),
}

impl ScalarFunction for Catalog {
    fn eval(&self, t: f64) -> f64 {
        match *self {
            Catalog::Arithmetic => 0.5 * (1.0 + t),
            Catalog::Harmonic => 2.0 * t / (1.0 + t),
            Catalog::Geometric => t.sqrt(),
            Catalog::Power(w) => t.powf(w),
            Catalog::Heinz(s) => 0.5 * (t.powf(s) + t.powf(1.0 - s)),
            Catalog::Heron(s) => s * 0.5 * (1.0 + t) + (1.0 - s) * t.sqrt(),
        }
    }

    fn deriv(&self, t: f64) -> f64 {
        match *self {
            Catalog::Arithmetic => 0.5,
            Catalog::Harmonic => 2.0 / ((1.0 + t) * (1.0 + t)),
            Catalog::Geometric => 0.5 / t.sqrt(),
            Catalog::Power(w) => w * t.powf(w - 1.0),
            Catalog::Heinz(s) => 0.5 * (s * t.powf(s - 1.0) + (1.0 - s) * t.powf(-s)),
            Catalog::Heron(s) => 0.5 * s + 0.5 * (1.0 - s) / t.sqrt(),
        }
    }
}
