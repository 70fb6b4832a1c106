//! Sampled tests of the orders ⪯ (symmetric class) and ⪰_sa (self-adjoint
//! class). A `Consistent` verdict is a necessary-condition check only.

use crate::func::ScalarFunction;
use crate::means::RepresentingFunction;
use crate::monocheck::{is_operator_monotone_sampled, MonotoneConfig, MonotonicityVerdict};

/// ψ(t) = ((t+1)/2)·f(t)/g(t).
struct Psi<'a> {
    f: &'a RepresentingFunction,
    g: &'a RepresentingFunction,
}

impl ScalarFunction for Psi<'_> {
    fn eval(&self, t: f64) -> f64 {
        0.5 * (t + 1.0) * self.f.eval(t) / self.g.eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        let (f, g) = (self.f.eval(t), self.g.eval(t));
        let psi = 0.5 * (t + 1.0) * f / g;
        psi * (1.0 / (t + 1.0) + self.f.deriv(t) / f - self.g.deriv(t) / g)
    }
}

/// f(t)/g(t).
struct Quotient<'a> {
    f: &'a RepresentingFunction,
    g: &'a RepresentingFunction,
}

impl ScalarFunction for Quotient<'_> {
    fn eval(&self, t: f64) -> f64 {
        self.f.eval(t) / self.g.eval(t)
    }
    fn deriv(&self, t: f64) -> f64 {
        let (f, g) = (self.f.eval(t), self.g.eval(t));
        (f / g) * (self.f.deriv(t) / f - self.g.deriv(t) / g)
    }
}

/// Tests f ⪯ g: ψ = ((t+1)/2)·f/g must be operator monotone.
pub fn order_leq_sym(
    f: &RepresentingFunction,
    g: &RepresentingFunction,
    config: &MonotoneConfig,
) -> MonotonicityVerdict {
    is_operator_monotone_sampled(&Psi { f, g }, config)
}

/// Tests f ⪰_sa g: f/g must be operator monotone.
pub fn order_geq_sa(
    f: &RepresentingFunction,
    g: &RepresentingFunction,
    config: &MonotoneConfig,
) -> MonotonicityVerdict {
    is_operator_monotone_sampled(&Quotient { f, g }, config)
}

/// Tests f ⪯_sa g, i.e. g ⪰_sa f.
pub fn order_leq_sa(
    f: &RepresentingFunction,
    g: &RepresentingFunction,
    config: &MonotoneConfig,
) -> MonotonicityVerdict {
    order_geq_sa(g, f, config)
}
