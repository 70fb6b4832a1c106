//! Composite Gauss-Legendre quadrature.

use std::sync::OnceLock;

/// Nodes per panel.
pub const GL_NODES: usize = 64;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on P_n from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Shared 64-node rule.
    pub fn standard() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(GL_NODES))
    }

    /// ∫_a^b f on a single panel.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p, d)
}

/// Splits [a, b] into panels graded geometrically toward the endpoint
/// nearest to each pole in `poles` (all poles lie outside [a, b]).
///
/// A pole at distance d from the interval gets panels of width d, 2d, 4d, ...
/// starting at the near endpoint, so every panel is at least its own width
/// away from the pole.
pub fn graded_breaks(a: f64, b: f64, poles: &[f64]) -> Vec<f64> {
    let len = b - a;
    let mut cuts = vec![a, b];
    for &p in poles {
        if !p.is_finite() || (a..=b).contains(&p) {
            continue;
        }
        let (near, dir, dist) = if p < a { (a, 1.0, a - p) } else { (b, -1.0, p - b) };
        if dist >= len {
            continue;
        }
        let mut w = dist.max(len * 1e-300);
        let mut offset = 0.0;
        while offset + w < len {
            offset += w;
            cuts.push(near + dir * offset);
            w *= 2.0;
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 4.0 * f64::EPSILON * x.abs().max(y.abs()));
    cuts
}

/// ∫_a^b f with panels graded toward the given poles.
pub fn integrate_graded(a: f64, b: f64, poles: &[f64], mut f: impl FnMut(f64) -> f64) -> f64 {
    let rule = GaussLegendre::standard();
    graded_breaks(a, b, poles).windows(2).map(|w| rule.integrate(w[0], w[1], &mut f)).sum()
}
