use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::means::{eval_mean, MeanDescriptor};
use crate::spd::{loewner_margin, sym_eigendecompose, Matrix, SpdMatrix, PSD_ABS_FLOOR};

/// One Loewner inequality `lower ≤ upper` with its margin λ_min(upper − lower).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub name: String,
    pub margin: f64,
    /// ‖upper − lower‖_F
    pub gap_norm: f64,
    pub holds: bool,
}

impl Inequality {
    fn measure(name: &str, lower: &Matrix, upper: &Matrix, tol: f64) -> Result<Inequality> {
        let margin = loewner_margin(lower, upper)?;
        let gap_norm = (upper - lower).frobenius_norm();
        let slack = (tol * gap_norm).max(PSD_ABS_FLOOR * gap_norm.max(1.0));
        Ok(Inequality { name: name.to_string(), margin, gap_norm, holds: margin >= -slack })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub s: f64,
    pub inequalities: Vec<Inequality>,
    /// Smallest `H_{(2s−1)²}(a,b) − G_s(a,b)` over eigenvalue pairs, when A and B commute.
    pub scalar_margin: Option<f64>,
    pub holds: bool,
}

/// `A!B ≤ A#B ≤ Heinz_s ≤ Heron_{(2s−1)²} ≤ A∇B`.
pub fn verify_inequality_chain(a: &SpdMatrix, b: &SpdMatrix, s: f64, tol: f64) -> Result<ChainReport> {
    let alpha2 = (2.0 * s - 1.0).powi(2);
    let means = [
        ("harmonic", MeanDescriptor::Harmonic),
        ("geometric", MeanDescriptor::Geometric),
        ("heinz", MeanDescriptor::heinz(s)?),
        ("heron", MeanDescriptor::heron(alpha2)?),
        ("arithmetic", MeanDescriptor::Arithmetic),
    ];
    let values = means
        .iter()
        .map(|(_, m)| eval_mean(m, a, b))
        .collect::<Result<Vec<_>>>()?;
    let mut inequalities = Vec::with_capacity(4);
    for k in 0..4 {
        let name = format!("{} <= {}", means[k].0, means[k + 1].0);
        inequalities.push(Inequality::measure(&name, &values[k], &values[k + 1], tol)?);
    }
    let scalar_margin = commuting_pairs(a, b)?.map(|pairs| {
        pairs
            .iter()
            .map(|&(x, y)| scalar_heinz_heron_chain(x, y, s).bh1_margin())
            .fold(f64::INFINITY, f64::min)
    });
    let holds = inequalities.iter().all(|i| i.holds)
        && scalar_margin.is_none_or(|m| m >= -1e-12 * a.frobenius_norm().max(b.frobenius_norm()));
    Ok(ChainReport { s, inequalities, scalar_margin, holds })
}

/// `A!B ≤ AσB ≤ A∇B`.
pub fn mean_sandwich(mean: &MeanDescriptor, a: &SpdMatrix, b: &SpdMatrix, tol: f64) -> Result<[Inequality; 2]> {
    let h = eval_mean(&MeanDescriptor::Harmonic, a, b)?;
    let m = eval_mean(mean, a, b)?;
    let r = eval_mean(&MeanDescriptor::Arithmetic, a, b)?;
    Ok([
        Inequality::measure("harmonic <= mean", &h, &m, tol)?,
        Inequality::measure("mean <= arithmetic", &m, &r, tol)?,
    ])
}

/// Eigenvalue pairs (a_i, b_i) in a common eigenbasis, if A and B commute.
fn commuting_pairs(a: &Matrix, b: &Matrix) -> Result<Option<Vec<(f64, f64)>>> {
    let scale = a.frobenius_norm() * b.frobenius_norm();
    if a.commutator_norm(b) > 1e-12 * scale {
        return Ok(None);
    }
    // a generic combination separates eigenvalues shared by A
    let mix = a + &b.scale(std::f64::consts::FRAC_1_PI * a.frobenius_norm() / b.frobenius_norm());
    let basis = sym_eigendecompose(&mix)?.basis;
    let quad = |m: &Matrix, k: usize| {
        let n = m.n();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += basis.get(i, k) * m.get(i, j) * basis.get(j, k);
            }
        }
        acc
    };
    Ok(Some((0..a.n()).map(|k| (quad(a, k), quad(b, k))).collect()))
}

/// The scalar chain √(ab) ≤ G_s ≤ H_{(2s−1)²} ≤ H_{|2s−1|} ≤ (a+b)/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalarChain {
    pub geometric: f64,
    pub heinz: f64,
    pub heron_squared: f64,
    pub heron_abs: f64,
    pub arithmetic: f64,
}

impl ScalarChain {
    pub fn bh1_margin(&self) -> f64 {
        self.heron_squared - self.heinz
    }

    pub fn margins(&self) -> [f64; 4] {
        [
            self.heinz - self.geometric,
            self.heron_squared - self.heinz,
            self.heron_abs - self.heron_squared,
            self.arithmetic - self.heron_abs,
        ]
    }
}

pub fn scalar_heinz_heron_chain(a: f64, b: f64, s: f64) -> ScalarChain {
    let g = (a * b).sqrt();
    let r = 0.5 * (a + b);
    let heron = |w: f64| w * r + (1.0 - w) * g;
    let alpha = (2.0 * s - 1.0).abs();
    ScalarChain {
        geometric: g,
        heinz: 0.5 * (a.powf(s) * b.powf(1.0 - s) + a.powf(1.0 - s) * b.powf(s)),
        heron_squared: heron(alpha * alpha),
        heron_abs: heron(alpha),
        arithmetic: r,
    }
}
