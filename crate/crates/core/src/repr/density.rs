use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which integral representation a density parameterizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityClass {
    /// Symmetric means, density on [0, 1].
    #[serde(rename = "sym")]
    Symmetric,
    /// Self-adjoint means, density on [−1, 0].
    #[serde(rename = "sa")]
    SelfAdjoint,
}

impl DensityClass {
    pub fn domain(self) -> (f64, f64) {
        match self {
            DensityClass::Symmetric => (0.0, 1.0),
            DensityClass::SelfAdjoint => (-1.0, 0.0),
        }
    }
}

/// Piecewise-constant density with values in [0, 1].
///
/// `values[k]` holds on `[breaks[k], breaks[k + 1])`; the first and last
/// breaks are the endpoints of the class domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HDensityJson", into = "HDensityJson")]
pub struct HDensity {
    class: DensityClass,
    breaks: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
pub struct HDensityJson {
    pub class: DensityClass,
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

impl TryFrom<HDensityJson> for HDensity {
    type Error = Error;
    fn try_from(j: HDensityJson) -> Result<Self> {
        HDensity::new(j.class, j.breaks, j.values)
    }
}

impl From<HDensity> for HDensityJson {
    fn from(h: HDensity) -> Self {
        HDensityJson { class: h.class, breaks: h.breaks, values: h.values }
    }
}

/// Outcome of comparing two densities, phrased as the order of the
/// functions they represent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HOrder {
    Equal,
    /// f ⪯ g (symmetric) or f ⪯_sa g (self-adjoint).
    Below,
    /// f ⪰ g (symmetric) or f ⪰_sa g (self-adjoint).
    Above,
    Incomparable,
}

impl HOrder {
    pub fn reversed(self) -> HOrder {
        match self {
            HOrder::Below => HOrder::Above,
            HOrder::Above => HOrder::Below,
            other => other,
        }
    }
}

/// Total breakpoint length below which two densities count as equal a.e.
pub const NULL_MEASURE: f64 = 1e-12;

impl HDensity {
    pub fn new(class: DensityClass, breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let (lo, hi) = class.domain();
        if breaks.len() < 2 || values.len() != breaks.len() - 1 {
            return Err(Error::Structural(format!(
                "density needs k+1 breaks for k values (got {} breaks, {} values)",
                breaks.len(),
                values.len()
            )));
        }
        if breaks[0] != lo || *breaks.last().unwrap() != hi {
            return Err(Error::Structural(format!(
                "density breaks must start at {lo} and end at {hi}"
            )));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Structural("density breaks must be strictly increasing".into()));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Structural(format!("density value {v} outside [0, 1]")));
        }
        Ok(HDensity { class, breaks, values })
    }

    pub fn constant(class: DensityClass, value: f64) -> Result<Self> {
        let (lo, hi) = class.domain();
        Self::new(class, vec![lo, hi], vec![value])
    }

    pub fn class(&self) -> DensityClass {
        self.class
    }

    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// (start, end, value) for each piece.
    pub fn pieces(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breaks.windows(2).zip(&self.values).map(|(w, &v)| (w[0], w[1], v))
    }

    pub fn value_at(&self, lambda: f64) -> f64 {
        let idx = self.breaks.partition_point(|&b| b <= lambda);
        let k = idx.saturating_sub(1).min(self.values.len() - 1);
        self.values[k]
    }

    /// h ↦ 1 − h. For the self-adjoint class this is the density of t/f(t).
    pub fn complement(&self) -> HDensity {
        HDensity {
            class: self.class,
            breaks: self.breaks.clone(),
            values: self.values.iter().map(|v| 1.0 - v).collect(),
        }
    }

    /// Merges adjacent pieces with equal values.
    pub fn simplified(&self) -> HDensity {
        let mut breaks = vec![self.breaks[0]];
        let mut values: Vec<f64> = Vec::new();
        for (_, end, v) in self.pieces() {
            if values.last() == Some(&v) {
                *breaks.last_mut().unwrap() = end;
            } else {
                values.push(v);
                breaks.push(end);
            }
        }
        HDensity { class: self.class, breaks, values }
    }

    fn check_same_class(&self, other: &HDensity) -> Result<()> {
        if self.class == other.class {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "density class mismatch: {:?} vs {:?}",
                self.class, other.class
            )))
        }
    }

    /// Pieces of the common refinement: (start, end, self value, other value).
    fn merged(&self, other: &HDensity) -> Vec<(f64, f64, f64, f64)> {
        let mut cuts: Vec<f64> = self.breaks.iter().chain(&other.breaks).copied().collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        cuts.windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                (w[0], w[1], self.value_at(mid), other.value_at(mid))
            })
            .collect()
    }

    fn combine(&self, other: &HDensity, op: impl Fn(f64, f64) -> f64) -> HDensity {
        let merged = self.merged(other);
        let mut breaks = vec![merged[0].0];
        breaks.extend(merged.iter().map(|m| m.1));
        let values = merged.iter().map(|m| op(m.2, m.3)).collect();
        HDensity { class: self.class, breaks, values }.simplified()
    }

    /// Random step density with `pieces` pieces; values in [0, 1].
    pub fn random<R: Rng + ?Sized>(rng: &mut R, class: DensityClass, pieces: usize) -> HDensity {
        let (lo, hi) = class.domain();
        let pieces = pieces.max(1);
        let mut inner: Vec<f64> =
            (0..pieces - 1).map(|_| lo + (hi - lo) * rng.random_range(0.02..0.98)).collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        let mut breaks = vec![lo];
        breaks.extend(inner);
        breaks.push(hi);
        let values = (0..breaks.len() - 1).map(|_| rng.random::<f64>()).collect();
        HDensity { class, breaks, values }
    }
}

/// Compares two densities of the same class on their merged breakpoints.
///
/// Symmetric class: h_f ≥ h_g a.e. means f ⪯ g. Self-adjoint class:
/// h_f ≥ h_g a.e. means f ⪰_sa g.
pub fn h_order(hf: &HDensity, hg: &HDensity) -> Result<HOrder> {
    hf.check_same_class(hg)?;
    let (mut above, mut below) = (0.0, 0.0);
    for (a, b, vf, vg) in hf.merged(hg) {
        if vf > vg {
            above += b - a;
        } else if vf < vg {
            below += b - a;
        }
    }
    let f_ge_g = below < NULL_MEASURE;
    let f_le_g = above < NULL_MEASURE;
    let verdict = match (f_ge_g, f_le_g) {
        (true, true) => HOrder::Equal,
        (true, false) => match hf.class {
            DensityClass::Symmetric => HOrder::Below,
            DensityClass::SelfAdjoint => HOrder::Above,
        },
        (false, true) => match hf.class {
            DensityClass::Symmetric => HOrder::Above,
            DensityClass::SelfAdjoint => HOrder::Below,
        },
        (false, false) => HOrder::Incomparable,
    };
    Ok(verdict)
}

/// Lattice meet and join in the order of the class.
///
/// Symmetric: meet = pointwise max, join = pointwise min (larger density is
/// lower in ⪯). Self-adjoint: meet = pointwise min, join = pointwise max.
pub fn lattice_meet_join(hf: &HDensity, hg: &HDensity) -> Result<(HDensity, HDensity)> {
    hf.check_same_class(hg)?;
    let hi = hf.combine(hg, f64::max);
    let lo = hf.combine(hg, f64::min);
    Ok(match hf.class {
        DensityClass::Symmetric => (hi, lo),
        DensityClass::SelfAdjoint => (lo, hi),
    })
}
