//! The Kubo-Ando mean catalog and congruence-invariant evaluation
//! `AσB = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`.

mod axioms;
mod repfn;
mod table;

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::func::ScalarFunction;
use crate::repr::density::{DensityClass, HDensity};
use crate::repr::integral::DensityFunction;
use crate::spd::{apply_spectral_function, SpdMatrix, MAX_CONDITION};

pub use axioms::{verify_mean_axioms, AxiomCheck, AxiomConfig, AxiomReport};
pub use repfn::{dagger, RepresentingFunction, SymmetryClass};
pub use table::{DensityMean, NODES_PER_DECADE, TABLE_DECADES};

pub(crate) use repfn::Catalog;

/// A choice of mean.
#[derive(Clone, Debug, PartialEq)]
pub enum MeanDescriptor {
    Arithmetic,
    Harmonic,
    Geometric,
    /// A #_w B with w ∈ (0, 1).
    WeightedGeometric(f64),
    /// (A #_s B + A #_{1−s} B)/2 with s ∈ [0, 1].
    Heinz(f64),
    /// s(A+B)/2 + (1−s) A#B with s ∈ [0, 1].
    Heron(f64),
    /// Mean given by an integral-representation density.
    Density(Arc<DensityMean>),
}

impl MeanDescriptor {
    pub fn weighted_geometric(w: f64) -> Result<Self> {
        let d = MeanDescriptor::WeightedGeometric(w);
        d.validate()?;
        Ok(d)
    }

    pub fn heinz(s: f64) -> Result<Self> {
        let d = MeanDescriptor::Heinz(s);
        d.validate()?;
        Ok(d)
    }

    pub fn heron(s: f64) -> Result<Self> {
        let d = MeanDescriptor::Heron(s);
        d.validate()?;
        Ok(d)
    }

    /// Builds the interpolation table eagerly.
    pub fn from_density(density: HDensity, label: impl Into<String>) -> Self {
        MeanDescriptor::Density(Arc::new(DensityMean::new(density, label)))
    }

    pub fn validate(&self) -> Result<()> {
        let closed = |name: &str, s: f64| {
            if (0.0..=1.0).contains(&s) {
                Ok(())
            } else {
                Err(Error::Structural(format!("{name} parameter {s} outside [0, 1]")))
            }
        };
        match *self {
            MeanDescriptor::WeightedGeometric(w) if !(w > 0.0 && w < 1.0) => {
                Err(Error::Structural(format!("weighted geometric parameter {w} outside (0, 1)")))
            }
            MeanDescriptor::Heinz(s) => closed("heinz", s),
            MeanDescriptor::Heron(s) => closed("heron", s),
            _ => Ok(()),
        }
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        match *self {
            MeanDescriptor::Geometric => SymmetryClass::SymmetricSelfAdjoint,
            MeanDescriptor::WeightedGeometric(w) if w == 0.5 => SymmetryClass::SymmetricSelfAdjoint,
            MeanDescriptor::Heinz(s) if s == 0.5 => SymmetryClass::SymmetricSelfAdjoint,
            MeanDescriptor::Heron(s) if s == 0.0 => SymmetryClass::SymmetricSelfAdjoint,
            MeanDescriptor::WeightedGeometric(_) => SymmetryClass::SelfAdjoint,
            MeanDescriptor::Density(ref d) => match d.density().class() {
                DensityClass::Symmetric => SymmetryClass::Symmetric,
                DensityClass::SelfAdjoint => SymmetryClass::SelfAdjoint,
            },
            _ => SymmetryClass::Symmetric,
        }
    }

    /// Parses the command-line syntax; `hdensity:<path>` reads a density JSON file.
    pub fn parse(text: &str) -> Result<Self> {
        let (kind, arg) = match text.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (text.trim(), None),
        };
        let number = |a: Option<&str>| -> Result<f64> {
            let a = a.ok_or_else(|| Error::Parse(format!("mean '{kind}' needs a parameter")))?;
            a.parse::<f64>().map_err(|_| Error::Parse(format!("bad mean parameter '{a}'")))
        };
        let d = match (kind, arg) {
            ("arithmetic", None) => MeanDescriptor::Arithmetic,
            ("harmonic", None) => MeanDescriptor::Harmonic,
            ("geometric", None) => MeanDescriptor::Geometric,
            ("wgeo", a) => MeanDescriptor::WeightedGeometric(number(a)?),
            ("heinz", a) => MeanDescriptor::Heinz(number(a)?),
            ("heron", a) => MeanDescriptor::Heron(number(a)?),
            ("hdensity", Some(path)) => {
                let density = read_density(Path::new(path))?;
                MeanDescriptor::from_density(density, path)
            }
            _ => return Err(Error::Parse(format!("unknown mean '{text}'"))),
        };
        d.validate()?;
        Ok(d)
    }

    pub fn representing_function(&self) -> Result<RepresentingFunction> {
        self.validate()?;
        let class = self.symmetry_class();
        let label = self.to_string();
        Ok(match *self {
            MeanDescriptor::Arithmetic => RepresentingFunction::from_fn(label, class, Catalog::Arithmetic),
            MeanDescriptor::Harmonic => RepresentingFunction::from_fn(label, class, Catalog::Harmonic),
            MeanDescriptor::Geometric => RepresentingFunction::from_fn(label, class, Catalog::Geometric),
            MeanDescriptor::WeightedGeometric(w) => {
                RepresentingFunction::from_fn(label, class, Catalog::Power(w))
            }
            MeanDescriptor::Heinz(s) => RepresentingFunction::from_fn(label, class, Catalog::Heinz(s)),
            MeanDescriptor::Heron(s) => RepresentingFunction::from_fn(label, class, Catalog::Heron(s)),
            MeanDescriptor::Density(ref d) => RepresentingFunction::new(label, class, d.clone()),
        })
    }

    /// Like [`representing_function`](Self::representing_function), but density
    /// means are evaluated by direct quadrature instead of the interpolation
    /// table. Slower, with errors near rounding level; used for order tests.
    pub fn reference_function(&self) -> Result<RepresentingFunction> {
        match self {
            MeanDescriptor::Density(d) => {
                self.validate()?;
                let f = DensityFunction::new(d.density().clone());
                Ok(RepresentingFunction::from_fn(self.to_string(), self.symmetry_class(), f))
            }
            _ => self.representing_function(),
        }
    }
}

/// Reads an [`HDensity`] from a JSON file.
pub fn read_density(path: &Path) -> Result<HDensity> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

impl fmt::Display for MeanDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanDescriptor::Arithmetic => write!(f, "arithmetic"),
            MeanDescriptor::Harmonic => write!(f, "harmonic"),
            MeanDescriptor::Geometric => write!(f, "geometric"),
            MeanDescriptor::WeightedGeometric(w) => write!(f, "wgeo:{w}"),
            MeanDescriptor::Heinz(s) => write!(f, "heinz:{s}"),
            MeanDescriptor::Heron(s) => write!(f, "heron:{s}"),
            MeanDescriptor::Density(d) => write!(f, "hdensity:{}", d.label()),
        }
    }
}

impl FromStr for MeanDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MeanDescriptor::parse(s)
    }
}

impl Serialize for MeanDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MeanDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        MeanDescriptor::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// AσB for the mean's representing function.
pub fn eval_mean(mean: &MeanDescriptor, a: &SpdMatrix, b: &SpdMatrix) -> Result<SpdMatrix> {
    eval_mean_with(&mean.representing_function()?, a, b)
}

/// A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} for an arbitrary positive function f.
pub fn eval_mean_with(f: &dyn ScalarFunction, a: &SpdMatrix, b: &SpdMatrix) -> Result<SpdMatrix> {
    a.check_same_dim(b)?;
    let d = a.decompose()?;
    let condition = d.max_eigenvalue() / d.min_eigenvalue();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::Conditioning { condition });
    }
    let root = d.map(f64::sqrt)?;
    let inv_root = d.map(|x| 1.0 / x.sqrt())?;
    let inner = b.congruence(&inv_root);
    let image = apply_spectral_function(&inner, |x| f.eval(x))?;
    Ok(SpdMatrix::from_trusted(image.congruence(&root)))
}

/// aσb = a f(b/a) for positive scalars.
pub fn scalar_mean(f: &dyn ScalarFunction, a: f64, b: f64) -> f64 {
    a * f.eval(b / a)
}
