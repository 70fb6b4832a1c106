use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use clap::ValueEnum;

use opmean::io::format_f64;
use opmean::monocheck::scalar_heinz_heron_chain;
use opmean::repr::{phi_profile, Monotonicity};
use opmean::{Error, MeanDescriptor, Result};

use crate::grid::Grid;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SweepKind {
    /// Scalar chain √(ab) ≤ heinz ≤ heron_{(2s−1)²} ≤ heron_{|2s−1|} ≤ (a+b)/2 over s
    Bh,
    /// γ and φ directions of a mean family over its parameter
    Gamma,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Heron,
    Heinz,
    Wgeo,
}

impl Family {
    fn mean(self, p: f64) -> Result<MeanDescriptor> {
        match self {
            Family::Heron => MeanDescriptor::heron(p),
            Family::Heinz => MeanDescriptor::heinz(p),
            Family::Wgeo => MeanDescriptor::weighted_geometric(p),
        }
    }
}

const BH_TOL: f64 = 1e-12;

fn direction(m: Monotonicity) -> &'static str {
    match m {
        Monotonicity::Constant => "constant",
        Monotonicity::NonDecreasing => "non_decreasing",
        Monotonicity::NonIncreasing => "non_increasing",
        Monotonicity::Mixed => "mixed",
    }
}

fn number(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else {
        format_f64(v)
    }
}

/// Writes the CSV; returns true when some bh row has a negative margin.
pub fn run(kind: SweepKind, grid: &Grid, out: &Path, a: f64, b: f64, family: Family) -> Result<bool> {
    let sink: Box<dyn Write> = if out.as_os_str() == "-" {
        Box::new(io::stdout().lock())
    } else {
        Box::new(File::create(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?)
    };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    let mut violated = false;
    match kind {
        SweepKind::Bh => {
            if !(a > 0.0 && b > 0.0) {
                return Err(Error::Domain(format!("bh sweep needs a, b > 0, got {a}, {b}")));
            }
            w.write_record([
                "s",
                "geometric",
                "heinz",
                "heron_squared",
                "heron_abs",
                "arithmetic",
                "min_margin",
            ])
            .map_err(csv_err)?;
            for &s in grid.points() {
                if !(0.0..=1.0).contains(&s) {
                    return Err(Error::Domain(format!("s = {s} outside [0, 1]")));
                }
                let c = scalar_heinz_heron_chain(a, b, s);
                let margin = c.margins().into_iter().fold(f64::INFINITY, f64::min);
                violated |= margin < -BH_TOL * c.arithmetic;
                let row = [c.geometric, c.heinz, c.heron_squared, c.heron_abs, c.arithmetic, margin];
                let mut record = vec![format_f64(s)];
                record.extend(row.iter().map(|&v| format_f64(v)));
                w.write_record(&record).map_err(csv_err)?;
            }
        }
        SweepKind::Gamma => {
            w.write_record(["param", "gamma", "gamma_infinite", "below_one", "above_one"]).map_err(csv_err)?;
            for &p in grid.points() {
                let profile = phi_profile(&family.mean(p)?.representing_function()?);
                w.write_record([
                    format_f64(p),
                    number(profile.gamma),
                    profile.gamma.is_infinite().to_string(),
                    direction(profile.below_one).into(),
                    direction(profile.above_one).into(),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    w.flush()?;
    Ok(violated)
}
