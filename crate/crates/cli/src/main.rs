mod expr;
mod grid;
mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use opmean::io::{serialize_extended, to_json_string};
use opmean::means::{eval_mean, read_density};
use opmean::monocheck::{falsify_transfer, is_operator_monotone_sampled, MonotoneConfig, TransferConfig};
use opmean::repr::{
    eval_selfadjoint_rep, eval_symmetric_rep, h_order, ka_condition_check, ka_tau_family, order_leq_sa,
    order_leq_sym, phi_profile, KaConfig, KaReport,
};
use opmean::solvers::{build_monotone_chain, solve_geom_heinz_matrix, solve_heinz_heron_matrix, solve_matrix_pair, ChainCheck, CHAIN_TOL, WITNESS_TOL};
use opmean::{
    DensityClass, Error, HDensity, HOrder, Matrix, MeanDescriptor, MonotonicityVerdict, RepresentingFunction, Result,
    SpdMatrix, SymmetryClass,
};

use expr::Expr;
use grid::Grid;

#[derive(Parser)]
#[command(name = "opmean", version, about = "Kubo-Ando operator means: evaluation, pair solvers, monotonicity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Sampling settings shared by the randomized verbs; echoed in every report.
#[derive(Args, Clone, Debug, Serialize)]
struct Settings {
    /// Relative tolerance of Loewner comparisons
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Random trials
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Matrix dimension of random pairs
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// Condition-number cap of random SPD matrices
    #[arg(long, default_value_t = 100.0)]
    cond_cap: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate AσB for two SPD matrices
    EvalMean {
        #[arg(long)]
        mean: MeanDescriptor,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Evaluate the representing function of an h-density
    RepEval {
        /// Density JSON file
        #[arg(long, conflicts_with = "constant")]
        density: Option<PathBuf>,
        /// Constant density value in [0, 1]
        #[arg(long)]
        constant: Option<f64>,
        #[arg(long, value_enum, default_value = "symmetric")]
        class: ClassArg,
        /// Points: `lo:hi:count`, `log:lo:hi:count` or a comma list
        #[arg(long, default_value = "log:1e-3:1e3:13")]
        t: Grid,
    },
    /// Find A, B with A#B = X and AσB = Y
    SolvePair {
        #[arg(long)]
        mean: MeanDescriptor,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
    },
    /// Heinz/Heron and geometric/Heinz pair constructions
    SolveHeinzHeron {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, value_enum, default_value = "heinz-heron")]
        kind: PairKind,
    },
    /// Build a monotone chain from X to Y with a pair per link
    Chain {
        #[arg(long)]
        mean: MeanDescriptor,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Ratio bound per link; defaults to sqrt(gamma), or 2 when gamma is infinite
        #[arg(long)]
        gamma0: Option<f64>,
    },
    /// Sampled operator-monotonicity test of a function of t
    CheckMonotone {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, default_value_t = 1e-3)]
        lo: f64,
        #[arg(long, default_value_t = 1e3)]
        hi: f64,
        /// Also search for a matrix-pair witness through geometric <= arithmetic
        #[arg(long)]
        transfer: bool,
        #[command(flatten)]
        settings: Settings,
    },
    /// Test f ⪯ g (symmetric) or f ⪯_sa g (self-adjoint) for two means
    CheckOrder {
        #[arg(long)]
        f: MeanDescriptor,
        #[arg(long)]
        g: MeanDescriptor,
        /// Use the self-adjoint order
        #[arg(long)]
        sa: bool,
        #[command(flatten)]
        settings: Settings,
    },
    /// Sampled check of (AτB)σ(Aτ⊥B) <= AσB
    KaCheck {
        #[arg(long)]
        sigma: MeanDescriptor,
        /// Defaults to the wgeo/heron/heinz family over 0.1..0.9
        #[arg(long)]
        tau: Option<MeanDescriptor>,
        #[command(flatten)]
        settings: Settings,
    },
    /// Tabulate a quantity over a parameter grid as CSV
    Sweep {
        #[arg(long, value_enum)]
        kind: sweep::SweepKind,
        /// Parameter grid: `lo:hi:count`, `log:lo:hi:count` or a comma list
        #[arg(long)]
        grid: Grid,
        /// Output CSV path, `-` for standard output
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 4.0)]
        b: f64,
        /// Mean family for the gamma sweep
        #[arg(long, value_enum, default_value = "heron")]
        family: sweep::Family,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Symmetric,
    SelfAdjoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairKind {
    /// Heinz_s(A,B) = X, Heron_{(2s-1)^2}(A,B) = Y
    HeinzHeron,
    /// A#B = X, Heinz_s(A,B) = Y
    GeomHeinz,
}

enum Outcome {
    Success,
    Violation,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    config: Settings,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct MonotoneReport {
    function: String,
    #[serde(flatten)]
    verdict: MonotonicityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    transfer: Option<MonotonicityVerdict>,
}

#[derive(Serialize)]
struct OrderReport {
    f: MeanDescriptor,
    g: MeanDescriptor,
    order: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_order: Option<HOrder>,
    #[serde(flatten)]
    verdict: MonotonicityVerdict,
}

#[derive(Serialize)]
struct KaSweepReport {
    reports: Vec<KaReport>,
}

#[derive(Serialize)]
struct ChainReport {
    #[serde(flatten)]
    chain: opmean::ChainWitness,
    check: ChainCheck,
}

#[derive(Serialize)]
struct RepPoint {
    t: f64,
    f: f64,
    phi: f64,
}

#[derive(Serialize)]
struct RepReport {
    density: HDensity,
    #[serde(serialize_with = "serialize_extended")]
    gamma: f64,
    points: Vec<RepPoint>,
}

fn read_matrix(path: &Path) -> Result<SpdMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let m: Matrix = if value.is_array() {
        Matrix::from_rows(serde_json::from_value(value)?)?
    } else {
        serde_json::from_value(value)?
    };
    SpdMatrix::new(m)
}

fn print_json<T: Serialize + ?Sized>(value: &T) -> Result<()> {
    println!("{}", to_json_string(value)?);
    Ok(())
}

fn monotone_config(s: &Settings, lo: f64, hi: f64) -> MonotoneConfig {
    MonotoneConfig { lo, hi, trials: s.trials, seed: s.seed, tol: s.tol, ..Default::default() }
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::EvalMean { mean, a, b } => {
            print_json(&eval_mean(&mean, &read_matrix(&a)?, &read_matrix(&b)?)?)?;
            Ok(Outcome::Success)
        }
        Command::RepEval { density, constant, class, t } => {
            let h = match (density, constant) {
                (Some(path), _) => read_density(&path)?,
                (None, Some(c)) => HDensity::constant(
                    match class {
                        ClassArg::Symmetric => DensityClass::Symmetric,
                        ClassArg::SelfAdjoint => DensityClass::SelfAdjoint,
                    },
                    c,
                )?,
                (None, None) => return Err(Error::Usage("rep-eval needs --density or --constant".into())),
            };
            let mean = MeanDescriptor::from_density(h.clone(), "density");
            let profile = phi_profile(&mean.reference_function()?);
            let points = t
                .points()
                .iter()
                .map(|&t| {
                    let f = match h.class() {
                        DensityClass::Symmetric => eval_symmetric_rep(&h, t)?,
                        DensityClass::SelfAdjoint => eval_selfadjoint_rep(&h, t)?,
                    };
                    Ok(RepPoint { t, f, phi: profile.phi(t) })
                })
                .collect::<Result<Vec<_>>>()?;
            print_json(&RepReport { density: h, gamma: profile.gamma, points })?;
            Ok(Outcome::Success)
        }
        Command::SolvePair { mean, x, y } => {
            print_json(&solve_matrix_pair(&mean, &read_matrix(&x)?, &read_matrix(&y)?)?)?;
            Ok(Outcome::Success)
        }
        Command::SolveHeinzHeron { s, x, y, kind } => {
            let (x, y) = (read_matrix(&x)?, read_matrix(&y)?);
            let w = match kind {
                PairKind::HeinzHeron => solve_heinz_heron_matrix(s, &x, &y)?,
                PairKind::GeomHeinz => solve_geom_heinz_matrix(s, &x, &y)?,
            };
            print_json(&w)?;
            Ok(Outcome::Success)
        }
        Command::Chain { mean, x, y, gamma0 } => {
            let chain = build_monotone_chain(&mean, &read_matrix(&x)?, &read_matrix(&y)?, gamma0)?;
            let check = chain.verify(CHAIN_TOL)?;
            let holds = check.holds(WITNESS_TOL);
            print_json(&ChainReport { chain, check })?;
            Ok(if holds { Outcome::Success } else { Outcome::Violation })
        }
        Command::CheckMonotone { function, lo, hi, transfer, settings } => {
            let f = Expr::parse(&function)?;
            let verdict = is_operator_monotone_sampled(&f, &monotone_config(&settings, lo, hi));
            let transfer = if transfer {
                let cfg = TransferConfig {
                    trials: settings.trials,
                    seed: settings.seed,
                    tol: settings.tol,
                    ..Default::default()
                };
                Some(falsify_transfer(&f, &MeanDescriptor::Geometric, &MeanDescriptor::Arithmetic, &cfg)?)
            } else {
                None
            };
            let refuted = !verdict.is_consistent() || transfer.as_ref().is_some_and(|t| !t.is_consistent());
            print_json(&Report { config: settings, body: MonotoneReport { function, verdict, transfer } })?;
            Ok(if refuted { Outcome::Violation } else { Outcome::Success })
        }
        Command::CheckOrder { f, g, sa, settings } => {
            let (rf, rg): (RepresentingFunction, RepresentingFunction) = (f.reference_function()?, g.reference_function()?);
            let wanted = if sa { SymmetryClass::SelfAdjoint } else { SymmetryClass::Symmetric };
            for (m, r) in [(&f, &rf), (&g, &rg)] {
                let ok = if sa { r.class().is_self_adjoint() } else { r.class().is_symmetric() };
                if !ok {
                    return Err(Error::Usage(format!("{m} is not in the {wanted:?} class")));
                }
            }
            let cfg = monotone_config(&settings, 1e-3, 1e3);
            let verdict = if sa { order_leq_sa(&rf, &rg, &cfg) } else { order_leq_sym(&rf, &rg, &cfg) };
            let h_order = match (&f, &g) {
                (MeanDescriptor::Density(a), MeanDescriptor::Density(b)) => h_order(a.density(), b.density()).ok(),
                _ => None,
            };
            let refuted = !verdict.is_consistent();
            let order = if sa { "f <=_sa g" } else { "f <= g" };
            print_json(&Report { config: settings, body: OrderReport { f, g, order, h_order, verdict } })?;
            Ok(if refuted { Outcome::Violation } else { Outcome::Success })
        }
        Command::KaCheck { sigma, tau, settings } => {
            let cfg = KaConfig {
                n: settings.n,
                trials: settings.trials,
                seed: settings.seed,
                tol: settings.tol,
                cond_cap: settings.cond_cap,
            };
            let taus = match tau {
                Some(t) => vec![t],
                None => ka_tau_family(),
            };
            let reports = taus.iter().map(|t| ka_condition_check(&sigma, t, &cfg)).collect::<Result<Vec<_>>>()?;
            let violated = reports.iter().any(|r| r.violations > 0);
            if reports.len() == 1 {
                print_json(&Report { config: settings, body: reports.into_iter().next().unwrap() })?;
            } else {
                print_json(&Report { config: settings, body: KaSweepReport { reports } })?;
            }
            Ok(if violated { Outcome::Violation } else { Outcome::Success })
        }
        Command::Sweep { kind, grid, out, a, b, family } => {
            let violated = sweep::run(kind, &grid, &out, a, b, family)?;
            Ok(if violated { Outcome::Violation } else { Outcome::Success })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
