//! `eno`: batch front end for ENO reconstruction, interpolation and their
//! stability audits.
//!
//! Exit codes: 0 success, 1 other errors, 2 malformed input, 3 stencil out of
//! range, 4 failed checks.

mod commands;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eno_core::harness::{FuzzConfig, ValueFamily, WorstCaseLayout, DEFAULT_EPSILON};
use eno_core::{Backend, Exact, TraceKind};

use commands::Sink;
use error::CliError;

#[derive(Parser)]
#[command(name = "eno", version, about = "ENO reconstruction and interpolation on non-uniform 1-D meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Float,
    Exact,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Float => Backend::Float,
            BackendArg::Exact => Backend::Exact,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Reconstruction,
    Interpolation,
}

impl From<KindArg> for TraceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Reconstruction => TraceKind::Reconstruction,
            KindArg::Interpolation => TraceKind::Interpolation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ValuesArg {
    UniformIntegers,
    Alternating,
    Step,
    PerturbedStep,
    Mixed,
}

impl From<ValuesArg> for ValueFamily {
    fn from(v: ValuesArg) -> Self {
        match v {
            ValuesArg::UniformIntegers => ValueFamily::UniformIntegers,
            ValuesArg::Alternating => ValueFamily::Alternating,
            ValuesArg::Step => ValueFamily::Step,
            ValuesArg::PerturbedStep => ValueFamily::PerturbedStep,
            ValuesArg::Mixed => ValueFamily::Mixed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LayoutArg {
    Attaining,
    Mirror,
}

#[derive(Args)]
struct Common {
    /// Polynomial order p (degree p - 1).
    #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    #[arg(short, long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Interface traces of the reconstruction from a `x_left,x_right,avg` CSV.
    Reconstruct {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Midpoint traces of the interpolant of a `x,value` CSV.
    Interpolate {
        #[arg(short, long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sign, oracle, bound and conservation checks as a JSON summary.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long, value_enum, default_value = "reconstruction")]
        kind: KindArg,
        #[command(flatten)]
        common: Common,
    },
    /// Uniform-mesh bounds for orders 1..=p, or the local bounds of a mesh.
    Bounds {
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        /// Both kinds when omitted with --uniform.
        #[arg(short, long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        uniform: bool,
        /// Mesh in the reconstruct or interpolate input format.
        #[arg(short, long)]
        input: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Perturbed-step averages on unit cells and their relative jump at x = 4.
    WorstCase {
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        order: u32,
        #[arg(short, long, default_value_t = DEFAULT_EPSILON.to_string())]
        epsilon: String,
        /// Defaults to max(20, 2p + 10).
        #[arg(long)]
        cells: Option<usize>,
        #[arg(long, value_enum, default_value = "attaining")]
        layout: LayoutArg,
        #[arg(short, long, value_enum, default_value = "float")]
        backend: BackendArg,
        /// Also write the cell averages as `x_left,x_right,avg` CSV.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Randomized sign-property audit; exits 4 on any failed check.
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 30)]
        cells: usize,
        #[arg(long, default_value_t = 1)]
        min_order: usize,
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// Largest ratio between neighbouring cell widths.
        #[arg(long, default_value_t = 4.0)]
        mesh_ratio: f64,
        #[arg(short, long, value_enum, default_value = "exact")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "mixed")]
        values: ValuesArg,
        /// Both kinds when omitted.
        #[arg(short, long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, default_value_t = 8)]
        max_witnesses: usize,
        /// Run trials on one thread.
        #[arg(long)]
        serial: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Trace errors and observed rates for sin(2 pi x) on periodic uniform meshes.
    Converge {
        #[arg(short, long, value_enum, default_value = "reconstruction")]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        min_order: usize,
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256")]
        resolutions: Vec<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn kinds(kind: Option<KindArg>) -> Vec<TraceKind> {
    match kind {
        Some(k) => vec![k.into()],
        None => vec![TraceKind::Reconstruction, TraceKind::Interpolation],
    }
}

macro_rules! with_backend {
    ($backend:expr, $f:ident($($arg:expr),* $(,)?)) => {
        match Backend::from($backend) {
            Backend::Float => commands::$f::<f64>($($arg),*),
            Backend::Exact => commands::$f::<Exact>($($arg),*),
        }
    };
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reconstruct { input, common } => {
            let sink = Sink(common.output);
            with_backend!(common.backend, reconstruct(&input, common.order as usize, &sink))
        }
        Command::Interpolate { input, common } => {
            let sink = Sink(common.output);
            with_backend!(common.backend, interpolate(&input, common.order as usize, &sink))
        }
        Command::Verify { input, kind, common } => {
            let sink = Sink(common.output);
            with_backend!(common.backend, verify(&input, kind.into(), common.order as usize, &sink))
        }
        Command::Bounds {
            order,
            kind,
            uniform,
            input,
            backend,
            output,
        } => {
            let sink = Sink(output);
            match input {
                Some(path) if !uniform => {
                    let kind = kind.map_or(TraceKind::Reconstruction, TraceKind::from);
                    with_backend!(backend, mesh_bounds(&path, kind, order as usize, &sink))
                }
                _ => commands::uniform_bounds(&kinds(kind), order as usize, &sink),
            }
        }
        Command::WorstCase {
            order,
            epsilon,
            cells,
            layout,
            backend,
            table,
            output,
        } => {
            let layout = match layout {
                LayoutArg::Attaining => WorstCaseLayout::Attaining,
                LayoutArg::Mirror => WorstCaseLayout::Mirror,
            };
            let sink = Sink(output);
            with_backend!(
                backend,
                worst_case(order as usize, &epsilon, cells, layout, table.as_deref(), &sink)
            )
        }
        Command::Fuzz {
            seed,
            trials,
            cells,
            min_order,
            max_order,
            mesh_ratio,
            backend,
            values,
            kind,
            max_witnesses,
            serial,
            output,
        } => {
            let config = FuzzConfig {
                seed,
                trials,
                cells,
                min_order,
                max_order,
                mesh_ratio,
                backend: backend.into(),
                values: values.into(),
                kinds: kinds(kind),
                max_witnesses,
                parallel: !serial,
            };
            commands::fuzz(&config, &Sink(output))
        }
        Command::Converge {
            kind,
            min_order,
            max_order,
            resolutions,
            output,
        } => {
            let orders: Vec<usize> = (min_order..=max_order).collect();
            commands::converge(kind.into(), &orders, &resolutions, &Sink(output))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eno: {e}");
            e.exit_code()
        }
    }
}
