use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aue::harness::{self, ExperimentConfig, Parallelism, Sweep, SweepAxis};
use aue::{AueError, CfoKind, CfoModel, Scheme, SystemConfig};

/// Monte Carlo NRMSE study of active user enumeration under CFOs.
#[derive(Parser, Debug)]
#[command(name = "aue", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single operating point.
    Run(Common),
    /// Sweep one parameter and evaluate every point.
    Sweep {
        /// Parameter to vary.
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Comma-separated axis values (SNR values in dB).
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        values: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    Epsilon,
    M,
    Snr,
    K,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CfoArg {
    Uniform,
    Gaussian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Number of potential users N.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Number of active users K.
    #[arg(long, default_value_t = 25)]
    k: usize,
    /// Number of base station antennas M.
    #[arg(long, default_value_t = 32)]
    m: usize,
    /// SNR 1/σ_z² in dB.
    #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
    snr_db: f64,
    /// Maximum normalized CFO ε_max.
    #[arg(long, default_value_t = 0.15)]
    eps_max: f64,
    /// CFO distribution.
    #[arg(long, value_enum, default_value_t = CfoArg::Uniform)]
    cfo: CfoArg,
    /// Comma-separated schemes: eig-sum, eig-diff, orthogonal, mle.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "eig-sum,eig-diff,orthogonal,mle"
    )]
    schemes: Vec<String>,
    /// Monte Carlo trials per point.
    #[arg(long, default_value_t = harness::DEFAULT_TRIALS)]
    trials: usize,
    /// Master seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Attach the closed-form Eig-sum NRMSE.
    #[arg(long)]
    theory: bool,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long)]
    workers: Option<usize>,
}

impl Common {
    fn experiment(&self, sweep: Sweep) -> Result<ExperimentConfig, AueError> {
        let kind = match self.cfo {
            CfoArg::Uniform => CfoKind::Uniform,
            CfoArg::Gaussian => CfoKind::Gaussian,
        };
        let base = SystemConfig {
            n_potential: self.n,
            k_active: self.k,
            m_antennas: self.m,
            noise_variance: 1.0,
            cfo: CfoModel::new(kind, self.eps_max)?,
        }
        .with_snr_db(self.snr_db)?;
        let schemes = self
            .schemes
            .iter()
            .map(|s| s.parse::<Scheme>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExperimentConfig {
            base,
            schemes,
            trials: self.trials,
            master_seed: self.seed,
            sweep,
            emit_theory: self.theory,
        })
    }

    fn parallelism(&self) -> Parallelism {
        match self.workers {
            Some(0) | None => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }
}

fn execute(cli: Cli) -> Result<(), AueError> {
    let (common, sweep) = match &cli.command {
        Command::Run(common) => (common, Sweep::single_point()),
        Command::Sweep { axis, values, common } => {
            let axis = match axis {
                AxisArg::Epsilon => SweepAxis::EpsilonMax,
                AxisArg::M => SweepAxis::Antennas,
                AxisArg::Snr => SweepAxis::Snr,
                AxisArg::K => SweepAxis::ActiveUsers,
            };
            (
                common,
                Sweep {
                    axis,
                    values: values.clone(),
                },
            )
        }
    };
    let cfg = common.experiment(sweep)?;
    let result = harness::run_sweep_with(&cfg, common.parallelism())?;

    let sink: Box<dyn Write> = match &common.out {
        Some(path) => {
            Box::new(File::create(path).map_err(|e| AueError::Output(format!("{}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match common.format {
        Format::Csv => harness::write_csv(&result, &mut sink)?,
        Format::Json => harness::write_json(&result, &mut sink)?,
    }
    sink.flush().map_err(|e| AueError::Output(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                ref e if e.is_domain_error() => ExitCode::from(3),
                AueError::Output(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
