use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qrs::cli::{
    cmd_contour, cmd_montecarlo, cmd_reproduce_figure, cmd_sampling_test, cmd_sweep_fast,
    cmd_sweep_slow, MonteCarloParams, SweepSpec, SweepVariable,
};
use qrs::noise::NoiseKind;
use qrs::optimize::{OptimizationTarget, RegimeFamily};
use qrs::simulate::{SamplingMode, SamplingTestParams};
use qrs::Error;

#[derive(Parser)]
#[command(
    name = "qrs",
    about = "Error analysis for delegated qubit frequency sensing under dephasing",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    White,
    Lowfreq,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SingleNoiseArg {
    White,
    Lowfreq,
}

impl From<SingleNoiseArg> for NoiseKind {
    fn from(arg: SingleNoiseArg) -> Self {
        match arg {
            SingleNoiseArg::White => NoiseKind::White,
            SingleNoiseArg::Lowfreq => NoiseKind::LowFrequency,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Slow,
    Fast,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Uncertainty,
    Ratio,
}

impl From<TargetArg> for OptimizationTarget {
    fn from(arg: TargetArg) -> Self {
        match arg {
            TargetArg::Uncertainty => OptimizationTarget::MinimizeClientUncertainty,
            TargetArg::Ratio => OptimizationTarget::MinimizeRatio,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Channel,
    Trajectory,
}

#[derive(Subcommand)]
enum Command {
    /// Slow-readout sweep over the repetition count M.
    SweepSlow {
        #[arg(long)]
        epsilon: f64,
        /// Noise kinds to include as columns.
        #[arg(long, value_enum, default_value_t = NoiseArg::Both)]
        noise: NoiseArg,
        /// Axis over M as start:stop:points:lin|log.
        #[arg(long)]
        sweep: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fast-readout sweep over the total time budget N = T/T2.
    SweepFast {
        #[arg(long)]
        epsilon: f64,
        /// Restrict columns to one optimization target.
        #[arg(long, value_enum)]
        target: Option<TargetArg>,
        /// Axis over N as start:stop:points:lin|log.
        #[arg(long)]
        sweep: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// 2-D objective grid over (M or N) and the interaction time.
    Contour {
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum)]
        noise: SingleNoiseArg,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Axis over M (slow) or N (fast) as start:stop:points:lin|log.
        #[arg(long)]
        sweep: String,
        /// Axis over t/T2 as start:stop:points:lin|log.
        #[arg(long)]
        sweep_t: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo protocol simulation at the worst-case client state.
    Montecarlo {
        #[arg(long, default_value_t = 0.0)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = SingleNoiseArg::White)]
        noise: SingleNoiseArg,
        #[arg(long, default_value_t = 1.0)]
        t2: f64,
        /// Accumulated phase omega * t.
        #[arg(long, default_value_t = 0.01)]
        omega_t: f64,
        /// Interaction time in units of T2.
        #[arg(long, default_value_t = 1.0)]
        t_over_t2: f64,
        /// Protocol runs per trial (M).
        #[arg(long, default_value_t = 100)]
        shots: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Channel)]
        mode: ModeArg,
        /// Defaults to QRS_SEED from the environment, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Repeated register sampling tests on Werner-mixed Bell pairs.
    SamplingTest {
        #[arg(long)]
        epsilon: f64,
        /// Threshold fraction Delta in the pass condition n_fail <= 2 k Delta.
        #[arg(long)]
        capital_delta: f64,
        /// Allowed failure probability delta of the certified bound.
        #[arg(long)]
        delta: f64,
        /// True Bell fidelity of every supplied register.
        #[arg(long)]
        fidelity: f64,
        #[arg(long, default_value_t = 1000)]
        runs: u64,
        /// Defaults to QRS_SEED from the environment, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit the data behind one published figure (ids 3 through 11).
    ReproduceFigure {
        #[arg(long)]
        id: u32,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn resolve_seed(flag: Option<u64>) -> qrs::Result<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("QRS_SEED") {
        Ok(text) => text.parse().map_err(|_| {
            Error::Domain(format!("QRS_SEED must be an unsigned integer, got {text:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn run(command: Command) -> qrs::Result<()> {
    match command {
        Command::SweepSlow {
            epsilon,
            noise,
            sweep,
            out,
        } => {
            let kind = match noise {
                NoiseArg::White => Some(NoiseKind::White),
                NoiseArg::Lowfreq => Some(NoiseKind::LowFrequency),
                NoiseArg::Both => None,
            };
            let sweep = SweepSpec::parse(&sweep, SweepVariable::RepetitionCount)?;
            cmd_sweep_slow(epsilon, kind, &sweep, &out)
        }
        Command::SweepFast {
            epsilon,
            target,
            sweep,
            out,
        } => {
            let sweep = SweepSpec::parse(&sweep, SweepVariable::TimeBudget)?;
            cmd_sweep_fast(epsilon, target.map(Into::into), &sweep, &out)
        }
        Command::Contour {
            epsilon,
            noise,
            regime,
            target,
            sweep,
            sweep_t,
            out,
        } => {
            let (family, mn_variable) = match regime {
                RegimeArg::Slow => (RegimeFamily::Slow, SweepVariable::RepetitionCount),
                RegimeArg::Fast => (RegimeFamily::Fast, SweepVariable::TimeBudget),
            };
            let grid_mn = SweepSpec::parse(&sweep, mn_variable)?;
            let grid_t = SweepSpec::parse(&sweep_t, SweepVariable::InteractionTime)?;
            cmd_contour(
                epsilon,
                noise.into(),
                family,
                target.into(),
                &grid_mn,
                &grid_t,
                &out,
            )
        }
        Command::Montecarlo {
            epsilon,
            noise,
            t2,
            omega_t,
            t_over_t2,
            shots,
            trials,
            mode,
            seed,
            out,
        } => {
            let params = MonteCarloParams {
                epsilon,
                kind: noise.into(),
                t2,
                omega_t,
                t_over_t2,
                shots,
                trials,
                mode: match mode {
                    ModeArg::Channel => SamplingMode::ChannelLevel,
                    ModeArg::Trajectory => SamplingMode::TrajectoryLevel,
                },
                seed: resolve_seed(seed)?,
            };
            let summary = cmd_montecarlo(&params, &out)?;
            println!("empirical_rmse,{:.16e}", summary.empirical_rmse);
            println!("analytic_uncertainty,{:.16e}", summary.analytic_uncertainty);
            println!("z_score,{:.16e}", summary.z_score);
            Ok(())
        }
        Command::SamplingTest {
            epsilon,
            capital_delta,
            delta,
            fidelity,
            runs,
            seed,
            out,
        } => {
            let params = SamplingTestParams::new(epsilon, delta, capital_delta)?;
            let summary = cmd_sampling_test(&params, fidelity, runs, resolve_seed(seed)?, &out)?;
            println!("k,{}", summary.k);
            println!("pass_rate,{:.16e}", summary.pass_rate);
            println!("violation_rate,{:.16e}", summary.violation_rate);
            Ok(())
        }
        Command::ReproduceFigure { id, out_dir } => {
            for path in cmd_reproduce_figure(id, &out_dir)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
