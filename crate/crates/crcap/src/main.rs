use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crcap::cli::{
    self, AlphaMode, CommandSpec, ConfigFile, Overrides, RateMode, ResolvedRun, ScenarioName,
    SweepAxis,
};
use crcap::error::Result;

/// Cognitive-radio capacity statistics: low-interference probability, power
/// loss, and CR rate, analytically and by seeded Monte Carlo.
///
/// Each command writes one CSV (single header row, full-precision decimal
/// cells) and, when --out is given, a sidecar `<out>.manifest.json` from
/// which `rerun` reproduces the CSV byte for byte.
#[derive(Parser)]
#[command(name = "crcap", version, about, long_about = None, after_help = CSV_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const CSV_HELP: &str = "\
CSV columns per command:
  calibrate          a_p,a_c
  lowint             sweep_axis,sweep_value,scenario,analytic_p,mc_p,mc_std_error
                     (mc columns empty unless --with-mc)
  alpha --mode cdf   x,analytic_cdf,mc_cdf_alpha_hat,mc_se_alpha_hat,mc_cdf_alpha,mc_se_alpha
  alpha --mode pdf   log10_alpha_bin_center,density_alpha,density_alpha_hat
  alpha --mode mean-sweep   rc_over_rp,mean_alpha,std_error,n_effective
  rate --mode cdf    x_bits,analytic_cdf,mc_cdf_rate_hat,mc_se_rate_hat,mc_cdf_rate,mc_se_rate
  rate --mode loss-sweep    gamma,mean_percent_loss,std_error,n_effective
  rate --mode beta-sweep    beta,mean_rate,std_error,n_effective

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 insufficient conditioned samples.";

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file (all fields optional; defaults match the
    /// standard deployment).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path; stdout when omitted (no manifest in that case).
    #[arg(long)]
    out: Option<PathBuf>,
    /// RNG seed; beats the config-file seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Monte Carlo drop count.
    #[arg(long, default_value_t = cli::DEFAULT_DROPS)]
    drops: u64,
    /// CP/CC fast-fading scenario; beats the config-file scenario.
    #[arg(long, value_enum)]
    scenario: Option<ScenarioName>,
    /// Rician K factor in dB for the scenario's Rician links.
    #[arg(long)]
    k_db: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Determine the deployment constants (a_p, a_c) from the coverage rule.
    Calibrate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Probability of the low-interference regime along a parameter sweep.
    Lowint {
        #[command(flatten)]
        common: CommonArgs,
        /// Parameter swept across rows.
        #[arg(long, value_enum, default_value = "sigma")]
        sweep: SweepAxis,
        /// Sweep values (comma separated).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
        /// Also simulate each sweep point.
        #[arg(long)]
        with_mc: bool,
    },
    /// Distributions and means of the power-loss parameter.
    Alpha {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "pdf")]
        mode: AlphaMode,
        /// Sweep values for mean-sweep mode (R_c/R_p ratios).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
    },
    /// CR rate distribution, rate-loss sweep, and power-inflation sweep.
    Rate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "cdf")]
        mode: RateMode,
        /// Sweep values (γ for loss-sweep, β for beta-sweep).
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<f64>>,
    },
    /// Re-execute a run from its manifest.
    Rerun {
        /// Path to a `*.manifest.json` written by a previous run.
        #[arg(long)]
        manifest: PathBuf,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn default_sweep_values(axis: SweepAxis) -> Vec<f64> {
    match axis {
        SweepAxis::Sigma => vec![4.0, 6.0, 8.0, 10.0, 12.0],
        SweepAxis::RcOverRp => vec![0.05, 0.1, 0.2, 0.3],
        SweepAxis::Gamma => vec![2.5, 3.0, 3.5, 4.0],
    }
}

fn resolve(common: &CommonArgs) -> Result<(Option<PathBuf>, cli::ResolvedConfig)> {
    let file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        seed: common.seed,
        scenario: common.scenario,
        k_db: common.k_db,
    };
    Ok((
        common.config.clone(),
        cli::resolve_config(&file, &overrides)?,
    ))
}

fn emit(run: &ResolvedRun, config_path: Option<&PathBuf>, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => cli::execute_to_files(run, config_path.map(|p| p.as_path()), path),
        None => {
            let csv = cli::execute(run)?;
            print!("{csv}");
            Ok(())
        }
    }
}

fn run() -> Result<()> {
    let cli_args = Cli::parse();
    match cli_args.command {
        Command::Calibrate { common } => {
            let (config_path, config) = resolve(&common)?;
            let run = ResolvedRun {
                command: CommandSpec::Calibrate {
                    drops: common.drops,
                },
                config,
            };
            emit(&run, config_path.as_ref(), &common.out)?;
            if common.out.is_some() {
                // echo the calibrated constants for interactive use
                let csv = cli::execute(&run)?;
                if let Some(row) = csv.lines().nth(1) {
                    println!("a_p,a_c = {row}");
                }
            }
            Ok(())
        }
        Command::Lowint {
            common,
            sweep,
            values,
            with_mc,
        } => {
            let (config_path, config) = resolve(&common)?;
            let run = ResolvedRun {
                command: CommandSpec::Lowint {
                    sweep,
                    values: values.unwrap_or_else(|| default_sweep_values(sweep)),
                    with_mc,
                    drops: common.drops,
                },
                config,
            };
            emit(&run, config_path.as_ref(), &common.out)
        }
        Command::Alpha {
            common,
            mode,
            values,
        } => {
            let (config_path, config) = resolve(&common)?;
            let run = ResolvedRun {
                command: CommandSpec::Alpha {
                    mode,
                    values: values.unwrap_or_default(),
                    drops: common.drops,
                },
                config,
            };
            emit(&run, config_path.as_ref(), &common.out)
        }
        Command::Rate {
            common,
            mode,
            values,
        } => {
            let (config_path, config) = resolve(&common)?;
            let run = ResolvedRun {
                command: CommandSpec::Rate {
                    mode,
                    values: values.unwrap_or_default(),
                    drops: common.drops,
                },
                config,
            };
            emit(&run, config_path.as_ref(), &common.out)
        }
        Command::Rerun { manifest, out } => {
            let (run, csv) = cli::rerun_from_manifest(&manifest)?;
            match out {
                Some(path) => cli::execute_to_files(&run, None, &path),
                None => {
                    print!("{csv}");
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", cli::error_record(&e));
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
