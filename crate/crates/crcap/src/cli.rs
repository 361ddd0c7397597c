//! Command front end: configuration files, run manifests, and the CSV
//! emitters behind the `crcap` binary's subcommands.
//!
//! Every command resolves its inputs into a [`ResolvedRun`] — a fully
//! explicit, serializable description of what will be computed — executes
//! it, and writes the CSV next to a manifest. Re-executing a manifest
//! reproduces the CSV byte for byte regardless of worker count.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fading::FadingKind;
use crate::fading::ShadowingParams;
use crate::geometry::Geometry;
use crate::lowint::prob_low_interference;
use crate::montecarlo::{
    calibrate_constants, estimate_alpha_stats, estimate_p_low_interference, estimate_rate_stats,
    run_frozen_drop, sample_frozen_gains, sweep_power_inflation, CalibrationOptions,
    ScenarioConfig,
};
use crate::powerloss::{alpha_hat_cdf_general, cr_rate_cdf};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Seed used when neither the command line nor the config file provides one.
pub const DEFAULT_SEED: u64 = 42;

/// Drop count used when the command line does not provide one.
pub const DEFAULT_DROPS: u64 = 200_000;

/// Draws used to auto-calibrate a_p and a_c when the config omits them.
pub const CALIBRATION_DRAWS: u64 = 1_000_000;

/// On-disk configuration. Flat named fields, everything optional; radii in
/// meters, σ and K factors in dB, powers and noises linear. dB quantities
/// are converted exactly once, at resolution time.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub r0_m: Option<f64>,
    pub rc_m: Option<f64>,
    pub rp_m: Option<f64>,
    pub gamma: Option<f64>,
    pub sigma_db: Option<f64>,
    pub p_p: Option<f64>,
    pub p_c: Option<f64>,
    pub n_p: Option<f64>,
    pub n_c: Option<f64>,
    /// Deployment constants; omit both to auto-calibrate from the coverage
    /// rule at resolution time.
    pub a_p: Option<f64>,
    pub a_c: Option<f64>,
    /// CP/CC fast fading as a scenario name: rayray, rayric, ricray, ricric.
    pub scenario: Option<String>,
    /// Rician K factor (dB) for the scenario's Rician links.
    pub k_db: Option<f64>,
    /// PP / PC link fading: "rayleigh" (default) or "rician".
    pub pp_fading: Option<String>,
    pub pp_k_db: Option<f64>,
    pub pc_fading: Option<String>,
    pub pc_k_db: Option<f64>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// CP/CC fading assignment names shared by the config file and the
/// `--scenario` flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
#[clap(rename_all = "lowercase")]
pub enum ScenarioName {
    Rayray,
    Rayric,
    Ricray,
    Ricric,
}

impl ScenarioName {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rayray" => Ok(Self::Rayray),
            "rayric" => Ok(Self::Rayric),
            "ricray" => Ok(Self::Ricray),
            "ricric" => Ok(Self::Ricric),
            other => Err(Error::Config(format!(
                "unknown scenario {other:?}; expected rayray, rayric, ricray or ricric"
            ))),
        }
    }

    fn kinds(self, k_db: f64) -> (FadingKind, FadingKind) {
        let ric = FadingKind::rician_from_db(k_db);
        let ray = FadingKind::Rayleigh;
        match self {
            Self::Rayray => (ray, ray),
            Self::Rayric => (ray, ric),
            Self::Ricray => (ric, ray),
            Self::Ricric => (ric, ric),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Rayray => "rayray",
            Self::Rayric => "rayric",
            Self::Ricray => "ricray",
            Self::Ricric => "ricric",
        }
    }
}

fn parse_side_fading(kind: Option<&str>, k_db: Option<f64>, which: &str) -> Result<FadingKind> {
    match kind.map(str::to_ascii_lowercase).as_deref() {
        None | Some("rayleigh") => Ok(FadingKind::Rayleigh),
        Some("rician") => Ok(FadingKind::rician_from_db(k_db.unwrap_or(5.0))),
        Some(other) => Err(Error::Config(format!(
            "unknown {which} fading {other:?}; expected rayleigh or rician"
        ))),
    }
}

/// Fully resolved deployment, as echoed into manifests: every field
/// explicit, dB quantities already noted, constants already calibrated.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResolvedConfig {
    pub r0_m: f64,
    pub rc_m: f64,
    pub rp_m: f64,
    pub gamma: f64,
    pub sigma_db: f64,
    pub p_p: f64,
    pub p_c: f64,
    pub n_p: f64,
    pub n_c: f64,
    pub a_p: f64,
    pub a_c: f64,
    /// Whether a_p/a_c came from the coverage rule rather than the config;
    /// sweeps that move γ or R_c recalibrate per point only in that case.
    pub auto_constants: bool,
    pub scenario: ScenarioName,
    pub k_db: f64,
    pub pp_rician_k_db: Option<f64>,
    pub pc_rician_k_db: Option<f64>,
    pub seed: u64,
}

impl ResolvedConfig {
    pub fn to_scenario(&self) -> Result<ScenarioConfig> {
        let (cp, cc) = self.scenario.kinds(self.k_db);
        let cfg = ScenarioConfig {
            geom: Geometry::new(self.r0_m, self.rc_m, self.rp_m)?,
            gamma: self.gamma,
            shadowing: ShadowingParams::new(self.sigma_db)?,
            fading_pp: self
                .pp_rician_k_db
                .map_or(FadingKind::Rayleigh, FadingKind::rician_from_db),
            fading_pc: self
                .pc_rician_k_db
                .map_or(FadingKind::Rayleigh, FadingKind::rician_from_db),
            fading_cp: cp,
            fading_cc: cc,
            p_p: self.p_p,
            p_c: self.p_c,
            n_p: self.n_p,
            n_c: self.n_c,
            a_p: self.a_p,
            a_c: self.a_c,
            seed: self.seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Command-line overrides applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub scenario: Option<ScenarioName>,
    pub k_db: Option<f64>,
}

/// Merge defaults, config file, and command-line overrides, then calibrate
/// the deployment constants if the file pinned neither.
pub fn resolve_config(file: &ConfigFile, overrides: &Overrides) -> Result<ResolvedConfig> {
    let scenario = match overrides.scenario {
        Some(s) => s,
        None => match &file.scenario {
            Some(name) => ScenarioName::parse(name)?,
            None => ScenarioName::Rayray,
        },
    };
    if file.a_p.is_some() != file.a_c.is_some() {
        return Err(Error::Config(
            "a_p and a_c must be given together (or both omitted for auto-calibration)".into(),
        ));
    }

    let pp = parse_side_fading(file.pp_fading.as_deref(), file.pp_k_db, "pp_fading")?;
    let pc = parse_side_fading(file.pc_fading.as_deref(), file.pc_k_db, "pc_fading")?;

    let mut resolved = ResolvedConfig {
        r0_m: file.r0_m.unwrap_or(1.0),
        rc_m: file.rc_m.unwrap_or(100.0),
        rp_m: file.rp_m.unwrap_or(1000.0),
        gamma: file.gamma.unwrap_or(3.5),
        sigma_db: file.sigma_db.unwrap_or(8.0),
        p_p: file.p_p.unwrap_or(1.0),
        p_c: file.p_c.unwrap_or(1.0),
        n_p: file.n_p.unwrap_or(1.0),
        n_c: file.n_c.unwrap_or(1.0),
        a_p: file.a_p.unwrap_or(1.0),
        a_c: file.a_c.unwrap_or(1.0),
        auto_constants: file.a_p.is_none(),
        scenario,
        k_db: overrides.k_db.or(file.k_db).unwrap_or(5.0),
        pp_rician_k_db: match pp {
            FadingKind::Rayleigh => None,
            FadingKind::Rician { .. } => Some(file.pp_k_db.unwrap_or(5.0)),
        },
        pc_rician_k_db: match pc {
            FadingKind::Rayleigh => None,
            FadingKind::Rician { .. } => Some(file.pc_k_db.unwrap_or(5.0)),
        },
        seed: overrides.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
    };

    if resolved.auto_constants {
        let cfg = resolved.to_scenario()?;
        let (a_p, a_c) =
            calibrate_constants(&cfg, CALIBRATION_DRAWS, &CalibrationOptions::default())?;
        resolved.a_p = a_p;
        resolved.a_c = a_c;
    } else {
        resolved.to_scenario()?; // validate early
    }
    Ok(resolved)
}

/// Sweep axes of the `lowint` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[clap(rename_all = "snake_case")]
pub enum SweepAxis {
    Sigma,
    RcOverRp,
    Gamma,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sigma => "sigma",
            Self::RcOverRp => "rc_over_rp",
            Self::Gamma => "gamma",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
#[clap(rename_all = "kebab-case")]
pub enum AlphaMode {
    Pdf,
    Cdf,
    MeanSweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RateMode {
    Cdf,
    LossSweep,
    BetaSweep,
}

/// The exact computation a run performs (everything except the deployment).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CommandSpec {
    Calibrate {
        drops: u64,
    },
    Lowint {
        sweep: SweepAxis,
        values: Vec<f64>,
        with_mc: bool,
        drops: u64,
    },
    Alpha {
        mode: AlphaMode,
        values: Vec<f64>,
        drops: u64,
    },
    Rate {
        mode: RateMode,
        values: Vec<f64>,
        drops: u64,
    },
}

/// A fully resolved, re-executable run description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResolvedRun {
    pub command: CommandSpec,
    pub config: ResolvedConfig,
}

/// Sidecar metadata written next to every CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config_path: Option<String>,
    pub run: ResolvedRun,
    pub duration_seconds: f64,
}

/// Format a float with the shortest representation that round-trips, which
/// keeps CSV output byte-stable and lossless.
fn fmt(v: f64) -> String {
    format!("{v}")
}

fn empirical_cdf_and_se(sorted: &[f64], x: f64) -> (f64, f64) {
    let n = sorted.len();
    let k = sorted.partition_point(|&v| v <= x);
    let p = k as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

/// Execute a resolved run, returning the CSV text.
pub fn execute(run: &ResolvedRun) -> Result<String> {
    match &run.command {
        CommandSpec::Calibrate { drops } => cmd_calibrate(&run.config, *drops),
        CommandSpec::Lowint {
            sweep,
            values,
            with_mc,
            drops,
        } => cmd_lowint(&run.config, *sweep, values, *with_mc, *drops),
        CommandSpec::Alpha {
            mode,
            values,
            drops,
        } => cmd_alpha(&run.config, *mode, values, *drops),
        CommandSpec::Rate {
            mode,
            values,
            drops,
        } => cmd_rate(&run.config, *mode, values, *drops),
    }
}

/// Execute and write CSV plus manifest; the manifest lands at
/// `<out>.manifest.json`.
pub fn execute_to_files(run: &ResolvedRun, config_path: Option<&Path>, out: &Path) -> Result<()> {
    let started = Instant::now();
    let csv = execute(run)?;
    let manifest = RunManifest {
        tool_version: TOOL_VERSION.to_string(),
        config_path: config_path.map(|p| p.display().to_string()),
        run: run.clone(),
        duration_seconds: started.elapsed().as_secs_f64(),
    };
    fs::write(out, csv)?;
    let manifest_path = manifest_path_for(out);
    fs::write(
        manifest_path,
        serde_json::to_string_pretty(&manifest)
            .map_err(|e| Error::Config(format!("manifest serialization failed: {e}")))?,
    )?;
    Ok(())
}

pub fn manifest_path_for(out: &Path) -> std::path::PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(".manifest.json");
    std::path::PathBuf::from(s)
}

/// Load a manifest and re-execute its run.
pub fn rerun_from_manifest(manifest_path: &Path) -> Result<(ResolvedRun, String)> {
    let text = fs::read_to_string(manifest_path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", manifest_path.display())))?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("{}: {e}", manifest_path.display())))?;
    let csv = execute(&manifest.run)?;
    Ok((manifest.run, csv))
}

pub fn cmd_calibrate(config: &ResolvedConfig, drops: u64) -> Result<String> {
    let cfg = config.to_scenario()?;
    let (a_p, a_c) = calibrate_constants(&cfg, drops, &CalibrationOptions::default())?;
    Ok(format!("a_p,a_c\n{},{}\n", fmt(a_p), fmt(a_c)))
}

/// Apply a sweep-point move to a copy of the deployment. Constants follow
/// the coverage rule per point when they were auto-calibrated.
fn config_at_sweep_point(
    base: &ResolvedConfig,
    axis: SweepAxis,
    value: f64,
) -> Result<ResolvedConfig> {
    let mut point = base.clone();
    match axis {
        SweepAxis::Sigma => point.sigma_db = value,
        SweepAxis::RcOverRp => point.rc_m = value * point.rp_m,
        SweepAxis::Gamma => point.gamma = value,
    }
    if point.auto_constants {
        let cfg = point.to_scenario()?;
        let (a_p, a_c) =
            calibrate_constants(&cfg, CALIBRATION_DRAWS, &CalibrationOptions::default())?;
        point.a_p = a_p;
        point.a_c = a_c;
    }
    point.to_scenario()?;
    Ok(point)
}

pub fn cmd_lowint(
    config: &ResolvedConfig,
    sweep: SweepAxis,
    values: &[f64],
    with_mc: bool,
    drops: u64,
) -> Result<String> {
    if values.is_empty() {
        return Err(Error::Config("sweep needs at least one value".into()));
    }
    let mut out = String::from("sweep_axis,sweep_value,scenario,analytic_p,mc_p,mc_std_error\n");
    for &value in values {
        let point = config_at_sweep_point(config, sweep, value)?;
        let cfg = point.to_scenario()?;
        let analytic = prob_low_interference(&cfg.low_interference()?)?;
        let (mc_p, mc_se) = if with_mc {
            let est = estimate_p_low_interference(&cfg, drops)?;
            (fmt(est.value), fmt(est.std_error))
        } else {
            (String::new(), String::new())
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sweep.as_str(),
            fmt(value),
            point.scenario.as_str(),
            fmt(analytic),
            mc_p,
            mc_se
        ));
    }
    Ok(out)
}

pub fn cmd_alpha(
    config: &ResolvedConfig,
    mode: AlphaMode,
    values: &[f64],
    drops: u64,
) -> Result<String> {
    let cfg = config.to_scenario()?;
    match mode {
        AlphaMode::Cdf => {
            // fixed link gains: one frozen placement/shadowing draw; the
            // analytic curve is the fixed-gain α̂ CDF, the MC columns are
            // the conditional empirical CDFs of α̂ and of the exact α
            let gains = sample_frozen_gains(&cfg, 0)?;
            let budget = gains.budget(&cfg)?;
            let mut hats = Vec::new();
            let mut exacts = Vec::new();
            for i in 0..drops {
                let drop = run_frozen_drop(&cfg, &gains, i)?;
                if drop.a < 1.0 {
                    exacts.push(drop.alpha_exact);
                    if drop.alpha_approx < 1.0 {
                        hats.push(drop.alpha_approx);
                    }
                }
            }
            hats.sort_by(f64::total_cmp);
            exacts.sort_by(f64::total_cmp);
            if hats.len() < 100 || exacts.len() < 100 {
                return Err(Error::InsufficientSamples {
                    needed: 100,
                    got: hats.len().min(exacts.len()),
                });
            }
            let mut out = String::from(
                "x,analytic_cdf,mc_cdf_alpha_hat,mc_se_alpha_hat,mc_cdf_alpha,mc_se_alpha\n",
            );
            let grid = 40usize;
            for g in 0..=grid {
                let x = g as f64 / grid as f64;
                let analytic =
                    alpha_hat_cdf_general(x, &budget, cfg.fading_cp, cfg.fading_cc, cfg.fading_pp)?;
                let (h, h_se) = empirical_cdf_and_se(&hats, x);
                let (e, e_se) = empirical_cdf_and_se(&exacts, x);
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(x),
                    fmt(analytic),
                    fmt(h),
                    fmt(h_se),
                    fmt(e),
                    fmt(e_se)
                ));
            }
            Ok(out)
        }
        AlphaMode::Pdf => {
            let stats = estimate_alpha_stats(&cfg, drops)?;
            let centers = stats.log10_alpha_hist.bin_centers();
            let mut out = String::from("log10_alpha_bin_center,density_alpha,density_alpha_hat\n");
            for (i, c) in centers.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    fmt(*c),
                    fmt(stats.log10_alpha_hist.densities[i]),
                    fmt(stats.log10_alpha_hat_hist.densities[i])
                ));
            }
            Ok(out)
        }
        AlphaMode::MeanSweep => {
            let ratios: Vec<f64> = if values.is_empty() {
                vec![0.05, 0.1, 0.15, 0.2, 0.25, 0.3]
            } else {
                values.to_vec()
            };
            let mut out = String::from("rc_over_rp,mean_alpha,std_error,n_effective\n");
            for &ratio in &ratios {
                let point = config_at_sweep_point(config, SweepAxis::RcOverRp, ratio)?;
                let stats = estimate_alpha_stats(&point.to_scenario()?, drops)?;
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(ratio),
                    fmt(stats.mean_alpha.value),
                    fmt(stats.mean_alpha.std_error),
                    stats.mean_alpha.n_effective
                ));
            }
            Ok(out)
        }
    }
}

pub fn cmd_rate(
    config: &ResolvedConfig,
    mode: RateMode,
    values: &[f64],
    drops: u64,
) -> Result<String> {
    let cfg = config.to_scenario()?;
    match mode {
        RateMode::Cdf => {
            let gains = sample_frozen_gains(&cfg, 0)?;
            let budget = gains.budget(&cfg)?;
            let mut rate_hats = Vec::new();
            let mut rates = Vec::new();
            for i in 0..drops {
                let drop = run_frozen_drop(&cfg, &gains, i)?;
                if drop.a < 1.0 {
                    rates.push(drop.r_cr.expect("rate defined in the regime"));
                    if drop.alpha_approx < 1.0 {
                        let c_sq = gains.gamma_cc * drop.fp_cc;
                        rate_hats.push(
                            crate::powerloss::cr_rate(c_sq, drop.alpha_approx, cfg.p_c, cfg.n_c)
                                .expect("alpha_approx < 1"),
                        );
                    }
                }
            }
            rates.sort_by(f64::total_cmp);
            rate_hats.sort_by(f64::total_cmp);
            if rates.len() < 100 || rate_hats.len() < 100 {
                return Err(Error::InsufficientSamples {
                    needed: 100,
                    got: rates.len().min(rate_hats.len()),
                });
            }
            let x_max = rate_hats
                .last()
                .copied()
                .unwrap()
                .max(rates.last().copied().unwrap())
                .ceil();
            let alpha_cdf = |x: f64| {
                alpha_hat_cdf_general(x, &budget, cfg.fading_cp, cfg.fading_cc, cfg.fading_pp)
            };
            let mut out = String::from(
                "x_bits,analytic_cdf,mc_cdf_rate_hat,mc_se_rate_hat,mc_cdf_rate,mc_se_rate\n",
            );
            let grid = 40usize;
            for g in 0..=grid {
                let x = x_max * g as f64 / grid as f64;
                let analytic = cr_rate_cdf(x, &budget, cfg.fading_cc, alpha_cdf)?;
                let (h, h_se) = empirical_cdf_and_se(&rate_hats, x);
                let (e, e_se) = empirical_cdf_and_se(&rates, x);
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    fmt(x),
                    fmt(analytic),
                    fmt(h),
                    fmt(h_se),
                    fmt(e),
                    fmt(e_se)
                ));
            }
            Ok(out)
        }
        RateMode::LossSweep => {
            let gammas: Vec<f64> = if values.is_empty() {
                vec![2.5, 3.0, 3.5, 4.0]
            } else {
                values.to_vec()
            };
            let mut out = String::from("gamma,mean_percent_loss,std_error,n_effective\n");
            for &gamma in &gammas {
                let point = config_at_sweep_point(config, SweepAxis::Gamma, gamma)?;
                let stats = estimate_rate_stats(&point.to_scenario()?, drops)?;
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(gamma),
                    fmt(stats.mean_percent_loss.value),
                    fmt(stats.mean_percent_loss.std_error),
                    stats.mean_percent_loss.n_effective
                ));
            }
            Ok(out)
        }
        RateMode::BetaSweep => {
            let betas: Vec<f64> = if values.is_empty() {
                vec![1.0, 2.0, 4.0, 8.0]
            } else {
                values.to_vec()
            };
            let sweep = sweep_power_inflation(&cfg, &betas, drops)?;
            let mut out = String::from("beta,mean_rate,std_error,n_effective\n");
            for (beta, est) in sweep {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt(beta),
                    fmt(est.value),
                    fmt(est.std_error),
                    est.n_effective
                ));
            }
            Ok(out)
        }
    }
}

/// Exit code mapping of the binary: configuration problems are 2,
/// numerical failures 3, conditioning starvation 4.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Io(_)
        | Error::Domain(_)
        | Error::InvalidGeometry(_)
        | Error::UnsupportedConfiguration(_) => 2,
        Error::NonConvergence { .. } | Error::InternalConsistency { .. } => 3,
        Error::InsufficientSamples { .. } => 4,
    }
}

/// Machine-readable error record printed to stderr on failure.
pub fn error_record(e: &Error) -> String {
    let kind = match e {
        Error::Config(_) => "config",
        Error::Io(_) => "io",
        Error::Domain(_) => "domain",
        Error::InvalidGeometry(_) => "invalid_geometry",
        Error::UnsupportedConfiguration(_) => "unsupported_configuration",
        Error::NonConvergence { .. } => "non_convergence",
        Error::InternalConsistency { .. } => "internal_consistency",
        Error::InsufficientSamples { .. } => "insufficient_samples",
    };
    serde_json::json!({
        "error": { "kind": kind, "exit_code": exit_code(e), "message": e.to_string() }
    })
    .to_string()
}
