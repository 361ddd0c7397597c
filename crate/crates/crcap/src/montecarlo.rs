//! Drop-based simulation of the full system: placement, shadowing, fast
//! fading, the regime variable a, the power loss α, and the CR rate.
//!
//! Reproducibility contract: every drop draws from its own counter-based
//! substream derived from (seed, drop index), chunks of drops are reduced
//! in index order, and so every estimate is bit-identical across runs and
//! across worker counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fading::{FadingKind, RatioScenario, ShadowingParams};
use crate::geometry::{sample_annulus_distance, Geometry};
use crate::lowint::LowIntConfig;
use crate::powerloss::{alpha_approx, cr_rate, exact_alpha, LinkBudget};

/// Substream purposes, kept disjoint in the high bits of the stream id.
const STREAM_DROPS: u64 = 0;
const STREAM_CALIBRATION: u64 = 1;
const STREAM_FROZEN: u64 = 2;

/// Drops per parallel work unit. Each chunk is self-contained, so the value
/// affects performance only, never results.
const CHUNK: u64 = 8192;

/// Counter-based substream for one drop: worker count cannot affect which
/// random values drop `index` sees.
fn task_rng(seed: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    debug_assert!(index < 1 << 56);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((purpose << 56) | index);
    rng
}

/// Full description of one simulated deployment.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub geom: Geometry,
    /// Path-loss exponent γ.
    pub gamma: f64,
    pub shadowing: ShadowingParams,
    /// Fast fading per link. PP and PC default to Rayleigh.
    pub fading_pp: FadingKind,
    pub fading_pc: FadingKind,
    pub fading_cp: FadingKind,
    pub fading_cc: FadingKind,
    /// Transmit powers of the PU and CR devices.
    pub p_p: f64,
    pub p_c: f64,
    /// Noise powers at the PU and CR receivers.
    pub n_p: f64,
    pub n_c: f64,
    /// Deployment constants of the PU- and CR-transmitter links; see
    /// [`calibrate_constants`].
    pub a_p: f64,
    pub a_c: f64,
    pub seed: u64,
}

impl ScenarioConfig {
    /// The deployment of the results discussion: σ = 8 dB, γ = 3.5,
    /// radii (1, 100, 1000) m, unit powers and noises, Rayleigh everywhere.
    /// The constants a_p and a_c are left at one; calibrate them for
    /// studies where absolute link budgets matter.
    pub fn defaults() -> Self {
        Self {
            geom: Geometry::new(1.0, 100.0, 1000.0).expect("default radii are valid"),
            gamma: 3.5,
            shadowing: ShadowingParams::new(8.0).expect("default sigma is valid"),
            fading_pp: FadingKind::Rayleigh,
            fading_pc: FadingKind::Rayleigh,
            fading_cp: FadingKind::Rayleigh,
            fading_cc: FadingKind::Rayleigh,
            p_p: 1.0,
            p_c: 1.0,
            n_p: 1.0,
            n_c: 1.0,
            a_p: 1.0,
            a_c: 1.0,
            seed: 42,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::Domain(format!(
                "path-loss exponent must be positive, got {}",
                self.gamma
            )));
        }
        for (name, v) in [
            ("p_p", self.p_p),
            ("p_c", self.p_c),
            ("n_p", self.n_p),
            ("n_c", self.n_c),
            ("a_p", self.a_p),
            ("a_c", self.a_c),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        for kind in [
            self.fading_pp,
            self.fading_pc,
            self.fading_cp,
            self.fading_cc,
        ] {
            kind.validate()?;
        }
        Ok(())
    }

    /// CP/CC ratio scenario implied by the per-link fading kinds.
    pub fn ratio_scenario(&self) -> Result<RatioScenario> {
        RatioScenario::from_kinds(self.fading_cp, self.fading_cc)
    }

    /// The corresponding analytical low-interference configuration.
    /// Transmit powers do not cross this boundary.
    pub fn low_interference(&self) -> Result<LowIntConfig> {
        self.validate()?;
        LowIntConfig::new(
            self.geom,
            self.gamma,
            self.shadowing,
            self.n_p / self.n_c,
            self.ratio_scenario()?,
        )
    }
}

/// One Monte Carlo realization. The PC link carries no distance: positions
/// are never materialized and no in-scope formula consumes the PC gain, so
/// only its shadowing and fading values are drawn.
#[derive(Debug, Clone, Copy)]
pub struct Drop {
    pub r_pp: f64,
    pub r_cp: f64,
    pub r_cc: f64,
    pub x_pp: f64,
    pub x_cp: f64,
    pub x_cc: f64,
    pub x_pc: f64,
    pub fp_pp: f64,
    pub fp_cp: f64,
    pub fp_cc: f64,
    pub fp_pc: f64,
    /// Regime variable; the low-interference regime is a < 1.
    pub a: f64,
    pub alpha_exact: f64,
    pub alpha_approx: f64,
    /// CR rate, defined only in the low-interference regime.
    pub r_cr: Option<f64>,
}

/// Composite link gains and SNR-style powers of one drop, for callers that
/// need more than the [`Drop`] summary (fixed-gain studies, power sweeps).
#[derive(Debug, Clone, Copy)]
pub struct DropGains {
    pub gamma_pp: f64,
    pub gamma_cp: f64,
    pub gamma_cc: f64,
    /// |s|² = P_p·Γ_pp·|p̃|²/N_p.
    pub s_sq: f64,
    /// |t|² = P_c·Γ_cp·|f̃|²/N_p.
    pub t_sq: f64,
    /// |c|² = Γ_cc·|c̃|².
    pub c_sq: f64,
}

/// A Monte Carlo point estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateWithError {
    pub value: f64,
    pub std_error: f64,
    /// Raw drop count.
    pub n: usize,
    /// Sample count surviving conditioning.
    pub n_effective: usize,
}

impl EstimateWithError {
    fn from_sum_sq(sum: f64, sum_sq: f64, k: usize, n: usize) -> Self {
        let kf = k as f64;
        let mean = sum / kf;
        let var = if k > 1 {
            ((sum_sq - sum * sum / kf) / (kf - 1.0)).max(0.0)
        } else {
            0.0
        };
        Self {
            value: mean,
            std_error: (var / kf).sqrt(),
            n,
            n_effective: k,
        }
    }

    fn binomial(successes: u64, n: u64) -> Self {
        let p = successes as f64 / n as f64;
        Self {
            value: p,
            std_error: (p * (1.0 - p) / n as f64).sqrt(),
            n: n as usize,
            n_effective: n as usize,
        }
    }
}

/// Map drop-index chunks in parallel and return the per-chunk results in
/// index order, so downstream reductions are worker-count independent.
fn collect_chunks<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let n_chunks = n.div_ceil(CHUNK).max(1);
    (0..n_chunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * CHUNK;
            let hi = (lo + CHUNK).min(n);
            f(lo, hi)
        })
        .collect()
}

fn run_drop_inner(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> (Drop, DropGains) {
    let geom = cfg.geom;
    // sampling order is part of the reproducibility contract:
    // distances (pp, cp, cc), shadowing (pp, cp, cc, pc), fading (pp, cp, cc, pc)
    let r_pp = sample_annulus_distance(geom.r0(), geom.rp(), rng).expect("validated geometry");
    let r_cp = sample_annulus_distance(geom.r0(), geom.rp(), rng).expect("validated geometry");
    let r_cc = sample_annulus_distance(geom.r0(), geom.rc(), rng).expect("validated geometry");
    let x_pp = cfg.shadowing.sample(rng);
    let x_cp = cfg.shadowing.sample(rng);
    let x_cc = cfg.shadowing.sample(rng);
    let x_pc = cfg.shadowing.sample(rng);
    let fp_pp = cfg.fading_pp.sample_power(rng);
    let fp_cp = cfg.fading_cp.sample_power(rng);
    let fp_cc = cfg.fading_cc.sample_power(rng);
    let fp_pc = cfg.fading_pc.sample_power(rng);

    let gamma_pp = cfg.a_p * x_pp.exp() * r_pp.powf(-cfg.gamma);
    let gamma_cp = cfg.a_c * x_cp.exp() * r_cp.powf(-cfg.gamma);
    let gamma_cc = cfg.a_c * x_cc.exp() * r_cc.powf(-cfg.gamma);

    let gains = DropGains {
        gamma_pp,
        gamma_cp,
        gamma_cc,
        s_sq: cfg.p_p * gamma_pp * fp_pp / cfg.n_p,
        t_sq: cfg.p_c * gamma_cp * fp_cp / cfg.n_p,
        c_sq: gamma_cc * fp_cc,
    };
    (
        finish_drop(
            cfg,
            [r_pp, r_cp, r_cc],
            [x_pp, x_cp, x_cc, x_pc],
            [fp_pp, fp_cp, fp_cc, fp_pc],
            &gains,
        ),
        gains,
    )
}

fn finish_drop(
    cfg: &ScenarioConfig,
    r: [f64; 3],
    x: [f64; 4],
    fp: [f64; 4],
    gains: &DropGains,
) -> Drop {
    let a = (cfg.n_c * gains.gamma_cp * fp[1] / (cfg.n_p * gains.gamma_cc * fp[2])).sqrt();
    let alpha = exact_alpha(gains.s_sq, gains.t_sq).expect("nonnegative powers");
    let approx = alpha_approx(gains.s_sq, gains.t_sq).expect("nonnegative powers");
    let r_cr = if a < 1.0 {
        Some(cr_rate(gains.c_sq, alpha, cfg.p_c, cfg.n_c).expect("alpha in [0,1)"))
    } else {
        None
    };
    let drop = Drop {
        r_pp: r[0],
        r_cp: r[1],
        r_cc: r[2],
        x_pp: x[0],
        x_cp: x[1],
        x_cc: x[2],
        x_pc: x[3],
        fp_pp: fp[0],
        fp_cp: fp[1],
        fp_cc: fp[2],
        fp_pc: fp[3],
        a,
        alpha_exact: alpha,
        alpha_approx: approx,
        r_cr,
    };
    debug_assert!(drop.a >= 0.0);
    debug_assert!((0.0..1.0).contains(&drop.alpha_exact));
    debug_assert!(drop.r_cr.is_none_or(|v| v >= 0.0));
    drop
}

/// Simulate one drop from an explicit random stream.
pub fn run_drop(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> Result<Drop> {
    cfg.validate()?;
    Ok(run_drop_inner(cfg, rng).0)
}

/// The substream-indexed drop, as used by every estimator: drop `index` of
/// a run is the same regardless of which worker executes it.
pub fn run_indexed_drop(cfg: &ScenarioConfig, index: u64) -> Result<Drop> {
    cfg.validate()?;
    let mut rng = task_rng(cfg.seed, STREAM_DROPS, index);
    Ok(run_drop_inner(cfg, &mut rng).0)
}

/// One placement-plus-shadowing draw with the link gains frozen; fast
/// fading stays free. Used for fixed-link-gain studies.
#[derive(Debug, Clone, Copy)]
pub struct FrozenGains {
    pub r_pp: f64,
    pub r_cp: f64,
    pub r_cc: f64,
    pub x_pp: f64,
    pub x_cp: f64,
    pub x_cc: f64,
    pub x_pc: f64,
    pub gamma_pp: f64,
    pub gamma_cp: f64,
    pub gamma_cc: f64,
}

impl FrozenGains {
    /// The fixed-gain link budget these gains induce.
    pub fn budget(&self, cfg: &ScenarioConfig) -> Result<LinkBudget> {
        LinkBudget::new(
            cfg.p_p * self.gamma_pp / cfg.n_p,
            cfg.p_c * self.gamma_cp / cfg.n_p,
            (cfg.n_c / cfg.n_p) * (self.gamma_cp / self.gamma_cc),
            self.gamma_cc,
            cfg.p_c,
            cfg.n_c,
        )
    }
}

/// Draw the `index`-th frozen-gain realization (placement and shadowing
/// only, from a substream disjoint from the drop streams).
pub fn sample_frozen_gains(cfg: &ScenarioConfig, index: u64) -> Result<FrozenGains> {
    cfg.validate()?;
    let geom = cfg.geom;
    let mut rng = task_rng(cfg.seed, STREAM_FROZEN, index);
    let r_pp = sample_annulus_distance(geom.r0(), geom.rp(), &mut rng)?;
    let r_cp = sample_annulus_distance(geom.r0(), geom.rp(), &mut rng)?;
    let r_cc = sample_annulus_distance(geom.r0(), geom.rc(), &mut rng)?;
    let x_pp = cfg.shadowing.sample(&mut rng);
    let x_cp = cfg.shadowing.sample(&mut rng);
    let x_cc = cfg.shadowing.sample(&mut rng);
    let x_pc = cfg.shadowing.sample(&mut rng);
    Ok(FrozenGains {
        r_pp,
        r_cp,
        r_cc,
        x_pp,
        x_cp,
        x_cc,
        x_pc,
        gamma_pp: cfg.a_p * x_pp.exp() * r_pp.powf(-cfg.gamma),
        gamma_cp: cfg.a_c * x_cp.exp() * r_cp.powf(-cfg.gamma),
        gamma_cc: cfg.a_c * x_cc.exp() * r_cc.powf(-cfg.gamma),
    })
}

/// Simulate drop `index` with frozen link gains: only fast fading varies.
pub fn run_frozen_drop(cfg: &ScenarioConfig, gains: &FrozenGains, index: u64) -> Result<Drop> {
    cfg.validate()?;
    let mut rng = task_rng(cfg.seed, STREAM_DROPS, index);
    let fp_pp = cfg.fading_pp.sample_power(&mut rng);
    let fp_cp = cfg.fading_cp.sample_power(&mut rng);
    let fp_cc = cfg.fading_cc.sample_power(&mut rng);
    let fp_pc = cfg.fading_pc.sample_power(&mut rng);
    let dg = DropGains {
        gamma_pp: gains.gamma_pp,
        gamma_cp: gains.gamma_cp,
        gamma_cc: gains.gamma_cc,
        s_sq: cfg.p_p * gains.gamma_pp * fp_pp / cfg.n_p,
        t_sq: cfg.p_c * gains.gamma_cp * fp_cp / cfg.n_p,
        c_sq: gains.gamma_cc * fp_cc,
    };
    Ok(finish_drop(
        cfg,
        [gains.r_pp, gains.r_cp, gains.r_cc],
        [gains.x_pp, gains.x_cp, gains.x_cc, gains.x_pc],
        [fp_pp, fp_cp, fp_cc, fp_pc],
        &dg,
    ))
}

/// Controls for [`calibrate_constants`].
#[derive(Debug, Clone, Copy)]
pub struct CalibrationOptions {
    /// Fraction of time the PP-link SNR must stay above the threshold.
    pub quantile_prob: f64,
    /// SNR threshold in dB.
    pub snr_threshold_db: f64,
    /// Whether fast fading counts as part of the "time" variation alongside
    /// placement and shadowing.
    pub include_fading: bool,
}

impl Default for CalibrationOptions {
    fn default() -> Self {
        Self {
            quantile_prob: 0.95,
            snr_threshold_db: 5.0,
            include_fading: true,
        }
    }
}

/// Smallest draw count accepted by [`calibrate_constants`].
pub const MIN_CALIBRATION_DRAWS: u64 = 100_000;

/// Determine the deployment constants (a_p, a_c) from the coverage rule:
/// a_p makes the empirical (1 − quantile_prob) quantile of the PP-link SNR
/// equal the threshold, and a_c follows from equal edge threshold power,
/// a_c = a_p·(R_c/R_p)^γ.
///
/// The quantile is the nearest-rank statistic of n draws of
/// e^X·r^(−γ)·|p̃|² with r from the [r0, rp] annulus law. Deterministic for
/// fixed (cfg.seed, n, options).
pub fn calibrate_constants(
    cfg: &ScenarioConfig,
    n: u64,
    options: &CalibrationOptions,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if n < MIN_CALIBRATION_DRAWS {
        return Err(Error::InsufficientSamples {
            needed: MIN_CALIBRATION_DRAWS as usize,
            got: n as usize,
        });
    }
    if !(options.quantile_prob > 0.0 && options.quantile_prob < 1.0) {
        return Err(Error::Domain(format!(
            "quantile_prob must lie in (0,1), got {}",
            options.quantile_prob
        )));
    }

    let chunks = collect_chunks(n, |lo, hi| {
        let mut values = Vec::with_capacity((hi - lo) as usize);
        for i in lo..hi {
            let mut rng = task_rng(cfg.seed, STREAM_CALIBRATION, i);
            let r = sample_annulus_distance(cfg.geom.r0(), cfg.geom.rp(), &mut rng)
                .expect("validated geometry");
            let x = cfg.shadowing.sample(&mut rng);
            let fp = if options.include_fading {
                cfg.fading_pp.sample_power(&mut rng)
            } else {
                1.0
            };
            values.push(x.exp() * r.powf(-cfg.gamma) * fp);
        }
        values
    });
    let mut samples: Vec<f64> = chunks.into_iter().flatten().collect();
    samples.sort_by(f64::total_cmp);

    // nearest-rank lower quantile
    let rank = ((1.0 - options.quantile_prob) * n as f64).ceil().max(1.0) as usize;
    let q = samples[rank - 1];
    if !(q > 0.0) {
        return Err(Error::InternalConsistency {
            context: "calibration quantile",
            value: q,
        });
    }

    let a_p = 10f64.powf(options.snr_threshold_db / 10.0) * cfg.n_p / (cfg.p_p * q);
    let a_c = a_p * (cfg.geom.rc() / cfg.geom.rp()).powf(cfg.gamma);
    Ok((a_p, a_c))
}

/// Proportion of drops in the low-interference regime, with binomial
/// standard error.
pub fn estimate_p_low_interference(cfg: &ScenarioConfig, n: u64) -> Result<EstimateWithError> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::InsufficientSamples { needed: 1, got: 0 });
    }
    let counts = collect_chunks(n, |lo, hi| {
        let mut hits = 0u64;
        for i in lo..hi {
            let mut rng = task_rng(cfg.seed, STREAM_DROPS, i);
            let (drop, _) = run_drop_inner(cfg, &mut rng);
            if drop.a < 1.0 {
                hits += 1;
            }
        }
        hits
    });
    let successes: u64 = counts.into_iter().sum();
    Ok(EstimateWithError::binomial(successes, n))
}

/// Histogram with densities normalized to integrate to one.
#[derive(Debug, Clone)]
pub struct Histogram {
    /// `bins + 1` edges, ascending.
    pub edges: Vec<f64>,
    pub densities: Vec<f64>,
}

impl Histogram {
    /// Histogram of the samples over [lo, hi] with equal-width bins.
    /// Samples outside the range are ignored.
    pub fn from_samples(samples: &[f64], lo: f64, hi: f64, bins: usize) -> Self {
        assert!(bins >= 1 && hi > lo);
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        let mut kept = 0u64;
        for &s in samples {
            if s >= lo && s <= hi {
                let idx = (((s - lo) / width) as usize).min(bins - 1);
                counts[idx] += 1;
                kept += 1;
            }
        }
        let norm = if kept > 0 {
            1.0 / (kept as f64 * width)
        } else {
            0.0
        };
        Self {
            edges: (0..=bins).map(|i| lo + i as f64 * width).collect(),
            densities: counts.iter().map(|&c| c as f64 * norm).collect(),
        }
    }

    pub fn bin_centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }
}

/// Two-sample Kolmogorov–Smirnov distance between sorted samples.
pub fn ks_distance(sorted_a: &[f64], sorted_b: &[f64]) -> f64 {
    assert!(!sorted_a.is_empty() && !sorted_b.is_empty());
    let (na, nb) = (sorted_a.len() as f64, sorted_b.len() as f64);
    let mut i = 0usize;
    let mut j = 0usize;
    let mut d: f64 = 0.0;
    while i < sorted_a.len() && j < sorted_b.len() {
        let xa = sorted_a[i];
        let xb = sorted_b[j];
        // consume every sample at the smaller value (ties on both sides)
        // before comparing the empirical CDFs
        let v = xa.min(xb);
        while i < sorted_a.len() && sorted_a[i] == v {
            i += 1;
        }
        while j < sorted_b.len() && sorted_b[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Conditional statistics of the power loss: means, log₁₀ histograms, the
/// KS distance between the conditional laws of α and α̂, and the sorted
/// conditional samples for further analysis.
#[derive(Debug, Clone)]
pub struct AlphaStats {
    pub n: usize,
    /// Drops with a < 1 (the conditioning set for α).
    pub n_low: usize,
    /// Drops with a < 1 and α_approx < 1 (the conditioning set for α̂).
    pub n_hat: usize,
    /// Fraction of drops discarded by the a < 1 conditioning.
    pub discarded_fraction: f64,
    /// E[α | a<1].
    pub mean_alpha: EstimateWithError,
    /// E[α_approx | a<1, α_approx<1].
    pub mean_alpha_hat: EstimateWithError,
    pub log10_alpha_hist: Histogram,
    pub log10_alpha_hat_hist: Histogram,
    pub ks_alpha_vs_alpha_hat: f64,
    pub alpha_sorted: Vec<f64>,
    pub alpha_hat_sorted: Vec<f64>,
}

/// Minimum conditioned sample count for the alpha and rate statistics.
pub const MIN_CONDITIONED_SAMPLES: usize = 1_000;

pub fn estimate_alpha_stats(cfg: &ScenarioConfig, n: u64) -> Result<AlphaStats> {
    cfg.validate()?;
    let chunks = collect_chunks(n, |lo, hi| {
        let mut alpha = Vec::new();
        let mut alpha_hat = Vec::new();
        for i in lo..hi {
            let mut rng = task_rng(cfg.seed, STREAM_DROPS, i);
            let (drop, _) = run_drop_inner(cfg, &mut rng);
            if drop.a < 1.0 {
                alpha.push(drop.alpha_exact);
                if drop.alpha_approx < 1.0 {
                    alpha_hat.push(drop.alpha_approx);
                }
            }
        }
        (alpha, alpha_hat)
    });
    let mut alpha = Vec::new();
    let mut alpha_hat = Vec::new();
    for (a, h) in chunks {
        alpha.extend(a);
        alpha_hat.extend(h);
    }
    let (n_low, n_hat) = (alpha.len(), alpha_hat.len());
    if n_low < MIN_CONDITIONED_SAMPLES || n_hat < MIN_CONDITIONED_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_CONDITIONED_SAMPLES,
            got: n_low.min(n_hat),
        });
    }

    let sum: f64 = alpha.iter().sum();
    let sum_sq: f64 = alpha.iter().map(|v| v * v).sum();
    let mean_alpha = EstimateWithError::from_sum_sq(sum, sum_sq, n_low, n as usize);
    let sum_h: f64 = alpha_hat.iter().sum();
    let sum_sq_h: f64 = alpha_hat.iter().map(|v| v * v).sum();
    let mean_alpha_hat = EstimateWithError::from_sum_sq(sum_h, sum_sq_h, n_hat, n as usize);

    alpha.sort_by(f64::total_cmp);
    alpha_hat.sort_by(f64::total_cmp);
    let ks = ks_distance(&alpha, &alpha_hat);

    // log-scale histograms over a shared range; zero draws are a
    // measure-zero event and carry no log coordinate
    let log_a: Vec<f64> = alpha
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|v| v.log10())
        .collect();
    let log_h: Vec<f64> = alpha_hat
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|v| v.log10())
        .collect();
    let lo = log_a
        .first()
        .copied()
        .unwrap_or(-12.0)
        .min(log_h.first().copied().unwrap_or(-12.0));
    let hi = log_a
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(log_h.last().copied().unwrap_or(0.0));
    let hi = hi.max(lo + 1e-9);
    let bins = 60;
    let log10_alpha_hist = Histogram::from_samples(&log_a, lo, hi, bins);
    let log10_alpha_hat_hist = Histogram::from_samples(&log_h, lo, hi, bins);

    Ok(AlphaStats {
        n: n as usize,
        n_low,
        n_hat,
        discarded_fraction: 1.0 - n_low as f64 / n as f64,
        mean_alpha,
        mean_alpha_hat,
        log10_alpha_hist,
        log10_alpha_hat_hist,
        ks_alpha_vs_alpha_hat: ks,
        alpha_sorted: alpha,
        alpha_hat_sorted: alpha_hat,
    })
}

/// Conditional rate statistics: the rate under the exact α, the rate under
/// α̂ (same drop, same |c|²), and the per-drop percent loss relative to an
/// interference-free CR.
#[derive(Debug, Clone)]
pub struct RateStats {
    pub n: usize,
    pub n_low: usize,
    pub n_hat: usize,
    pub discarded_fraction: f64,
    /// E[R | a<1] with the exact power loss.
    pub mean_rate: EstimateWithError,
    /// E[R̂ | a<1, α_approx<1] with the approximate power loss.
    pub mean_rate_hat: EstimateWithError,
    /// E[100·(R(0) − R(α))/R(0) | a<1].
    pub mean_percent_loss: EstimateWithError,
    pub ks_rate_vs_rate_hat: f64,
    pub rate_sorted: Vec<f64>,
    pub rate_hat_sorted: Vec<f64>,
}

/// Percent rate lost to relaying, per drop: both rates use the same |c|².
pub fn percent_rate_loss(rate_interference_free: f64, rate: f64) -> f64 {
    if rate_interference_free > 0.0 {
        100.0 * (rate_interference_free - rate) / rate_interference_free
    } else {
        0.0
    }
}

pub fn estimate_rate_stats(cfg: &ScenarioConfig, n: u64) -> Result<RateStats> {
    cfg.validate()?;
    // per-chunk moment accumulators are combined in chunk order, matching
    // the association used by sweep_power_inflation so that an inflation
    // factor of one reproduces these means bit-for-bit
    struct RateChunk {
        rates: Vec<f64>,
        rate_hats: Vec<f64>,
        rate_moments: (f64, f64),
        hat_moments: (f64, f64),
        loss_moments: (f64, f64),
        n_low: usize,
        n_hat: usize,
    }
    let chunks = collect_chunks(n, |lo, hi| {
        let mut c = RateChunk {
            rates: Vec::new(),
            rate_hats: Vec::new(),
            rate_moments: (0.0, 0.0),
            hat_moments: (0.0, 0.0),
            loss_moments: (0.0, 0.0),
            n_low: 0,
            n_hat: 0,
        };
        for i in lo..hi {
            let mut rng = task_rng(cfg.seed, STREAM_DROPS, i);
            let (drop, gains) = run_drop_inner(cfg, &mut rng);
            if drop.a < 1.0 {
                let rate = drop.r_cr.expect("rate defined in the regime");
                c.rates.push(rate);
                c.rate_moments.0 += rate;
                c.rate_moments.1 += rate * rate;
                c.n_low += 1;
                let rate_free = cr_rate(gains.c_sq, 0.0, cfg.p_c, cfg.n_c).expect("alpha 0 valid");
                let loss = percent_rate_loss(rate_free, rate);
                c.loss_moments.0 += loss;
                c.loss_moments.1 += loss * loss;
                if drop.alpha_approx < 1.0 {
                    let hat = cr_rate(gains.c_sq, drop.alpha_approx, cfg.p_c, cfg.n_c)
                        .expect("alpha_approx < 1");
                    c.rate_hats.push(hat);
                    c.hat_moments.0 += hat;
                    c.hat_moments.1 += hat * hat;
                    c.n_hat += 1;
                }
            }
        }
        c
    });
    let mut rates = Vec::new();
    let mut rate_hats = Vec::new();
    let mut rate_moments = (0.0f64, 0.0f64);
    let mut hat_moments = (0.0f64, 0.0f64);
    let mut loss_moments = (0.0f64, 0.0f64);
    let (mut n_low, mut n_hat) = (0usize, 0usize);
    for c in chunks {
        rates.extend(c.rates);
        rate_hats.extend(c.rate_hats);
        rate_moments.0 += c.rate_moments.0;
        rate_moments.1 += c.rate_moments.1;
        hat_moments.0 += c.hat_moments.0;
        hat_moments.1 += c.hat_moments.1;
        loss_moments.0 += c.loss_moments.0;
        loss_moments.1 += c.loss_moments.1;
        n_low += c.n_low;
        n_hat += c.n_hat;
    }
    if n_low < MIN_CONDITIONED_SAMPLES || n_hat < MIN_CONDITIONED_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_CONDITIONED_SAMPLES,
            got: n_low.min(n_hat),
        });
    }

    let mean_rate =
        EstimateWithError::from_sum_sq(rate_moments.0, rate_moments.1, n_low, n as usize);
    let mean_rate_hat =
        EstimateWithError::from_sum_sq(hat_moments.0, hat_moments.1, n_hat, n as usize);
    let mean_percent_loss =
        EstimateWithError::from_sum_sq(loss_moments.0, loss_moments.1, n_low, n as usize);

    rates.sort_by(f64::total_cmp);
    rate_hats.sort_by(f64::total_cmp);
    let ks = ks_distance(&rates, &rate_hats);

    Ok(RateStats {
        n: n as usize,
        n_low,
        n_hat,
        discarded_fraction: 1.0 - n_low as f64 / n as f64,
        mean_rate,
        mean_rate_hat,
        mean_percent_loss,
        ks_rate_vs_rate_hat: ks,
        rate_sorted: rates,
        rate_hat_sorted: rate_hats,
    })
}

/// Mean conditional CR rate when the CR transmit power is inflated by each
/// factor in `betas` (raw power scaling: the deployment constants are not
/// recalibrated). The regime conditioning set is identical across factors
/// because a does not depend on P_c.
pub fn sweep_power_inflation(
    cfg: &ScenarioConfig,
    betas: &[f64],
    n: u64,
) -> Result<Vec<(f64, EstimateWithError)>> {
    cfg.validate()?;
    for &b in betas {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::Domain(format!(
                "power inflation factors must be positive, got {b}"
            )));
        }
    }
    let chunks = collect_chunks(n, |lo, hi| {
        let mut acc = vec![(0.0f64, 0.0f64, 0usize); betas.len()];
        for i in lo..hi {
            let mut rng = task_rng(cfg.seed, STREAM_DROPS, i);
            let (drop, gains) = run_drop_inner(cfg, &mut rng);
            if drop.a >= 1.0 {
                continue;
            }
            for (bi, &beta) in betas.iter().enumerate() {
                let t_sq = beta * gains.t_sq;
                let alpha = exact_alpha(gains.s_sq, t_sq).expect("nonnegative powers");
                let rate =
                    cr_rate(gains.c_sq, alpha, beta * cfg.p_c, cfg.n_c).expect("alpha in [0,1)");
                acc[bi].0 += rate;
                acc[bi].1 += rate * rate;
                acc[bi].2 += 1;
            }
        }
        acc
    });
    let mut totals = vec![(0.0f64, 0.0f64, 0usize); betas.len()];
    for chunk in chunks {
        for (t, c) in totals.iter_mut().zip(chunk) {
            t.0 += c.0;
            t.1 += c.1;
            t.2 += c.2;
        }
    }
    let mut out = Vec::with_capacity(betas.len());
    for (&beta, &(sum, sum_sq, k)) in betas.iter().zip(&totals) {
        if k < MIN_CONDITIONED_SAMPLES {
            return Err(Error::InsufficientSamples {
                needed: MIN_CONDITIONED_SAMPLES,
                got: k,
            });
        }
        out.push((
            beta,
            EstimateWithError::from_sum_sq(sum, sum_sq, k, n as usize),
        ));
    }
    Ok(out)
}
