//! CDF of the CR rate at fixed link gains: the single-integral analytic
//! form (with the closed-form α̂ law inside) against simulation under both
//! the approximate and the exact power loss.
//!
//! Run with: cargo run --release --example rate_cdf

use crcap::fading::FadingKind;
use crcap::montecarlo::{
    calibrate_constants, run_frozen_drop, sample_frozen_gains, CalibrationOptions, ScenarioConfig,
};
use crcap::powerloss::{alpha_hat_cdf_rayleigh, cr_rate, cr_rate_cdf};

fn main() -> crcap::Result<()> {
    let mut cfg = ScenarioConfig::defaults();
    let (a_p, a_c) = calibrate_constants(&cfg, 500_000, &CalibrationOptions::default())?;
    cfg.a_p = a_p;
    cfg.a_c = a_c;

    let gains = sample_frozen_gains(&cfg, 0)?;
    let budget = gains.budget(&cfg)?;
    println!(
        "frozen gains: mu_s = {:.3e}, mu_t = {:.3e}, d = {:.3e}, Gcc = {:.3e}\n",
        budget.mu_s, budget.mu_t, budget.d, budget.gamma_cc
    );

    let n = 200_000u64;
    let mut rates = Vec::new();
    let mut rate_hats = Vec::new();
    for i in 0..n {
        let drop = run_frozen_drop(&cfg, &gains, i)?;
        if drop.a < 1.0 {
            rates.push(drop.r_cr.expect("in regime"));
            if drop.alpha_approx < 1.0 {
                let c_sq = gains.gamma_cc * drop.fp_cc;
                rate_hats.push(cr_rate(c_sq, drop.alpha_approx, cfg.p_c, cfg.n_c)?);
            }
        }
    }
    rates.sort_by(f64::total_cmp);
    rate_hats.sort_by(f64::total_cmp);

    let x_max = rates.last().copied().unwrap_or(8.0).ceil();
    println!(
        "{:>8} {:>12} {:>12} {:>12}",
        "bits", "analytic", "mc(alpha_hat)", "mc(alpha)"
    );
    for g in 1..=10 {
        let x = x_max * g as f64 / 10.0;
        let analytic = cr_rate_cdf(x, &budget, FadingKind::Rayleigh, |v| {
            alpha_hat_cdf_rayleigh(v, &budget)
        })?;
        let hat = rate_hats.partition_point(|&v| v <= x) as f64 / rate_hats.len() as f64;
        let exact = rates.partition_point(|&v| v <= x) as f64 / rates.len() as f64;
        println!("{x:>8.2} {analytic:>12.5} {hat:>12.5} {exact:>12.5}");
    }
    Ok(())
}
