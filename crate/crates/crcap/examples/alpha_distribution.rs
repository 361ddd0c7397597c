//! Conditional distribution of the power-loss parameter α and of its
//! quadratic approximation α̂ at the calibrated default deployment, on a
//! log₁₀ scale, with the KS distance between the two laws.
//!
//! Run with: cargo run --release --example alpha_distribution

use crcap::montecarlo::{
    calibrate_constants, estimate_alpha_stats, CalibrationOptions, ScenarioConfig,
};

fn main() -> crcap::Result<()> {
    let mut cfg = ScenarioConfig::defaults();
    let (a_p, a_c) = calibrate_constants(&cfg, 500_000, &CalibrationOptions::default())?;
    cfg.a_p = a_p;
    cfg.a_c = a_c;

    let stats = estimate_alpha_stats(&cfg, 400_000)?;
    println!(
        "n = {}, in regime: {} ({:.2}% discarded), with alpha_approx < 1: {}",
        stats.n,
        stats.n_low,
        100.0 * stats.discarded_fraction,
        stats.n_hat
    );
    println!(
        "E[alpha | a<1] = {:.4} ± {:.4};  E[alpha_hat] = {:.4} ± {:.4}",
        stats.mean_alpha.value,
        stats.mean_alpha.std_error,
        stats.mean_alpha_hat.value,
        stats.mean_alpha_hat.std_error
    );
    println!(
        "KS distance between the conditional laws: {:.4}\n",
        stats.ks_alpha_vs_alpha_hat
    );

    println!(
        "{:>16} {:>12} {:>12}",
        "log10(alpha)", "pdf(alpha)", "pdf(alpha_hat)"
    );
    let centers = stats.log10_alpha_hist.bin_centers();
    for (i, c) in centers.iter().enumerate().step_by(4) {
        println!(
            "{:>16.2} {:>12.5} {:>12.5}",
            c, stats.log10_alpha_hist.densities[i], stats.log10_alpha_hat_hist.densities[i]
        );
    }
    Ok(())
}
