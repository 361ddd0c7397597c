//! Fixed-link-gain comparison: for five frozen placement/shadowing draws,
//! the closed-form CDF of α̂ against the simulated conditional CDFs of both
//! α̂ and the exact α (only fast fading varies per drop set).
//!
//! Run with: cargo run --release --example alpha_cdf_fixed_gains

use crcap::montecarlo::{
    calibrate_constants, run_frozen_drop, sample_frozen_gains, CalibrationOptions, ScenarioConfig,
};
use crcap::powerloss::alpha_hat_cdf_rayleigh;

fn main() -> crcap::Result<()> {
    let mut cfg = ScenarioConfig::defaults();
    let (a_p, a_c) = calibrate_constants(&cfg, 500_000, &CalibrationOptions::default())?;
    cfg.a_p = a_p;
    cfg.a_c = a_c;

    let n = 100_000u64;
    for gain_index in 0..5 {
        let gains = sample_frozen_gains(&cfg, gain_index)?;
        let budget = gains.budget(&cfg)?;
        let mut hats = Vec::new();
        let mut exacts = Vec::new();
        for i in 0..n {
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

        println!(
            "drop set {gain_index}: mu_s = {:.3e}, mu_t = {:.3e}, d = {:.3e}",
            budget.mu_s, budget.mu_t, budget.d
        );
        println!(
            "  {:>6} {:>14} {:>14} {:>14}",
            "x", "analytic(ahat)", "mc(ahat)", "mc(alpha)"
        );
        for x in [0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0] {
            let analytic = alpha_hat_cdf_rayleigh(x, &budget)?;
            let mc_hat = hats.partition_point(|&v| v <= x) as f64 / hats.len() as f64;
            let mc_exact = exacts.partition_point(|&v| v <= x) as f64 / exacts.len() as f64;
            println!("  {x:>6.2} {analytic:>14.5} {mc_hat:>14.5} {mc_exact:>14.5}");
        }
    }
    println!("\nThe α̂ columns agree to Monte Carlo accuracy; the exact-α column");
    println!("shows how far the quadratic approximation drifts at these budgets.");
    Ok(())
}
