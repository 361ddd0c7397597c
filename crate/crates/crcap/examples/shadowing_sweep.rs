//! P(a < 1) as a function of the shadowing spread σ, analytically and
//! simulated: heavier shadowing makes the regime less likely.
//!
//! Run with: cargo run --release --example shadowing_sweep

use crcap::lowint::prob_low_interference;
use crcap::montecarlo::{estimate_p_low_interference, ScenarioConfig};
use crcap::ShadowingParams;

fn main() -> crcap::Result<()> {
    println!(
        "{:>10} {:>10} {:>10} {:>10}",
        "sigma_dB", "analytic", "simulated", "std_err"
    );
    for sigma in [0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0] {
        let mut cfg = ScenarioConfig::defaults();
        cfg.shadowing = ShadowingParams::new(sigma)?;
        let analytic = prob_low_interference(&cfg.low_interference()?)?;
        let mc = estimate_p_low_interference(&cfg, 100_000)?;
        println!(
            "{:>10.1} {:>10.6} {:>10.6} {:>10.6}",
            sigma, analytic, mc.value, mc.std_error
        );
    }
    Ok(())
}
