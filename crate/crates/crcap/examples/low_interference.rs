//! Probability that the low-interference regime holds at the default
//! deployment, for all four CP/CC fading assignments, with a Monte Carlo
//! cross-check.
//!
//! Run with: cargo run --release --example low_interference

use crcap::fading::{db_to_linear, RatioScenario};
use crcap::lowint::prob_low_interference;
use crcap::montecarlo::{estimate_p_low_interference, ScenarioConfig};

fn main() -> crcap::Result<()> {
    let k = db_to_linear(5.0);
    let scenarios = [
        ("Ray/Ray", RatioScenario::RayRay),
        ("Ray/Ric", RatioScenario::RayRic { k_factor: k }),
        ("Ric/Ray", RatioScenario::RicRay { k_factor: k }),
        ("Ric/Ric", RatioScenario::RicRic { k_factor: k }),
    ];

    println!(
        "P(a < 1) at the default deployment (sigma = 8 dB, gamma = 3.5, Rc/Rp = 0.1, K = 5 dB)"
    );
    println!(
        "{:<8} {:>10} {:>10} {:>10} {:>6}",
        "CP/CC", "analytic", "simulated", "std err", "|z|"
    );
    let n = 200_000;
    for (name, scenario) in scenarios {
        let mut cfg = ScenarioConfig::defaults();
        cfg.fading_cp = scenario.cp_kind();
        cfg.fading_cc = scenario.cc_kind();
        let analytic = prob_low_interference(&cfg.low_interference()?)?;
        let mc = estimate_p_low_interference(&cfg, n)?;
        println!(
            "{:<8} {:>10.6} {:>10.6} {:>10.6} {:>6.2}",
            name,
            analytic,
            mc.value,
            mc.std_error,
            (analytic - mc.value).abs() / mc.std_error
        );
    }
    println!("\nThe regime is dominant (well above 0.9) whenever the CR cell is a");
    println!("tenth of the primary cell, and the result barely depends on the");
    println!("fast-fading family.");
    Ok(())
}
