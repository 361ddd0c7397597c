//! P(a < 1) against the coverage ratio R_c/R_p for the four fading
//! assignments. The probability decays toward the fair coin at equal
//! radii, where the two links become exchangeable.
//!
//! Run with: cargo run --release --example coverage_sweep

use crcap::fading::{db_to_linear, RatioScenario};
use crcap::lowint::prob_low_interference;
use crcap::montecarlo::ScenarioConfig;
use crcap::Geometry;

fn main() -> crcap::Result<()> {
    let k = db_to_linear(5.0);
    let scenarios = [
        ("Ray/Ray", RatioScenario::RayRay),
        ("Ray/Ric", RatioScenario::RayRic { k_factor: k }),
        ("Ric/Ray", RatioScenario::RicRay { k_factor: k }),
        ("Ric/Ric", RatioScenario::RicRic { k_factor: k }),
    ];

    print!("{:>8}", "Rc/Rp");
    for (name, _) in &scenarios {
        print!(" {name:>10}");
    }
    println!();
    for ratio in [0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0] {
        print!("{ratio:>8.2}");
        for (_, scenario) in &scenarios {
            let mut cfg = ScenarioConfig::defaults();
            cfg.geom = Geometry::new(1.0, ratio * 1000.0, 1000.0)?;
            cfg.fading_cp = scenario.cp_kind();
            cfg.fading_cc = scenario.cc_kind();
            let p = prob_low_interference(&cfg.low_interference()?)?;
            print!(" {p:>10.6}");
        }
        println!();
    }
    Ok(())
}
