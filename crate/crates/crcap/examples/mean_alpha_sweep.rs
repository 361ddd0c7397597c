//! Mean power loss against the coverage ratio R_c/R_p. The edge-threshold
//! rule raises the CR deployment constant with R_c, so larger CR cells
//! force the CR to spend more power relaying.
//!
//! Run with: cargo run --release --example mean_alpha_sweep

use crcap::montecarlo::{
    calibrate_constants, estimate_alpha_stats, CalibrationOptions, ScenarioConfig,
};
use crcap::Geometry;

fn main() -> crcap::Result<()> {
    let base = ScenarioConfig::defaults();
    let (a_p, _) = calibrate_constants(&base, 500_000, &CalibrationOptions::default())?;

    println!(
        "{:>8} {:>12} {:>10} {:>10}",
        "Rc/Rp", "E[alpha]", "std_err", "n_eff"
    );
    for ratio in [0.05, 0.1, 0.15, 0.2, 0.25, 0.3] {
        let mut cfg = base.clone();
        cfg.geom = Geometry::new(1.0, ratio * 1000.0, 1000.0)?;
        cfg.a_p = a_p;
        cfg.a_c = a_p * ratio.powf(cfg.gamma); // edge rule per sweep point
        let stats = estimate_alpha_stats(&cfg, 200_000)?;
        println!(
            "{:>8.2} {:>12.5} {:>10.5} {:>10}",
            ratio, stats.mean_alpha.value, stats.mean_alpha.std_error, stats.mean_alpha.n_effective
        );
    }
    Ok(())
}
