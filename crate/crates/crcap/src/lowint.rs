//! Analytical probability of the low-interference regime, P(a < 1).
//!
//! The regime condition compares the CR-to-PU interference-to-noise ratio
//! with the CR's own SNR. Writing Y for the fast-fading power ratio of the
//! CP and CC links, X = X_cc − X_cp for the shadowing difference (variance
//! 2σ_sf²), Z = r_cc/r_cp for the distance ratio, and K = N_p/N_c, the
//! probability is E[F_Z(W)] with W = K^(1/γ)·e^(X/γ)·Y^(−1/γ). Expanding
//! F_Z piecewise leaves moment integrals I(m, θ, κ) of W over each piece,
//! reduced here to a single finite-range quadrature per (m, piece): the
//! inner Gaussian integral has a closed Φ-difference form, and the outer
//! integral over Y is mapped onto (0, 1) by v = y/(1+y).
//!
//! Note that transmit powers appear nowhere in this module: the regime
//! condition is independent of P_c and P_p by construction, and the
//! configuration type enforces that statically.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fading::{RatioScenario, ShadowingParams};
use crate::geometry::Geometry;
use crate::specfun::{normal_interval_prob, QuadratureSpec};

/// Everything P(a<1) depends on. Deliberately has no transmit-power fields.
#[derive(Debug, Clone)]
pub struct LowIntConfig {
    pub geom: Geometry,
    /// Path-loss exponent γ > 0.
    pub gamma: f64,
    pub shadowing: ShadowingParams,
    /// Noise ratio N_p/N_c.
    pub noise_ratio: f64,
    /// Fast-fading assignment of the CP/CC ratio.
    pub scenario: RatioScenario,
    /// Quadrature control for the moment integrals.
    pub quadrature: QuadratureSpec,
}

impl LowIntConfig {
    pub fn new(
        geom: Geometry,
        gamma: f64,
        shadowing: ShadowingParams,
        noise_ratio: f64,
        scenario: RatioScenario,
    ) -> Result<Self> {
        let cfg = Self {
            geom,
            gamma,
            shadowing,
            noise_ratio,
            scenario,
            quadrature: QuadratureSpec::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0) || !self.gamma.is_finite() {
            return Err(Error::Domain(format!(
                "path-loss exponent must be positive, got {}",
                self.gamma
            )));
        }
        if !(self.noise_ratio > 0.0) || !self.noise_ratio.is_finite() {
            return Err(Error::Domain(format!(
                "noise ratio must be positive, got {}",
                self.noise_ratio
            )));
        }
        self.scenario.validate()?;
        self.quadrature.validate()
    }
}

/// Moment integral I(m, θ, κ) = ∫_θ^κ w^(2m) f_W(w) dw for m ∈ {−1, 0, 1},
/// with 0 ≤ θ < κ ≤ ∞.
pub fn integral_i(m: i32, theta: f64, kappa: f64, cfg: &LowIntConfig) -> Result<f64> {
    cfg.validate()?;
    let scenario = cfg.scenario;
    integral_i_with(m, theta, kappa, cfg, &|y| scenario.pdf_at(y))
}

fn integral_i_with(
    m: i32,
    theta: f64,
    kappa: f64,
    cfg: &LowIntConfig,
    ratio_pdf: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    if !(-1..=1).contains(&m) {
        return Err(Error::Domain(format!(
            "moment index must be in {{-1,0,1}}, got {m}"
        )));
    }
    if !(theta >= 0.0 && theta < kappa) || theta.is_nan() || kappa.is_nan() {
        return Err(Error::Domain(format!(
            "integration range requires 0 <= theta < kappa, got [{theta}, {kappa}]"
        )));
    }

    let gamma = cfg.gamma;
    let noise_ratio = cfg.noise_ratio;
    let sigma = cfg.shadowing.sigma_natural();
    let mf = f64::from(m);
    let exponent = 2.0 * mf / gamma;
    // E[e^(2mX/γ)] factor of the inner Gaussian integral; X has variance 2σ²
    let prefactor = (4.0 * mf * mf * sigma * sigma / (gamma * gamma)).exp();
    let shift = 4.0 * mf * sigma * sigma / gamma;
    let denom = std::f64::consts::SQRT_2 * sigma;
    let ln_theta_part = if theta == 0.0 {
        f64::NEG_INFINITY
    } else {
        gamma * theta.ln() - noise_ratio.ln()
    };
    let ln_kappa_part = if kappa.is_infinite() {
        f64::INFINITY
    } else {
        gamma * kappa.ln() - noise_ratio.ln()
    };

    // Gaussian-CDF argument for one integration limit; σ = 0 collapses the
    // Φ factor to a step function
    let phi_arg = |ln_part: f64, ln_y: f64| -> f64 {
        if ln_part.is_infinite() {
            return ln_part;
        }
        let v = ln_part + ln_y;
        if denom > 0.0 {
            (v - shift) / denom
        } else if v > 0.0 {
            f64::INFINITY
        } else if v < 0.0 {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    };

    let integrand = |v: f64| -> f64 {
        let one_minus = 1.0 - v;
        if v <= 0.0 || one_minus <= 0.0 {
            return 0.0;
        }
        let y = v / one_minus;
        let ln_y = y.ln();
        let window =
            normal_interval_prob(phi_arg(ln_theta_part, ln_y), phi_arg(ln_kappa_part, ln_y));
        if window <= 0.0 {
            // avoids 0·∞ from the moment power in the far tails
            return 0.0;
        }
        let moment = if m == 0 {
            1.0
        } else {
            (exponent * (noise_ratio.ln() - ln_y)).exp()
        };
        moment * prefactor * window * ratio_pdf(y) / (one_minus * one_minus)
    };

    crate::specfun::integrate(integrand, 0.0, 1.0, &cfg.quadrature)
}

/// P(a < 1): the piecewise-CDF coefficients of the distance ratio summed
/// against the moment integrals, Σᵢ Σⱼ cᵢⱼ · I(j−1, θᵢ, θᵢ₊₁).
///
/// The un-clamped sum must already lie in [0, 1] to within 1e-6; anything
/// else is reported as an internal consistency failure rather than clamped
/// away.
pub fn prob_low_interference(cfg: &LowIntConfig) -> Result<f64> {
    cfg.validate()?;
    let pieces = cfg.geom.piecewise_coefficients();
    let thetas = pieces.thetas();
    let coeffs = pieces.coefficients();

    // the Rician/Rician series dominates the cost, and quadrature panels
    // revisit the same nodes across the twelve (m, piece) integrals, so f_Y
    // is memoized per y-bit-pattern for the duration of this call
    let scenario = cfg.scenario;
    let cache: RefCell<HashMap<u64, f64>> = RefCell::new(HashMap::new());
    let use_cache = matches!(scenario, RatioScenario::RicRic { .. });
    let ratio_pdf = move |y: f64| -> f64 {
        if !use_cache {
            return scenario.pdf_at(y);
        }
        let key = y.to_bits();
        if let Some(&v) = cache.borrow().get(&key) {
            return v;
        }
        let v = scenario.pdf_at(y);
        cache.borrow_mut().insert(key, v);
        v
    };

    let mut total = 0.0;
    for i in 0..5 {
        let theta = thetas[i];
        let kappa = thetas[i + 1];
        if kappa <= theta {
            continue; // zero-width piece
        }
        for (j, &c) in coeffs[i].iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            total += c * integral_i_with(j as i32 - 1, theta, kappa, cfg, &ratio_pdf)?;
        }
    }

    if !(-1e-6..=1.0 + 1e-6).contains(&total) {
        return Err(Error::InternalConsistency {
            context: "prob_low_interference",
            value: total,
        });
    }
    Ok(total.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fading::db_to_linear;
    use crate::specfun::integrate;

    fn config(
        r0: f64,
        rc: f64,
        rp: f64,
        gamma: f64,
        sigma_db: f64,
        scenario: RatioScenario,
    ) -> LowIntConfig {
        LowIntConfig::new(
            Geometry::new(r0, rc, rp).unwrap(),
            gamma,
            ShadowingParams::new(sigma_db).unwrap(),
            1.0,
            scenario,
        )
        .unwrap()
    }

    fn defaults(scenario: RatioScenario) -> LowIntConfig {
        config(1.0, 100.0, 1000.0, 3.5, 8.0, scenario)
    }

    #[test]
    fn total_mass_is_one_for_every_scenario() {
        let k = db_to_linear(5.0);
        for scenario in [
            RatioScenario::RayRay,
            RatioScenario::RayRic { k_factor: k },
            RatioScenario::RicRay { k_factor: k },
            RatioScenario::RicRic { k_factor: k },
        ] {
            let cfg = defaults(scenario);
            let total = integral_i(0, 0.0, f64::INFINITY, &cfg).unwrap();
            assert!(
                (total - 1.0).abs() < 1e-6,
                "{scenario:?}: I(0,0,inf) = {total}"
            );
        }
    }

    #[test]
    fn integral_additive_over_abutting_ranges() {
        let mut cfg = defaults(RatioScenario::RayRay);
        // additivity to 1e-9 needs tolerances tighter than the defaults,
        // since the m = -1 moments are of order several units
        cfg.quadrature.abs_tol = 1e-13;
        cfg.quadrature.rel_tol = 1e-12;
        for m in [-1, 0, 1] {
            let a = integral_i(m, 0.1, 0.5, &cfg).unwrap();
            let b = integral_i(m, 0.5, 2.0, &cfg).unwrap();
            let c = integral_i(m, 0.1, 2.0, &cfg).unwrap();
            assert!((a + b - c).abs() < 1e-9, "m={m}: {a} + {b} != {c}");
        }
    }

    #[test]
    fn integral_rejects_bad_arguments() {
        let cfg = defaults(RatioScenario::RayRay);
        assert!(integral_i(2, 0.0, 1.0, &cfg).is_err());
        assert!(integral_i(0, -0.5, 1.0, &cfg).is_err());
        assert!(integral_i(0, 2.0, 1.0, &cfg).is_err());
    }

    #[test]
    fn vanishing_shadowing_matches_fading_only_oracle() {
        // at σ → 0 the Gaussian window becomes an indicator on y, so the
        // moment integral reduces to a bare integral of the ratio density
        let cfg = config(1.0, 100.0, 1000.0, 3.5, 0.01, RatioScenario::RayRay);
        let (theta, kappa) = (0.05, 0.4);
        for m in [-1i32, 0, 1] {
            let got = integral_i(m, theta, kappa, &cfg).unwrap();
            // indicator: θ^γ y/K < 1 < κ^γ y/K  ⇔  K κ^{-γ} < y < K θ^{-γ}
            let y_lo = cfg.noise_ratio * kappa.powf(-cfg.gamma);
            let y_hi = cfg.noise_ratio * theta.powf(-cfg.gamma);
            let e = 2.0 * f64::from(m) / cfg.gamma;
            let oracle = integrate(
                |y| (cfg.noise_ratio / y).powf(e) / (1.0 + y).powi(2),
                y_lo,
                y_hi,
                &cfg.quadrature,
            )
            .unwrap();
            assert!(
                (got - oracle).abs() < 1e-4,
                "m={m}: {got} vs fading-only {oracle}"
            );
        }
    }

    #[test]
    fn symmetric_deployment_gives_one_half() {
        // identical CC/CP statistics make a and 1/a exchangeable
        let cfg = config(1.0, 1000.0, 1000.0, 3.5, 8.0, RatioScenario::RayRay);
        let p = prob_low_interference(&cfg).unwrap();
        assert!((p - 0.5).abs() < 1e-3, "P = {p}");

        let k = db_to_linear(5.0);
        let cfg = config(
            1.0,
            1000.0,
            1000.0,
            3.5,
            8.0,
            RatioScenario::RicRic { k_factor: k },
        );
        let p = prob_low_interference(&cfg).unwrap();
        assert!((p - 0.5).abs() < 1e-3, "RicRic P = {p}");
    }

    #[test]
    fn default_deployment_regression() {
        // frozen against an independent quadrature implementation
        let p = prob_low_interference(&defaults(RatioScenario::RayRay)).unwrap();
        assert!(
            (p - 0.976_070_962_856).abs() < 1e-5,
            "P(a<1) at defaults = {p}"
        );
    }

    #[test]
    fn dominant_at_defaults_for_all_scenarios() {
        let k = db_to_linear(5.0);
        for scenario in [
            RatioScenario::RayRay,
            RatioScenario::RayRic { k_factor: k },
            RatioScenario::RicRay { k_factor: k },
            RatioScenario::RicRic { k_factor: k },
        ] {
            let p = prob_low_interference(&defaults(scenario)).unwrap();
            assert!(p > 0.9, "{scenario:?}: P = {p}");
        }
    }

    #[test]
    fn probability_decreases_with_shadowing_spread() {
        let p4 =
            prob_low_interference(&config(1.0, 100.0, 1000.0, 3.5, 4.0, RatioScenario::RayRay))
                .unwrap();
        let p12 = prob_low_interference(&config(
            1.0,
            100.0,
            1000.0,
            3.5,
            12.0,
            RatioScenario::RayRay,
        ))
        .unwrap();
        assert!(p4 > p12, "P(sigma=4)={p4}, P(sigma=12)={p12}");
    }

    #[test]
    fn probability_increases_with_path_loss_exponent() {
        let mut prev = 0.0;
        for gamma in [2.5, 3.0, 3.5, 4.0] {
            let p = prob_low_interference(&config(
                1.0,
                100.0,
                1000.0,
                gamma,
                8.0,
                RatioScenario::RayRay,
            ))
            .unwrap();
            assert!(p >= prev, "gamma={gamma}: P={p} < previous {prev}");
            prev = p;
        }
    }

    #[test]
    fn mild_sensitivity_to_fading_family() {
        let p_ray = prob_low_interference(&defaults(RatioScenario::RayRay)).unwrap();
        let p_ric = prob_low_interference(&defaults(RatioScenario::RicRic {
            k_factor: db_to_linear(5.0),
        }))
        .unwrap();
        assert!(
            (p_ray - p_ric).abs() < 0.05,
            "RayRay {p_ray} vs RicRic {p_ric}"
        );
    }

    #[test]
    fn results_stay_in_unit_interval_over_random_configs() {
        // cheap linear-congruential scan over a wide configuration box
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..100 {
            let r0 = 0.5 + 5.0 * next();
            let rc = r0 * (1.5 + 100.0 * next());
            let rp = r0 * (1.5 + 100.0 * next());
            let gamma = 2.0 + 2.5 * next();
            let sigma = 12.0 * next();
            let noise_ratio = 0.25 + 4.0 * next();
            let k = 10.0 * next();
            let scenario = match trial % 4 {
                0 => RatioScenario::RayRay,
                1 => RatioScenario::RayRic { k_factor: k },
                2 => RatioScenario::RicRay { k_factor: k },
                _ => RatioScenario::RicRic { k_factor: k },
            };
            let cfg = LowIntConfig::new(
                Geometry::new(r0, rc, rp).unwrap(),
                gamma,
                ShadowingParams::new(sigma).unwrap(),
                noise_ratio,
                scenario,
            )
            .unwrap();
            let p = prob_low_interference(&cfg).unwrap_or_else(|e| {
                panic!("trial {trial} ({cfg:?}) failed: {e}");
            });
            assert!((0.0..=1.0).contains(&p), "trial {trial}: P = {p}");
        }
    }

    #[test]
    fn ricric_cache_does_not_change_results() {
        let k = db_to_linear(5.0);
        let cfg = defaults(RatioScenario::RicRic { k_factor: k });
        // integral_i goes through the uncached path; the cached path inside
        // prob_low_interference must assemble to the same sum
        let pieces = cfg.geom.piecewise_coefficients();
        let mut manual = 0.0;
        for i in 0..5 {
            let (t, kp) = (pieces.thetas()[i], pieces.thetas()[i + 1]);
            if kp <= t {
                continue;
            }
            for j in 0..3 {
                let c = pieces.coefficients()[i][j];
                if c != 0.0 {
                    manual += c * integral_i(j as i32 - 1, t, kp, &cfg).unwrap();
                }
            }
        }
        let cached = prob_low_interference(&cfg).unwrap();
        assert!(
            (manual - cached).abs() < 1e-12,
            "uncached {manual} vs cached {cached}"
        );
    }
}
