//! Statistics of cognitive-radio capacity under lognormal shadowing, path
//! loss, and Rayleigh/Rician fast fading.
//!
//! A secondary (cognitive) transmitter shares spectrum with a primary user
//! by spending a fraction α of its power relaying the primary message. This
//! crate computes, both analytically and by reproducible Monte Carlo:
//!
//! - the probability of the **low-interference regime** (`a < 1`), where
//!   the cognitive rate expression is valid ([`lowint`]);
//! - the distribution of the **power-loss parameter** α and of its
//!   small-|s||t| approximation α̂ ([`powerloss`]);
//! - the distribution of the achievable **CR rate** ([`powerloss`],
//!   [`montecarlo`]).
//!
//! [`geometry`] holds the annulus placement model and the closed-form CDF
//! of the distance ratio; [`fading`] the per-link fading laws and the four
//! ratio densities; [`specfun`] the numerical kernel (Φ, K₁, B, adaptive
//! quadrature); [`montecarlo`] the drop engine whose estimates are
//! bit-identical across runs and worker counts; [`cli`] the manifest-based
//! command front end behind the `crcap` binary.
//!
//! Start from [`montecarlo::ScenarioConfig::defaults`] and the runnable
//! programs in `examples/`:
//!
//! ```
//! use crcap::lowint::prob_low_interference;
//! use crcap::montecarlo::{estimate_p_low_interference, ScenarioConfig};
//!
//! let cfg = ScenarioConfig::defaults();
//! let analytic = prob_low_interference(&cfg.low_interference()?)?;
//! let simulated = estimate_p_low_interference(&cfg, 20_000)?;
//! assert!((analytic - simulated.value).abs() < 4.0 * simulated.std_error);
//! # Ok::<(), crcap::Error>(())
//! ```

// validations use the `!(v > 0.0)` form so that NaN fails them too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fading;
pub mod geometry;
pub mod lowint;
pub mod montecarlo;
pub mod powerloss;
pub mod specfun;

pub use error::{Error, Result};
pub use fading::{FadingKind, RatioScenario, ShadowingParams};
pub use geometry::Geometry;
pub use lowint::{prob_low_interference, LowIntConfig};
pub use montecarlo::{EstimateWithError, ScenarioConfig};
pub use powerloss::LinkBudget;
