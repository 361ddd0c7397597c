//! The power-loss parameter α, its small-|s||t| approximation, conditional
//! CDFs of the approximation, and the CR rate with its CDF.
//!
//! α is the fraction of CR transmit power dedicated to relaying the primary
//! message. Writing |s|² = P_p·Γ_pp/N_p·|p̃|² and |t|² = P_c·Γ_cp/N_p·|f̃|²,
//! the exact value is
//!
//!   α = (|s|²/|t|²) · [ (√(1 + |t|²(1+|s|²)) − 1) / (1+|s|²) ]²  ∈ [0, 1),
//!
//! and the approximation α_approx = |s|²|t|²/4 follows from √(1+x) ≈ 1+x/2.
//! α̂ denotes α_approx conditioned on α_approx < 1. For fixed link gains and
//! all-Rayleigh fading the conditional CDF has a closed form in K₁; the
//! general fading case is a pair of one-dimensional quadratures.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::fading::FadingKind;
use crate::specfun::{bessel_k1, integrate_positive_axis, QuadratureSpec};

/// Fixed-link-gain operating point: mean powers μ_s = E|s|² = P_p·Γ_pp/N_p
/// and μ_t = E|t|² = P_c·Γ_cp/N_p, the regime parameter
/// d = (N_c/N_p)·(Γ_cp/Γ_cc), the direct-link gain Γ_cc, and the CR power
/// and noise that enter the rate.
#[derive(Debug, Clone, Copy)]
pub struct LinkBudget {
    pub mu_s: f64,
    pub mu_t: f64,
    pub d: f64,
    pub gamma_cc: f64,
    pub p_c: f64,
    pub n_c: f64,
}

impl LinkBudget {
    pub fn new(mu_s: f64, mu_t: f64, d: f64, gamma_cc: f64, p_c: f64, n_c: f64) -> Result<Self> {
        let b = Self {
            mu_s,
            mu_t,
            d,
            gamma_cc,
            p_c,
            n_c,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mu_s", self.mu_s),
            ("mu_t", self.mu_t),
            ("d", self.d),
            ("gamma_cc", self.gamma_cc),
            ("p_c", self.p_c),
            ("n_c", self.n_c),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Domain(format!(
                    "link budget field {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// 4/(μ_s·μ_t), the scale tying α_approx to the product of unit-mean
    /// fading powers.
    pub fn zeta(&self) -> f64 {
        4.0 / (self.mu_s * self.mu_t)
    }
}

/// Exact power loss for one realization of |s|² and |t|².
///
/// When x = |t|²(1+|s|²) is below 1e-8 the direct form loses most of its
/// significant digits to the √(1+x) − 1 cancellation, so a short series in
/// x is used instead (this also covers the |t|² → 0 limit).
pub fn exact_alpha(s_sq: f64, t_sq: f64) -> Result<f64> {
    if !(s_sq >= 0.0) || !(t_sq >= 0.0) {
        return Err(Error::Domain(format!(
            "fading powers must be nonnegative, got s_sq={s_sq}, t_sq={t_sq}"
        )));
    }
    if s_sq == 0.0 {
        return Ok(0.0);
    }
    let one_plus_s = 1.0 + s_sq;
    let x = t_sq * one_plus_s;
    if x < 1e-8 {
        // α = (s²t²/4)·(1 − x/4 + x²/8 − …)², truncation error O(x²) relative
        let correction = 1.0 - 0.25 * x + 0.125 * x * x;
        return Ok(0.25 * s_sq * t_sq * correction * correction);
    }
    let root = ((1.0 + x).sqrt() - 1.0) / one_plus_s;
    Ok(s_sq / t_sq * root * root)
}

/// α_approx = |s|²|t|²/4.
pub fn alpha_approx(s_sq: f64, t_sq: f64) -> Result<f64> {
    if !(s_sq >= 0.0) || !(t_sq >= 0.0) {
        return Err(Error::Domain(format!(
            "fading powers must be nonnegative, got s_sq={s_sq}, t_sq={t_sq}"
        )));
    }
    Ok(0.25 * s_sq * t_sq)
}

/// P(α_approx < x | a < 1) for all-Rayleigh fading at a fixed budget:
/// the closed form 1 − z·K₁(z) with z = √(16(1+d)x/(μ_s·μ_t)).
pub fn alpha_approx_cdf_given_low(x: f64, budget: &LinkBudget) -> Result<f64> {
    budget.validate()?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "CDF argument must be nonnegative, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let z = (16.0 * (1.0 + budget.d) * x / (budget.mu_s * budget.mu_t)).sqrt();
    let k1 = bessel_k1(z)?;
    Ok((1.0 - z * k1).clamp(0.0, 1.0))
}

/// CDF of α̂ (the approximation conditioned on being below one) for
/// all-Rayleigh fading at a fixed budget, on x ∈ [0, 1].
pub fn alpha_hat_cdf_rayleigh(x: f64, budget: &LinkBudget) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "alpha-hat CDF argument must lie in [0,1], got {x}"
        )));
    }
    let num = alpha_approx_cdf_given_low(x, budget)?;
    let den = alpha_approx_cdf_given_low(1.0, budget)?;
    Ok((num / den).clamp(0.0, 1.0))
}

/// P(α_approx < x | a < 1) for arbitrary per-link fading at a fixed budget,
/// evaluated from the two-term conditional-CDF representation
///
///   [∫ F_W(ζxd/v)·F_U(v/d)·f_V(v) dv + ∫ F_U(ζx/w)·(1−F_V(ζxd/w))·f_W(w) dw]
///   / ∫ F_U(v/d)·f_V(v) dv
///
/// with U = |f̃|² (CP), V = |c̃|² (CC), W = |p̃|² (PP).
pub fn alpha_approx_cdf_given_low_general(
    x: f64,
    budget: &LinkBudget,
    u_kind: FadingKind,
    v_kind: FadingKind,
    w_kind: FadingKind,
) -> Result<f64> {
    budget.validate()?;
    u_kind.validate()?;
    v_kind.validate()?;
    w_kind.validate()?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "CDF argument must be nonnegative, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let spec = QuadratureSpec::default();
    let zeta = budget.zeta();
    let d = budget.d;

    let num_a = integrate_positive_axis(
        |v| w_kind.power_cdf(zeta * x * d / v) * u_kind.power_cdf(v / d) * v_kind.power_pdf(v),
        &spec,
    )?;
    let num_b = integrate_positive_axis(
        |w| {
            u_kind.power_cdf(zeta * x / w)
                * (1.0 - v_kind.power_cdf(zeta * x * d / w))
                * w_kind.power_pdf(w)
        },
        &spec,
    )?;
    let den = integrate_positive_axis(|v| u_kind.power_cdf(v / d) * v_kind.power_pdf(v), &spec)?;
    if !(den > 0.0) {
        return Err(Error::InternalConsistency {
            context: "alpha_approx_cdf_given_low_general denominator",
            value: den,
        });
    }
    Ok(((num_a + num_b) / den).clamp(0.0, 1.0))
}

/// CDF of α̂ for arbitrary per-link fading: the general conditional CDF
/// normalized by its value at one.
pub fn alpha_hat_cdf_general(
    x: f64,
    budget: &LinkBudget,
    u_kind: FadingKind,
    v_kind: FadingKind,
    w_kind: FadingKind,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!(
            "alpha-hat CDF argument must lie in [0,1], got {x}"
        )));
    }
    let num = alpha_approx_cdf_given_low_general(x, budget, u_kind, v_kind, w_kind)?;
    let den = alpha_approx_cdf_given_low_general(1.0, budget, u_kind, v_kind, w_kind)?;
    if !(den > 0.0) {
        return Err(Error::InternalConsistency {
            context: "alpha_hat_cdf_general normalization",
            value: den,
        });
    }
    Ok((num / den).clamp(0.0, 1.0))
}

/// Highest CR rate for one realization: log₂(1 + |c|²(1−α)·P_c/N_c),
/// in bits per channel use.
pub fn cr_rate(c_sq: f64, alpha: f64, p_c: f64, n_c: f64) -> Result<f64> {
    if !(c_sq >= 0.0) {
        return Err(Error::Domain(format!(
            "|c|^2 must be nonnegative, got {c_sq}"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!(
            "alpha must lie in [0,1], got {alpha}"
        )));
    }
    if !(p_c > 0.0) || !(n_c > 0.0) {
        return Err(Error::Domain(format!(
            "powers must be positive, got p_c={p_c}, n_c={n_c}"
        )));
    }
    Ok((1.0 + c_sq * (1.0 - alpha) * p_c / n_c).log2())
}

/// CDF of the CR rate at fixed link gains:
/// P(R < x) = ∫ (1 − F_α(1 − (2^x − 1)·N_c/(|c|²·P_c))) f_{|c|²} d|c|²,
/// with |c|² = Γ_cc·|c̃|² and |c̃|² distributed per `cc_kind`.
///
/// `alpha_cdf` supplies the power-loss distribution on [0, 1]; the
/// integrand treats arguments below 0 as certain power loss (contribution
/// one) and above 1 as impossible (contribution zero).
pub fn cr_rate_cdf<F>(x: f64, budget: &LinkBudget, cc_kind: FadingKind, alpha_cdf: F) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    budget.validate()?;
    cc_kind.validate()?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("rate must be nonnegative, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let threshold = (2f64.powf(x) - 1.0) * budget.n_c / budget.p_c;
    let gain = budget.gamma_cc;
    // first alpha_cdf failure inside the integrand, surfaced after quadrature
    let stash: RefCell<Option<Error>> = RefCell::new(None);
    let spec = QuadratureSpec::default();
    let value = integrate_positive_axis(
        |u| {
            // u = |c̃|², so |c|² = Γ_cc·u
            let c_sq = gain * u;
            if c_sq <= 0.0 {
                return cc_kind.power_pdf(u); // rate 0 < x: certain contribution
            }
            let arg = 1.0 - threshold / c_sq;
            let f_alpha = if arg <= 0.0 {
                0.0
            } else if arg >= 1.0 {
                1.0
            } else {
                match alpha_cdf(arg) {
                    Ok(v) => v,
                    Err(e) => {
                        stash.borrow_mut().get_or_insert(e);
                        return 0.0;
                    }
                }
            };
            (1.0 - f_alpha) * cc_kind.power_pdf(u)
        },
        &spec,
    )?;
    if let Some(e) = stash.into_inner() {
        return Err(e);
    }
    Ok(value.clamp(0.0, 1.0))
}
