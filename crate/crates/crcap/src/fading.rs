//! Fast-fading power distributions, lognormal shadowing, and the densities
//! of the power ratio Y = |f̃|²/|c̃|² between the interfering (CP) and direct
//! (CC) links.
//!
//! All fading powers are normalized to unit mean: Rayleigh is a unit-mean
//! exponential, and a Rician channel with factor K splits that unit mean
//! into a deterministic part K/(K+1) and a scattered part 1/(K+1). With this
//! convention the four ratio densities integrate to one exactly, and the
//! Rician/Rician ratio reduces to a doubly noncentral F with 2+2 degrees of
//! freedom and noncentralities 2K on both sides.

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;
use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

/// Natural-log units per dB: β = ln(10)/10.
pub const DB_TO_NAT: f64 = core::f64::consts::LN_10 / 10.0;

/// Convert a dB quantity (e.g. a Rician K factor) to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Fast-fading family of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FadingKind {
    Rayleigh,
    /// Line-of-sight fading with linear K factor (LOS power over scattered
    /// power). `Rician { k_factor: 0.0 }` is distributionally Rayleigh.
    Rician {
        k_factor: f64,
    },
}

impl FadingKind {
    /// Rician kind from a K factor given in dB.
    pub fn rician_from_db(k_db: f64) -> Self {
        FadingKind::Rician {
            k_factor: db_to_linear(k_db),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FadingKind::Rayleigh => Ok(()),
            FadingKind::Rician { k_factor } => {
                if k_factor.is_finite() && *k_factor >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!(
                        "Rician K factor must be finite and nonnegative, got {k_factor}"
                    )))
                }
            }
        }
    }

    /// Draw one unit-mean channel power |h̃|².
    pub fn sample_power<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            FadingKind::Rayleigh => Exp1.sample(rng),
            FadingKind::Rician { k_factor } => {
                let los = (k_factor / (k_factor + 1.0)).sqrt();
                let sigma = (0.5 / (k_factor + 1.0)).sqrt();
                let zi: f64 = StandardNormal.sample(rng);
                let zq: f64 = StandardNormal.sample(rng);
                let i = los + sigma * zi;
                let q = sigma * zq;
                i * i + q * q
            }
        }
    }

    /// CDF of the unit-mean channel power at `u`.
    ///
    /// The Rician case is the Poisson mixture of Erlang CDFs equivalent to
    /// the Marcum-Q form; the mixture is truncated once the remaining
    /// Poisson mass drops below 1e-13.
    pub fn power_cdf(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match *self {
            FadingKind::Rayleigh => -(-u).exp_m1(),
            FadingKind::Rician { k_factor } => {
                if k_factor == 0.0 {
                    return -(-u).exp_m1();
                }
                let z = (k_factor + 1.0) * u;
                // P(j+1, z) by downward recurrence P(j+1,z) = P(j,z) − e^{-z} z^j/j!
                let mut erlang = -(-z).exp_m1();
                let mut pdf_term = (-z).exp();
                let mut weight = (-k_factor).exp();
                let mut cum_weight = weight;
                let mut acc = weight * erlang;
                let mut j = 0usize;
                while 1.0 - cum_weight > 1e-13 && j < 10_000 {
                    j += 1;
                    pdf_term *= z / j as f64;
                    erlang -= pdf_term;
                    weight *= k_factor / j as f64;
                    cum_weight += weight;
                    acc += weight * erlang.max(0.0);
                }
                acc.clamp(0.0, 1.0)
            }
        }
    }

    /// PDF of the unit-mean channel power at `u`.
    pub fn power_pdf(&self, u: f64) -> f64 {
        if u < 0.0 {
            return 0.0;
        }
        match *self {
            FadingKind::Rayleigh => (-u).exp(),
            FadingKind::Rician { k_factor } => {
                let k1 = k_factor + 1.0;
                let z = 2.0 * (k_factor * k1 * u).sqrt();
                // k1 · e^{-(√K − √((K+1)u))²} · e^{-z}I₀(z), grouping the
                // exponentials so nothing overflows for large u
                let expo = -(k_factor.sqrt() - (k1 * u).sqrt()).powi(2);
                k1 * expo.exp() * bessel_i0_scaled(z)
            }
        }
    }
}

/// e^{−z}·I₀(z) for z ≥ 0: power series below 25, Hankel expansion above
/// (the expansion's optimally-truncated error is ~1e-14 at the crossover).
fn bessel_i0_scaled(z: f64) -> f64 {
    if z < 25.0 {
        let q = 0.25 * z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        for k in 1..=80 {
            let kf = k as f64;
            term *= q / (kf * kf);
            sum += term;
            if term < 1e-17 * sum {
                break;
            }
        }
        (-z).exp() * sum
    } else {
        let inv8z = 1.0 / (8.0 * z);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut prev = f64::INFINITY;
        for k in 1..=12u32 {
            let kf = f64::from(k);
            let odd = 2.0 * kf - 1.0;
            term *= odd * odd * inv8z / kf;
            if term.abs() >= prev {
                break; // asymptotic series started diverging
            }
            sum += term;
            prev = term.abs();
            if term.abs() < 1e-17 * sum {
                break;
            }
        }
        sum / (2.0 * std::f64::consts::PI * z).sqrt()
    }
}

/// Lognormal shadowing: the link gain carries a factor e^X with
/// X ~ N(0, σ_sf²), σ_sf = β·σ_dB, β = ln(10)/10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowingParams {
    sigma_db: f64,
}

impl ShadowingParams {
    pub fn new(sigma_db: f64) -> Result<Self> {
        if !(sigma_db >= 0.0) || !sigma_db.is_finite() {
            return Err(Error::Domain(format!(
                "shadowing sigma must be finite and nonnegative dB, got {sigma_db}"
            )));
        }
        Ok(Self { sigma_db })
    }

    pub fn sigma_db(&self) -> f64 {
        self.sigma_db
    }

    /// Standard deviation of X on the natural-log scale.
    pub fn sigma_natural(&self) -> f64 {
        DB_TO_NAT * self.sigma_db
    }

    /// Draw one shadowing value X (natural-log gain).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.sigma_db == 0.0 {
            return 0.0;
        }
        let z: f64 = StandardNormal.sample(rng);
        self.sigma_natural() * z
    }
}

/// Default number of series terms per index for the Rician/Rician ratio
/// density, adequate for K up to about 5 dB.
pub const DEFAULT_SERIES_TERMS: usize = 18;

/// Fading assignment of the (CP numerator, CC denominator) power ratio.
///
/// Rician/Rician supports equal K on both links only; the unit-mean scale
/// factors cancel exactly in that case, which is what reduces the ratio to
/// the doubly noncentral F form. Use [`RatioScenario::from_kinds`] to map a
/// pair of [`FadingKind`]s onto a scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioScenario {
    RayRay,
    RayRic { k_factor: f64 },
    RicRay { k_factor: f64 },
    RicRic { k_factor: f64 },
}

impl RatioScenario {
    pub fn from_kinds(cp: FadingKind, cc: FadingKind) -> Result<Self> {
        cp.validate()?;
        cc.validate()?;
        Ok(match (cp, cc) {
            (FadingKind::Rayleigh, FadingKind::Rayleigh) => RatioScenario::RayRay,
            (FadingKind::Rayleigh, FadingKind::Rician { k_factor }) => {
                RatioScenario::RayRic { k_factor }
            }
            (FadingKind::Rician { k_factor }, FadingKind::Rayleigh) => {
                RatioScenario::RicRay { k_factor }
            }
            (FadingKind::Rician { k_factor: k1 }, FadingKind::Rician { k_factor: k2 }) => {
                if k1 != k2 {
                    return Err(Error::UnsupportedConfiguration(format!(
                        "Rician/Rician ratio requires equal K factors on both links, got {k1} and {k2}"
                    )));
                }
                RatioScenario::RicRic { k_factor: k1 }
            }
        })
    }

    /// Fading kind of the numerator (CP) link.
    pub fn cp_kind(&self) -> FadingKind {
        match *self {
            RatioScenario::RayRay | RatioScenario::RayRic { .. } => FadingKind::Rayleigh,
            RatioScenario::RicRay { k_factor } | RatioScenario::RicRic { k_factor } => {
                FadingKind::Rician { k_factor }
            }
        }
    }

    /// Fading kind of the denominator (CC) link.
    pub fn cc_kind(&self) -> FadingKind {
        match *self {
            RatioScenario::RayRay | RatioScenario::RicRay { .. } => FadingKind::Rayleigh,
            RatioScenario::RayRic { k_factor } | RatioScenario::RicRic { k_factor } => {
                FadingKind::Rician { k_factor }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.cp_kind().validate()?;
        self.cc_kind().validate()
    }

    /// Density of Y = |f̃|²/|c̃|² at `y ≥ 0`.
    ///
    /// The Rician/Rician case sums the double series with a term count that
    /// grows with K so that the truncated Poisson weights cover all but
    /// 1e-9 of their mass (never fewer than [`DEFAULT_SERIES_TERMS`]); the
    /// paper-count evaluation is available via [`Self::pdf_with_terms`].
    pub fn pdf(&self, y: f64) -> Result<f64> {
        self.validate()?;
        if y < 0.0 || y.is_nan() {
            return Err(Error::Domain(format!(
                "ratio density requires y >= 0, got {y}"
            )));
        }
        Ok(match *self {
            RatioScenario::RicRic { k_factor } => {
                ricric_pdf_terms(k_factor, y, ricric_terms_for(k_factor))
            }
            _ => self.pdf_at(y),
        })
    }

    /// Density with the Rician/Rician double series truncated at exactly
    /// `terms` per index. Non-RicRic scenarios ignore `terms`.
    pub fn pdf_with_terms(&self, y: f64, terms: usize) -> Result<f64> {
        self.validate()?;
        if y < 0.0 || y.is_nan() {
            return Err(Error::Domain(format!(
                "ratio density requires y >= 0, got {y}"
            )));
        }
        if terms < 1 {
            return Err(Error::Domain("series needs at least one term".into()));
        }
        Ok(match *self {
            RatioScenario::RicRic { k_factor } => ricric_pdf_terms(k_factor, y, terms),
            _ => self.pdf_at(y),
        })
    }

    /// Density at validated `y ≥ 0`, with the RicRic series at its
    /// convergence-based term count.
    pub(crate) fn pdf_at(&self, y: f64) -> f64 {
        match *self {
            RatioScenario::RayRay => {
                let d = 1.0 + y;
                1.0 / (d * d)
            }
            RatioScenario::RayRic { k_factor: k } => {
                // exponential numerator over noncentral-χ² denominator
                let k1 = k + 1.0;
                let p = y + k1;
                k1 * (y + k1 * k1) / (p * p * p) * (-k + (k * k + k) / p).exp()
            }
            RatioScenario::RicRay { k_factor: k } => {
                // noncentral-χ² numerator over exponential denominator,
                // implemented verbatim as the corrected two-term form
                let p = y + k * y + 1.0;
                let t1 = k * (1.0 + k) / (p * p) * (-k / p).exp();
                let t2 = (1.0 - k * k + y * (1.0 + 2.0 * k + k * k)) / (p * p * p)
                    * (-k + (k * y + k * k * y) / p).exp();
                t1 + t2
            }
            RatioScenario::RicRic { k_factor } => {
                ricric_pdf_terms(k_factor, y, ricric_terms_for(k_factor))
            }
        }
    }
}

/// Smallest per-index term count whose Poisson(K) weights leave less than
/// 1e-9 tail mass, floored at the default 18.
fn ricric_terms_for(k_factor: f64) -> usize {
    if k_factor == 0.0 {
        return DEFAULT_SERIES_TERMS;
    }
    let mut weight = (-k_factor).exp();
    let mut cum = weight;
    let mut n = 1usize;
    while 1.0 - cum > 1e-9 && n < 512 {
        weight *= k_factor / n as f64;
        cum += weight;
        n += 1;
    }
    n.max(DEFAULT_SERIES_TERMS)
}

/// Doubly noncentral F density with ν₁ = ν₂ = 2 and λ₁ = λ₂ = 2K, truncated
/// at `terms` per index. Terms are evaluated in log space so large K and
/// deep indices cannot overflow.
fn ricric_pdf_terms(k_factor: f64, y: f64, terms: usize) -> f64 {
    if k_factor == 0.0 {
        // all j,k ≥ 1 terms vanish with the Poisson weights
        let d = 1.0 + y;
        return 1.0 / (d * d);
    }
    let ln_k = k_factor.ln();
    let ln_y = if y > 0.0 { y.ln() } else { f64::NEG_INFINITY };
    let ln_1py = y.ln_1p();
    let mut sum = 0.0;
    for j in 0..terms {
        let jf = j as f64;
        // y^j kills every numerator power beyond j = 0 (and 0·ln 0 must
        // read as 0, not NaN)
        if y == 0.0 && j > 0 {
            break;
        }
        let y_power = if j == 0 { 0.0 } else { jf * ln_y };
        for k in 0..terms {
            let kf = k as f64;
            // Poisson(K) weights on both indices, the inverse beta
            // B(1+j, 1+k)⁻¹ = (j+k+1)!/(j!k!), and the kernel y^j (1+y)^{-2-j-k}
            let ln_term = -2.0 * k_factor + (jf + kf) * ln_k + ln_gamma(jf + kf + 2.0)
                - 2.0 * ln_gamma(jf + 1.0)
                - 2.0 * ln_gamma(kf + 1.0)
                + y_power
                - (2.0 + jf + kf) * ln_1py;
            sum += ln_term.exp();
        }
    }
    sum
}

/// |pdf truncated at `terms_a`| − |pdf truncated at `terms_b`| in absolute
/// value, for the Rician/Rician series at linear K factor `k_factor`.
/// Requires `terms_b > terms_a ≥ 1`. Every series term is nonnegative, so
/// this difference decreases monotonically as `terms_a` grows.
pub fn series_truncation_error(
    k_factor: f64,
    y: f64,
    terms_a: usize,
    terms_b: usize,
) -> Result<f64> {
    if !(terms_b > terms_a && terms_a >= 1) {
        return Err(Error::Domain(format!(
            "need terms_b > terms_a >= 1, got {terms_a}, {terms_b}"
        )));
    }
    let scenario = RatioScenario::RicRic { k_factor };
    let a = scenario.pdf_with_terms(y, terms_a)?;
    let b = scenario.pdf_with_terms(y, terms_b)?;
    Ok((a - b).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{integrate, QuadratureSpec};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const K_5DB: f64 = 3.162_277_660_168_379_5;

    fn sorted_samples(kind: FadingKind, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v: Vec<f64> = (0..n).map(|_| kind.sample_power(&mut rng)).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    fn ks_against<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> f64 {
        let n = sorted.len() as f64;
        let mut ks: f64 = 0.0;
        for (i, &x) in sorted.iter().enumerate() {
            let f = cdf(x);
            ks = ks.max((f - (i + 1) as f64 / n).abs());
            ks = ks.max((f - i as f64 / n).abs());
        }
        ks
    }

    #[test]
    fn sampled_powers_have_unit_mean() {
        let n = 1_000_000;
        for (kind, seed) in [
            (FadingKind::Rayleigh, 1u64),
            (FadingKind::Rician { k_factor: 10.0 }, 2),
            (FadingKind::Rician { k_factor: K_5DB }, 3),
        ] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mean: f64 = (0..n).map(|_| kind.sample_power(&mut rng)).sum::<f64>() / n as f64;
            assert!((mean - 1.0).abs() < 0.005, "{kind:?}: sample mean {mean}");
        }
    }

    #[test]
    fn rician_k0_degenerates_to_rayleigh() {
        let s = sorted_samples(FadingKind::Rician { k_factor: 0.0 }, 1_000_000, 4);
        let ks = ks_against(&s, |u| -(-u).exp_m1());
        assert!(ks < 0.002, "KS = {ks}");
    }

    #[test]
    fn power_cdf_matches_samples() {
        for (kind, seed) in [
            (FadingKind::Rayleigh, 5u64),
            (FadingKind::Rician { k_factor: K_5DB }, 6),
            (FadingKind::Rician { k_factor: 10.0 }, 7),
        ] {
            let s = sorted_samples(kind, 300_000, seed);
            let ks = ks_against(&s, |u| kind.power_cdf(u));
            assert!(ks < 0.004, "{kind:?}: KS = {ks}");
        }
    }

    #[test]
    fn power_pdf_integrates_to_cdf() {
        // dual route: quadrature over the density must reproduce the
        // series-based CDF
        let spec = QuadratureSpec::default();
        for kind in [
            FadingKind::Rayleigh,
            FadingKind::Rician { k_factor: K_5DB },
            FadingKind::Rician { k_factor: 10.0 },
        ] {
            for u in [0.1, 0.5, 1.0, 2.5, 6.0] {
                let from_pdf = integrate(|t| kind.power_pdf(t), 0.0, u, &spec).unwrap();
                let cdf = kind.power_cdf(u);
                assert!(
                    (from_pdf - cdf).abs() < 1e-9,
                    "{kind:?} at {u}: pdf-integral {from_pdf} vs cdf {cdf}"
                );
            }
        }
    }

    #[test]
    fn bessel_i0_scaled_branches_agree() {
        for z in [24.9, 25.0, 25.1, 30.0] {
            // series route vs the asymptotic branch around the crossover
            let series = {
                let q: f64 = 0.25 * z * z;
                let mut term = 1.0;
                let mut sum = 1.0;
                for k in 1..=200 {
                    let kf = k as f64;
                    term *= q / (kf * kf);
                    sum += term;
                }
                (-z).exp() * sum
            };
            let got = bessel_i0_scaled(z);
            assert!(
                ((got - series) / series).abs() < 1e-13,
                "z={z}: {got} vs {series}"
            );
        }
    }

    #[test]
    fn shadowing_zero_sigma_is_degenerate() {
        let p = ShadowingParams::new(0.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            assert_eq!(p.sample(&mut rng), 0.0);
        }
    }

    #[test]
    fn shadowing_scale_and_median() {
        let p = ShadowingParams::new(8.0).unwrap();
        assert!((p.sigma_natural() - 8.0 * DB_TO_NAT).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let n = 1_000_000;
        let xs: Vec<f64> = (0..n).map(|_| p.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1) as f64;
        let want = 8.0 * DB_TO_NAT;
        assert!((var.sqrt() - want).abs() / want < 0.01);
        let mut gains: Vec<f64> = xs.iter().map(|x| x.exp()).collect();
        gains.sort_by(f64::total_cmp);
        let median = gains[n / 2];
        assert!((median - 1.0).abs() < 0.01, "e^X median {median}");
    }

    #[test]
    fn shadowing_rejects_negative_sigma() {
        assert!(ShadowingParams::new(-1.0).is_err());
        assert!(ShadowingParams::new(f64::NAN).is_err());
    }

    #[test]
    fn ratio_pdf_closed_form_points() {
        assert_eq!(RatioScenario::RayRay.pdf(1.0).unwrap(), 0.25);
        // K = 0 degeneracies collapse to the Rayleigh/Rayleigh density
        for y in [0.0, 0.3, 1.0, 4.0, 50.0] {
            let rr = RatioScenario::RayRay.pdf(y).unwrap();
            let k0 = RatioScenario::RayRic { k_factor: 0.0 }.pdf(y).unwrap();
            assert!((rr - k0).abs() < 1e-12);
            let ric0 = RatioScenario::RicRic { k_factor: 0.0 }.pdf(y).unwrap();
            assert!((rr - ric0).abs() < 1e-12);
        }
        assert!(RatioScenario::RayRay.pdf(-0.1).is_err());
    }

    #[test]
    fn ricray_is_reciprocal_of_rayric() {
        // Y = Ric/Ray and 1/Y = Ray/Ric: densities must satisfy
        // f_ricray(y) = y⁻² f_rayric(1/y)
        for k in [0.5, K_5DB, 10.0] {
            let ricray = RatioScenario::RicRay { k_factor: k };
            let rayric = RatioScenario::RayRic { k_factor: k };
            for y in [0.1, 0.4, 1.0, 2.7, 9.0] {
                let lhs = ricray.pdf(y).unwrap();
                let rhs = rayric.pdf(1.0 / y).unwrap() / (y * y);
                assert!(
                    ((lhs - rhs) / rhs).abs() < 1e-12,
                    "k={k}, y={y}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn rayray_reciprocal_symmetry() {
        for y in [0.05, 0.3, 1.0, 3.0, 20.0] {
            let f = RatioScenario::RayRay.pdf(y).unwrap();
            let g = RatioScenario::RayRay.pdf(1.0 / y).unwrap() / (y * y);
            assert!((f - g).abs() < 1e-12);
        }
    }

    #[test]
    fn ratio_pdfs_normalize() {
        let spec = QuadratureSpec::default();
        for k_db in [0.0, 5.0, 10.0] {
            let k = db_to_linear(k_db);
            for scenario in [
                RatioScenario::RayRay,
                RatioScenario::RayRic { k_factor: k },
                RatioScenario::RicRay { k_factor: k },
                RatioScenario::RicRic { k_factor: k },
            ] {
                let total = integrate(
                    |v| {
                        let y = v / (1.0 - v);
                        scenario.pdf_at(y) / ((1.0 - v) * (1.0 - v))
                    },
                    0.0,
                    1.0,
                    &spec,
                )
                .unwrap();
                assert!(
                    (total - 1.0).abs() < 1e-6,
                    "{scenario:?} at K={k_db} dB integrates to {total}"
                );
            }
        }
    }

    #[test]
    fn ratio_pdf_nonnegative_on_grid() {
        for scenario in [
            RatioScenario::RayRic { k_factor: 10.0 },
            RatioScenario::RicRay { k_factor: 10.0 },
            RatioScenario::RicRic { k_factor: K_5DB },
        ] {
            for i in 0..400 {
                let y = i as f64 * 0.1;
                assert!(scenario.pdf(y).unwrap() >= 0.0);
            }
        }
    }

    #[test]
    fn ratio_distributions_match_simulation() {
        // analytic CDF (numerically integrated density on an interpolation
        // grid) against the empirical CDF of sampled power ratios
        let spec = QuadratureSpec::default();
        let n = 1_000_000usize;
        for (scenario, seed) in [
            (RatioScenario::RayRay, 20u64),
            (RatioScenario::RayRic { k_factor: K_5DB }, 21),
            (RatioScenario::RicRay { k_factor: K_5DB }, 22),
            (RatioScenario::RicRic { k_factor: K_5DB }, 23),
        ] {
            // cumulative density on a v-grid, v = y/(1+y)
            let grid = 2000usize;
            let mut cum = vec![0.0f64; grid + 1];
            for g in 0..grid {
                let v0 = g as f64 / grid as f64;
                let v1 = (g + 1) as f64 / grid as f64;
                let piece = integrate(
                    |v| {
                        let y = v / (1.0 - v);
                        scenario.pdf_at(y) / ((1.0 - v) * (1.0 - v))
                    },
                    v0,
                    v1.min(1.0 - 1e-12),
                    &spec,
                )
                .unwrap();
                cum[g + 1] = cum[g] + piece;
            }
            let cdf = |y: f64| -> f64 {
                let v = y / (1.0 + y);
                let t = v * grid as f64;
                let i = (t as usize).min(grid - 1);
                let frac = t - i as f64;
                (cum[i] + frac * (cum[i + 1] - cum[i])).clamp(0.0, 1.0)
            };

            let cp = scenario.cp_kind();
            let cc = scenario.cc_kind();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ratios: Vec<f64> = (0..n)
                .map(|_| cp.sample_power(&mut rng) / cc.sample_power(&mut rng))
                .collect();
            ratios.sort_by(f64::total_cmp);
            let ks = ks_against(&ratios, cdf);
            assert!(ks < 0.002, "{scenario:?}: KS = {ks}");
        }
    }

    #[test]
    fn ricray_pdf_matches_histogram() {
        // density value against a simulated histogram bin around y = 0.7
        let scenario = RatioScenario::RicRay { k_factor: K_5DB };
        let n = 10_000_000usize;
        let half_width = 0.005;
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let mut count = 0usize;
        for _ in 0..n {
            let y = scenario.cp_kind().sample_power(&mut rng)
                / scenario.cc_kind().sample_power(&mut rng);
            if (y - 0.7).abs() <= half_width {
                count += 1;
            }
        }
        let p_hat = count as f64 / n as f64;
        let density_hat = p_hat / (2.0 * half_width);
        let se = (p_hat * (1.0 - p_hat) / n as f64).sqrt() / (2.0 * half_width);
        let want = scenario.pdf(0.7).unwrap();
        assert!(
            (density_hat - want).abs() <= 3.0 * se,
            "histogram {density_hat} vs pdf {want} (se {se})"
        );
    }

    #[test]
    fn truncation_error_zero_at_k0() {
        for y in [0.0, 0.5, 2.0] {
            assert_eq!(series_truncation_error(0.0, y, 18, 50).unwrap(), 0.0);
        }
    }

    #[test]
    fn truncation_error_small_at_5db() {
        let mut max_err: f64 = 0.0;
        for i in 0..200 {
            let y = i as f64 * 0.1;
            max_err = max_err.max(series_truncation_error(K_5DB, y, 18, 50).unwrap());
        }
        assert!(max_err < 1e-6, "max truncation error {max_err}");
    }

    #[test]
    fn truncation_error_monotone_in_terms() {
        // nonnegative terms make the partial sums increasing, so the gap to
        // the 50-term sum shrinks as terms_a grows
        for y in [0.2, 1.0, 3.0] {
            let mut prev = f64::INFINITY;
            for terms_a in [5, 10, 18, 30, 45] {
                let e = series_truncation_error(10.0, y, terms_a, 50).unwrap();
                assert!(e <= prev + 1e-18, "y={y}, terms_a={terms_a}");
                prev = e;
            }
        }
    }

    #[test]
    fn truncation_error_rejects_bad_term_counts() {
        assert!(series_truncation_error(1.0, 0.5, 18, 18).is_err());
        assert!(series_truncation_error(1.0, 0.5, 0, 10).is_err());
    }

    #[test]
    fn unequal_ricric_rejected() {
        let err = RatioScenario::from_kinds(
            FadingKind::Rician { k_factor: 2.0 },
            FadingKind::Rician { k_factor: 3.0 },
        );
        assert!(matches!(err, Err(Error::UnsupportedConfiguration(_))));
        assert!(RatioScenario::from_kinds(
            FadingKind::Rician { k_factor: 2.0 },
            FadingKind::Rician { k_factor: 2.0 },
        )
        .is_ok());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn power_cdf_is_a_cdf(k in 0.0f64..15.0, u1 in 0.0f64..20.0, u2 in 0.0f64..20.0) {
            let kind = FadingKind::Rician { k_factor: k };
            let (lo, hi) = if u1 <= u2 { (u1, u2) } else { (u2, u1) };
            let a = kind.power_cdf(lo);
            let b = kind.power_cdf(hi);
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!(a <= b + 1e-12);
        }

        #[test]
        fn ratio_pdf_nonnegative(k in 0.0f64..12.0, y in 0.0f64..100.0) {
            for s in [
                RatioScenario::RayRic { k_factor: k },
                RatioScenario::RicRay { k_factor: k },
                RatioScenario::RicRic { k_factor: k },
            ] {
                prop_assert!(s.pdf(y).unwrap() >= 0.0);
            }
        }
    }
}
