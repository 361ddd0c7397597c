//! Annulus placement model and the distribution of the distance ratio
//! r_cc / r_cp between the CR→CR and CR→PU links.
//!
//! The PU receiver sits at the center of a disc of radius `rp`; the PU and
//! CR transmitters are uniform in the annulus [r0, rp] around it, and the CR
//! receiver is uniform in the annulus [r0, rc] around the CR transmitter.
//! Positions are never materialized: every in-scope quantity depends on link
//! distances alone, so only distances are sampled.

use crate::error::{Error, Result};
use rand::Rng;

/// Deployment radii: inner exclusion radius `r0`, CR annulus outer radius
/// `rc`, PU annulus outer radius `rp` (all in meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    r0: f64,
    rc: f64,
    rp: f64,
}

impl Geometry {
    /// Requires 0 < r0 < rc and r0 < rp. `rc > rp` is allowed; the piecewise
    /// CDF re-derives its breakpoint ordering rather than assuming rc ≤ rp.
    pub fn new(r0: f64, rc: f64, rp: f64) -> Result<Self> {
        let finite = r0.is_finite() && rc.is_finite() && rp.is_finite();
        if !finite || !(r0 > 0.0 && r0 < rc && r0 < rp) {
            return Err(Error::InvalidGeometry(format!(
                "radii must be finite with 0 < r0 < rc and r0 < rp, got r0={r0}, rc={rc}, rp={rp}"
            )));
        }
        Ok(Self { r0, rc, rp })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn rc(&self) -> f64 {
        self.rc
    }

    pub fn rp(&self) -> f64 {
        self.rp
    }

    /// The piecewise polynomial form of P(r_cc/r_cp < x): breakpoints and
    /// per-piece coefficients of c₀·x⁻² + c₁ + c₂·x².
    pub fn piecewise_coefficients(&self) -> PiecewiseRatioCdf {
        PiecewiseRatioCdf::from_geometry(self)
    }

    /// CDF of the distance ratio r_cc/r_cp at `x` (total for x ≥ 0; returns
    /// 0 at x = 0 and 1 at +∞).
    pub fn ratio_cdf(&self, x: f64) -> f64 {
        self.piecewise_coefficients().eval(x)
    }
}

/// Breakpoints θ₁…θ₆ (θ₁ = 0, θ₆ = +∞) and the 5×3 coefficient table of the
/// distance-ratio CDF. Piece `i` covers (θᵢ, θᵢ₊₁] and evaluates to
/// cᵢ₀·x⁻² + cᵢ₁ + cᵢ₂·x².
#[derive(Debug, Clone)]
pub struct PiecewiseRatioCdf {
    thetas: [f64; 6],
    coeffs: [[f64; 3]; 5],
}

/// Integration limit for the inner-distance variable as a function of x:
/// either a constant radius or `radius / x`.
#[derive(Clone, Copy)]
enum Limit {
    Const(f64),
    OverX(f64),
}

impl PiecewiseRatioCdf {
    fn from_geometry(geom: &Geometry) -> Self {
        let (r0, rc, rp) = (geom.r0, geom.rc, geom.rp);

        // interior breakpoints, sorted: the printed ordering assumes rc <= rp
        let mut interior = [r0 / rp, rc / rp, 1.0, rc / r0];
        interior.sort_by(f64::total_cmp);
        let thetas = [
            0.0,
            interior[0],
            interior[1],
            interior[2],
            interior[3],
            f64::INFINITY,
        ];

        let mut coeffs = [[0.0; 3]; 5];
        // pieces 2..4 carry the derived coefficients; piece 1 is zero and
        // piece 5 is the constant 1
        for i in 1..4 {
            let lo = thetas[i];
            let hi = thetas[i + 1];
            if hi <= lo {
                // zero-width piece (e.g. rc == rp); contributes nothing
                continue;
            }
            let x_star = (lo * hi).sqrt();
            coeffs[i] = piece_coefficients(geom, x_star);
        }
        coeffs[4] = [0.0, 1.0, 0.0];

        Self { thetas, coeffs }
    }

    pub fn thetas(&self) -> &[f64; 6] {
        &self.thetas
    }

    pub fn coefficients(&self) -> &[[f64; 3]; 5] {
        &self.coeffs
    }

    /// Evaluate the CDF at `x ≥ 0`. A breakpoint value belongs to the piece
    /// on its left, matching the closed upper ends of the branch conditions.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 || x.is_nan() {
            return 0.0;
        }
        if x >= self.thetas[4] {
            return 1.0;
        }
        let mut piece = 4;
        for i in 0..5 {
            if x <= self.thetas[i + 1] {
                piece = i;
                break;
            }
        }
        let [c0, c1, c2] = self.coeffs[piece];
        let v = c0 / (x * x) + c1 + c2 * x * x;
        v.clamp(0.0, 1.0)
    }
}

/// Assemble the (x⁻², 1, x²) coefficients of the closed-form CDF on the piece
/// containing `x_star`.
///
/// On every piece, P(r_cc/r_cp < x) =
///   [0.5·x²(b⁴−a⁴) − r0²(b²−a²)]/Δ + (rp²−b²)/(rp²−r0²)
/// where [a, b] is the r_cp range over which the inner CDF is partial,
/// Δ = (rc²−r0²)(rp²−r0²), and the final term is the r_cp mass for which the
/// CR receiver is certainly within range. The limits a, b are each either a
/// constant or radius/x, which maps every term onto one of the three powers.
fn piece_coefficients(geom: &Geometry, x_star: f64) -> [f64; 3] {
    let (r0, rc, rp) = (geom.r0, geom.rc, geom.rp);
    let delta = (rc * rc - r0 * r0) * (rp * rp - r0 * r0);

    let a = if x_star <= r0 / rp {
        Limit::Const(rp) // degenerate: empty piece
    } else if x_star < 1.0 {
        Limit::OverX(r0)
    } else {
        Limit::Const(r0)
    };
    let b = if x_star <= rc / rp {
        Limit::Const(rp)
    } else if x_star < rc / r0 {
        Limit::OverX(rc)
    } else {
        Limit::Const(r0)
    };

    let mut c = [0.0; 3];
    // w · x²·L⁴ lands on x² for constant limits and on x⁻² for radius/x
    let add_x2_l4 = |l: Limit, w: f64, c: &mut [f64; 3]| match l {
        Limit::Const(r) => c[2] += w * r.powi(4),
        Limit::OverX(r) => c[0] += w * r.powi(4),
    };
    // w · L² lands on the constant for constant limits and on x⁻² otherwise
    let add_l2 = |l: Limit, w: f64, c: &mut [f64; 3]| match l {
        Limit::Const(r) => c[1] += w * r * r,
        Limit::OverX(r) => c[0] += w * r * r,
    };

    add_x2_l4(b, 0.5 / delta, &mut c);
    add_x2_l4(a, -0.5 / delta, &mut c);
    add_l2(b, -r0 * r0 / delta, &mut c);
    add_l2(a, r0 * r0 / delta, &mut c);

    // certainly-in-range mass: (rp² − b²)/(rp² − r0²)
    let inv = 1.0 / (rp * rp - r0 * r0);
    match b {
        Limit::Const(r) => c[1] += (rp * rp - r * r) * inv,
        Limit::OverX(r) => {
            c[1] += rp * rp * inv;
            c[0] -= r * r * inv;
        }
    }

    c
}

/// Draw a distance with density 2r/(r_out²−r_in²) on [r_in, r_out]: the law
/// of the distance from the center to a uniform point in the annulus.
pub fn sample_annulus_distance<R: Rng + ?Sized>(r_in: f64, r_out: f64, rng: &mut R) -> Result<f64> {
    if !(r_in > 0.0 && r_in < r_out && r_out.is_finite()) {
        return Err(Error::Domain(format!(
            "annulus range requires 0 < r_in < r_out, got [{r_in}, {r_out}]"
        )));
    }
    let u: f64 = rng.gen();
    Ok((r_in * r_in + u * (r_out * r_out - r_in * r_in)).sqrt())
}
