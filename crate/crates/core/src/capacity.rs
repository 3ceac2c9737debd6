//! Rate formulas of the broadcast Z channel, the optimal strategy for a
//! weighted sum-rate, and the explicit boundary of the capacity region.
//!
//! With `a_i = 1 - alpha_i` and `H` the binary entropy in nats:
//!
//! ```text
//! I2 = H((mu2' gamma + mu2 mu1) a2) - mu2' H(gamma a2) - mu2 H(mu1 a2)
//! I1 = mu2' (H(gamma a1) - gamma H(a1)) + mu2 (H(mu1 a1) - mu1 H(a1))
//! ```
//!
//! where `mu2' = 1 - mu2`. Boundary strategies always have `gamma = 0`, and
//! for `mu1` in `[psi(a1), 1]` the boundary condition has a unique
//! solution `mu2`.

use alloc::vec::Vec;

use crate::channel::{BroadcastZChannel, Strategy};
use crate::error::{Error, Result};
use crate::math::{entropy_nats as h, phi, psi, solve_monotone_root, Nats};

/// Rates below zero by at most this much are floating-point dust.
const NEGATIVE_RATE_DUST: f64 = 1e-12;

/// Bisection width used when inverting `phi`.
const PHI_INVERSE_TOL: f64 = 1e-14;

/// A pair of rates `(R1, R2)`, held in nats.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RatePair {
    pub r1: Nats,
    pub r2: Nats,
}

impl RatePair {
    pub fn from_nats(r1: f64, r2: f64) -> RatePair {
        let clamp = |r: f64| {
            if r < 0.0 && r > -NEGATIVE_RATE_DUST {
                0.0
            } else {
                r
            }
        };
        RatePair {
            r1: Nats(clamp(r1)),
            r2: Nats(clamp(r2)),
        }
    }

    pub fn bits(&self) -> (f64, f64) {
        (self.r1.bits(), self.r2.bits())
    }

    /// Weighted sum `I1 + lambda I2` in nats.
    pub fn weighted(&self, lambda: f64) -> f64 {
        self.r1.get() + lambda * self.r2.get()
    }
}

/// `(I1, I2)` for an arbitrary strategy `(mu1, mu2, gamma)`.
pub fn rates_general(s: &Strategy, ch: &BroadcastZChannel) -> RatePair {
    let (mu1, mu2, g) = (s.mu1.get(), s.mu2.get(), s.gamma.get());
    rates_general_raw(mu1, mu2, g, ch)
}

/// [`rates_general`] without the range-checked wrapper, for grid sweeps
/// and finite differences.
pub fn rates_general_raw(mu1: f64, mu2: f64, g: f64, ch: &BroadcastZChannel) -> RatePair {
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let nmu2 = 1.0 - mu2;
    let i2 = h((nmu2 * g + mu2 * mu1) * a2) - nmu2 * h(g * a2) - mu2 * h(mu1 * a2);
    let ha1 = h(a1);
    let i1 = nmu2 * (h(g * a1) - g * ha1) + mu2 * (h(mu1 * a1) - mu1 * ha1);
    RatePair::from_nats(i1, i2)
}

/// `(I1, I2)` for independent encoding (`gamma = 0`).
pub fn rates_independent(mu1: f64, mu2: f64, ch: &BroadcastZChannel) -> RatePair {
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let i2 = h(mu2 * mu1 * a2) - mu2 * h(mu1 * a2);
    let i1 = mu2 * h(mu1 * a1) - mu2 * mu1 * h(a1);
    RatePair::from_nats(i1, i2)
}

/// Single-user term `H(mu a) - mu H(a)`: the rate of a Z channel with
/// pass probability `a` and input zero probability `mu`.
#[inline]
pub(crate) fn z_rate(mu: f64, pass: f64) -> f64 {
    h(mu * pass) - mu * h(pass)
}

/// Lower end of the optimal `mu1` range, `psi(1 - alpha1)`.
pub fn mu1_lower(ch: &BroadcastZChannel) -> f64 {
    psi(ch.pass1()).expect("pass probability is in (0,1)")
}

/// Lower end of the optimal `mu2` range, `psi(1 - alpha2)`.
pub fn mu2_lower(ch: &BroadcastZChannel) -> f64 {
    psi(ch.pass2()).expect("pass probability is in (0,1)")
}

/// `LHS - RHS` of the boundary condition linking `mu1` and `mu2`:
///
/// ```text
/// (H(mu1 a1) - mu1 H(a1)) ln(1 - mu1 a2)
///   = (H(mu1 a2) - mu1 a2 ln((1 - mu2 mu1 a2)/(mu2 mu1 a2))) ln(1 - mu1 a1)
/// ```
pub fn boundary_residual(mu1: f64, mu2: f64, ch: &BroadcastZChannel) -> f64 {
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let t = mu2 * mu1 * a2;
    let lhs = z_rate(mu1, a1) * libm::log1p(-mu1 * a2);
    let rhs = (h(mu1 * a2) - mu1 * a2 * libm::log((1.0 - t) / t)) * libm::log1p(-mu1 * a1);
    lhs - rhs
}

/// The `mu2` paired with `mu1` on the optimal boundary.
///
/// Solved in closed form by isolating the log-odds term of the boundary
/// condition: `mu2 = 1 / (mu1 a2 (e^c + 1))` with
/// `c = (H(mu1 a2) - (H(mu1 a1) - mu1 H(a1)) / phi(mu1)) / (mu1 a2)`.
pub fn solve_mu2(mu1: f64, ch: &BroadcastZChannel) -> Result<f64> {
    if !(mu1 > 0.0 && mu1 <= 1.0) {
        return Err(Error::Domain {
            what: "solve_mu2",
            value: mu1,
        });
    }
    let lower = mu1_lower(ch);
    if mu1 < lower - 1e-12 {
        return Err(Error::Mu1BelowRange { mu1, lower });
    }
    let (a1, a2) = (ch.pass1(), ch.pass2());
    let lambda = phi(mu1, ch)?;
    let c = (h(mu1 * a2) - z_rate(mu1, a1) / lambda) / (mu1 * a2);
    let mu2 = 1.0 / (mu1 * a2 * (libm::exp(c) + 1.0));
    if mu2 > 1.0 + 1e-9 {
        return Err(Error::Mu1BelowRange { mu1, lower });
    }
    let mu2 = mu2.min(1.0);
    debug_assert!(boundary_residual(mu1, mu2, ch).abs() < 1e-10 || mu2 == 1.0);
    Ok(mu2)
}

/// Which regime of the weighted sum-rate problem a `lambda` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCase {
    /// `lambda <= phi(psi(a1))`: all rate to user 1 (point B).
    User1Only,
    /// `lambda >= phi(1)`: all rate to user 2 (point A).
    User2Only,
    /// Strictly between: both users get positive rate.
    Shared,
}

impl BoundaryCase {
    /// 1, 2 or 3, in the order the regimes are usually enumerated.
    pub fn number(self) -> u8 {
        match self {
            BoundaryCase::User1Only => 1,
            BoundaryCase::User2Only => 2,
            BoundaryCase::Shared => 3,
        }
    }
}

/// One point of the optimal boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub mu1: f64,
    pub mu2: f64,
    pub lambda: f64,
    pub rates: RatePair,
}

/// Maximizer of `I1 + lambda I2` over independent-encoding strategies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub case: BoundaryCase,
    pub point: BoundaryPoint,
}

/// Solves `max I1 + lambda I2` over `(mu1, mu2)` in closed form.
pub fn optimal_for_lambda(lambda: f64, ch: &BroadcastZChannel) -> Result<Optimum> {
    if !(lambda >= 0.0) {
        return Err(Error::Domain {
            what: "optimal_for_lambda",
            value: lambda,
        });
    }
    let lo = mu1_lower(ch);
    let lambda_b = phi(lo, ch)?;
    let lambda_a = phi(1.0, ch)?;
    let (case, mu1, mu2) = if lambda <= lambda_b {
        (BoundaryCase::User1Only, lo, 1.0)
    } else if lambda >= lambda_a {
        (BoundaryCase::User2Only, 1.0, mu2_lower(ch))
    } else {
        let mu1 = solve_monotone_root(
            |x| phi(x, ch).unwrap_or(f64::NAN) - lambda,
            lo,
            1.0,
            PHI_INVERSE_TOL,
        )?;
        (BoundaryCase::Shared, mu1, solve_mu2(mu1, ch)?)
    };
    Ok(Optimum {
        case,
        point: BoundaryPoint {
            mu1,
            mu2,
            lambda,
            rates: rates_independent(mu1, mu2, ch),
        },
    })
}

/// Traces the boundary with `n_points` values of `mu1` spread uniformly
/// over `[psi(a1), 1]`. The first point is B (`R2 = 0`), the last is A
/// (`R1 = 0`).
pub fn trace_boundary(ch: &BroadcastZChannel, n_points: usize) -> Result<Vec<BoundaryPoint>> {
    if n_points < 2 {
        return Err(Error::Config(alloc::format!(
            "need at least 2 boundary points, got {n_points}"
        )));
    }
    let lo = mu1_lower(ch);
    let last = (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let mu1 = if i == n_points - 1 {
                1.0
            } else {
                lo + (1.0 - lo) * i as f64 / last
            };
            boundary_point(mu1, ch)
        })
        .collect()
}

/// The boundary point whose user-1 zero probability is `mu1`.
pub fn boundary_point(mu1: f64, ch: &BroadcastZChannel) -> Result<BoundaryPoint> {
    let mu2 = solve_mu2(mu1, ch)?;
    Ok(BoundaryPoint {
        mu1,
        mu2,
        lambda: phi(mu1, ch)?,
        rates: rates_independent(mu1, mu2, ch),
    })
}

/// Slopes `dR2/dR1` of the boundary at B and at A:
/// `(-1/phi(psi(a1)), -1/phi(1))`.
pub fn endpoint_tangent_slopes(ch: &BroadcastZChannel) -> (f64, f64) {
    let at_b = phi(mu1_lower(ch), ch).expect("in domain");
    let at_a = phi(1.0, ch).expect("in domain");
    (-1.0 / at_b, -1.0 / at_a)
}
