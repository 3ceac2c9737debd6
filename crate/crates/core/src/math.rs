//! Binary entropy, the auxiliary functions `phi` and `psi` that
//! parameterize the optimal boundary, and a bracketing root finder.
//!
//! Everything here works in natural-log units. Conversion to bits only
//! happens where rates are reported.

use core::f64::consts::LN_2;
use core::fmt;

use crate::channel::BroadcastZChannel;
use crate::error::{Error, Result};

/// Default bracket width for [`solve_monotone_root`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

/// A probability in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::ProbabilityRange { value })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `1 - p`.
    #[inline]
    pub fn complement(self) -> Probability {
        Probability(1.0 - self.0)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An amount of information in nats.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Nats(pub f64);

impl Nats {
    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn bits(self) -> f64 {
        self.0 / LN_2
    }

    #[inline]
    pub fn from_bits(bits: f64) -> Nats {
        Nats(bits * LN_2)
    }
}

/// `x ln x` with the `0 ln 0 = 0` convention.
#[inline]
fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * libm::log(x)
    }
}

/// Binary entropy in nats, `-p ln p - (1-p) ln(1-p)`.
///
/// Arguments are clamped to `[0, 1]`, which absorbs floating-point dust
/// from products such as `mu2 * mu1 * (1 - alpha)`.
#[inline]
pub fn entropy_nats(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let h = -xlnx(p) - xlnx(1.0 - p);
    if h < 0.0 {
        0.0
    } else {
        h
    }
}

/// Binary entropy in bits.
#[inline]
pub fn entropy_bits(p: f64) -> f64 {
    entropy_nats(p) / LN_2
}

/// Derivative of the binary entropy, `ln((1-p)/p)`.
#[inline]
pub fn entropy_derivative(p: f64) -> f64 {
    libm::log((1.0 - p) / p)
}

/// Binary relative entropy `D(p || q)` in nats.
pub fn relative_entropy(p: f64, q: f64) -> f64 {
    let mut d = 0.0;
    if p > 0.0 {
        d += p * libm::log(p / q);
    }
    if p < 1.0 {
        d += (1.0 - p) * libm::log((1.0 - p) / (1.0 - q));
    }
    d
}

/// `phi(x) = ln(1 - (1-a1) x) / ln(1 - (1-a2) x)`.
///
/// Strictly increasing on `[0, 1]` whenever `a1 < a2`; `phi(0)` is the
/// continuous extension `(1-a1)/(1-a2)`. A value of `phi(mu1)` is the
/// Lagrange weight at which `mu1` is the optimal conditional zero
/// probability for the better user.
pub fn phi(x: f64, ch: &BroadcastZChannel) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "phi",
            value: x,
        });
    }
    let (a1, a2) = (ch.pass1(), ch.pass2());
    if x == 0.0 {
        return Ok(a1 / a2);
    }
    if 1.0 - a2 * x <= 0.0 || 1.0 - a1 * x <= 0.0 {
        return Err(Error::Domain {
            what: "phi",
            value: x,
        });
    }
    Ok(libm::log1p(-a1 * x) / libm::log1p(-a2 * x))
}

/// `psi(x) = 1 / (x e^{H(x)/x} + x)`.
///
/// `psi(1 - alpha)` maximizes `H(mu (1-alpha)) - mu H(1-alpha)`, i.e. it is
/// the capacity-achieving zero probability of a Z channel with crossover
/// `alpha`.
pub fn psi(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain {
            what: "psi",
            value: x,
        });
    }
    Ok(1.0 / (x * libm::exp(entropy_nats(x) / x) + x))
}

/// Bisection on a monotone function.
///
/// Returns a point of the final bracket, whose width is at most `tol`, or
/// an exact zero if one is hit on the way. `f(lo)` and `f(hi)` must have
/// opposite signs unless one of them is zero.
pub fn solve_monotone_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) || !(lo <= hi) {
        return Err(Error::Domain {
            what: "solve_monotone_root",
            value: tol,
        });
    }
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = f(lo);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = f(hi);
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.is_nan() || f_hi.is_nan() || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    let rising = f_hi > 0.0;
    // 200 halvings exhaust f64 resolution for any finite bracket.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nominal_channel() -> BroadcastZChannel {
        BroadcastZChannel::new(0.15, 0.6).unwrap()
    }

    #[test]
    fn probability_rejects_out_of_range() {
        assert!(Probability::new(-1e-9).is_err());
        assert!(Probability::new(1.0 + 1e-9).is_err());
        assert!(Probability::new(f64::NAN).is_err());
        assert_eq!(Probability::new(0.25).unwrap().complement().get(), 0.75);
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy_nats(0.0), 0.0);
        assert_eq!(entropy_nats(1.0), 0.0);
        assert!((entropy_nats(0.5) - LN_2).abs() < 1e-15);
        // mpmath: -0.85*ln(0.85) - 0.15*ln(0.15)
        assert!((entropy_nats(0.85) - 0.422709087).abs() < 1e-8);
        assert!((entropy_bits(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(entropy_bits(1.0), 0.0);
        assert!((entropy_bits(0.85) - 0.609840305).abs() < 1e-8);
    }

    #[test]
    fn relative_entropy_of_identical_is_zero() {
        assert_eq!(relative_entropy(0.3, 0.3), 0.0);
        assert!(relative_entropy(0.2, 0.6) > 0.0);
    }

    #[test]
    fn phi_values() {
        let ch = nominal_channel();
        assert!((phi(0.0, &ch).unwrap() - 2.125).abs() < 1e-15);
        assert!((phi(1e-9, &ch).unwrap() - 2.125).abs() < 1e-8);
        // ln(0.15)/ln(0.6)
        assert!((phi(1.0, &ch).unwrap() - 3.713830897713).abs() < 1e-11);
        let p = psi(0.85).unwrap();
        assert!((phi(p, &ch).unwrap() - 2.424308262596).abs() < 1e-11);
        assert!(phi(1.5, &ch).is_err());
    }

    #[test]
    fn psi_values() {
        assert!((psi(0.85).unwrap() - 0.445).abs() < 5e-4);
        assert!((psi(0.4).unwrap() - 0.392).abs() < 5e-4);
        assert!((psi(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(psi(0.0).is_err());
    }

    #[test]
    fn root_finder_examples() {
        let r = solve_monotone_root(|x| x - 0.3, 0.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-12);
        let r = solve_monotone_root(|x| x * x * x, -1.0, 2.0, 1e-12).unwrap();
        assert!(r.abs() < 1e-4);
        assert!(matches!(
            solve_monotone_root(|x| x + 1.0, 0.0, 1.0, 1e-12),
            Err(Error::Bracket { .. })
        ));
        // Decreasing functions are fine too.
        let r = solve_monotone_root(|x| 0.3 - x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-12);
    }

    #[test]
    fn root_finder_inverts_phi() {
        let ch = nominal_channel();
        let target = phi(0.7, &ch).unwrap();
        assert!((target - 2.751467341659).abs() < 1e-11);
        let lo = psi(0.85).unwrap();
        let x = solve_monotone_root(|x| phi(x, &ch).unwrap() - target, lo, 1.0, 1e-13).unwrap();
        assert!((x - 0.7).abs() < 1e-9);
    }
}
