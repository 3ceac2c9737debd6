//! Receiver 1: decode user 2 treating user 1 as noise, then decode user 1
//! with the positions covered by user 2's ones removed.

use alloc::boxed::Box;
use alloc::vec::Vec;

use super::bcjr::{ln, z_bit_metrics, BitMetric, TernarySymbol};
use super::turbo::{turbo_decode_metrics, turbo_encode, TurboConfig};
use crate::channel::BroadcastZChannel;
use crate::error::{Error, Result};
use crate::math::Probability;

/// Smallest crossover handed to a decoder; a noiseless arm is modeled as
/// this instead of an exact zero.
pub const MIN_CROSSOVER: f64 = 1e-12;

/// How user 2's estimate enters the decoder of user 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Rx1Mode {
    /// Per-bit probabilities of user 2's codeword weight the channel
    /// metrics of user 1.
    #[default]
    Soft,
    /// User 2 is re-encoded from its decoded bits and every position where
    /// it is 1 becomes an erasure.
    Hard,
}

/// 0-to-1 crossover of the Z channel a user-2 decoder sees when user 1's
/// codeword (zero probability `mu1`) is treated as noise.
pub fn effective_crossover(alpha: f64, mu1: f64) -> f64 {
    (1.0 - (1.0 - alpha) * mu1).max(MIN_CROSSOVER)
}

/// `y1` where `x2 = 0`, an erasure where `x2 = 1`.
pub fn erase_where_ones(y1: &[u8], x2: &[u8]) -> Result<Vec<TernarySymbol>> {
    if y1.len() != x2.len() {
        return Err(Error::Length {
            expected: y1.len(),
            actual: x2.len(),
        });
    }
    Ok(y1
        .iter()
        .zip(x2)
        .map(|(&y, &c)| {
            if c == 1 {
                TernarySymbol::Erasure
            } else {
                TernarySymbol::from_bit(y)
            }
        })
        .collect())
}

/// Crossovers and mode used by receiver 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rx1Params {
    /// Crossover assumed when decoding user 2.
    pub crossover_user2: f64,
    /// Crossover of the arm itself, used when decoding user 1.
    pub crossover_user1: f64,
    pub mode: Rx1Mode,
}

impl Rx1Params {
    pub fn new(mu1: Probability, ch: &BroadcastZChannel, mode: Rx1Mode) -> Self {
        Rx1Params {
            crossover_user2: effective_crossover(ch.alpha1(), mu1.get()),
            crossover_user1: ch.alpha1().max(MIN_CROSSOVER),
            mode,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rx1Output {
    pub xhat2: Vec<u8>,
    pub xhat1: Vec<u8>,
    /// User 2's codeword as re-encoded from `xhat2`.
    pub x2_codeword: Vec<u8>,
}

/// Successive decoding of one frame at receiver 1.
pub fn successive_decode_rx1(
    y1: &[u8],
    cfg1: &TurboConfig,
    cfg2: &TurboConfig,
    mu1: Probability,
    ch: &BroadcastZChannel,
    mode: Rx1Mode,
) -> Result<Rx1Output> {
    successive_decode_with(y1, cfg1, cfg2, &Rx1Params::new(mu1, ch, mode))
}

pub fn successive_decode_with(
    y1: &[u8],
    cfg1: &TurboConfig,
    cfg2: &TurboConfig,
    p: &Rx1Params,
) -> Result<Rx1Output> {
    if cfg1.code_bits() != cfg2.code_bits() || y1.len() != cfg1.code_bits() {
        return Err(Error::Length {
            expected: cfg1.code_bits(),
            actual: y1.len(),
        });
    }
    let stage = |stage: u8| {
        move |e: Error| Error::Stage {
            stage,
            source: Box::new(e),
        }
    };
    let rx: Vec<TernarySymbol> = y1.iter().map(|&b| TernarySymbol::from_bit(b)).collect();
    let cross2 = Probability::new(p.crossover_user2).map_err(stage(1))?;
    let want_bits = p.mode == Rx1Mode::Soft;
    let d2 =
        turbo_decode_metrics(&z_bit_metrics(&rx, cross2), cfg2, want_bits).map_err(stage(1))?;
    let x2_codeword = turbo_encode(&d2.info, cfg2).map_err(stage(2))?;
    let a = p.crossover_user1;
    let metrics: Vec<BitMetric> = match (p.mode, &d2.bit_ones) {
        (Rx1Mode::Soft, Some(q)) => y1
            .iter()
            .zip(q)
            .map(|(&y, &q)| {
                if y == 0 {
                    [ln((1.0 - q) * (1.0 - a)), f64::NEG_INFINITY]
                } else {
                    [ln(q + (1.0 - q) * a), 0.0]
                }
            })
            .collect(),
        _ => {
            let erased = erase_where_ones(y1, &x2_codeword).map_err(stage(2))?;
            z_bit_metrics(&erased, Probability::new(a).map_err(stage(2))?)
        }
    };
    let d1 = turbo_decode_metrics(&metrics, cfg1, false).map_err(stage(3))?;
    Ok(Rx1Output {
        xhat2: d2.info,
        xhat1: d1.info,
        x2_codeword,
    })
}
