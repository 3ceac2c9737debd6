//! Symbol-MAP forward-backward decoding over a 16-state trellis.
//!
//! All recursions run on natural-log probabilities. A branch that the
//! channel rules out (a label bit 1 where a 0 was received) carries
//! `f64::NEG_INFINITY`, which `max_star` treats as an exact zero.

use alloc::vec;
use alloc::vec::Vec;

use super::labels::{INPUTS, N0, STATES};
use super::trellis::TrellisSpec;
use crate::error::{Error, Result};
use crate::math::Probability;

/// What a decoder sees at one coded-bit position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TernarySymbol {
    Zero,
    One,
    /// Produced only by the receiver when it knows the position carries no
    /// information about the codeword.
    Erasure,
}

impl TernarySymbol {
    #[inline]
    pub fn from_bit(b: u8) -> Self {
        if b == 0 {
            TernarySymbol::Zero
        } else {
            TernarySymbol::One
        }
    }
}

/// `ln p(y | c = 0)` and `ln p(y | c = 1)` for one coded bit.
pub type BitMetric = [f64; 2];

/// `(p(y | c = 0), p(y | c = 1))` on a Z channel with the given 0-to-1
/// crossover, extended with erasures.
pub fn z_symbol_likelihoods(y: TernarySymbol, crossover: Probability) -> (f64, f64) {
    let a = crossover.get();
    match y {
        TernarySymbol::Zero => (1.0 - a, 0.0),
        TernarySymbol::One => (a, 1.0),
        TernarySymbol::Erasure => (1.0, 1.0),
    }
}

/// Log-domain metrics of a received sequence.
pub fn z_bit_metrics(received: &[TernarySymbol], crossover: Probability) -> Vec<BitMetric> {
    received
        .iter()
        .map(|&y| {
            let (l0, l1) = z_symbol_likelihoods(y, crossover);
            [ln(l0), ln(l1)]
        })
        .collect()
}

#[inline]
pub(crate) fn ln(p: f64) -> f64 {
    if p <= 0.0 {
        f64::NEG_INFINITY
    } else {
        libm::log(p)
    }
}

/// `ln(e^a + e^b)`.
#[inline]
pub fn max_star(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + libm::log1p(libm::exp(lo - hi))
}

/// Shifts a log vector so its entries log-sum to zero. Returns `false`
/// when every entry is impossible.
#[inline]
fn log_normalize(v: &mut [f64]) -> bool {
    let total = v.iter().copied().fold(f64::NEG_INFINITY, max_star);
    if total == f64::NEG_INFINITY {
        return false;
    }
    for x in v.iter_mut() {
        *x -= total;
    }
    true
}

/// Output of one forward-backward pass, in normalized log form.
#[derive(Debug, Clone)]
pub(crate) struct LogBcjr {
    pub posteriors: Vec<[f64; INPUTS]>,
    pub extrinsics: Vec<[f64; INPUTS]>,
    /// `Pr(c = 1)` per coded bit, when requested.
    pub bit_ones: Option<Vec<f64>>,
}

/// Forward-backward pass with log priors per section. The encoder starts
/// in state 0; the final state is unknown.
pub(crate) fn bcjr_log(
    metrics: &[BitMetric],
    trellis: &TrellisSpec,
    log_priors: &[[f64; INPUTS]],
    want_bits: bool,
) -> Result<LogBcjr> {
    let k = log_priors.len();
    if metrics.len() != k * N0 {
        return Err(Error::Length {
            expected: k * N0,
            actual: metrics.len(),
        });
    }
    let labels = trellis.labels();

    // Channel part of every branch metric, indexed [section][state * 4 + input].
    let mut chan = vec![[0.0f64; STATES * INPUTS]; k];
    for (sec, out) in chan.iter_mut().enumerate() {
        let m = &metrics[sec * N0..(sec + 1) * N0];
        let mut hi = [0.0; 8];
        let mut lo = [0.0; 8];
        for v in 0..8 {
            for j in 0..3 {
                let bit = (v >> (2 - j)) & 1;
                hi[v] += m[j][bit];
                lo[v] += m[3 + j][bit];
            }
        }
        for s in 0..STATES {
            for u in 0..INPUTS {
                let l = labels.label(s, u) as usize;
                out[s * INPUTS + u] = hi[l >> 3] + lo[l & 7];
            }
        }
    }

    let mut alpha = vec![[f64::NEG_INFINITY; STATES]; k + 1];
    alpha[0][0] = 0.0;
    for sec in 0..k {
        let mut next = [f64::NEG_INFINITY; STATES];
        for s in 0..STATES {
            let a = alpha[sec][s];
            if a == f64::NEG_INFINITY {
                continue;
            }
            for u in 0..INPUTS {
                let g = chan[sec][s * INPUTS + u] + log_priors[sec][u];
                let t = trellis.next_state(s, u);
                next[t] = max_star(next[t], a + g);
            }
        }
        if !log_normalize(&mut next) {
            return Err(Error::NoConsistentPath { section: sec });
        }
        alpha[sec + 1] = next;
    }

    let mut beta = vec![[0.0f64; STATES]; k + 1];
    for sec in (0..k).rev() {
        let mut cur = [f64::NEG_INFINITY; STATES];
        for s in 0..STATES {
            for u in 0..INPUTS {
                let g = chan[sec][s * INPUTS + u] + log_priors[sec][u];
                let b = beta[sec + 1][trellis.next_state(s, u)];
                cur[s] = max_star(cur[s], g + b);
            }
        }
        if !log_normalize(&mut cur) {
            return Err(Error::NoConsistentPath { section: sec });
        }
        beta[sec] = cur;
    }

    let mut posteriors = Vec::with_capacity(k);
    let mut extrinsics = Vec::with_capacity(k);
    let mut bit_ones = want_bits.then(|| Vec::with_capacity(k * N0));
    for sec in 0..k {
        let mut ext = [f64::NEG_INFINITY; INPUTS];
        let mut branch = [f64::NEG_INFINITY; STATES * INPUTS];
        for s in 0..STATES {
            let a = alpha[sec][s];
            if a == f64::NEG_INFINITY {
                continue;
            }
            for u in 0..INPUTS {
                let v = a + chan[sec][s * INPUTS + u] + beta[sec + 1][trellis.next_state(s, u)];
                ext[u] = max_star(ext[u], v);
                branch[s * INPUTS + u] = v + log_priors[sec][u];
            }
        }
        let mut post = [0.0; INPUTS];
        for u in 0..INPUTS {
            post[u] = ext[u] + log_priors[sec][u];
        }
        if !log_normalize(&mut ext) || !log_normalize(&mut post) {
            return Err(Error::NoConsistentPath { section: sec });
        }
        posteriors.push(post);
        extrinsics.push(ext);
        if let Some(bits) = bit_ones.as_mut() {
            let top = branch.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mut total = 0.0;
            let mut ones = [0.0; N0];
            for s in 0..STATES {
                for u in 0..INPUTS {
                    let w = libm::exp(branch[s * INPUTS + u] - top);
                    total += w;
                    let l = labels.label(s, u);
                    for (j, o) in ones.iter_mut().enumerate() {
                        if (l >> (N0 - 1 - j)) & 1 == 1 {
                            *o += w;
                        }
                    }
                }
            }
            bits.extend(ones.iter().map(|o| o / total));
        }
    }
    Ok(LogBcjr {
        posteriors,
        extrinsics,
        bit_ones,
    })
}

/// Per-section probabilities over the four inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct BcjrOutput {
    pub posteriors: Vec<[f64; INPUTS]>,
    /// Posterior divided by prior, renormalized.
    pub extrinsics: Vec<[f64; INPUTS]>,
}

/// Symbol-MAP decoding of one trellis code over a Z channel with erasures.
pub fn bcjr_decode(
    received: &[TernarySymbol],
    trellis: &TrellisSpec,
    crossover: Probability,
    priors: &[[f64; INPUTS]],
) -> Result<BcjrOutput> {
    let metrics = z_bit_metrics(received, crossover);
    let log_priors: Vec<[f64; INPUTS]> = priors.iter().map(|p| p.map(ln)).collect();
    let r = bcjr_log(&metrics, trellis, &log_priors, false)?;
    Ok(BcjrOutput {
        posteriors: r.posteriors.iter().map(|p| p.map(libm::exp)).collect(),
        extrinsics: r.extrinsics.iter().map(|p| p.map(libm::exp)).collect(),
    })
}

/// Index of the largest entry; ties go to the smallest index.
#[inline]
pub(crate) fn argmax(v: &[f64; INPUTS]) -> u8 {
    let mut best = 0;
    for u in 1..INPUTS {
        if v[u] > v[best] {
            best = u;
        }
    }
    best as u8
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::labels::LabelTable;
    use crate::codec::trellis::{pairs_to_symbols, trellis_encode};
    use crate::RngStream;

    fn p(x: f64) -> Probability {
        Probability::new(x).unwrap()
    }

    #[test]
    fn likelihoods() {
        assert_eq!(
            z_symbol_likelihoods(TernarySymbol::Zero, p(0.3)),
            (0.7, 0.0)
        );
        assert_eq!(
            z_symbol_likelihoods(TernarySymbol::One, p(0.3166)),
            (0.3166, 1.0)
        );
        assert_eq!(
            z_symbol_likelihoods(TernarySymbol::Erasure, p(0.3)),
            (1.0, 1.0)
        );
    }

    #[test]
    fn max_star_is_log_sum_exp() {
        assert!((max_star(0.0, 0.0) - core::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(max_star(f64::NEG_INFINITY, -3.0), -3.0);
        assert_eq!(
            max_star(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
        let v = max_star(libm::log(0.2), libm::log(0.5));
        assert!((v - libm::log(0.7)).abs() < 1e-15);
    }

    fn random_info(k: usize, seed: u64) -> Vec<u8> {
        let mut rng = RngStream::new(seed, 0);
        (0..2 * k).map(|_| rng.bit()).collect()
    }

    #[test]
    fn noiseless_decoding_is_exact() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        let info = random_info(300, 1);
        let code = trellis_encode(&info, &t).unwrap();
        let rx: Vec<_> = code.iter().map(|&b| TernarySymbol::from_bit(b)).collect();
        let out = bcjr_decode(&rx, &t, p(1e-12), &vec![[0.25; 4]; 300]).unwrap();
        let dec: Vec<u8> = out.posteriors.iter().map(argmax).collect();
        assert_eq!(dec, pairs_to_symbols(&info));
        for post in &out.posteriors {
            assert!((post.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn all_erasures_return_the_priors() {
        let t = TrellisSpec::shift_register(LabelTable::user2());
        let priors: Vec<[f64; 4]> = (0..50)
            .map(|i| {
                let a = 0.1 + 0.003 * i as f64;
                [a, 0.2, 0.3, 0.5 - a]
            })
            .collect();
        let rx = vec![TernarySymbol::Erasure; 300];
        let out = bcjr_decode(&rx, &t, p(0.4), &priors).unwrap();
        for (post, prior) in out.posteriors.iter().zip(&priors) {
            for u in 0..4 {
                assert!((post[u] - prior[u]).abs() < 1e-12);
            }
        }
        for ext in &out.extrinsics {
            for e in ext {
                assert!((e - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_observations_exclude_branches_with_ones() {
        // Receiving all zeros is impossible for user 2, whose labels all
        // carry three ones.
        let t = TrellisSpec::shift_register(LabelTable::user2());
        let rx = vec![TernarySymbol::Zero; 12];
        assert!(matches!(
            bcjr_decode(&rx, &t, p(0.3), &[[0.25; 4]; 2]),
            Err(Error::NoConsistentPath { section: 0 })
        ));
    }

    #[test]
    fn bit_posteriors_are_consistent_with_noiseless_codeword() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        let info = random_info(40, 3);
        let code = trellis_encode(&info, &t).unwrap();
        let rx: Vec<_> = code.iter().map(|&b| TernarySymbol::from_bit(b)).collect();
        let m = z_bit_metrics(&rx, p(1e-12));
        let r = bcjr_log(&m, &t, &vec![[-libm::log(4.0); 4]; 40], true).unwrap();
        for (q, &c) in r.bit_ones.unwrap().iter().zip(&code) {
            assert!((q - c as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn length_mismatch() {
        let t = TrellisSpec::shift_register(LabelTable::user1());
        assert!(matches!(
            bcjr_decode(&[TernarySymbol::One; 7], &t, p(0.2), &[[0.25; 4]; 1]),
            Err(Error::Length { .. })
        ));
    }
}
