//! Parallel concatenation of two identical trellis codes.
//!
//! A frame carries `K` pair symbols. Constituent 1 encodes them in natural
//! order, constituent 2 in interleaved order, and each trellis section
//! contributes 6 bits from constituent 1 followed by 6 from constituent 2,
//! so a frame is `12 K` bits long and the rate is 1/6.

use alloc::vec;
use alloc::vec::Vec;

use super::bcjr::{argmax, bcjr_log, z_bit_metrics, BitMetric, TernarySymbol};
use super::interleaver::Interleaver;
use super::labels::{INPUTS, K0, N0};
use super::trellis::{pairs_to_symbols, push_label, symbols_to_pairs, TrellisSpec};
use crate::error::{Error, Result};
use crate::math::Probability;

pub const DEFAULT_ITERATIONS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct TurboConfig {
    pub trellis: TrellisSpec,
    pub k: usize,
    pub interleaver_seed: u64,
    pub iterations: usize,
    interleaver: Interleaver,
}

impl TurboConfig {
    pub fn new(
        trellis: TrellisSpec,
        k: usize,
        interleaver_seed: u64,
        iterations: usize,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("interleaver length must be positive".into()));
        }
        let interleaver = Interleaver::random(k, interleaver_seed);
        TurboConfig::with_interleaver(trellis, interleaver, interleaver_seed, iterations)
    }

    pub fn with_interleaver(
        trellis: TrellisSpec,
        interleaver: Interleaver,
        interleaver_seed: u64,
        iterations: usize,
    ) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::Config(
                "at least one decoding iteration is required".into(),
            ));
        }
        if interleaver.is_empty() {
            return Err(Error::Config("interleaver length must be positive".into()));
        }
        Ok(TurboConfig {
            trellis,
            k: interleaver.len(),
            interleaver_seed,
            iterations,
            interleaver,
        })
    }

    pub fn interleaver(&self) -> &Interleaver {
        &self.interleaver
    }

    pub fn info_bits(&self) -> usize {
        self.k * K0
    }

    pub fn code_bits(&self) -> usize {
        self.k * 2 * N0
    }
}

/// Encodes `2 K` info bits into `12 K` coded bits.
pub fn turbo_encode(info: &[u8], cfg: &TurboConfig) -> Result<Vec<u8>> {
    if info.len() != cfg.info_bits() {
        return Err(Error::Length {
            expected: cfg.info_bits(),
            actual: info.len(),
        });
    }
    let sym = pairs_to_symbols(info);
    let sym2 = cfg.interleaver.interleave(&sym);
    let t = &cfg.trellis;
    let mut out = Vec::with_capacity(cfg.code_bits());
    let (mut s1, mut s2) = (0usize, 0usize);
    for (&u1, &u2) in sym.iter().zip(&sym2) {
        push_label(&mut out, t.label(s1, u1 as usize));
        push_label(&mut out, t.label(s2, u2 as usize));
        s1 = t.next_state(s1, u1 as usize);
        s2 = t.next_state(s2, u2 as usize);
    }
    Ok(out)
}

/// Everything the iterative decoder learned about one frame.
#[derive(Debug, Clone, PartialEq)]
pub struct TurboOutput {
    /// Decoded info bits.
    pub info: Vec<u8>,
    /// Final per-section posteriors over the four pair symbols.
    pub posteriors: Vec<[f64; INPUTS]>,
    /// Decisions that changed at each iteration (the first entry counts
    /// positions that differ from the all-zero decision).
    pub changes: Vec<usize>,
    /// Largest `|sum - 1|` of any section posterior over all iterations.
    pub normalization_error: f64,
    /// `Pr(c = 1)` for every coded bit in frame order, when requested.
    pub bit_ones: Option<Vec<f64>>,
}

/// Iterative decoding of a frame observed through a Z channel with
/// erasures; returns the decoded info bits.
pub fn turbo_decode(
    received: &[TernarySymbol],
    cfg: &TurboConfig,
    crossover: Probability,
) -> Result<Vec<u8>> {
    Ok(turbo_decode_metrics(&z_bit_metrics(received, crossover), cfg, false)?.info)
}

/// Iterative decoding from per-bit log-likelihoods in frame order.
pub fn turbo_decode_metrics(
    metrics: &[BitMetric],
    cfg: &TurboConfig,
    want_bits: bool,
) -> Result<TurboOutput> {
    if metrics.len() != cfg.code_bits() {
        return Err(Error::Length {
            expected: cfg.code_bits(),
            actual: metrics.len(),
        });
    }
    let k = cfg.k;
    let mut m1 = Vec::with_capacity(k * N0);
    let mut m2 = Vec::with_capacity(k * N0);
    for sec in metrics.chunks_exact(2 * N0) {
        m1.extend_from_slice(&sec[..N0]);
        m2.extend_from_slice(&sec[N0..]);
    }
    let uniform = -libm::log(INPUTS as f64);
    let mut prior1 = vec![[uniform; INPUTS]; k];
    let mut decisions = vec![0u8; k];
    let mut changes = Vec::with_capacity(cfg.iterations);
    let mut normalization_error: f64 = 0.0;
    let mut posteriors = Vec::new();
    let mut bit_ones = None;
    for it in 0..cfg.iterations {
        let last = it + 1 == cfg.iterations;
        let r1 = bcjr_log(&m1, &cfg.trellis, &prior1, want_bits && last)?;
        let prior2 = cfg.interleaver.interleave(&r1.extrinsics);
        let r2 = bcjr_log(&m2, &cfg.trellis, &prior2, want_bits && last)?;
        prior1 = cfg.interleaver.deinterleave(&r2.extrinsics);
        posteriors = cfg
            .interleaver
            .deinterleave(&r2.posteriors)
            .into_iter()
            .map(|p| p.map(libm::exp))
            .collect::<Vec<_>>();
        for p in &posteriors {
            normalization_error = normalization_error.max((p.iter().sum::<f64>() - 1.0).abs());
        }
        let mut changed = 0;
        for (d, p) in decisions.iter_mut().zip(&posteriors) {
            let u = argmax(p);
            changed += (u != *d) as usize;
            *d = u;
        }
        changes.push(changed);
        if let (Some(b1), Some(b2)) = (r1.bit_ones, r2.bit_ones) {
            let mut all = Vec::with_capacity(cfg.code_bits());
            for (c1, c2) in b1.chunks_exact(N0).zip(b2.chunks_exact(N0)) {
                all.extend_from_slice(c1);
                all.extend_from_slice(c2);
            }
            bit_ones = Some(all);
        }
    }
    Ok(TurboOutput {
        info: symbols_to_pairs(&decisions),
        posteriors,
        changes,
        normalization_error,
        bit_ones,
    })
}
