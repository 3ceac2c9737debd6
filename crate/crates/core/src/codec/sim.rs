//! Bit error rate harness for the two-user scheme.

use alloc::vec::Vec;

use super::bcjr::TernarySymbol;
use super::successive::{
    effective_crossover, successive_decode_with, Rx1Mode, Rx1Params, MIN_CROSSOVER,
};
use super::turbo::{turbo_decode, turbo_encode, TurboConfig};
use crate::channel::{sample_z, BroadcastZChannel, RngStream};
use crate::error::{Error, Result};
use crate::math::Probability;

/// Receiver-side assumptions of a BER run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimParams {
    /// Zero probability of user 1's codeword assumed by the user-2
    /// decoders.
    pub mu1: f64,
    pub mode: Rx1Mode,
    /// Both arms pass `x` unchanged.
    pub noiseless: bool,
}

impl SimParams {
    pub fn new(mu1: f64) -> Self {
        SimParams {
            mu1,
            mode: Rx1Mode::Soft,
            noiseless: false,
        }
    }
}

/// Integer counters of a set of frames. Merging is order independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SimTally {
    pub frames: u64,
    /// Info bits per user.
    pub info_bits: u64,
    pub bit_errors_user1: u64,
    pub bit_errors_user2: u64,
    pub frame_errors_user1: u64,
    pub frame_errors_user2: u64,
    /// User-2 errors made inside receiver 1's first stage.
    pub rx1_user2_bit_errors: u64,
    pub rx1_user2_frame_errors: u64,
    /// Frames where a decoder found no consistent path.
    pub decoder_failures: u64,
    pub ones_user1: u64,
    pub ones_user2: u64,
    /// Coded bits per user.
    pub code_bits: u64,
}

impl SimTally {
    pub fn merge(&mut self, o: &SimTally) {
        self.frames += o.frames;
        self.info_bits += o.info_bits;
        self.bit_errors_user1 += o.bit_errors_user1;
        self.bit_errors_user2 += o.bit_errors_user2;
        self.frame_errors_user1 += o.frame_errors_user1;
        self.frame_errors_user2 += o.frame_errors_user2;
        self.rx1_user2_bit_errors += o.rx1_user2_bit_errors;
        self.rx1_user2_frame_errors += o.rx1_user2_frame_errors;
        self.decoder_failures += o.decoder_failures;
        self.ones_user1 += o.ones_user1;
        self.ones_user2 += o.ones_user2;
        self.code_bits += o.code_bits;
    }

    pub fn report(&self, seed: u64) -> SimReport {
        let density = |ones: u64| {
            if self.code_bits == 0 {
                0.0
            } else {
                ones as f64 / self.code_bits as f64
            }
        };
        SimReport {
            info_bits: self.info_bits,
            bit_errors_user1: self.bit_errors_user1,
            bit_errors_user2: self.bit_errors_user2,
            frame_errors_user1: self.frame_errors_user1,
            frame_errors_user2: self.frame_errors_user2,
            measured_ones_density_1: density(self.ones_user1),
            measured_ones_density_2: density(self.ones_user2),
            seed,
            frames: self.frames,
            rx1_user2_bit_errors: self.rx1_user2_bit_errors,
            rx1_user2_frame_errors: self.rx1_user2_frame_errors,
            decoder_failures: self.decoder_failures,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimReport {
    /// Info bits sent per user.
    pub info_bits: u64,
    pub bit_errors_user1: u64,
    pub bit_errors_user2: u64,
    pub frame_errors_user1: u64,
    pub frame_errors_user2: u64,
    pub measured_ones_density_1: f64,
    pub measured_ones_density_2: f64,
    pub seed: u64,
    pub frames: u64,
    pub rx1_user2_bit_errors: u64,
    pub rx1_user2_frame_errors: u64,
    pub decoder_failures: u64,
}

impl SimReport {
    pub fn ber_user1(&self) -> f64 {
        self.bit_errors_user1 as f64 / self.info_bits.max(1) as f64
    }

    pub fn ber_user2(&self) -> f64 {
        self.bit_errors_user2 as f64 / self.info_bits.max(1) as f64
    }
}

fn errors(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

/// Sends one frame of both users through both arms and decodes it at both
/// receivers.
pub fn simulate_frame(
    cfg1: &TurboConfig,
    cfg2: &TurboConfig,
    ch: &BroadcastZChannel,
    params: &SimParams,
    rng: &mut RngStream,
) -> Result<SimTally> {
    if cfg1.code_bits() != cfg2.code_bits() {
        return Err(Error::Config(
            "both users must have the same codeword length".into(),
        ));
    }
    let info1: Vec<u8> = (0..cfg1.info_bits()).map(|_| rng.bit()).collect();
    let info2: Vec<u8> = (0..cfg2.info_bits()).map(|_| rng.bit()).collect();
    let x1 = turbo_encode(&info1, cfg1)?;
    let x2 = turbo_encode(&info2, cfg2)?;
    let (a1, ad, a2) = if params.noiseless {
        (0.0, 0.0, 0.0)
    } else {
        (ch.alpha1(), ch.alpha_delta(), ch.alpha2())
    };
    let mut y1 = Vec::with_capacity(x1.len());
    let mut y2 = Vec::with_capacity(x1.len());
    for (&b1, &b2) in x1.iter().zip(&x2) {
        let r1 = sample_z(b1 | b2, a1, rng);
        y1.push(r1);
        y2.push(sample_z(r1, ad, rng));
    }

    let mut t = SimTally {
        frames: 1,
        info_bits: info1.len() as u64,
        ones_user1: x1.iter().map(|&b| b as u64).sum(),
        ones_user2: x2.iter().map(|&b| b as u64).sum(),
        code_bits: x1.len() as u64,
        ..SimTally::default()
    };

    let rx1 = Rx1Params {
        crossover_user2: effective_crossover(a1, params.mu1),
        crossover_user1: a1.max(MIN_CROSSOVER),
        mode: params.mode,
    };
    let zeros = alloc::vec![0u8; info1.len()];
    match successive_decode_with(&y1, cfg1, cfg2, &rx1) {
        Ok(out) => {
            t.bit_errors_user1 = errors(&out.xhat1, &info1);
            t.rx1_user2_bit_errors = errors(&out.xhat2, &info2);
        }
        Err(_) => {
            t.decoder_failures += 1;
            t.bit_errors_user1 = errors(&zeros, &info1);
            t.rx1_user2_bit_errors = errors(&zeros, &info2);
        }
    }

    let rx2: Vec<TernarySymbol> = y2.iter().map(|&b| TernarySymbol::from_bit(b)).collect();
    let cross = Probability::new(effective_crossover(a2, params.mu1))?;
    match turbo_decode(&rx2, cfg2, cross) {
        Ok(xhat2) => t.bit_errors_user2 = errors(&xhat2, &info2),
        Err(_) => {
            t.decoder_failures += 1;
            t.bit_errors_user2 = errors(&zeros, &info2);
        }
    }
    t.frame_errors_user1 = (t.bit_errors_user1 > 0) as u64;
    t.frame_errors_user2 = (t.bit_errors_user2 > 0) as u64;
    t.rx1_user2_frame_errors = (t.rx1_user2_bit_errors > 0) as u64;
    Ok(t)
}

/// Runs `frames` frames sequentially, frame `f` drawing from
/// `rng.substream(f)`.
pub fn ber_experiment(
    cfg1: &TurboConfig,
    cfg2: &TurboConfig,
    ch: &BroadcastZChannel,
    frames: u64,
    rng: &RngStream,
    params: &SimParams,
) -> Result<SimReport> {
    if frames == 0 {
        return Err(Error::Config("at least one frame is required".into()));
    }
    let mut total = SimTally::default();
    for f in 0..frames {
        total.merge(&simulate_frame(
            cfg1,
            cfg2,
            ch,
            params,
            &mut rng.substream(f),
        )?);
    }
    Ok(total.report(rng.seed()))
}
