//! The Z channel as `y = x OR n`, the two-user broadcast Z channel and its
//! physically degraded decomposition, the OR-superposition source, and
//! plug-in mutual information estimates from simulated samples.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::math::Probability;

/// Crossover pair of a two-user broadcast Z channel with `alpha1 < alpha2`.
///
/// `alpha_delta` is the crossover of the extra Z stage that turns receiver 1's
/// output into receiver 2's: `1 - alpha2 = (1 - alpha1)(1 - alpha_delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BroadcastZChannel {
    alpha1: Probability,
    alpha2: Probability,
    alpha_delta: Probability,
}

impl BroadcastZChannel {
    pub fn new(alpha1: f64, alpha2: f64) -> Result<Self> {
        let a1 = Probability::new(alpha1)?;
        let a2 = Probability::new(alpha2)?;
        if !(alpha1 > 0.0 && alpha1 < 1.0) {
            return Err(Error::Domain {
                what: "alpha1 (must be strictly inside (0,1))",
                value: alpha1,
            });
        }
        if !(alpha2 > 0.0 && alpha2 < 1.0) {
            return Err(Error::Domain {
                what: "alpha2 (must be strictly inside (0,1))",
                value: alpha2,
            });
        }
        if alpha1 >= alpha2 {
            return Err(Error::ChannelOrdering { alpha1, alpha2 });
        }
        let delta = (alpha2 - alpha1) / (1.0 - alpha1);
        Ok(BroadcastZChannel {
            alpha1: a1,
            alpha2: a2,
            alpha_delta: Probability::new(delta)?,
        })
    }

    #[inline]
    pub fn alpha1(&self) -> f64 {
        self.alpha1.get()
    }

    #[inline]
    pub fn alpha2(&self) -> f64 {
        self.alpha2.get()
    }

    #[inline]
    pub fn alpha_delta(&self) -> f64 {
        self.alpha_delta.get()
    }

    /// `1 - alpha1`, the probability that a transmitted 0 reaches receiver 1 intact.
    #[inline]
    pub fn pass1(&self) -> f64 {
        1.0 - self.alpha1.get()
    }

    /// `1 - alpha2`.
    #[inline]
    pub fn pass2(&self) -> f64 {
        1.0 - self.alpha2.get()
    }
}

/// A transmission strategy: `mu2 = Pr(x2 = 0)`, `mu1 = Pr(x = 0 | x2 = 0)`,
/// `gamma = Pr(x = 0 | x2 = 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strategy {
    pub mu1: Probability,
    pub mu2: Probability,
    pub gamma: Probability,
}

impl Strategy {
    pub fn new(mu1: f64, mu2: f64, gamma: f64) -> Result<Self> {
        Ok(Strategy {
            mu1: Probability::new(mu1)?,
            mu2: Probability::new(mu2)?,
            gamma: Probability::new(gamma)?,
        })
    }

    /// Independent encoding (`gamma = 0`): `x = x1 OR x2`.
    pub fn independent(mu1: f64, mu2: f64) -> Result<Self> {
        Self::new(mu1, mu2, 0.0)
    }

    /// `(gamma, 1 - mu2, mu1)`, which relabels the auxiliary variable and
    /// achieves the same rate pair.
    pub fn relabeled(self) -> Strategy {
        Strategy {
            mu1: self.gamma,
            mu2: self.mu2.complement(),
            gamma: self.mu1,
        }
    }

    /// The equivalent strategy with `gamma <= mu1`.
    pub fn canonical(self) -> Strategy {
        if self.gamma.get() <= self.mu1.get() {
            self
        } else {
            self.relabeled()
        }
    }
}

/// A reproducible random stream keyed by `(seed, stream_id)`.
///
/// Different stream ids give independent ChaCha8 streams under the same
/// key, so Monte Carlo work can be split into chunks whose results do not
/// depend on how many workers process them.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh stream under the same seed. Sub-stream ids are mixed with
    /// the parent id so that nested splits do not collide.
    pub fn substream(&self, index: u64) -> RngStream {
        let id = self
            .stream_id
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(index.wrapping_add(1));
        RngStream::new(self.seed, id)
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// `true` with probability `p`.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    #[inline]
    pub fn bit(&mut self) -> u8 {
        (self.rng.next_u32() & 1) as u8
    }

    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }
}

/// One use of a Z channel: `x OR n` with `n ~ Bernoulli(alpha)`.
#[inline]
pub fn sample_z(x: u8, alpha: f64, rng: &mut RngStream) -> u8 {
    x | rng.bernoulli(alpha) as u8
}

/// One draw of the OR-superposition source: `x1 ~ Bern(1 - mu1)`,
/// `x2 ~ Bern(1 - mu2)` independent, and `x = x1 OR x2`.
#[inline]
pub fn sample_or_source(mu1: f64, mu2: f64, rng: &mut RngStream) -> (u8, u8, u8) {
    let x1 = (!rng.bernoulli(mu1)) as u8;
    let x2 = (!rng.bernoulli(mu2)) as u8;
    (x1, x2, x1 | x2)
}

/// Contingency counts for the OR source through both arms of a physically
/// degraded broadcast Z channel.
///
/// `joint[x2][x][y1]` feeds `I(X; Y1 | X2)` and `marg[x2][y2]` feeds
/// `I(X2; Y2)`. Counts from independent streams can be merged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrSourceCounts {
    pub joint: [[[u64; 2]; 2]; 2],
    pub marg: [[u64; 2]; 2],
    pub n: u64,
    /// Samples with `x = 1` but `y1 = 0` or `y2 = 0`. Always zero.
    pub asymmetry_violations: u64,
}

impl OrSourceCounts {
    pub fn sample(mu1: f64, mu2: f64, ch: &BroadcastZChannel, n: u64, rng: &mut RngStream) -> Self {
        let mut c = OrSourceCounts::default();
        for _ in 0..n {
            let (_, x2, x) = sample_or_source(mu1, mu2, rng);
            let y1 = sample_z(x, ch.alpha1(), rng);
            let y2 = sample_z(y1, ch.alpha_delta(), rng);
            c.joint[x2 as usize][x as usize][y1 as usize] += 1;
            c.marg[x2 as usize][y2 as usize] += 1;
            if x == 1 && (y1 == 0 || y2 == 0) {
                c.asymmetry_violations += 1;
            }
        }
        c.n = n;
        c
    }

    pub fn merge(&mut self, other: &OrSourceCounts) {
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    self.joint[a][b][d] += other.joint[a][b][d];
                }
                self.marg[a][b] += other.marg[a][b];
            }
        }
        self.n += other.n;
        self.asymmetry_violations += other.asymmetry_violations;
    }

    /// Plug-in estimates in bits with delta-method standard errors.
    pub fn estimate(&self) -> RateEstimate {
        let n = self.n as f64;
        let (i2, se2) = {
            let mut row = [0u64; 2];
            let mut col = [0u64; 2];
            for (a, counts) in self.marg.iter().enumerate() {
                for (b, &c) in counts.iter().enumerate() {
                    row[a] += c;
                    col[b] += c;
                }
            }
            let mut cells = [(0.0, 0.0); 4];
            for a in 0..2 {
                for b in 0..2 {
                    let nab = self.marg[a][b] as f64;
                    let pmi = if nab > 0.0 {
                        libm::log(nab * n / (row[a] as f64 * col[b] as f64))
                    } else {
                        0.0
                    };
                    cells[2 * a + b] = (nab / n, pmi);
                }
            }
            moments(&cells, n)
        };
        let (i1, se1) = {
            // I(X; Y1 | X2) = sum p(z,x,y) ln[p(z,x,y) p(z) / (p(z,x) p(z,y))]
            let mut cells = [(0.0, 0.0); 8];
            for z in 0..2 {
                let nz: u64 = self.joint[z].iter().flatten().sum();
                for x in 0..2 {
                    let nzx: u64 = self.joint[z][x].iter().sum();
                    for y in 0..2 {
                        let nzy = self.joint[z][0][y] + self.joint[z][1][y];
                        let nzxy = self.joint[z][x][y] as f64;
                        let pmi = if nzxy > 0.0 {
                            libm::log(nzxy * nz as f64 / (nzx as f64 * nzy as f64))
                        } else {
                            0.0
                        };
                        cells[4 * z + 2 * x + y] = (nzxy / n, pmi);
                    }
                }
            }
            moments(&cells, n)
        };
        let ln2 = core::f64::consts::LN_2;
        RateEstimate {
            r1_bits: (i1 / ln2).max(0.0),
            r2_bits: (i2 / ln2).max(0.0),
            se1_bits: se1 / ln2,
            se2_bits: se2 / ln2,
            n: self.n,
        }
    }
}

/// Mean and delta-method standard error of a plug-in information functional
/// from `(probability, pointwise information)` cells.
fn moments(cells: &[(f64, f64)], n: f64) -> (f64, f64) {
    let mean: f64 = cells.iter().map(|(p, l)| p * l).sum();
    let second: f64 = cells.iter().map(|(p, l)| p * l * l).sum();
    let var = (second - mean * mean).max(0.0) / n;
    (mean, libm::sqrt(var))
}

/// Empirical `(I1, I2)` in bits with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub r1_bits: f64,
    pub r2_bits: f64,
    pub se1_bits: f64,
    pub se2_bits: f64,
    pub n: u64,
}

/// Plug-in estimates of `I(X; Y1 | X2)` and `I(X2; Y2)` from `n` draws of
/// the OR source through both arms.
pub fn empirical_rates(
    mu1: f64,
    mu2: f64,
    ch: &BroadcastZChannel,
    n: u64,
    rng: &mut RngStream,
) -> RateEstimate {
    OrSourceCounts::sample(mu1, mu2, ch, n, rng).estimate()
}

/// Result of simulating `Y1 = X OR N1`, `Y2 = Y1 OR N_delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegradationReport {
    pub n: u64,
    /// Empirical `Pr(Y1 = 1 | X = 0)`.
    pub crossover1: f64,
    /// Empirical `Pr(Y2 = 1 | X = 0)`.
    pub crossover2: f64,
    /// `crossover2 - alpha2`.
    pub deviation: f64,
    /// Binomial standard error of `crossover2` at the nominal `alpha2`.
    pub std_error: f64,
    /// Empirical `Pr(Y2 != Y1 | X = 0)`.
    pub extra_flip_rate: f64,
    /// Samples with `X = 1` whose `Y2` was 0. Always zero for an OR channel.
    pub ones_violations: u64,
}

/// Pushes `n` zeros and then `n` ones through the two-stage channel.
pub fn verify_degradation(
    ch: &BroadcastZChannel,
    n: u64,
    rng: &mut RngStream,
) -> DegradationReport {
    let (mut ones1, mut ones2, mut flips) = (0u64, 0u64, 0u64);
    for _ in 0..n {
        let y1 = sample_z(0, ch.alpha1(), rng);
        let y2 = sample_z(y1, ch.alpha_delta(), rng);
        ones1 += y1 as u64;
        ones2 += y2 as u64;
        flips += (y1 != y2) as u64;
    }
    let mut ones_violations = 0;
    for _ in 0..n {
        let y1 = sample_z(1, ch.alpha1(), rng);
        let y2 = sample_z(y1, ch.alpha_delta(), rng);
        ones_violations += (y2 == 0) as u64;
    }
    let nf = n as f64;
    let c2 = ones2 as f64 / nf;
    DegradationReport {
        n,
        crossover1: ones1 as f64 / nf,
        crossover2: c2,
        deviation: c2 - ch.alpha2(),
        std_error: libm::sqrt(ch.alpha2() * (1.0 - ch.alpha2()) / nf),
        extra_flip_rate: flips as f64 / nf,
        ones_violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn channel_construction() {
        let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
        assert!((ch.alpha_delta() - 0.45 / 0.85).abs() < 1e-15);
        assert!((ch.pass2() - ch.pass1() * (1.0 - ch.alpha_delta())).abs() < 1e-15);
        assert!(matches!(
            BroadcastZChannel::new(0.2, 0.2),
            Err(Error::ChannelOrdering { .. })
        ));
        assert!(matches!(
            BroadcastZChannel::new(0.6, 0.15),
            Err(Error::ChannelOrdering { .. })
        ));
        assert!(BroadcastZChannel::new(0.0, 0.5).is_err());
        assert!(BroadcastZChannel::new(0.2, 1.0).is_err());
        let near = BroadcastZChannel::new(0.3, 0.3 + 1e-9).unwrap();
        assert!(near.alpha_delta() < 2e-9);
    }

    #[test]
    fn strategy_relabeling() {
        let s = Strategy::new(0.3, 0.4, 0.7).unwrap();
        let c = s.canonical();
        assert_eq!(c.mu1.get(), 0.7);
        assert!((c.mu2.get() - 0.6).abs() < 1e-15);
        assert_eq!(c.gamma.get(), 0.3);
        assert_eq!(c.relabeled().relabeled(), c);
    }

    #[test]
    fn z_channel_degenerate_cases() {
        let mut rng = RngStream::new(1, 0);
        for _ in 0..1000 {
            assert_eq!(sample_z(1, 0.37, &mut rng), 1);
            assert_eq!(sample_z(0, 0.0, &mut rng), 0);
            assert_eq!(sample_or_source(1.0, 1.0, &mut rng), (0, 0, 0));
            assert_eq!(sample_or_source(0.0, 0.3, &mut rng).2, 1);
        }
    }

    #[test]
    fn z_channel_crossover_frequency() {
        let mut rng = RngStream::new(7, 3);
        let n = 10_000_000;
        let ones: u64 = (0..n).map(|_| sample_z(0, 0.6, &mut rng) as u64).sum();
        assert!((ones as f64 / n as f64 - 0.6).abs() < 0.001);
    }

    #[test]
    fn or_source_zero_probability() {
        let mut rng = RngStream::new(11, 0);
        let n = 10_000_000;
        let zeros: u64 = (0..n)
            .map(|_| (sample_or_source(0.804, 0.5, &mut rng).2 == 0) as u64)
            .sum();
        assert!((zeros as f64 / n as f64 - 0.402).abs() < 0.001);
    }

    #[test]
    fn streams_reproduce_and_differ() {
        let draw = |s: &mut RngStream| (0..32).map(|_| s.uniform()).collect::<alloc::vec::Vec<_>>();
        let a = draw(&mut RngStream::new(5, 9));
        let b = draw(&mut RngStream::new(5, 9));
        let c = draw(&mut RngStream::new(5, 10));
        assert_eq!(a, b);
        assert_ne!(a, c);
        let root = RngStream::new(5, 0);
        assert_ne!(root.substream(0).stream_id(), root.substream(1).stream_id());
    }

    #[test]
    fn deterministic_source_has_zero_information() {
        let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
        let est = empirical_rates(1.0, 1.0, &ch, 10_000, &mut RngStream::new(3, 0));
        assert_eq!(est.r1_bits, 0.0);
        assert_eq!(est.r2_bits, 0.0);
    }

    #[test]
    fn ones_are_absorbed() {
        let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
        let rep = verify_degradation(&ch, 100_000, &mut RngStream::new(2, 0));
        assert_eq!(rep.ones_violations, 0);
        assert!(rep.deviation.abs() < 5.0 * rep.std_error);
    }

    #[test]
    fn nearly_identical_arms_rarely_differ() {
        let ch = BroadcastZChannel::new(0.3, 0.301).unwrap();
        let rep = verify_degradation(&ch, 1_000_000, &mut RngStream::new(2, 1));
        let expected = 0.7 * ch.alpha_delta();
        assert!((rep.extra_flip_rate - expected).abs() < 5.0 * libm::sqrt(expected / 1e6));
    }
}
