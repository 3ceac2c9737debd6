//! Parallel drivers whose results do not depend on the number of workers.
//!
//! Work is cut into pieces that each own a fixed sub-stream of the run's
//! [`RngStream`], and pieces are merged in index order.

use rayon::prelude::*;
use zbc_core::channel::OrSourceCounts;
use zbc_core::codec::{simulate_frame, SimParams, SimReport, SimTally, TurboConfig};
use zbc_core::{BroadcastZChannel, Error, RngStream};

use crate::error::{CliError, CliResult};

/// Monte Carlo samples per sub-stream.
pub const SAMPLE_CHUNK: u64 = 1 << 20;

pub fn thread_pool(threads: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))
}

/// `n` draws of the OR source through both arms. Chunk `c` uses
/// sub-stream `c` of `RngStream::new(seed, 0)`.
pub fn or_source_counts(
    mu1: f64,
    mu2: f64,
    ch: &BroadcastZChannel,
    n: u64,
    seed: u64,
) -> OrSourceCounts {
    let root = RngStream::new(seed, 0);
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let parts: Vec<OrSourceCounts> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
            OrSourceCounts::sample(mu1, mu2, ch, len, &mut root.substream(c))
        })
        .collect();
    let mut total = OrSourceCounts::default();
    for p in &parts {
        total.merge(p);
    }
    total
}

/// Same result as `zbc_core::codec::ber_experiment` with
/// `RngStream::new(seed, 0)`, with frames decoded in parallel.
pub fn ber_experiment(
    cfg1: &TurboConfig,
    cfg2: &TurboConfig,
    ch: &BroadcastZChannel,
    frames: u64,
    seed: u64,
    params: &SimParams,
) -> zbc_core::Result<SimReport> {
    if frames == 0 {
        return Err(Error::Config("at least one frame is required".into()));
    }
    let root = RngStream::new(seed, 0);
    let tallies: Vec<zbc_core::Result<SimTally>> = (0..frames)
        .into_par_iter()
        .map(|f| simulate_frame(cfg1, cfg2, ch, params, &mut root.substream(f)))
        .collect();
    let mut total = SimTally::default();
    for t in tallies {
        total.merge(&t?);
    }
    Ok(total.report(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zbc_core::codec::{LabelTable, TrellisSpec};

    #[test]
    fn counts_do_not_depend_on_thread_count() {
        let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
        let n = 2 * SAMPLE_CHUNK + 12345;
        let one = thread_pool(Some(1))
            .unwrap()
            .install(|| or_source_counts(0.8, 0.5, &ch, n, 9));
        let three = thread_pool(Some(3))
            .unwrap()
            .install(|| or_source_counts(0.8, 0.5, &ch, n, 9));
        assert_eq!(one, three);
        assert_eq!(one.n, n);
    }

    #[test]
    fn parallel_frames_match_the_sequential_harness() {
        let ch = BroadcastZChannel::new(0.15, 0.6).unwrap();
        let c1 =
            TurboConfig::new(TrellisSpec::shift_register(LabelTable::user1()), 64, 1, 3).unwrap();
        let c2 =
            TurboConfig::new(TrellisSpec::shift_register(LabelTable::user2()), 64, 2, 3).unwrap();
        let p = SimParams::new(0.804);
        let seq =
            zbc_core::codec::ber_experiment(&c1, &c2, &ch, 5, &RngStream::new(7, 0), &p).unwrap();
        let par = thread_pool(Some(2))
            .unwrap()
            .install(|| ber_experiment(&c1, &c2, &ch, 5, 7, &p))
            .unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn zero_threads_is_rejected() {
        assert!(matches!(thread_pool(Some(0)), Err(CliError::Usage(_))));
    }
}
