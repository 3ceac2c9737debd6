//! Capacity region and optimal transmission strategies of the two-user
//! broadcast Z channel, with a nonlinear turbo coding scheme that reaches
//! the boundary by OR-ing independently encoded streams.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, reports and the
//! command-line driver live in the `zbc` crate.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod capacity;
pub mod channel;
pub mod codec;
pub mod error;
pub mod math;
pub mod oracle;

pub use capacity::{BoundaryCase, BoundaryPoint, Optimum, RatePair};
pub use channel::{BroadcastZChannel, RngStream, Strategy};
pub use error::{Error, Result};
pub use math::{Nats, Probability};
