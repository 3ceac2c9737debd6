//! Provenance block embedded in every artifact.

use serde::Serialize;
use serde_json::{Map, Value};
use zbc_core::BroadcastZChannel;

pub const TOOL_VERSION: &str = concat!("zbc ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Boundary,
    Optimize,
    VerifyGrid,
    VerifyDerivatives,
    VerifyTheorem3,
    VerifyDegradation,
    VerifyGfunction,
    Simulate,
    Codec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Bits,
    Nats,
}

impl Units {
    pub fn from_flag(nats: bool) -> Units {
        if nats {
            Units::Nats
        } else {
            Units::Bits
        }
    }

    /// Column or field name of user `user`'s rate, e.g. `R1_bits`.
    pub fn rate_key(self, user: u8) -> String {
        match self {
            Units::Bits => format!("R{user}_bits"),
            Units::Nats => format!("R{user}_nats"),
        }
    }

    pub fn from_bits(self, bits: f64) -> f64 {
        match self {
            Units::Bits => bits,
            Units::Nats => bits * std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelConfig {
    pub alpha1: f64,
    pub alpha2: f64,
}

impl ChannelConfig {
    pub fn channel(&self) -> zbc_core::Result<BroadcastZChannel> {
        BroadcastZChannel::new(self.alpha1, self.alpha2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tool: &'static str,
    pub command: CommandKind,
    /// Absent for suites that draw their own random channels.
    pub channel: Option<ChannelConfig>,
    pub options: Map<String, Value>,
    pub seed: Option<u64>,
    pub output: Option<String>,
    pub units: Units,
}

impl RunConfig {
    pub fn new(command: CommandKind, channel: Option<ChannelConfig>) -> Self {
        RunConfig {
            tool: TOOL_VERSION,
            command,
            channel,
            options: Map::new(),
            seed: None,
            output: None,
            units: Units::Bits,
        }
    }

    pub fn option(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.options.insert(key.to_owned(), value.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}
