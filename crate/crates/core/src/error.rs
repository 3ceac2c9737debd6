use alloc::string::String;

/// Errors produced by the channel model, the capacity engine and the codec.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("probability {value} is outside [0, 1]")]
    ProbabilityRange { value: f64 },

    #[error("crossover probabilities must satisfy 0 < alpha1 < alpha2 < 1 (got alpha1={alpha1}, alpha2={alpha2})")]
    ChannelOrdering { alpha1: f64, alpha2: f64 },

    #[error("{what}: argument {value} outside the function domain")]
    Domain { what: &'static str, value: f64 },

    #[error("root is not bracketed: f({lo})={f_lo} and f({hi})={f_hi} have the same sign")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("mu1={mu1} is below the optimal range lower end {lower}; no mu2 in (0,1] solves the boundary condition")]
    Mu1BelowRange { mu1: f64, lower: f64 },

    #[error("strategy ({mu1}, {mu2}, {gamma}) is not strictly interior")]
    NotInterior { mu1: f64, mu2: f64, gamma: f64 },

    #[error("label table line {line}: {msg}")]
    LabelParse { line: usize, msg: String },

    #[error("label {value:#o} at state {state}, input {input} does not fit in 6 bits")]
    LabelRange {
        state: usize,
        input: usize,
        value: u32,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    Length { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("decoder found no codeword consistent with the received section {section}")]
    NoConsistentPath { section: usize },

    #[error("successive decoding failed at stage {stage}: {source}")]
    Stage {
        stage: u8,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

pub type Result<T> = core::result::Result<T, Error>;
