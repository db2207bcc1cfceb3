use thiserror::Error;

/// Errors raised by the simulator and the algorithm drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gate `{name}` is not unitary (max deviation {deviation:e})")]
    NonUnitary { name: String, deviation: f64 },

    #[error("permutation is not a bijection on 0..{dim}")]
    NotBijective { dim: usize },

    #[error("stage {stage} does not span the register layout")]
    StageDimensionMismatch { stage: usize },

    #[error("resource limit: naive evaluation of dimension {dim} exceeds the cap of {cap}")]
    ResourceLimit { dim: usize, cap: usize },

    #[error("invalid wire dimension {0} (must be at least 2)")]
    InvalidWireDim(usize),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (squared norm {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("empty wire set")]
    EmptyWireSet,

    #[error("wire {wire} is invalid for a register of {wires} wires")]
    InvalidWire { wire: usize, wires: usize },

    #[error("malformed function table: {0}")]
    MalformedTable(String),

    #[error("function is not two-to-one")]
    NotTwoToOne,

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: u64, m: u64 },

    #[error("{x} is not coprime to {n}")]
    NotCoprime { x: u64, n: u64 },

    #[error("invalid discrete-log instance: {0}")]
    InvalidInstance(String),

    #[error("no usable measurement after {0} tries")]
    TriesExhausted(usize),

    #[error("no factor found after {0} attempts")]
    AttemptsExhausted(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
