use alloc::string::String;

/// Errors produced by the simulation core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("model needs at least {min} qubits, got {got}")]
    TooFewQubits { min: usize, got: usize },
    #[error("{n} qubits exceeds the dense limit of {limit}")]
    DenseLimit { n: usize, limit: usize },
    #[error("qubit {qubit} lies outside a register of {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("register size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("term {index} out of range for a model with {len} terms")]
    TermOutOfRange { index: usize, len: usize },
    #[error("term has a complex coefficient ({re} + {im}i); expected a Hermitian term")]
    NonHermitianTerm { re: f64, im: f64 },
    #[error("invalid bipartition: {0}")]
    InvalidCut(&'static str),
    #[error("light cone is undefined for {0} geometry")]
    NoLightCone(&'static str),
    #[error("gate is not unitary (deviation {0:e})")]
    NonUnitaryGate(f64),
    #[error("bond {bond} out of range for {n} sites")]
    BondOutOfRange { bond: usize, n: usize },
    #[error("site {site} out of range for {n} sites")]
    SiteOutOfRange { site: usize, n: usize },
    #[error("term {0} is not supported on a single site or an adjacent pair")]
    NonLocalTerm(usize),
    #[error("unsupported product-formula order {0} (supported: 1, 2, 4, 6)")]
    UnsupportedOrder(u32),
    #[error("no tabulated constant c_p for order {0}; supply one explicitly")]
    MissingConstant(u32),
    #[error("step count must be at least 1")]
    ZeroSteps,
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("balanced-cut scan limited to n <= {limit}, got {n}")]
    BalancedScanLimit { n: usize, limit: usize },
    #[error("target error {0} outside (0, 1/4]: the lower-bound construction assumes error <= 1/4")]
    LowerBoundEpsilon(f64),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
