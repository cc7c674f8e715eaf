use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("circuit width must be positive")]
    ZeroWidth,

    #[error("register `{name}`: wire {index} is out of range for width {width}")]
    RegisterOutOfRange {
        name: String,
        index: usize,
        width: usize,
    },

    #[error("register `{name}` lists wire {index} more than once")]
    RegisterRepeatsWire { name: String, index: usize },

    #[error("register `{name}` overlaps register `{other}` on wire {index}")]
    RegisterOverlap {
        name: String,
        other: String,
        index: usize,
    },

    #[error("wire {index} does not belong to any register")]
    UncoveredWire { index: usize },

    #[error("gate {gate} uses wire {index} more than once")]
    DuplicateOperand { gate: String, index: usize },

    #[error("gate {gate} references wire {index}, circuit width is {width}")]
    OperandOutOfRange {
        gate: String,
        index: usize,
        width: usize,
    },

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("register maps differ; supply an explicit relabeling")]
    RegisterMismatch,

    #[error("invalid relabeling: {0}")]
    InvalidRelabeling(String),

    #[error("unsupported width n = {n}: the construction requires n >= {min}")]
    UnsupportedWidth { n: usize, min: usize },

    #[error("gate {gate} is not a classical reversible gate; use the statevector backend")]
    BackendMismatch { gate: String },

    #[error("width {width} exceeds the simulator cap of {cap}")]
    WidthOverCap { width: usize, cap: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("unknown register `{0}`")]
    UnknownRegister(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown table `{0}` (expected II, V, VI or VII)")]
    UnknownTable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
