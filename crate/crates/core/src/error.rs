use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalars from different fields: Q(sqrt({left})) vs Q(sqrt({right}))")]
    DiscriminantMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {n} strands")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("strand count must be positive")]
    ZeroStrands,

    #[error("not a perfect matching: {0}")]
    InvalidMatching(String),

    #[error("parse error at token {position} (`{token}`): {reason}")]
    Parse { position: usize, token: String, reason: String },

    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),

    #[error("family {family} needs at least {min} strands, got {n}")]
    TooFewStrands { family: String, min: usize, n: usize },

    #[error("element is not invertible")]
    NonInvertible,

    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("matrix size mismatch: {0}")]
    SizeMismatch(String),

    #[error("local dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("loop value {params} in parameters differs from representation loop value {rep}")]
    LoopValueMismatch { params: String, rep: String },

    #[error("{0}")]
    Unsupported(String),
}
