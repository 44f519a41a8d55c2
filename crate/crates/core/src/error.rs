use thiserror::Error;

/// Errors surfaced by the library. Route-disagreement variants carry both
/// values so a failure is diagnosable without rerunning.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed-mode arithmetic between rational and float scalars")]
    MixedMode,

    #[error("operands carry different precisions ({0} vs {1} bits)")]
    PrecisionMismatch(u32, u32),

    #[error("square root is not exact in rational mode")]
    RationalSqrt,

    #[error("precision exhausted at degree {degree}: pivot {pivot} is not positive; increase the float precision")]
    PrecisionLoss { degree: usize, pivot: String },

    #[error("route disagreement in {what}: {a} vs {b}")]
    RouteMismatch { what: String, a: String, b: String },

    #[error("closed-form inner product ({i},{j};{i2},{k}) disagrees with the normative value: normative {general}, verbatim {closed}")]
    ClosedFormMismatch {
        i: u8,
        j: usize,
        i2: u8,
        k: usize,
        general: String,
        closed: String,
    },

    #[error("green operator comparison disagrees: target {target}, recursion {recursion}, enumeration {enumeration}")]
    GreenNormMismatch {
        target: String,
        recursion: String,
        enumeration: String,
    },

    #[error("mesh levels differ: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("render guard: {0}")]
    RenderGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
