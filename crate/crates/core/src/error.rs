use thiserror::Error;

/// Errors from exact arithmetic and the geometric/dynamical operations
/// built on top of it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible quadratic fields: Q(sqrt {0}) vs Q(sqrt {1})")]
    IncompatibleFields(u64, u64),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("squarefree decomposition of zero is undefined")]
    SquarefreeOfZero,

    #[error("input exceeds the desk-scale bound for {0}")]
    DeskScaleExceeded(&'static str),

    #[error("fundamental unit search bound exceeded for D = {0}")]
    UnitSearchExceeded(u64),

    #[error("D must be a squarefree integer > 1, got {0}")]
    BadDiscriminant(u64),

    #[error("point ({0}, {1}) is not on the unit circle")]
    OffCircle(String, String),

    #[error("point ({0}, {1}) is outside the closed quarter circle")]
    OutsideQuarter(String, String),

    #[error("cannot project: third coordinate is zero")]
    ProjectThirdZero,

    #[error("cannot project a non-null vector onto the circle")]
    ProjectNonNull,

    #[error("reflection axis must have nonzero Q-norm")]
    NullReflectionAxis,

    #[error("empty digit word")]
    EmptyWord,

    #[error("digit must be 1, 2 or 3, got {0}")]
    BadDigit(u8),

    #[error("word {0} is excluded: all-1 and all-3 words fix a rational point")]
    ExcludedWord(String),

    #[error("word {0} is degenerate: discriminant {1} is a perfect square")]
    DegenerateWord(String, String),

    #[error("eigenvector solve failed for word {0}")]
    EigenSolveFailed(String),

    #[error("expected a rational point")]
    ExpectedRational,

    #[error("expected an irrational quadratic point")]
    ExpectedIrrational,

    #[error("point is a fixed point of T and has a unique expansion")]
    FixedPoint,

    #[error("period not found within {0} iterations")]
    MaxIterExceeded(usize),

    #[error("triple ({0}, {1}, {2}) is not a primitive Pythagorean triple")]
    NotPrimitiveTriple(String, String, String),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
