use thiserror::Error;

/// Every failure the engine can report.
///
/// Variants are grouped by the layer that raises them; higher layers
/// propagate lower-layer errors unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // interval arithmetic
    #[error("division by an interval containing zero")]
    DivByZeroInterval,
    #[error("square root of an interval with a negative lower endpoint")]
    NegativeSqrt,
    #[error("cannot parse decimal literal {0:?}")]
    BadDecimal(String),

    // regular polygons
    #[error("no exact seed edge for a regular {0}-gon (supported: 3, 4, 6)")]
    UnsupportedSeed(u32),
    #[error("chord length must lie strictly between 0 and 2")]
    InvalidChord,
    #[error("circumscribed edge length must be positive")]
    InvalidEdge,
    #[error("adaptive loop gave up after {0} rounds")]
    IterationCapExceeded(usize),

    // circuits and geometry
    #[error("tangent lines at antipodal points do not meet")]
    AntipodalTangents,
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("point is not certified to lie on the unit circle")]
    OffCircle,
    #[error("bisection stalled before reaching the requested width; raise the precision")]
    BisectionStall,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("angle configuration outside the admissible domain: {0}")]
    DomainViolation(String),
    #[error("closed-form and coordinate angle measures disagree")]
    GeometryMismatch,

    // rational lengths
    #[error("step count {k} and closure count {n} are not coprime")]
    NonCoprime { k: u32, n: u32 },
    #[error("chord spanning {k} of {n} steps is not shorter than a diameter")]
    ChordTooLong { k: u32, n: u32 },
    #[error("chord-stepping path failed to close on its start point")]
    ClosureFailure,
    #[error("the two chords are not certifiably ordered")]
    HypothesisUnordered,

    // trigonometry
    #[error("circle fraction must lie in [0, 1)")]
    FractionOutOfRange,
    #[error("angle argument outside the supported range")]
    ThetaOutOfRange,

    #[error("comparison still overlapping at the {0}-bit precision cap")]
    InconclusivePrecision(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
