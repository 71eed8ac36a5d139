use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge `{edge}` has nonpositive length {length}")]
    NonpositiveLength { edge: String, length: Rational },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("offset {offset} is outside edge `{edge}` of length {length}")]
    OffsetOutOfRange {
        edge: String,
        offset: Rational,
        length: Rational,
    },
    #[error("point is a vertex, not an interior edge point")]
    PointIsVertex,
    #[error("function is discontinuous at vertex `{0}`")]
    DiscontinuousFunction(String),
    #[error("data has {found} entries but the graph has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("measure has total mass {0}, expected 0")]
    NonzeroMass(Rational),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("divisor has degree -2; no admissible measure exists")]
    DegreeMinusTwo,
    #[error("admissible measure is not positive although d_v >= v(v) - 2 holds everywhere")]
    PositivityViolated,
    #[error("g(D, y) + g(y, y) is not constant: {first} at `{first_at}`, {second} at `{second_at}`")]
    NotAdmissible {
        first_at: String,
        first: Rational,
        second_at: String,
        second: Rational,
    },
    #[error("circle index {index} out of range for a wedge of {count} circles")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("genus must be at least {required}, got {found}")]
    GenusTooSmall { required: u32, found: i64 },
    #[error("fiber edge `{edge}` has length {length}, expected 1")]
    NonUnitLength { edge: String, length: Rational },
    #[error("canonical fiber divisor has degree {found}, expected {expected}")]
    DegreeMismatch { expected: Rational, found: Rational },
    #[error("vertical admissible intersection differs at `{vertex}`: {left} vs {right}")]
    VerticalIntersectionMismatch {
        vertex: String,
        left: Rational,
        right: Rational,
    },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("delta must be nonnegative, got {0}")]
    NegativeDelta(Rational),
    #[error("residue field cardinality must be at least 2, got {0}")]
    BadResidueCardinality(u64),
    #[error("{0} must be nonnegative")]
    NegativeInput(&'static str),
}
