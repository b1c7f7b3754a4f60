use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("cyclotomic field order must be at least 1")]
    InvalidOrder,
    #[error("field mismatch: Q(zeta_{left}) and Q(zeta_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{into}): {from} does not divide {into}")]
    NotASubfield { from: u32, into: u32 },
    #[error("element is not real (not fixed by complex conjugation)")]
    NotReal,
    #[error("a regular polygon needs at least 3 sides, got {sides}")]
    DegeneratePolygon { sides: u32 },
    #[error("turn {num}/{den} is not a reduced fraction strictly between 0 and 1")]
    InvalidTurn { num: u32, den: u32 },
    #[error("degenerate line: both endpoints coincide")]
    DegenerateLine,
    #[error("point {index} duplicates an earlier point")]
    DuplicatePoint { index: usize },
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("n = {n} is below the threshold {min}; the claim is vacuous there")]
    BelowThreshold { n: usize, min: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate transform: new copy shares {shared} points with the union, expected {expected}")]
    Degenerate { shared: usize, expected: usize },
    #[error("no transform choice in the pool verifies n = {n}, m = {m}")]
    ExhaustedSearch { n: usize, m: usize },
    #[error("claim violated: {0}")]
    ClaimViolation(String),
    #[error("point set has no replayable provenance")]
    NoProvenance,
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}
