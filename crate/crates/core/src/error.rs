use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown lattice name `{0}`")]
    UnknownLattice(String),
    #[error("non-positive scale factor {0}")]
    BadScale(i64),
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("lattice is not even")]
    NotEven,
    #[error("lattice is degenerate")]
    Degenerate,
    #[error("lattice is not 2-elementary: invariant factor {0}")]
    NotTwoElementary(String),
    #[error("definite lattices are not classified by (r,a,delta)")]
    Definite,
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("matrix is not an isometry")]
    NotIsometry,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("vector is not a root")]
    NotRoot,
    #[error("roots {0} and {1} have negative product; not a chamber")]
    NotChamber(usize, usize),
    #[error("lattice is not hyperbolic")]
    NotHyperbolic,
    #[error("root bound of {0} exhausted before the chamber closed")]
    BoundExhausted(usize),
    #[error("vector lies outside the chamber: product with root {0} is negative")]
    OutsideChamber(usize),
    #[error("vector is not in the dual lattice")]
    NotInDual,
    #[error("entry {index} must be even, got {value}")]
    OddEntry { index: usize, value: i64 },
    #[error("polygon does not close: edge sum ({0},{1})")]
    NotClosed(i64, i64),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("degenerate polytope")]
    DegeneratePolytope,
    #[error("data integrity failure for {file}: expected {expected}, got {got}")]
    Integrity { file: String, expected: String, got: String },
    #[error("merge ambiguity: {0}")]
    MergeAmbiguity(String),
    #[error("{0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
