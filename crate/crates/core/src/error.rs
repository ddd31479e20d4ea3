use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("weight entries must be non-increasing, got {0:?}")]
    NotNonIncreasing(Vec<i64>),
    #[error("weight must have at least one entry")]
    EmptyWeight,
    #[error("partition parts must be non-negative, got {0:?}")]
    NegativePart(Vec<i64>),
    #[error("weight has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("Gr({sub_rank},{ambient_dim}) requires 1 <= m <= N-1")]
    InvalidGrassmannian { sub_rank: usize, ambient_dim: usize },
    #[error("exterior power index {i} out of range 0..={max}")]
    PowerOutOfRange { i: usize, max: usize },
    #[error("label {0:?} is not a rank-2 weight")]
    NotRankTwo(Vec<i64>),
    #[error("negative multiplicity {mult} for {label} while peeling a decomposition")]
    NegativeMultiplicity { label: String, mult: i64 },
    #[error("operation needs a form of even degree, got degree {0}")]
    OddDegree(usize),
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("no orbit has invariants (dim {dim}, 2-rank {two_rank}, rank {q_rank})")]
    NoOrbitMatch { dim: usize, two_rank: usize, q_rank: usize },
    #[error("the line is not contained in the hypersurface")]
    LineNotOnHypersurface,
    #[error("restricted partials span only {0} dimensions: the hypersurface is singular along the line")]
    SingularAlongLine(usize),
    #[error("the two points do not span a line")]
    DegenerateLine,
    #[error("expected a form in {expected_vars} variables of degree {expected_degree}, got {vars} variables of degree {degree}")]
    FormShape { expected_vars: usize, expected_degree: usize, vars: usize, degree: usize },
    #[error("{0} is not a prime in 5..2^31")]
    NotPrime(u64),
    #[error("skew matrices must have even size, got {0}")]
    OddSize(usize),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("stratum index k={k} out of range 1..={max}")]
    StratumOutOfRange { k: usize, max: usize },
    #[error("pencil is degenerate: its two forms are linearly dependent")]
    DegeneratePencil,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
