use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("k = {k} exceeds n = {n}")]
    KExceedsN { n: u64, k: u64 },

    #[error("exponent overflow computing C({n}, {k})")]
    BinomialOverflow { n: u64, k: u64 },

    #[error("uniformity b must be at least 2, got {0}")]
    InvalidUniformity(u32),

    #[error("series mismatch: (b={lhs_b}, N={lhs_n}) vs (b={rhs_b}, N={rhs_n})")]
    SeriesMismatch {
        lhs_b: u32,
        lhs_n: usize,
        rhs_b: u32,
        rhs_n: usize,
    },

    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("{op}: constant term must be {expected}")]
    BadConstantTerm {
        op: &'static str,
        expected: &'static str,
    },

    #[error("composition sum limited to n <= {cap}, got n = {n}")]
    CompositionsTooLarge { n: usize, cap: usize },

    #[error("hyperarc universe for (n={n}, b={b}) has {bits} hyperarcs, above the cap of {cap}")]
    OracleCapExceeded {
        n: usize,
        b: u32,
        bits: u64,
        cap: u32,
    },

    #[error("node count {0} outside the supported range 0..=8")]
    TooManyNodes(usize),

    #[error("invalid hyperarc: {0}")]
    InvalidHyperarc(String),

    #[error("operation requires a nonempty dihypergraph")]
    EmptyDihypergraph,

    #[error("{family} cannot be computed with method {method}")]
    UnsupportedMethod { family: String, method: String },

    #[error("unknown {kind} '{value}'")]
    UnknownName { kind: &'static str, value: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
