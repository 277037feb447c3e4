use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("truncation exhausted: no coefficient of the result is determined")]
    TruncationExhausted,
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("incompatible truncation orientation: {0}")]
    IncompatibleTruncation(String),
    #[error("exact series has no finite {0}; promote it to a truncated window first")]
    Unbounded(&'static str),
    #[error("non-invertible leading coefficient")]
    NonInvertible,
    #[error("series has a constant term; log(1+u) needs u = O(z) or O(1/z)")]
    ConstantTerm,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not simple at resolution N={0}")]
    NotSimple(usize),
    #[error("near-singular; use boundary_values (distance {distance:.3e} <= mesh width {mesh:.3e})")]
    NearSingular { distance: f64, mesh: f64 },
    #[error("curve is not the unit circle; use besov_seminorm")]
    NotCircle,
    #[error("identity violated: residual {0:.3e}")]
    IdentityViolated(f64),
    #[error("data is not holomorphic on the requested side: exterior mass {0:.3e}")]
    NonHolomorphic(f64),
    #[error("caps {0} and {1} overlap: {2}")]
    Overlap(usize, usize, String),
    #[error("point {0} lies outside the working domain")]
    OutsideDomain(String),
    #[error("under-resolved column (i={i}, j={j}, k={k}): tail mass {tail:.3e}")]
    UnderResolved { i: usize, j: usize, k: i64, tail: f64 },
    #[error("budget: K={k} exceeds N/64 for N={n}")]
    Budget { k: usize, n: usize },
}
