use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tolerance values must be positive (abs_eps={abs_eps}, rel_eps={rel_eps})")]
    InvalidTolerance { abs_eps: f64, rel_eps: f64 },

    #[error("cannot parse scalar literal `{0}`")]
    ParseScalar(String),

    #[error("index {index:?} lies outside the basis index set")]
    MalformedVector { index: Vec<i64> },

    #[error("tensor index ({k}, {l}) lies outside the basis index set")]
    MalformedState { k: i64, l: i64 },

    #[error("coefficient {coefficient} does not vanish at boundary index {index:?}")]
    BoundaryLeak { index: Vec<i64>, coefficient: String },

    #[error("N({a1}, {a2}) is not unitarizable")]
    NotUnitarizable { a1: String, a2: String },

    #[error("index {0} is outside the support of the module")]
    IndexOutOfSupport(i64),

    #[error("target support does not meet the support of the tensor product")]
    SupportMismatch,

    #[error("unsupported tensor product: {0}")]
    InvalidTensor(String),

    #[error("FE eigenvalue {xi} lies outside the principal and complementary ranges")]
    OutOfRange { xi: String },

    #[error("parameters lie outside the smooth-vector window: {0}")]
    OutOfWindow(String),

    #[error("series diverges on the unit circle (Re(c - a - b) = {excess})")]
    DivergentAtBoundary { excess: f64 },

    #[error("|z| = {0} lies outside the closed unit disc")]
    OutsideDisc(f64),

    #[error("gamma = {0} is a pole of the hypergeometric series")]
    GammaPole(String),

    #[error("parameters are not of the form alpha = gamma + n")]
    NotInConfiguration,

    #[error("series did not converge within {terms} terms")]
    SeriesCap { terms: usize },
}
