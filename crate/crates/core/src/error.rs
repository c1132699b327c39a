use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid has {0} samples, at least 16 required")]
    TooFewSamples(usize),
    #[error("parameter grid is not strictly increasing at index {0}")]
    NonMonotoneGrid(usize),
    #[error("sample arrays have mismatched lengths ({expected} vs {found})")]
    GridMismatch { expected: usize, found: usize },
    #[error("alpha must be positive, found {value} at index {index}")]
    NonPositiveAlpha { index: usize, value: f64 },
    #[error("pole closure violated: {0}")]
    NonClosedPole(String),
    #[error("non-finite sample in `{0}`")]
    NonFinite(&'static str),
    #[error("scaling parameter must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("data is not Bartnik data: {}", .0.join("; "))]
    NotBartnikData(Vec<String>),
    #[error("metric is not embeddable as a surface of revolution at index {index} (alpha^2 - beta'^2 = {deficit})")]
    NotEmbeddableAsRevolution { index: usize, deficit: f64 },
    #[error("pole expansion failed: {0}")]
    PoleSingularity(String),
    #[error("profile curve is degenerate at index {0}")]
    DegenerateProfile(usize),
    #[error("sphere r = {r} lies inside the horizon of mass m = {m}")]
    InsideHorizon { m: f64, r: f64 },
    #[error("lambda = {lambda} outside (0, {max}]")]
    LambdaOutOfRange { lambda: f64, max: f64 },
    #[error("empty bracket: lower {lower} exceeds upper {upper}")]
    EmptyBracket { lower: f64, upper: f64 },
    #[error("no positive epsilon certifies a fill-in")]
    CertificateFailed,
    #[error("data is not round with constant mean curvature (K residual {round_residual:e}, H residual {h_residual:e})")]
    NotRound {
        round_residual: f64,
        h_residual: f64,
    },
    #[error("mass functional `{0}` has no sign change below lambda = 2^64")]
    NoSignChange(String),
    #[error("mass functional `{0}` is not decreasing in lambda")]
    NotDecreasing(String),
    #[error(
        "threshold cross-check failed for `{name}`: bisection {bisected} vs expected {expected}"
    )]
    ThresholdMismatch {
        name: String,
        bisected: f64,
        expected: f64,
    },
    #[error("inner mass is only available in closed form for round constant-H data")]
    InnerMassUnavailable,
    #[error("leaf radius must be positive, found {value} at index {index}")]
    DegenerateLeaf { index: usize, value: f64 },
    #[error("conformal factor must be positive, found {0}")]
    NonPositiveConformalFactor(f64),
    #[error("warping factor must be positive, found {value} at (t={t_index}, x={x_index})")]
    FactorNonPositive {
        t_index: usize,
        x_index: usize,
        value: f64,
    },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("invalid input document: {0}")]
    InvalidDocument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
