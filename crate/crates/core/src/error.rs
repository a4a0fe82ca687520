use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("composition requires vanishing constant term")]
    CompositionConstantTerm,
    #[error("division by series with zero constant term")]
    DivisionByNonUnit,
    #[error("{0} requires vanishing constant term")]
    NonZeroConstantTerm(&'static str),
    #[error("series of order {have} is too short, order {need} required")]
    InsufficientOrder { have: usize, need: usize },
    #[error("coefficient list has length {len}, expected order + 1 = {expected}")]
    LengthMismatch { len: usize, expected: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal {0:?}")]
    Rational(String),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid rectangle {0:?}, expected a,b,c,d with a<b and c<d")]
    Rectangle(String),
    #[error("{0}")]
    Shape(String),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} = {value} lies outside [{lo}, {hi}]")]
    LeadOutOfRange {
        name: &'static str,
        value: String,
        lo: String,
        hi: String,
    },
    #[error("{name} must be real, got imaginary part {im}")]
    LeadNotReal { name: &'static str, im: String },
    #[error("|{name}| exceeds 1")]
    ModulusTooLarge { name: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctionalError {
    #[error("H_{q}({n}) needs coefficients through a_{need}, only {have} supplied")]
    InsufficientCoefficients {
        q: usize,
        n: usize,
        need: usize,
        have: usize,
    },
    #[error("q and n must be at least 1")]
    BadIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernsteinError {
    #[error("target bidegree ({target_m},{target_n}) is below the polynomial degree ({m},{n})")]
    DegreeTooLow {
        m: usize,
        n: usize,
        target_m: usize,
        target_n: usize,
    },
    #[error("monomial p^{i} x^{j} has total degree below 3")]
    LowDegreeMonomial { i: usize, j: usize },
    #[error("corner certificate inapplicable: {0}")]
    CornerInapplicable(String),
    #[error("empty rectangle")]
    EmptyRectangle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("p1 = {0} lies outside [0, 2]")]
    LeadOutOfRange(String),
    #[error("inconsistent reference data: {0}")]
    Inconsistent(String),
}
