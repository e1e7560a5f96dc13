use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty cycle")]
    EmptyCycle,

    #[error("empty pattern")]
    EmptyPattern,

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("{0} is not hyperbolic")]
    NotHyperbolic(String),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("axes share the endpoint {0}")]
    CommonEndpoint(String),

    #[error("tree axes share no edge")]
    DisjointAxes,

    #[error("Laurent polynomial evaluated at 0")]
    EvalAtZero,

    #[error("pole at q = {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("numerator vanishes identically")]
    NumeratorZero,

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NoConvergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("odd pattern sum {0} for a linking number")]
    OddSum(String),

    #[error("singular matrix")]
    Singular,

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short machine-readable tag for error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyCycle => "empty_cycle",
            Error::EmptyPattern => "empty_pattern",
            Error::Parse { .. } => "parse",
            Error::NotHyperbolic(_) => "not_hyperbolic",
            Error::NotCoprime(..) => "not_coprime",
            Error::CommonEndpoint(_) => "common_endpoint",
            Error::DisjointAxes => "disjoint_axes",
            Error::EvalAtZero => "eval_at_zero",
            Error::Pole { .. } => "pole",
            Error::NumeratorZero => "numerator_zero",
            Error::NoConvergence { .. } => "no_convergence",
            Error::ConventionMismatch(_) => "convention_mismatch",
            Error::Parity(_) => "parity",
            Error::OddSum(_) => "odd_sum",
            Error::Singular => "singular",
            Error::Unknown { .. } => "unknown",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
