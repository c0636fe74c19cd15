use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,

    #[error("mixed-field arithmetic: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("coefficient {0} is not representable in the field")]
    NotRepresentable(String),

    #[error("polynomial `{0}` is not homogeneous")]
    NotHomogeneous(String),

    #[error("colon by the zero ideal is undefined")]
    ZeroColon,

    #[error("not a complete intersection: {gens} generators but codimension {codim}")]
    NotCompleteIntersection { gens: usize, codim: i64 },

    #[error("ideal is not m-primary (no power of m up to degree {bound} is contained)")]
    NotMPrimary { bound: u32 },

    #[error("candidate reduction is not contained in the ideal (generator `{0}`)")]
    ReductionNotContained(String),

    #[error("reduction not verified within reduction-number cap {cap}")]
    ReductionNotVerified { cap: usize },

    #[error("no verified minimal reduction after {} attempts (seeds {seeds:?})", seeds.len())]
    RetryCapExceeded { seeds: Vec<u64> },

    #[error("colon stabilization failed: J^(r+1):I^r != J^(r+2):I^(r+1) for r = {r}")]
    StabilizationFailure {
        r: usize,
        lower: Vec<String>,
        upper: Vec<String>,
    },

    #[error("cores disagree across sampled reductions (samples {first} and {second})")]
    SampleDisagreement { first: usize, second: usize },

    #[error("core is not contained in sampled reduction {0}")]
    CoreNotInReduction(usize),

    #[error("family member {0} does not contain the ideal")]
    FamilyMemberNotContaining(usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("complete intersection construction failed after {attempts} attempts")]
    CiConstructionFailed { attempts: usize },
}

impl Error {
    /// True for errors caused by a configured computational limit rather than
    /// bad input or a failed mathematical check.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::ReductionNotVerified { .. }
                | Error::RetryCapExceeded { .. }
                | Error::CiConstructionFailed { .. }
        )
    }

    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidRing(_)
                | Error::NotRepresentable(_)
                | Error::NotHomogeneous(_)
                | Error::InvalidParameters(_)
                | Error::RingMismatch
                | Error::FieldMismatch(..)
        )
    }
}
