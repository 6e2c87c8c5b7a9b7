use thiserror::Error;

/// Errors raised by the algebra kernel and the replay machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not divisible: nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no value assigned to symbol `{0}`")]
    MissingAssignment(String),
    #[error("term-count guard exceeded in step `{step}`: {terms} > {limit} terms")]
    TermLimit { step: String, terms: usize, limit: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("invalid symbol name `{0}`")]
    InvalidSymbolName(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("both polynomials are constant in `{0}`")]
    BothConstant(String),
    #[error("not homogeneous linear in the unknowns: {0}")]
    NotLinear(String),
    #[error("constraint is not linear in `{0}`")]
    NotLinearInTarget(String),
    #[error("derivation `{derivation}` has no rule for `{symbol}`")]
    MissingRule { derivation: String, symbol: String },
    #[error("unknown profile: {0}")]
    UnknownProfile(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("fixture file: {0}")]
    FixtureFile(String),
    #[error("step {index} (`{name}`) failed: {msg}")]
    StepFailure { index: usize, name: String, msg: String },
    #[error("final polynomial is identically zero")]
    IdenticallyZero,
    #[error("leading coefficient vanished at the sampled point")]
    LeadingCoefficientVanished,
    #[error("no nonzero witness after {0} trials")]
    ExhaustedTrials(usize),
    #[error("configuration: {0}")]
    Config(String),
    #[error("wall-clock budget of {secs}s exceeded in `{step}`")]
    Budget { step: String, secs: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Resource-guard aborts map to a distinct exit status in the runner.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::TermLimit { .. } | Error::Budget { .. })
    }
}
