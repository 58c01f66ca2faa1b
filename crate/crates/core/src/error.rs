use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("backend does not support {0}")]
    UnsupportedBackend(String),
    #[error("search budget of {budget} exceeded while {context}")]
    SearchBudgetExceeded { budget: usize, context: String },
    #[error("dimension {dim} exceeds the truncation bound {bound}")]
    DimensionBound { dim: usize, bound: usize },
    #[error("not injective: generator {generator} has no filler for attempt #{attempt}")]
    NotInjective { generator: usize, attempt: usize },
    #[error("witnesses are built over different generator sets")]
    IncompatibleJ,
    #[error("the chain did not stabilise")]
    NotStabilized,
    #[error("stage bound {bound} reached before the chain stabilised")]
    StageBoundReached { bound: usize },
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn budget(budget: usize, context: impl Into<String>) -> Self {
        Error::SearchBudgetExceeded {
            budget,
            context: context.into(),
        }
    }
}
