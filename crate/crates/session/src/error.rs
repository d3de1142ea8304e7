use thiserror::Error;

pub type SessionResult<T> = Result<T, SessionError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("a caught fish is waiting for a keep/release decision")]
    PendingDecision,
    #[error("there is no caught fish to decide on")]
    NoPending,
    #[error("daily limit of {0} kept fish reached; release this fish instead")]
    LimitReached(u32),
    #[error("the day has ended")]
    DayEnded,
    #[error("{0} not found")]
    NotFound(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("{0}")]
    Forbidden(String),
    #[error("storage failure: {0}")]
    Storage(String),
}

impl SessionError {
    pub fn code(&self) -> &'static str {
        match self {
            SessionError::PendingDecision => "PENDING_DECISION",
            SessionError::NoPending => "NO_PENDING",
            SessionError::LimitReached(_) => "LIMIT_REACHED",
            SessionError::DayEnded => "DAY_ENDED",
            SessionError::NotFound(_) => "NOT_FOUND",
            SessionError::InvalidConfig(_) => "INVALID_CONFIG",
            SessionError::InvalidRequest(_) => "INVALID_REQUEST",
            SessionError::Forbidden(_) => "FORBIDDEN",
            SessionError::Storage(_) => "STORAGE",
        }
    }

    pub fn status(&self) -> u16 {
        match self {
            SessionError::PendingDecision
            | SessionError::NoPending
            | SessionError::LimitReached(_)
            | SessionError::DayEnded => 409,
            SessionError::NotFound(_) => 404,
            SessionError::InvalidConfig(_) => 422,
            SessionError::InvalidRequest(_) => 400,
            SessionError::Forbidden(_) => 403,
            SessionError::Storage(_) => 500,
        }
    }
}
