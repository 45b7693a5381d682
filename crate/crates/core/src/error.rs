use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error(
        "waxman calibration infeasible: q = {q:.6} exceeds 1 (max achievable mean degree for n={n}, s={s} is {max_z:.6})"
    )]
    Infeasible { n: usize, s: f64, q: f64, max_z: f64 },

    #[error("config field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("malformed input at {location}: {reason}")]
    Parse { location: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
