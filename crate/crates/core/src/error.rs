use thiserror::Error;

/// Errors raised by the bound, spectrum and rearrangement routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1 (got {0})")]
    InvalidDimension(i64),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("family `{family}` needs the moment of inertia, but the domain does not provide one")]
    MissingInertia { family: &'static str },

    #[error("band equation infeasible for n_eff = {n_eff}: target {target} is below the threshold {threshold}")]
    BandInfeasible { n_eff: u32, target: f64, threshold: f64 },

    #[error("`{what}` requires {constraint}")]
    Constraint { what: &'static str, constraint: String },

    #[error("`{family}` is only defined for dimension {expected} (got {dimension})")]
    UnsupportedDimension { family: &'static str, dimension: usize, expected: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("k = {k} is below the validity threshold {threshold} of `{family}`")]
    BelowThreshold { family: &'static str, k: u64, threshold: f64 },

    #[error("root bracketing failed for {what}: {detail}")]
    BracketFailure { what: &'static str, detail: String },

    #[error("grid {grid} exceeds the dense eigensolver budget (max {max})")]
    Budget { grid: usize, max: usize },
}

impl Error {
    /// Short machine label used in report status cells.
    pub fn label(&self) -> &'static str {
        match self {
            Error::InvalidDimension(_) => "invalid-dimension",
            Error::InvalidDomain(_) => "invalid-domain",
            Error::MissingInertia { .. } => "missing-inertia",
            Error::BandInfeasible { .. } => "band-infeasible",
            Error::Constraint { .. } => "constraint",
            Error::UnsupportedDimension { .. } => "unsupported-dimension",
            Error::InvalidParameter { .. } => "invalid-parameter",
            Error::BelowThreshold { .. } => "below-threshold",
            Error::BracketFailure { .. } => "bracket-failure",
            Error::Budget { .. } => "budget",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
