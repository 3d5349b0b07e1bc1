use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("pole of the q-gamma function at x = {0}")]
    Pole(f64),
    #[error("vanishing denominator factor in basic hypergeometric series at term {0}")]
    DenominatorPole(usize),
    #[error("wavelet is not admissible: {0}")]
    NotAdmissible(String),
    #[error("test function failed certification: {0}")]
    CertificationFailure(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl QError {
    /// Stable short tag used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            QError::InvalidParameter(_) => "invalid_parameter",
            QError::NonConvergence(_) => "non_convergence",
            QError::Pole(_) => "pole",
            QError::DenominatorPole(_) => "denominator_pole",
            QError::NotAdmissible(_) => "not_admissible",
            QError::CertificationFailure(_) => "certification_failure",
            QError::GridMismatch(_) => "grid_mismatch",
            QError::Parse(_) => "parse",
            QError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for QError {
    fn from(e: std::io::Error) -> Self {
        QError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, QError>;

/// Non-fatal notice attached to results computed outside their nominal domain.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainWarning {
    pub operation: &'static str,
    pub detail: String,
}

impl std::fmt::Display for DomainWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.operation, self.detail)
    }
}
