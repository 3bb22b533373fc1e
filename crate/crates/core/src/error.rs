use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Assertion,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("form is not positive definite ({n_plus}+, {n_minus}-, {n_zero}0)")]
    NotPositiveDefinite {
        n_plus: usize,
        n_minus: usize,
        n_zero: usize,
    },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("basis columns are linearly dependent")]
    DependentColumns,

    #[error("frame sizes differ: {0} vs {1}")]
    FrameMismatch(usize, usize),

    #[error("form is not homogeneous")]
    Inhomogeneous,

    #[error("{0} is not the square of a rational number")]
    NotASquare(String),

    #[error("Jacobi identity fails for ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),

    #[error("leaf span is not closed under the bracket: [e{0}, e{1}] leaves it")]
    NonIntegrable(usize, usize),

    #[error("transverse metric is not invariant along leaf generator {generator}: {detail}")]
    NotRiemannian { generator: usize, detail: String },

    #[error("integration functional does not vanish on exact top forms (non-unimodular model)")]
    NotUnimodular,

    #[error("model axiom `{axiom}` fails: {detail}")]
    ModelAxiom { axiom: &'static str, detail: String },

    #[error("twisting form is not closed")]
    NotClosed,

    #[error("element is not basic")]
    NotBasic,

    #[error("mean curvature check failed: {0}")]
    MeanCurvature(String),

    #[error("adjoint of d and star formula for delta_b disagree in degree {0}")]
    InconsistentCodifferential(usize),

    #[error("codimension {0} is odd; the signature involution is undefined")]
    OddCodimension(usize),

    #[error("metric homotopy stage {stage} fails at t = {time}: {detail}")]
    Homotopy {
        stage: u8,
        time: String,
        detail: String,
    },

    #[error("map axiom `{axiom}` fails: {detail}")]
    MapAxiom { axiom: &'static str, detail: String },

    #[error("unknown model `{name}`; available: {available}")]
    UnknownModel { name: String, available: String },

    #[error("consistency check failed: {0}")]
    Assertion(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::UnknownModel { .. } => ErrorKind::Parse,
            Error::InconsistentCodifferential(_) | Error::Assertion(_) => ErrorKind::Assertion,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn axiom(axiom: &'static str, detail: impl Into<String>) -> Self {
        Error::ModelAxiom {
            axiom,
            detail: detail.into(),
        }
    }
}
