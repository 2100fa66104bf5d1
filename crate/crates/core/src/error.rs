use thiserror::Error;

/// Errors raised by lattice constructions and numerical checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lattice dimension must be at least 2, got {0}")]
    InvalidDim(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("operator is not normal: ‖AA†−A†A‖ = {defect:e}")]
    NotNormal { defect: f64 },

    #[error("operator is not hermitian: ‖A−A†‖ = {defect:e}")]
    NotHermitian { defect: f64 },

    #[error("vectors are not orthonormal: max Gram deviation {defect:e}")]
    NotOrthonormal { defect: f64 },

    #[error("singular point: {0}")]
    Singular(String),

    #[error("eigenvalue labelling failed: {0}")]
    LabelMatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_same_dim(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimMismatch { left, right })
    }
}
