use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConeError {
    #[error("ambient dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("cone description is inconsistent: {0}")]
    InconsistentDescription(String),
    #[error("cone has a lineality direction (not salient)")]
    NotSalient,
    #[error("rays do not span the ambient space (not full-dimensional)")]
    NotFullDimensional,
    #[error("not a good invariant cone: {0}")]
    BadCone(String),
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("too many eigenvalues for exhaustive subset verification ({0} > {1})")]
    TooManyEigenvalues(usize, usize),
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("subspace does not meet the interior of the cone")]
    SubspaceMissesCone,
    #[error(transparent)]
    Kernel(#[from] conespec_kernel::KernelError),
}
