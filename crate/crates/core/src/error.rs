use thiserror::Error;

/// Failures of the index computations.
///
/// Numerical diagnostics are carried as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("matrix is not symplectic (residual {residual:.3e})")]
    NotSymplectic { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polar decomposition failed: S·Sᵀ has eigenvalue {eigenvalue:.3e}")]
    PolarFailure { eigenvalue: f64 },

    #[error("eigenvalue within {distance:.3e} rad of the branch cut at −1")]
    BranchCut { distance: f64 },

    #[error("basis does not span an isotropic subspace (residual {residual:.3e})")]
    NotIsotropic { residual: f64 },

    #[error("basis has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("planes are not transversal (intersection dimension {dim})")]
    NotTransversal { dim: usize },

    #[error("{context}: value {value} is not within tolerance of an integer")]
    IntegralityViolation { value: f64, context: &'static str },

    #[error("no auxiliary Lagrangian plane transversal to both arguments was found")]
    AuxiliarySearchFailed,

    #[error("ALM index depends on the auxiliary plane ({first} vs {second})")]
    InconsistentAuxiliary { first: i64, second: i64 },

    #[error("lift angle {angle:.3e} does not match det w (mismatch {mismatch:.3e})")]
    InvalidLift { angle: f64, mismatch: f64 },

    #[error("path under-resolved near t = {t}: phase step exceeds π/2")]
    UnderResolved { t: f64 },

    #[error("path is not a loop (endpoint residual {residual:.3e})")]
    NotALoop { residual: f64 },

    #[error("unknown path generator `{0}`")]
    UnknownGenerator(String),

    #[error("degenerate endpoint: {0}")]
    DegenerateEndpoint(&'static str),

    #[error("symplectic matrix is not free (upper-right block is singular)")]
    NotFree,

    #[error("Cayley transform is not symmetric (residual {residual:.3e})")]
    Asymmetric { residual: f64 },

    #[error("could not connect the endpoint to the normal form inside its component")]
    PathExtensionFailed,

    #[error("orbit does not close (residual {residual:.3e})")]
    OrbitNotClosed { residual: f64 },

    #[error("variational flow drifted off Sp(n) (residual {drift:.3e})")]
    SymplecticDriftExceeded { drift: f64 },

    #[error("ν = {twice}/2 is a half-integer (dim Ker(S − I) is odd)")]
    HalfIntegerIndex { twice: i64 },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl IndexError {
    /// A stable snake_case identifier of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            IndexError::NotSymplectic { .. } => "not_symplectic",
            IndexError::DimensionMismatch { .. } => "dimension_mismatch",
            IndexError::PolarFailure { .. } => "polar_failure",
            IndexError::BranchCut { .. } => "branch_cut",
            IndexError::NotIsotropic { .. } => "not_isotropic",
            IndexError::RankDeficient { .. } => "rank_deficient",
            IndexError::NotTransversal { .. } => "not_transversal",
            IndexError::IntegralityViolation { .. } => "integrality_violation",
            IndexError::AuxiliarySearchFailed => "auxiliary_search_failed",
            IndexError::InconsistentAuxiliary { .. } => "inconsistent_auxiliary",
            IndexError::InvalidLift { .. } => "invalid_lift",
            IndexError::UnderResolved { .. } => "under_resolved",
            IndexError::NotALoop { .. } => "not_a_loop",
            IndexError::UnknownGenerator(_) => "unknown_generator",
            IndexError::DegenerateEndpoint(_) => "degenerate_endpoint",
            IndexError::NotFree => "not_free",
            IndexError::Asymmetric { .. } => "asymmetric",
            IndexError::PathExtensionFailed => "path_extension_failed",
            IndexError::OrbitNotClosed { .. } => "orbit_not_closed",
            IndexError::SymplecticDriftExceeded { .. } => "symplectic_drift_exceeded",
            IndexError::HalfIntegerIndex { .. } => "half_integer_index",
            IndexError::InvalidPath(_) => "invalid_path",
            IndexError::InvalidInput(_) => "invalid_input",
        }
    }

    /// True for failures that indicate inconsistent numerics rather than bad
    /// input or unmet preconditions.
    pub fn is_integrity_failure(&self) -> bool {
        matches!(
            self,
            IndexError::IntegralityViolation { .. }
                | IndexError::InconsistentAuxiliary { .. }
                | IndexError::Asymmetric { .. }
                | IndexError::PolarFailure { .. }
        )
    }
}

pub type Result<T, E = IndexError> = std::result::Result<T, E>;
