//! Error type shared by all core operations.

use core::fmt;

/// Errors raised by construction, validation and numerical guards.
///
/// Variants carry the offending quantities so callers can report the
/// actual violation instead of a bare failure.
#[derive(Clone, Debug, PartialEq)]
pub enum CoreError {
    /// Matrix handed to a Hermitian routine deviates from its adjoint.
    NotHermitian { max_asymmetry: f64 },
    /// Operand dimensions do not agree.
    DimensionMismatch { expected: usize, got: usize },
    /// Vector expected to be normalized is not.
    NotUnit { norm: f64 },
    /// Operator expected to lie in `[0, I]` has spectrum outside the
    /// tolerance band.
    EffectRange { min_eig: f64, max_eig: f64 },
    /// Eigenvalue iteration failed to converge.
    NoConvergence { iterations: usize },
    /// Elementary family needs two distinct indices.
    IndicesEqual { index: usize },
    /// Off-diagonal weight must satisfy `|w| <= 1`.
    WeightTooLarge { modulus: f64 },
    /// Two-step family needs `0 < |w| <= 1/sqrt(2)`.
    WeightOutsideTwoStepDisc { modulus: f64 },
    /// Mixture weight must lie in `[0, 1]`.
    EpsilonOutOfRange { epsilon: f64 },
    /// Generating vectors must be nonempty and of equal length.
    BadGeneratingVectors,
    /// Leading phase-matrix block fails positive semidefiniteness.
    GramViolation { violation: f64 },
    /// Effect is numerically `O` or `I`, so the probe is undefined.
    DegenerateEffect { norm: f64, complement_norm: f64 },
    /// Grid must oversample the truncated spectrum (`M >= 2 D`).
    GridTooCoarse { grid: usize, dim: usize },
    /// Truncation tail exceeds the accuracy budget at this dimension.
    TailRequiresDim { required: usize, got: usize },
    /// Moment order must stay below the truncation dimension.
    MomentOrder { order: usize, dim: usize },
    /// Commutant estimate needs `D_big` comfortably above `D_eval`.
    TruncationGuard { d_big: usize, d_eval: usize },
    /// Commutant estimate needs a minimum battery of set pairs.
    TooFewTestSets { got: usize },
    /// Geometric amplitude parameter must satisfy `|r| < 1`.
    RadiusOutOfRange { radius: f64 },
    /// Coherent amplitude must be nonnegative.
    NegativeAmplitude { amplitude: f64 },
    /// Index list for a probe must be nonempty.
    EmptyIndexSet,
    /// Basis index exceeds the truncation dimension.
    IndexOutOfRange { index: usize, dim: usize },
    /// State has weight outside the commuting index set.
    OutsideCommutant { index: usize, mass: f64 },
    /// Operation needs an arc set of positive measure.
    ZeroMeasure,
    /// Density is not normalized to unit circular mean.
    NotNormalized { mean: f64 },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NotHermitian { max_asymmetry } => {
                write!(f, "matrix is not Hermitian: max |a[n][m] - conj(a[m][n])| = {max_asymmetry:.3e}")
            }
            CoreError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            CoreError::NotUnit { norm } => {
                write!(f, "state is not normalized: norm = {norm:.17}")
            }
            CoreError::EffectRange { min_eig, max_eig } => {
                write!(f, "operator spectrum [{min_eig:.3e}, {max_eig:.6}] leaves [0, 1] beyond tolerance")
            }
            CoreError::NoConvergence { iterations } => {
                write!(f, "eigenvalue iteration did not converge within {iterations} sweeps")
            }
            CoreError::IndicesEqual { index } => {
                write!(f, "elementary family needs distinct indices, got s = t = {index}")
            }
            CoreError::WeightTooLarge { modulus } => {
                write!(f, "off-diagonal weight must satisfy |w| <= 1, got |w| = {modulus:.17}")
            }
            CoreError::WeightOutsideTwoStepDisc { modulus } => {
                write!(f, "two-step weight must satisfy 0 < |w| <= 1/sqrt(2), got |w| = {modulus:.17}")
            }
            CoreError::EpsilonOutOfRange { epsilon } => {
                write!(f, "mixture weight must lie in [0, 1], got {epsilon:.17}")
            }
            CoreError::BadGeneratingVectors => {
                write!(f, "generating vectors must be nonempty and of equal length")
            }
            CoreError::GramViolation { violation } => {
                write!(f, "phase matrix fails positive semidefiniteness by {violation:.3e}")
            }
            CoreError::DegenerateEffect { norm, complement_norm } => {
                write!(f, "effect is trivial (|E| = {norm:.3e}, |I - E| = {complement_norm:.3e}); probe undefined")
            }
            CoreError::GridTooCoarse { grid, dim } => {
                write!(f, "grid of {grid} points undersamples dimension {dim}; need at least {}", 2 * dim)
            }
            CoreError::TailRequiresDim { required, got } => {
                write!(f, "truncation tail too heavy at dimension {got}; need at least {required}")
            }
            CoreError::MomentOrder { order, dim } => {
                write!(f, "moment order {order} is out of range for dimension {dim}")
            }
            CoreError::TruncationGuard { d_big, d_eval } => {
                write!(f, "evaluation block {d_eval} too close to working dimension {d_big}; need d_big >= 2 d_eval + 8")
            }
            CoreError::TooFewTestSets { got } => {
                write!(f, "commutant estimate needs at least 8 set pairs, got {got}")
            }
            CoreError::RadiusOutOfRange { radius } => {
                write!(f, "geometric amplitude must satisfy |r| < 1, got {radius:.17}")
            }
            CoreError::NegativeAmplitude { amplitude } => {
                write!(f, "coherent amplitude must be nonnegative, got {amplitude:.17}")
            }
            CoreError::EmptyIndexSet => write!(f, "index set must be nonempty"),
            CoreError::IndexOutOfRange { index, dim } => {
                write!(f, "basis index {index} out of range for dimension {dim}")
            }
            CoreError::OutsideCommutant { index, mass } => {
                write!(f, "state has weight {mass:.3e} on index {index} outside the commuting set")
            }
            CoreError::ZeroMeasure => write!(f, "arc set has zero measure"),
            CoreError::NotNormalized { mean } => {
                write!(f, "density mean is {mean:.17}, expected 1")
            }
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for CoreError {}

pub type Result<T> = core::result::Result<T, CoreError>;
