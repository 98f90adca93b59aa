//! Scalar abstraction shared by every numerical routine in the crate.
//!
//! All index computations are written against [`Real`], which is satisfied by
//! `f32` and `f64`. The index values themselves are integers; the scalar type
//! only controls the precision of the floating-point evidence they are rounded
//! from, so each scalar carries its own default tolerance profile.

use nalgebra::{Complex, RealField};
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar usable by the index machinery.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Tolerances appropriate for the precision of this type.
    fn default_tolerances() -> Tolerances<Self>;

    /// Tighter tolerances, used for validating externally supplied data.
    fn strict_tolerances() -> Tolerances<Self>;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Lossy conversion used for diagnostics and rounding.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_int(k: i64) -> Self {
        Self::lit(k as f64)
    }
}

/// Numerical thresholds used to classify floating-point evidence.
///
/// Every threshold is relative to an O(1) scale; callers rescale where the
/// quantity being tested has a natural magnitude (matrix norms, singular values).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Residual allowed in `SᵀJS = J`, `U*U = I` and isotropy checks.
    pub sympl: T,
    /// Relative half-width of the band of eigenvalues counted as zero.
    pub eig: T,
    /// Angular distance from `−1` below which a principal logarithm is refused.
    pub branch: T,
    /// Relative singular value threshold for rank decisions.
    pub rank: T,
    /// Relative smallest-singular-value threshold for `det(S − I) = 0`.
    pub det: T,
    /// Largest distance from an integer accepted when rounding an index.
    pub integrality: T,
    /// Maximum bisection depth when refining a path.
    pub max_refine_depth: u32,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

impl<T: Real> Tolerances<T> {
    pub fn strict() -> Self {
        T::strict_tolerances()
    }
}

impl Real for f64 {
    fn default_tolerances() -> Tolerances<f64> {
        Tolerances {
            sympl: 1e-8,
            eig: 1e-8,
            branch: 1e-6,
            rank: 1e-8,
            det: 1e-8,
            integrality: 1e-6,
            max_refine_depth: 40,
        }
    }

    fn strict_tolerances() -> Tolerances<f64> {
        Tolerances {
            sympl: 1e-10,
            eig: 1e-10,
            branch: 1e-7,
            rank: 1e-10,
            det: 1e-10,
            integrality: 1e-8,
            max_refine_depth: 40,
        }
    }
}

impl Real for f32 {
    fn default_tolerances() -> Tolerances<f32> {
        Tolerances {
            sympl: 1e-4,
            eig: 1e-4,
            branch: 1e-3,
            rank: 1e-4,
            det: 1e-4,
            integrality: 1e-2,
            max_refine_depth: 24,
        }
    }

    fn strict_tolerances() -> Tolerances<f32> {
        Tolerances {
            sympl: 1e-5,
            eig: 1e-5,
            branch: 5e-4,
            rank: 1e-5,
            det: 1e-5,
            integrality: 5e-3,
            max_refine_depth: 24,
        }
    }
}

/// Principal argument of a complex number, in `(−π, π]`.
#[inline]
pub(crate) fn arg<T: Real>(z: Complex<T>) -> T {
    z.im.atan2(z.re)
}

/// Modulus of a complex number.
#[inline]
pub(crate) fn modulus<T: Real>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

/// `e^{iθ}`.
#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    let (s, c) = theta.sin_cos();
    Complex::new(c, s)
}

/// Rounds `x` to the nearest integer, failing when it is further than `tol`
/// from it.
pub(crate) fn round_checked<T: Real>(
    x: T,
    tol: T,
    context: &'static str,
) -> Result<i64, crate::IndexError> {
    let r = x.round();
    if (x - r).abs() > tol {
        return Err(crate::IndexError::IntegralityViolation {
            value: x.as_f64(),
            context,
        });
    }
    Ok(r.as_f64() as i64)
}
