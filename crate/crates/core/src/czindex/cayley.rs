//! The symplectic Cayley transform `M_S = ½J(S + I)(S − I)⁻¹`.

use std::fmt;

use nalgebra::DMatrix;

use crate::scalar::{Real, Tolerances};
use crate::symplinalg::{max_abs, singular_range, standard_j, SymmetricForm, SymplecticMatrix};
use crate::{IndexError, Result};

/// Component of `Sp(n)` minus the Maslov cycle containing an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpClass {
    /// `det(S − I) > 0`.
    Plus,
    /// `det(S − I) < 0`.
    Minus,
    /// `det(S − I) = 0` within tolerance.
    Zero,
}

impl fmt::Display for SpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpClass::Plus => "Sp+",
            SpClass::Minus => "Sp-",
            SpClass::Zero => "Sp0",
        })
    }
}

/// Classifies `S` by the sign of `det(S − I)`. The endpoint is degenerate when
/// `σ_min(S − I) ≤ tol.det · max(1, σ_max(S − I))`.
pub fn classify<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> SpClass {
    let m = s.minus_identity();
    let (lo, hi) = singular_range(&m);
    if lo <= tol.det * hi.max(T::one()) {
        return SpClass::Zero;
    }
    if m.determinant() > T::zero() {
        SpClass::Plus
    } else {
        SpClass::Minus
    }
}

/// Condition number of `S − I`, used to scale the symmetry checks.
fn conditioning<T: Real>(s: &SymplecticMatrix<T>) -> T {
    let (lo, hi) = singular_range(&s.minus_identity());
    (hi / lo).max(T::one())
}

/// A symmetric matrix `M_S` attached to `S` with `det(S − I) ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CayleyTransform<T: Real> {
    pub m_s: SymmetricForm<T>,
}

impl<T: Real> CayleyTransform<T> {
    pub fn matrix(&self) -> &DMatrix<T> {
        self.m_s.matrix()
    }

    /// Recovers `S = I − (JM + ½I)⁻¹`.
    pub fn inverse(&self) -> Result<SymplecticMatrix<T>> {
        let dim = self.m_s.dim();
        let id = DMatrix::<T>::identity(dim, dim);
        let a = standard_j::<T>(dim / 2) * self.matrix() + &id * T::lit(0.5);
        let inv = a
            .try_inverse()
            .ok_or(IndexError::DegenerateEndpoint("JM + I/2 is singular"))?;
        Ok(SymplecticMatrix::from_matrix_unchecked(id - inv))
    }
}

fn inv_minus_identity<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<DMatrix<T>> {
    if classify(s, tol) == SpClass::Zero {
        return Err(IndexError::DegenerateEndpoint("det(S − I) = 0"));
    }
    s.minus_identity()
        .try_inverse()
        .ok_or(IndexError::DegenerateEndpoint("det(S − I) = 0"))
}

/// `M_S = ½J(S + I)(S − I)⁻¹`, symmetrized after checking the raw asymmetry.
pub fn cayley<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<CayleyTransform<T>> {
    let n = s.n();
    let inv = inv_minus_identity(s, tol)?;
    let id = DMatrix::<T>::identity(2 * n, 2 * n);
    let raw = standard_j::<T>(n) * (s.matrix() + &id) * inv * T::lit(0.5);
    let asym = SymmetricForm::asymmetry(&raw);
    if asym > tol.sympl * conditioning(s) * T::one().max(max_abs(s.matrix())) {
        return Err(IndexError::Asymmetric {
            residual: asym.as_f64(),
        });
    }
    Ok(CayleyTransform {
        m_s: SymmetricForm::new(raw),
    })
}

/// `‖(½J + J(S − I)⁻¹) − M_S‖_max`, the agreement of the two expressions.
pub fn cayley_reconstruction_residual<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<T> {
    let c = cayley(s, tol)?;
    let j = standard_j::<T>(s.n());
    let alt = &j * T::lit(0.5) + &j * inv_minus_identity(s, tol)?;
    Ok(max_abs(&(alt - c.matrix())))
}

/// `−(S′ − I)(SS′ − I)⁻¹(S − I)J`, the inverse of `M_S + M_{S′}`.
pub fn cayley_sum_inverse<T: Real>(s: &SymplecticMatrix<T>, s2: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<DMatrix<T>> {
    inv_minus_identity(s, tol)?;
    inv_minus_identity(s2, tol)?;
    let prod = s * s2;
    let inv = inv_minus_identity(&prod, tol)?;
    Ok(-(s2.minus_identity() * inv * s.minus_identity() * standard_j::<T>(s.n())))
}

/// `M_S + (Sᵀ − I)⁻¹J(M_S + M_{S′})⁻¹J(S − I)⁻¹`, the Cayley transform of `SS′`.
pub fn cayley_product<T: Real>(s: &SymplecticMatrix<T>, s2: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<DMatrix<T>> {
    let ms = cayley(s, tol)?;
    let sum_inv = cayley_sum_inverse(s, s2, tol)?;
    let inv = inv_minus_identity(s, tol)?;
    let j = standard_j::<T>(s.n());
    Ok(ms.matrix() + inv.transpose() * &j * sum_inv * &j * inv)
}
