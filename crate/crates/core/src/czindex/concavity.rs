//! Generating functions of free symplectic matrices and the index of concavity.

use nalgebra::DMatrix;

use super::cayley::{classify, SpClass};
use crate::lagrangian::LagrangianPlane;
use crate::maslov::{reduce, relative_maslov, SymplecticPath};
use crate::scalar::{round_checked, Real, Tolerances};
use crate::symplinalg::{inertia_rel, max_abs, singular_range, SymmetricForm, SymplecticMatrix};
use crate::{IndexError, Result};

/// Data `(P, L, Q)` of the generating function of a free symplectic matrix,
/// with `W″ₓₓ = P + Q − L − Lᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingFunctionData<T: Real> {
    pub p: SymmetricForm<T>,
    pub l: DMatrix<T>,
    pub q: SymmetricForm<T>,
    pub w_xx: SymmetricForm<T>,
}

impl<T: Real> GeneratingFunctionData<T> {
    /// Rebuilds `S` from `B = L⁻¹`, `A = L⁻¹Q`, `D = PL⁻¹`, `C = PL⁻¹Q − Lᵀ`.
    pub fn reconstruct(&self) -> Result<DMatrix<T>> {
        let n = self.l.nrows();
        let linv = self.l.clone().try_inverse().ok_or(IndexError::NotFree)?;
        let a = &linv * self.q.matrix();
        let d = self.p.matrix() * &linv;
        let c = self.p.matrix() * &linv * self.q.matrix() - self.l.transpose();
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        s.view_mut((0, 0), (n, n)).copy_from(&a);
        s.view_mut((0, n), (n, n)).copy_from(&linv);
        s.view_mut((n, 0), (n, n)).copy_from(&c);
        s.view_mut((n, n), (n, n)).copy_from(&d);
        Ok(s)
    }
}

/// `P = DB⁻¹`, `L = B⁻¹`, `Q = B⁻¹A` for `S = [[A, B], [C, D]]` with `B` invertible.
pub fn generating_function<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<GeneratingFunctionData<T>> {
    let (a, b, _, d) = s.blocks();
    let (lo, _) = singular_range(&b);
    let scale = T::one().max(max_abs(s.matrix()));
    if lo <= tol.det * scale {
        return Err(IndexError::NotFree);
    }
    let binv = b.try_inverse().ok_or(IndexError::NotFree)?;
    let p = &d * &binv;
    let q = &binv * &a;
    let bound = tol.sympl * scale * scale / lo.min(T::one());
    for m in [&p, &q] {
        let asym = SymmetricForm::asymmetry(m);
        if asym > bound {
            return Err(IndexError::Asymmetric {
                residual: asym.as_f64(),
            });
        }
    }
    let (p, q) = (SymmetricForm::new(p), SymmetricForm::new(q));
    let w_xx = SymmetricForm::new(p.matrix() + q.matrix() - &binv - binv.transpose());
    Ok(GeneratingFunctionData { p, l: binv, q, w_xx })
}

/// `(det(S − I), (−1)ⁿ det B det W″ₓₓ)`.
pub fn det_factorization_check<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<(T, T)> {
    let data = generating_function(s, tol)?;
    let (_, b, _, _) = s.blocks();
    let sign = if s.n() % 2 == 0 { T::one() } else { -T::one() };
    Ok((s.minus_identity().determinant(), sign * b.determinant() * data.w_xx.matrix().determinant()))
}

/// `Inert W″ₓₓ`, the number of negative eigenvalues of `P + Q − L − Lᵀ`.
pub fn concavity_index<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<usize> {
    let data = generating_function(s, tol)?;
    if classify(s, tol) == SpClass::Zero {
        return Err(IndexError::DegenerateEndpoint("det(S − I) = 0"));
    }
    let inertia = inertia_rel(&data.w_xx, tol);
    if inertia.n_zero > 0 {
        return Err(IndexError::DegenerateEndpoint("W″xx is singular"));
    }
    Ok(inertia.n_minus)
}

/// The two concavity expressions for `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcavityRecord {
    pub mu_lp: i64,
    pub m_lp: i64,
    pub inert: i64,
    pub sign_w: i64,
    /// `m_{ℓP}(S_∞) − Inert W″ₓₓ`.
    pub via_reduced: i64,
    /// `½(μ_{ℓP}(S_∞) + sign W″ₓₓ)`.
    pub via_relative: i64,
}

impl ConcavityRecord {
    pub fn consistent(&self) -> bool {
        self.via_reduced == self.via_relative
    }
}

/// `ν` through the relative Maslov index on `ℓ_P` and the index of concavity.
pub fn nu_via_concavity<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<ConcavityRecord> {
    let s = path.endpoint();
    let inert = concavity_index(s, tol)? as i64;
    let lp = LagrangianPlane::p_plane(path.n());
    let mu_lp = relative_maslov(path, &lp, tol)?;
    let m_lp = reduce(mu_lp, s, &lp, tol)?;
    let sign_w = path.n() as i64 - 2 * inert;
    let via_relative = round_checked(
        T::from_int(mu_lp + sign_w) * T::lit(0.5),
        tol.integrality,
        "½(μ_ℓP + sign W″xx)",
    )?;
    Ok(ConcavityRecord {
        mu_lp,
        m_lp,
        inert,
        sign_w,
        via_reduced: m_lp - inert,
        via_relative,
    })
}
