//! Linear-algebra primitives on the standard symplectic space `R²ⁿ`.
//!
//! Coordinates are ordered `(x, p)`: the first `n` entries are positions, the
//! last `n` momenta, and the symplectic form is `σ(z, z′) = ⟨Jz, z′⟩` with
//! `J = [[0, I], [−I, 0]]`.

use std::ops::Mul;

use nalgebra::{Complex, DMatrix, SymmetricEigen};

use crate::scalar::{arg, modulus, Real, Tolerances};
use crate::{IndexError, Result};

/// The `2n × 2n` matrix `J = [[0, I], [−I, 0]]`.
pub fn standard_j<T: Real>(n: usize) -> DMatrix<T> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = T::one();
        j[(n + i, i)] = -T::one();
    }
    j
}

/// Largest absolute entry.
pub fn max_abs<T: Real>(m: &DMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, &v| acc.max(v.abs()))
}

pub(crate) fn max_abs_c<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    m.iter().fold(T::zero(), |acc, v| acc.max(modulus(*v)))
}

/// `‖SᵀJS − J‖_max`.
pub fn symplectic_residual<T: Real>(m: &DMatrix<T>) -> T {
    let n = m.nrows() / 2;
    let j = standard_j::<T>(n);
    max_abs(&(m.transpose() * &j * m - j))
}

/// Extreme singular values `(σ_min, σ_max)` of a matrix.
pub(crate) fn singular_range<T: Real>(m: &DMatrix<T>) -> (T, T) {
    let sv = m.clone().singular_values();
    let lo = sv.iter().fold(T::max_value().unwrap(), |a, &b| a.min(b));
    let hi = sv.iter().fold(T::zero(), |a, &b| a.max(b));
    (lo, hi)
}

/// The rotation `exp(θJ₁) = [[cos θ, sin θ], [−sin θ, cos θ]]` of `Sp(1)`.
pub fn rotation<T: Real>(theta: T) -> DMatrix<T> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, -s, c])
}

/// Block-diagonal sum of two `(x, p)`-ordered matrices, interleaved so the
/// result is again `(x, p)`-ordered on `R^{2(n₁+n₂)}`.
pub fn direct_sum_matrix<T: Real>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    let (n1, n2) = (a.nrows() / 2, b.nrows() / 2);
    let n = n1 + n2;
    let ia: Vec<usize> = (0..n1).chain(n..n + n1).collect();
    let ib: Vec<usize> = (n1..n).chain(n + n1..2 * n).collect();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for (r, &i) in ia.iter().enumerate() {
        for (c, &j) in ia.iter().enumerate() {
            out[(i, j)] = a[(r, c)];
        }
    }
    for (r, &i) in ib.iter().enumerate() {
        for (c, &j) in ib.iter().enumerate() {
            out[(i, j)] = b[(r, c)];
        }
    }
    out
}

/// An element of `Sp(n)`: a `2n × 2n` real matrix with `SᵀJS = J`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix<T: Real> {
    n: usize,
    m: DMatrix<T>,
}

impl<T: Real> SymplecticMatrix<T> {
    /// Validates `SᵀJS = J` (relative to `‖S‖²`) and `det S = 1`.
    pub fn new(m: DMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() % 2 != 0 || m.nrows() == 0 {
            return Err(IndexError::InvalidInput(format!(
                "symplectic matrix must be square of even positive size, got {}×{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let scale = T::one().max(max_abs(&m) * max_abs(&m));
        let residual = symplectic_residual(&m);
        if residual > tol.sympl * scale || !residual.is_finite() {
            return Err(IndexError::NotSymplectic {
                residual: residual.as_f64(),
            });
        }
        let det = m.determinant();
        if (det - T::one()).abs() > tol.sympl.sqrt() * scale {
            return Err(IndexError::NotSymplectic {
                residual: (det - T::one()).abs().as_f64(),
            });
        }
        Ok(Self {
            n: m.nrows() / 2,
            m,
        })
    }

    /// Wraps a matrix known to be symplectic by construction (products,
    /// inverses and exponentials of symplectic data).
    pub(crate) fn from_matrix_unchecked(m: DMatrix<T>) -> Self {
        Self {
            n: m.nrows() / 2,
            m,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_matrix_unchecked(DMatrix::identity(2 * n, 2 * n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<T> {
        self.m
    }

    /// `S⁻¹ = −J Sᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = standard_j::<T>(self.n);
        Self::from_matrix_unchecked(-(&j * self.m.transpose() * &j))
    }

    /// The blocks `(A, B, C, D)` of `S = [[A, B], [C, D]]`.
    pub fn blocks(&self) -> (DMatrix<T>, DMatrix<T>, DMatrix<T>, DMatrix<T>) {
        let n = self.n;
        (
            self.m.view((0, 0), (n, n)).into_owned(),
            self.m.view((0, n), (n, n)).into_owned(),
            self.m.view((n, 0), (n, n)).into_owned(),
            self.m.view((n, n), (n, n)).into_owned(),
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_matrix_unchecked(direct_sum_matrix(&self.m, &other.m))
    }

    pub fn residual(&self) -> T {
        symplectic_residual(&self.m)
    }

    /// `S − I`.
    pub fn minus_identity(&self) -> DMatrix<T> {
        &self.m - DMatrix::identity(2 * self.n, 2 * self.n)
    }
}

impl<'a, T: Real> Mul<&'a SymplecticMatrix<T>> for &'a SymplecticMatrix<T> {
    type Output = SymplecticMatrix<T>;

    fn mul(self, rhs: &'a SymplecticMatrix<T>) -> SymplecticMatrix<T> {
        SymplecticMatrix::from_matrix_unchecked(&self.m * &rhs.m)
    }
}

/// A real symmetric matrix, the matrix of a quadratic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm<T: Real> {
    m: DMatrix<T>,
}

impl<T: Real> SymmetricForm<T> {
    /// Symmetrizes `m` as `(m + mᵀ)/2`.
    pub fn new(m: DMatrix<T>) -> Self {
        let half = T::lit(0.5);
        let sym = (&m + m.transpose()) * half;
        Self { m: sym }
    }

    /// Relative asymmetry `‖m − mᵀ‖_max / max(1, ‖m‖_max)` of a raw matrix.
    pub fn asymmetry(m: &DMatrix<T>) -> T {
        max_abs(&(m - m.transpose())) / T::one().max(max_abs(m))
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        if self.m.nrows() == 0 {
            return Vec::new();
        }
        SymmetricEigen::new(self.m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }
}

/// Counts of positive, zero and negative eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_zero: usize,
    pub n_minus: usize,
}

impl InertiaTriple {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_zero + self.n_minus
    }
}

/// Inertia of `a`, counting eigenvalues in `[−eps, eps]` as zero.
pub fn inertia<T: Real>(a: &SymmetricForm<T>, eps: T) -> InertiaTriple {
    let mut t = InertiaTriple {
        n_plus: 0,
        n_zero: 0,
        n_minus: 0,
    };
    for l in a.eigenvalues() {
        if l > eps {
            t.n_plus += 1;
        } else if l < -eps {
            t.n_minus += 1;
        } else {
            t.n_zero += 1;
        }
    }
    t
}

/// Inertia with the zero band `tol.eig · max(1, ‖A‖₂)`.
pub fn inertia_rel<T: Real>(a: &SymmetricForm<T>, tol: &Tolerances<T>) -> InertiaTriple {
    let eig = a.eigenvalues();
    let scale = eig.iter().fold(T::one(), |acc, l| acc.max(l.abs()));
    inertia(a, tol.eig * scale)
}

/// A complex `n × n` unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix<T: Real> {
    m: DMatrix<Complex<T>>,
}

impl<T: Real> UnitaryMatrix<T> {
    pub fn new(m: DMatrix<Complex<T>>, tol: &Tolerances<T>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(IndexError::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let r = unitarity_residual(&m);
        if r > tol.sympl {
            return Err(IndexError::InvalidInput(format!(
                "matrix is not unitary (residual {:.3e})",
                r.as_f64()
            )));
        }
        Ok(Self { m })
    }

    pub(crate) fn from_matrix_unchecked(m: DMatrix<Complex<T>>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.m
    }

    pub fn determinant(&self) -> Complex<T> {
        self.m.determinant()
    }

    /// The real `2n × 2n` orthosymplectic matrix `[[A, −B], [B, A]]` for `A + iB`.
    pub fn to_real(&self) -> DMatrix<T> {
        let n = self.m.nrows();
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.m[(i, j)];
                out[(i, j)] = z.re;
                out[(n + i, n + j)] = z.re;
                out[(i, n + j)] = -z.im;
                out[(n + i, j)] = z.im;
            }
        }
        out
    }
}

pub(crate) fn unitarity_residual<T: Real>(m: &DMatrix<Complex<T>>) -> T {
    let n = m.nrows();
    max_abs_c(&(m.adjoint() * m - DMatrix::<Complex<T>>::identity(n, n)))
}

/// Orthogonal factor of the polar decomposition of `S`, returned as its image
/// `u = A + iB` in `U(n)`.
pub fn polar_unitary<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<UnitaryMatrix<T>> {
    let n = s.n();
    let m = s.matrix();
    let eig = SymmetricEigen::new(m * m.transpose());
    let mut inv_sqrt = eig.eigenvalues.clone();
    for l in inv_sqrt.iter_mut() {
        if *l <= T::zero() || !l.is_finite() {
            return Err(IndexError::PolarFailure {
                eigenvalue: l.as_f64(),
            });
        }
        *l = T::one() / l.sqrt();
    }
    let v = &eig.eigenvectors;
    let u = v * DMatrix::from_diagonal(&inv_sqrt) * v.transpose() * m;

    let scale = T::one().max(max_abs(m) * max_abs(m));
    let ortho = max_abs(&(u.transpose() * &u - DMatrix::identity(2 * n, 2 * n)));
    let sympl = symplectic_residual(&u);
    if ortho > tol.sympl * scale || sympl > tol.sympl * scale {
        return Err(IndexError::NotSymplectic {
            residual: ortho.max(sympl).as_f64(),
        });
    }

    let half = T::lit(0.5);
    let c = DMatrix::from_fn(n, n, |i, j| {
        let a = (u[(i, j)] + u[(n + i, n + j)]) * half;
        let b = (u[(n + i, j)] - u[(i, n + j)]) * half;
        Complex::new(a, b)
    });
    Ok(UnitaryMatrix::from_matrix_unchecked(c))
}

/// `ρ(S) = det u` where `u` is the unitary image of the polar factor of `S`.
pub fn rho<T: Real>(s: &SymplecticMatrix<T>, tol: &Tolerances<T>) -> Result<Complex<T>> {
    let d = polar_unitary(s, tol)?.determinant();
    // normalize away rounding in |det u|
    Ok(d / Complex::new(modulus(d), T::zero()))
}

/// Eigenvalues of a complex square matrix via the complex Schur form.
pub(crate) fn complex_eigenvalues<T: Real>(m: &DMatrix<Complex<T>>) -> Vec<Complex<T>> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let schur = nalgebra::linalg::Schur::new(m.clone());
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// `Tr Log U` with the principal logarithm (eigen-angles in `(−π, π)`).
///
/// Fails with [`IndexError::BranchCut`] when an eigenvalue lies within
/// `tol.branch` radians of `−1`.
pub fn unitary_log_trace<T: Real>(u: &UnitaryMatrix<T>, tol: &Tolerances<T>) -> Result<Complex<T>> {
    let pi = T::pi();
    let mut acc = Complex::new(T::zero(), T::zero());
    for l in complex_eigenvalues(u.matrix()) {
        let a = arg(l);
        let distance = pi - a.abs();
        if distance < tol.branch {
            return Err(IndexError::BranchCut {
                distance: distance.as_f64(),
            });
        }
        acc += Complex::new(modulus(l).ln(), a);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn j_n1_is_the_standard_matrix() {
        let j = standard_j::<f64>(1);
        assert_eq!(j, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn j_squares_to_minus_identity() {
        let j = standard_j::<f64>(2);
        assert_eq!(&j * &j, -DMatrix::<f64>::identity(4, 4));
        let j3 = standard_j::<f64>(3);
        assert_eq!(j3.transpose(), -j3);
    }

    #[test]
    fn inertia_examples() {
        let t = inertia_rel(&SymmetricForm::new(DMatrix::from_diagonal_element(2, 2, 1.0)), &tol());
        assert_eq!((t.n_plus, t.n_zero, t.n_minus), (2, 0, 0));
        let d = SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        let t = inertia_rel(&d, &tol());
        assert_eq!((t.n_plus, t.n_zero, t.n_minus), (1, 0, 1));
        assert_eq!(t.signature(), 0);
        let z = inertia_rel(&SymmetricForm::new(DMatrix::<f64>::zeros(3, 3)), &tol());
        assert_eq!((z.n_plus, z.n_zero, z.n_minus), (0, 3, 0));
        // eigenvalues ±3/2
        let a = SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[0.0, -1.5, -1.5, 0.0]));
        let t = inertia_rel(&a, &tol());
        assert_eq!((t.n_plus, t.n_zero, t.n_minus), (1, 0, 1));
    }

    #[test]
    fn symmetrization_on_construction() {
        let f = SymmetricForm::new(DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]));
        assert_eq!(f.matrix()[(0, 1)], 1.0);
        assert_eq!(f.matrix()[(1, 0)], 1.0);
    }

    #[test]
    fn construction_rejects_non_symplectic() {
        let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 2.0]);
        assert!(matches!(
            SymplecticMatrix::new(m, &tol()),
            Err(IndexError::NotSymplectic { .. })
        ));
        let odd = DMatrix::<f64>::identity(3, 3);
        assert!(SymplecticMatrix::new(odd, &tol()).is_err());
    }

    #[test]
    fn polar_of_identity_and_positive() {
        let u = polar_unitary(&SymplecticMatrix::<f64>::identity(2), &tol()).unwrap();
        assert!(max_abs_c(&(u.matrix() - DMatrix::identity(2, 2))) < 1e-14);
        let s = SymplecticMatrix::new(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]), &tol()).unwrap();
        let u = polar_unitary(&s, &tol()).unwrap();
        assert!((u.matrix()[(0, 0)] - Complex::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn polar_of_rotation_is_e_minus_i_chi() {
        let chi = 0.73;
        let s = SymplecticMatrix::new(rotation(chi), &tol()).unwrap();
        let u = polar_unitary(&s, &tol()).unwrap();
        assert!((u.matrix()[(0, 0)] - Complex::from_polar(1.0, -chi)).norm() < 1e-14);
        assert!((rho(&s, &tol()).unwrap() - Complex::from_polar(1.0, -chi)).norm() < 1e-14);
    }

    #[test]
    fn rho_of_direct_sum_of_rotations() {
        let (a, b) = (0.4, -1.9);
        let s1 = SymplecticMatrix::new(rotation(a), &tol()).unwrap();
        let s2 = SymplecticMatrix::new(rotation(b), &tol()).unwrap();
        let r = rho(&s1.direct_sum(&s2), &tol()).unwrap();
        assert!((r - Complex::from_polar(1.0, -(a + b))).norm() < 1e-13);
    }

    #[test]
    fn log_trace_examples() {
        let u = UnitaryMatrix::new(DMatrix::<Complex<f64>>::identity(3, 3), &tol()).unwrap();
        assert!(unitary_log_trace(&u, &tol()).unwrap().norm() < 1e-14);

        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex::from_polar(1.0, PI / 2.0),
            Complex::from_polar(1.0, -PI / 3.0),
        ]));
        let v = unitary_log_trace(&UnitaryMatrix::new(d, &tol()).unwrap(), &tol()).unwrap();
        assert!((v - Complex::new(0.0, PI / 6.0)).norm() < 1e-13);

        let m = -DMatrix::<Complex<f64>>::identity(2, 2);
        assert!(matches!(
            unitary_log_trace(&UnitaryMatrix::new(m, &tol()).unwrap(), &tol()),
            Err(IndexError::BranchCut { .. })
        ));
    }

    #[test]
    fn scalar_f32_rotation_polar() {
        let t = Tolerances::<f32>::default();
        let s = SymplecticMatrix::new(rotation(0.3_f32), &t).unwrap();
        let r = rho(&s, &t).unwrap();
        assert!((r - Complex::from_polar(1.0_f32, -0.3)).norm() < 1e-5);
    }

    fn shear(a: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[1.0, a, 0.0, 1.0])
    }

    proptest! {
        #[test]
        fn sylvester_law_of_inertia(
            entries in prop::collection::vec(-3.0f64..3.0, 64),
            cong in prop::collection::vec(-2.0f64..2.0, 64),
            m in 1usize..=8,
        ) {
            let a = DMatrix::from_fn(m, m, |i, j| entries[i.min(j) * 8 + i.max(j)]);
            let mut c = DMatrix::from_fn(m, m, |i, j| cong[i * 8 + j]);
            c += DMatrix::identity(m, m) * 4.0; // diagonally dominant, invertible
            let f = SymmetricForm::new(a);
            let g = SymmetricForm::new(c.transpose() * f.matrix() * &c);
            let (ia, ig) = (inertia_rel(&f, &tol()), inertia_rel(&g, &tol()));
            // congruence cannot move a clearly nonzero eigenvalue across zero
            let gap = f.eigenvalues().iter().fold(f64::INFINITY, |a, l| a.min(l.abs()));
            prop_assume!(gap > 1e-3);
            prop_assert_eq!(ia, ig);
        }

        #[test]
        fn polar_factor_is_orthosymplectic(a in -3.0f64..3.0, b in -3.0f64..3.0, th in -3.0f64..3.0) {
            let m = shear(a) * rotation(th) * shear(b).transpose();
            let s = SymplecticMatrix::new(m, &tol()).unwrap();
            prop_assert!(s.residual() <= 1e-9 * (1.0 + max_abs(s.matrix()).powi(2)));
            let u = polar_unitary(&s, &tol()).unwrap();
            prop_assert!(unitarity_residual(u.matrix()) <= 1e-9);
            prop_assert!(symplectic_residual(&u.to_real()) <= 1e-9);
        }

        #[test]
        fn rho_is_multiplicative_on_direct_sums(a in -2.0f64..2.0, b in -2.0f64..2.0, t1 in -3.0f64..3.0, t2 in -3.0f64..3.0) {
            let s1 = SymplecticMatrix::new(shear(a) * rotation(t1), &tol()).unwrap();
            let s2 = SymplecticMatrix::new(rotation(t2) * shear(b).transpose(), &tol()).unwrap();
            let lhs = rho(&s1.direct_sum(&s2), &tol()).unwrap();
            let rhs = rho(&s1, &tol()).unwrap() * rho(&s2, &tol()).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-9);
        }
    }
}
