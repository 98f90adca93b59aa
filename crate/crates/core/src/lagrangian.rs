//! Lagrangian planes, Souriau coordinates and the Wall–Kashiwara index.

use nalgebra::{Complex, DMatrix};

use crate::scalar::{round_checked, Real, Tolerances};
use crate::symplinalg::{
    inertia_rel, max_abs, singular_range, standard_j, SymmetricForm, SymplecticMatrix,
};
use crate::{IndexError, Result};

/// An `n`-dimensional subspace of `R²ⁿ` on which `σ` vanishes.
///
/// The basis is kept orthonormal. Under `(x, p) ↦ x + ip` an orthonormal basis
/// `[X; P]` gives a unitary `Z = X + iP` with `ℓ = Z·Rⁿ = u·ℓ_P` for `u = −iZ`,
/// so the Souriau coordinate is `w = uuᵀ = −ZZᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianPlane<T: Real> {
    n: usize,
    basis: DMatrix<T>,
    w: DMatrix<Complex<T>>,
}

impl<T: Real> LagrangianPlane<T> {
    /// Validates a `2n × n` basis and orthonormalizes it.
    pub fn from_basis(b: &DMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        let n = b.ncols();
        if n == 0 || b.nrows() != 2 * n {
            return Err(IndexError::InvalidInput(format!(
                "Lagrangian basis must be 2n×n, got {}×{}",
                b.nrows(),
                b.ncols()
            )));
        }
        let sv = b.clone().singular_values();
        let hi = sv.iter().fold(T::zero(), |a, &s| a.max(s));
        let rank = sv.iter().filter(|&&s| s > tol.rank * hi.max(T::one())).count();
        if rank < n {
            return Err(IndexError::RankDeficient { rank, expected: n });
        }
        let plane = Self::from_basis_unchecked(b);
        let j = standard_j::<T>(n);
        let residual = max_abs(&(plane.basis.transpose() * &j * &plane.basis));
        if residual > tol.sympl {
            return Err(IndexError::NotIsotropic {
                residual: residual.as_f64(),
            });
        }
        Ok(plane)
    }

    /// Orthonormalizes a basis already known to span a Lagrangian plane.
    pub(crate) fn from_basis_unchecked(b: &DMatrix<T>) -> Self {
        let n = b.ncols();
        let q = b.clone().qr().q();
        let z = DMatrix::from_fn(n, n, |i, k| Complex::new(q[(i, k)], q[(n + i, k)]));
        let w = -(&z * z.transpose());
        let half = T::lit(0.5);
        let w = (&w + w.transpose()).map(|c| c * half);
        Self { n, basis: q, w }
    }

    /// `ℓ_X = Rⁿ × 0`.
    pub fn x_plane(n: usize) -> Self {
        let mut b = DMatrix::zeros(2 * n, n);
        for i in 0..n {
            b[(i, i)] = T::one();
        }
        Self::from_basis_unchecked(&b)
    }

    /// `ℓ_P = 0 × Rⁿ`.
    pub fn p_plane(n: usize) -> Self {
        let mut b = DMatrix::zeros(2 * n, n);
        for i in 0..n {
            b[(n + i, i)] = T::one();
        }
        Self::from_basis_unchecked(&b)
    }

    /// `e^{ia}·ℓ_P` in the unitary coordinate; its Souriau coordinate is `e^{2ia}I`.
    pub fn rotated_p_plane(n: usize, a: T) -> Self {
        let (s, c) = a.sin_cos();
        let mut b = DMatrix::zeros(2 * n, n);
        for i in 0..n {
            b[(i, i)] = -s;
            b[(n + i, i)] = c;
        }
        Self::from_basis_unchecked(&b)
    }

    /// The line of `R²` spanned by `(cos a, sin a)`.
    pub fn line(a: T) -> Self {
        let (s, c) = a.sin_cos();
        Self::from_basis_unchecked(&DMatrix::from_column_slice(2, 1, &[c, s]))
    }

    /// The graph `{(x, Ax)}` of a symmetric matrix.
    pub fn graph_of_symmetric(a: &SymmetricForm<T>) -> Self {
        let n = a.dim();
        let mut b = DMatrix::zeros(2 * n, n);
        b.view_mut((0, 0), (n, n)).fill_with_identity();
        b.view_mut((n, 0), (n, n)).copy_from(a.matrix());
        Self::from_basis_unchecked(&b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Orthonormal `2n × n` basis.
    pub fn basis(&self) -> &DMatrix<T> {
        &self.basis
    }

    /// The Souriau coordinate `w`, a symmetric unitary matrix.
    pub fn souriau(&self) -> &DMatrix<Complex<T>> {
        &self.w
    }

    /// `det w`.
    pub fn souriau_det(&self) -> Complex<T> {
        self.w.determinant()
    }

    /// The image `Sℓ`.
    pub fn transform(&self, s: &SymplecticMatrix<T>) -> Self {
        Self::from_basis_unchecked(&(s.matrix() * &self.basis))
    }
}

fn check_dims<T: Real>(a: &LagrangianPlane<T>, b: &LagrangianPlane<T>) {
    assert_eq!(a.n, b.n, "Lagrangian planes live in different dimensions");
}

/// `dim ℓ ∩ ℓ′ = 2n − rank [B | B′]`.
pub fn intersection_dim<T: Real>(a: &LagrangianPlane<T>, b: &LagrangianPlane<T>, tol: &Tolerances<T>) -> usize {
    check_dims(a, b);
    let n = a.n;
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (2 * n, n)).copy_from(&a.basis);
    m.view_mut((0, n), (2 * n, n)).copy_from(&b.basis);
    let sv = m.singular_values();
    let hi = sv.iter().fold(T::zero(), |x, &s| x.max(s));
    let rank = sv.iter().filter(|&&s| s > tol.rank * hi).count();
    2 * n - rank
}

/// Matrix of `(u, v) ↦ σ(B_a u, B_b v) = uᵀ B_aᵀ Jᵀ B_b v`.
fn sigma_block<T: Real>(a: &DMatrix<T>, b: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows() / 2;
    a.transpose() * standard_j::<T>(n).transpose() * b
}

/// The Wall–Kashiwara index `τ(ℓ, ℓ′, ℓ″)`: the signature of
/// `σ(z, z′) + σ(z′, z″) + σ(z″, z)` on `ℓ ⊕ ℓ′ ⊕ ℓ″`.
pub fn wall_kashiwara<T: Real>(
    a: &LagrangianPlane<T>,
    b: &LagrangianPlane<T>,
    c: &LagrangianPlane<T>,
    tol: &Tolerances<T>,
) -> i64 {
    check_dims(a, b);
    check_dims(a, c);
    let n = a.n;
    let g_ab = sigma_block(&a.basis, &b.basis);
    let g_bc = sigma_block(&b.basis, &c.basis);
    let g_ca = sigma_block(&c.basis, &a.basis);
    let mut m = DMatrix::zeros(3 * n, 3 * n);
    m.view_mut((0, n), (n, n)).copy_from(&g_ab);
    m.view_mut((n, 2 * n), (n, n)).copy_from(&g_bc);
    m.view_mut((2 * n, 0), (n, n)).copy_from(&g_ca);
    inertia_rel(&SymmetricForm::new(m), tol).signature()
}

/// `τ(ℓ, ℓ′, ℓ″)` as the signature of `Q′(z′) = σ(Pr z′, z′)` on `ℓ′`, with
/// `Pr` the projection onto `ℓ` along `ℓ″`.
pub fn wall_kashiwara_transversal<T: Real>(
    a: &LagrangianPlane<T>,
    b: &LagrangianPlane<T>,
    c: &LagrangianPlane<T>,
    tol: &Tolerances<T>,
) -> Result<i64> {
    check_dims(a, b);
    check_dims(a, c);
    let dim = intersection_dim(a, c, tol);
    if dim > 0 {
        return Err(IndexError::NotTransversal { dim });
    }
    let n = a.n;
    let mut ac = DMatrix::zeros(2 * n, 2 * n);
    ac.view_mut((0, 0), (2 * n, n)).copy_from(&a.basis);
    ac.view_mut((0, n), (2 * n, n)).copy_from(&c.basis);
    let coeffs = ac
        .lu()
        .solve(&b.basis)
        .ok_or(IndexError::NotTransversal { dim: 0 })?;
    let proj = &a.basis * coeffs.rows(0, n);
    let q = sigma_block(&proj, &b.basis);
    Ok(inertia_rel(&SymmetricForm::new(q), tol).signature())
}

/// `τ ≡ n + dim ℓ∩ℓ′ + dim ℓ′∩ℓ″ + dim ℓ″∩ℓ (mod 2)`.
pub fn kmod2_holds<T: Real>(
    a: &LagrangianPlane<T>,
    b: &LagrangianPlane<T>,
    c: &LagrangianPlane<T>,
    tol: &Tolerances<T>,
) -> bool {
    let tau = wall_kashiwara(a, b, c, tol);
    let s = a.n + intersection_dim(a, b, tol) + intersection_dim(b, c, tol) + intersection_dim(c, a, tol);
    (tau - s as i64).rem_euclid(2) == 0
}

/// Index of inertia `½(τ + n + dim ℓ∩ℓ′ − dim ℓ′∩ℓ″ + dim ℓ″∩ℓ)`.
pub fn inert_triple<T: Real>(
    a: &LagrangianPlane<T>,
    b: &LagrangianPlane<T>,
    c: &LagrangianPlane<T>,
    tol: &Tolerances<T>,
) -> Result<i64> {
    let tau = wall_kashiwara(a, b, c, tol);
    let twice = tau + a.n as i64 + intersection_dim(a, b, tol) as i64 - intersection_dim(b, c, tol) as i64
        + intersection_dim(c, a, tol) as i64;
    round_checked(T::from_int(twice) * T::lit(0.5), tol.integrality, "index of inertia of a triple")
}

/// `ℓ₁ ⊕ ℓ₂` in the `(x, p)`-ordered space of dimension `2(n₁ + n₂)`.
pub fn direct_sum_plane<T: Real>(a: &LagrangianPlane<T>, b: &LagrangianPlane<T>) -> LagrangianPlane<T> {
    let (n1, n2) = (a.n, b.n);
    let n = n1 + n2;
    let mut m = DMatrix::zeros(2 * n, n);
    m.view_mut((0, 0), (n1, n1)).copy_from(&a.basis.rows(0, n1));
    m.view_mut((n, 0), (n1, n1)).copy_from(&a.basis.rows(n1, n1));
    m.view_mut((n1, n1), (n2, n2)).copy_from(&b.basis.rows(0, n2));
    m.view_mut((n + n1, n1), (n2, n2)).copy_from(&b.basis.rows(n2, n2));
    LagrangianPlane::from_basis_unchecked(&m)
}

/// The doubled space `R²ⁿ ⊕ R²ⁿ` with the form `−σ ⊕ σ`, identified with the
/// standard `R⁴ⁿ` through `Φ(x₁, p₁, x₂, p₂) = (p₁, x₂ | x₁, p₂)`.
///
/// Graphs `{(z, Sz)}` of symplectic maps are Lagrangian for `−σ ⊕ σ`, so their
/// images under `Φ` are Lagrangian planes of `R⁴ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubledSpace {
    pub n: usize,
}

impl DoubledSpace {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// The matrix of the doubled form, `diag(−J, J)`.
    pub fn form<T: Real>(&self) -> DMatrix<T> {
        let n = self.n;
        let j = standard_j::<T>(n);
        let mut f = DMatrix::zeros(4 * n, 4 * n);
        f.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&(-&j));
        f.view_mut((2 * n, 2 * n), (2 * n, 2 * n)).copy_from(&j);
        f
    }

    /// The `4n × 4n` permutation matrix of `Φ`.
    pub fn embedding<T: Real>(&self) -> DMatrix<T> {
        let n = self.n;
        let mut phi = DMatrix::zeros(4 * n, 4 * n);
        for i in 0..n {
            // X = (p₁, x₂), P = (x₁, p₂)
            phi[(i, n + i)] = T::one();
            phi[(n + i, 2 * n + i)] = T::one();
            phi[(2 * n + i, i)] = T::one();
            phi[(3 * n + i, 3 * n + i)] = T::one();
        }
        phi
    }

    /// `‖ΦᵀJΦ − diag(−J, J)‖_max`.
    pub fn embedding_residual<T: Real>(&self) -> T {
        let phi = self.embedding::<T>();
        max_abs(&(phi.transpose() * standard_j::<T>(2 * self.n) * &phi - self.form::<T>()))
    }

    /// `Φ(graph S)` for a `2n × 2n` matrix `S`.
    pub fn graph<T: Real>(&self, s: &DMatrix<T>) -> LagrangianPlane<T> {
        let n = self.n;
        let mut b = DMatrix::zeros(4 * n, 2 * n);
        b.view_mut((0, 0), (2 * n, 2 * n)).fill_with_identity();
        b.view_mut((2 * n, 0), (2 * n, 2 * n)).copy_from(s);
        LagrangianPlane::from_basis_unchecked(&(self.embedding::<T>() * b))
    }

    /// `Φ(Δ)`, the image of the diagonal.
    pub fn diagonal<T: Real>(&self) -> LagrangianPlane<T> {
        self.graph(&DMatrix::identity(2 * self.n, 2 * self.n))
    }
}

/// `dim Ker(S − I)` from singular values.
pub fn kernel_dim<T: Real>(s: &DMatrix<T>, tol: &Tolerances<T>) -> usize {
    let m = s - DMatrix::identity(s.nrows(), s.ncols());
    let (_, hi) = singular_range(s);
    let sv = m.singular_values();
    sv.iter().filter(|&&x| x <= tol.rank * hi.max(T::one())).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_plane, random_plane_meeting, random_symplectic};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    fn lines(a: f64, b: f64, c: f64) -> [LagrangianPlane<f64>; 3] {
        [LagrangianPlane::line(a), LagrangianPlane::line(b), LagrangianPlane::line(c)]
    }

    #[test]
    fn coordinate_planes_are_valid() {
        let x = LagrangianPlane::<f64>::from_basis(&DMatrix::from_row_slice(4, 2, &[1., 0., 0., 1., 0., 0., 0., 0.]), &tol()).unwrap();
        assert!((x.souriau() + DMatrix::<Complex<f64>>::identity(2, 2)).iter().all(|c| c.norm() < 1e-14));
        let p = LagrangianPlane::<f64>::from_basis(&DMatrix::from_row_slice(4, 2, &[0., 0., 0., 0., 1., 0., 0., 1.]), &tol()).unwrap();
        assert!((p.souriau() - DMatrix::<Complex<f64>>::identity(2, 2)).iter().all(|c| c.norm() < 1e-14));
        let d = LagrangianPlane::<f64>::from_basis(&DMatrix::from_row_slice(2, 1, &[1., 1.]), &tol());
        assert!(d.is_ok());
    }

    #[test]
    fn x_plane_souriau_is_basis_independent() {
        let b = DMatrix::from_row_slice(4, 2, &[2., 1., -1., 3., 0., 0., 0., 0.]);
        let x = LagrangianPlane::<f64>::from_basis(&b, &tol()).unwrap();
        assert!((x.souriau() - LagrangianPlane::<f64>::x_plane(2).souriau()).iter().all(|c| c.norm() < 1e-13));
    }

    #[test]
    fn rejects_bad_bases() {
        let iso = DMatrix::from_row_slice(2, 1, &[0., 0.]);
        assert!(matches!(LagrangianPlane::<f64>::from_basis(&iso, &tol()), Err(IndexError::RankDeficient { .. })));
        // span(e_x1, e_p1) is symplectic, not isotropic
        let b = DMatrix::from_row_slice(4, 2, &[1., 0., 0., 0., 0., 1., 0., 0.]);
        assert!(matches!(LagrangianPlane::<f64>::from_basis(&b, &tol()), Err(IndexError::NotIsotropic { .. })));
    }

    #[test]
    fn intersection_examples() {
        let x = LagrangianPlane::<f64>::x_plane(2);
        let p = LagrangianPlane::<f64>::p_plane(2);
        assert_eq!(intersection_dim(&x, &x, &tol()), 2);
        assert_eq!(intersection_dim(&x, &p, &tol()), 0);
        let d = DoubledSpace::new(2);
        let g = d.graph(&DMatrix::<f64>::identity(4, 4));
        assert_eq!(intersection_dim(&g, &d.diagonal(), &tol()), 4);
    }

    #[test]
    fn tau_of_lines_at_zero_quarter_half() {
        let [a, b, c] = lines(0.0, PI / 4.0, PI / 2.0);
        assert_eq!(wall_kashiwara(&a, &b, &c, &tol()), -1);
        assert_eq!(inert_triple(&a, &b, &c, &tol()).unwrap(), 0);
    }

    #[test]
    fn tau_degenerate_examples() {
        let [a, _, c] = lines(0.3, 0.0, 1.2);
        assert_eq!(wall_kashiwara(&a, &a, &c, &tol()), 0);
        let x = LagrangianPlane::<f64>::x_plane(2);
        assert_eq!(inert_triple(&x, &x, &x, &tol()).unwrap(), 2);
        // ℓ = ℓ∩ℓ′ + ℓ∩ℓ″ with ℓ = ℓ_X(2), ℓ′ ∋ e_x1, ℓ″ ∋ e_x2
        let b1 = LagrangianPlane::from_basis(&DMatrix::from_row_slice(4, 2, &[1., 0., 0., 0., 0., 0., 0., 1.]), &tol()).unwrap();
        let b2 = LagrangianPlane::from_basis(&DMatrix::from_row_slice(4, 2, &[0., 0., 0., 1., 1., 0., 0., 0.]), &tol()).unwrap();
        assert_eq!(wall_kashiwara(&x, &b1, &b2, &tol()), 0);
    }

    #[test]
    fn transversal_graph_example() {
        let x = LagrangianPlane::<f64>::x_plane(2);
        let p = LagrangianPlane::<f64>::p_plane(2);
        let g = |d: [f64; 2]| LagrangianPlane::graph_of_symmetric(&SymmetricForm::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(d.to_vec())))); 
        assert_eq!(wall_kashiwara_transversal(&x, &g([1.0, -1.0]), &p, &tol()).unwrap(), 0);
        assert_eq!(wall_kashiwara_transversal(&x, &g([1.0, 2.0]), &p, &tol()).unwrap(), -2);
        assert_eq!(wall_kashiwara(&x, &g([1.0, 2.0]), &p, &tol()), -2);
        assert_eq!(wall_kashiwara_transversal(&x, &x, &p, &tol()).unwrap(), 0);
        assert!(matches!(wall_kashiwara_transversal(&x, &p, &x, &tol()), Err(IndexError::NotTransversal { dim: 2 })));
    }

    #[test]
    fn direct_sum_of_x_planes() {
        let s = direct_sum_plane(&LagrangianPlane::<f64>::x_plane(1), &LagrangianPlane::x_plane(2));
        assert!((s.souriau() - LagrangianPlane::<f64>::x_plane(3).souriau()).iter().all(|c| c.norm() < 1e-14));
    }

    #[test]
    fn doubled_embedding_is_symplectic() {
        for n in 1..4 {
            assert_eq!(DoubledSpace::new(n).embedding_residual::<f64>(), 0.0);
        }
    }

    #[test]
    fn graph_intersects_diagonal_in_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = DoubledSpace::new(2);
        for _ in 0..20 {
            let s = random_symplectic::<f64, _>(&mut rng, 2, 1.0);
            let g = d.graph(s.matrix());
            let j4 = standard_j::<f64>(4);
            assert!(max_abs(&(g.basis().transpose() * j4 * g.basis())) < 1e-10);
            assert_eq!(intersection_dim(&g, &d.diagonal(), &tol()), kernel_dim(s.matrix(), &tol()));
        }
        let rot = crate::symplinalg::rotation(1.0);
        let s = direct_sum_matrix_id(&rot);
        assert_eq!(intersection_dim(&d.graph(&s), &d.diagonal(), &tol()), 2);
    }

    fn direct_sum_matrix_id(a: &DMatrix<f64>) -> DMatrix<f64> {
        crate::symplinalg::direct_sum_matrix(a, &DMatrix::identity(2, 2))
    }

    fn planes(seed: u64, n: usize, k: usize) -> Vec<LagrangianPlane<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = random_plane::<f64, _>(&mut rng, n);
        let mut out = vec![first.clone()];
        for i in 1..k {
            // mix generic and degenerate planes
            let p = if i % 2 == 0 {
                random_plane_meeting(&mut rng, &out[i - 1], (seed as usize + i) % (n + 1))
            } else {
                random_plane(&mut rng, n)
            };
            out.push(p);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn tau_antisymmetry(seed in any::<u64>(), n in 1usize..=3) {
            let p = planes(seed, n, 3);
            let t = wall_kashiwara(&p[0], &p[1], &p[2], &tol());
            prop_assert_eq!(t, -wall_kashiwara(&p[1], &p[0], &p[2], &tol()));
            prop_assert_eq!(t, -wall_kashiwara(&p[0], &p[2], &p[1], &tol()));
            prop_assert!(t.abs() <= 3 * n as i64);
        }

        #[test]
        fn tau_symplectic_invariance(seed in any::<u64>(), n in 1usize..=3) {
            let p = planes(seed, n, 3);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
            let s = random_symplectic::<f64, _>(&mut rng, n, 0.7);
            let q: Vec<_> = p.iter().map(|l| l.transform(&s)).collect();
            prop_assert_eq!(wall_kashiwara(&p[0], &p[1], &p[2], &tol()), wall_kashiwara(&q[0], &q[1], &q[2], &tol()));
        }

        #[test]
        fn tau_cocycle(seed in any::<u64>(), n in 1usize..=3) {
            let p = planes(seed, n, 4);
            let t = |a: usize, b: usize, c: usize| wall_kashiwara(&p[a], &p[b], &p[c], &tol());
            prop_assert_eq!(t(1, 2, 3) - t(0, 2, 3) + t(0, 1, 3) - t(0, 1, 2), 0);
        }

        #[test]
        fn tau_mod2(seed in any::<u64>(), n in 1usize..=3) {
            let p = planes(seed, n, 3);
            prop_assert!(kmod2_holds(&p[0], &p[1], &p[2], &tol()));
            prop_assert!(inert_triple(&p[0], &p[1], &p[2], &tol()).is_ok());
        }

        #[test]
        fn transversal_formula_agrees(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p: Vec<LagrangianPlane<f64>> = (0..3).map(|_| random_plane(&mut rng, n)).collect();
            prop_assume!(intersection_dim(&p[0], &p[2], &tol()) == 0);
            prop_assert_eq!(
                wall_kashiwara_transversal(&p[0], &p[1], &p[2], &tol()).unwrap(),
                wall_kashiwara(&p[0], &p[1], &p[2], &tol())
            );
        }

        #[test]
        fn tau_additivity(seed in any::<u64>(), n1 in 1usize..=2, n2 in 1usize..=2) {
            let a = planes(seed, n1, 3);
            let b = planes(seed.wrapping_add(1), n2, 3);
            let s: Vec<_> = (0..3).map(|i| direct_sum_plane(&a[i], &b[i])).collect();
            prop_assert_eq!(
                wall_kashiwara(&s[0], &s[1], &s[2], &tol()),
                wall_kashiwara(&a[0], &a[1], &a[2], &tol()) + wall_kashiwara(&b[0], &b[1], &b[2], &tol())
            );
            prop_assert_eq!(
                intersection_dim(&s[0], &s[1], &tol()),
                intersection_dim(&a[0], &a[1], &tol()) + intersection_dim(&b[0], &b[1], &tol())
            );
        }

        #[test]
        fn souriau_basis_independence(seed in any::<u64>(), n in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = random_plane::<f64, _>(&mut rng, n);
            let g = crate::random::random_invertible::<f64, _>(&mut rng, n);
            let other = LagrangianPlane::from_basis(&(l.basis() * g), &tol()).unwrap();
            let d = l.souriau() - other.souriau();
            prop_assert!(d.iter().all(|c| c.norm() <= 1e-8));
        }
    }
}
