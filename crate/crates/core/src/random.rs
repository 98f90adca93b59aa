//! Seeded generators of random symplectic data for property tests and the
//! verification suites.

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::lagrangian::LagrangianPlane;
use crate::maslov::{GeneratorSpec, SymplecticPath};
use crate::scalar::Real;
use crate::symplinalg::{rotation, singular_range, SymmetricForm, SymplecticMatrix, UnitaryMatrix};

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = StandardNormal.sample(rng);
    T::lit(x)
}

/// Gaussian `rows × cols` matrix scaled by `scale`.
pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize, scale: f64) -> DMatrix<T> {
    DMatrix::from_fn(rows, cols, |_, _| normal::<T, R>(rng) * T::lit(scale))
}

/// Random symmetric `n × n` matrix with entries of size `scale`.
pub fn random_symmetric<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SymmetricForm<T> {
    SymmetricForm::new(gaussian(rng, n, n, scale))
}

/// Random well-conditioned invertible matrix.
pub fn random_invertible<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<T> {
    loop {
        let g = gaussian::<T, R>(rng, n, n, 1.0);
        let (lo, hi) = singular_range(&g);
        if lo > T::lit(0.2) * hi {
            return g;
        }
    }
}

/// Random real orthogonal matrix.
pub fn random_orthogonal<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<T> {
    random_invertible::<T, R>(rng, n).qr().q()
}

/// Real `2n × 2n` block-diagonal sum of `n` planar rotations.
pub fn phase_matrix<T: Real>(angles: &[T]) -> DMatrix<T> {
    let n = angles.len();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for (k, &a) in angles.iter().enumerate() {
        let r = rotation(a);
        m[(k, k)] = r[(0, 0)];
        m[(k, n + k)] = r[(0, 1)];
        m[(n + k, k)] = r[(1, 0)];
        m[(n + k, n + k)] = r[(1, 1)];
    }
    m
}

/// Random element of `U(n)`, as its real orthosymplectic image.
pub fn random_unitary_real<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<T> {
    let phases = |rng: &mut R| -> Vec<T> { (0..n).map(|_| T::lit(rng.random_range(-3.2..3.2))).collect() };
    let o = random_orthogonal::<T, R>(rng, n);
    let mut oo = DMatrix::zeros(2 * n, 2 * n);
    oo.view_mut((0, 0), (n, n)).copy_from(&o);
    oo.view_mut((n, n), (n, n)).copy_from(&o);
    let a = phases(rng);
    let b = phases(rng);
    phase_matrix(&a) * oo * phase_matrix(&b)
}

/// Random symplectic matrix: unitary factors around shears and a dilation of
/// size `scale`.
pub fn random_symplectic<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SymplecticMatrix<T> {
    let i = DMatrix::<T>::identity(n, n);
    let mut upper = DMatrix::identity(2 * n, 2 * n);
    upper.view_mut((0, n), (n, n)).copy_from(random_symmetric::<T, R>(rng, n, scale).matrix());
    let mut lower = DMatrix::identity(2 * n, 2 * n);
    lower.view_mut((n, 0), (n, n)).copy_from(random_symmetric::<T, R>(rng, n, scale).matrix());
    let g = &i + gaussian::<T, R>(rng, n, n, scale * 0.3);
    let g = if g.clone().try_inverse().is_some() { g } else { i.clone() };
    let mut dil = DMatrix::zeros(2 * n, 2 * n);
    dil.view_mut((n, n), (n, n)).copy_from(&g.clone().try_inverse().unwrap().transpose());
    dil.view_mut((0, 0), (n, n)).copy_from(&g);
    let u1 = random_unitary_real::<T, R>(rng, n);
    let u2 = random_unitary_real::<T, R>(rng, n);
    SymplecticMatrix::from_matrix_unchecked(u1 * upper * dil * lower * u2)
}

/// Random unitary matrix of `U(n)`.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> UnitaryMatrix<T> {
    let u = random_unitary_real::<T, R>(rng, n);
    UnitaryMatrix::from_matrix_unchecked(DMatrix::from_fn(n, n, |i, j| Complex::new(u[(i, j)], u[(n + i, j)])))
}

/// Random Lagrangian plane.
pub fn random_plane<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> LagrangianPlane<T> {
    LagrangianPlane::p_plane(n).transform(&random_symplectic(rng, n, 0.8))
}

/// Random plane meeting `l` in a subspace of dimension `k` (generically exactly `k`).
pub fn random_plane_meeting<T: Real, R: Rng + ?Sized>(rng: &mut R, l: &LagrangianPlane<T>, k: usize) -> LagrangianPlane<T> {
    let n = l.n();
    let k = k.min(n);
    // U maps ℓ_P onto l: with Z = X + iP, take u = −iZ
    let b = l.basis();
    let mut u = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (x, p) = (b[(i, j)], b[(n + i, j)]);
            // −i(x + ip) = p − ix
            let (re, im) = (p, -x);
            u[(i, j)] = re;
            u[(n + i, n + j)] = re;
            u[(i, n + j)] = -im;
            u[(n + i, j)] = im;
        }
    }
    let o = random_orthogonal::<T, R>(rng, n);
    let mut a = DMatrix::zeros(n, n);
    for c in 0..(n - k) {
        let v = o.column(c);
        let lam = normal::<T, R>(rng) + T::lit(0.5).copysign(normal::<T, R>(rng));
        a += v * v.transpose() * lam;
    }
    let mut basis = DMatrix::zeros(2 * n, n);
    basis.view_mut((0, 0), (n, n)).copy_from(&a);
    basis.view_mut((n, 0), (n, n)).fill_with_identity();
    LagrangianPlane::from_basis_unchecked(&(u * basis))
}

/// Random path generator: the pointwise product of the flows of two random
/// quadratic Hamiltonians with entries of size `scale`.
pub fn random_path_spec<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> GeneratorSpec<T> {
    let flow = |rng: &mut R| GeneratorSpec::HamiltonianFlow {
        h: random_symmetric::<T, R>(rng, 2 * n, scale),
        duration: T::one(),
    };
    let a = flow(rng);
    let b = flow(rng);
    GeneratorSpec::Product(Box::new(a), Box::new(b))
}

/// A random path from the identity (see [`random_path_spec`]).
pub fn random_path<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SymplecticPath<T> {
    random_path_spec(rng, n, scale)
        .build(&T::default_tolerances())
        .expect("quadratic flows give valid paths")
}
