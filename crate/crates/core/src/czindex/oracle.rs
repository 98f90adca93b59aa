//! The classical Conley–Zehnder index as a winding number of `ρ²`.
//!
//! The path is extended inside its component of `Sp(n) \ Sp0` to a fixed
//! basepoint, `S⁺ = −I` or `S⁻ = diag(L, L⁻¹)` with `L = diag(2, −1, …, −1)`,
//! where `ρ² = 1`; the index is the degree of `ρ²` along the extended path.
//!
//! The connector runs in Cayley coordinates `K = JM`: `S(K) = I − (K + ½I)⁻¹`
//! maps Hamiltonian matrices onto `Sp(n) \ Sp0`, and `S(K)` is degenerate
//! exactly when `±½` is an eigenvalue of `K`. The class of `S(K)` is the parity
//! of the number of real eigenvalue pairs `±λ` of `K` with `λ > ½`. A straight
//! segment is used when it is admissible. Otherwise `K` is brought to a
//! symplectic normal form `V D V⁻¹` with `D` split into real pairs beyond `½`
//! and a remainder, `V` is deformed to `I`, pairs of real pairs are merged into
//! complex quadruples and everything is shrunk to the basepoint.

use nalgebra::{Complex, DMatrix, DVector, Schur, SymmetricEigen};

use super::cayley::{cayley, classify, SpClass};
use crate::scalar::{arg, cis, round_checked, Real, Tolerances};
use crate::symplinalg::{rho, standard_j, SymplecticMatrix};
use crate::maslov::SymplecticPath;
use crate::{IndexError, Result};

/// A path `s ↦ K(s)` of Hamiltonian matrices on `[0, 1]`.
type Stage<T> = Box<dyn Fn(T) -> DMatrix<T>>;

/// The basepoint `S⁻ = diag(L, L⁻¹)` of `Sp⁻(n)`.
pub fn sp_minus_basepoint<T: Real>(n: usize) -> SymplecticMatrix<T> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m[(0, 0)] = T::lit(2.0);
    m[(n, n)] = T::lit(0.5);
    for i in 1..n {
        m[(i, i)] = -T::one();
        m[(n + i, n + i)] = -T::one();
    }
    SymplecticMatrix::from_matrix_unchecked(m)
}

/// Whether `½I + (1 − s)K₀ + sK₁` stays invertible for `s ∈ [0, 1]`, with a
/// safety margin: `A + sB` is singular iff `−1/s` is an eigenvalue of `A⁻¹B`,
/// so no eigenvalue may come near the ray `(−∞, −1]`.
fn segment_ok<T: Real>(k0: &DMatrix<T>, k1: &DMatrix<T>) -> bool {
    let dim = k0.nrows();
    let a = DMatrix::<T>::identity(dim, dim) * T::lit(0.5) + k0;
    let b = k1 - k0;
    let Some(ainv) = a.try_inverse() else {
        return false;
    };
    let margin = T::lit(0.05);
    (ainv * b).complex_eigenvalues().iter().all(|l| {
        let scale = T::one() + l.re.abs();
        !(l.im.abs() <= margin * scale && l.re <= -T::one() + margin * scale)
    })
}

fn cayley_point<T: Real>(k: &DMatrix<T>) -> Result<SymplecticMatrix<T>> {
    let dim = k.nrows();
    let id = DMatrix::<T>::identity(dim, dim);
    let a = k + &id * T::lit(0.5);
    let inv = a.try_inverse().ok_or(IndexError::PathExtensionFailed)?;
    Ok(SymplecticMatrix::from_matrix_unchecked(id - inv))
}

/// `ω(a, b) = aᵀJb`.
fn omega<T: Real>(j: &DMatrix<T>, a: &DVector<T>, b: &DVector<T>) -> T {
    a.dot(&(j * b))
}

/// Orthonormal basis of the null space of `a`, assumed to have dimension `k`.
fn null_space<T: Real>(a: &DMatrix<T>, k: usize) -> DMatrix<T> {
    let c = a.ncols();
    let mut sq = DMatrix::zeros(c.max(a.nrows()), c);
    sq.view_mut((0, 0), (a.nrows(), c)).copy_from(a);
    let svd = sq.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[x].partial_cmp(&svd.singular_values[y]).unwrap());
    let mut out = DMatrix::zeros(c, k);
    for (col, &i) in order.iter().take(k).enumerate() {
        out.set_column(col, &vt.row(i).transpose());
    }
    out
}

/// Projects onto Hamiltonian matrices: `K ↦ J sym(−JK)`.
fn hamiltonian_part<T: Real>(k: &DMatrix<T>) -> DMatrix<T> {
    let j = standard_j::<T>(k.nrows() / 2);
    let m = -(&j * k);
    &j * ((&m + m.transpose()) * T::lit(0.5))
}

fn symplectic_inverse<T: Real>(v: &DMatrix<T>) -> DMatrix<T> {
    let j = standard_j::<T>(v.nrows() / 2);
    -(&j * v.transpose() * &j)
}

/// A path in `Sp(n)` from `v` at `s = 0` to `I` at `s = 1`, through the polar
/// decomposition `v = PU`: `P` follows `P^{1−s}` and the unitary part follows
/// the geodesic `u^{1−s}`.
fn to_identity<T: Real>(v: &DMatrix<T>) -> impl Fn(T) -> DMatrix<T> {
    let dim = v.nrows();
    let n = dim / 2;
    let eig = SymmetricEigen::new(v * v.transpose());
    let (q, d) = (eig.eigenvectors, eig.eigenvalues);
    let pinv = &q * DMatrix::from_diagonal(&d.map(|x| T::one() / x.sqrt())) * q.transpose();
    let ur = pinv * v;
    let u = DMatrix::from_fn(n, n, |r, c| Complex::new(ur[(r, c)], ur[(r, n + c)]));
    let (qu, tu) = Schur::new(u).unpack();
    let angles: Vec<T> = (0..n).map(|i| arg(tu[(i, i)])).collect();
    move |s: T| {
        let e = T::one() - s;
        let p = &q * DMatrix::from_diagonal(&d.map(|x| x.powf(e * T::lit(0.5)))) * q.transpose();
        let diag = DMatrix::from_fn(n, n, |r, c| if r == c { cis(angles[r] * e) } else { Complex::new(T::zero(), T::zero()) });
        let us = &qu * diag * qu.adjoint();
        let mut real = DMatrix::zeros(dim, dim);
        for r in 0..n {
            for c in 0..n {
                let z = us[(r, c)];
                real[(r, c)] = z.re;
                real[(r, n + c)] = z.im;
                real[(n + r, c)] = -z.im;
                real[(n + r, n + c)] = z.re;
            }
        }
        p * real
    }
}

/// Symplectic basis `V` with `V⁻¹KV = D`, where the first `m` coordinates
/// carry the real eigenvalues of `K` beyond `½` (on `x`) and their negatives
/// (on `p`), and the remaining coordinates carry the rest of the spectrum.
fn normal_form<T: Real>(k: &DMatrix<T>, tol: &Tolerances<T>) -> Result<(DMatrix<T>, Vec<T>)> {
    let dim = k.nrows();
    let n = dim / 2;
    let j = standard_j::<T>(n);
    let id = DMatrix::<T>::identity(dim, dim);
    let scale = k.iter().fold(T::one(), |a, x| a.max(x.abs()));
    let loose = tol.eig.sqrt() * scale;
    let mut beyond: Vec<T> = k
        .complex_eigenvalues()
        .iter()
        .filter(|l| l.im.abs() <= loose && l.re > T::lit(0.5))
        .map(|l| l.re)
        .collect();
    beyond.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clusters: Vec<Vec<T>> = Vec::new();
    for l in beyond {
        match clusters.last_mut() {
            Some(c) if l - *c.last().unwrap() <= loose => c.push(l),
            _ => clusters.push(vec![l]),
        }
    }
    let mut es: Vec<DVector<T>> = Vec::new();
    let mut fs: Vec<DVector<T>> = Vec::new();
    let mut lambdas = Vec::new();
    for c in &clusters {
        let mult = c.len();
        let mean = c.iter().fold(T::zero(), |a, &x| a + x) / T::lit(mult as f64);
        let up = null_space(&(k - &id * mean), mult);
        let down = null_space(&(k + &id * mean), mult);
        let resid = (k * &up - &up * mean).norm() + (k * &down + &down * mean).norm();
        if resid > loose * T::lit(10.0) {
            return Err(IndexError::PathExtensionFailed);
        }
        let pairing = up.transpose() * &j * &down;
        let f = &down * pairing.try_inverse().ok_or(IndexError::PathExtensionFailed)?.transpose();
        for i in 0..mult {
            es.push(up.column(i).into_owned());
            fs.push(f.column(i).into_owned());
            lambdas.push(mean);
        }
    }
    let m = es.len();
    let mut rest = Vec::new();
    if m < n {
        let mut rows = DMatrix::zeros(2 * m, dim);
        for (i, v) in es.iter().chain(fs.iter()).enumerate() {
            rows.set_row(i, &(v.transpose() * &j));
        }
        let comp = null_space(&rows, dim - 2 * m);
        rest = (0..comp.ncols()).map(|i| comp.column(i).into_owned()).collect();
    }
    let (mut re, mut rf) = (Vec::new(), Vec::new());
    while !rest.is_empty() {
        let e = rest.remove(0);
        let e = &e / e.norm();
        let (best, w) = rest
            .iter()
            .enumerate()
            .map(|(i, w)| (i, omega(&j, &e, w)))
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .ok_or(IndexError::PathExtensionFailed)?;
        if w.abs() <= loose {
            return Err(IndexError::PathExtensionFailed);
        }
        let f = rest.remove(best) / w;
        for v in rest.iter_mut() {
            let (a, b) = (omega(&j, v, &f), omega(&j, v, &e));
            *v = &*v - &e * a + &f * b;
        }
        for i in 0..rest.len() {
            for p in 0..i {
                let proj = rest[p].dot(&rest[i]);
                rest[i] = &rest[i] - &rest[p] * proj;
            }
            let nrm = rest[i].norm();
            rest[i] /= nrm;
        }
        re.push(e);
        rf.push(f);
    }
    let mut v = DMatrix::zeros(dim, dim);
    for (i, col) in es.iter().chain(re.iter()).enumerate() {
        v.set_column(i, col);
    }
    for (i, col) in fs.iter().chain(rf.iter()).enumerate() {
        v.set_column(n + i, col);
    }
    if (v.transpose() * &j * &v - &j).norm() > loose * T::lit(10.0) {
        return Err(IndexError::PathExtensionFailed);
    }
    Ok((v, lambdas))
}

/// `W` with `W K_target W⁻¹ = diag` carrying `+3/2` on `x_m` and `−3/2` on
/// `p_m`: a quarter turn in the first coordinate plane followed by the swap of
/// coordinates `1` and `m`.
fn basepoint_alignment<T: Real>(n: usize, m: usize) -> DMatrix<T> {
    let dim = 2 * n;
    let mut r = DMatrix::<T>::identity(dim, dim);
    r[(0, 0)] = T::zero();
    r[(n, n)] = T::zero();
    r[(0, n)] = T::one();
    r[(n, 0)] = -T::one();
    let mut swap = DMatrix::<T>::identity(dim, dim);
    if m != 0 {
        for (a, b) in [(0, m), (n, n + m)] {
            swap[(a, a)] = T::zero();
            swap[(b, b)] = T::zero();
            swap[(a, b)] = T::one();
            swap[(b, a)] = T::one();
        }
    }
    swap * r
}

/// Stages `K₀ → … → K_target` of a connector inside one component.
fn connector<T: Real>(k0: &DMatrix<T>, target: &DMatrix<T>, class: SpClass, tol: &Tolerances<T>) -> Result<Vec<Stage<T>>> {
    let linear = |a: DMatrix<T>, b: DMatrix<T>| -> Stage<T> { Box::new(move |s: T| &a * (T::one() - s) + &b * s) };
    if segment_ok(k0, target) {
        return Ok(vec![linear(k0.clone(), target.clone())]);
    }
    let dim = k0.nrows();
    let n = dim / 2;
    let (v, lambdas) = normal_form(k0, tol)?;
    let m = lambdas.len();
    let odd = m % 2 == 1;
    if odd != (class == SpClass::Minus) {
        return Err(IndexError::PathExtensionFailed);
    }
    let d = hamiltonian_part(&(symplectic_inverse(&v) * k0 * &v));
    let mut stages: Vec<Stage<T>> = Vec::new();

    let path = to_identity(&v);
    let d1 = d.clone();
    stages.push(Box::new(move |s: T| {
        let vs = path(s);
        &vs * &d1 * symplectic_inverse(&vs)
    }));

    let mut ideal = DMatrix::zeros(dim, dim);
    for i in 0..m {
        ideal[(i, i)] = d[(i, i)];
        ideal[(n + i, n + i)] = -d[(i, i)];
    }
    let restidx: Vec<usize> = (m..n).chain(n + m..dim).collect();
    for &r in &restidx {
        for &c in &restidx {
            ideal[(r, c)] = d[(r, c)];
        }
    }
    stages.push(linear(d, ideal.clone()));

    let pairs = m / 2;
    let goal = |i: usize| if odd && i == m - 1 { T::lit(1.5) } else { T::one() };
    let mut equal = DMatrix::zeros(dim, dim);
    for i in 0..m {
        equal[(i, i)] = goal(i);
        equal[(n + i, n + i)] = -goal(i);
    }
    stages.push(linear(ideal, equal.clone()));

    let merged = move |d: T, shrink: T| {
        let mut k = equal.clone();
        for p in 0..pairs {
            let (a, b) = (2 * p, 2 * p + 1);
            let x = [[T::one(), -d], [d, T::one()]];
            for (r, rr) in [a, b].into_iter().enumerate() {
                for (c, cc) in [a, b].into_iter().enumerate() {
                    k[(rr, cc)] = x[r][c] * shrink;
                    k[(n + rr, n + cc)] = -x[c][r] * shrink;
                }
            }
        }
        k
    };
    let merged = std::sync::Arc::new(merged);
    let m1 = merged.clone();
    stages.push(Box::new(move |s: T| m1(s, T::one())));
    let m2 = merged.clone();
    stages.push(Box::new(move |s: T| m2(T::one(), T::one() - s)));

    if odd {
        let w = basepoint_alignment::<T>(n, m - 1);
        let path = to_identity(&w);
        let t = target.clone();
        stages.push(Box::new(move |s: T| {
            let ws = path(s);
            &ws * &t * symplectic_inverse(&ws)
        }));
    }
    Ok(stages)
}

/// Continues the lift `θ` of `arg ρ` along `s ↦ S(s)` on `[0, 1]`.
fn continue_lift<T: Real>(
    theta: &mut T,
    z: &mut Complex<T>,
    f: &dyn Fn(T) -> Result<SymplecticMatrix<T>>,
    class: SpClass,
    tol: &Tolerances<T>,
) -> Result<()> {
    let steps = 64;
    let half = T::lit(0.5);
    let mut cur = T::zero();
    for k in 1..=steps {
        let mut pending = vec![(T::lit(k as f64 / steps as f64), 0u32)];
        while let Some(&(t, depth)) = pending.last() {
            let s = f(t)?;
            if classify(&s, tol) != class {
                return Err(IndexError::PathExtensionFailed);
            }
            let w = rho(&s, tol)?;
            let delta = arg(w * z.conj());
            if delta.abs() < T::frac_pi_2() {
                *theta += delta;
                *z = w;
                cur = t;
                pending.pop();
            } else if depth < tol.max_refine_depth {
                pending.push(((cur + t) * half, depth + 1));
            } else {
                return Err(IndexError::UnderResolved { t: t.as_f64() });
            }
        }
    }
    Ok(())
}

/// `deg ρ²` along the path followed by the connector to the basepoint of its
/// component.
pub fn cz_winding_oracle<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<i64> {
    let n = path.n();
    let s = path.endpoint();
    let class = classify(s, tol);
    let j = standard_j::<T>(n);
    let target = match class {
        SpClass::Zero => return Err(IndexError::DegenerateEndpoint("det(S − I) = 0")),
        SpClass::Plus => DMatrix::zeros(2 * n, 2 * n),
        SpClass::Minus => &j * cayley(&sp_minus_basepoint::<T>(n), tol)?.matrix(),
    };
    let start = &j * cayley(s, tol)?.matrix();
    let lifted = path.rho_lift(tol)?;
    let mut theta = lifted.end();
    let mut z = rho(s, tol)?;
    for stage in connector(&start, &target, class, tol)? {
        continue_lift(&mut theta, &mut z, &|t: T| cayley_point(&stage(t)), class, tol)?;
    }
    round_checked((theta - lifted.start()) / T::pi(), tol.integrality, "winding of ρ² along the extended path")
}
