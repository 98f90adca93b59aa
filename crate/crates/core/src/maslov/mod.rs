//! The universal covers `Lag_∞(n)` and `Sp_∞(n)`, the Arnol'd–Leray–Maslov
//! index and the Maslov indices of symplectic paths.

mod generators;
mod path;

pub use generators::{generator_by_name, GeneratorSpec};
pub use path::{lift_phase, LiftedAngle, MatrixFn, SymplecticPath};

use nalgebra::DMatrix;

use crate::lagrangian::{intersection_dim, wall_kashiwara, LagrangianPlane};
use crate::scalar::{arg, cis, modulus, round_checked, Real, Tolerances};
use crate::symplinalg::{complex_eigenvalues, max_abs, SymplecticMatrix};
use crate::{IndexError, Result};

/// A point `(w, θ)` of `Lag_∞(n)`: a plane with a chosen angle `θ` such that
/// `det w = e^{iθ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianLift<T: Real> {
    pub plane: LagrangianPlane<T>,
    pub theta: T,
}

impl<T: Real> LagrangianLift<T> {
    pub fn new(plane: LagrangianPlane<T>, theta: T) -> Result<Self> {
        let d = plane.souriau_det();
        let mismatch = modulus(d - cis(theta));
        if mismatch > T::lit(1e-8).max(T::default_epsilon().sqrt()) {
            return Err(IndexError::InvalidLift {
                angle: theta.as_f64(),
                mismatch: mismatch.as_f64(),
            });
        }
        Ok(Self { plane, theta })
    }

    /// The lift with `θ = arg det w ∈ (−π, π]`.
    pub fn principal(plane: LagrangianPlane<T>) -> Self {
        let theta = arg(plane.souriau_det());
        Self { plane, theta }
    }

    /// The action of `β^r`: `θ ↦ θ + 2πr`.
    pub fn shifted(&self, r: i64) -> Self {
        Self {
            plane: self.plane.clone(),
            theta: self.theta + T::two_pi() * T::from_int(r),
        }
    }

    pub fn n(&self) -> usize {
        self.plane.n()
    }
}

/// `(1/π)[θ − θ′ + i Tr Log(−w w′⁻¹)]` for transversal planes.
pub fn alm_transversal<T: Real>(a: &LagrangianLift<T>, b: &LagrangianLift<T>, tol: &Tolerances<T>) -> Result<i64> {
    let dim = intersection_dim(&a.plane, &b.plane, tol);
    if dim > 0 {
        return Err(IndexError::NotTransversal { dim });
    }
    let m = -(a.plane.souriau() * b.plane.souriau().adjoint());
    let mut angle_sum = T::zero();
    for l in complex_eigenvalues(&m) {
        let phi = arg(l);
        if T::pi() - phi.abs() < tol.branch {
            return Err(IndexError::NotTransversal { dim: 0 });
        }
        angle_sum += phi;
    }
    let value = (a.theta - b.theta - angle_sum) / T::pi();
    round_checked(value, tol.integrality, "ALM index (transversal formula)")
}

/// Candidate auxiliary angles `π/(2k+1)`; `e^{ia}ℓ_P` has Souriau coordinate `e^{2ia}I`.
fn auxiliary_angles<T: Real>() -> impl Iterator<Item = T> {
    (1..=400u32).map(|k| T::pi() / T::from_u32(2 * k + 1).unwrap())
}

/// Smallest angular distance from `−1` of the eigenvalues of `−w e^{−2ia}`.
fn cut_distance<T: Real>(eig_angles: &[T], a: T) -> T {
    let pi = T::pi();
    let two_pi = T::two_pi();
    eig_angles.iter().fold(T::max_value().unwrap(), |acc, &phi| {
        // eigen-angle of −w e^{−2ia} is φ − 2a + π; distance from π mod 2π
        let mut x = (phi - a - a) % two_pi;
        if x < T::zero() {
            x += two_pi;
        }
        acc.min(x.min(two_pi - x)).min(pi)
    })
}

/// The ALM index `μ(ℓ_∞, ℓ′_∞)` for arbitrary pairs.
///
/// Non-transversal pairs go through an auxiliary plane `ℓ″` transversal to
/// both: `μ(ℓ_∞, ℓ′_∞) = μ(ℓ_∞, ℓ″_∞) − μ(ℓ′_∞, ℓ″_∞) + τ(ℓ, ℓ′, ℓ″)`. The
/// value is recomputed with a second auxiliary plane and the two must agree.
pub fn alm<T: Real>(a: &LagrangianLift<T>, b: &LagrangianLift<T>, tol: &Tolerances<T>) -> Result<i64> {
    if a.n() != b.n() {
        return Err(IndexError::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    match alm_transversal(a, b, tol) {
        Err(IndexError::NotTransversal { .. }) => {}
        other => return other,
    }
    let n = a.n();
    let angles = |l: &LagrangianLift<T>| -> Vec<T> { complex_eigenvalues(l.plane.souriau()).into_iter().map(arg).collect() };
    let (ea, eb) = (angles(a), angles(b));
    let margin = T::lit(0.05);
    let mut chosen: Vec<T> = auxiliary_angles::<T>()
        .filter(|&x| cut_distance(&ea, x).min(cut_distance(&eb, x)) > margin)
        .take(2)
        .collect();
    if chosen.len() < 2 {
        let mut ranked: Vec<(T, T)> = auxiliary_angles::<T>()
            .map(|x| (cut_distance(&ea, x).min(cut_distance(&eb, x)), x))
            .filter(|(d, _)| *d > tol.branch * T::lit(10.0))
            .collect();
        ranked.sort_by(|p, q| q.0.partial_cmp(&p.0).unwrap());
        chosen = ranked.into_iter().take(2).map(|(_, x)| x).collect();
    }
    if chosen.len() < 2 {
        return Err(IndexError::AuxiliarySearchFailed);
    }
    let via = |x: T| -> Result<i64> {
        let c = LagrangianLift {
            plane: LagrangianPlane::rotated_p_plane(n, x),
            theta: T::from_usize(2 * n).unwrap() * x,
        };
        Ok(alm_transversal(a, &c, tol)? - alm_transversal(b, &c, tol)? + wall_kashiwara(&a.plane, &b.plane, &c.plane, tol))
    };
    let first = via(chosen[0])?;
    let second = via(chosen[1])?;
    if first != second {
        return Err(IndexError::InconsistentAuxiliary { first, second });
    }
    Ok(first)
}

/// Lifts a list of planes, consecutive ones close enough that `arg det w`
/// moves by less than `π/2` per step, starting from `θ₀`.
pub fn lift_lagrangian_path<T: Real>(
    planes: &[LagrangianPlane<T>],
    theta0: T,
    tol: &Tolerances<T>,
) -> Result<(LagrangianLift<T>, LiftedAngle<T>)> {
    let first = planes
        .first()
        .ok_or_else(|| IndexError::InvalidPath("empty Lagrangian path".into()))?;
    LagrangianLift::new(first.clone(), theta0)?;
    let steps = (planes.len().max(2) - 1) as f64;
    let mut out = LiftedAngle {
        times: vec![T::zero()],
        theta: vec![theta0],
    };
    let mut theta = theta0;
    for (k, w) in planes.windows(2).enumerate() {
        let delta = arg(w[1].souriau_det() * w[0].souriau_det().conj());
        let t = T::lit((k + 1) as f64 / steps);
        if delta.abs() >= T::frac_pi_2() {
            return Err(IndexError::UnderResolved { t: t.as_f64() });
        }
        theta += delta;
        out.times.push(t);
        out.theta.push(theta);
    }
    let _ = tol;
    Ok((
        LagrangianLift {
            plane: planes.last().unwrap().clone(),
            theta,
        },
        out,
    ))
}

/// Lifts `t ↦ plane(S_t)` along a symplectic path, starting from `θ₀`.
pub(crate) fn lift_plane_along<T: Real>(
    path: &SymplecticPath<T>,
    plane: &dyn Fn(&DMatrix<T>) -> LagrangianPlane<T>,
    theta0: T,
    tol: &Tolerances<T>,
) -> Result<LagrangianLift<T>> {
    let lifted = lift_phase(path, &|s: &DMatrix<T>| Ok(plane(s).souriau_det()), Some(theta0), tol)?;
    let end = plane(path.endpoint().matrix());
    LagrangianLift::new(end, lifted.end())
}

/// The Maslov index of a loop, `deg(t ↦ ρ(S_t)²)`.
pub fn loop_maslov<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<i64> {
    let end = path.endpoint().matrix();
    let dim = end.nrows();
    let residual = max_abs(&(end - DMatrix::identity(dim, dim)));
    if residual > tol.integrality * T::one().max(max_abs(end)) {
        return Err(IndexError::NotALoop {
            residual: residual.as_f64(),
        });
    }
    let lifted = path.rho_lift(tol)?;
    let turns = round_checked(lifted.total() / T::two_pi(), tol.integrality, "winding of ρ along a loop")?;
    Ok(2 * turns)
}

/// The relative Maslov index `μ_ℓ(S_∞) = μ(S_∞ℓ_∞, ℓ_∞)`.
pub fn relative_maslov<T: Real>(path: &SymplecticPath<T>, l: &LagrangianPlane<T>, tol: &Tolerances<T>) -> Result<i64> {
    if l.n() != path.n() {
        return Err(IndexError::DimensionMismatch {
            expected: path.n(),
            found: l.n(),
        });
    }
    let base = LagrangianLift::principal(l.clone());
    let end = lift_plane_along(
        path,
        &|s: &DMatrix<T>| l.transform(&SymplecticMatrix::from_matrix_unchecked(s.clone())),
        base.theta,
        tol,
    )?;
    alm(&end, &base, tol)
}

/// The reduced index `m_ℓ(S_∞) = ½(μ_ℓ(S_∞) + n + dim Sℓ ∩ ℓ)`.
pub fn reduced_maslov<T: Real>(path: &SymplecticPath<T>, l: &LagrangianPlane<T>, tol: &Tolerances<T>) -> Result<i64> {
    let mu = relative_maslov(path, l, tol)?;
    reduce(mu, path.endpoint(), l, tol)
}

pub(crate) fn reduce<T: Real>(mu: i64, s: &SymplecticMatrix<T>, l: &LagrangianPlane<T>, tol: &Tolerances<T>) -> Result<i64> {
    let k = intersection_dim(&l.transform(s), l, tol);
    let twice = mu + l.n() as i64 + k as i64;
    round_checked(T::from_int(twice) * T::lit(0.5), tol.integrality, "reduced Maslov index")
}
