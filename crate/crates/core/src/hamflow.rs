//! Monodromy paths `t ↦ S_t(z₀) = Df_t(z₀)` of periodic Hamiltonian orbits.
//!
//! Quadratic Hamiltonians have closed-form flows. General Hamiltonians are
//! integrated together with their variational equation `Ṡ = JH″(z(t))S` by
//! classical RK4; every accepted step is pulled back onto `Sp(n)` by Newton
//! steps on `SᵀJS = J`.

use nalgebra::{DMatrix, DVector};

use crate::maslov::{GeneratorSpec, SymplecticPath};
use crate::scalar::Real;
use crate::symplinalg::{max_abs, standard_j, SymmetricForm, SymplecticMatrix};
use crate::{IndexError, Result, Tolerances};

/// Default number of RK4 steps per period.
pub const DEFAULT_STEPS_PER_PERIOD: usize = 2048;

/// Largest `‖SᵀJS − J‖` accepted after a single step, before projection.
pub const MAX_STEP_DRIFT: f64 = 1e-7;

/// Closure tolerance for orbits given in closed form.
pub const CLOSED_FORM_ORBIT_TOL: f64 = 1e-9;

/// Closure tolerance for integrated orbits.
pub const INTEGRATED_ORBIT_TOL: f64 = 1e-6;

/// Number of times the step count is doubled when the sampled path is too
/// coarse for phase tracking.
const MAX_DOUBLINGS: u32 = 6;

/// A time-independent Hamiltonian on `R²ⁿ`, coordinates `z = (x, p)`.
#[derive(Debug, Clone, PartialEq)]
pub enum HamiltonianSpec<T: Real> {
    /// `H(z) = ½zᵀHz`.
    Quadratic(SymmetricForm<T>),
    /// `H = ½|p|² + Σᵢ Vᵢ(xᵢ)` with `Vᵢ(x) = Σₖ cᵢₖ xᵏ`; one coefficient list
    /// per degree of freedom.
    SeparablePolynomial { coefficients: Vec<Vec<T>> },
    /// `H = ½|p|² + Σⱼ cⱼ|x|^{kⱼ}` with terms `(cⱼ, kⱼ)`.
    CentralPotential { n: usize, terms: Vec<(T, T)> },
}

impl<T: Real> HamiltonianSpec<T> {
    /// `H = (ω_x/2)(p_x² + x²) + (ω_y/2)(p_y² + y²)`.
    pub fn two_oscillator(wx: T, wy: T) -> Self {
        let d = DVector::from_vec(vec![wx, wy, wx, wy]);
        Self::Quadratic(SymmetricForm::new(DMatrix::from_diagonal(&d)))
    }

    /// `H = ½|p|² + ¼|x|⁴` in two degrees of freedom.
    pub fn quartic_central() -> Self {
        Self::CentralPotential {
            n: 2,
            terms: vec![(T::lit(0.25), T::lit(4.0))],
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Quadratic(h) => h.dim() / 2,
            Self::SeparablePolynomial { coefficients } => coefficients.len(),
            Self::CentralPotential { n, .. } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |x: &T| x.as_f64().is_finite();
        match self {
            Self::Quadratic(h) => {
                if h.dim() == 0 || h.dim() % 2 != 0 {
                    return Err(IndexError::InvalidInput("quadratic Hamiltonian must be 2n×2n".into()));
                }
                if !h.matrix().iter().all(finite) {
                    return Err(IndexError::InvalidInput("non-finite Hamiltonian entry".into()));
                }
            }
            Self::SeparablePolynomial { coefficients } => {
                if coefficients.is_empty() || !coefficients.iter().flatten().all(finite) {
                    return Err(IndexError::InvalidInput("polynomial potential needs finite coefficients for n ≥ 1 coordinates".into()));
                }
            }
            Self::CentralPotential { n, terms } => {
                if *n == 0 || !terms.iter().all(|(c, k)| finite(c) && finite(k)) {
                    return Err(IndexError::InvalidInput("central potential needs n ≥ 1 and finite terms".into()));
                }
            }
        }
        Ok(())
    }

    /// `Σⱼ cⱼ kⱼ^{(d)} r^{kⱼ−d}` for the `d`-th radial derivative.
    fn radial(terms: &[(T, T)], r: T, d: u32) -> T {
        terms.iter().fold(T::zero(), |acc, &(c, k)| {
            let mut f = c;
            for i in 0..d {
                f *= k - T::from_int(i as i64);
            }
            acc + f * r.powf(k - T::from_int(d as i64))
        })
    }

    fn poly(coeffs: &[T], x: T, d: usize) -> T {
        coeffs.iter().enumerate().skip(d).fold(T::zero(), |acc, (k, &c)| {
            let mut f = c;
            for i in 0..d {
                f *= T::from_int((k - i) as i64);
            }
            acc + f * x.powi((k - d) as i32)
        })
    }

    pub fn energy(&self, z: &DVector<T>) -> T {
        let n = self.n();
        let half = T::lit(0.5);
        let kinetic = || z.rows(n, n).norm_squared() * half;
        match self {
            Self::Quadratic(h) => z.dot(&(h.matrix() * z)) * half,
            Self::SeparablePolynomial { coefficients } => {
                kinetic() + coefficients.iter().enumerate().fold(T::zero(), |a, (i, c)| a + Self::poly(c, z[i], 0))
            }
            Self::CentralPotential { terms, .. } => kinetic() + Self::radial(terms, z.rows(0, n).norm(), 0),
        }
    }

    /// `∇H(z) = (∂H/∂x, ∂H/∂p)`.
    pub fn gradient(&self, z: &DVector<T>) -> DVector<T> {
        let n = self.n();
        let mut g = DVector::zeros(2 * n);
        match self {
            Self::Quadratic(h) => return h.matrix() * z,
            Self::SeparablePolynomial { coefficients } => {
                for (i, c) in coefficients.iter().enumerate() {
                    g[i] = Self::poly(c, z[i], 1);
                }
            }
            Self::CentralPotential { terms, .. } => {
                let x = z.rows(0, n);
                let r = x.norm();
                if r > T::zero() {
                    g.rows_mut(0, n).copy_from(&(x * (Self::radial(terms, r, 1) / r)));
                }
            }
        }
        g.rows_mut(n, n).copy_from(&z.rows(n, n));
        g
    }

    /// `H″(z)`.
    pub fn hessian(&self, z: &DVector<T>) -> DMatrix<T> {
        let n = self.n();
        let mut h = DMatrix::zeros(2 * n, 2 * n);
        match self {
            Self::Quadratic(q) => return q.matrix().clone(),
            Self::SeparablePolynomial { coefficients } => {
                for (i, c) in coefficients.iter().enumerate() {
                    h[(i, i)] = Self::poly(c, z[i], 2);
                }
            }
            Self::CentralPotential { terms, .. } => {
                let x = z.rows(0, n).into_owned();
                let r = x.norm();
                if r > T::zero() {
                    let u = &x / r;
                    let d1 = Self::radial(terms, r, 1) / r;
                    let d2 = Self::radial(terms, r, 2);
                    let uu = &u * u.transpose();
                    let block = &uu * d2 + (DMatrix::identity(n, n) - uu) * d1;
                    h.view_mut((0, 0), (n, n)).copy_from(&block);
                }
            }
        }
        for i in n..2 * n {
            h[(i, i)] = T::one();
        }
        h
    }
}

/// A periodic orbit `f_T(z₀) = z₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicOrbit<T: Real> {
    z0: DVector<T>,
    period: T,
    closure_residual: T,
}

impl<T: Real> PeriodicOrbit<T> {
    /// Checks closure by integrating one period with `steps` steps.
    pub fn new(h: &HamiltonianSpec<T>, z0: DVector<T>, period: T, steps: usize, tol: &Tolerances<T>) -> Result<Self> {
        h.validate()?;
        if z0.len() != 2 * h.n() {
            return Err(IndexError::DimensionMismatch {
                expected: 2 * h.n(),
                found: z0.len(),
            });
        }
        if period <= T::zero() {
            return Err(IndexError::InvalidInput("period must be positive".into()));
        }
        let flow = integrate_flow(h, &z0, period, steps, tol)?;
        let residual = (flow.points.last().unwrap() - &z0).norm();
        if residual > T::lit(INTEGRATED_ORBIT_TOL) * T::one().max(z0.norm()) {
            return Err(IndexError::OrbitNotClosed { residual: residual.as_f64() });
        }
        Ok(Self {
            z0,
            period,
            closure_residual: residual,
        })
    }

    /// The libration `z₀ = e_x` of [`HamiltonianSpec::two_oscillator`], period
    /// `2π/ω_x`.
    pub fn x_libration(wx: T, wy: T) -> Result<Self> {
        if wx <= T::zero() || wy <= T::zero() {
            return Err(IndexError::InvalidInput("frequencies must be positive".into()));
        }
        let mut z0 = DVector::zeros(4);
        z0[0] = T::one();
        let period = T::two_pi() / wx;
        let h = HamiltonianSpec::two_oscillator(wx, wy);
        let HamiltonianSpec::Quadratic(q) = &h else { unreachable!() };
        let flow = (standard_j::<T>(2) * q.matrix() * period).exp();
        let residual = (flow * &z0 - &z0).norm();
        closed_form(z0, period, residual)
    }

    /// The circular orbit of radius `radius` in the `(x₁, x₂)` plane of a
    /// central potential: `v² = rV′(r)`, `T = 2πr/v`.
    pub fn circular_orbit(h: &HamiltonianSpec<T>, radius: T) -> Result<Self> {
        let HamiltonianSpec::CentralPotential { n, terms } = h else {
            return Err(IndexError::InvalidInput("circular orbits need a central potential".into()));
        };
        h.validate()?;
        if *n < 2 || radius <= T::zero() {
            return Err(IndexError::InvalidInput("circular orbit needs n ≥ 2 and a positive radius".into()));
        }
        let force = HamiltonianSpec::radial(terms, radius, 1);
        if force <= T::zero() {
            return Err(IndexError::InvalidInput("potential is not attractive at this radius".into()));
        }
        let v = (radius * force).sqrt();
        let omega = v / radius;
        let period = T::two_pi() / omega;
        let mut z0 = DVector::zeros(2 * n);
        z0[0] = radius;
        z0[n + 1] = v;
        let (c, s) = ((omega * period).cos(), (omega * period).sin());
        let mut end = DVector::zeros(2 * n);
        end[0] = radius * c;
        end[1] = radius * s;
        end[*n] = -v * s;
        end[n + 1] = v * c;
        let residual = (end - &z0).norm();
        closed_form(z0, period, residual)
    }

    pub fn z0(&self) -> &DVector<T> {
        &self.z0
    }

    pub fn period(&self) -> T {
        self.period
    }

    pub fn closure_residual(&self) -> T {
        self.closure_residual
    }
}

fn closed_form<T: Real>(z0: DVector<T>, period: T, residual: T) -> Result<PeriodicOrbit<T>> {
    if residual > T::lit(CLOSED_FORM_ORBIT_TOL) * T::one().max(z0.norm()) {
        return Err(IndexError::OrbitNotClosed { residual: residual.as_f64() });
    }
    Ok(PeriodicOrbit {
        z0,
        period,
        closure_residual: residual,
    })
}

/// Samples of an integrated trajectory and its linearized flow.
#[derive(Debug, Clone)]
pub struct FlowRecord<T: Real> {
    pub times: Vec<T>,
    pub points: Vec<DVector<T>>,
    pub matrices: Vec<DMatrix<T>>,
    /// Largest `‖SᵀJS − J‖` seen before projection.
    pub max_drift: T,
    /// Largest `|H(z(t)) − H(z₀)|`.
    pub max_energy_error: T,
}

/// Newton steps `S ← S(I − ½G⁻¹(G − J))`, `G = SᵀJS`.
fn resymplectify<T: Real>(s: &mut DMatrix<T>, j: &DMatrix<T>) {
    let dim = s.nrows();
    let id = DMatrix::<T>::identity(dim, dim);
    for _ in 0..3 {
        let g = s.transpose() * j * &*s;
        let defect = &g - j;
        if max_abs(&defect) <= T::default_epsilon() * T::lit(8.0) {
            break;
        }
        let Some(ginv) = g.try_inverse() else { break };
        *s = &*s * (&id - ginv * defect * T::lit(0.5));
    }
}

/// RK4 for `ż = J∇H(z)`, `Ṡ = JH″(z)S` from `(z₀, I)` over `[0, duration]`.
pub fn integrate_flow<T: Real>(
    h: &HamiltonianSpec<T>,
    z0: &DVector<T>,
    duration: T,
    steps: usize,
    _tol: &Tolerances<T>,
) -> Result<FlowRecord<T>> {
    h.validate()?;
    let n = h.n();
    let dim = 2 * n;
    let j = standard_j::<T>(n);
    let steps = steps.max(1);
    let dt = duration / T::from_usize(steps).unwrap();
    let half = T::lit(0.5);
    let sixth = T::one() / T::lit(6.0);
    let rhs = |z: &DVector<T>, s: &DMatrix<T>| (&j * h.gradient(z), &j * h.hessian(z) * s);
    let e0 = h.energy(z0);
    let mut z = z0.clone();
    let mut s = DMatrix::<T>::identity(dim, dim);
    let mut rec = FlowRecord {
        times: vec![T::zero()],
        points: vec![z.clone()],
        matrices: vec![s.clone()],
        max_drift: T::zero(),
        max_energy_error: T::zero(),
    };
    for k in 1..=steps {
        let (k1z, k1s) = rhs(&z, &s);
        let (k2z, k2s) = rhs(&(&z + &k1z * (dt * half)), &(&s + &k1s * (dt * half)));
        let (k3z, k3s) = rhs(&(&z + &k2z * (dt * half)), &(&s + &k2s * (dt * half)));
        let (k4z, k4s) = rhs(&(&z + &k3z * dt), &(&s + &k3s * dt));
        z += (k1z + k2z * T::lit(2.0) + k3z * T::lit(2.0) + k4z) * (dt * sixth);
        s += (k1s + k2s * T::lit(2.0) + k3s * T::lit(2.0) + k4s) * (dt * sixth);
        let drift = max_abs(&(s.transpose() * &j * &s - &j));
        rec.max_drift = rec.max_drift.max(drift);
        if drift > T::lit(MAX_STEP_DRIFT) {
            return Err(IndexError::SymplecticDriftExceeded { drift: drift.as_f64() });
        }
        resymplectify(&mut s, &j);
        rec.max_energy_error = rec.max_energy_error.max((h.energy(&z) - e0).abs());
        rec.times.push(dt * T::from_usize(k).unwrap());
        rec.points.push(z.clone());
        rec.matrices.push(s.clone());
    }
    Ok(rec)
}

/// `(f_t(z₀), Df_t(z₀))`.
pub fn flow_derivative<T: Real>(
    h: &HamiltonianSpec<T>,
    z0: &DVector<T>,
    t: T,
    steps: usize,
    tol: &Tolerances<T>,
) -> Result<(DVector<T>, SymplecticMatrix<T>)> {
    let mut rec = integrate_flow(h, z0, t, steps, tol)?;
    let s = SymplecticMatrix::new(rec.matrices.pop().unwrap(), tol)?;
    Ok((rec.points.pop().unwrap(), s))
}

/// The exact path `S_t = Σ_t ⊕ S̃_t`, `Σ_t = e^{2πtJ₁}`, `S̃_t = e^{χtJ₁}`,
/// `χ = 2πω_y/ω_x`, over `t ∈ [0, reps]` (rescaled to `[0, 1]`).
pub fn oscillator_monodromy<T: Real>(wx: T, wy: T, reps: u32, tol: &Tolerances<T>) -> Result<SymplecticPath<T>> {
    if wx <= T::zero() || wy <= T::zero() || reps == 0 {
        return Err(IndexError::InvalidInput("frequencies must be positive and reps ≥ 1".into()));
    }
    let r = T::from_int(reps as i64);
    let chi = T::two_pi() * wy / wx;
    GeneratorSpec::DirectSum(
        Box::new(GeneratorSpec::Rotation { chi: T::two_pi(), fraction: r }),
        Box::new(GeneratorSpec::Rotation { chi, fraction: r }),
    )
    .build(tol)
}

/// The monodromy path of `reps` turns around `orbit`, `steps` RK4 steps per
/// period. The step count is doubled while the samples are too coarse for
/// phase tracking.
pub fn integrate_monodromy<T: Real>(
    h: &HamiltonianSpec<T>,
    orbit: &PeriodicOrbit<T>,
    reps: u32,
    steps: usize,
    tol: &Tolerances<T>,
) -> Result<SymplecticPath<T>> {
    if reps == 0 {
        return Err(IndexError::InvalidInput("reps must be ≥ 1".into()));
    }
    let duration = orbit.period * T::from_int(reps as i64);
    let mut per_period = steps.max(1);
    for attempt in 0..=MAX_DOUBLINGS {
        let rec = integrate_flow(h, &orbit.z0, duration, per_period * reps as usize, tol)?;
        let residual = (rec.points.last().unwrap() - &orbit.z0).norm();
        if residual > T::lit(INTEGRATED_ORBIT_TOL) * T::one().max(orbit.z0.norm()) {
            return Err(IndexError::OrbitNotClosed { residual: residual.as_f64() });
        }
        match SymplecticPath::from_samples(rec.times, rec.matrices, tol) {
            Err(IndexError::UnderResolved { .. }) if attempt < MAX_DOUBLINGS => per_period *= 2,
            other => return other,
        }
    }
    unreachable!("loop returns on the last attempt")
}

/// The monodromy path started from `z′ = f_{t′}(z₀)` instead of `z₀`.
pub fn origin_shift_monodromy<T: Real>(
    h: &HamiltonianSpec<T>,
    orbit: &PeriodicOrbit<T>,
    t_shift: T,
    reps: u32,
    steps: usize,
    tol: &Tolerances<T>,
) -> Result<SymplecticPath<T>> {
    if t_shift == T::zero() {
        return integrate_monodromy(h, orbit, reps, steps, tol);
    }
    let frac = (t_shift / orbit.period).abs().as_f64();
    let shift_steps = ((steps as f64) * frac).ceil().max(1.0) as usize;
    let rec = integrate_flow(h, &orbit.z0, t_shift, shift_steps, tol)?;
    let shifted = PeriodicOrbit {
        z0: rec.points.last().unwrap().clone(),
        period: orbit.period,
        closure_residual: orbit.closure_residual,
    };
    integrate_monodromy(h, &shifted, reps, steps, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::czindex::{nu, nu_half, HalfInt};
    use crate::random::random_symmetric;
    use crate::symplinalg::rotation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn tol() -> Tolerances<f64> {
        Tolerances::default()
    }

    #[test]
    fn quadratic_flow_matches_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=2 {
            let q = random_symmetric::<f64, _>(&mut rng, 2 * n, 1.0);
            let gen = standard_j::<f64>(n) * q.matrix();
            let h = HamiltonianSpec::Quadratic(q);
            let z0 = DVector::zeros(2 * n);
            let rec = integrate_flow(&h, &z0, 2.0, 2048, &tol()).unwrap();
            for (t, s) in rec.times.iter().zip(&rec.matrices) {
                assert!(max_abs(&(s - (&gen * *t).exp())) < 1e-7);
            }
        }
    }

    #[test]
    fn zero_hamiltonian_gives_constant_identity() {
        let h = HamiltonianSpec::Quadratic(SymmetricForm::new(DMatrix::<f64>::zeros(4, 4)));
        let orbit = PeriodicOrbit::new(&h, DVector::from_vec(vec![1.0, 2.0, 0.0, 0.0]), 1.0, 64, &tol()).unwrap();
        let p = integrate_monodromy(&h, &orbit, 1, 64, &tol()).unwrap();
        for s in p.samples() {
            assert!(max_abs(&(s.matrix() - DMatrix::identity(4, 4))) < 1e-14);
        }
    }

    #[test]
    fn oscillator_endpoints() {
        let p = oscillator_monodromy(1.0, 1.0, 1, &tol()).unwrap();
        assert!(max_abs(&(p.endpoint().matrix() - DMatrix::identity(4, 4))) < 1e-12);
        let wy = 2f64.sqrt();
        let chi = 2.0 * PI * wy;
        let p = oscillator_monodromy(1.0, wy, 1, &tol()).unwrap();
        let mut s1 = DMatrix::zeros(4, 4);
        s1[(0, 0)] = 1.0;
        s1[(2, 2)] = 1.0;
        s1[(1, 1)] = chi.cos();
        s1[(1, 3)] = chi.sin();
        s1[(3, 1)] = -chi.sin();
        s1[(3, 3)] = chi.cos();
        assert!(max_abs(&(p.endpoint().matrix() - s1)) < 1e-12);
        for r in 1..=3u32 {
            let sigma = GeneratorSpec::Rotation { chi: 2.0 * PI, fraction: r as f64 }.build(&tol()).unwrap();
            assert_eq!(nu(&sigma, &tol()).unwrap(), -2 * r as i64);
        }
    }

    #[test]
    fn integrated_oscillator_matches_closed_form() {
        let wy = 2f64.sqrt();
        let h = HamiltonianSpec::two_oscillator(1.0, wy);
        let orbit = PeriodicOrbit::x_libration(1.0, wy).unwrap();
        let p = integrate_monodromy(&h, &orbit, 1, DEFAULT_STEPS_PER_PERIOD, &tol()).unwrap();
        let exact = oscillator_monodromy(1.0, wy, 1, &tol()).unwrap();
        assert!(max_abs(&(p.endpoint().matrix() - exact.endpoint().matrix())) < 1e-7);
        assert_eq!(nu(&p, &tol()).unwrap(), -5);
    }

    #[test]
    fn quartic_circular_orbit() {
        let h = HamiltonianSpec::<f64>::quartic_central();
        let orbit = PeriodicOrbit::circular_orbit(&h, 1.0).unwrap();
        assert!((orbit.period() - 2.0 * PI).abs() < 1e-12);
        assert_eq!(orbit.z0().as_slice(), &[1.0, 0.0, 0.0, 1.0]);
        let rec = integrate_flow(&h, orbit.z0(), orbit.period(), DEFAULT_STEPS_PER_PERIOD, &tol()).unwrap();
        assert!((rec.points.last().unwrap() - orbit.z0()).norm() < 1e-6);
        assert!(rec.max_energy_error <= 1e-6 * h.energy(orbit.z0()).abs());
        assert!(rec.max_drift <= MAX_STEP_DRIFT);
        let p = integrate_monodromy(&h, &orbit, 1, DEFAULT_STEPS_PER_PERIOD, &tol()).unwrap();
        assert!(p.endpoint().residual() < 1e-10);
    }

    #[test]
    fn separable_polynomial_matches_quadratic() {
        // V(x) = ½ω²x² per coordinate is the oscillator with unit mass
        let h = HamiltonianSpec::SeparablePolynomial { coefficients: vec![vec![0.0, 0.0, 2.0], vec![0.0, 0.0, 0.5]] };
        let z0 = DVector::from_vec(vec![0.3, -0.2, 0.1, 0.4]);
        let rec = integrate_flow(&h, &z0, 1.0, 1024, &tol()).unwrap();
        let q = SymmetricForm::new(DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 1.0, 1.0, 1.0])));
        let exact = (standard_j::<f64>(2) * q.matrix()).exp();
        assert!(max_abs(&(rec.matrices.last().unwrap() - &exact)) < 1e-9);
        assert!((rec.points.last().unwrap() - &exact * &z0).norm() < 1e-9);
    }

    #[test]
    fn unclosed_orbit_is_rejected() {
        let h = HamiltonianSpec::<f64>::quartic_central();
        let z0 = DVector::from_vec(vec![1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(PeriodicOrbit::new(&h, z0, 5.0, 1024, &tol()), Err(IndexError::OrbitNotClosed { .. })));
    }

    #[test]
    fn origin_shift() {
        let h = HamiltonianSpec::<f64>::quartic_central();
        let orbit = PeriodicOrbit::circular_orbit(&h, 1.0).unwrap();
        let steps = DEFAULT_STEPS_PER_PERIOD;
        let base = integrate_monodromy(&h, &orbit, 1, steps, &tol()).unwrap();
        let same = origin_shift_monodromy(&h, &orbit, 0.0, 1, steps, &tol()).unwrap();
        assert_eq!(base.samples(), same.samples());
        let nu0 = nu_half(&base, &tol()).unwrap();
        // one Jordan block at the eigenvalue 1: dim Ker(S − I) = 1
        assert_eq!(nu0, HalfInt::half(-11));
        let t = orbit.period();
        for shift in [t / 7.0, t / 3.0, t / 2.0] {
            let shifted = origin_shift_monodromy(&h, &orbit, shift, 1, steps, &tol()).unwrap();
            let (_, st) = flow_derivative(&h, orbit.z0(), shift, steps, &tol()).unwrap();
            let conj = st.matrix() * base.endpoint().matrix() * st.inverse().matrix();
            assert!(max_abs(&(shifted.endpoint().matrix() - conj)) < 1e-6);
            assert_eq!(nu_half(&shifted, &tol()).unwrap(), nu0);
        }
    }

    #[test]
    fn rotation_block_convention() {
        let p = oscillator_monodromy(1.0, 0.5, 1, &tol()).unwrap();
        let s = p.eval(0.25).unwrap();
        assert!(max_abs(&(s.view((0, 0), (1, 1)).into_owned() - rotation(PI / 2.0).view((0, 0), (1, 1)))) < 1e-12);
    }
}
