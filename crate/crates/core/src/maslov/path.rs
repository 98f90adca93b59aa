//! Sampled paths in `Sp(n)` starting at the identity.

use std::fmt;
use std::sync::Arc;

use nalgebra::{Complex, DMatrix};

use crate::scalar::{arg, Real, Tolerances};
use crate::symplinalg::{direct_sum_matrix, max_abs, rho, standard_j, SymplecticMatrix};
use crate::{IndexError, Result};

/// A matrix-valued function of `t ∈ [0, 1]`.
pub type MatrixFn<T> = Arc<dyn Fn(T) -> DMatrix<T> + Send + Sync>;

/// A continuous path `t ↦ S_t` in `Sp(n)` on `[0, 1]` with `S₀ = I`,
/// representing an element of the universal covering group.
///
/// Paths built from a generator can be evaluated anywhere, so lifting may
/// bisect steps that rotate too fast. Paths built from raw samples cannot.
#[derive(Clone)]
pub struct SymplecticPath<T: Real> {
    n: usize,
    times: Vec<T>,
    samples: Vec<SymplecticMatrix<T>>,
    generator: Option<MatrixFn<T>>,
    max_step_winding: T,
}

impl<T: Real> fmt::Debug for SymplecticPath<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymplecticPath")
            .field("n", &self.n)
            .field("samples", &self.samples.len())
            .field("generator", &self.generator.is_some())
            .field("max_step_winding", &self.max_step_winding)
            .finish()
    }
}

fn validate<T: Real>(m: DMatrix<T>, n: usize, tol: &Tolerances<T>) -> Result<SymplecticMatrix<T>> {
    if m.nrows() != 2 * n || m.ncols() != 2 * n {
        return Err(IndexError::DimensionMismatch {
            expected: 2 * n,
            found: m.nrows(),
        });
    }
    SymplecticMatrix::new(m, tol)
}

impl<T: Real> SymplecticPath<T> {
    /// Samples `f` on a uniform grid of `grid` steps, then bisects every step
    /// over which `arg ρ` moves by `π/2` or more.
    pub fn from_fn<F>(n: usize, f: F, grid: usize, tol: &Tolerances<T>) -> Result<Self>
    where
        F: Fn(T) -> DMatrix<T> + Send + Sync + 'static,
    {
        Self::from_generator(n, Arc::new(f), grid, tol)
    }

    pub fn from_generator(n: usize, f: MatrixFn<T>, grid: usize, tol: &Tolerances<T>) -> Result<Self> {
        let grid = grid.max(1);
        let start = f(T::zero());
        let id = DMatrix::<T>::identity(2 * n, 2 * n);
        if start.nrows() != 2 * n || max_abs(&(&start - &id)) > tol.sympl {
            return Err(IndexError::InvalidPath("path must start at the identity".into()));
        }
        let mut times = Vec::with_capacity(grid + 1);
        let mut samples = Vec::with_capacity(grid + 1);
        times.push(T::zero());
        samples.push(SymplecticMatrix::identity(n));
        for k in 1..=grid {
            let t = T::from_usize(k).unwrap() / T::from_usize(grid).unwrap();
            times.push(t);
            samples.push(validate(f(t), n, tol)?);
        }
        let mut path = Self {
            n,
            times,
            samples,
            generator: Some(f),
            max_step_winding: T::zero(),
        };
        let lifted = lift_phase(&path, &|s: &DMatrix<T>| rho(&SymplecticMatrix::from_matrix_unchecked(s.clone()), tol), None, tol)?;
        if lifted.times.len() != path.times.len() {
            let f = path.generator.clone().unwrap();
            path.samples = lifted
                .times
                .iter()
                .map(|&t| {
                    if t == T::zero() {
                        Ok(SymplecticMatrix::identity(n))
                    } else {
                        validate(f(t), n, tol)
                    }
                })
                .collect::<Result<_>>()?;
            path.times = lifted.times.clone();
        }
        path.max_step_winding = lifted.max_step();
        Ok(path)
    }

    /// A path given only by samples. Times are rescaled to `[0, 1]`; the first
    /// sample must be the identity and consecutive samples must be close
    /// enough that `arg ρ` moves by less than `π/2` per step.
    pub fn from_samples(times: Vec<T>, samples: Vec<DMatrix<T>>, tol: &Tolerances<T>) -> Result<Self> {
        if times.len() != samples.len() || times.len() < 2 {
            return Err(IndexError::InvalidPath(format!(
                "need at least two samples with matching times ({} times, {} samples)",
                times.len(),
                samples.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(IndexError::InvalidPath("times must be strictly increasing".into()));
        }
        let n = samples[0].nrows() / 2;
        if n == 0 {
            return Err(IndexError::InvalidPath("empty matrices".into()));
        }
        let id = DMatrix::<T>::identity(2 * n, 2 * n);
        if samples[0].shape() != id.shape() || max_abs(&(&samples[0] - &id)) > tol.sympl {
            return Err(IndexError::InvalidPath("path must start at the identity".into()));
        }
        let (t0, t1) = (times[0], *times.last().unwrap());
        let times: Vec<T> = times.iter().map(|&t| (t - t0) / (t1 - t0)).collect();
        let mut validated = vec![SymplecticMatrix::identity(n)];
        for m in samples.into_iter().skip(1) {
            validated.push(validate(m, n, tol)?);
        }
        let mut path = Self {
            n,
            times,
            samples: validated,
            generator: None,
            max_step_winding: T::zero(),
        };
        path.max_step_winding = path.rho_lift(tol)?.max_step();
        Ok(path)
    }

    /// The constant path at the identity.
    pub fn identity(n: usize) -> Self {
        let f: MatrixFn<T> = Arc::new(move |_| DMatrix::identity(2 * n, 2 * n));
        Self {
            n,
            times: vec![T::zero(), T::one()],
            samples: vec![SymplecticMatrix::identity(n), SymplecticMatrix::identity(n)],
            generator: Some(f),
            max_step_winding: T::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn samples(&self) -> &[SymplecticMatrix<T>] {
        &self.samples
    }

    pub fn endpoint(&self) -> &SymplecticMatrix<T> {
        self.samples.last().unwrap()
    }

    pub fn has_generator(&self) -> bool {
        self.generator.is_some()
    }

    pub fn generator(&self) -> Option<&MatrixFn<T>> {
        self.generator.as_ref()
    }

    /// Largest `|Δ arg ρ|` between consecutive samples.
    pub fn max_step_winding(&self) -> T {
        self.max_step_winding
    }

    /// `S_t`, from the generator when present or from an exact sample time.
    pub fn eval(&self, t: T) -> Option<DMatrix<T>> {
        match &self.generator {
            Some(f) => Some(f(t)),
            None => self
                .times
                .iter()
                .position(|&s| s == t)
                .map(|k| self.samples[k].matrix().clone()),
        }
    }

    fn grid(&self) -> usize {
        self.times.len() - 1
    }

    fn map_pointwise(
        &self,
        grid: usize,
        tol: &Tolerances<T>,
        gen: impl Fn(&MatrixFn<T>) -> MatrixFn<T>,
        sample: impl Fn(&DMatrix<T>) -> DMatrix<T>,
    ) -> Result<Self> {
        match &self.generator {
            Some(f) => Self::from_generator(self.n, gen(f), grid, tol),
            None => {
                let samples = self.samples.iter().map(|s| sample(s.matrix())).collect();
                Self::from_samples(self.times.clone(), samples, tol)
            }
        }
    }

    /// The pointwise inverse `t ↦ S_t⁻¹`.
    pub fn inverse(&self, tol: &Tolerances<T>) -> Result<Self> {
        let n = self.n;
        let inv = move |m: &DMatrix<T>| {
            let j = standard_j::<T>(n);
            -(&j * m.transpose() * &j)
        };
        self.map_pointwise(
            self.grid(),
            tol,
            |f| {
                let f = f.clone();
                Arc::new(move |t| inv(&f(t)))
            },
            inv,
        )
    }

    /// The pointwise power `t ↦ S_t^r`, a representative of `S_∞^r`.
    pub fn pow(&self, r: u32, tol: &Tolerances<T>) -> Result<Self> {
        if r == 0 {
            return Ok(Self::identity(self.n));
        }
        let power = move |m: &DMatrix<T>| {
            let mut out = m.clone();
            for _ in 1..r {
                out = &out * m;
            }
            out
        };
        self.map_pointwise(
            self.grid() * r as usize,
            tol,
            |f| {
                let f = f.clone();
                Arc::new(move |t| power(&f(t)))
            },
            power,
        )
    }

    fn combine(
        &self,
        other: &Self,
        n: usize,
        tol: &Tolerances<T>,
        op: impl Fn(&DMatrix<T>, &DMatrix<T>) -> DMatrix<T> + Send + Sync + Clone + 'static,
    ) -> Result<Self> {
        match (&self.generator, &other.generator) {
            (Some(f), Some(g)) => {
                let (f, g) = (f.clone(), g.clone());
                let h: MatrixFn<T> = Arc::new(move |t| op(&f(t), &g(t)));
                Self::from_generator(n, h, self.grid() + other.grid(), tol)
            }
            _ => {
                if self.times != other.times {
                    return Err(IndexError::InvalidPath(
                        "combining sampled paths requires identical time grids".into(),
                    ));
                }
                let samples = self
                    .samples
                    .iter()
                    .zip(&other.samples)
                    .map(|(a, b)| op(a.matrix(), b.matrix()))
                    .collect();
                Self::from_samples(self.times.clone(), samples, tol)
            }
        }
    }

    /// The pointwise product `t ↦ S_t S′_t`, the group law of the universal cover.
    pub fn product(&self, other: &Self, tol: &Tolerances<T>) -> Result<Self> {
        if self.n != other.n {
            return Err(IndexError::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.combine(other, self.n, tol, |a, b| a * b)
    }

    /// The path `t ↦ S_t ⊕ S′_t` in `Sp(n + n′)`.
    pub fn direct_sum(&self, other: &Self, tol: &Tolerances<T>) -> Result<Self> {
        self.combine(other, self.n + other.n, tol, |a, b| direct_sum_matrix(a, b))
    }

    /// Continuous lift of `arg ρ(S_t)`.
    pub fn rho_lift(&self, tol: &Tolerances<T>) -> Result<LiftedAngle<T>> {
        lift_phase(self, &|s: &DMatrix<T>| rho(&SymplecticMatrix::from_matrix_unchecked(s.clone()), tol), None, tol)
    }
}

/// Samples `θ(t_k)` of a continuous branch of the argument of a unit-modulus
/// function along a path.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedAngle<T: Real> {
    pub times: Vec<T>,
    pub theta: Vec<T>,
}

impl<T: Real> LiftedAngle<T> {
    pub fn start(&self) -> T {
        self.theta[0]
    }

    pub fn end(&self) -> T {
        *self.theta.last().unwrap()
    }

    /// `θ_N − θ₀`.
    pub fn total(&self) -> T {
        self.end() - self.start()
    }

    /// Largest increment between consecutive samples.
    pub fn max_step(&self) -> T {
        self.theta
            .windows(2)
            .fold(T::zero(), |acc, w| acc.max((w[1] - w[0]).abs()))
    }
}

/// Lifts `t ↦ arg phase(S_t)` along the path, starting from `theta0` (or the
/// principal argument at `t = 0`).
///
/// A step over which the phase turns by `π/2` or more is bisected through the
/// generator, up to `tol.max_refine_depth` times; without a generator the
/// step is rejected.
pub fn lift_phase<T: Real>(
    path: &SymplecticPath<T>,
    phase: &dyn Fn(&DMatrix<T>) -> Result<Complex<T>>,
    theta0: Option<T>,
    tol: &Tolerances<T>,
) -> Result<LiftedAngle<T>> {
    let limit = T::frac_pi_2();
    let half = T::lit(0.5);
    let mut cur_t = path.times[0];
    let mut cur_z = phase(path.samples[0].matrix())?;
    let mut theta = theta0.unwrap_or_else(|| arg(cur_z));
    let mut out = LiftedAngle {
        times: vec![cur_t],
        theta: vec![theta],
    };
    for k in 1..path.samples.len() {
        let mut pending = vec![(path.times[k], phase(path.samples[k].matrix())?, 0u32)];
        while let Some(&(t, z, depth)) = pending.last() {
            let delta = arg(z * cur_z.conj());
            if delta.abs() < limit {
                theta += delta;
                cur_t = t;
                cur_z = z;
                out.times.push(t);
                out.theta.push(theta);
                pending.pop();
                continue;
            }
            match path.generator() {
                Some(f) if depth < tol.max_refine_depth => {
                    let mid = (cur_t + t) * half;
                    pending.push((mid, phase(&f(mid))?, depth + 1));
                }
                _ => return Err(IndexError::UnderResolved { t: t.as_f64() }),
            }
        }
    }
    Ok(out)
}
