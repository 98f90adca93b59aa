//! Named path generators.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::path::{MatrixFn, SymplecticPath};
use crate::scalar::Real;
use crate::symplinalg::{direct_sum_matrix, max_abs, rotation, standard_j, SymmetricForm, SymplecticMatrix};
use crate::{IndexError, Result, Tolerances};

/// A named recipe for a path in `Sp(n)`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec<T: Real> {
    /// `t ↦ exp(t·χ·fraction·J₁)` in `Sp(1)`.
    Rotation { chi: T, fraction: T },
    /// The flow of `H = (ω/2)(x² + p²)` for time `period`: `t ↦ exp(t·ω·period·J₁)`.
    Oscillator { omega: T, period: T },
    /// `α^r` in `Sp(n)`: `t ↦ exp(−2πrtJ₁) ⊕ I₂ₙ₋₂`.
    AlphaPower { r: i64, n: usize },
    /// The flow of the quadratic Hamiltonian `½zᵀHz` for time `duration`.
    HamiltonianFlow { h: SymmetricForm<T>, duration: T },
    DirectSum(Box<GeneratorSpec<T>>, Box<GeneratorSpec<T>>),
    /// Pointwise product.
    Product(Box<GeneratorSpec<T>>, Box<GeneratorSpec<T>>),
    /// Symplectic Cayley interpolation through matrices at the given times.
    MatrixInterpolation { times: Vec<T>, matrices: Vec<DMatrix<T>> },
}

/// `S(s) = S_k (I + sK)(I − sK)⁻¹` with `K = (X − I)(X + I)⁻¹`, `X = S_k⁻¹S_{k+1}`.
struct CayleySegment<T: Real> {
    start: DMatrix<T>,
    k: DMatrix<T>,
}

impl<T: Real> CayleySegment<T> {
    fn new(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<Self> {
        let dim = a.nrows();
        let id = DMatrix::<T>::identity(dim, dim);
        let j = standard_j::<T>(dim / 2);
        let x = -(&j * a.transpose() * &j) * b;
        let k = (&x - &id)
            * (&x + &id).try_inverse().ok_or_else(|| {
                IndexError::InvalidPath("consecutive samples differ by a map with eigenvalue −1".into())
            })?;
        Ok(Self { start: a.clone(), k })
    }

    fn eval(&self, s: T) -> DMatrix<T> {
        let dim = self.k.nrows();
        let id = DMatrix::<T>::identity(dim, dim);
        let num = &id + &self.k * s;
        let den = (&id - &self.k * s).try_inverse().expect("Cayley segment stays invertible");
        &self.start * num * den
    }
}

fn interpolator<T: Real>(times: &[T], mats: &[DMatrix<T>]) -> Result<MatrixFn<T>> {
    if times.len() != mats.len() || times.len() < 2 || times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(IndexError::InvalidPath("interpolation needs ≥ 2 samples at increasing times".into()));
    }
    let (t0, t1) = (times[0], *times.last().unwrap());
    let ts: Vec<T> = times.iter().map(|&t| (t - t0) / (t1 - t0)).collect();
    let segs = mats
        .windows(2)
        .map(|w| CayleySegment::new(&w[0], &w[1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(Arc::new(move |t: T| {
        let k = match ts.iter().position(|&s| s > t) {
            Some(0) => 0,
            Some(i) => i - 1,
            None => segs.len() - 1,
        }
        .min(segs.len() - 1);
        let s = (t - ts[k]) / (ts[k + 1] - ts[k]);
        segs[k].eval(s)
    }))
}

impl<T: Real> GeneratorSpec<T> {
    /// Degrees of freedom of the generated path.
    pub fn dim(&self) -> usize {
        match self {
            Self::Rotation { .. } | Self::Oscillator { .. } => 1,
            Self::AlphaPower { n, .. } => *n,
            Self::HamiltonianFlow { h, .. } => h.dim() / 2,
            Self::DirectSum(a, b) => a.dim() + b.dim(),
            Self::Product(a, _) => a.dim(),
            Self::MatrixInterpolation { matrices, .. } => matrices.first().map_or(0, |m| m.nrows() / 2),
        }
    }

    /// Rough bound on the total rotation of the path, used to size the grid.
    fn speed(&self) -> f64 {
        match self {
            Self::Rotation { chi, fraction } => (*chi * *fraction).abs().as_f64(),
            Self::Oscillator { omega, period } => (*omega * *period).abs().as_f64(),
            Self::AlphaPower { r, .. } => 2.0 * std::f64::consts::PI * (*r as f64).abs(),
            Self::HamiltonianFlow { h, duration } => {
                let norm = h.eigenvalues().iter().fold(0.0f64, |a, l| a.max(l.as_f64().abs()));
                norm * duration.abs().as_f64()
            }
            Self::DirectSum(a, b) | Self::Product(a, b) => a.speed() + b.speed(),
            Self::MatrixInterpolation { matrices, .. } => matrices.len() as f64,
        }
    }

    fn function(&self) -> Result<MatrixFn<T>> {
        Ok(match self {
            Self::Rotation { chi, fraction } => {
                let a = *chi * *fraction;
                Arc::new(move |t| rotation(a * t))
            }
            Self::Oscillator { omega, period } => {
                if *omega <= T::zero() || *period <= T::zero() {
                    return Err(IndexError::InvalidInput("oscillator frequency and period must be positive".into()));
                }
                let a = *omega * *period;
                Arc::new(move |t| rotation(a * t))
            }
            Self::AlphaPower { r, n } => {
                if *n == 0 {
                    return Err(IndexError::InvalidInput("alpha_power needs n ≥ 1".into()));
                }
                let (r, n) = (*r, *n);
                Arc::new(move |t| {
                    let a = -T::two_pi() * T::from_int(r) * t;
                    direct_sum_matrix(&rotation(a), &DMatrix::identity(2 * n - 2, 2 * n - 2))
                })
            }
            Self::HamiltonianFlow { h, duration } => {
                if h.dim() % 2 != 0 || h.dim() == 0 {
                    return Err(IndexError::InvalidInput("Hamiltonian matrix must be 2n×2n".into()));
                }
                let gen = standard_j::<T>(h.dim() / 2) * h.matrix() * *duration;
                Arc::new(move |t| (&gen * t).exp())
            }
            Self::DirectSum(a, b) => {
                let (f, g) = (a.function()?, b.function()?);
                Arc::new(move |t| direct_sum_matrix(&f(t), &g(t)))
            }
            Self::Product(a, b) => {
                if a.dim() != b.dim() {
                    return Err(IndexError::DimensionMismatch {
                        expected: a.dim(),
                        found: b.dim(),
                    });
                }
                let (f, g) = (a.function()?, b.function()?);
                Arc::new(move |t| f(t) * g(t))
            }
            Self::MatrixInterpolation { times, matrices } => interpolator(times, matrices)?,
        })
    }

    /// Builds the sampled path on a grid sized from the generator parameters.
    pub fn build(&self, tol: &Tolerances<T>) -> Result<SymplecticPath<T>> {
        let grid = (64.0f64).max((8.0 * self.speed()).ceil()) as usize;
        self.build_with_grid(grid, tol)
    }

    /// Builds the sampled path starting from a uniform grid of `grid` steps.
    pub fn build_with_grid(&self, grid: usize, tol: &Tolerances<T>) -> Result<SymplecticPath<T>> {
        let n = self.dim();
        if let Self::MatrixInterpolation { matrices, .. } = self {
            let id = DMatrix::<T>::identity(2 * n, 2 * n);
            for m in matrices {
                SymplecticMatrix::new(m.clone(), tol)?;
            }
            if n == 0 || max_abs(&(&matrices[0] - &id)) > tol.sympl {
                return Err(IndexError::InvalidPath("interpolated path must start at the identity".into()));
            }
        }
        SymplecticPath::from_generator(n, self.function()?, grid, tol)
    }
}

/// Looks up a generator by name with numeric parameters.
pub fn generator_by_name<T: Real>(name: &str, params: &[f64]) -> Result<GeneratorSpec<T>> {
    let p = |i: usize| -> Result<f64> {
        params
            .get(i)
            .copied()
            .ok_or_else(|| IndexError::InvalidInput(format!("generator {name} expects parameter #{i}")))
    };
    Ok(match name {
        "rotation" => GeneratorSpec::Rotation {
            chi: T::lit(p(0)?),
            fraction: T::lit(params.get(1).copied().unwrap_or(1.0)),
        },
        "oscillator" => GeneratorSpec::Oscillator {
            omega: T::lit(p(0)?),
            period: T::lit(p(1)?),
        },
        "alpha_power" => GeneratorSpec::AlphaPower {
            r: p(0)?.round() as i64,
            n: params.get(1).map_or(1, |&n| n.round().max(1.0) as usize),
        },
        "two_oscillator" => {
            let (wx, wy) = (p(0)?, p(1)?);
            let reps = params.get(2).copied().unwrap_or(1.0);
            if wx <= 0.0 || wy <= 0.0 || reps < 1.0 || reps.fract() != 0.0 {
                return Err(IndexError::InvalidInput("two_oscillator needs ωx, ωy > 0 and integer reps ≥ 1".into()));
            }
            GeneratorSpec::DirectSum(
                Box::new(GeneratorSpec::Rotation { chi: T::two_pi(), fraction: T::lit(reps) }),
                Box::new(GeneratorSpec::Rotation {
                    chi: T::two_pi() * T::lit(wy / wx),
                    fraction: T::lit(reps),
                }),
            )
        }
        other => return Err(IndexError::UnknownGenerator(other.to_string())),
    })
}
