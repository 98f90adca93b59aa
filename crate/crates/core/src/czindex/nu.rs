//! The extended Conley–Zehnder index `ν(S_∞) = ½ μ((I ⊕ S)_∞Δ_∞, Δ_∞)`.

use std::fmt;
use std::ops::Add;

use nalgebra::DMatrix;

use super::cayley::{cayley, classify, SpClass};
use crate::lagrangian::{DoubledSpace, LagrangianPlane};
use crate::maslov::{alm, lift_plane_along, LagrangianLift, SymplecticPath};
use crate::scalar::{Real, Tolerances};
use crate::symplinalg::{inertia_rel, SymmetricForm};
use crate::{IndexError, Result};

/// An exact half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    pub twice: i64,
}

impl HalfInt {
    pub fn from_int(k: i64) -> Self {
        Self { twice: 2 * k }
    }

    /// `k/2`.
    pub fn half(k: i64) -> Self {
        Self { twice: k }
    }

    pub fn as_int(&self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }

    pub fn as_f64(&self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;

    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// The planes `Φ(graph S_t)` at the path samples.
pub fn graph_lagrangian_path<T: Real>(path: &SymplecticPath<T>) -> Vec<LagrangianPlane<T>> {
    let d = DoubledSpace::new(path.n());
    path.samples().iter().map(|s| d.graph(s.matrix())).collect()
}

/// `ν` of a path, any endpoint. `ν ≡ ½ dim Ker(S − I) mod 1`, so `ν` is a
/// half-integer exactly when the kernel has odd dimension (for instance a
/// Jordan block at the eigenvalue `1`).
pub fn nu_half<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<HalfInt> {
    let d = DoubledSpace::new(path.n());
    let diag = LagrangianLift::principal(d.diagonal::<T>());
    let end = lift_plane_along(path, &|s: &DMatrix<T>| d.graph(s), diag.theta, tol)?;
    Ok(HalfInt::half(alm(&end, &diag, tol)?))
}

/// `ν` of a path; degenerate endpoints are allowed. Fails with
/// [`IndexError::HalfIntegerIndex`] when `ν` is not an integer.
pub fn nu<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<i64> {
    let v = nu_half(path, tol)?;
    v.as_int().ok_or(IndexError::HalfIntegerIndex { twice: v.twice })
}

/// `ν` of the pointwise inverse path; equals `−ν(path)`.
pub fn nu_inverse_check<T: Real>(path: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<i64> {
    nu(&path.inverse(tol)?, tol)
}

/// `sign(M_S + M_{S′})`.
fn cayley_sum_sign<T: Real>(
    s: &crate::symplinalg::SymplecticMatrix<T>,
    s2: &crate::symplinalg::SymplecticMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<i64> {
    let sum = cayley(s, tol)?.matrix() + cayley(s2, tol)?.matrix();
    let inertia = inertia_rel(&SymmetricForm::new(sum), tol);
    if inertia.n_zero > 0 {
        return Err(IndexError::DegenerateEndpoint("M_S + M_S′ is singular"));
    }
    Ok(inertia.signature())
}

/// Both sides of `ν(S_∞S′_∞) = ν(S_∞) + ν(S′_∞) + ½ sign(M_S + M_{S′})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuProduct {
    /// `ν` of the pointwise product path.
    pub direct: i64,
    pub nu_first: i64,
    pub nu_second: i64,
    pub cayley_sign: i64,
    /// `ν + ν′ + ½ sign(M_S + M_{S′})`.
    pub formula: HalfInt,
}

impl NuProduct {
    pub fn holds(&self) -> bool {
        HalfInt::from_int(self.direct) == self.formula
    }
}

pub fn nu_product<T: Real>(a: &SymplecticPath<T>, b: &SymplecticPath<T>, tol: &Tolerances<T>) -> Result<NuProduct> {
    let (s, s2) = (a.endpoint(), b.endpoint());
    for m in [s, s2, &(s * s2)] {
        if classify(m, tol) == SpClass::Zero {
            return Err(IndexError::DegenerateEndpoint("product formula needs S, S′ and SS′ off Sp0"));
        }
    }
    let cayley_sign = cayley_sum_sign(s, s2, tol)?;
    let nu_first = nu(a, tol)?;
    let nu_second = nu(b, tol)?;
    let direct = nu(&a.product(b, tol)?, tol)?;
    Ok(NuProduct {
        direct,
        nu_first,
        nu_second,
        cayley_sign,
        formula: HalfInt::from_int(nu_first + nu_second) + HalfInt::half(cayley_sign),
    })
}

/// `ν(S^r_∞)` by several routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuPower {
    pub r: u32,
    /// `ν` of the pointwise `r`-th power path.
    pub direct: i64,
    /// `ν(S_∞)`.
    pub nu_base: i64,
    /// `rν + ½Σ_{k=1}^{r−1} sign(M_S + M_{S^k})`, when every `S^k` is off `Sp0`.
    pub iterated: Option<HalfInt>,
    /// `rν + ½(r − 1) sign M_S`, when `S` is off `Sp0`.
    pub closed_form: Option<HalfInt>,
    /// Whether a degenerate intermediate power forced the direct value.
    pub fallback: bool,
}

impl NuPower {
    /// The iterated product formula when available, otherwise the direct value.
    pub fn value(&self) -> i64 {
        self.iterated.and_then(|h| h.as_int()).unwrap_or(self.direct)
    }

    pub fn iterated_matches(&self) -> Option<bool> {
        self.iterated.map(|h| h == HalfInt::from_int(self.direct))
    }

    pub fn closed_form_matches(&self) -> Option<bool> {
        self.closed_form.map(|h| h == HalfInt::from_int(self.direct))
    }
}

pub fn nu_power<T: Real>(path: &SymplecticPath<T>, r: u32, tol: &Tolerances<T>) -> Result<NuPower> {
    if r == 0 {
        return Err(IndexError::InvalidInput("repetition count must be positive".into()));
    }
    let nu_base = nu(path, tol)?;
    let direct = if r == 1 { nu_base } else { nu(&path.pow(r, tol)?, tol)? };
    let s = path.endpoint();
    let rnu = HalfInt::from_int(r as i64 * nu_base);

    let closed_form = match cayley(s, tol) {
        Ok(c) => {
            let inertia = inertia_rel(&c.m_s, tol);
            (inertia.n_zero == 0).then(|| rnu + HalfInt::half((r as i64 - 1) * inertia.signature()))
        }
        Err(_) => None,
    };

    let mut iterated = Some(rnu);
    let mut power = s.clone();
    for _ in 1..r {
        match cayley_sum_sign(s, &power, tol) {
            Ok(sig) if classify(&(s * &power), tol) != SpClass::Zero => {
                iterated = iterated.map(|h| h + HalfInt::half(sig));
            }
            _ => {
                iterated = None;
                break;
            }
        }
        power = &power * s;
    }
    let fallback = iterated.is_none();
    if fallback {
        log::info!("nu_power: degenerate intermediate power, using the direct value {direct}");
    }
    Ok(NuPower {
        r,
        direct,
        nu_base,
        iterated,
        closed_form,
        fallback,
    })
}
