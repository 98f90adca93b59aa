//! Randomized property suites with deterministic seeding.
//!
//! Instance `i` of a run with seed `s` draws from `ChaCha8Rng::seed_from_u64(s + i)`,
//! so a failing instance is reproduced by a run with seed `s + i` and count 1.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::czindex::{
    cayley, cayley_product, cayley_reconstruction_residual, cayley_sum_inverse, classify, cz_winding_oracle,
    det_factorization_check, generating_function, nu, nu_inverse_check, nu_power, nu_product, nu_via_concavity,
    SpClass,
};
use crate::hamflow::{integrate_flow, oscillator_monodromy, origin_shift_monodromy, HamiltonianSpec, PeriodicOrbit};
use crate::lagrangian::{
    direct_sum_plane, inert_triple, intersection_dim, kmod2_holds, wall_kashiwara, wall_kashiwara_transversal,
    LagrangianPlane,
};
use crate::maslov::{alm, loop_maslov, reduced_maslov, relative_maslov, GeneratorSpec, LagrangianLift, SymplecticPath};
use crate::random::{random_path, random_plane, random_plane_meeting, random_symmetric, random_symplectic};
use crate::symplinalg::{max_abs, standard_j, SymplecticMatrix};
use crate::{IndexError, Result, Tolerances};

/// Relative residual bound for the floating-point identities.
pub const RESIDUAL_BOUND: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Tau,
    Alm,
    Maslov,
    Cayley,
    Nu,
    Concavity,
    Oracle,
    Hamflow,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Tau,
        Suite::Alm,
        Suite::Maslov,
        Suite::Cayley,
        Suite::Nu,
        Suite::Concavity,
        Suite::Oracle,
        Suite::Hamflow,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Tau => "tau",
            Suite::Alm => "alm",
            Suite::Maslov => "maslov",
            Suite::Cayley => "cayley",
            Suite::Nu => "nu",
            Suite::Concavity => "concavity",
            Suite::Oracle => "oracle",
            Suite::Hamflow => "hamflow",
        }
    }

    /// Resolves a suite name, `all` expanding to every suite.
    pub fn resolve(name: &str) -> std::result::Result<Vec<Suite>, UnknownSuite> {
        if name == "all" {
            return Ok(Self::ALL.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}` (expected one of tau, alm, maslov, cayley, nu, concavity, oracle, hamflow, all)")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s)
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// The first failing instance of a check.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub instance: usize,
    /// Seed reproducing the instance as instance 0.
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Instances where the identity's preconditions did not hold.
    pub skipped: usize,
    /// Largest relative residual, for floating-point identities.
    pub max_residual: Option<f64>,
    pub first_failure: Option<Failure>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            skipped: 0,
            max_residual: None,
            first_failure: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub count: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &Failure)> {
        self.checks
            .iter()
            .find_map(|c| c.first_failure.as_ref().map(|f| (c.name, f)))
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} seed={} count={}: {}",
            self.suite,
            self.seed,
            self.count,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for c in &self.checks {
            write!(
                f,
                "  {} {:<28} passed={} failed={} skipped={}",
                if c.failed == 0 { "ok  " } else { "FAIL" },
                c.name,
                c.passed,
                c.failed,
                c.skipped
            )?;
            if let Some(r) = c.max_residual {
                write!(f, " max_residual={r:.2e}")?;
            }
            writeln!(f)?;
        }
        if let Some((name, fail)) = self.first_failure() {
            writeln!(f, "  first failure: {name} at instance {}: {}", fail.instance, fail.detail)?;
            writeln!(f, "  reproduce: sympindex verify {} --seed {} --count 1", self.suite, fail.seed)?;
        }
        Ok(())
    }
}

enum Verdict {
    Pass,
    Residual(f64),
    Fail(String),
    Skip,
}

fn skippable(e: &IndexError) -> bool {
    matches!(
        e,
        IndexError::DegenerateEndpoint(_)
            | IndexError::NotFree
            | IndexError::NotTransversal { .. }
            | IndexError::HalfIntegerIndex { .. }
    )
}

fn equal(lhs: i64, rhs: i64) -> Verdict {
    if lhs == rhs {
        Verdict::Pass
    } else {
        Verdict::Fail(format!("{lhs} ≠ {rhs}"))
    }
}

fn relative(diff: f64, scale: f64) -> f64 {
    diff / scale.max(1.0)
}

struct Recorder {
    checks: Vec<CheckOutcome>,
    instance: usize,
    seed: u64,
}

impl Recorder {
    fn record(&mut self, name: &'static str, verdict: Result<Verdict>) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckOutcome::new(name));
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        let verdict = match verdict {
            Ok(Verdict::Residual(r)) => {
                c.max_residual = Some(c.max_residual.map_or(r, |m: f64| m.max(r)));
                if r <= RESIDUAL_BOUND {
                    Verdict::Pass
                } else {
                    Verdict::Fail(format!("relative residual {r:.3e} exceeds {RESIDUAL_BOUND:.0e}"))
                }
            }
            Ok(v) => v,
            Err(e) if skippable(&e) => Verdict::Skip,
            Err(e) => Verdict::Fail(e.to_string()),
        };
        match verdict {
            Verdict::Pass | Verdict::Residual(_) => c.passed += 1,
            Verdict::Skip => c.skipped += 1,
            Verdict::Fail(detail) => {
                c.failed += 1;
                if c.first_failure.is_none() {
                    c.first_failure = Some(Failure {
                        instance: self.instance,
                        seed: self.seed,
                        detail,
                    });
                }
            }
        }
    }
}

/// Runs `count` instances of `suite`.
pub fn run_suite(suite: Suite, seed: u64, count: usize, tol: &Tolerances<f64>) -> SuiteReport {
    let mut rec = Recorder {
        checks: Vec::new(),
        instance: 0,
        seed,
    };
    for i in 0..count {
        rec.instance = i;
        rec.seed = seed.wrapping_add(i as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(rec.seed);
        match suite {
            Suite::Tau => tau_instance(&mut rec, &mut rng, tol),
            Suite::Alm => alm_instance(&mut rec, &mut rng, tol),
            Suite::Maslov => maslov_instance(&mut rec, &mut rng, tol),
            Suite::Cayley => cayley_instance(&mut rec, &mut rng, tol),
            Suite::Nu => nu_instance(&mut rec, &mut rng, tol),
            Suite::Concavity => concavity_instance(&mut rec, &mut rng, tol),
            Suite::Oracle => oracle_instance(&mut rec, &mut rng, tol),
            Suite::Hamflow => hamflow_instance(&mut rec, &mut rng, tol),
        }
    }
    SuiteReport {
        suite,
        seed,
        count,
        checks: rec.checks,
    }
}

/// `k` planes, each meeting its predecessor in a random dimension half the time.
pub fn random_planes(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<LagrangianPlane<f64>> {
    let mut out: Vec<LagrangianPlane<f64>> = Vec::new();
    for i in 0..k {
        let plane = if i > 0 && rng.random_bool(0.5) {
            let dim = rng.random_range(0..=n);
            random_plane_meeting(rng, &out[i - 1], dim)
        } else {
            random_plane(rng, n)
        };
        out.push(plane);
    }
    out
}

fn tau_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=3);
    let p = random_planes(rng, n, 4);
    let t = |a: usize, b: usize, c: usize| wall_kashiwara(&p[a], &p[b], &p[c], tol);
    rec.record("antisymmetry", Ok(equal(t(0, 1, 2), -t(1, 0, 2))));
    rec.record("antisymmetry_23", Ok(equal(t(0, 1, 2), -t(0, 2, 1))));
    let s = random_symplectic::<f64, _>(rng, n, 0.7);
    let q: Vec<_> = p.iter().map(|l| l.transform(&s)).collect();
    rec.record("symplectic_invariance", Ok(equal(wall_kashiwara(&q[0], &q[1], &q[2], tol), t(0, 1, 2))));
    rec.record("cocycle", Ok(equal(t(1, 2, 3) - t(0, 2, 3) + t(0, 1, 3) - t(0, 1, 2), 0)));
    rec.record(
        "kmod2",
        Ok(if kmod2_holds(&p[0], &p[1], &p[2], tol) { Verdict::Pass } else { Verdict::Fail("congruence fails".into()) }),
    );
    rec.record(
        "transversal_formula",
        wall_kashiwara_transversal(&p[0], &p[1], &p[2], tol).map(|v| equal(v, t(0, 1, 2))),
    );
    let m = rng.random_range(1..=2);
    let b = random_planes(rng, m, 3);
    let sum: Vec<_> = (0..3).map(|i| direct_sum_plane(&p[i], &b[i])).collect();
    rec.record(
        "additivity",
        Ok(equal(
            wall_kashiwara(&sum[0], &sum[1], &sum[2], tol),
            t(0, 1, 2) + wall_kashiwara(&b[0], &b[1], &b[2], tol),
        )),
    );
}

fn random_lifts(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<LagrangianLift<f64>> {
    random_planes(rng, n, k)
        .into_iter()
        .map(|p| LagrangianLift::principal(p).shifted(rng.random_range(-3..=3)))
        .collect()
}

fn alm_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=3);
    let l = random_lifts(rng, n, 3);
    let m = |a: &LagrangianLift<f64>, b: &LagrangianLift<f64>| alm(a, b, tol);
    rec.record("antisymmetry", (|| Ok(equal(m(&l[0], &l[1])?, -m(&l[1], &l[0])?)))());
    rec.record(
        "cocycle",
        (|| {
            let tau = wall_kashiwara(&l[0].plane, &l[1].plane, &l[2].plane, tol);
            Ok(equal(m(&l[0], &l[1])? - m(&l[0], &l[2])? + m(&l[1], &l[2])?, tau))
        })(),
    );
    rec.record(
        "mod2",
        (|| {
            let d = intersection_dim(&l[0].plane, &l[1].plane, tol) as i64;
            Ok(equal((m(&l[0], &l[1])? - n as i64 - d).rem_euclid(2), 0))
        })(),
    );
    let (r, s) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
    rec.record(
        "beta_action",
        (|| Ok(equal(m(&l[0].shifted(r), &l[1].shifted(s))?, m(&l[0], &l[1])? + 2 * (r - s))))(),
    );
    let k = rng.random_range(1..=2);
    let b = random_lifts(rng, k, 2);
    rec.record(
        "additivity",
        (|| {
            let sum = |x: &LagrangianLift<f64>, y: &LagrangianLift<f64>| {
                LagrangianLift::new(direct_sum_plane(&x.plane, &y.plane), x.theta + y.theta)
            };
            Ok(equal(m(&sum(&l[0], &b[0])?, &sum(&l[1], &b[1])?)?, m(&l[0], &l[1])? + m(&b[0], &b[1])?))
        })(),
    );
}

fn alpha(r: i64, n: usize, tol: &Tolerances<f64>) -> Result<SymplecticPath<f64>> {
    GeneratorSpec::AlphaPower { r, n }.build(tol)
}

fn maslov_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=2);
    let p = random_path::<f64, _>(rng, n, 1.0);
    let q = random_path::<f64, _>(rng, n, 1.0);
    let l = random_plane::<f64, _>(rng, n);
    let (s, s2) = (p.endpoint().clone(), q.endpoint().clone());
    rec.record(
        "product",
        (|| {
            let pq = p.product(&q, tol)?;
            let tau = wall_kashiwara(&l, &l.transform(&s), &l.transform(&(&s * &s2)), tol);
            Ok(equal(relative_maslov(&pq, &l, tol)?, relative_maslov(&p, &l, tol)? + relative_maslov(&q, &l, tol)? + tau))
        })(),
    );
    rec.record(
        "product_reduced",
        (|| {
            let pq = p.product(&q, tol)?;
            let inert = inert_triple(&l, &l.transform(&s), &l.transform(&(&s * &s2)), tol)?;
            let corr = n as i64 + intersection_dim(&l.transform(&s), &l, tol) as i64;
            Ok(equal(
                reduced_maslov(&pq, &l, tol)?,
                reduced_maslov(&p, &l, tol)? + reduced_maslov(&q, &l, tol)? + inert - corr,
            ))
        })(),
    );
    let r = rng.random_range(-2..=2);
    rec.record(
        "alpha_action",
        (|| {
            let ap = alpha(r, n, tol)?.product(&p, tol)?;
            Ok(equal(relative_maslov(&ap, &l, tol)?, relative_maslov(&p, &l, tol)? + 4 * r))
        })(),
    );
    rec.record("loop_alpha", (|| Ok(equal(loop_maslov(&alpha(r, n, tol)?, tol)?, 2 * r)))());
    let l2 = random_plane::<f64, _>(rng, n);
    let (sl, sl2) = (l.transform(&s), l2.transform(&s));
    rec.record(
        "base_change",
        (|| {
            Ok(equal(
                relative_maslov(&p, &l, tol)? - relative_maslov(&p, &l2, tol)?,
                wall_kashiwara(&sl, &l, &l2, tol) - wall_kashiwara(&sl, &sl2, &l2, tol),
            ))
        })(),
    );
    rec.record(
        "base_change_reduced",
        (|| {
            Ok(equal(
                reduced_maslov(&p, &l, tol)? - reduced_maslov(&p, &l2, tol)?,
                inert_triple(&sl, &l, &l2, tol)? - inert_triple(&sl, &sl2, &l2, tol)?,
            ))
        })(),
    );
    // on ℓ′ meeting ℓ the inertia form carries dim Sℓ′ ∩ ℓ′ − dim ℓ ∩ ℓ′
    let k4 = rng.random_range(1..=n);
    let l4 = random_plane_meeting(rng, &l, k4);
    let sl4 = l4.transform(&s);
    rec.record(
        "base_change_reduced_degenerate",
        (|| {
            let corr = intersection_dim(&sl4, &l4, tol) as i64 - intersection_dim(&l, &l4, tol) as i64;
            Ok(equal(
                reduced_maslov(&p, &l, tol)? - reduced_maslov(&p, &l4, tol)?,
                inert_triple(&sl, &l, &l4, tol)? - inert_triple(&sl, &sl4, &l4, tol)? - corr,
            ))
        })(),
    );
    let m = rng.random_range(1..=2);
    let p2 = random_path::<f64, _>(rng, m, 1.0);
    let l3 = random_plane::<f64, _>(rng, m);
    rec.record(
        "direct_sum",
        (|| {
            let sum = p.direct_sum(&p2, tol)?;
            Ok(equal(
                relative_maslov(&sum, &direct_sum_plane(&l, &l3), tol)?,
                relative_maslov(&p, &l, tol)? + relative_maslov(&p2, &l3, tol)?,
            ))
        })(),
    );
}

fn nondegenerate_symplectic(rng: &mut ChaCha8Rng, n: usize, tol: &Tolerances<f64>) -> SymplecticMatrix<f64> {
    loop {
        let s = random_symplectic::<f64, _>(rng, n, 0.7);
        if classify(&s, tol) != SpClass::Zero {
            return s;
        }
    }
}

fn cayley_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=3);
    let s = nondegenerate_symplectic(rng, n, tol);
    let s2 = nondegenerate_symplectic(rng, n, tol);
    rec.record(
        "sum_inverse",
        (|| {
            let sum = cayley(&s, tol)?.matrix() + cayley(&s2, tol)?.matrix();
            let formula = cayley_sum_inverse(&s, &s2, tol)?;
            let direct = sum.try_inverse().ok_or(IndexError::DegenerateEndpoint("M_S + M_S′ is singular"))?;
            Ok(Verdict::Residual(relative(max_abs(&(formula - &direct)), max_abs(&direct))))
        })(),
    );
    rec.record(
        "product_transform",
        (|| {
            let prod = &s * &s2;
            let direct = cayley(&prod, tol)?.matrix().clone();
            let formula = cayley_product(&s, &s2, tol)?;
            Ok(Verdict::Residual(relative(max_abs(&(formula - &direct)), max_abs(&direct))))
        })(),
    );
    rec.record(
        "inverse_negates",
        (|| {
            let m = cayley(&s, tol)?.matrix().clone();
            let mi = cayley(&s.inverse(), tol)?.matrix().clone();
            Ok(Verdict::Residual(relative(max_abs(&(mi + &m)), max_abs(&m))))
        })(),
    );
    rec.record(
        "reconstruction",
        (|| {
            let c = cayley(&s, tol)?;
            let back = c.inverse()?;
            let scale = max_abs(c.matrix());
            Ok(Verdict::Residual(relative(
                cayley_reconstruction_residual(&s, tol)?.max(max_abs(&(back.matrix() - s.matrix()))),
                scale,
            )))
        })(),
    );
}

fn nu_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=2);
    let p = random_path::<f64, _>(rng, n, 1.0);
    let q = random_path::<f64, _>(rng, n, 1.0);
    let r = rng.random_range(-3..=3);
    rec.record(
        "alpha_action",
        (|| Ok(equal(nu(&alpha(r, n, tol)?.product(&p, tol)?, tol)?, nu(&p, tol)? + 2 * r)))(),
    );
    rec.record("alpha_power", (|| Ok(equal(nu(&alpha(r, n, tol)?, tol)?, 2 * r)))());
    rec.record("inverse", (|| Ok(equal(nu_inverse_check(&p, tol)?, -nu(&p, tol)?)))());
    rec.record(
        "product_formula",
        nu_product(&p, &q, tol).map(|x| if x.holds() { Verdict::Pass } else { Verdict::Fail(format!("{x:?}")) }),
    );
    let k = rng.random_range(2..=5u32);
    // powers amplify the conditioning of S; keep the base path moderate
    let base = random_path::<f64, _>(rng, n, 0.4);
    rec.record(
        "repetition_iterated",
        nu_power(&base, k, tol).map(|x| match x.iterated_matches() {
            Some(true) => Verdict::Pass,
            Some(false) => Verdict::Fail(format!("{x:?}")),
            None => Verdict::Skip,
        }),
    );
    let p2 = random_path::<f64, _>(rng, 1, 1.0);
    rec.record(
        "direct_sum",
        (|| Ok(equal(nu(&p.direct_sum(&p2, tol)?, tol)?, nu(&p, tol)? + nu(&p2, tol)?)))(),
    );
}

/// A random symplectic matrix with invertible `B` block.
pub fn random_free(rng: &mut ChaCha8Rng, n: usize) -> SymplecticMatrix<f64> {
    loop {
        let s = random_symplectic::<f64, _>(rng, n, 0.7);
        let (_, b, _, _) = s.blocks();
        let (lo, hi) = crate::symplinalg::singular_range(&b);
        if lo > 1e-3 * hi {
            return s;
        }
    }
}

fn concavity_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=3);
    let s = random_free(rng, n);
    rec.record(
        "det_factorization",
        (|| {
            let (lhs, rhs) = det_factorization_check(&s, tol)?;
            Ok(Verdict::Residual((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-300)))
        })(),
    );
    rec.record(
        "generating_function",
        (|| {
            let back = generating_function(&s, tol)?.reconstruct()?;
            Ok(Verdict::Residual(relative(max_abs(&(back - s.matrix())), max_abs(s.matrix()))))
        })(),
    );
    let p = random_path::<f64, _>(rng, n, 1.0);
    rec.record(
        "nu_via_reduced",
        (|| {
            let c = nu_via_concavity(&p, tol)?;
            Ok(equal(c.via_reduced, nu(&p, tol)?))
        })(),
    );
    rec.record(
        "nu_via_relative",
        (|| {
            let c = nu_via_concavity(&p, tol)?;
            Ok(equal(c.via_relative, nu(&p, tol)?))
        })(),
    );
}

fn oracle_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let n = rng.random_range(1..=3);
    let p = random_path::<f64, _>(rng, n, 1.0);
    rec.record("nu_equals_oracle", (|| Ok(equal(cz_winding_oracle(&p, tol)?, nu(&p, tol)?)))());
}

/// `1 + 2r + 2⌊rω_y/ω_x⌋`.
pub fn oscillator_closed_form(wx: f64, wy: f64, r: u32) -> i64 {
    1 + 2 * r as i64 + 2 * (r as f64 * wy / wx).floor() as i64
}

fn hamflow_instance(rec: &mut Recorder, rng: &mut ChaCha8Rng, tol: &Tolerances<f64>) {
    let wx = rng.random_range(0.5..2.0);
    let wy = rng.random_range(0.5..2.0);
    let r = rng.random_range(1..=3u32);
    rec.record(
        "oscillator_closed_form",
        (|| {
            let ratio = r as f64 * wy / wx;
            if (ratio - ratio.round()).abs() < 1e-6 {
                return Ok(Verdict::Skip);
            }
            Ok(equal(-nu(&oscillator_monodromy(wx, wy, r, tol)?, tol)?, oscillator_closed_form(wx, wy, r)))
        })(),
    );
    let n = rng.random_range(1..=2);
    let h = random_symmetric::<f64, _>(rng, 2 * n, 1.0);
    let gen = standard_j::<f64>(n) * h.matrix();
    rec.record(
        "quadratic_flow",
        (|| {
            let rec = integrate_flow(&HamiltonianSpec::Quadratic(h.clone()), &nalgebra::DVector::zeros(2 * n), 1.0, 1024, tol)?;
            let err = rec
                .times
                .iter()
                .zip(&rec.matrices)
                .map(|(t, s)| {
                    let exact: DMatrix<f64> = (&gen * *t).exp();
                    relative(max_abs(&(s - &exact)), max_abs(&exact))
                })
                .fold(0.0, f64::max);
            Ok(Verdict::Residual(err))
        })(),
    );
    rec.record(
        "origin_independence",
        (|| {
            let h = HamiltonianSpec::two_oscillator(wx, wy);
            let orbit = PeriodicOrbit::x_libration(wx, wy)?;
            let shift = rng.random_range(0.0..1.0) * orbit.period();
            let steps = 256;
            let a = origin_shift_monodromy(&h, &orbit, 0.0, 1, steps, tol)?;
            let b = origin_shift_monodromy(&h, &orbit, shift, 1, steps, tol)?;
            Ok(equal(nu(&a, tol)?, nu(&b, tol)?))
        })(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_names() {
        assert_eq!(Suite::resolve("all").unwrap().len(), 8);
        assert_eq!(Suite::resolve("cayley").unwrap(), vec![Suite::Cayley]);
        assert_eq!(Suite::resolve("bogus"), Err(UnknownSuite("bogus".into())));
    }

    #[test]
    fn suites_pass_and_are_deterministic() {
        let tol = Tolerances::default();
        for suite in Suite::ALL {
            let a = run_suite(suite, 7, 12, &tol);
            assert!(a.passed(), "{a}");
            let b = run_suite(suite, 7, 12, &tol);
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn reproducer_seed_replays_instance() {
        let tol = Tolerances::default();
        let full = run_suite(Suite::Tau, 100, 5, &tol);
        let single = run_suite(Suite::Tau, 104, 1, &tol);
        assert_eq!(full.checks.len(), single.checks.len());
        assert!(single.passed());
    }
}
