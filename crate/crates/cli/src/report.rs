//! The index report printed by `sympindex index`.

use std::fmt::Write as _;

use serde::ser::{Serialize, Serializer};
use sympindex::czindex::cayley_reconstruction_residual;
use sympindex::{
    cayley, classify, cz_winding_oracle, nu_half, nu_via_concavity, reduced_maslov, relative_maslov, HalfInt,
    IndexError, LagrangianPlane, SpClass, SymplecticPath, Tolerances,
};

/// Bound on the Cayley reconstruction residual.
pub const CAYLEY_RESIDUAL_BOUND: f64 = 1e-7;

/// An index that may be a half-integer; serialized as an integer when it is one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Index(pub HalfInt);

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.as_int() {
            Some(k) => s.serialize_i64(k),
            None => s.serialize_f64(self.0.as_f64()),
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct NotApplicable {
    pub status: &'static str,
    pub reason: &'static str,
    pub detail: String,
}

/// A value or the reason it is unavailable.
#[derive(Debug, Clone, serde::Serialize)]
#[serde(untagged)]
pub enum Field<V> {
    Value(V),
    NotApplicable(NotApplicable),
}

impl<V> Field<V> {
    fn from_result(r: sympindex::Result<V>, integrity: &mut Vec<String>) -> Self {
        match r {
            Ok(v) => Field::Value(v),
            Err(e) => {
                if e.is_integrity_failure() {
                    integrity.push(e.to_string());
                }
                Field::NotApplicable(NotApplicable {
                    status: "n/a",
                    reason: e.code(),
                    detail: e.to_string(),
                })
            }
        }
    }

    pub fn value(&self) -> Option<&V> {
        match self {
            Field::Value(v) => Some(v),
            Field::NotApplicable(_) => None,
        }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PlanePair<V> {
    pub x_plane: V,
    pub p_plane: V,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CrossCheck {
    pub identity: &'static str,
    pub status: &'static str,
    pub residual: Option<f64>,
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<&'static str>,
}

impl CrossCheck {
    fn from_residual(identity: &'static str, r: sympindex::Result<f64>, bound: f64, integrity: &mut Vec<String>) -> Self {
        match r {
            Ok(res) => CrossCheck {
                identity,
                status: if res <= bound { "pass" } else { "fail" },
                residual: Some(res),
                bound: Some(bound),
                reason: None,
            },
            Err(e) => {
                if e.is_integrity_failure() {
                    integrity.push(e.to_string());
                }
                CrossCheck {
                    identity,
                    status: "n/a",
                    residual: None,
                    bound: None,
                    reason: Some(e.code()),
                }
            }
        }
    }

    pub fn failed(&self) -> bool {
        self.status == "fail"
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct IndexReport {
    pub source: String,
    pub n: usize,
    pub classification: String,
    pub nu: Field<Index>,
    pub gutzwiller_mu: Field<Index>,
    pub mu_rel: PlanePair<Field<i64>>,
    pub m_rel: PlanePair<Field<i64>>,
    pub concavity: Field<i64>,
    pub cz_oracle: Field<i64>,
    pub cayley: Field<Vec<Vec<f64>>>,
    pub cross_checks: Vec<CrossCheck>,
    #[serde(skip)]
    pub integrity_failures: Vec<String>,
}

fn degenerate() -> IndexError {
    IndexError::DegenerateEndpoint("det(S − I) = 0")
}

fn integer_check(lhs: &Field<Index>, rhs: sympindex::Result<HalfInt>) -> sympindex::Result<f64> {
    let l = lhs
        .value()
        .ok_or_else(|| IndexError::InvalidInput("ν unavailable".into()))?;
    Ok((l.0.as_f64() - rhs?.as_f64()).abs())
}

impl IndexReport {
    pub fn compute(source: String, path: &SymplecticPath<f64>, tol: &Tolerances<f64>) -> Self {
        let n = path.n();
        let s = path.endpoint();
        let mut integrity = Vec::new();
        let class = classify(s, tol);
        let nu = nu_half(path, tol);
        let gutzwiller = nu.clone().map(|v| HalfInt::half(-v.twice));
        let nu = Field::from_result(nu.map(Index), &mut integrity);
        let gutzwiller_mu = Field::from_result(gutzwiller.map(Index), &mut integrity);
        let (lx, lp) = (LagrangianPlane::x_plane(n), LagrangianPlane::p_plane(n));
        let mu_rel = PlanePair {
            x_plane: Field::from_result(relative_maslov(path, &lx, tol), &mut integrity),
            p_plane: Field::from_result(relative_maslov(path, &lp, tol), &mut integrity),
        };
        let m_rel = PlanePair {
            x_plane: Field::from_result(reduced_maslov(path, &lx, tol), &mut integrity),
            p_plane: Field::from_result(reduced_maslov(path, &lp, tol), &mut integrity),
        };
        let record = nu_via_concavity(path, tol);
        let concavity = Field::from_result(record.clone().map(|r| r.inert), &mut integrity);
        let cz_oracle = Field::from_result(
            if class == SpClass::Zero { Err(degenerate()) } else { cz_winding_oracle(path, tol) },
            &mut integrity,
        );
        let cayley_m = Field::from_result(
            cayley(s, tol).map(|c| {
                let m = c.matrix();
                (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
            }),
            &mut integrity,
        );

        let mut checks = Vec::new();
        let oracle = cz_oracle.value().copied().ok_or_else(degenerate);
        checks.push(CrossCheck::from_residual(
            "nu_equals_cz_oracle",
            integer_check(&nu, oracle.map(HalfInt::from_int)),
            0.0,
            &mut integrity,
        ));
        checks.push(CrossCheck::from_residual(
            "nu_equals_reduced_minus_concavity",
            integer_check(&nu, record.clone().map(|r| HalfInt::from_int(r.via_reduced))),
            0.0,
            &mut integrity,
        ));
        checks.push(CrossCheck::from_residual(
            "nu_equals_half_relative_plus_signature",
            integer_check(&nu, record.map(|r| HalfInt::from_int(r.via_relative))),
            0.0,
            &mut integrity,
        ));
        checks.push(CrossCheck::from_residual(
            "nu_of_inverse_is_minus_nu",
            integer_check(
                &nu,
                path.inverse(tol).and_then(|p| nu_half(&p, tol)).map(|v| HalfInt::half(-v.twice)),
            ),
            0.0,
            &mut integrity,
        ));
        checks.push(CrossCheck::from_residual(
            "cayley_reconstruction",
            cayley_reconstruction_residual(s, tol),
            CAYLEY_RESIDUAL_BOUND,
            &mut integrity,
        ));

        IndexReport {
            source,
            n,
            classification: class.to_string(),
            nu,
            gutzwiller_mu,
            mu_rel,
            m_rel,
            concavity,
            cz_oracle,
            cayley: cayley_m,
            cross_checks: checks,
            integrity_failures: integrity,
        }
    }

    /// True when no computation hit an integrity failure and no cross-check failed.
    pub fn sound(&self) -> bool {
        self.integrity_failures.is_empty() && !self.cross_checks.iter().any(CrossCheck::failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_human(&self) -> String {
        fn show<V>(f: &Field<V>, fmt: impl Fn(&V) -> String) -> String {
            match f {
                Field::Value(v) => fmt(v),
                Field::NotApplicable(na) => format!("n/a ({})", na.reason),
            }
        }
        let idx = |v: &Index| v.0.to_string();
        let int = |v: &i64| v.to_string();
        let mut out = String::new();
        let _ = writeln!(out, "source          {}", self.source);
        let _ = writeln!(out, "n               {}", self.n);
        let _ = writeln!(out, "classification  {}", self.classification);
        let _ = writeln!(out, "nu              {}", show(&self.nu, idx));
        let _ = writeln!(out, "gutzwiller_mu   {}", show(&self.gutzwiller_mu, idx));
        let _ = writeln!(out, "mu_rel  x / p   {} / {}", show(&self.mu_rel.x_plane, int), show(&self.mu_rel.p_plane, int));
        let _ = writeln!(out, "m_rel   x / p   {} / {}", show(&self.m_rel.x_plane, int), show(&self.m_rel.p_plane, int));
        let _ = writeln!(out, "concavity       {}", show(&self.concavity, int));
        let _ = writeln!(out, "cz_oracle       {}", show(&self.cz_oracle, int));
        match &self.cayley {
            Field::Value(rows) => {
                let _ = writeln!(out, "cayley");
                for row in rows {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:>12.6}")).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
            Field::NotApplicable(na) => {
                let _ = writeln!(out, "cayley          n/a ({})", na.reason);
            }
        }
        let _ = writeln!(out, "cross checks");
        for c in &self.cross_checks {
            let _ = write!(out, "  {:<4} {}", c.status, c.identity);
            if let Some(r) = c.residual {
                let _ = write!(out, " residual={r:.2e}");
            }
            if let Some(reason) = c.reason {
                let _ = write!(out, " ({reason})");
            }
            let _ = writeln!(out);
        }
        out
    }
}
