//! `sympindex oscillator-table`: pipeline `−ν` of the two-oscillator
//! libration against its closed form.

use std::fmt::Write as _;

use sympindex::verify::oscillator_closed_form;
use sympindex::{nu_half, oscillator_monodromy, Tolerances};

use crate::report::Index;

/// Distance from an integer below which `rω_y/ω_x` counts as resonant.
const RESONANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, serde::Serialize)]
pub struct TableRow {
    pub r: u32,
    pub nu: Index,
    pub mu: Index,
    /// `1 + 2r + 2⌊rω_y/ω_x⌋`, or `2r + 2k` when `rω_y/ω_x = k`.
    pub expected: i64,
    pub branch: &'static str,
    pub status: &'static str,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OscillatorTable {
    pub wx: f64,
    pub wy: f64,
    pub rows: Vec<TableRow>,
}

/// Expected `−ν` and the branch of the closed form used.
pub fn expected_mu(wx: f64, wy: f64, r: u32) -> (i64, &'static str) {
    let ratio = r as f64 * wy / wx;
    if (ratio - ratio.round()).abs() < RESONANCE_TOL {
        (2 * r as i64 + 2 * ratio.round() as i64, "resonant")
    } else {
        (oscillator_closed_form(wx, wy, r), "nonresonant")
    }
}

impl OscillatorTable {
    pub fn compute(wx: f64, wy: f64, reps: u32, tol: &Tolerances<f64>) -> sympindex::Result<Self> {
        let rows = (1..=reps)
            .map(|r| {
                let nu = nu_half(&oscillator_monodromy(wx, wy, r, tol)?, tol)?;
                let mu = sympindex::HalfInt::half(-nu.twice);
                let (expected, branch) = expected_mu(wx, wy, r);
                Ok(TableRow {
                    r,
                    nu: Index(nu),
                    mu: Index(mu),
                    expected,
                    branch,
                    status: if mu.as_int() == Some(expected) { "ok" } else { "MISMATCH" },
                })
            })
            .collect::<sympindex::Result<Vec<_>>>()?;
        Ok(Self { wx, wy, rows })
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.status == "ok")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "wx = {}, wy = {}", self.wx, self.wy);
        let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>9}  {:<12} status", "r", "nu", "-nu", "expected", "branch");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{:>4} {:>8} {:>8} {:>9}  {:<12} {}",
                row.r,
                row.nu.0.to_string(),
                row.mu.0.to_string(),
                row.expected,
                row.branch,
                row.status
            );
        }
        out
    }
}
