//! The versioned JSON path document read by `sympindex index`.

use nalgebra::{DMatrix, DVector};
use serde::Deserialize;
use sympindex::hamflow::DEFAULT_STEPS_PER_PERIOD;
use sympindex::maslov::generator_by_name;
use sympindex::{
    integrate_monodromy, HamiltonianSpec, IndexError, PeriodicOrbit, SymmetricForm, SymplecticPath, Tolerances,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Exactly one of `generator`, `samples` and `hamiltonian` must be present.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpecDocument {
    pub version: u32,
    pub generator: Option<GeneratorDoc>,
    pub samples: Option<SamplesDoc>,
    pub hamiltonian: Option<HamiltonianDoc>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub name: String,
    #[serde(default)]
    pub params: Vec<f64>,
    /// Initial sampling grid; sized from the parameters when absent.
    pub grid: Option<usize>,
}

/// Samples `S(tᵢ)` of a path on `[t₀, t_end]`, each matrix given as rows.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesDoc {
    pub times: Vec<f64>,
    pub matrices: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianDoc {
    pub spec: HamiltonianDocSpec,
    pub orbit: OrbitDoc,
    #[serde(default = "one")]
    pub reps: u32,
    /// RK4 steps per period.
    pub steps: Option<usize>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianDocSpec {
    /// `H(z) = ½zᵀHz`, rows of the symmetric `2n×2n` matrix.
    Quadratic(Vec<Vec<f64>>),
    /// `H = ½|p|² + Σᵢ Σₖ cᵢₖ xᵢᵏ`.
    SeparablePolynomial(Vec<Vec<f64>>),
    /// `H = ½|p|² + Σⱼ cⱼ|x|^{kⱼ}`, terms `[cⱼ, kⱼ]`.
    CentralPotential { n: usize, terms: Vec<[f64; 2]> },
    /// `H = (ω_x/2)(p_x² + x²) + (ω_y/2)(p_y² + y²)`.
    TwoOscillator { wx: f64, wy: f64 },
    /// `H = ½|p|² + ¼|x|⁴` in two degrees of freedom.
    QuarticCentral,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum OrbitDoc {
    /// Initial point and period; closure is checked by integration.
    Explicit { z0: Vec<f64>, period: f64 },
    /// Circular orbit of a central potential in the `(x₁, x₂)` plane.
    Circular { radius: f64 },
    /// `z₀ = e_x` for `two_oscillator`.
    XLibration,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Schema(String),
    #[error(transparent)]
    Index(#[from] IndexError),
}

impl DocumentError {
    pub fn is_integrity_failure(&self) -> bool {
        matches!(self, DocumentError::Index(e) if e.is_integrity_failure())
    }
}

fn schema(msg: impl Into<String>) -> DocumentError {
    DocumentError::Schema(msg.into())
}

impl PathSpecDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: Self = serde_json::from_str(text)?;
        if doc.version != SCHEMA_VERSION {
            return Err(schema(format!("unsupported version {} (expected {SCHEMA_VERSION})", doc.version)));
        }
        let sources = [doc.generator.is_some(), doc.samples.is_some(), doc.hamiltonian.is_some()];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(schema("exactly one of `generator`, `samples`, `hamiltonian` is required"));
        }
        Ok(doc)
    }

    /// Short description of the path source.
    pub fn source(&self) -> String {
        if let Some(g) = &self.generator {
            format!("generator:{}", g.name)
        } else if self.samples.is_some() {
            "samples".into()
        } else {
            "hamiltonian".into()
        }
    }

    pub fn build(&self, tol: &Tolerances<f64>) -> Result<SymplecticPath<f64>, DocumentError> {
        if let Some(g) = &self.generator {
            let spec = generator_by_name::<f64>(&g.name, &g.params)?;
            return Ok(match g.grid {
                Some(0) => return Err(schema("grid must be positive")),
                Some(grid) => spec.build_with_grid(grid, tol)?,
                None => spec.build(tol)?,
            });
        }
        if let Some(s) = &self.samples {
            return build_samples(s, tol);
        }
        build_hamiltonian(self.hamiltonian.as_ref().expect("validated in parse"), tol)
    }
}

fn square_matrix(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>, DocumentError> {
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(schema(format!("{what} must be a non-empty square matrix")));
    }
    if rows.iter().flatten().any(|x| !x.is_finite()) {
        return Err(schema(format!("{what} has non-finite entries")));
    }
    Ok(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
}

fn build_samples(s: &SamplesDoc, tol: &Tolerances<f64>) -> Result<SymplecticPath<f64>, DocumentError> {
    if s.times.len() != s.matrices.len() || s.times.len() < 2 {
        return Err(schema("samples need matching `times` and `matrices`, at least two of each"));
    }
    if s.times.windows(2).any(|w| !(w[1] > w[0])) || s.times.iter().any(|t| !t.is_finite()) {
        return Err(schema("sample times must be finite and strictly increasing"));
    }
    let matrices = s
        .matrices
        .iter()
        .enumerate()
        .map(|(i, m)| square_matrix(m, &format!("matrices[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let d = matrices[0].nrows();
    if d % 2 != 0 || matrices.iter().any(|m| m.nrows() != d) {
        return Err(schema("all sample matrices must share one even dimension 2n"));
    }
    Ok(SymplecticPath::from_samples(s.times.clone(), matrices, tol)?)
}

fn build_hamiltonian(doc: &HamiltonianDoc, tol: &Tolerances<f64>) -> Result<SymplecticPath<f64>, DocumentError> {
    let h = match &doc.spec {
        HamiltonianDocSpec::Quadratic(rows) => {
            let m = square_matrix(rows, "quadratic Hamiltonian")?;
            if SymmetricForm::asymmetry(&m) > tol.sympl {
                return Err(schema("quadratic Hamiltonian must be symmetric"));
            }
            HamiltonianSpec::Quadratic(SymmetricForm::new(m))
        }
        HamiltonianDocSpec::SeparablePolynomial(c) => HamiltonianSpec::SeparablePolynomial { coefficients: c.clone() },
        HamiltonianDocSpec::CentralPotential { n, terms } => HamiltonianSpec::CentralPotential {
            n: *n,
            terms: terms.iter().map(|t| (t[0], t[1])).collect(),
        },
        HamiltonianDocSpec::TwoOscillator { wx, wy } => HamiltonianSpec::two_oscillator(*wx, *wy),
        HamiltonianDocSpec::QuarticCentral => HamiltonianSpec::quartic_central(),
    };
    h.validate()?;
    let steps = doc.steps.unwrap_or(DEFAULT_STEPS_PER_PERIOD);
    if steps == 0 || doc.reps == 0 {
        return Err(schema("`steps` and `reps` must be positive"));
    }
    let orbit = match &doc.orbit {
        OrbitDoc::Explicit { z0, period } => {
            PeriodicOrbit::new(&h, DVector::from_column_slice(z0), *period, steps, tol)?
        }
        OrbitDoc::Circular { radius } => PeriodicOrbit::circular_orbit(&h, *radius)?,
        OrbitDoc::XLibration => match &doc.spec {
            HamiltonianDocSpec::TwoOscillator { wx, wy } => PeriodicOrbit::x_libration(*wx, *wy)?,
            _ => return Err(schema("`x_libration` requires a `two_oscillator` Hamiltonian")),
        },
    };
    Ok(integrate_monodromy(&h, &orbit, doc.reps, steps, tol)?)
}
