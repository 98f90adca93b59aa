//! Maslov-type indices of symplectic paths.
//!
//! The crate computes, for paths in `Sp(n)` starting at the identity:
//!
//! * the Wall–Kashiwara signature `τ` of Lagrangian triples and the
//!   Arnol'd–Leray–Maslov index `μ` on the universal cover `Lag_∞(n)`
//!   ([`lagrangian`], [`maslov`]);
//! * relative and reduced Maslov indices `μ_ℓ`, `m_ℓ` and the loop index
//!   ([`maslov`]);
//! * the extended Conley–Zehnder index `ν`, defined for every endpoint through
//!   the doubled space, together with its Cayley-transform calculus, the
//!   generating-function route and an independent winding-number oracle
//!   ([`czindex`]);
//! * monodromy paths of periodic Hamiltonian orbits ([`hamflow`]).
//!
//! Conventions: `z = (x, p)`, `J = [[0, I], [−I, 0]]`, `σ(z, z′) = ⟨Jz, z′⟩`,
//! rotations `e^{θJ} = [[cos θ, sin θ], [−sin θ, cos θ]]`.
//!
//! Every computation is generic over the scalar type through [`Real`]; the
//! aliases below fix `f64` or `f32`.
//!
//! ```
//! use sympindex::{nu, GeneratorSpec, TolerancesF64};
//!
//! let tol = TolerancesF64::default();
//! let alpha2 = GeneratorSpec::AlphaPower { r: 2, n: 1 }.build(&tol).unwrap();
//! assert_eq!(nu(&alpha2, &tol).unwrap(), 4);
//! ```

pub mod czindex;
pub mod error;
pub mod hamflow;
pub mod lagrangian;
pub mod maslov;
pub mod random;
pub mod scalar;
pub mod symplinalg;
pub mod verify;

pub use czindex::{
    cayley, classify, concavity_index, cz_winding_oracle, generating_function, nu, nu_half, nu_power, nu_product,
    nu_via_concavity, CayleyTransform, HalfInt, SpClass,
};
pub use error::{IndexError, Result};
pub use hamflow::{
    integrate_monodromy, origin_shift_monodromy, oscillator_monodromy, HamiltonianSpec, PeriodicOrbit,
};
pub use lagrangian::{intersection_dim, wall_kashiwara, DoubledSpace, LagrangianPlane};
pub use maslov::{
    alm, loop_maslov, reduced_maslov, relative_maslov, GeneratorSpec, LagrangianLift, SymplecticPath,
};
pub use scalar::{Real, Tolerances};
pub use symplinalg::{SymmetricForm, SymplecticMatrix, UnitaryMatrix};

pub type SymplecticMatrixF64 = SymplecticMatrix<f64>;
pub type SymplecticMatrixF32 = SymplecticMatrix<f32>;
pub type SymmetricFormF64 = SymmetricForm<f64>;
pub type SymmetricFormF32 = SymmetricForm<f32>;
pub type LagrangianPlaneF64 = LagrangianPlane<f64>;
pub type LagrangianPlaneF32 = LagrangianPlane<f32>;
pub type LagrangianLiftF64 = LagrangianLift<f64>;
pub type LagrangianLiftF32 = LagrangianLift<f32>;
pub type SymplecticPathF64 = SymplecticPath<f64>;
pub type SymplecticPathF32 = SymplecticPath<f32>;
pub type GeneratorSpecF64 = GeneratorSpec<f64>;
pub type GeneratorSpecF32 = GeneratorSpec<f32>;
pub type HamiltonianSpecF64 = HamiltonianSpec<f64>;
pub type PeriodicOrbitF64 = PeriodicOrbit<f64>;
pub type TolerancesF64 = Tolerances<f64>;
pub type TolerancesF32 = Tolerances<f32>;
