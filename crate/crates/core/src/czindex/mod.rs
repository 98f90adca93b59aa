//! The extended Conley–Zehnder index `ν`, the symplectic Cayley transform and
//! its calculus, generating functions and the index of concavity, and the
//! classical winding-number definition used as an independent oracle.

mod cayley;
mod concavity;
mod nu;
mod oracle;

pub use cayley::{
    cayley, cayley_product, cayley_reconstruction_residual, cayley_sum_inverse, classify, CayleyTransform, SpClass,
};
pub use concavity::{
    concavity_index, det_factorization_check, generating_function, nu_via_concavity, ConcavityRecord,
    GeneratingFunctionData,
};
pub use nu::{graph_lagrangian_path, nu, nu_half, nu_inverse_check, nu_power, nu_product, HalfInt, NuPower, NuProduct};
pub use oracle::{cz_winding_oracle, sp_minus_basepoint};

#[cfg(test)]
mod tests;
