//! KV and grt computations: associators, KV solutions, Duflo series and dimension tables.

mod associator;
mod duflo;
mod grt;
mod kv;
mod reports;

pub use associator::{associator_solve, hexagon_residuals, inversion_residual, pentagon_residual, t3_basis};
pub use duflo::{bernoulli_duflo, bernoulli_numbers, bernoulli_phi, solve_duflo, DufloSeries};
pub use grt::{double_commutator_profile, grt_residuals, grt_solve, ihara_bracket, nu_map, sigma, verify_dpsi};
pub use kv::{
    duflo_from_log, duflo_from_phi, ghat, hkv_membership, kappa_duflo, kv1_classical_residual, kv_check,
    kv_from_associator, phi_from_F, pi2, twist, DufloOutcome, HkvClass, KvReport, Pi2Value,
};
pub use reports::{cohomology_report, dims_report, CohomologyRow, Complex, DimRow, Subspace};
