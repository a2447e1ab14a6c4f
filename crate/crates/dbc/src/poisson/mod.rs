//! The standard multiplicative Poisson structure on SL(n, ℂ) and its
//! quotient, restricted, and mixed-product relatives, with a pointwise
//! numerical verifier for every (anti-)Poisson-map claim used downstream.

pub mod dressing;
pub mod rmatrix;
pub mod spaces;
pub mod structural;

pub use dressing::{dressing_eval, dressing_membership_dev, dressing_vs_sharp, dual_basis, DualElement};
pub use rmatrix::{
    adjoint_matrix, basis_index, cartan_basis, covector_of, pist_coeffs, pist_coeffs_jet,
    pist_coeffs_t, sharp, sl_basis, sl_coeffs, sl_dim, split_triangular, RMatrix,
};
pub use spaces::{
    antisymmetry_dev, bracket_eval, bracket_eval_direct, bracket_matrix, check_entry_bounds,
    entry_obs, identity_map_check, minor_obs, observable_jacobian, pi1_via_pushforward,
    pi1_via_sigma, poisson_map_check, BMinusSpace, CosetCellSpace, FlagCellSpace, GroupSpace,
    MapCheck, PoissonSpace, ProductSpace,
};
pub use structural::{
    cell_tangency_dev, jacobi_dev, moment_submersion_ranks, multiplicativity_dev,
    slice_coisotropy_dev, slice_sample, weak_pair_dev, xalpha_invariance_dev,
};
