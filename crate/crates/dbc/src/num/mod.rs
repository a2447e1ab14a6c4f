//! Complex dense linear algebra with tolerance-aware rank decisions, the LDU
//! (Gaussian) factorization on the big cell, and forward-mode automatic
//! differentiation over ℂ. Everything downstream — bivectors, Jacobians,
//! structure maps — is built on these kernels.

pub mod jet;
pub mod mat;
pub mod scalar;
pub mod svd;
pub mod tol;

pub use jet::{const_matrix, jet_eval, jet_eval2, jet_matrix, Jet};
pub use mat::{gaussian_decompose, CMat, Mat};
pub use scalar::{c, cr, Scalar, C64};
pub use svd::{cond, null_space, orthonormal_basis, projection_residual, rank_tol, rank_tol_scaled, svd_values};
pub use tol::{rel_dev, Tolerance};
