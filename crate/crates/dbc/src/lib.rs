//! Double Bruhat cells of SL(n, ℂ) as Poisson groupoids, computationally.
//!
//! The crate realizes, over SL(n, ℂ) with the standard upper/lower Borel
//! pair, the interlocking structures living on double Bruhat cells
//! G^{u,v} = BuB ∩ B_-vB_-:
//!
//! - the unique factorizations g = c·b and g = b_-·c′ through the slices
//!   C_v̄ = Nv̄ ∩ v̄N_-, and cell detection from submatrix rank patterns
//!   ([`cells`]);
//! - the standard r-matrix Poisson structure, its pushforwards to flag and
//!   coset charts, dressing vector fields, and a generic pointwise verifier
//!   for (anti-)Poisson maps ([`poisson`]);
//! - the groupoid structure on G^{v,v} over the Bruhat cell BvB/B, the
//!   ambient action groupoid (G/B) × B_-, the Poisson embeddings into it,
//!   the twist map, and the commuting left/right actions on G^{u,v}
//!   ([`groupoid`]);
//! - symplectic-leaf classification by generalized minors and the
//!   torus-valued invariant χ, leaf-stabilizer and leaf-count data, and the
//!   symplectic-groupoid checks for the leaf through a representative v̄
//!   ([`leaves`]);
//! - a deterministic verification engine with JSON reports ([`verify`])
//!   behind the `dbc` binary and the examples.
//!
//! Numerics are dense complex linear algebra plus forward-mode automatic
//! differentiation ([`num`]); Weyl-group combinatorics live in [`weyl`].

pub mod cells;
pub mod cli;
pub mod error;
pub mod golden;
pub mod groupoid;
pub mod leaves;
pub mod num;
pub mod poisson;
pub mod verify;
pub mod weyl;

pub use error::{DbcError, Result};
pub use num::{CMat, Jet, Mat, Tolerance, C64};
