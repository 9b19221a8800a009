//! Exact integer linear algebra: normal forms, sublattices and lattice
//! involutions.

mod involution;
mod matrix;
mod normal_form;
mod sublattice;

pub use involution::{involution_invariants, normal_form, tate_ranks, GammaLatticeInvariants};
pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, smith_normal_form, Smith};
pub use sublattice::{hermite_basis, restrict_involution, sublattices_equal, Sublattice};
