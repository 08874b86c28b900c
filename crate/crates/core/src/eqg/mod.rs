//! Difference-operator representation of the elliptic quantum group.

pub mod checks;
pub mod grid;
pub mod quadruple;
pub mod rmatrix;
pub mod shift;

pub use checks::{
    determinant_check, exchange_identity_residual, generic_lambda, generic_z, highest_weight_check, residue_sum_check, restriction_check, rll_residual,
    single_site_check,
};
pub use grid::Grid;
pub use quadruple::{Coefficients, OperatorQuadruple};
pub use rmatrix::{ktwist_check, qybe_residual, r_matrix};
pub use shift::ShiftOperator;
