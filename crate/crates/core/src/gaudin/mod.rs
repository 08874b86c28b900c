//! The elliptic Gaudin system: `S(z)`, the Hamiltonians `H₀..H_n` as
//! differential operators in `λ`, and the Bethe ansatz.

pub mod bethe;
pub mod diffop;
pub mod hamiltonians;
pub mod rep;

pub use bethe::{bethe_eigen_report, bethe_residuals, bethe_vector_jet, solve_gaudin_bethe, solve_gaudin_bethe_multistart, BetheOptions, EigenReport, FReading, GaudinBethe};
pub use diffop::{LambdaDiffOp, VecJet};
pub use hamiltonians::{commutator_residual, difference_residual, FieldOps, GaudinModel};
pub use rep::{Sl2Rep, TensorModule, ZeroWeightSpace};

#[cfg(test)]
mod tests;
