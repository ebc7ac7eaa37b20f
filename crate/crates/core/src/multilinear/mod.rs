//! Multilinear polynomials over qubit variables and the exact basis solve
//! that turns a table of per-state values into one.
//!
//! Any function on `{0,1}ⁿ` has exactly one multilinear representation. Its
//! coefficients are `B_n⁻¹ f`, where `B_n` is the matrix of every monomial
//! evaluated at every computational basis state.

mod basis;
mod monomial;
mod polynomial;

pub use basis::{
    assignment_mask, basis_matrix, poly_from_values, row_mask, solve_coefficients, state_table, BasisMatrix,
    CoefficientSolver, StateTable, MAX_SOLVE_QUBITS, MAX_TABLE_QUBITS,
};
pub use monomial::{Monomial, MAX_VARIABLES};
pub use polynomial::MultilinearPolynomial;
