//! Linear algebra over `Z[pi x pi]`: row reduction of the top coboundary
//! matrix and the vanishing criterion for degree-4 classes.

pub mod character;
pub mod criterion;
pub mod reduction;

pub use character::{chi, chi_group, chi_ring, expand_terms, kernel_witness, Generator, IdealTerm};
pub use criterion::{class_is_zero, sigma, CriterionValue, Strategy, CHARACTER_STRATEGY};
pub use reduction::{
    nonzero_rows, row_reduce, EpsilonSign, MultiplicationSide, ReductionLog, RingMatrix, RowOp,
};
