//! Exact computation of the topological-complexity obstruction for the Klein
//! bottle `K`: the Δ-complex `K×K`, cochains with local coefficients in group
//! rings, the twisted cup product, row reduction over `Z[pi x pi]` and
//! certificate search for the vanishing question.

pub mod delta_complex;
pub mod error;
pub mod group_ring;
pub mod groupring_linalg;
pub mod lattice;
pub mod obstruction;
pub mod twisted_cohomology;
pub mod verify;

pub use error::{Error, Result};
pub use group_ring::{
    Group, GroupElement, GroupTensor, IdealElement, IdealTensor, KleinRing, Pair, PairElement,
    PairRing, RingElement,
};
pub use groupring_linalg::{
    class_is_zero, row_reduce, sigma, EpsilonSign, Generator, ReductionLog, Strategy,
};
pub use obstruction::{
    finite_quotient_test, obstruction_value, quotient_grid_search, reduce_full_ring,
    windowed_membership, Certificate, Grid, Outcome, QuotientBudget, QuotientSpec, SearchBudget,
    WindowedSearch,
};
pub use verify::{verify_certificate, VerifyReport};
