//! The vanishing question for elements of `I^{⊗k}` modulo the relations
//! `s.t - chi(s) t`, with certificates that can be replayed independently.

pub mod certificate;
pub mod full_ring;
pub mod quotient;
pub mod relations;
pub mod search;
pub mod value;
pub mod windowed;

pub use certificate::{
    Certificate, FunctionalEntry, Outcome, RelationTermDoc, TargetDoc, Witness, CERTIFICATE_FORMAT,
};
pub use full_ring::{orbit_representative, reduce_full_ring, FULL_RING_STRATEGY};
pub use quotient::{
    finite_quotient_test, QuotientBudget, QuotientGroup, QuotientModule, QuotientSpec,
    QuotientVerdict, QUOTIENT_STRATEGY,
};
pub use relations::{
    expand_relations, relation, relation_generators, BasisKind, Key, KeyComb, RelationTerm,
};
pub use search::{quotient_grid_search, CellReport, CellStatus, Grid, SearchBudget, SearchReport};
pub use value::{obstruction_value, obstruction_value_with};
pub use windowed::{windowed_membership, WindowedSearch, WINDOWED_STRATEGY};
