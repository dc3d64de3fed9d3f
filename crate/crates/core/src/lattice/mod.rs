//! Exact lattice membership: an echelon form over `Z` for sparse vectors, and
//! Howell/Smith forms over `Z/p^k` for dense vectors, both able to explain
//! their answers (a combination of generators, or a separating functional).

pub mod integer;
pub mod modular;

pub use integer::{IntegerLattice, SparseVec};
pub use modular::{ModularLattice, Modulus};
