//! Finite, combinatorial models of non-symmetric multicategories and
//! enriched categories, with executable checks for the structural theorems
//! that hold at this level: inert/active factorization, the category-of-
//! operators round trip, enrichment as algebra data, completeness and
//! equivalence detection, Segal-style conditions on truncated simplicial
//! sets, and certified inner-anodyne filtrations of chaotic nerves.

pub mod corpus;
pub mod enrich;
pub mod fincat;
pub mod anodyne;
pub mod multicat;
pub mod segal;
pub mod simplex;

/// Default enumeration caps used by the command-line tool and tests.
pub mod caps {
    pub const DEGREE: usize = 8;
    pub const DIM: usize = 5;
    pub const ARITY: usize = 4;
    pub const LEVEL: usize = 3;
}
