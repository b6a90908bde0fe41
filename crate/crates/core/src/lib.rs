//! Exact combinatorial search and verification for matching Ramsey numbers,
//! general Kneser hypergraphs, alternation numbers, τ-matching chromatic
//! numbers, and a generalized Z_p-Tucker lemma.
//!
//! Everything in this crate is exact and desk-scale: solvers are
//! branch-and-bound searches over bitset-encoded hypergraphs, and every
//! nontrivial claim is backed by a witness (a coloring, an ordering, a
//! label table) that can be re-checked independently.

pub mod alternation;
pub mod budget;
pub mod error;
pub mod hypergraph;
pub mod kneser;
pub mod matchcolor;
pub mod ramsey;
pub mod tucker;

pub use budget::Budget;
pub use error::Error;
pub use hypergraph::{ExtendedNat, Hypergraph, VertexSet};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
