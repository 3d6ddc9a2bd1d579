//! The subspace poset Π(J) of a clique, its order complex relative to the
//! marginal faces, collision chain maps, and the complete-graph reading of
//! single-group complexes.

mod collision;
mod export;
mod graph;
mod poset;
mod relative;

pub use collision::{collide, collisions, Collision};
pub use export::{
    chain_json, complex_json, matrix_json, poset_json, ChainJson, ComplexJson, MatrixJson,
    PosetJson, VertexJson,
};
pub use graph::{graph_cycle_encoding, Arrow, GraphEncoding};
pub use poset::{build_poset, Component, Element, Poset};
pub use relative::{relative_complex, ComplexCache, OrderComplex, Simplex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("illegal collision: {0}")]
    IllegalCollision(String),
    #[error("graph encoding is defined for 5 or 6 points, not {0}")]
    UnsupportedArity(usize),
}
