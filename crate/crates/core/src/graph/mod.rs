//! Trees: construction, parsing, rooting, generators, canonical codes and
//! exhaustive enumeration of free trees.

mod canonical;
mod enumerate;
mod generate;
mod parse;
mod tree;

use thiserror::Error;

pub use canonical::{canonical_code, centroids, rooted_level_sequence, tree_from_level_sequence, CanonicalCode};
pub use enumerate::{enumerate_free_trees, enumerate_free_trees_with_max, FreeTrees, DEFAULT_MAX_ENUM_ORDER};
pub use generate::{
    generate_caterpillar, generate_diameter4, generate_path, generate_star, prufer_decode, random_tree,
};
pub use parse::{parse_edge_list, ParseError};
pub use tree::{root_at, RootedTree, Tree};

pub(crate) use tree::DisjointSets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("{n} vertices need {} edges, got {edges}", n - 1)]
    WrongEdgeCount { n: usize, edges: usize },
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("edge {u}-{v} closes a cycle")]
    Cycle { u: usize, v: usize },
    #[error("root {root} out of range for order {n}")]
    RootOutOfRange { root: usize, n: usize },
    #[error("order {n} outside supported range 1..={max}")]
    OrderOutOfRange { n: usize, max: usize },
    #[error("invalid level sequence: {0}")]
    InvalidLevelSequence(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
}
