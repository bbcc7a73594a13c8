//! Exact eigenvalue location for tree adjacency and Laplacian matrices.
//!
//! A tree's matrix `M + xI` is diagonalized by congruence in linear time,
//! so by Sylvester's law of inertia the signs of the diagonal count the
//! eigenvalues above, below and at any rational threshold. On top of that
//! sit interval counts, bisection localization, Laplacian energy, classical
//! invariants and an exhaustive verification harness over all free trees.

pub mod diagonalize;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod oracle;
pub mod scalar;
pub mod spectral;

pub use diagonalize::{
    count, count_adjacency, count_laplacian, count_rooted, diagonalize, diagonalize_adjacency, diagonalize_laplacian,
    DiagResult, Inertia, MatrixKind,
};
pub use graph::{canonical_code, root_at, CanonicalCode, RootedTree, Tree, TreeError};
pub use scalar::Scalar;
pub use spectral::{
    average_degree, check_conjecture, laplacian_energy, localize_laplacian, m_below_average, m_interval, SpectralError,
};
