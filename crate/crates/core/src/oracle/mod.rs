//! Independent reference computations: exact characteristic polynomials,
//! Sturm root counting, dense Jacobi eigenvalues and Matrix-Tree counts.
//! Nothing here touches the tree diagonalization.

mod matrix;
mod poly;

pub use matrix::{
    adjacency_char_poly, bareiss_determinant, char_poly, coefficient_identities, dense_eigs, is_symmetric,
    laplacian_char_poly, nonzero_product, spanning_tree_count, DenseSymMatrix, IdentityReport, SimpleGraph,
    MAX_EXACT_ORDER, MAX_FLOAT_ORDER,
};
pub use poly::{sturm_count, IntPolynomial, RootCounts, SpectrumOracle, SturmChain};

use crate::diagonalize::MatrixKind;
use crate::graph::Tree;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("polynomial is zero or constant")]
    DegeneratePolynomial,
    #[error("interval must satisfy a < b")]
    BadInterval,
    #[error("matrix has non-integer entries")]
    NotInteger,
    #[error("order {n} exceeds the oracle limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("Jacobi iteration did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Root-counting oracle for the adjacency or Laplacian spectrum of `t`.
pub fn tree_spectrum_oracle(t: &Tree, kind: MatrixKind) -> Result<SpectrumOracle, OracleError> {
    let p = match kind {
        MatrixKind::Adjacency => adjacency_char_poly(t)?,
        MatrixKind::Laplacian => laplacian_char_poly(t)?,
    };
    SpectrumOracle::new(&p)
}
