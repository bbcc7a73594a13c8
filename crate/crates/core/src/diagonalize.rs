//! Linear-time congruence diagonalization of `A + xI` and `L + xI` for a
//! tree, and the inertia counts that follow from Sylvester's law.
//!
//! Both routines walk the rooted tree bottom-up. Each non-leaf vertex
//! subtracts the reciprocals of its children's values; if some child holds
//! zero, that child is set to `2`, the vertex to `-1/2`, and the vertex is
//! cut from its parent. The two matrices differ only in the starting
//! values (`x` versus `deg(v) + x`).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{root_at, RootedTree, Tree};
use crate::scalar::{Scalar, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "laplacian",
        })
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "adjacency" | "a" => Ok(MatrixKind::Adjacency),
            "laplacian" | "l" => Ok(MatrixKind::Laplacian),
            other => Err(format!("unknown matrix kind `{}`", other)),
        }
    }
}

/// Final diagonal of a congruence diagonalization plus its inertia.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagResult {
    /// Diagonal entry of each vertex, indexed by vertex id.
    pub values: Vec<Scalar>,
    /// Post-order used for the run; `values` read in this order is the
    /// diagonal matrix as the algorithm numbers it.
    pub order: Vec<usize>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
    pub matrix_kind: MatrixKind,
    pub shift: Scalar,
}

impl DiagResult {
    pub fn post_order_values(&self) -> Vec<Scalar> {
        self.order.iter().map(|&v| self.values[v].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Eigenvalue counts relative to a threshold `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub greater: usize,
    pub less: usize,
    pub multiplicity: usize,
}

impl Inertia {
    pub fn total(&self) -> usize {
        self.greater + self.less + self.multiplicity
    }
}

/// Diagonal matrix congruent to `A + xI`.
pub fn diagonalize_adjacency(rt: &RootedTree<'_>, x: &Scalar) -> DiagResult {
    let init = vec![x.clone(); rt.len()];
    run(rt, init, MatrixKind::Adjacency, x)
}

/// Diagonal matrix congruent to `L + xI`.
pub fn diagonalize_laplacian(rt: &RootedTree<'_>, x: &Scalar) -> DiagResult {
    let t = rt.base();
    let init = (0..rt.len()).map(|v| Scalar::from_int(t.degree(v) as i64) + x).collect();
    run(rt, init, MatrixKind::Laplacian, x)
}

pub fn diagonalize(rt: &RootedTree<'_>, kind: MatrixKind, x: &Scalar) -> DiagResult {
    match kind {
        MatrixKind::Adjacency => diagonalize_adjacency(rt, x),
        MatrixKind::Laplacian => diagonalize_laplacian(rt, x),
    }
}

fn run(rt: &RootedTree<'_>, mut d: Vec<Scalar>, kind: MatrixKind, x: &Scalar) -> DiagResult {
    let n = rt.len();
    // severed[v]: the edge from v to its parent has been removed
    let mut severed = vec![false; n];
    let neg_half = Scalar::new(-1, 2);
    let two = Scalar::from_int(2);

    for &v in rt.order() {
        let mut live = rt.children(v).iter().copied().filter(|&c| !severed[c]).peekable();
        if live.peek().is_none() {
            continue;
        }
        let mut zero_child: Option<usize> = None;
        let mut acc = Scalar::zero();
        for c in live {
            if d[c].is_zero() {
                if zero_child.map_or(true, |z| rt.position(c) < rt.position(z)) {
                    zero_child = Some(c);
                }
            } else if zero_child.is_none() {
                acc += &d[c].recip();
            }
        }
        match zero_child {
            None => d[v] -= &acc,
            Some(j) => {
                d[v] = neg_half.clone();
                d[j] = two.clone();
                if rt.parent(v).is_some() {
                    severed[v] = true;
                }
            }
        }
    }

    let (mut n_pos, mut n_neg, mut n_zero) = (0, 0, 0);
    for value in &d {
        match value.sign() {
            Sign::Positive => n_pos += 1,
            Sign::Negative => n_neg += 1,
            Sign::Zero => n_zero += 1,
        }
    }
    DiagResult { values: d, order: rt.order().to_vec(), n_pos, n_neg, n_zero, matrix_kind: kind, shift: x.clone() }
}

/// Counts of adjacency eigenvalues above, below and equal to `alpha`.
pub fn count_adjacency(t: &Tree, alpha: &Scalar) -> Inertia {
    count(t, MatrixKind::Adjacency, alpha)
}

/// Counts of Laplacian eigenvalues above, below and equal to `alpha`.
pub fn count_laplacian(t: &Tree, alpha: &Scalar) -> Inertia {
    count(t, MatrixKind::Laplacian, alpha)
}

pub fn count(t: &Tree, kind: MatrixKind, alpha: &Scalar) -> Inertia {
    let rt = root_at(t, 0).expect("trees have a vertex 0");
    count_rooted(&rt, kind, alpha)
}

/// Inertia at `alpha` for an already rooted tree; diagonalizes with shift
/// `-alpha`.
pub fn count_rooted(rt: &RootedTree<'_>, kind: MatrixKind, alpha: &Scalar) -> Inertia {
    let r = diagonalize(rt, kind, &-alpha);
    Inertia { greater: r.n_pos, less: r.n_neg, multiplicity: r.n_zero }
}

/// Floating-point variant of the same loop, for throughput measurements
/// only. Values with `|d| <= eps` are treated as zero, so results near an
/// eigenvalue are unreliable.
pub fn diagonalize_f64(rt: &RootedTree<'_>, kind: MatrixKind, x: f64, eps: f64) -> Vec<f64> {
    let t = rt.base();
    let n = rt.len();
    let mut d: Vec<f64> = (0..n)
        .map(|v| match kind {
            MatrixKind::Adjacency => x,
            MatrixKind::Laplacian => t.degree(v) as f64 + x,
        })
        .collect();
    let mut severed = vec![false; n];
    for &v in rt.order() {
        let kids: Vec<usize> = rt.children(v).iter().copied().filter(|&c| !severed[c]).collect();
        if kids.is_empty() {
            continue;
        }
        match kids.iter().copied().filter(|&c| d[c].abs() <= eps).min_by_key(|&c| rt.position(c)) {
            None => d[v] -= kids.iter().map(|&c| 1.0 / d[c]).sum::<f64>(),
            Some(j) => {
                d[v] = -0.5;
                d[j] = 2.0;
                if rt.parent(v).is_some() {
                    severed[v] = true;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_path, generate_star};

    fn example_tree() -> Tree {
        Tree::from_edges(5, &[(4, 2), (4, 3), (2, 0), (2, 1)]).unwrap()
    }

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    fn vals(list: &[&str]) -> Vec<Scalar> {
        list.iter().map(|v| s(v)).collect()
    }

    #[test]
    fn adjacency_x2() {
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let r = diagonalize_adjacency(&rt, &s("2"));
        assert_eq!(r.values, vals(&["2", "2", "1", "2", "1/2"]));
        assert_eq!((r.n_pos, r.n_neg, r.n_zero), (5, 0, 0));
    }

    #[test]
    fn adjacency_x0_takes_zero_branch() {
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let r = diagonalize_adjacency(&rt, &Scalar::zero());
        assert_eq!(r.values, vals(&["2", "0", "-1/2", "2", "-1/2"]));
        assert_eq!((r.n_pos, r.n_neg, r.n_zero), (2, 2, 1));
    }

    #[test]
    fn laplacian_x_minus_one() {
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let r = diagonalize_laplacian(&rt, &s("-1"));
        assert_eq!(r.values, vals(&["2", "0", "-1/2", "2", "-1/2"]));
    }

    #[test]
    fn laplacian_at_average_degree() {
        // Root value follows from det(L - 8/5 I) = -5928/3125 divided by the
        // other four entries.
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let r = diagonalize_laplacian(&rt, &s("-8/5"));
        assert_eq!(r.values, vals(&["-3/5", "-3/5", "71/15", "-3/5", "1976/1065"]));
        let det = r.values.iter().fold(Scalar::one(), |acc, v| acc * v);
        assert_eq!(det, s("-5928/3125"));
        assert_eq!((r.n_pos, r.n_neg, r.n_zero), (2, 3, 0));
    }

    #[test]
    fn single_vertex_keeps_initial_value() {
        let t = Tree::single_vertex();
        let rt = root_at(&t, 0).unwrap();
        assert_eq!(diagonalize_adjacency(&rt, &s("7/3")).values, vals(&["7/3"]));
        assert_eq!(diagonalize_laplacian(&rt, &s("7/3")).values, vals(&["7/3"]));
    }

    #[test]
    fn single_edge_laplacian_has_one_zero() {
        let t = generate_path(2).unwrap();
        let rt = root_at(&t, 0).unwrap();
        let r = diagonalize_laplacian(&rt, &Scalar::zero());
        assert_eq!(r.values, vals(&["0", "1"]));
        assert_eq!(r.n_zero, 1);
    }

    #[test]
    fn smallest_post_order_zero_child_chosen() {
        // star at x = 0: every leaf holds zero
        let t = generate_star(4).unwrap();
        let rt = root_at(&t, 0).unwrap();
        let r = diagonalize_adjacency(&rt, &Scalar::zero());
        assert_eq!(r.values, vals(&["-1/2", "2", "0", "0"]));
    }

    #[test]
    fn input_not_mutated_across_shifts() {
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let a = diagonalize_adjacency(&rt, &Scalar::zero());
        let b = diagonalize_adjacency(&rt, &s("2"));
        let c = diagonalize_adjacency(&rt, &Scalar::zero());
        assert_eq!(a, c);
        assert_ne!(a.values, b.values);
    }

    #[test]
    fn counts_on_example_tree() {
        let t = example_tree();
        let c = |kind, a: &str| {
            let i = count(&t, kind, &s(a));
            (i.greater, i.less, i.multiplicity)
        };
        assert_eq!(c(MatrixKind::Adjacency, "0"), (2, 2, 1));
        assert_eq!(c(MatrixKind::Adjacency, "-2"), (5, 0, 0));
        assert_eq!(c(MatrixKind::Adjacency, "5"), (0, 5, 0));
        assert_eq!(c(MatrixKind::Laplacian, "1"), (2, 2, 1));
        assert_eq!(c(MatrixKind::Laplacian, "8/5"), (2, 3, 0));
        assert_eq!(c(MatrixKind::Laplacian, "0"), (4, 0, 1));
    }

    #[test]
    fn post_order_values_follow_order() {
        let t = example_tree();
        let mut children = vec![Vec::new(); 5];
        children[4] = vec![3, 2];
        children[2] = vec![1, 0];
        let rt = RootedTree::from_children(&t, 4, children).unwrap();
        let r = diagonalize_adjacency(&rt, &s("2"));
        assert_eq!(r.post_order_values(), vals(&["2", "2", "2", "1", "1/2"]));
    }

    #[test]
    fn float_mode_matches_exact_away_from_eigenvalues() {
        let t = example_tree();
        let rt = root_at(&t, 4).unwrap();
        let f = diagonalize_f64(&rt, MatrixKind::Laplacian, -1.6, 1e-12);
        let e = diagonalize_laplacian(&rt, &s("-8/5"));
        for (a, b) in f.iter().zip(&e.values) {
            assert!((a - b.to_f64()).abs() < 1e-12);
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Laplacian".parse::<MatrixKind>().unwrap(), MatrixKind::Laplacian);
        assert!("normalized".parse::<MatrixKind>().is_err());
    }
}
