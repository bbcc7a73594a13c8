use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Tree, TreeError};

/// Path `0 - 1 - ... - (n-1)`.
pub fn generate_path(n: usize) -> Result<Tree, TreeError> {
    if n == 0 {
        return Err(TreeError::Empty);
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Tree::from_edges(n, &edges)
}

/// Star with center `0`.
pub fn generate_star(n: usize) -> Result<Tree, TreeError> {
    if n == 0 {
        return Err(TreeError::Empty);
    }
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Tree::from_edges(n, &edges)
}

/// Caterpillar whose spine is `0 - 1 - ... - (k-1)` with `legs[i]` pendant
/// leaves hanging off spine vertex `i`.
pub fn generate_caterpillar(legs: &[usize]) -> Result<Tree, TreeError> {
    if legs.is_empty() {
        return Err(TreeError::InvalidShape("caterpillar needs a non-empty spine".into()));
    }
    let k = legs.len();
    let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    let mut next = k;
    for (i, &l) in legs.iter().enumerate() {
        for _ in 0..l {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::from_edges(next, &edges)
}

/// The prototypical diameter-4 tree: root `0` with `p` pendant leaves and
/// `r = s.len()` intermediate neighbors `1..=r`, where neighbor `i` carries
/// `s[i-1]` leaves. Intermediate leaves are numbered next, then the root's.
pub fn generate_diameter4(p: usize, s: &[usize]) -> Result<Tree, TreeError> {
    if s.len() < 2 {
        return Err(TreeError::InvalidShape(format!(
            "diameter-4 tree needs at least 2 intermediate vertices, got {}",
            s.len()
        )));
    }
    if let Some(i) = s.iter().position(|&c| c == 0) {
        return Err(TreeError::InvalidShape(format!("intermediate vertex {} has no leaves", i + 1)));
    }
    let r = s.len();
    let mut edges: Vec<_> = (1..=r).map(|i| (0, i)).collect();
    let mut next = r + 1;
    for (i, &count) in s.iter().enumerate() {
        for _ in 0..count {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    for _ in 0..p {
        edges.push((0, next));
        next += 1;
    }
    Tree::from_edges(next, &edges)
}

/// Decodes a Prüfer sequence over `0..n` where `n = seq.len() + 2`.
pub fn prufer_decode(seq: &[usize]) -> Result<Tree, TreeError> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(TreeError::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    Tree::from_edges(n, &edges)
}

/// Uniformly random labeled tree on `n` vertices, reproducible from `seed`
/// on every platform.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, TreeError> {
    match n {
        0 => Err(TreeError::Empty),
        1 => Ok(Tree::single_vertex()),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(&seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_degrees(t: &Tree) -> Vec<usize> {
        let mut d = t.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    #[test]
    fn path_and_star_shapes() {
        assert_eq!(generate_path(1).unwrap().order(), 1);
        assert_eq!(generate_path(4).unwrap().degrees(), vec![1, 2, 2, 1]);
        assert_eq!(generate_star(5).unwrap().degrees(), vec![4, 1, 1, 1, 1]);
        assert!(generate_path(0).is_err());
    }

    #[test]
    fn caterpillar_shape() {
        let t = generate_caterpillar(&[2, 0, 1]).unwrap();
        assert_eq!(t.order(), 6);
        assert_eq!(t.degrees()[..3], [3, 2, 2]);
        assert!(generate_caterpillar(&[]).is_err());
    }

    #[test]
    fn diameter4_smallest() {
        let t = generate_diameter4(0, &[1, 1]).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(sorted_degrees(&t), vec![2, 2, 2, 1, 1]);
        let d = t.distances_from(3);
        assert_eq!(d.iter().max(), Some(&4));
    }

    #[test]
    fn diameter4_counts() {
        let t = generate_diameter4(2, &[1, 3, 2]).unwrap();
        // n = p + 1 + r + sum s
        assert_eq!(t.order(), 2 + 1 + 3 + 6);
        assert_eq!(t.degree(0), 5);
        assert!(generate_diameter4(0, &[1]).is_err());
        assert!(generate_diameter4(0, &[1, 0]).is_err());
    }

    #[test]
    fn prufer_known_sequence() {
        // classic example: sequence (3,3,3,4) on 6 vertices
        let t = prufer_decode(&[3, 3, 3, 4]).unwrap();
        assert_eq!(t.edges(), vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn random_tree_is_deterministic() {
        let a = random_tree(10, 42).unwrap();
        let b = random_tree(10, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.audit());
        assert_ne!(random_tree(30, 1).unwrap(), random_tree(30, 2).unwrap());
    }
}
