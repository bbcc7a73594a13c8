use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{root_at, Tree, TreeError};

/// Isomorphism-invariant code of a free tree: the lexicographically
/// maximal level sequence of the tree rooted at its centroid. For a
/// bicentroidal tree the smaller of the two centroid codes is used.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalCode(Vec<u32>);

impl CanonicalCode {
    pub fn levels(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn to_tree(&self) -> Result<Tree, TreeError> {
        tree_from_level_sequence(&self.0)
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl FromStr for CanonicalCode {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let levels = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u32>().map_err(|_| TreeError::InvalidLevelSequence(format!("bad level `{}`", tok)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let tree = tree_from_level_sequence(&levels)?;
        let code = canonical_code(&tree);
        if code.0 != levels {
            return Err(TreeError::InvalidLevelSequence(format!("`{}` is not in canonical form", s)));
        }
        Ok(code)
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Builds a tree from a preorder level sequence (root at level 0). Vertex
/// `i` of the result is the `i`-th entry of the sequence.
pub fn tree_from_level_sequence(levels: &[u32]) -> Result<Tree, TreeError> {
    if levels.is_empty() {
        return Err(TreeError::InvalidLevelSequence("empty".into()));
    }
    if levels[0] != 0 {
        return Err(TreeError::InvalidLevelSequence("first level must be 0".into()));
    }
    // stack[d] = most recent vertex at depth d
    let mut stack: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(levels.len() - 1);
    for (i, &l) in levels.iter().enumerate().skip(1) {
        let l = l as usize;
        if l == 0 || l > stack.len() {
            return Err(TreeError::InvalidLevelSequence(format!(
                "level {} at position {} does not follow its predecessor",
                l, i
            )));
        }
        stack.truncate(l);
        edges.push((stack[l - 1], i));
        stack.push(i);
    }
    Tree::from_edges(levels.len(), &edges)
}

/// Centroid vertices (one or two, ascending).
pub fn centroids(t: &Tree) -> Vec<usize> {
    let n = t.order();
    let rt = root_at(t, 0).expect("vertex 0 exists");
    let mut size = vec![1usize; n];
    for &v in rt.order() {
        if let Some(p) = rt.parent(v) {
            size[p] += size[v];
        }
    }
    let mut best = Vec::new();
    let mut best_weight = usize::MAX;
    for v in 0..n {
        let mut weight = n - size[v];
        for &c in rt.children(v) {
            weight = weight.max(size[c]);
        }
        match weight.cmp(&best_weight) {
            std::cmp::Ordering::Less => {
                best_weight = weight;
                best = vec![v];
            }
            std::cmp::Ordering::Equal => best.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    best
}

/// Lexicographically maximal level sequence of `t` rooted at `root`.
pub fn rooted_level_sequence(t: &Tree, root: usize) -> Result<Vec<u32>, TreeError> {
    let rt = root_at(t, root)?;
    let mut seqs: Vec<Vec<u32>> = vec![Vec::new(); t.order()];
    for &v in rt.order() {
        let mut kids: Vec<Vec<u32>> = rt.children(v).iter().map(|&c| std::mem::take(&mut seqs[c])).collect();
        // Descending order of child sequences maximizes the concatenation:
        // every entry after a subtree's first exceeds the next sibling's root level.
        kids.sort_unstable_by(|a, b| b.cmp(a));
        let mut s = Vec::with_capacity(1 + kids.iter().map(Vec::len).sum::<usize>());
        s.push(0);
        for k in kids {
            s.extend(k.into_iter().map(|l| l + 1));
        }
        seqs[v] = s;
    }
    Ok(std::mem::take(&mut seqs[root]))
}

pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let code = centroids(t)
        .into_iter()
        .map(|c| rooted_level_sequence(t, c).expect("centroid is a vertex"))
        .min()
        .expect("every tree has a centroid");
    CanonicalCode(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_path, generate_star};

    #[test]
    fn relabeled_paths_share_code() {
        let a = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Tree::from_edges(4, &[(3, 1), (1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
    }

    #[test]
    fn path_and_star_differ() {
        let p = canonical_code(&generate_path(4).unwrap());
        let s = canonical_code(&generate_star(4).unwrap());
        assert_ne!(p, s);
        assert_eq!(s.to_string(), "0,1,1,1");
        assert_eq!(p.to_string(), "0,1,2,1");
    }

    #[test]
    fn centroid_counts() {
        assert_eq!(centroids(&generate_path(4).unwrap()), vec![1, 2]);
        assert_eq!(centroids(&generate_path(5).unwrap()), vec![2]);
        assert_eq!(centroids(&generate_star(6).unwrap()), vec![0]);
        assert_eq!(centroids(&Tree::single_vertex()), vec![0]);
    }

    #[test]
    fn level_sequence_round_trip() {
        let t = tree_from_level_sequence(&[0, 1, 2, 2, 1]).unwrap();
        assert_eq!(t.degrees(), vec![2, 3, 1, 1, 1]);
        let code = canonical_code(&t);
        let back = code.to_tree().unwrap();
        assert_eq!(canonical_code(&back), code);
        assert_eq!(code.to_string().parse::<CanonicalCode>().unwrap(), code);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(tree_from_level_sequence(&[]).is_err());
        assert!(tree_from_level_sequence(&[1, 2]).is_err());
        assert!(tree_from_level_sequence(&[0, 2]).is_err());
        assert!(tree_from_level_sequence(&[0, 1, 0]).is_err());
        // valid tree, non-canonical ordering
        assert!("0,1,1,2".parse::<CanonicalCode>().is_err());
        assert!("0,a".parse::<CanonicalCode>().is_err());
    }
}
