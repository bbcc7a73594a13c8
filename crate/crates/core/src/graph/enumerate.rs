//! Constant-amortized-time generation of free trees.
//!
//! Trees are produced as level sequences rooted at a center, stepping with
//! the Beyer–Hedetniemi successor for rooted trees and skipping every
//! sequence that is not the canonical representative of its free tree
//! (Wright, Richmond, Odlyzko and McKay).

use super::{tree_from_level_sequence, Tree, TreeError};

pub const DEFAULT_MAX_ENUM_ORDER: usize = 20;

/// Stream of one representative per isomorphism class of free trees.
#[derive(Clone, Debug)]
pub struct FreeTrees {
    pending: Option<Vec<u32>>,
    single: bool,
}

pub fn enumerate_free_trees(n: usize) -> Result<FreeTrees, TreeError> {
    enumerate_free_trees_with_max(n, DEFAULT_MAX_ENUM_ORDER)
}

pub fn enumerate_free_trees_with_max(n: usize, max: usize) -> Result<FreeTrees, TreeError> {
    if n == 0 || n > max {
        return Err(TreeError::OrderOutOfRange { n, max });
    }
    if n == 1 {
        return Ok(FreeTrees { pending: None, single: true });
    }
    // start at the path, rooted at its center
    let mut layout: Vec<u32> = (0..=(n / 2) as u32).collect();
    layout.extend(1..n.div_ceil(2) as u32);
    Ok(FreeTrees { pending: Some(layout), single: false })
}

impl FreeTrees {
    /// Next level sequence in enumeration order.
    pub fn next_level_sequence(&mut self) -> Option<Vec<u32>> {
        if self.single {
            self.single = false;
            return Some(vec![0]);
        }
        let candidate = self.pending.take()?;
        let tree = next_free(candidate)?;
        self.pending = next_rooted(&tree, None);
        Some(tree)
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        self.next_level_sequence().map(|l| tree_from_level_sequence(&l).expect("generator emits valid level sequences"))
    }
}

/// Beyer–Hedetniemi successor. With `p` unset, the last vertex deeper than
/// level 1 is advanced.
fn next_rooted(prev: &[u32], p: Option<usize>) -> Option<Vec<u32>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = prev.len() - 1;
            while prev[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while prev[q] != prev[p] - 1 {
        q -= 1;
    }
    let mut out = prev.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

/// Splits off the root's first subtree: `(left, rest)` where `left` is the
/// subtree re-leveled from 0 and `rest` is the tree without it.
fn split(layout: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let m = layout.iter().enumerate().skip(1).filter(|&(_, &l)| l == 1).nth(1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Returns `candidate` if it is canonical for its free tree, otherwise jumps
/// to the next canonical sequence.
fn next_free(candidate: Vec<u32>) -> Option<Vec<u32>> {
    let (left, rest) = split(&candidate);
    let left_height = left.iter().max().copied().unwrap_or(0);
    let rest_height = rest.iter().max().copied().unwrap_or(0);
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height && (left.len() > rest.len() || (left.len() == rest.len() && left > rest)) {
        valid = false;
    }
    if valid {
        return Some(candidate);
    }
    let p = left.len();
    let mut next = next_rooted(&candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let h = new_left.iter().max().copied().unwrap_or(0) as usize;
        let len = next.len();
        for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = k as u32 + 1;
        }
    }
    Some(next)
}
