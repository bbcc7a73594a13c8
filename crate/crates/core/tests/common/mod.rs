//! Reference implementations used only by the tests. None of these call
//! into the library's enumeration, canonical codes or dynamic programs.
#![allow(dead_code)]

use std::collections::BTreeSet;

use treespec::Tree;

/// Center-rooted AHU string; equal for isomorphic free trees.
pub fn ahu_code(t: &Tree) -> String {
    let n = t.order();
    if n == 1 {
        return "()".to_string();
    }
    // peel leaves to find the center
    let mut deg: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in t.neighbors(v) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu_rooted(t, c, usize::MAX)).min().unwrap()
}

fn ahu_rooted(t: &Tree, v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = t.neighbors(v).iter().filter(|&&w| w != parent).map(|&w| ahu_rooted(t, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Tree from a Prüfer sequence, by the textbook quadratic decoding.
pub fn prufer_tree(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).unwrap()
}

/// Isomorphism classes of all labeled trees on `n` vertices, one Prüfer
/// sequence at a time.
pub fn free_trees_by_prufer(n: usize) -> BTreeSet<String> {
    if n <= 2 {
        return free_trees_by_growth(n).into_iter().map(|t| ahu_code(&t)).collect();
    }
    let mut seen = BTreeSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(ahu_code(&prufer_tree(&seq)));
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return seen;
        }
        seq[i] += 1;
    }
}

/// One representative per isomorphism class on `n` vertices, by attaching a
/// new labeled leaf to every vertex of every class on `n - 1` vertices.
pub fn free_trees_by_growth(n: usize) -> Vec<Tree> {
    assert!(n >= 1);
    let mut level = vec![Tree::single_vertex()];
    for m in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.order() {
                let mut edges = t.edges();
                edges.push((v, m - 1));
                let g = Tree::from_edges(m, &edges).unwrap();
                if seen.insert(ahu_code(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// Free-tree counts `t(1..=max)` from rooted-tree counts via Otter's
/// dissimilarity formula.
pub fn otter_counts(max: usize) -> Vec<u128> {
    let mut r = vec![0u128; max + 1];
    r[1] = 1;
    for m in 1..max {
        let mut s = 0u128;
        for k in 1..=m {
            let c: u128 = (1..=k).filter(|d| k % d == 0).map(|d| d as u128 * r[d]).sum();
            s += c * r[m - k + 1];
        }
        r[m + 1] = s / m as u128;
    }
    let mut t = vec![0u128; max + 1];
    for n in 1..=max {
        let mut pairs: u128 = (1..n).map(|k| r[k] * r[n - k]).sum();
        if n % 2 == 0 {
            pairs -= r[n / 2];
        }
        t[n] = r[n] - pairs / 2;
    }
    t
}

fn dominates(t: &Tree, set: u32) -> bool {
    (0..t.order()).all(|v| set >> v & 1 == 1 || t.neighbors(v).iter().any(|&w| set >> w & 1 == 1))
}

fn independent(t: &Tree, set: u32) -> bool {
    t.edges().iter().all(|&(u, v)| !(set >> u & 1 == 1 && set >> v & 1 == 1))
}

/// Smallest dominating set size by checking every subset.
pub fn brute_domination(t: &Tree) -> usize {
    let n = t.order();
    assert!(n <= 20);
    (0u32..1 << n).filter(|&s| dominates(t, s)).map(|s| s.count_ones() as usize).min().unwrap()
}

/// Largest independent set size by checking every subset.
pub fn brute_independence(t: &Tree) -> usize {
    let n = t.order();
    assert!(n <= 20);
    (0u32..1 << n).filter(|&s| independent(t, s)).map(|s| s.count_ones() as usize).max().unwrap()
}

/// Spanning trees of a small graph by testing every `(n-1)`-edge subset for
/// acyclicity.
pub fn brute_spanning_trees(n: usize, edges: &[(usize, usize)]) -> u64 {
    let m = edges.len();
    assert!(m <= 24);
    let mut count = 0;
    for mask in 0u32..1 << m {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut acyclic = true;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        count += u64::from(acyclic);
    }
    count
}

/// All free trees of order `n` from the library enumerator.
pub fn library_trees(n: usize) -> Vec<Tree> {
    treespec::graph::enumerate_free_trees(n).unwrap().collect()
}
