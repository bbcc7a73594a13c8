//! Classical tree parameters: diameter, leaves, domination and
//! independence numbers. The two dynamic programs run leaf-up over the
//! same post-order the diagonalization uses.

use serde::{Deserialize, Serialize};

use crate::graph::{root_at, Tree};
use crate::scalar::Scalar;
use crate::spectral::average_degree;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSet {
    pub n: usize,
    pub leaf_count: usize,
    pub diameter: usize,
    pub max_degree: usize,
    pub gamma: usize,
    pub beta0: usize,
    pub avg_degree: Scalar,
}

impl InvariantSet {
    pub fn of(t: &Tree) -> Self {
        InvariantSet {
            n: t.order(),
            leaf_count: leaf_count(t),
            diameter: diameter(t),
            max_degree: t.max_degree(),
            gamma: domination_number(t),
            beta0: independence_number(t),
            avg_degree: average_degree(t.order()),
        }
    }
}

pub fn leaf_count(t: &Tree) -> usize {
    (0..t.order()).filter(|&v| t.is_leaf(v)).count()
}

/// Longest shortest path, by two breadth-first sweeps.
pub fn diameter(t: &Tree) -> usize {
    let d0 = t.distances_from(0);
    let far = (0..t.order()).max_by_key(|&v| d0[v]).unwrap_or(0);
    t.distances_from(far).into_iter().max().unwrap_or(0)
}

/// Vertices on one longest path, endpoint to endpoint.
pub fn diametral_path(t: &Tree) -> Vec<usize> {
    let d0 = t.distances_from(0);
    let a = (0..t.order()).max_by_key(|&v| d0[v]).unwrap_or(0);
    let rt = root_at(t, a).expect("a is a vertex");
    let da = t.distances_from(a);
    let mut v = (0..t.order()).max_by_key(|&v| da[v]).unwrap_or(a);
    let mut path = vec![v];
    while let Some(p) = rt.parent(v) {
        path.push(p);
        v = p;
    }
    path
}

const INF: usize = usize::MAX / 4;

/// Size of a smallest dominating set.
pub fn domination_number(t: &Tree) -> usize {
    let rt = root_at(t, 0).expect("vertex 0 exists");
    let n = t.order();
    // in_set: v chosen; covered: v not chosen but dominated by a child;
    // open: v neither chosen nor dominated yet (its parent must be chosen)
    let mut in_set = vec![0usize; n];
    let mut covered = vec![0usize; n];
    let mut open = vec![0usize; n];
    for &v in rt.order() {
        let kids = rt.children(v);
        let mut take = 1;
        let mut base = 0;
        let mut cheapest_switch = INF;
        let mut all_covered: usize = 0;
        for &c in kids {
            take += in_set[c].min(covered[c]).min(open[c]);
            let best = in_set[c].min(covered[c]);
            base += best;
            cheapest_switch = cheapest_switch.min(in_set[c] - best);
            all_covered = all_covered.saturating_add(covered[c]);
        }
        in_set[v] = take;
        covered[v] = if kids.is_empty() { INF } else { (base + cheapest_switch).min(INF) };
        open[v] = all_covered.min(INF);
    }
    let r = rt.root();
    in_set[r].min(covered[r])
}

/// Size of a largest independent set.
pub fn independence_number(t: &Tree) -> usize {
    let rt = root_at(t, 0).expect("vertex 0 exists");
    let n = t.order();
    let mut with = vec![1usize; n];
    let mut without = vec![0usize; n];
    for &v in rt.order() {
        for &c in rt.children(v) {
            with[v] += without[c];
            without[v] += with[c].max(without[c]);
        }
    }
    let r = rt.root();
    with[r].max(without[r])
}
