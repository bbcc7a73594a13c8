use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::TreeError;

/// An undirected tree on vertices `0..n`, stored as sorted neighbor lists.
///
/// The adjacency matrix is never materialized; the diagonalization
/// engine walks this structure directly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree on `n` vertices. Rejects anything that is not a tree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount { n, edges: edges.len() });
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut dsu = DisjointSets::new(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(TreeError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(TreeError::SelfLoop { vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge { u, v });
            }
            if !dsu.union(u, v) {
                return Err(TreeError::Cycle { u, v });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        // n - 1 acyclic edges always connect n vertices.
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Tree { adjacency })
    }

    pub fn single_vertex() -> Tree {
        Tree { adjacency: vec![Vec::new()] }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.order() - 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adjacency[v].len() == 1
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Returns the same tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree, TreeError> {
        let n = self.order();
        if perm.len() != n {
            return Err(TreeError::InvalidShape(format!("permutation has length {}, expected {}", perm.len(), n)));
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        if n == 1 {
            return if perm[0] == 0 {
                Ok(Tree::single_vertex())
            } else {
                Err(TreeError::VertexOutOfRange { vertex: perm[0], n })
            };
        }
        Tree::from_edges(n, &edges)
    }

    /// Serializes as the edge-list text format, one `u v` pair per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = String::new();
        if self.order() == 1 {
            s.push_str("# single vertex\n");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{} {}", u, v);
        }
        s
    }

    /// Connectivity and edge-count audit; always true for values built by
    /// this module.
    pub fn audit(&self) -> bool {
        let n = self.order();
        let degree_sum: usize = self.adjacency.iter().map(Vec::len).sum();
        if degree_sum != 2 * (n - 1) {
            return false;
        }
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if nbrs.iter().any(|&v| v == u || self.adjacency[v].binary_search(&u).is_err()) {
                return false;
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let n = self.order();
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A tree with a chosen root and a post-order numbering of its vertices.
///
/// `order` lists every vertex after all of its children, which is the
/// processing order required by the diagonalization loop.
#[derive(Clone, Debug)]
pub struct RootedTree<'t> {
    base: &'t Tree,
    root: usize,
    order: Vec<usize>,
    position: Vec<usize>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

/// Roots `t` at `root`. Children are listed in ascending id.
pub fn root_at(t: &Tree, root: usize) -> Result<RootedTree<'_>, TreeError> {
    let n = t.order();
    if root >= n {
        return Err(TreeError::RootOutOfRange { root, n });
    }
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut visited = vec![false; n];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(u) = stack.pop() {
        for &v in t.neighbors(u) {
            if !visited[v] {
                visited[v] = true;
                parent[v] = Some(u);
                children[u].push(v);
                stack.push(v);
            }
        }
    }
    // neighbor lists are sorted, so each child list is already ascending
    Ok(RootedTree::assemble(t, root, parent, children))
}

impl<'t> RootedTree<'t> {
    /// Builds a rooted view from explicit child lists, which fixes the
    /// visiting order of the post-order traversal.
    pub fn from_children(base: &'t Tree, root: usize, children: Vec<Vec<usize>>) -> Result<RootedTree<'t>, TreeError> {
        let n = base.order();
        if root >= n {
            return Err(TreeError::RootOutOfRange { root, n });
        }
        let reference = root_at(base, root)?;
        if children.len() != n {
            return Err(TreeError::InvalidShape("child list count differs from order".into()));
        }
        for (v, list) in children.iter().enumerate() {
            let mut a = list.clone();
            a.sort_unstable();
            if a != reference.children[v] {
                return Err(TreeError::InvalidShape(format!(
                    "children of vertex {} disagree with the tree rooted at {}",
                    v, root
                )));
            }
        }
        Ok(RootedTree::assemble(base, root, reference.parent, children))
    }

    fn assemble(base: &'t Tree, root: usize, parent: Vec<Option<usize>>, children: Vec<Vec<usize>>) -> RootedTree<'t> {
        let n = base.order();
        let mut order = Vec::with_capacity(n);
        // (vertex, index of next child to descend into)
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next < children[v].len() {
                top.1 += 1;
                stack.push((children[v][next], 0));
            } else {
                order.push(v);
                stack.pop();
            }
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        RootedTree { base, root, order, position, parent, children }
    }

    pub fn base(&self) -> &'t Tree {
        self.base
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Index of `v` within the post-order.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}
