use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use super::{DisjointSets, Tree};

/// Edge-list parse failure. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: bad token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected two vertex ids, found {found}")]
    WrongFieldCount { line: usize, found: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },
    #[error("line {line}: edge {u}-{v} closes a cycle")]
    Cycle { line: usize, u: u64, v: u64 },
    #[error("line {line}: input is disconnected ({components} components over {vertices} vertices)")]
    Disconnected { line: usize, components: usize, vertices: usize },
    #[error("line {line}: vertex ids must be 0..n-1 or 1..n (saw {min}..={max} for n = {n})")]
    NonContiguousIds { line: usize, min: u64, max: u64, n: usize },
    #[error("no edges found")]
    Empty,
}

/// Parses the line-oriented edge-list format: one edge per line, two
/// whitespace-separated ids, `#` starts a comment. Ids may be 0-based or
/// 1-based; 1-based input is shifted down.
pub fn parse_edge_list(text: &str) -> Result<Tree, ParseError> {
    let mut edges: Vec<(u64, u64, usize)> = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        last_line = line;
        let fields: Vec<&str> = body.split_whitespace().collect();
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&fields) {
            *slot = tok.parse().map_err(|_| ParseError::BadToken { line, token: tok.to_string() })?;
        }
        if fields.len() != 2 {
            return Err(ParseError::WrongFieldCount { line, found: fields.len() });
        }
        let [u, v] = ids;
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v, line));
    }
    if edges.is_empty() {
        return Err(ParseError::Empty);
    }

    // Dense relabeling for cycle detection before the id range is known.
    let ids: BTreeSet<u64> = edges.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    let index: HashMap<u64, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut dsu = DisjointSets::new(ids.len());
    let mut components = ids.len();
    for &(u, v, line) in &edges {
        if !dsu.union(index[&u], index[&v]) {
            return Err(ParseError::Cycle { line, u, v });
        }
        components -= 1;
    }
    let n = ids.len();
    let min = *ids.iter().next().unwrap();
    let max = *ids.iter().next_back().unwrap();
    let offset = match (min, max) {
        (0, m) if m == n as u64 - 1 => 0,
        (1, m) if m == n as u64 => 1,
        _ if components > 1 => return Err(ParseError::Disconnected { line: last_line, components, vertices: n }),
        _ => return Err(ParseError::NonContiguousIds { line: last_line, min, max, n }),
    };
    if components > 1 {
        return Err(ParseError::Disconnected { line: last_line, components, vertices: n });
    }
    let edges: Vec<(usize, usize)> =
        edges.iter().map(|&(u, v, _)| ((u - offset) as usize, (v - offset) as usize)).collect();
    Ok(Tree::from_edges(n, &edges).expect("validated edge list forms a tree"))
}
