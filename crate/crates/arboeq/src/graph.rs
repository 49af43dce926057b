//! Undirected simple graphs with stable vertex ids.
//!
//! Vertex ids are arbitrary non-negative integers. Deleting vertices keeps
//! the ids of the survivors, so a coloring computed on a subgraph can be
//! merged back into the parent graph without any translation step. Graphs
//! are immutable values; every operation that shrinks a graph returns a new
//! one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
}

/// Errors from [`Graph::parse`]. Every variant names the offending line
/// (1-based, counting every line of the input).
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing \"n m\" header line")]
    MissingHeader,
    #[error("line {line}: expected \"{expected}\", got {got:?}")]
    Malformed {
        line: usize,
        expected: &'static str,
        got: String,
    },
    #[error("line {line}: vertex {vertex} out of range (n = {n})")]
    OutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: expected {expected} edges, found more")]
    TooManyEdges { line: usize, expected: usize },
    #[error("expected {expected} edges, input ends after {found}")]
    TooFewEdges { expected: usize, found: usize },
}

/// An undirected simple graph: no self-loops, no parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n(),
            self.m(),
            self.edges()
        )
    }
}

/// A permutation of the vertex set together with its elimination width:
/// the maximum, over positions, of a vertex's degree among the vertices
/// that come later in the order. [`Graph::degeneracy_order`] produces an
/// ordering whose width equals the degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    pub order: Vec<usize>,
    pub width: usize,
}

impl Graph {
    /// Graph on vertices `0..n` with no edges.
    pub fn edgeless(n: usize) -> Graph {
        Graph::with_vertices(0..n)
    }

    /// Edgeless graph on an explicit vertex set.
    pub fn with_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Graph {
        let adj = vertices.into_iter().map(|v| (v, BTreeSet::new())).collect();
        Graph { adj, m: 0 }
    }

    /// Graph on vertices `0..n` with the given edges. Rejects out-of-range
    /// endpoints, self-loops and duplicate edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n);
        for (u, v) in edges {
            for &x in &[u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.adj[&u].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.adj.get_mut(&u).unwrap().insert(v);
            g.adj.get_mut(&v).unwrap().insert(u);
            g.m += 1;
        }
        Ok(g)
    }

    /// Builds a graph directly from an adjacency map. The map must be
    /// symmetric and irreflexive; only checked in debug builds.
    pub(crate) fn from_adjacency(adj: BTreeMap<usize, BTreeSet<usize>>) -> Graph {
        #[cfg(debug_assertions)]
        for (&v, nbrs) in &adj {
            debug_assert!(!nbrs.contains(&v), "self-loop at {v}");
            for &w in nbrs {
                debug_assert!(
                    adj.get(&w).is_some_and(|s| s.contains(&v)),
                    "asymmetric edge {v} {w}"
                );
            }
        }
        let m = adj.values().map(BTreeSet::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges = (1..n)
            .map(|v| (v - 1, v))
            .chain(std::iter::once((n - 1, 0)));
        Graph::from_edges(n, edges).unwrap()
    }

    /// Star with `leaves` leaves: vertex 0 is the center.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// Parses the edge-list text format: the first non-comment line is
    /// `n m`, followed by exactly `m` lines `u v` with `0 <= u,v < n` and
    /// `u != v`. Lines starting with `#` and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let malformed_header = || ParseError::Malformed {
            line: header_line,
            expected: "n m",
            got: header.to_string(),
        };
        if nums.len() != 2 {
            return Err(malformed_header());
        }
        let n: usize = nums[0].parse().map_err(|_| malformed_header())?;
        let m: usize = nums[1].parse().map_err(|_| malformed_header())?;

        let mut g = Graph::edgeless(n);
        let mut read = 0usize;
        for (line, text) in lines {
            if read == m {
                return Err(ParseError::TooManyEdges { line, expected: m });
            }
            let toks: Vec<&str> = text.split_whitespace().collect();
            let malformed = || ParseError::Malformed {
                line,
                expected: "u v",
                got: text.to_string(),
            };
            if toks.len() != 2 {
                return Err(malformed());
            }
            let u: usize = toks[0].parse().map_err(|_| malformed())?;
            let v: usize = toks[1].parse().map_err(|_| malformed())?;
            for &x in &[u, v] {
                if x >= n {
                    return Err(ParseError::OutOfRange { line, vertex: x, n });
                }
            }
            if u == v {
                return Err(ParseError::SelfLoop { line, vertex: u });
            }
            if g.adj[&u].contains(&v) {
                return Err(ParseError::DuplicateEdge { line, u, v });
            }
            g.adj.get_mut(&u).unwrap().insert(v);
            g.adj.get_mut(&v).unwrap().insert(u);
            g.m += 1;
            read += 1;
        }
        if read < m {
            return Err(ParseError::TooFewEdges {
                expected: m,
                found: read,
            });
        }
        Ok(g)
    }

    /// Serializes to the edge-list format. Requires dense ids `0..n`.
    pub fn to_text(&self) -> String {
        debug_assert!(
            self.vertices().zip(0..).all(|(v, i)| v == i),
            "edge-list format needs dense 0-based ids"
        );
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices().collect()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    /// Panics if `v` is not a vertex.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_set(v).len()
    }

    /// Panics if `v` is not a vertex.
    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("unknown vertex {v}"))
    }

    /// Neighbors of `v` in ascending order. Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.neighbor_set(v).iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Minimum degree; 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    /// Maximum degree; 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        self.adj
            .iter()
            .filter(|(_, nbrs)| nbrs.is_empty())
            .map(|(&v, _)| v)
            .collect()
    }

    pub fn is_edgeless(&self) -> bool {
        self.m == 0
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    /// True for the empty graph and whenever every pair of vertices is
    /// joined by a path.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.adj.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push(w);
                }
            }
        }
        seen.len() == self.n()
    }

    /// Elimination ordering built by repeatedly removing a minimum-degree
    /// vertex, lowest id on ties. The resulting width is the degeneracy.
    pub fn degeneracy_order(&self) -> VertexOrdering {
        let mut remaining = self.adj.clone();
        let mut order = Vec::with_capacity(self.n());
        let mut width = 0;
        while !remaining.is_empty() {
            let (&v, nbrs) = remaining
                .iter()
                .min_by_key(|(&v, nbrs)| (nbrs.len(), v))
                .unwrap();
            width = width.max(nbrs.len());
            let nbrs: Vec<usize> = nbrs.iter().copied().collect();
            remaining.remove(&v);
            for w in nbrs {
                remaining.get_mut(&w).unwrap().remove(&v);
            }
            order.push(v);
        }
        VertexOrdering { order, width }
    }

    pub fn degeneracy(&self) -> usize {
        self.degeneracy_order().width
    }

    /// True iff no vertex has three pairwise non-adjacent neighbors.
    pub fn is_claw_free(&self) -> bool {
        for nbrs in self.adj.values() {
            let ns: Vec<usize> = nbrs.iter().copied().collect();
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    if self.has_edge(ns[i], ns[j]) {
                        continue;
                    }
                    for l in j + 1..ns.len() {
                        if !self.has_edge(ns[i], ns[l]) && !self.has_edge(ns[j], ns[l]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// All triangles as sorted triples `[u, v, w]` with `u < v < w`, in
    /// lexicographic order; each triangle reported once.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            for &w in self.neighbor_set(u).intersection(self.neighbor_set(v)) {
                if w > v {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    /// Induced subgraph on `V \ remove`; survivors keep their ids.
    pub fn delete_vertices(&self, remove: &BTreeSet<usize>) -> Result<Graph, GraphError> {
        if let Some(&v) = remove.iter().find(|v| !self.contains_vertex(**v)) {
            return Err(GraphError::UnknownVertex(v));
        }
        let adj: BTreeMap<usize, BTreeSet<usize>> = self
            .adj
            .iter()
            .filter(|(v, _)| !remove.contains(v))
            .map(|(&v, nbrs)| (v, nbrs.difference(remove).copied().collect()))
            .collect();
        Ok(Graph::from_adjacency(adj))
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.delete_vertices(&BTreeSet::from([v]))
    }
}
