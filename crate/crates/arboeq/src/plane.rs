//! Rotation-system plane graphs and face tracing.
//!
//! An embedding is given by the clockwise cyclic order of neighbors at
//! every vertex. Faces are orbits of darts (ordered edges) under the fixed
//! successor convention: from dart (u, v) the walk continues with (v, w)
//! where w immediately follows u in the rotation at v. For a connected
//! plane graph the traced faces satisfy Euler's formula n - m + f = 2;
//! anything else is rejected as an invalid embedding. Embeddings are never
//! computed from abstract graphs here — they come from input files or from
//! the generators, which maintain them incrementally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("rotation has no entry for vertex {0}")]
    MissingVertex(usize),
    #[error("rotation lists unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("rotation at {vertex} is not a permutation of its neighborhood")]
    NotPermutation { vertex: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("invalid embedding: n = {n}, m = {m}, traced faces = {faces} violate Euler's formula")]
    EulerViolation { n: usize, m: usize, faces: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("oriented faces use dart {0} -> {1} twice")]
    DuplicateDart(usize, usize),
    #[error("oriented faces leave dart {0} -> {1} uncovered")]
    UncoveredDart(usize, usize),
    #[error("rotation at {vertex} splits into more than one cycle")]
    SplitRotation { vertex: usize },
}

/// Clockwise neighbor order per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    order: BTreeMap<usize, Vec<usize>>,
}

impl RotationSystem {
    pub fn new(order: BTreeMap<usize, Vec<usize>>) -> RotationSystem {
        RotationSystem { order }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.keys().copied()
    }

    pub fn at(&self, v: usize) -> Option<&[usize]> {
        self.order.get(&v).map(Vec::as_slice)
    }

    /// The neighbor following `from` in the clockwise order at `v`.
    fn successor(&self, v: usize, from: usize) -> Option<usize> {
        let rot = self.order.get(&v)?;
        let pos = rot.iter().position(|&w| w == from)?;
        Some(rot[(pos + 1) % rot.len()])
    }

    /// Parses the rotation format: one line `v: n1 n2 ... nd` per vertex.
    pub fn parse(text: &str) -> Result<Self, EmbedError> {
        let mut order = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (head, tail) = l.split_once(':').ok_or_else(|| EmbedError::Parse {
                line,
                msg: "expected \"v: n1 n2 ... nd\"".into(),
            })?;
            let v: usize = head.trim().parse().map_err(|_| EmbedError::Parse {
                line,
                msg: format!("bad vertex {head:?}"),
            })?;
            let mut nbrs = Vec::new();
            for tok in tail.split_whitespace() {
                nbrs.push(tok.parse().map_err(|_| EmbedError::Parse {
                    line,
                    msg: format!("bad neighbor {tok:?}"),
                })?);
            }
            if order.insert(v, nbrs).is_some() {
                return Err(EmbedError::Parse {
                    line,
                    msg: format!("vertex {v} listed twice"),
                });
            }
        }
        Ok(RotationSystem { order })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, nbrs) in &self.order {
            let ns: Vec<String> = nbrs.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{v}: {}", ns.join(" "));
        }
        out
    }
}

/// A face as the closed walk of its dart origins: `walk[i] -> walk[i+1]`
/// (cyclically) are the darts on the boundary. The face degree is the walk
/// length; a bridge contributes two darts and is counted twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub walk: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    /// Distinct vertices on the boundary.
    pub fn incident_vertices(&self) -> BTreeSet<usize> {
        self.walk.iter().copied().collect()
    }
}

/// A connected plane graph: graph, rotation, and the traced faces.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    pub graph: Graph,
    pub rotation: RotationSystem,
    pub faces: Vec<Face>,
}

impl PlaneGraph {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<PlaneGraph, EmbedError> {
        trace_faces(graph, rotation)
    }
}

/// Traces all faces of the embedding and checks Euler's formula. Faces are
/// numbered in order of their lexicographically smallest dart.
pub fn trace_faces(graph: Graph, rotation: RotationSystem) -> Result<PlaneGraph, EmbedError> {
    for v in graph.vertices() {
        let rot = rotation.at(v).ok_or(EmbedError::MissingVertex(v))?;
        let as_set: BTreeSet<usize> = rot.iter().copied().collect();
        if as_set.len() != rot.len() || &as_set != graph.neighbor_set(v) {
            return Err(EmbedError::NotPermutation { vertex: v });
        }
    }
    if let Some(v) = rotation.vertices().find(|&v| !graph.contains_vertex(v)) {
        return Err(EmbedError::UnknownVertex(v));
    }
    if !graph.is_connected() {
        return Err(EmbedError::NotConnected);
    }

    let mut faces = Vec::new();
    if graph.n() == 1 {
        // A single vertex bounds one empty face.
        faces.push(Face { walk: Vec::new() });
    } else {
        let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
        for u in graph.vertices() {
            for v in graph.neighbors(u) {
                let start = (u, v);
                if visited.contains(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut dart = start;
                loop {
                    visited.insert(dart);
                    walk.push(dart.0);
                    let (a, b) = dart;
                    let next = rotation
                        .successor(b, a)
                        .expect("rotations validated as permutations");
                    dart = (b, next);
                    if dart == start {
                        break;
                    }
                }
                faces.push(Face { walk });
            }
        }
    }

    let (n, m, f) = (graph.n(), graph.m(), faces.len());
    if n + f != m + 2 {
        return Err(EmbedError::EulerViolation { n, m, faces: f });
    }
    Ok(PlaneGraph {
        graph,
        rotation,
        faces,
    })
}

/// Reconstructs a graph and rotation system from a consistently oriented
/// face list (each dart used exactly once). The inverse of face tracing;
/// used to pin down reference embeddings.
pub fn plane_from_oriented_faces(
    walks: &[Vec<usize>],
) -> Result<(Graph, RotationSystem), EmbedError> {
    let mut succ: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for walk in walks {
        let len = walk.len();
        for i in 0..len {
            let u = walk[i];
            let v = walk[(i + 1) % len];
            let w = walk[(i + 2) % len];
            if succ.entry(v).or_default().insert(u, w).is_some() {
                return Err(EmbedError::DuplicateDart(u, v));
            }
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
    }
    for (&v, nbrs) in &adj {
        for &u in nbrs {
            if !succ.get(&v).is_some_and(|s| s.contains_key(&u)) {
                return Err(EmbedError::UncoveredDart(u, v));
            }
        }
    }

    let mut order = BTreeMap::new();
    for (&v, next) in &succ {
        let &start = next
            .keys()
            .next()
            .expect("each vertex has an incoming dart");
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            let nxt = next[&cur];
            if nxt == start {
                break;
            }
            rot.push(nxt);
            cur = nxt;
        }
        if rot.len() != next.len() {
            return Err(EmbedError::SplitRotation { vertex: v });
        }
        order.insert(v, rot);
    }
    Ok((Graph::from_adjacency(adj), RotationSystem::new(order)))
}

/// Reference plane graphs with pinned embeddings.
pub mod named {
    use super::*;

    fn build(walks: &[&[usize]]) -> (Graph, RotationSystem) {
        let walks: Vec<Vec<usize>> = walks.iter().map(|w| w.to_vec()).collect();
        plane_from_oriented_faces(&walks).expect("reference face lists are consistent")
    }

    /// K_4 embedded with four triangular faces.
    pub fn tetrahedron() -> (Graph, RotationSystem) {
        build(&[&[0, 1, 3], &[1, 2, 3], &[2, 0, 3], &[1, 0, 2]])
    }

    /// The 3-cube: 8 vertices, 12 edges, 6 quadrilateral faces.
    pub fn cube() -> (Graph, RotationSystem) {
        build(&[
            &[0, 1, 2, 3],
            &[4, 7, 6, 5],
            &[0, 4, 5, 1],
            &[1, 5, 6, 2],
            &[2, 6, 7, 3],
            &[3, 7, 4, 0],
        ])
    }

    /// The icosahedron: 12 vertices, 30 edges, 20 triangular faces,
    /// 5-regular.
    pub fn icosahedron() -> (Graph, RotationSystem) {
        build(&[
            &[0, 1, 2],
            &[0, 2, 3],
            &[0, 3, 4],
            &[0, 4, 5],
            &[0, 5, 1],
            &[2, 1, 7],
            &[3, 2, 8],
            &[4, 3, 9],
            &[5, 4, 10],
            &[1, 5, 6],
            &[1, 6, 7],
            &[2, 7, 8],
            &[3, 8, 9],
            &[4, 9, 10],
            &[5, 10, 6],
            &[11, 7, 6],
            &[11, 8, 7],
            &[11, 9, 8],
            &[11, 10, 9],
            &[11, 6, 10],
        ])
    }
}
