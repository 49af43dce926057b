//! The ordered-set reduction kernel shared by every constructive solver.
//!
//! A reduction removes an ordered set S = (x_1, ..., x_k) of k distinct
//! vertices, solves the remainder recursively, and extends the resulting
//! coloring back over S. The extension is guaranteed to succeed whenever
//! every position satisfies the bound |N(x_i) \ S| <= 2i - 1: coloring
//! x_k, ..., x_1 in that order, position i sees at most k - i colors that
//! are reserved by higher positions and at most i - 1 colors that already
//! appear twice among its outside neighbors, which leaves at least one
//! admissible color in a list of size k. Each x_i ends with at most one
//! same-colored neighbor, so no color class can gain a cycle, and the set
//! vertices get pairwise distinct colors, so each class grows by at most
//! one — which is exactly what the cap ⌈n/k⌉ has room for when the base
//! coloring respects ⌈(n-k)/k⌉ = ⌈n/k⌉ - 1.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;
use crate::verify::{ceil_cap, Coloring, ListAssignment, ListError};

/// A position whose external neighborhood is too large for the extension
/// guarantee.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("position {position}: {external_degree} neighbors outside the set exceeds bound {bound}")]
pub struct SetViolation {
    /// 1-based position of the first violating vertex.
    pub position: usize,
    pub external_degree: usize,
    pub bound: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("reduction set is empty")]
    EmptySet,
    #[error("duplicate vertex {0} in reduction set")]
    DuplicateVertex(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("special position {0} outside 1..={1}")]
    PositionOutOfRange(usize, usize),
    #[error("position {0} specified twice")]
    DuplicatePosition(usize),
    #[error("graph has {n} vertices, fewer than k = {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("no vertex of degree at most {fill_degree} available for position {position}")]
    NoFillVertex { position: usize, fill_degree: usize },
    #[error(transparent)]
    InvalidSet(#[from] SetViolation),
    #[error("base coloring misses vertex {0}")]
    BaseNotTotal(usize),
    #[error("base coloring already colors reduction vertex {0}")]
    BaseColorsSetVertex(usize),
    #[error("extension infeasible: no admissible color at position {position}")]
    ExtensionInfeasible { position: usize },
    #[error("vertex {vertex} has degree {degree}, not a pendant")]
    NotPendant { vertex: usize, degree: usize },
    #[error("base case needs |V| <= k or an edgeless graph (n = {n}, k = {k})")]
    BaseCaseUnavailable { n: usize, k: usize },
    #[error(transparent)]
    List(#[from] ListError),
}

/// The ordered set S = (x_1, ..., x_k). Positions are 1-based so that the
/// admissibility bound at position i reads 2i - 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSet {
    verts: Vec<usize>,
}

impl ReductionSet {
    pub fn new(verts: Vec<usize>) -> Result<Self, ReduceError> {
        if verts.is_empty() {
            return Err(ReduceError::EmptySet);
        }
        let mut seen = BTreeSet::new();
        for &v in &verts {
            if !seen.insert(v) {
                return Err(ReduceError::DuplicateVertex(v));
            }
        }
        Ok(ReductionSet { verts })
    }

    pub fn k(&self) -> usize {
        self.verts.len()
    }

    /// Vertex at 1-based position `i`.
    pub fn vertex(&self, i: usize) -> usize {
        self.verts[i - 1]
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.contains(&v)
    }

    pub fn to_set(&self) -> BTreeSet<usize> {
        self.verts.iter().copied().collect()
    }
}

/// Checks |N(x_i) \ S| <= 2i - 1 for every position, reporting the smallest
/// violating position.
pub fn validate_set(g: &Graph, s: &ReductionSet) -> Result<(), SetViolation> {
    let members = s.to_set();
    for (idx, &x) in s.vertices().iter().enumerate() {
        let position = idx + 1;
        let external_degree = g.neighbors(x).filter(|w| !members.contains(w)).count();
        let bound = 2 * position - 1;
        if external_degree > bound {
            return Err(SetViolation {
                position,
                external_degree,
                bound,
            });
        }
    }
    Ok(())
}

/// Builds S from pinned specials, filling every unspecified position from
/// highest to lowest index with the lowest-id vertex of degree at most
/// `fill_degree` in the graph left after deleting all vertices already
/// chosen for S (specials included).
pub fn build_set(
    g: &Graph,
    specials: &[(usize, usize)],
    fill_degree: usize,
    k: usize,
) -> Result<ReductionSet, ReduceError> {
    if g.n() < k {
        return Err(ReduceError::TooFewVertices { n: g.n(), k });
    }
    let mut slots: Vec<Option<usize>> = vec![None; k];
    let mut chosen = BTreeSet::new();
    for &(v, pos) in specials {
        if pos == 0 || pos > k {
            return Err(ReduceError::PositionOutOfRange(pos, k));
        }
        if !g.contains_vertex(v) {
            return Err(ReduceError::UnknownVertex(v));
        }
        if slots[pos - 1].is_some() {
            return Err(ReduceError::DuplicatePosition(pos));
        }
        if !chosen.insert(v) {
            return Err(ReduceError::DuplicateVertex(v));
        }
        slots[pos - 1] = Some(v);
    }
    for pos in (1..=k).rev() {
        if slots[pos - 1].is_some() {
            continue;
        }
        let pick = g
            .vertices()
            .filter(|v| !chosen.contains(v))
            .find(|&v| g.neighbors(v).filter(|w| !chosen.contains(w)).count() <= fill_degree);
        match pick {
            Some(v) => {
                chosen.insert(v);
                slots[pos - 1] = Some(v);
            }
            None => {
                return Err(ReduceError::NoFillVertex {
                    position: pos,
                    fill_degree,
                })
            }
        }
    }
    ReductionSet::new(slots.into_iter().map(Option::unwrap).collect())
}

/// Extends a coloring of g - S over S. Positions are colored from x_k down
/// to x_1; x_i takes the smallest list color that differs from every color
/// already given to higher positions and appears at most once among the
/// already-colored neighbors of x_i.
pub fn extend_over_set(
    g: &Graph,
    s: &ReductionSet,
    base: &Coloring,
    lists: &ListAssignment,
) -> Result<Coloring, ReduceError> {
    let k = s.k();
    if let Some(&v) = s.vertices().iter().find(|v| !g.contains_vertex(**v)) {
        return Err(ReduceError::UnknownVertex(v));
    }
    validate_set(g, s)?;
    let members = s.to_set();
    for v in g.vertices() {
        if members.contains(&v) {
            if base.get(v).is_some() {
                return Err(ReduceError::BaseColorsSetVertex(v));
            }
        } else if base.get(v).is_none() {
            return Err(ReduceError::BaseNotTotal(v));
        }
    }

    let mut coloring = base.clone();
    for i in (1..=k).rev() {
        let x = s.vertex(i);
        let reserved: BTreeSet<usize> = (i + 1..=k)
            .map(|j| {
                coloring
                    .get(s.vertex(j))
                    .expect("higher positions are colored")
            })
            .collect();
        let list = lists.list(x)?;
        if list.len() != k {
            return Err(ReduceError::List(ListError::WrongSize {
                vertex: x,
                found: list.len(),
                expected: k,
            }));
        }
        let pick = list.iter().copied().find(|&c| {
            !reserved.contains(&c)
                && g.neighbors(x)
                    .filter(|&w| coloring.get(w) == Some(c))
                    .count()
                    <= 1
        });
        match pick {
            Some(c) => coloring.set(x, c),
            None => return Err(ReduceError::ExtensionInfeasible { position: i }),
        }
    }
    Ok(coloring)
}

/// Extends a coloring of g - v over a vertex of degree at most 1. The new
/// vertex avoids the colors that are saturated (used exactly ⌈(n-1)/k⌉
/// times) in the base; when all k colors are saturated the cap has just
/// grown, so the smallest list color is taken unconditionally.
pub fn extend_pendant(
    g: &Graph,
    v: usize,
    base: &Coloring,
    lists: &ListAssignment,
) -> Result<Coloring, ReduceError> {
    if !g.contains_vertex(v) {
        return Err(ReduceError::UnknownVertex(v));
    }
    let degree = g.degree(v);
    if degree > 1 {
        return Err(ReduceError::NotPendant { vertex: v, degree });
    }
    if base.get(v).is_some() {
        return Err(ReduceError::BaseColorsSetVertex(v));
    }
    for w in g.vertices() {
        if w != v && base.get(w).is_none() {
            return Err(ReduceError::BaseNotTotal(w));
        }
    }
    let k = lists.k();
    let prev_cap = ceil_cap(g.n() - 1, k);
    let saturated: BTreeSet<usize> = base
        .class_counts()
        .into_iter()
        .filter(|&(_, count)| count == prev_cap)
        .map(|(c, _)| c)
        .collect();
    let list = lists.list(v)?;
    let color = if saturated.len() < k {
        list.iter()
            .copied()
            .find(|c| !saturated.contains(c))
            .expect("at most k - 1 saturated colors block a k-list")
    } else {
        *list.iter().next().expect("lists are non-empty")
    };
    let mut coloring = base.clone();
    coloring.set(v, color);
    Ok(coloring)
}

/// Smallest color of `list` whose count stays below the prefix cap
/// ⌈(colored + 1)/k⌉. Always defined: if every list color had reached the
/// prefix cap, at least colored + 1 vertices would already be colored.
pub(crate) fn fill_color_under_prefix_cap(
    list: &BTreeSet<usize>,
    counts: &BTreeMap<usize, usize>,
    colored: usize,
    k: usize,
) -> usize {
    let cap = ceil_cap(colored + 1, k);
    list.iter()
        .copied()
        .find(|c| counts.get(c).copied().unwrap_or(0) < cap)
        .expect("some list color is below the prefix cap")
}

/// Base cases of the recursive solvers: either at most k vertices (all
/// distinctly colored) or an edgeless graph (greedy under the prefix cap).
pub fn solve_base(g: &Graph, lists: &ListAssignment) -> Result<Coloring, ReduceError> {
    let k = lists.k();
    let n = g.n();
    if n > k && !g.is_edgeless() {
        return Err(ReduceError::BaseCaseUnavailable { n, k });
    }
    lists.covers(g)?;
    let mut coloring = Coloring::new();
    if n <= k {
        let mut used = BTreeSet::new();
        for v in g.vertices() {
            let c = lists
                .list(v)?
                .iter()
                .copied()
                .find(|c| !used.contains(c))
                .expect("a k-list cannot be blocked by fewer than k colors");
            used.insert(c);
            coloring.set(v, c);
        }
    } else {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for (colored, v) in g.vertices().enumerate() {
            let c = fill_color_under_prefix_cap(lists.list(v)?, &counts, colored, k);
            *counts.entry(c).or_insert(0) += 1;
            coloring.set(v, c);
        }
    }
    Ok(coloring)
}
