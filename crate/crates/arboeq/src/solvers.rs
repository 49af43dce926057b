//! Constructive solvers for the supported graph classes, plus the
//! reducible-configuration finder used by the planar solver.
//!
//! Each recursive solver strips isolated vertices, removes an ordered
//! reduction set built around a structurally cheap vertex, recurses on the
//! remainder, extends the coloring back with [`extend_over_set`], and
//! finally re-adds the isolated vertices greedily under the prefix cap.
//! The planar solver locates its reduction set by scanning for one of
//! eleven local degree/adjacency patterns; failure to find one flags a
//! non-planar input (or a finder bug) and surfaces as an error.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::reduce::{
    build_set, extend_over_set, extend_pendant, fill_color_under_prefix_cap, solve_base,
    validate_set, ReduceError,
};
use crate::verify::{ceil_cap, Coloring, ListAssignment, ListError};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("k = {k} is below the class minimum {min} (use force to try anyway)")]
    KBelowMinimum { k: usize, min: usize },
    #[error("graph is not complete")]
    NotComplete,
    #[error("degeneracy {found} exceeds {limit}")]
    DegeneracyTooHigh { found: usize, limit: usize },
    #[error("graph contains an induced claw")]
    NotClawFree,
    #[error("edge count {m} exceeds the planar bound 3n - 6 = {bound} for n = {n}")]
    PlanarEdgeBound { n: usize, m: usize, bound: usize },
    #[error("no supported class matches this graph")]
    UnsupportedClass,
    #[error("irreducible: no configuration found (non-planar input or a finder bug)")]
    Irreducible,
    #[error("3-vertex {vertex} has no adjacent neighbor pair (claw-free input cannot do this)")]
    NoAdjacentNeighborPair { vertex: usize },
    #[error("greedy found no admissible color for vertex {vertex}")]
    NoAdmissibleColor { vertex: usize },
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    List(#[from] ListError),
}

/// Classes the solvers understand, in detection order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClassKind {
    Complete,
    TwoDegenerate,
    ClawFreeThreeDegenerate,
    Planar,
    Unknown,
}

impl GraphClassKind {
    /// The smallest k known to work for this class on `g`, if any.
    pub fn default_k_for(self, g: &Graph) -> Option<usize> {
        let delta_term = (g.max_degree() + 1).div_ceil(2);
        match self {
            GraphClassKind::Complete => Some(ceil_cap(g.n(), 2)),
            GraphClassKind::TwoDegenerate => Some(delta_term.max(2)),
            GraphClassKind::ClawFreeThreeDegenerate => Some(delta_term.max(3)),
            GraphClassKind::Planar => Some(delta_term.max(5)),
            GraphClassKind::Unknown => None,
        }
    }
}

impl fmt::Display for GraphClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GraphClassKind::Complete => "complete",
            GraphClassKind::TwoDegenerate => "2-degenerate",
            GraphClassKind::ClawFreeThreeDegenerate => "claw-free 3-degenerate",
            GraphClassKind::Planar => "planar (declared)",
            GraphClassKind::Unknown => "unknown",
        };
        f.write_str(name)
    }
}

/// Detected class together with the parameters the detection used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphClass {
    pub kind: GraphClassKind,
    pub n: usize,
    pub max_degree: usize,
    pub degeneracy: usize,
    pub claw_free: bool,
}

impl GraphClass {
    /// The smallest k known to work for the detected class, if any.
    pub fn default_k(&self) -> Option<usize> {
        let delta_term = (self.max_degree + 1).div_ceil(2);
        match self.kind {
            GraphClassKind::Complete => Some(ceil_cap(self.n, 2)),
            GraphClassKind::TwoDegenerate => Some(delta_term.max(2)),
            GraphClassKind::ClawFreeThreeDegenerate => Some(delta_term.max(3)),
            GraphClassKind::Planar => Some(delta_term.max(5)),
            GraphClassKind::Unknown => None,
        }
    }
}

impl SolveError {
    /// Distinguishes violated preconditions (caller mistakes) from failures
    /// that surface while a run is underway.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            SolveError::KBelowMinimum { .. }
                | SolveError::NotComplete
                | SolveError::DegeneracyTooHigh { .. }
                | SolveError::NotClawFree
                | SolveError::PlanarEdgeBound { .. }
                | SolveError::UnsupportedClass
                | SolveError::List(_)
        )
    }
}

/// Classifies `g`. Planarity is never computed; it only enters through the
/// caller's declaration.
pub fn detect_class(g: &Graph, planar_declared: bool) -> GraphClass {
    let degeneracy = g.degeneracy();
    let claw_free = g.is_claw_free();
    let kind = if g.is_complete() {
        GraphClassKind::Complete
    } else if degeneracy <= 2 {
        GraphClassKind::TwoDegenerate
    } else if degeneracy <= 3 && claw_free {
        GraphClassKind::ClawFreeThreeDegenerate
    } else if planar_declared {
        GraphClassKind::Planar
    } else {
        GraphClassKind::Unknown
    };
    GraphClass {
        kind,
        n: g.n(),
        max_degree: g.max_degree(),
        degeneracy,
        claw_free,
    }
}

/// Reduction-set positions relative to the (yet unknown) set size k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotRef {
    /// 1-based position counted from the front: `FromStart(1)` is x_1.
    FromStart(usize),
    /// Position counted from the back: `FromEnd(0)` is x_k.
    FromEnd(usize),
}

impl SlotRef {
    pub fn resolve(&self, k: usize) -> usize {
        match *self {
            SlotRef::FromStart(i) => i,
            SlotRef::FromEnd(d) => k - d,
        }
    }
}

impl fmt::Display for SlotRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SlotRef::FromStart(i) => write!(f, "x{i}"),
            SlotRef::FromEnd(0) => write!(f, "xk"),
            SlotRef::FromEnd(d) => write!(f, "xk-{d}"),
        }
    }
}

/// The eleven local patterns the planar solver reduces on, scanned in this
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[allow(non_camel_case_types)]
pub enum ConfigKind {
    C1,
    C2,
    C3,
    C4,
    C5a,
    C5b,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ConfigKind::C1 => "C1",
            ConfigKind::C2 => "C2",
            ConfigKind::C3 => "C3",
            ConfigKind::C4 => "C4",
            ConfigKind::C5a => "C5a",
            ConfigKind::C5b => "C5b",
            ConfigKind::C6 => "C6",
            ConfigKind::C7 => "C7",
            ConfigKind::C8 => "C8",
            ConfigKind::C9 => "C9",
            ConfigKind::C10 => "C10",
        };
        f.write_str(name)
    }
}

/// A matched pattern: the vertices pinned to reduction-set slots plus the
/// degree bound for the fill step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducibleConfig {
    pub kind: ConfigKind,
    pub specials: Vec<(usize, SlotRef)>,
    pub fill_degree: usize,
}

impl ReducibleConfig {
    pub fn resolve_specials(&self, k: usize) -> Vec<(usize, usize)> {
        self.specials
            .iter()
            .map(|&(v, slot)| (v, slot.resolve(k)))
            .collect()
    }
}

impl fmt::Display for ReducibleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for (v, slot) in &self.specials {
            write!(f, " {slot}={v}")?;
        }
        Ok(())
    }
}

const PLANAR_FILL_DEGREE: usize = 5;

fn config(kind: ConfigKind, specials: Vec<(usize, SlotRef)>) -> ReducibleConfig {
    ReducibleConfig {
        kind,
        specials,
        fill_degree: PLANAR_FILL_DEGREE,
    }
}

use SlotRef::{FromEnd, FromStart};

fn find_c1(g: &Graph) -> Option<ReducibleConfig> {
    g.vertices()
        .find(|&v| g.degree(v) <= 1)
        .map(|v| config(ConfigKind::C1, vec![(v, FromStart(1))]))
}

fn find_c2(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 2) {
        if let Some(v) = g.vertices().find(|&v| v != u && g.degree(v) <= 3) {
            let w = g
                .neighbors(u)
                .find(|&w| w != v)
                .expect("a 2-vertex keeps a neighbor besides v");
            return Some(config(
                ConfigKind::C2,
                vec![(u, FromStart(1)), (v, FromStart(2)), (w, FromEnd(0))],
            ));
        }
    }
    None
}

fn find_c3(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 3) {
        if let Some(v) = g.neighbors(u).find(|&v| g.degree(v) <= 4) {
            let w = g
                .neighbors(u)
                .find(|&w| w != v)
                .expect("a 3-vertex has three neighbors");
            return Some(config(
                ConfigKind::C3,
                vec![(u, FromStart(1)), (v, FromStart(2)), (w, FromEnd(0))],
            ));
        }
    }
    None
}

fn find_c4(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 3) {
        for v in g.neighbors(u).filter(|&v| g.degree(v) <= 5) {
            for w in g.neighbors(u).filter(|&w| w != v && g.degree(w) <= 5) {
                if let Some(x) = g.neighbors(v).find(|&x| x != u && x != w) {
                    return Some(config(
                        ConfigKind::C4,
                        vec![
                            (u, FromStart(1)),
                            (v, FromStart(2)),
                            (w, FromStart(3)),
                            (x, FromEnd(0)),
                        ],
                    ));
                }
            }
        }
    }
    None
}

fn find_c5a(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 3) {
        if let Some(v) = g.neighbors(u).find(|&v| g.degree(v) == 3) {
            let w = g
                .neighbors(u)
                .find(|&w| w != v)
                .expect("a 3-vertex has three neighbors");
            return Some(config(
                ConfigKind::C5a,
                vec![(u, FromStart(1)), (v, FromStart(2)), (w, FromEnd(0))],
            ));
        }
    }
    None
}

fn find_c5b(g: &Graph) -> Option<ReducibleConfig> {
    let max_degree = g.max_degree();
    for u in g.vertices().filter(|&u| g.degree(u) == 3) {
        let Some(w) = g.neighbors(u).find(|&w| g.degree(w) < max_degree) else {
            continue;
        };
        for v in g.vertices().filter(|&v| v != u && g.degree(v) == 3) {
            if g.has_edge(u, v) {
                continue;
            }
            let t = g
                .neighbors(u)
                .find(|&t| t != w)
                .expect("a 3-vertex has three neighbors");
            return Some(config(
                ConfigKind::C5b,
                vec![
                    (u, FromStart(1)),
                    (v, FromStart(2)),
                    (w, FromEnd(1)),
                    (t, FromEnd(0)),
                ],
            ));
        }
    }
    None
}

fn find_c6(g: &Graph) -> Option<ReducibleConfig> {
    let triangles = g.triangles();
    for t1 in &triangles {
        for &u in t1 {
            if g.degree(u) > 3 {
                continue;
            }
            let rest: Vec<usize> = t1.iter().copied().filter(|&x| x != u).collect();
            let (v, w) = (rest[0], rest[1]);
            for t2 in &triangles {
                for &x in t2 {
                    if g.degree(x) <= 3 && x != u && x != v && x != w {
                        return Some(config(
                            ConfigKind::C6,
                            vec![
                                (u, FromStart(1)),
                                (x, FromStart(2)),
                                (v, FromEnd(1)),
                                (w, FromEnd(0)),
                            ],
                        ));
                    }
                }
            }
        }
    }
    None
}

fn find_c7(g: &Graph) -> Option<ReducibleConfig> {
    for t in g.triangles() {
        for &u in &t {
            if g.degree(u) > 4 {
                continue;
            }
            for &v in &t {
                if v == u || g.degree(v) > 5 {
                    continue;
                }
                let w = t.iter().copied().find(|&w| w != u && w != v).unwrap();
                if g.degree(u) == 4 {
                    let tail = g
                        .neighbors(u)
                        .find(|&x| x != v && x != w)
                        .expect("a 4-vertex has a neighbor outside its triangle");
                    return Some(config(
                        ConfigKind::C7,
                        vec![
                            (u, FromStart(1)),
                            (v, FromStart(2)),
                            (w, FromEnd(1)),
                            (tail, FromEnd(0)),
                        ],
                    ));
                }
                return Some(config(
                    ConfigKind::C7,
                    vec![(u, FromStart(1)), (v, FromStart(2)), (w, FromEnd(0))],
                ));
            }
        }
    }
    None
}

fn find_c8(g: &Graph) -> Option<ReducibleConfig> {
    let min_degree = g.min_degree();
    if min_degree > 3 {
        return None;
    }
    let x = g.vertices().find(|&x| g.degree(x) == min_degree)?;
    for t in g.triangles() {
        if t.iter().any(|&y| g.degree(y) < 4) {
            continue;
        }
        for &u in &t {
            if g.degree(u) != 4 {
                continue;
            }
            for &v in &t {
                if v == u || g.degree(v) > 7 {
                    continue;
                }
                let w = t.iter().copied().find(|&w| w != u && w != v).unwrap();
                let tail = g
                    .neighbors(u)
                    .find(|&y| y != v && y != w && y != x)
                    .expect("a 4-vertex keeps a neighbor after excluding three vertices");
                return Some(config(
                    ConfigKind::C8,
                    vec![
                        (u, FromStart(1)),
                        (x, FromStart(2)),
                        (v, FromStart(3)),
                        (w, FromEnd(1)),
                        (tail, FromEnd(0)),
                    ],
                ));
            }
        }
    }
    None
}

fn find_c9(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 5) {
        for v in g.neighbors(u).filter(|&v| (5..=6).contains(&g.degree(v))) {
            let common: Vec<usize> = g
                .neighbor_set(u)
                .intersection(g.neighbor_set(v))
                .copied()
                .collect();
            for &w in common.iter().filter(|&&w| (5..=7).contains(&g.degree(w))) {
                let Some(&x) = common.iter().find(|&&x| x != w) else {
                    continue;
                };
                let tail = g
                    .neighbors(u)
                    .find(|&t| t != x && t != v && t != w)
                    .expect("a 5-vertex keeps a neighbor after excluding three vertices");
                return Some(config(
                    ConfigKind::C9,
                    vec![
                        (u, FromStart(1)),
                        (v, FromStart(2)),
                        (w, FromStart(3)),
                        (x, FromEnd(1)),
                        (tail, FromEnd(0)),
                    ],
                ));
            }
        }
    }
    None
}

fn find_c10(g: &Graph) -> Option<ReducibleConfig> {
    for u in g.vertices().filter(|&u| g.degree(u) == 6) {
        for v in g.neighbors(u).filter(|&v| g.degree(v) == 4) {
            let common: Vec<usize> = g
                .neighbor_set(u)
                .intersection(g.neighbor_set(v))
                .copied()
                .collect();
            if common.len() < 2 {
                continue;
            }
            let (w, x) = (common[0], common[1]);
            return Some(config(
                ConfigKind::C10,
                vec![
                    (v, FromStart(1)),
                    (u, FromStart(2)),
                    (w, FromEnd(1)),
                    (x, FromEnd(0)),
                ],
            ));
        }
    }
    None
}

/// Scans the patterns in order C1..C10 with lowest-id tie-breaking.
/// Triangles are taken abstractly, not from an embedding: every face
/// triangle is a triangle, so the scan can only find configurations sooner.
pub fn find_reducible_config(g: &Graph) -> Result<ReducibleConfig, SolveError> {
    let finders: [fn(&Graph) -> Option<ReducibleConfig>; 11] = [
        find_c1, find_c2, find_c3, find_c4, find_c5a, find_c5b, find_c6, find_c7, find_c8, find_c9,
        find_c10,
    ];
    finders
        .iter()
        .find_map(|f| f(g))
        .ok_or(SolveError::Irreducible)
}

/// Counters describing one solver run.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SolveStats {
    pub reduction_steps: usize,
    pub pendant_steps: usize,
    pub isolated_recolored: usize,
    pub base_vertices: usize,
}

/// Greedy coloring of a complete graph: the first k vertices get pairwise
/// distinct colors, every later vertex takes the smallest list color used
/// at most once so far. Class sizes never exceed 2.
pub fn solve_complete(g: &Graph, lists: &ListAssignment) -> Result<Coloring, SolveError> {
    solve_complete_inner(g, lists, false)
}

fn solve_complete_inner(
    g: &Graph,
    lists: &ListAssignment,
    force: bool,
) -> Result<Coloring, SolveError> {
    if !g.is_complete() {
        return Err(SolveError::NotComplete);
    }
    lists.covers(g)?;
    let n = g.n();
    let k = lists.k();
    let min = ceil_cap(n, 2);
    if k < min && !force {
        return Err(SolveError::KBelowMinimum { k, min });
    }

    let mut coloring = Coloring::new();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, v) in g.vertices().enumerate() {
        let list = lists.list(v)?;
        let pick = if i < k {
            list.iter().copied().find(|c| !counts.contains_key(c))
        } else {
            list.iter()
                .copied()
                .find(|c| counts.get(c).copied().unwrap_or(0) <= 1)
        };
        match pick {
            Some(c) => {
                *counts.entry(c).or_insert(0) += 1;
                coloring.set(v, c);
            }
            None => return Err(SolveError::NoAdmissibleColor { vertex: v }),
        }
    }
    Ok(coloring)
}

type PickReduction<'a> = &'a dyn Fn(&Graph) -> Result<Vec<(usize, usize)>, SolveError>;

/// Shared recursion for the degenerate-class solvers. `pick_reduction`
/// chooses the pinned slots for the current (isolated-free) graph.
fn solve_by_reduction(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    fill_degree: usize,
    pick_reduction: PickReduction<'_>,
    stats: &mut SolveStats,
) -> Result<Coloring, SolveError> {
    let isolated: BTreeSet<usize> = g.isolated_vertices().into_iter().collect();
    let h = if isolated.is_empty() {
        g.clone()
    } else {
        g.delete_vertices(&isolated)
            .expect("isolated vertices are in g")
    };

    let mut coloring = if h.n() <= k || h.is_edgeless() {
        stats.base_vertices = stats.base_vertices.max(h.n());
        solve_base(&h, lists)?
    } else {
        let specials = pick_reduction(&h)?;
        let s = build_set(&h, &specials, fill_degree, k)?;
        validate_set(&h, &s).map_err(ReduceError::from)?;
        let rest = h
            .delete_vertices(&s.to_set())
            .expect("set vertices are in h");
        let base = solve_by_reduction(&rest, lists, k, fill_degree, pick_reduction, stats)?;
        stats.reduction_steps += 1;
        extend_over_set(&h, &s, &base, lists)?
    };

    readd_isolated(&isolated, lists, k, &mut coloring, stats)?;
    Ok(coloring)
}

fn readd_isolated(
    isolated: &BTreeSet<usize>,
    lists: &ListAssignment,
    k: usize,
    coloring: &mut Coloring,
    stats: &mut SolveStats,
) -> Result<(), SolveError> {
    if isolated.is_empty() {
        return Ok(());
    }
    let mut counts = coloring.class_counts();
    for (colored, &w) in (coloring.len()..).zip(isolated.iter()) {
        let c = fill_color_under_prefix_cap(lists.list(w)?, &counts, colored, k);
        *counts.entry(c).or_insert(0) += 1;
        coloring.set(w, c);
        stats.isolated_recolored += 1;
    }
    Ok(())
}

fn two_degenerate_specials(h: &Graph, k: usize) -> Result<Vec<(usize, usize)>, SolveError> {
    let u = h
        .vertices()
        .find(|&u| (1..=2).contains(&h.degree(u)))
        .expect("a 2-degenerate graph without isolated vertices has a 1- or 2-vertex");
    let v = h.neighbors(u).next().expect("u has a neighbor");
    Ok(vec![(u, 1), (v, k)])
}

/// Recursive solver for 2-degenerate graphs; needs k >= max(⌈(Δ+1)/2⌉, 2).
pub fn solve_two_degenerate(g: &Graph, lists: &ListAssignment) -> Result<Coloring, SolveError> {
    Ok(solve_two_degenerate_traced_inner(g, lists, false)?.0)
}

pub fn solve_two_degenerate_traced(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<(Coloring, SolveStats), SolveError> {
    solve_two_degenerate_traced_inner(g, lists, false)
}

fn solve_two_degenerate_traced_inner(
    g: &Graph,
    lists: &ListAssignment,
    force: bool,
) -> Result<(Coloring, SolveStats), SolveError> {
    let degeneracy = g.degeneracy();
    if degeneracy > 2 {
        return Err(SolveError::DegeneracyTooHigh {
            found: degeneracy,
            limit: 2,
        });
    }
    lists.covers(g)?;
    let k = lists.k();
    let min = ((g.max_degree() + 1).div_ceil(2)).max(2);
    if k < min && !force {
        return Err(SolveError::KBelowMinimum { k, min });
    }
    let mut stats = SolveStats::default();
    let pick = move |h: &Graph| two_degenerate_specials(h, k);
    let coloring = solve_by_reduction(g, lists, k, 2, &pick, &mut stats)?;
    Ok((coloring, stats))
}

fn clawfree_specials(h: &Graph, k: usize) -> Result<Vec<(usize, usize)>, SolveError> {
    let min_degree = h.min_degree();
    let u = h
        .vertices()
        .find(|&u| h.degree(u) == min_degree)
        .expect("graph is non-empty");
    if min_degree <= 2 {
        let v = h.neighbors(u).next().expect("u has a neighbor");
        return Ok(vec![(u, 1), (v, k)]);
    }
    // Minimum degree 3: claw-freeness guarantees an adjacent neighbor pair.
    let ns: Vec<usize> = h.neighbors(u).collect();
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            if h.has_edge(ns[i], ns[j]) {
                return Ok(vec![(u, 1), (ns[i], k - 1), (ns[j], k)]);
            }
        }
    }
    Err(SolveError::NoAdjacentNeighborPair { vertex: u })
}

/// Recursive solver for claw-free 3-degenerate graphs; needs
/// k >= max(⌈(Δ+1)/2⌉, 3).
pub fn solve_clawfree_3deg(g: &Graph, lists: &ListAssignment) -> Result<Coloring, SolveError> {
    Ok(solve_clawfree_traced_inner(g, lists, false)?.0)
}

pub fn solve_clawfree_3deg_traced(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<(Coloring, SolveStats), SolveError> {
    solve_clawfree_traced_inner(g, lists, false)
}

fn solve_clawfree_traced_inner(
    g: &Graph,
    lists: &ListAssignment,
    force: bool,
) -> Result<(Coloring, SolveStats), SolveError> {
    let degeneracy = g.degeneracy();
    if degeneracy > 3 {
        return Err(SolveError::DegeneracyTooHigh {
            found: degeneracy,
            limit: 3,
        });
    }
    if !g.is_claw_free() {
        return Err(SolveError::NotClawFree);
    }
    lists.covers(g)?;
    let k = lists.k();
    let min = ((g.max_degree() + 1).div_ceil(2)).max(3);
    if k < min && !force {
        return Err(SolveError::KBelowMinimum { k, min });
    }
    let mut stats = SolveStats::default();
    let pick = move |h: &Graph| clawfree_specials(h, k);
    let coloring = solve_by_reduction(g, lists, k, 3, &pick, &mut stats)?;
    Ok((coloring, stats))
}

/// Recursive solver for declared-planar graphs; needs
/// k >= max(⌈(Δ+1)/2⌉, 5). Only the Euler edge bound m <= 3n - 6 is
/// enforced; planarity itself is the caller's assertion.
pub fn solve_planar(g: &Graph, lists: &ListAssignment) -> Result<Coloring, SolveError> {
    Ok(solve_planar_traced_inner(g, lists, false)?.0)
}

pub fn solve_planar_traced(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<(Coloring, SolveStats), SolveError> {
    solve_planar_traced_inner(g, lists, false)
}

fn solve_planar_traced_inner(
    g: &Graph,
    lists: &ListAssignment,
    force: bool,
) -> Result<(Coloring, SolveStats), SolveError> {
    let n = g.n();
    if n >= 3 {
        let bound = 3 * n - 6;
        if g.m() > bound {
            return Err(SolveError::PlanarEdgeBound { n, m: g.m(), bound });
        }
    }
    lists.covers(g)?;
    let k = lists.k();
    let min = ((g.max_degree() + 1).div_ceil(2)).max(5);
    if k < min && !force {
        return Err(SolveError::KBelowMinimum { k, min });
    }
    let mut stats = SolveStats::default();
    let coloring = planar_rec(g, lists, k, &mut stats)?;
    Ok((coloring, stats))
}

fn planar_rec(
    g: &Graph,
    lists: &ListAssignment,
    k: usize,
    stats: &mut SolveStats,
) -> Result<Coloring, SolveError> {
    let isolated: BTreeSet<usize> = g.isolated_vertices().into_iter().collect();
    let h = if isolated.is_empty() {
        g.clone()
    } else {
        g.delete_vertices(&isolated)
            .expect("isolated vertices are in g")
    };

    let mut coloring = if h.n() <= k {
        stats.base_vertices = stats.base_vertices.max(h.n());
        solve_base(&h, lists)?
    } else {
        let found = find_reducible_config(&h)?;
        if found.kind == ConfigKind::C1 {
            let v = found.specials[0].0;
            let rest = h.delete_vertex(v).expect("v is in h");
            let base = planar_rec(&rest, lists, k, stats)?;
            stats.pendant_steps += 1;
            extend_pendant(&h, v, &base, lists)?
        } else {
            let s = build_set(&h, &found.resolve_specials(k), found.fill_degree, k)?;
            validate_set(&h, &s).map_err(ReduceError::from)?;
            let rest = h
                .delete_vertices(&s.to_set())
                .expect("set vertices are in h");
            let base = planar_rec(&rest, lists, k, stats)?;
            stats.reduction_steps += 1;
            extend_over_set(&h, &s, &base, lists)?
        }
    };

    readd_isolated(&isolated, lists, k, &mut coloring, stats)?;
    Ok(coloring)
}

/// Runs the solver for `kind`; `force` skips only the k-minimum check, so
/// undersized k can be tried experimentally (the attempt may fail and the
/// caller is expected to verify the output either way).
pub fn solve_in_class(
    g: &Graph,
    lists: &ListAssignment,
    kind: GraphClassKind,
    force: bool,
) -> Result<Coloring, SolveError> {
    match kind {
        GraphClassKind::Complete => solve_complete_inner(g, lists, force),
        GraphClassKind::TwoDegenerate => Ok(solve_two_degenerate_traced_inner(g, lists, force)?.0),
        GraphClassKind::ClawFreeThreeDegenerate => {
            Ok(solve_clawfree_traced_inner(g, lists, force)?.0)
        }
        GraphClassKind::Planar => Ok(solve_planar_traced_inner(g, lists, force)?.0),
        GraphClassKind::Unknown => Err(SolveError::UnsupportedClass),
    }
}

/// Detects the class and dispatches to the matching solver.
pub fn solve_auto(
    g: &Graph,
    lists: &ListAssignment,
    planar_declared: bool,
) -> Result<Coloring, SolveError> {
    let class = detect_class(g, planar_declared);
    solve_in_class(g, lists, class.kind, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::verify_equitable_arboreal;
    use std::collections::BTreeMap;

    #[test]
    fn complete_k4_pairs_up() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c = solve_complete(&g, &lists).unwrap();
        assert_eq!(
            (0..4).map(|v| c.get(v).unwrap()).collect::<Vec<_>>(),
            vec![1, 2, 1, 2]
        );
    }

    #[test]
    fn complete_k3_with_large_k_uses_distinct_colors() {
        let g = Graph::complete(3);
        let mut lists = BTreeMap::new();
        lists.insert(0, BTreeSet::from([2, 5, 9]));
        lists.insert(1, BTreeSet::from([2, 7, 8]));
        lists.insert(2, BTreeSet::from([2, 5, 7]));
        let lists = ListAssignment::new(lists).unwrap();
        let c = solve_complete(&g, &lists).unwrap();
        let colors: BTreeSet<usize> = (0..3).map(|v| c.get(v).unwrap()).collect();
        assert_eq!(colors.len(), 3);
    }

    #[test]
    fn complete_k5_greedy_trace() {
        let g = Graph::complete(5);
        let lists = ListAssignment::uniform(g.vertices(), 3).unwrap();
        let c = solve_complete(&g, &lists).unwrap();
        assert_eq!(
            (0..5).map(|v| c.get(v).unwrap()).collect::<Vec<_>>(),
            vec![1, 2, 3, 1, 2]
        );
        assert!(verify_equitable_arboreal(&g, &lists, &c).unwrap().ok());
    }

    #[test]
    fn complete_rejects_small_k() {
        let g = Graph::complete(6);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        assert!(matches!(
            solve_complete(&g, &lists),
            Err(SolveError::KBelowMinimum { k: 2, min: 3 })
        ));
    }

    #[test]
    fn two_degenerate_path() {
        let g = Graph::path(4);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c = solve_two_degenerate(&g, &lists).unwrap();
        assert!(verify_equitable_arboreal(&g, &lists, &c).unwrap().ok());
        // Deterministic: a second run reproduces the coloring.
        assert_eq!(c, solve_two_degenerate(&g, &lists).unwrap());
    }

    #[test]
    fn two_degenerate_edgeless_delegates_to_base() {
        let g = Graph::edgeless(6);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c = solve_two_degenerate(&g, &lists).unwrap();
        assert!(verify_equitable_arboreal(&g, &lists, &c).unwrap().ok());
    }

    #[test]
    fn two_degenerate_rejects_k4() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        assert!(matches!(
            solve_two_degenerate(&g, &lists),
            Err(SolveError::DegeneracyTooHigh { found: 3, limit: 2 })
        ));
    }

    #[test]
    fn clawfree_solves_k4() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 3).unwrap();
        let c = solve_clawfree_3deg(&g, &lists).unwrap();
        let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
        assert!(verdict.ok());
    }

    #[test]
    fn clawfree_triangle_hits_base_case() {
        let g = Graph::complete(3);
        let lists = ListAssignment::uniform(g.vertices(), 3).unwrap();
        let c = solve_clawfree_3deg(&g, &lists).unwrap();
        let colors: BTreeSet<usize> = (0..3).map(|v| c.get(v).unwrap()).collect();
        assert_eq!(colors.len(), 3);
    }

    #[test]
    fn clawfree_rejects_the_claw() {
        let g = Graph::star(3);
        let lists = ListAssignment::uniform(g.vertices(), 3).unwrap();
        assert!(matches!(
            solve_clawfree_3deg(&g, &lists),
            Err(SolveError::NotClawFree)
        ));
    }

    #[test]
    fn config_scan_on_named_graphs() {
        assert_eq!(
            find_reducible_config(&Graph::complete(4)).unwrap().kind,
            ConfigKind::C3
        );
        assert_eq!(
            find_reducible_config(&Graph::path(3)).unwrap().kind,
            ConfigKind::C1
        );
        let (ico, _) = crate::plane::named::icosahedron();
        assert_eq!(find_reducible_config(&ico).unwrap().kind, ConfigKind::C9);
        let (cube, _) = crate::plane::named::cube();
        assert_eq!(find_reducible_config(&cube).unwrap().kind, ConfigKind::C3);
    }

    /// Finds the configuration, checks the specials are distinct, and runs
    /// the full build/validate path at the smallest planar-legal k.
    fn scan_and_validate(g: &Graph) -> ReducibleConfig {
        let cfg = find_reducible_config(g).unwrap();
        let vs: BTreeSet<usize> = cfg.specials.iter().map(|&(v, _)| v).collect();
        assert_eq!(vs.len(), cfg.specials.len(), "specials repeat a vertex");
        if cfg.kind != ConfigKind::C1 {
            let k = ((g.max_degree() + 1).div_ceil(2)).max(5);
            let s = build_set(g, &cfg.resolve_specials(k), cfg.fill_degree, k).unwrap();
            validate_set(g, &s).unwrap();
        }
        cfg
    }

    #[test]
    fn config_c2_on_a_cycle() {
        // Every vertex of C_5 is a 2-vertex; no pendants.
        let g = Graph::cycle(5);
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C2);
        assert_eq!(g.degree(cfg.specials[0].0), 2);
        assert!(g.degree(cfg.specials[1].0) <= 3);
        assert!(g.has_edge(cfg.specials[0].0, cfg.specials[2].0));
    }

    #[test]
    fn config_c4_needs_two_mid_degree_neighbors() {
        // One 3-vertex whose neighbors all have degree 5, so C3 cannot fire.
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (1, 4),
                (1, 5),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C4);
        let (u, v, w, x) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
        );
        assert_eq!(g.degree(u), 3);
        assert!(g.degree(v) <= 5 && g.degree(w) <= 5);
        assert!(g.has_edge(u, v) && g.has_edge(u, w));
        assert!(g.has_edge(v, x) && x != u && x != w);
    }

    #[test]
    fn config_c5b_on_non_adjacent_low_vertices() {
        // Two non-adjacent 3-vertices whose shared neighborhood has exactly
        // one vertex below the maximum degree; C3 and C4 stay silent.
        let edges = [
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 5),
            (3, 6),
            (3, 7),
            (3, 8),
            (4, 5),
            (4, 6),
            (4, 7),
            (4, 8),
            (5, 6),
            (5, 7),
            (5, 8),
            (6, 7),
            (6, 8),
            (7, 8),
        ];
        let g = Graph::from_edges(9, edges).unwrap();
        assert_eq!(g.max_degree(), 6);
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C5b);
        let (u, v, w, t) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
        );
        assert_eq!(g.degree(u), 3);
        assert_eq!(g.degree(v), 3);
        assert!(!g.has_edge(u, v));
        assert!(g.has_edge(u, w) && g.degree(w) < g.max_degree());
        assert!(g.has_edge(u, t) && t != w);
    }

    #[test]
    fn config_c6_on_two_triangles_with_low_corners() {
        // Two non-adjacent 3-vertices, each in a triangle, all their
        // neighbors at the maximum degree so C5b stays silent.
        let g = Graph::from_edges(
            7,
            [
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
                (2, 5),
                (2, 6),
                (3, 5),
                (3, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
        )
        .unwrap();
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C6);
        let (u, x, v, w) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
        );
        assert!(g.degree(u) <= 3 && g.degree(x) <= 3);
        assert!(g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(v, w));
        assert!(g.triangles().iter().any(|t| t.contains(&x)));
    }

    #[test]
    fn config_c7_on_the_octahedron() {
        // 4-regular, so no pattern needing a 3-vertex applies; every
        // triangle pairs a 4-vertex with a 5^- vertex.
        let g = Graph::from_edges(
            6,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 5),
                (2, 4),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5),
            ],
        )
        .unwrap();
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C7);
        assert_eq!(cfg.specials.len(), 4, "the 4-vertex branch pins a tail");
        let (u, v) = (cfg.specials[0].0, cfg.specials[1].0);
        assert_eq!(g.degree(u), 4);
        assert!(g.degree(v) <= 5);
        assert!(g.has_edge(u, v));
    }

    #[test]
    fn config_c8_with_a_remote_minimum_degree_witness() {
        // A (4,7,7)-triangle dodges C7; the only 3-vertex sits outside all
        // low triangles, witnessing the minimum degree for C8.
        let edges = [
            (0, 2),
            (0, 3),
            (0, 5),
            (0, 6),
            (1, 2),
            (1, 3),
            (1, 4),
            (2, 3),
            (2, 4),
            (2, 7),
            (2, 8),
            (2, 9),
            (3, 4),
            (3, 7),
            (3, 8),
            (3, 9),
            (4, 7),
            (4, 8),
            (4, 9),
            (5, 7),
            (5, 8),
            (5, 9),
            (6, 7),
            (6, 8),
            (6, 9),
        ];
        let g = Graph::from_edges(10, edges).unwrap();
        assert_eq!(g.min_degree(), 3);
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C8);
        let (u, x, v, w, t) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
            cfg.specials[4].0,
        );
        assert_eq!(g.degree(u), 4);
        assert_eq!(g.degree(x), g.min_degree());
        assert!(g.degree(v) <= 7 && g.degree(v) >= 4);
        assert!(g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(v, w));
        assert!(g.has_edge(u, t));
    }

    #[test]
    fn config_c10_on_adjacent_triangles() {
        // Degrees 4 and 6 only, minimum degree 4: C8 and C9 cannot fire,
        // and every triangle with a 4-vertex has two 6-corners.
        let edges = [
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (1, 2),
            (1, 3),
            (1, 7),
            (2, 4),
            (2, 5),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 5),
            (3, 6),
            (3, 7),
            (4, 7),
            (5, 7),
            (6, 7),
        ];
        let g = Graph::from_edges(8, edges).unwrap();
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C10);
        let (v, u, w, x) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
        );
        assert_eq!(g.degree(u), 6);
        assert_eq!(g.degree(v), 4);
        for corner in [w, x] {
            assert!(g.has_edge(u, corner) && g.has_edge(v, corner));
        }
    }

    #[test]
    fn config_c9_specials_on_the_icosahedron() {
        let (g, _) = crate::plane::named::icosahedron();
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C9);
        let (u, v, w, x, t) = (
            cfg.specials[0].0,
            cfg.specials[1].0,
            cfg.specials[2].0,
            cfg.specials[3].0,
            cfg.specials[4].0,
        );
        assert_eq!(g.degree(u), 5);
        assert!((5..=6).contains(&g.degree(v)));
        assert!((5..=7).contains(&g.degree(w)));
        // Two triangles sharing the edge uv.
        assert!(g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(v, w));
        assert!(g.has_edge(u, x) && g.has_edge(v, x) && x != w);
        assert!(g.has_edge(u, t));
    }

    #[test]
    fn adjacent_low_vertices_resolve_to_c3_before_c5a() {
        // Two adjacent 3-vertices also form a (3-vertex, 4^-)-pair, so the
        // ordered scan settles on C3; the C5a pattern is its safety net for
        // out-of-order use.
        let g = Graph::from_edges(
            8,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 4),
                (2, 5),
                (3, 6),
                (3, 7),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        )
        .unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        let cfg = scan_and_validate(&g);
        assert_eq!(cfg.kind, ConfigKind::C3);
    }

    #[test]
    fn planar_solves_icosahedron() {
        let (g, _) = crate::plane::named::icosahedron();
        let lists = ListAssignment::uniform(g.vertices(), 5).unwrap();
        let c = solve_planar(&g, &lists).unwrap();
        let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
        assert!(verdict.ok());
        for (_, count) in c.class_counts() {
            assert!(count <= ceil_cap(12, 5));
        }
    }

    #[test]
    fn planar_tetrahedron_hits_base_case() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 5).unwrap();
        let c = solve_planar(&g, &lists).unwrap();
        let colors: BTreeSet<usize> = (0..4).map(|v| c.get(v).unwrap()).collect();
        assert_eq!(colors.len(), 4);
    }

    #[test]
    fn planar_rejects_dense_graphs() {
        let g = Graph::complete(6);
        let lists = ListAssignment::uniform(g.vertices(), 5).unwrap();
        assert!(matches!(
            solve_planar(&g, &lists),
            Err(SolveError::PlanarEdgeBound {
                n: 6,
                m: 15,
                bound: 12
            })
        ));
    }

    #[test]
    fn auto_dispatch() {
        let k6 = Graph::complete(6);
        let lists = ListAssignment::uniform(k6.vertices(), 3).unwrap();
        assert!(solve_auto(&k6, &lists, false).is_ok());

        let tree = Graph::path(7);
        let lists = ListAssignment::uniform(tree.vertices(), 2).unwrap();
        assert!(solve_auto(&tree, &lists, false).is_ok());

        // 4-regular circulant: min degree 4 everywhere, so degeneracy 4 and
        // no supported class without a planar declaration.
        let circulant = Graph::from_edges(
            8,
            (0..8).flat_map(|i| vec![(i, (i + 1) % 8), (i, (i + 2) % 8)]),
        )
        .unwrap();
        let lists = ListAssignment::uniform(circulant.vertices(), 3).unwrap();
        assert!(matches!(
            solve_auto(&circulant, &lists, false),
            Err(SolveError::UnsupportedClass)
        ));
    }

    #[test]
    fn detection_reports_parameters() {
        let class = detect_class(&Graph::complete(6), false);
        assert_eq!(class.kind, GraphClassKind::Complete);
        assert_eq!(class.default_k(), Some(3));

        let class = detect_class(&Graph::path(9), false);
        assert_eq!(class.kind, GraphClassKind::TwoDegenerate);
        assert_eq!(class.default_k(), Some(2));
    }

    #[test]
    fn forced_low_k_runs_and_is_checked_by_the_caller() {
        let g = Graph::path(6);
        let lists = ListAssignment::uniform(g.vertices(), 1).unwrap();
        // k = 1 is below the class minimum 2; forcing may still succeed on a
        // path (a single color class that is a path is a forest, but the cap
        // ⌈6/1⌉ = 6 allows it).
        let c = solve_in_class(&g, &lists, GraphClassKind::TwoDegenerate, true);
        if let Ok(c) = c {
            let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
            assert!(verdict.ok());
        }
    }
}
