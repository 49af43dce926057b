//! Ground truth for equitable forest colorings.
//!
//! A coloring is accepted when every vertex uses a color from its own list,
//! every color class induces a forest, and no class exceeds the cap
//! ⌈n/k⌉ derived from the graph it is checked against. Partial colorings
//! are first class: the reduction kernel checks intermediate states against
//! the cap of the smaller graph it currently covers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

/// The equitability cap ⌈n/k⌉.
pub fn ceil_cap(n: usize, k: usize) -> usize {
    assert!(k >= 1, "list size must be positive");
    n.div_ceil(k)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ListError {
    #[error("list size k must be at least 1")]
    ZeroK,
    #[error("empty list assignment")]
    Empty,
    #[error("vertex {vertex}: list has {found} colors, expected {expected}")]
    WrongSize {
        vertex: usize,
        found: usize,
        expected: usize,
    },
    #[error("vertex {0} has no color list")]
    MissingVertex(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Per-vertex color lists, all of the same size `k`. Colors are opaque
/// non-negative integers; nothing assumes they come from `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    k: usize,
    lists: BTreeMap<usize, BTreeSet<usize>>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<usize, BTreeSet<usize>>) -> Result<Self, ListError> {
        let k = lists
            .values()
            .next()
            .map(BTreeSet::len)
            .ok_or(ListError::Empty)?;
        if k == 0 {
            return Err(ListError::ZeroK);
        }
        for (&vertex, list) in &lists {
            if list.len() != k {
                return Err(ListError::WrongSize {
                    vertex,
                    found: list.len(),
                    expected: k,
                });
            }
        }
        Ok(ListAssignment { k, lists })
    }

    /// Identical lists `{1..=k}` for every vertex.
    pub fn uniform<I: IntoIterator<Item = usize>>(
        vertices: I,
        k: usize,
    ) -> Result<Self, ListError> {
        if k == 0 {
            return Err(ListError::ZeroK);
        }
        let base: BTreeSet<usize> = (1..=k).collect();
        let lists: BTreeMap<usize, BTreeSet<usize>> =
            vertices.into_iter().map(|v| (v, base.clone())).collect();
        if lists.is_empty() {
            return Err(ListError::Empty);
        }
        Ok(ListAssignment { k, lists })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn list(&self, v: usize) -> Result<&BTreeSet<usize>, ListError> {
        self.lists.get(&v).ok_or(ListError::MissingVertex(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.lists.keys().copied()
    }

    /// Checks that every vertex of `g` has a list.
    pub fn covers(&self, g: &Graph) -> Result<(), ListError> {
        match g.vertices().find(|v| !self.lists.contains_key(v)) {
            Some(v) => Err(ListError::MissingVertex(v)),
            None => Ok(()),
        }
    }

    /// Parses the lists format: one line `v: c1 c2 ... ck` per vertex.
    pub fn parse(text: &str) -> Result<Self, ListError> {
        let mut lists = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (head, tail) = l.split_once(':').ok_or_else(|| ListError::Parse {
                line,
                msg: "expected \"v: c1 c2 ... ck\"".into(),
            })?;
            let v: usize = head.trim().parse().map_err(|_| ListError::Parse {
                line,
                msg: format!("bad vertex {head:?}"),
            })?;
            let mut colors = BTreeSet::new();
            for tok in tail.split_whitespace() {
                let c: usize = tok.parse().map_err(|_| ListError::Parse {
                    line,
                    msg: format!("bad color {tok:?}"),
                })?;
                if !colors.insert(c) {
                    return Err(ListError::Parse {
                        line,
                        msg: format!("color {c} repeated"),
                    });
                }
            }
            if lists.insert(v, colors).is_some() {
                return Err(ListError::Parse {
                    line,
                    msg: format!("vertex {v} listed twice"),
                });
            }
        }
        ListAssignment::new(lists)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, list) in &self.lists {
            let colors: Vec<String> = list.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{v}: {}", colors.join(" "));
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} colored twice")]
    DuplicateVertex(usize),
}

/// A (possibly partial) assignment of colors to vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Coloring {
    map: BTreeMap<usize, usize>,
}

impl Coloring {
    pub fn new() -> Coloring {
        Coloring::default()
    }

    pub fn set(&mut self, v: usize, color: usize) {
        self.map.insert(v, color);
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.map.get(&v).copied()
    }

    pub fn remove(&mut self, v: usize) -> Option<usize> {
        self.map.remove(&v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&v, &c)| (v, c))
    }

    pub fn colors(&self) -> BTreeSet<usize> {
        self.map.values().copied().collect()
    }

    pub fn class_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for &c in self.map.values() {
            *counts.entry(c).or_insert(0) += 1;
        }
        counts
    }

    pub fn class_members(&self, color: usize) -> Vec<usize> {
        self.map
            .iter()
            .filter(|(_, &c)| c == color)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Parses the coloring format: one line `v c` per vertex.
    pub fn parse(text: &str) -> Result<Self, ColoringError> {
        let mut coloring = Coloring::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = l.split_whitespace().collect();
            let parse_err = |msg: String| ColoringError::Parse { line, msg };
            if toks.len() != 2 {
                return Err(parse_err("expected \"v c\"".into()));
            }
            let v: usize = toks[0]
                .parse()
                .map_err(|_| parse_err(format!("bad vertex {:?}", toks[0])))?;
            let c: usize = toks[1]
                .parse()
                .map_err(|_| parse_err(format!("bad color {:?}", toks[1])))?;
            if coloring.map.insert(v, c).is_some() {
                return Err(ColoringError::DuplicateVertex(v));
            }
        }
        Ok(coloring)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (&v, &c) in &self.map {
            let _ = writeln!(out, "{v} {c}");
        }
        out
    }
}

impl FromIterator<(usize, usize)> for Coloring {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        Coloring {
            map: iter.into_iter().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `vertex` uses a color missing from its list.
    OffList { vertex: usize, color: usize },
    /// The class of `color` contains a cycle; `walk` is closed
    /// (first vertex repeated at the end).
    MonochromaticCycle { color: usize, walk: Vec<usize> },
    /// The class of `color` has more vertices than the cap allows.
    ClassTooLarge {
        color: usize,
        size: usize,
        cap: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffList { vertex, color } => {
                write!(f, "vertex {vertex}: color {color} is not in its list")
            }
            Violation::MonochromaticCycle { color, walk } => {
                let path: Vec<String> = walk.iter().map(usize::to_string).collect();
                write!(f, "color {color}: cycle {}", path.join("-"))
            }
            Violation::ClassTooLarge { color, size, cap } => {
                write!(f, "color {color}: {size} vertices exceeds cap {cap}")
            }
        }
    }
}

/// Outcome of a verification run; `ok()` iff no violations were found.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "VALID");
        }
        writeln!(f, "INVALID ({} violations)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("incomplete coloring: vertex {0} is uncolored")]
    Incomplete(usize),
    #[error("coloring assigns vertex {0}, which is not in the graph")]
    UnknownVertex(usize),
    #[error(transparent)]
    List(#[from] ListError),
}

/// Checks whether the vertices of `g` colored `color` induce a forest.
/// On failure returns a closed walk witnessing a cycle in that class.
pub fn class_induces_forest(
    g: &Graph,
    coloring: &Coloring,
    color: usize,
) -> Result<(), Vec<usize>> {
    let members: BTreeSet<usize> = g
        .vertices()
        .filter(|&v| coloring.get(v) == Some(color))
        .collect();

    fn dfs(
        g: &Graph,
        members: &BTreeSet<usize>,
        v: usize,
        parent: Option<usize>,
        path: &mut Vec<usize>,
        on_path: &mut BTreeMap<usize, usize>,
        visited: &mut BTreeSet<usize>,
    ) -> Option<Vec<usize>> {
        visited.insert(v);
        on_path.insert(v, path.len());
        path.push(v);
        for w in g.neighbors(v) {
            if !members.contains(&w) || Some(w) == parent {
                continue;
            }
            if let Some(&pos) = on_path.get(&w) {
                let mut walk = path[pos..].to_vec();
                walk.push(w);
                return Some(walk);
            }
            if !visited.contains(&w) {
                if let Some(walk) = dfs(g, members, w, Some(v), path, on_path, visited) {
                    return Some(walk);
                }
            }
        }
        path.pop();
        on_path.remove(&v);
        None
    }

    let mut visited = BTreeSet::new();
    for &start in &members {
        if visited.contains(&start) {
            continue;
        }
        let mut path = Vec::new();
        let mut on_path = BTreeMap::new();
        if let Some(walk) = dfs(
            g,
            &members,
            start,
            None,
            &mut path,
            &mut on_path,
            &mut visited,
        ) {
            return Err(walk);
        }
    }
    Ok(())
}

/// Full check of a total coloring: on-list, acyclic classes, cap
/// ⌈|V(g)|/k⌉. Violations enumerate every failure, not just the first.
pub fn verify_equitable_arboreal(
    g: &Graph,
    lists: &ListAssignment,
    coloring: &Coloring,
) -> Result<Verdict, VerifyError> {
    lists.covers(g)?;
    if let Some(v) = g.vertices().find(|&v| coloring.get(v).is_none()) {
        return Err(VerifyError::Incomplete(v));
    }
    if let Some((v, _)) = coloring.iter().find(|(v, _)| !g.contains_vertex(*v)) {
        return Err(VerifyError::UnknownVertex(v));
    }

    let cap = ceil_cap(g.n(), lists.k());
    let mut violations = Vec::new();

    for v in g.vertices() {
        let color = coloring.get(v).unwrap();
        if !lists.list(v)?.contains(&color) {
            violations.push(Violation::OffList { vertex: v, color });
        }
    }

    for &color in &coloring.colors() {
        if let Err(walk) = class_induces_forest(g, coloring, color) {
            violations.push(Violation::MonochromaticCycle { color, walk });
        }
        let size = g
            .vertices()
            .filter(|&v| coloring.get(v) == Some(color))
            .count();
        if size > cap {
            violations.push(Violation::ClassTooLarge { color, size, cap });
        }
    }

    Ok(Verdict { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cap_values() {
        assert_eq!(ceil_cap(10, 5), 2);
        assert_eq!(ceil_cap(11, 5), 3);
        assert_eq!(ceil_cap(4, 2), 2);
        assert_eq!(ceil_cap(0, 3), 0);
    }

    #[test]
    fn monochromatic_triangle_is_rejected() {
        let g = Graph::complete(3);
        let c: Coloring = (0..3).map(|v| (v, 7)).collect();
        let walk = class_induces_forest(&g, &c, 7).unwrap_err();
        assert_eq!(walk.len(), 4);
        assert_eq!(walk.first(), walk.last());
    }

    #[test]
    fn tiny_classes_are_forests() {
        let g = Graph::complete(5);
        let mut c = Coloring::new();
        c.set(0, 1);
        c.set(1, 1);
        assert!(class_induces_forest(&g, &c, 1).is_ok());
        assert!(class_induces_forest(&g, &c, 99).is_ok());
    }

    #[test]
    fn alternating_cycle_classes_are_forests() {
        let g = Graph::cycle(4);
        let c: Coloring = (0..4).map(|v| (v, 1 + v % 2)).collect();
        assert!(class_induces_forest(&g, &c, 1).is_ok());
        assert!(class_induces_forest(&g, &c, 2).is_ok());
    }

    #[test]
    fn verifier_accepts_paired_k4() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c: Coloring = [(0, 1), (1, 1), (2, 2), (3, 2)].into_iter().collect();
        assert!(verify_equitable_arboreal(&g, &lists, &c).unwrap().ok());
    }

    #[test]
    fn verifier_reports_every_failure() {
        let g = Graph::complete(4);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c: Coloring = [(0, 1), (1, 1), (2, 1), (3, 2)].into_iter().collect();
        let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
        assert!(!verdict.ok());
        assert!(verdict.violations.iter().any(|v| matches!(
            v,
            Violation::ClassTooLarge {
                color: 1,
                size: 3,
                cap: 2
            }
        )));
        assert!(verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::MonochromaticCycle { color: 1, .. })));
    }

    #[test]
    fn verifier_flags_off_list_colors() {
        let g = Graph::path(2);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c: Coloring = [(0, 1), (1, 9)].into_iter().collect();
        let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
        assert_eq!(
            verdict.violations,
            vec![Violation::OffList {
                vertex: 1,
                color: 9
            }]
        );
    }

    #[test]
    fn partial_coloring_is_a_distinct_error() {
        let g = Graph::path(3);
        let lists = ListAssignment::uniform(g.vertices(), 2).unwrap();
        let c: Coloring = [(0, 1)].into_iter().collect();
        assert_eq!(
            verify_equitable_arboreal(&g, &lists, &c).unwrap_err(),
            VerifyError::Incomplete(1)
        );
    }

    #[test]
    fn list_files_round_trip() {
        let text = "# lists\n0: 3 1\n1: 2 5\n2: 1 2\n";
        let lists = ListAssignment::parse(text).unwrap();
        assert_eq!(lists.k(), 2);
        assert_eq!(ListAssignment::parse(&lists.to_text()).unwrap(), lists);
        assert!(matches!(
            ListAssignment::parse("0: 1 2\n1: 3\n"),
            Err(ListError::WrongSize {
                vertex: 1,
                found: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn coloring_files_round_trip() {
        let c = Coloring::parse("# c\n0 4\n2 1\n").unwrap();
        assert_eq!(c.get(0), Some(4));
        assert_eq!(c.get(2), Some(1));
        assert_eq!(Coloring::parse(&c.to_text()).unwrap(), c);
    }

    /// Direct definition scan, kept independent of the verifier: forests are
    /// recognized by counting edges against components.
    fn naive_check(g: &Graph, lists: &ListAssignment, c: &Coloring, cap: usize) -> bool {
        for v in g.vertices() {
            let col = c.get(v).unwrap();
            if !lists.list(v).unwrap().contains(&col) {
                return false;
            }
        }
        for col in c.colors() {
            let members: Vec<usize> = g.vertices().filter(|&v| c.get(v) == Some(col)).collect();
            if members.len() > cap {
                return false;
            }
            let mut edges = 0;
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if g.has_edge(u, v) {
                        edges += 1;
                    }
                }
            }
            // Count components by repeated sweeps.
            let mut comp = 0;
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for &start in &members {
                if seen.contains(&start) {
                    continue;
                }
                comp += 1;
                let mut stack = vec![start];
                seen.insert(start);
                while let Some(u) = stack.pop() {
                    for w in g.neighbors(u) {
                        if members.contains(&w) && seen.insert(w) {
                            stack.push(w);
                        }
                    }
                }
            }
            if edges != members.len() - comp {
                return false;
            }
        }
        true
    }

    prop_compose! {
        fn arb_instance()(n in 1usize..=8)(
            n in Just(n),
            mask in prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
            k in 1usize..=3,
            colors in prop::collection::vec(0usize..6, n),
        ) -> (Graph, usize, Vec<usize>) {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[idx] { edges.push((u, v)); }
                    idx += 1;
                }
            }
            (Graph::from_edges(n, edges).unwrap(), k, colors)
        }
    }

    proptest! {
        #[test]
        fn verifier_agrees_with_naive_scan((g, k, colors) in arb_instance()) {
            // Scattered universes so off-list cases actually occur.
            let lists = ListAssignment::uniform(g.vertices(), k).unwrap();
            let c: Coloring = g.vertices().zip(colors).collect();
            let verdict = verify_equitable_arboreal(&g, &lists, &c).unwrap();
            let cap = ceil_cap(g.n(), k);
            prop_assert_eq!(verdict.ok(), naive_check(&g, &lists, &c, cap));
        }
    }
}
