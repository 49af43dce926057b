//! Exhaustive ground truth at desk scale.
//!
//! A plain backtracking search over the definition: assign list colors
//! vertex by vertex, pruning when a class would exceed the cap ⌈n/k⌉ or
//! close a monochromatic cycle. Exact, and therefore capped at a small
//! vertex count.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::Graph;
use crate::verify::{ceil_cap, Coloring, ListAssignment, ListError};

/// Default cap on instance size for the exhaustive search.
pub const DEFAULT_VERTEX_LIMIT: usize = 12;

/// Default budget (number of list assignments) for [`oracle_list_sweep`].
pub const DEFAULT_SWEEP_BUDGET: u128 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle limit is {limit}")]
    SizeLimit { n: usize, limit: usize },
    #[error("sweep needs {required} feasibility checks, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("universe {universe} is smaller than k = {k}")]
    UniverseTooSmall { universe: usize, k: usize },
    #[error(transparent)]
    List(#[from] ListError),
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub feasible: bool,
    pub witness: Option<Coloring>,
    pub nodes_explored: u64,
}

struct Search<'a> {
    g: &'a Graph,
    lists: &'a ListAssignment,
    order: Vec<usize>,
    cap: usize,
    coloring: Coloring,
    counts: BTreeMap<usize, usize>,
    nodes: u64,
}

impl Search<'_> {
    /// Would coloring `v` with `c` close a cycle inside class `c`? Adding a
    /// vertex to a forest stays a forest unless two of its same-colored
    /// neighbors are already connected within the class.
    fn closes_cycle(&self, v: usize, c: usize) -> bool {
        let same: Vec<usize> = self
            .g
            .neighbors(v)
            .filter(|&w| self.coloring.get(w) == Some(c))
            .collect();
        if same.len() < 2 {
            return false;
        }
        // Sweep the class component by component; a second neighbor found
        // in an already-swept component shares its tree with the first.
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for &start in &same {
            if seen.contains(&start) {
                return true;
            }
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                for w in self.g.neighbors(u) {
                    if w != v && self.coloring.get(w) == Some(c) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        false
    }

    fn run(&mut self, idx: usize) -> Result<bool, ListError> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let list: Vec<usize> = self.lists.list(v)?.iter().copied().collect();
        for c in list {
            self.nodes += 1;
            if self.counts.get(&c).copied().unwrap_or(0) == self.cap {
                continue;
            }
            if self.closes_cycle(v, c) {
                continue;
            }
            self.coloring.set(v, c);
            *self.counts.entry(c).or_insert(0) += 1;
            if self.run(idx + 1)? {
                return Ok(true);
            }
            self.coloring.remove(v);
            *self.counts.get_mut(&c).unwrap() -= 1;
        }
        Ok(false)
    }
}

fn search_with_order(
    g: &Graph,
    lists: &ListAssignment,
    order: Vec<usize>,
) -> Result<OracleResult, ListError> {
    lists.covers(g)?;
    let mut search = Search {
        g,
        lists,
        order,
        cap: ceil_cap(g.n(), lists.k()),
        coloring: Coloring::new(),
        counts: BTreeMap::new(),
        nodes: 0,
    };
    let feasible = search.run(0)?;
    Ok(OracleResult {
        feasible,
        witness: feasible.then_some(search.coloring),
        nodes_explored: search.nodes,
    })
}

fn default_order(g: &Graph) -> Vec<usize> {
    // Fail-first: highest degree first, lowest id on ties. The feasibility
    // bit does not depend on this order.
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Exact feasibility of (g, lists) by backtracking, for graphs with at most
/// `limit` vertices.
pub fn oracle_feasible(
    g: &Graph,
    lists: &ListAssignment,
    limit: usize,
) -> Result<OracleResult, OracleError> {
    if g.n() > limit {
        return Err(OracleError::SizeLimit { n: g.n(), limit });
    }
    Ok(search_with_order(g, lists, default_order(g))?)
}

/// Same search over an explicit vertex order; the verdict must not depend
/// on it (tests compare verdicts, not witnesses).
pub fn oracle_feasible_ordered(
    g: &Graph,
    lists: &ListAssignment,
    order: Vec<usize>,
    limit: usize,
) -> Result<OracleResult, OracleError> {
    if g.n() > limit {
        return Err(OracleError::SizeLimit { n: g.n(), limit });
    }
    Ok(search_with_order(g, lists, order)?)
}

/// Smallest k <= k_max that is feasible with identical lists {1..=k}, or
/// None when every k up to k_max fails.
pub fn oracle_equitable_point_arboricity(
    g: &Graph,
    k_max: usize,
    limit: usize,
) -> Result<Option<usize>, OracleError> {
    if g.n() > limit {
        return Err(OracleError::SizeLimit { n: g.n(), limit });
    }
    for k in 1..=k_max {
        let lists = ListAssignment::uniform(g.vertices(), k).map_err(OracleError::List)?;
        if oracle_feasible(g, &lists, limit)?.feasible {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn k_subsets(universe: usize, k: usize) -> Vec<BTreeSet<usize>> {
    // Lexicographic k-subsets of {1..=universe}.
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(current.iter().copied().collect());
        let mut i = k;
        while i > 0 && current[i - 1] == universe - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        current[i - 1] += 1;
        for j in i..k {
            current[j] = current[j - 1] + 1;
        }
    }
    out
}

/// Enumerates every assignment of k-subsets of {1..=universe} to the
/// vertices (lexicographic, vertices in ascending order) and returns the
/// first one the backtracking search cannot color, or None when all are
/// feasible within the given universe. Nothing more is claimed: a clean
/// sweep is "no counterexample within universe U", not list-arborability.
pub fn oracle_list_sweep(
    g: &Graph,
    k: usize,
    universe: usize,
    budget: u128,
) -> Result<Option<ListAssignment>, OracleError> {
    if universe < k {
        return Err(OracleError::UniverseTooSmall { universe, k });
    }
    let subsets = k_subsets(universe, k);
    let n = g.n();
    let required = (subsets.len() as u128)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(OracleError::BudgetExceeded { required, budget });
    }
    if n == 0 {
        return Ok(None);
    }

    let vertices: Vec<usize> = g.vertices().collect();
    let mut indices = vec![0usize; n];
    loop {
        let lists = ListAssignment::new(
            vertices
                .iter()
                .zip(&indices)
                .map(|(&v, &i)| (v, subsets[i].clone()))
                .collect(),
        )
        .map_err(OracleError::List)?;
        let result = search_with_order(g, &lists, default_order(g)).map_err(OracleError::List)?;
        if !result.feasible {
            return Ok(Some(lists));
        }
        // Odometer step.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < subsets.len() {
                break;
            }
            indices[pos] = 0;
        }
    }
}
