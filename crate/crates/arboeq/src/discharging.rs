//! Mechanical charge bookkeeping on plane graphs.
//!
//! Every vertex and face starts with charge d(x) - 4; Euler's formula makes
//! the total exactly -8 on a connected plane graph. Four local rules then
//! move charge around without changing the sum. All arithmetic is exact
//! rational — denominators 2, 3, 7 and 21 occur and must survive the sums
//! untouched. The rules are applied in a fixed order (R1, R2, R3, R4) and
//! when several send-amounts apply to the same vertex/face pair, a single
//! transfer of the largest amount is booked. The final report also runs the
//! reducible-configuration scan: every audited instance shows negative
//! charge coexisting with a reducible pattern.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;

use crate::plane::PlaneGraph;
use crate::solvers::{find_reducible_config, ReducibleConfig};

/// A charged element: a vertex or a traced face (by index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "vertex {v}"),
            Element::Face(i) => write!(f, "face {i}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    R1,
    R2_1,
    R2_2,
    R2_3,
    R2_4,
    R3_1,
    R3_2,
    R4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::R1 => "R1",
            Rule::R2_1 => "R2.1",
            Rule::R2_2 => "R2.2",
            Rule::R2_3 => "R2.3",
            Rule::R2_4 => "R2.4",
            Rule::R3_1 => "R3.1",
            Rule::R3_2 => "R3.2",
            Rule::R4 => "R4",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    pub amount: Rational64,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Finding {
    /// A negative considerable face with no incident 5-vertex: R4 cannot
    /// repair it, so the deficit is flagged instead of silently dropped.
    StarvedFace { face: usize, deficit: Rational64 },
    /// An element that ends with negative charge.
    NegativeFinal {
        element: Element,
        charge: Rational64,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::StarvedFace { face, deficit } => {
                write!(f, "starved-face face={face} deficit={deficit}")
            }
            Finding::NegativeFinal { element, charge } => {
                write!(f, "negative-final {element} charge={charge}")
            }
        }
    }
}

/// Full account of one discharging run: initial charges, every transfer
/// with its rule, final charges, and the per-element statistics the rules
/// consulted (adjacent 3-vertices per vertex, incident 5-vertices and the
/// R4 deficit per face).
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    pub initial: BTreeMap<Element, Rational64>,
    pub transfers: Vec<Transfer>,
    pub final_charges: BTreeMap<Element, Rational64>,
    pub gamma: BTreeMap<usize, Rational64>,
    pub n5: BTreeMap<usize, usize>,
    pub n3: BTreeMap<usize, usize>,
    pub findings: Vec<Finding>,
}

impl ChargeLedger {
    pub fn total_initial(&self) -> Rational64 {
        self.initial.values().sum()
    }

    pub fn total_final(&self) -> Rational64 {
        self.final_charges.values().sum()
    }

    pub fn negative_finals(&self) -> Vec<(Element, Rational64)> {
        self.final_charges
            .iter()
            .filter(|(_, &c)| c < Rational64::zero())
            .map(|(&e, &c)| (e, c))
            .collect()
    }
}

fn structural_counts(pg: &PlaneGraph) -> (BTreeMap<usize, usize>, BTreeMap<usize, usize>) {
    let g = &pg.graph;
    let n3 = g
        .vertices()
        .map(|v| (v, g.neighbors(v).filter(|&w| g.degree(w) == 3).count()))
        .collect();
    let n5 = pg
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| {
            (
                i,
                f.incident_vertices()
                    .iter()
                    .filter(|&&v| g.degree(v) == 5)
                    .count(),
            )
        })
        .collect();
    (n3, n5)
}

/// Charges c(x) = d(x) - 4 for every vertex and face. The total is
/// asserted to be exactly -8.
pub fn initial_charges(pg: &PlaneGraph) -> ChargeLedger {
    let g = &pg.graph;
    let mut initial = BTreeMap::new();
    for v in g.vertices() {
        initial.insert(
            Element::Vertex(v),
            Rational64::from_integer(g.degree(v) as i64 - 4),
        );
    }
    for (i, f) in pg.faces.iter().enumerate() {
        initial.insert(
            Element::Face(i),
            Rational64::from_integer(f.degree() as i64 - 4),
        );
    }
    let (n3, n5) = structural_counts(pg);
    let ledger = ChargeLedger {
        final_charges: initial.clone(),
        initial,
        transfers: Vec::new(),
        gamma: BTreeMap::new(),
        n5,
        n3,
        findings: Vec::new(),
    };
    assert_eq!(
        ledger.total_initial(),
        Rational64::from_integer(-8),
        "Euler-validated plane graphs carry total charge -8"
    );
    ledger
}

fn ratio(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

/// Runs R1-R4 in order and returns the complete ledger. Conservation
/// (total final = total initial = -8) is asserted.
pub fn apply_discharging(pg: &PlaneGraph) -> ChargeLedger {
    let mut ledger = initial_charges(pg);
    let g = &pg.graph;
    let max_degree = g.max_degree();
    let min_degree = g.min_degree();

    let mut charges = ledger.initial.clone();
    let mut transfers = Vec::new();
    let push = |charges: &mut BTreeMap<Element, Rational64>,
                transfers: &mut Vec<Transfer>,
                from: Element,
                to: Element,
                amount: Rational64,
                rule: Rule| {
        *charges.get_mut(&from).unwrap() -= amount;
        *charges.get_mut(&to).unwrap() += amount;
        transfers.push(Transfer {
            from,
            to,
            amount,
            rule,
        });
    };

    // R1: a 3-vertex adjacent only to maximum-degree vertices receives 1/3
    // from each neighbor.
    for v in g.vertices() {
        if g.degree(v) == 3 && g.neighbors(v).all(|w| g.degree(w) == max_degree) {
            for w in g.neighbors(v) {
                push(
                    &mut charges,
                    &mut transfers,
                    Element::Vertex(w),
                    Element::Vertex(v),
                    ratio(1, 3),
                    Rule::R1,
                );
            }
        }
    }

    // R2/R3 on triangular faces. For each incident vertex the applicable
    // send-amounts are collected and one transfer of the maximum is booked.
    for (i, face) in pg.faces.iter().enumerate() {
        if face.degree() != 3 {
            continue;
        }
        let corners = face.incident_vertices();
        let face_min = corners.iter().map(|&v| g.degree(v)).min().unwrap();
        if face_min < 4 {
            continue;
        }
        let all_five_plus = face_min >= 5;
        for &u in &corners {
            let d = g.degree(u);
            let mut candidates: Vec<(Rational64, Rule)> = Vec::new();
            if min_degree <= 3 && d == 6 {
                candidates.push((ratio(1, 3), Rule::R2_1));
            }
            if min_degree <= 3 && d == 7 {
                candidates.push((ratio(3, 7), Rule::R2_2));
            }
            if d >= 8 {
                candidates.push((ratio(1, 2), Rule::R2_3));
            }
            if min_degree == 4 && corners.iter().any(|&x| x != u && g.degree(x) == 4) {
                candidates.push((ratio(1, 2), Rule::R2_4));
            }
            if all_five_plus && min_degree >= 4 && d == 6 {
                candidates.push((ratio(1, 3), Rule::R3_1));
            }
            if all_five_plus && min_degree >= 4 && d == 7 {
                candidates.push((ratio(3, 7), Rule::R3_2));
            }
            // Largest amount wins; the earlier rule is kept on ties.
            let mut best: Option<(Rational64, Rule)> = None;
            for &(amount, rule) in &candidates {
                if best.is_none_or(|(b, _)| amount > b) {
                    best = Some((amount, rule));
                }
            }
            if let Some((amount, rule)) = best {
                push(
                    &mut charges,
                    &mut transfers,
                    Element::Vertex(u),
                    Element::Face(i),
                    amount,
                    rule,
                );
            }
        }
    }

    // R4: a considerable face still negative after R2/R3 draws its deficit
    // in equal parts from its incident 5-vertices.
    let mut findings = Vec::new();
    for (i, face) in pg.faces.iter().enumerate() {
        let corners = face.incident_vertices();
        if corners.is_empty() || corners.iter().any(|&v| g.degree(v) < 4) {
            continue;
        }
        let charge = charges[&Element::Face(i)];
        if charge >= Rational64::zero() {
            ledger.gamma.insert(i, Rational64::zero());
            continue;
        }
        let gamma = -charge;
        ledger.gamma.insert(i, gamma);
        let fives: Vec<usize> = corners
            .iter()
            .copied()
            .filter(|&v| g.degree(v) == 5)
            .collect();
        if fives.is_empty() {
            findings.push(Finding::StarvedFace {
                face: i,
                deficit: gamma,
            });
            continue;
        }
        let share = gamma / Rational64::from_integer(fives.len() as i64);
        for v in fives {
            push(
                &mut charges,
                &mut transfers,
                Element::Vertex(v),
                Element::Face(i),
                share,
                Rule::R4,
            );
        }
    }

    for (&e, &c) in &charges {
        if c < Rational64::zero() {
            findings.push(Finding::NegativeFinal {
                element: e,
                charge: c,
            });
        }
    }

    ledger.transfers = transfers;
    ledger.final_charges = charges;
    ledger.findings = findings;
    assert_eq!(
        ledger.total_final(),
        ledger.total_initial(),
        "rules only move charge"
    );
    ledger
}

/// The ledger together with the configuration scan on the underlying
/// graph, rendered as a stable line-oriented report.
#[derive(Debug, Clone)]
pub struct DischargeReport {
    pub plane: PlaneGraph,
    pub ledger: ChargeLedger,
    pub config: Option<ReducibleConfig>,
}

pub fn discharging_report(pg: &PlaneGraph) -> DischargeReport {
    let ledger = apply_discharging(pg);
    let config = find_reducible_config(&pg.graph).ok();
    DischargeReport {
        plane: pg.clone(),
        ledger,
        config,
    }
}

impl fmt::Display for DischargeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.plane.graph;
        writeln!(
            f,
            "graph n={} m={} faces={} min_degree={} max_degree={}",
            g.n(),
            g.m(),
            self.plane.faces.len(),
            g.min_degree(),
            g.max_degree()
        )?;
        writeln!(
            f,
            "total initial={} final={}",
            self.ledger.total_initial(),
            self.ledger.total_final()
        )?;
        for v in g.vertices() {
            let e = Element::Vertex(v);
            writeln!(
                f,
                "vertex {v} degree={} n3={} initial={} final={}",
                g.degree(v),
                self.ledger.n3[&v],
                self.ledger.initial[&e],
                self.ledger.final_charges[&e]
            )?;
        }
        for (i, face) in self.plane.faces.iter().enumerate() {
            let e = Element::Face(i);
            let walk: Vec<String> = face.walk.iter().map(usize::to_string).collect();
            write!(
                f,
                "face {i} degree={} walk={} n5={} initial={} final={}",
                face.degree(),
                walk.join("-"),
                self.ledger.n5[&i],
                self.ledger.initial[&e],
                self.ledger.final_charges[&e]
            )?;
            if let Some(gamma) = self.ledger.gamma.get(&i) {
                write!(f, " gamma={gamma}")?;
            }
            writeln!(f)?;
        }
        for t in &self.ledger.transfers {
            writeln!(
                f,
                "transfer {} {} -> {} amount={}",
                t.rule, t.from, t.to, t.amount
            )?;
        }
        for (e, c) in self.ledger.negative_finals() {
            writeln!(f, "negative {e} charge={c}")?;
        }
        for finding in &self.ledger.findings {
            writeln!(f, "finding {finding}")?;
        }
        match &self.config {
            Some(cfg) => writeln!(f, "config {cfg}")?,
            None => writeln!(f, "config none")?,
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{named, trace_faces};

    fn plane(pair: (crate::graph::Graph, crate::plane::RotationSystem)) -> PlaneGraph {
        trace_faces(pair.0, pair.1).unwrap()
    }

    #[test]
    fn initial_charges_of_named_graphs() {
        let tetra = plane(named::tetrahedron());
        let ledger = initial_charges(&tetra);
        assert!(ledger.initial.values().all(|&c| c == ratio(-1, 1)));
        assert_eq!(ledger.total_initial(), Rational64::from_integer(-8));

        let cube = plane(named::cube());
        let ledger = initial_charges(&cube);
        assert_eq!(ledger.total_initial(), Rational64::from_integer(-8));
        for v in cube.graph.vertices() {
            assert_eq!(ledger.initial[&Element::Vertex(v)], ratio(-1, 1));
        }
        for i in 0..cube.faces.len() {
            assert_eq!(ledger.initial[&Element::Face(i)], Rational64::zero());
        }

        let ico = plane(named::icosahedron());
        let ledger = initial_charges(&ico);
        for v in ico.graph.vertices() {
            assert_eq!(ledger.initial[&Element::Vertex(v)], ratio(1, 1));
        }
        for i in 0..ico.faces.len() {
            assert_eq!(ledger.initial[&Element::Face(i)], ratio(-1, 1));
        }
        assert_eq!(ledger.total_initial(), Rational64::from_integer(-8));
    }

    #[test]
    fn tetrahedron_r1_round_trips_every_edge() {
        // All vertices are 3-vertices adjacent only to maximum-degree
        // vertices, so 1/3 flows along every dart and the totals stand
        // still.
        let pg = plane(named::tetrahedron());
        let ledger = apply_discharging(&pg);
        assert_eq!(ledger.transfers.len(), 12);
        assert!(ledger.transfers.iter().all(|t| t.rule == Rule::R1));
        for (e, &c) in &ledger.final_charges {
            assert_eq!(c, ledger.initial[e], "element {e}");
        }
        assert_eq!(ledger.total_final(), Rational64::from_integer(-8));
    }

    #[test]
    fn icosahedron_reaches_the_hand_computed_finals() {
        let pg = plane(named::icosahedron());
        let ledger = apply_discharging(&pg);
        // Every face is considerable with deficit 1 and three incident
        // 5-vertices; each vertex is incident with five triangles.
        for i in 0..pg.faces.len() {
            assert_eq!(ledger.final_charges[&Element::Face(i)], Rational64::zero());
            assert_eq!(ledger.gamma[&i], ratio(1, 1));
            assert_eq!(ledger.n5[&i], 3);
        }
        for v in pg.graph.vertices() {
            assert_eq!(ledger.final_charges[&Element::Vertex(v)], ratio(-2, 3));
        }
        assert!(ledger.transfers.iter().all(|t| t.rule == Rule::R4));
        assert_eq!(ledger.total_final(), Rational64::from_integer(-8));
    }

    #[test]
    fn cube_finals_equal_initials() {
        let pg = plane(named::cube());
        let ledger = apply_discharging(&pg);
        for (e, &c) in &ledger.final_charges {
            assert_eq!(c, ledger.initial[e]);
        }
        assert!(ledger
            .negative_finals()
            .iter()
            .all(|(e, c)| matches!(e, Element::Vertex(_)) && *c == ratio(-1, 1)));
        assert_eq!(ledger.negative_finals().len(), 8);
    }

    #[test]
    fn transfers_stay_local() {
        for pg in [
            plane(named::tetrahedron()),
            plane(named::cube()),
            plane(named::icosahedron()),
        ] {
            let ledger = apply_discharging(&pg);
            for t in &ledger.transfers {
                match (t.from, t.to) {
                    (Element::Vertex(a), Element::Vertex(b)) => {
                        assert!(pg.graph.has_edge(a, b), "{a} {b} not adjacent");
                    }
                    (Element::Vertex(v), Element::Face(i)) => {
                        assert!(pg.faces[i].incident_vertices().contains(&v));
                    }
                    other => panic!("unexpected transfer endpoints {other:?}"),
                }
            }
        }
    }

    #[test]
    fn report_names_configs_and_totals() {
        let pg = plane(named::tetrahedron());
        let report = discharging_report(&pg).to_string();
        assert!(report.contains("total initial=-8 final=-8"));
        assert!(report.contains("config C3"));

        let pg = plane(named::icosahedron());
        let report = discharging_report(&pg).to_string();
        assert!(report.contains("config C9"));

        let pg = plane(named::cube());
        let report = discharging_report(&pg).to_string();
        assert!(report.contains("config C3"));
    }
}
