//! Seeded instance generators. A seed fully determines the output.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::plane::{trace_faces, RotationSystem};
use crate::verify::ListAssignment;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("generator needs n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("universe {universe} is smaller than k = {k}")]
    UniverseTooSmall { universe: usize, k: usize },
    #[error("claw-free growth stalled at {reached} of {target} vertices; try a smaller n or another seed")]
    GrowthStalled { reached: usize, target: usize },
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Iterated vertex addition joined to at most two existing vertices;
/// 2-degenerate by construction.
pub fn gen_2degenerate(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 1 {
        return Err(GenError::TooSmall { n, min: 1 });
    }
    let mut rng = rng_for(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let count = rng.gen_range(0..=v.min(2));
        for idx in sample(&mut rng, v, count) {
            edges.push((idx, v));
        }
    }
    let g = Graph::from_edges(n, edges).expect("construction avoids duplicates");
    debug_assert!(g.degeneracy() <= 2);
    Ok(g)
}

/// Would attaching a new vertex with neighborhood `attach` create a claw?
/// Only the attachment points can become claw centers (the new vertex's
/// own neighbors are checked by the caller's choice of move).
fn attachment_creates_claw(g: &Graph, attach: &BTreeSet<usize>) -> bool {
    for &w in attach {
        let others: Vec<usize> = g.neighbors(w).filter(|x| !attach.contains(x)).collect();
        for i in 0..others.len() {
            for j in i + 1..others.len() {
                if !g.has_edge(others[i], others[j]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Rejection-sampling growth: each new vertex is attached to the endpoints
/// of a random edge or to the corners of a random triangle, keeping the
/// graph claw-free and 3-degenerate; both properties are asserted on the
/// final graph. When random attempts miss and an exhaustive scan finds no
/// safe site either, the growth restarts from the seed triangle (the rng
/// stream continues, so the output is still a pure function of the seed).
pub fn gen_clawfree_3deg(n: usize, seed: u64) -> Result<Graph, GenError> {
    const RANDOM_ATTEMPTS: usize = 60;
    const RESTARTS: usize = 12;
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    let mut rng = rng_for(seed);
    let mut deepest = 3;

    'growth: for _ in 0..=RESTARTS {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for v in 0..3 {
            adj.insert(v, (0..3).filter(|&w| w != v).collect());
        }

        for v in 3..n {
            let g = Graph::from_adjacency(adj.clone());
            let edges = g.edges();
            let triangles = g.triangles();
            let mut site: Option<BTreeSet<usize>> = None;
            for _ in 0..RANDOM_ATTEMPTS {
                let attach: BTreeSet<usize> = if !triangles.is_empty() && rng.gen_bool(0.5) {
                    triangles[rng.gen_range(0..triangles.len())]
                        .iter()
                        .copied()
                        .collect()
                } else {
                    let (a, b) = edges[rng.gen_range(0..edges.len())];
                    BTreeSet::from([a, b])
                };
                if !attachment_creates_claw(&g, &attach) {
                    site = Some(attach);
                    break;
                }
            }
            if site.is_none() {
                site = triangles
                    .iter()
                    .map(|t| t.iter().copied().collect::<BTreeSet<usize>>())
                    .chain(edges.iter().map(|&(a, b)| BTreeSet::from([a, b])))
                    .find(|attach| !attachment_creates_claw(&g, attach));
            }
            let Some(attach) = site else {
                deepest = deepest.max(v);
                continue 'growth;
            };
            for &w in &attach {
                adj.get_mut(&w).unwrap().insert(v);
            }
            adj.insert(v, attach);
        }

        let g = Graph::from_adjacency(adj);
        assert!(g.is_claw_free(), "accept step keeps the graph claw-free");
        assert!(
            g.degeneracy() <= 3,
            "attachments of degree <= 3 keep degeneracy <= 3"
        );
        return Ok(g);
    }
    Err(GenError::GrowthStalled {
        reached: deepest,
        target: n,
    })
}

/// Stacked triangulation: starting from an embedded K_4, a new vertex is
/// inserted into a uniformly chosen face and joined to its three corners,
/// with the rotation system maintained incrementally. With a positive
/// `delete_prob` a post-pass removes each edge with that probability when
/// the graph stays connected. The final embedding is Euler-validated.
pub fn gen_planar_triangulation(
    n: usize,
    seed: u64,
    delete_prob: f64,
) -> Result<(Graph, RotationSystem), GenError> {
    if n < 4 {
        return Err(GenError::TooSmall { n, min: 4 });
    }
    let mut rng = rng_for(seed);

    // K_4 with its four oriented triangular faces.
    let mut rotation: BTreeMap<usize, Vec<usize>> = BTreeMap::from([
        (0, vec![1, 2, 3]),
        (1, vec![2, 0, 3]),
        (2, vec![0, 1, 3]),
        (3, vec![2, 1, 0]),
    ]);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 3], [1, 2, 3], [2, 0, 3], [1, 0, 2]];

    for v in 4..n {
        let face = faces.swap_remove(rng.gen_range(0..faces.len()));
        let [a, b, c] = face;
        // New rotation is the reversed face walk; each corner gets v right
        // after its predecessor on the walk.
        rotation.insert(v, vec![c, b, a]);
        for (corner, pred) in [(a, c), (b, a), (c, b)] {
            let rot = rotation.get_mut(&corner).unwrap();
            let pos = rot.iter().position(|&x| x == pred).unwrap();
            rot.insert(pos + 1, v);
        }
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }

    let mut adj: BTreeMap<usize, BTreeSet<usize>> = rotation
        .iter()
        .map(|(&v, nbrs)| (v, nbrs.iter().copied().collect()))
        .collect();

    if delete_prob > 0.0 {
        let edges = Graph::from_adjacency(adj.clone()).edges();
        for (u, v) in edges {
            if !rng.gen_bool(delete_prob) {
                continue;
            }
            adj.get_mut(&u).unwrap().remove(&v);
            adj.get_mut(&v).unwrap().remove(&u);
            if Graph::from_adjacency(adj.clone()).is_connected() {
                rotation.get_mut(&u).unwrap().retain(|&x| x != v);
                rotation.get_mut(&v).unwrap().retain(|&x| x != u);
            } else {
                adj.get_mut(&u).unwrap().insert(v);
                adj.get_mut(&v).unwrap().insert(u);
            }
        }
    }

    let graph = Graph::from_adjacency(adj);
    let rotation = RotationSystem::new(rotation);
    trace_faces(graph.clone(), rotation.clone())
        .expect("incrementally maintained embedding is valid");
    Ok((graph, rotation))
}

/// Uniform random k-subset of {1..=universe} for every vertex.
pub fn gen_lists(
    g: &Graph,
    k: usize,
    universe: usize,
    seed: u64,
) -> Result<ListAssignment, GenError> {
    if universe < k {
        return Err(GenError::UniverseTooSmall { universe, k });
    }
    let mut rng = rng_for(seed);
    let lists: BTreeMap<usize, BTreeSet<usize>> = g
        .vertices()
        .map(|v| {
            let colors: BTreeSet<usize> = sample(&mut rng, universe, k)
                .into_iter()
                .map(|i| i + 1)
                .collect();
            (v, colors)
        })
        .collect();
    Ok(ListAssignment::new(lists).expect("sampled lists have size k"))
}
