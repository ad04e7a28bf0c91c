//! Necessary conditions, face-intersection structure, and brute-force search
//! for Hamiltonian embeddings of small graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::embedding::{is_hamiltonian_face, trace_faces, FaceSet, RotationSystem};
use crate::graph::{edge_key, Graph, Vertex};

/// Default cap on the number of rotation systems an exhaustive search may visit.
pub const DEFAULT_SEARCH_BUDGET: u128 = 10_000_000;

/// Consequences of a `d`-regular graph of order `n` having a Hamiltonian
/// embedding: `d` faces, `nd/2` edges, and an integral genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryConditionReport {
    pub order: u64,
    pub degree: u64,
    /// `n·d ≡ 2(n + d) (mod 4)`.
    pub congruence_holds: bool,
    /// 1: `n` or `d` even. 2: if `n`, `d` differ in parity, one of them is `2 mod 4`.
    /// 3: if both are even, the congruence holds (it always does).
    pub clauses: [bool; 3],
    pub implied_face_count: u64,
    /// `2 - n + nd/2 - d` (twice the genus); `None` when `nd` is odd.
    pub twice_implied_genus: Option<i64>,
    /// Integral genus, when there is one.
    pub implied_genus: Option<i64>,
}

pub fn necessary_conditions(order: u64, degree: u64) -> NecessaryConditionReport {
    let (n, d) = (order as i128, degree as i128);
    let congruence_holds = (n * d - 2 * (n + d)).rem_euclid(4) == 0;
    let clause1 = n % 2 == 0 || d % 2 == 0;
    let clause2 = n % 2 == d % 2 || n % 4 == 2 || d % 4 == 2;
    let clause3 = !(n % 2 == 0 && d % 2 == 0) || (n * d - 2 * (n + d)).rem_euclid(4) == 0;
    let twice = ((n * d) % 2 == 0).then(|| (2 - n + n * d / 2 - d) as i64);
    let implied_genus = twice.filter(|t| t.rem_euclid(2) == 0).map(|t| t / 2);
    NecessaryConditionReport {
        order,
        degree,
        congruence_holds,
        clauses: [clause1, clause2, clause3],
        implied_face_count: degree,
        twice_implied_genus: twice,
        implied_genus,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionClass {
    Empty,
    PerfectMatching,
    Other,
}

impl IntersectionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IntersectionClass::Empty => "empty",
            IntersectionClass::PerfectMatching => "perfect_matching",
            IntersectionClass::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairIntersection {
    pub i: usize,
    pub j: usize,
    pub size: u64,
    pub class: IntersectionClass,
    /// Some vertex has two incident edges in the intersection.
    pub shares_adjacent_edges: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub vertex_count: usize,
    pub face_count: usize,
    pub pairs: Vec<PairIntersection>,
}

fn face_edges(w: &crate::embedding::FacialWalk) -> Vec<(Vertex, Vertex)> {
    let mut e: Vec<_> = w.darts().map(|(a, b)| edge_key(a, b)).collect();
    e.sort_unstable();
    e.dedup();
    e
}

fn sorted_intersection(a: &[(Vertex, Vertex)], b: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Pairwise undirected edge-set intersections of the faces, for all `i < j`.
pub fn intersection_profile<G: Graph>(g: &G, faces: &FaceSet) -> IntersectionProfile {
    let n = g.vertex_count();
    let edge_sets: Vec<_> = faces.walks.iter().map(face_edges).collect();
    let mut incidence = vec![0u8; n];
    let mut pairs = Vec::new();
    for i in 0..edge_sets.len() {
        for j in i + 1..edge_sets.len() {
            let common = sorted_intersection(&edge_sets[i], &edge_sets[j]);
            let mut shares = false;
            for &(a, b) in &common {
                for v in [a, b] {
                    let c = &mut incidence[v as usize];
                    *c = c.saturating_add(1);
                    shares |= *c > 1;
                }
            }
            for &(a, b) in &common {
                incidence[a as usize] = 0;
                incidence[b as usize] = 0;
            }
            let class = if common.is_empty() {
                IntersectionClass::Empty
            } else if !shares && 2 * common.len() == n {
                IntersectionClass::PerfectMatching
            } else {
                IntersectionClass::Other
            };
            pairs.push(PairIntersection {
                i,
                j,
                size: common.len() as u64,
                class,
                shares_adjacent_edges: shares,
            });
        }
    }
    IntersectionProfile {
        vertex_count: n,
        face_count: edge_sets.len(),
        pairs,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    /// One cycle through all faces (at least three).
    Cycle,
    /// Exactly two faces sharing edges.
    Degenerate,
    Empty,
    Other,
}

impl ShapeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ShapeKind::Cycle => "cycle",
            ShapeKind::Degenerate => "degenerate",
            ShapeKind::Empty => "empty",
            ShapeKind::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedIntersectionGraph {
    pub node_count: usize,
    pub edges: Vec<(usize, usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeReport {
    pub kind: ShapeKind,
    /// Weight shared by every edge, if they all agree.
    pub common_weight: Option<u64>,
}

pub fn intersection_graph(
    profile: &IntersectionProfile,
) -> (WeightedIntersectionGraph, ShapeReport) {
    let edges: Vec<_> = profile
        .pairs
        .iter()
        .filter(|p| p.size > 0)
        .map(|p| (p.i, p.j, p.size))
        .collect();
    let nodes = profile.face_count;
    let common_weight = match edges.first() {
        Some(&(_, _, w)) if edges.iter().all(|e| e.2 == w) => Some(w),
        _ => None,
    };
    let kind = if edges.is_empty() {
        ShapeKind::Empty
    } else if nodes == 2 {
        ShapeKind::Degenerate
    } else if nodes >= 3 && edges.len() == nodes && is_single_cycle(nodes, &edges) {
        ShapeKind::Cycle
    } else {
        ShapeKind::Other
    };
    (
        WeightedIntersectionGraph {
            node_count: nodes,
            edges,
        },
        ShapeReport {
            kind,
            common_weight,
        },
    )
}

fn is_single_cycle(nodes: usize, edges: &[(usize, usize, u64)]) -> bool {
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b, _) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    if adj.iter().any(|a| a.len() != 2) {
        return false;
    }
    let (mut prev, mut cur, mut steps) = (0, adj[0][0], 1);
    while cur != 0 {
        let next = if adj[cur][0] == prev {
            adj[cur][1]
        } else {
            adj[cur][0]
        };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > nodes {
            return false;
        }
    }
    steps == nodes
}

/// Consistency of a face set with the predicted intersection structure:
/// intersections are perfect matchings or empty, and the weighted intersection
/// graph is a cycle with every weight equal to half the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureCheck {
    /// Two faces only; the predictions do not apply.
    pub degenerate: bool,
    pub pairwise_matching_or_empty: bool,
    pub intersection_cycle_half_order: bool,
    pub no_adjacent_sharing: bool,
}

pub fn conjecture_check(profile: &IntersectionProfile, shape: &ShapeReport) -> ConjectureCheck {
    ConjectureCheck {
        degenerate: profile.face_count == 2,
        pairwise_matching_or_empty: profile
            .pairs
            .iter()
            .all(|p| p.class != IntersectionClass::Other),
        intersection_cycle_half_order: shape.kind == ShapeKind::Cycle
            && shape.common_weight == Some(profile.vertex_count as u64 / 2),
        no_adjacent_sharing: profile.pairs.iter().all(|p| !p.shares_adjacent_edges),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Random,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Random => "random",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub mode: SearchMode,
    /// Number of rotation systems up to per-vertex cyclic rotation, saturating.
    pub space_size: u128,
    pub candidates_examined: u64,
    /// Distinct Hamiltonian embeddings, in discovery order.
    pub embeddings_found: Vec<RotationSystem>,
    /// Candidates that were Hamiltonian embeddings, counting repeats.
    pub hits: u64,
    /// Largest number of Hamiltonian faces seen in a single candidate.
    pub max_hamiltonian_faces: usize,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search space of {space} rotation systems exceeds the budget of {budget}")]
    ResourceBound { space: u128, budget: u128 },
    #[error("random search needs a budget of at least 1")]
    EmptyBudget,
}

/// `Π_v (deg(v) − 1)!`, saturating at `u128::MAX`.
pub fn rotation_space_size<G: Graph>(g: &G) -> u128 {
    let mut total: u128 = 1;
    for v in 0..g.vertex_count() as Vertex {
        let d = g.degree(v);
        for f in 2..d {
            total = total.saturating_mul(f as u128);
        }
    }
    total
}

/// All orderings of `nbrs` keeping `nbrs[0]` first, in lexicographic order of
/// the tail positions.
fn pinned_permutations(nbrs: &[Vertex]) -> Vec<Vec<Vertex>> {
    if nbrs.is_empty() {
        return vec![Vec::new()];
    }
    let mut tail: Vec<usize> = (1..nbrs.len()).collect();
    let mut out = Vec::new();
    loop {
        let mut order = Vec::with_capacity(nbrs.len());
        order.push(nbrs[0]);
        order.extend(tail.iter().map(|&i| nbrs[i]));
        out.push(order);
        // next lexicographic permutation
        let Some(i) = (1..tail.len()).rev().find(|&i| tail[i - 1] < tail[i]) else {
            break;
        };
        let j = (i..tail.len())
            .rev()
            .find(|&j| tail[j] > tail[i - 1])
            .unwrap();
        tail.swap(i - 1, j);
        tail[i..].reverse();
    }
    out
}

fn hamiltonian_face_count<G: Graph>(g: &G, rot: &RotationSystem) -> (usize, bool) {
    let faces = trace_faces(g, rot).expect("candidate rotations are valid by construction");
    let ham = faces
        .walks
        .iter()
        .filter(|w| is_hamiltonian_face(g, w))
        .count();
    (ham, ham == faces.face_count())
}

/// Visits every rotation system (each rotation with its first neighbor pinned,
/// so `(deg − 1)!` choices per vertex) and keeps the Hamiltonian embeddings.
pub fn exhaustive_search<G: Graph>(g: &G, budget: u128) -> Result<SearchOutcome, SearchError> {
    let space = rotation_space_size(g);
    if space > budget {
        return Err(SearchError::ResourceBound { space, budget });
    }
    let n = g.vertex_count();
    let choices: Vec<Vec<Vec<Vertex>>> = (0..n as Vertex)
        .map(|v| pinned_permutations(&g.neighbors(v)))
        .collect();
    let mut digits = vec![0usize; n];
    let mut found = Vec::new();
    let mut examined = 0u64;
    let mut best = 0;
    loop {
        let rot = RotationSystem::from_orders(
            digits
                .iter()
                .enumerate()
                .map(|(v, &d)| choices[v][d].clone())
                .collect(),
        );
        examined += 1;
        let (ham, all) = hamiltonian_face_count(g, &rot);
        best = best.max(ham);
        if all {
            found.push(rot);
        }
        // odometer, last vertex fastest
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(SearchOutcome {
                    mode: SearchMode::Exhaustive,
                    space_size: space,
                    candidates_examined: examined,
                    hits: found.len() as u64,
                    embeddings_found: found,
                    max_hamiltonian_faces: best,
                    seed: None,
                });
            }
            v -= 1;
            digits[v] += 1;
            if digits[v] < choices[v].len() {
                break;
            }
            digits[v] = 0;
        }
    }
}

/// Samples `budget` rotation systems uniformly at random.
///
/// The generator is `ChaCha8Rng::seed_from_u64(seed)`. Each candidate consumes
/// the stream vertex by vertex in ascending order: the vertex's first neighbor
/// (in graph order) stays first and the remaining neighbors are shuffled with
/// `SliceRandom::shuffle`.
pub fn random_search<G: Graph>(
    g: &G,
    budget: u64,
    seed: u64,
) -> Result<SearchOutcome, SearchError> {
    if budget == 0 {
        return Err(SearchError::EmptyBudget);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let base: Vec<Vec<Vertex>> = (0..n as Vertex).map(|v| g.neighbors(v)).collect();
    let mut found = Vec::new();
    let mut hits = 0;
    let mut best = 0;
    for _ in 0..budget {
        let rot = RotationSystem::from_orders(
            base.iter()
                .map(|nbrs| random_cyclic_order(nbrs, &mut rng))
                .collect(),
        );
        let (ham, all) = hamiltonian_face_count(g, &rot);
        best = best.max(ham);
        if all {
            hits += 1;
            if !found.contains(&rot) {
                found.push(rot);
            }
        }
    }
    Ok(SearchOutcome {
        mode: SearchMode::Random,
        space_size: rotation_space_size(g),
        candidates_examined: budget,
        embeddings_found: found,
        hits,
        max_hamiltonian_faces: best,
        seed: Some(seed),
    })
}

/// Uniform cyclic order of `nbrs`, with `nbrs[0]` pinned first.
pub fn random_cyclic_order<R: rand::Rng>(nbrs: &[Vertex], rng: &mut R) -> Vec<Vertex> {
    let mut order = nbrs.to_vec();
    if order.len() > 2 {
        order[1..].shuffle(rng);
    }
    order
}
