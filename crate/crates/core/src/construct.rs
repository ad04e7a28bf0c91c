//! Recursive doubling construction of Hamiltonian matching decompositions.
//!
//! Starting from the two matchings of `Q_2`, each step turns a decomposition
//! `M_1..M_m` of `Q_m` (with its oriented faces `C_1..C_m`) into a
//! decomposition of `Q_{2m}`:
//!
//! * `O_i` routes outside edges along the directed cycle `C_i`: a vertex whose
//!   full label is even is joined to the same inner vertex in the next copy
//!   along `C_i`, an odd one to the previous copy.
//! * `P_i` uses `M_{i+1}` inside the start copy `0…0` and `M_i` in every other copy.
//!
//! The new list is `O_1, P_1, O_2, P_2, …, O_m, P_m`. Every intermediate claim is
//! checked, and a violated one aborts with [`ConstructError::InvariantBroken`].

use rayon::prelude::*;

use crate::embedding::{rotation_from_decomposition, trace_faces, FaceSet, RotationSystem};
use crate::graph::{Graph, Vertex};
use crate::hypercube::{join, label_parity, HypercubeGraph, Parity};
use crate::matching::{merge_cycles, union_cycles, validate_matching, PerfectMatching};

/// Largest dimension the construction will build.
pub const MAX_CONSTRUCT_DIMENSION: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(u32),
    #[error("dimension {0} exceeds the supported bound of {MAX_CONSTRUCT_DIMENSION}")]
    ResourceBound(u32),
    #[error("construction invariant `{clause}` broken: {detail}")]
    InvariantBroken {
        clause: &'static str,
        detail: String,
    },
}

impl ConstructError {
    pub fn clause(&self) -> Option<&'static str> {
        match self {
            ConstructError::InvariantBroken { clause, .. } => Some(clause),
            _ => None,
        }
    }
}

fn broken(clause: &'static str, detail: impl Into<String>) -> ConstructError {
    ConstructError::InvariantBroken {
        clause,
        detail: detail.into(),
    }
}

/// Cyclically ordered perfect matchings of `Q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDecomposition {
    dimension: u32,
    matchings: Vec<PerfectMatching>,
}

impl MatchingDecomposition {
    /// Wraps matchings without checking them; see [`verify_decomposition`].
    pub fn new(dimension: u32, matchings: Vec<PerfectMatching>) -> Self {
        Self {
            dimension,
            matchings,
        }
    }

    /// Builds a decomposition from explicit edge lists, checking in order that
    /// every pair is a hypercube edge (`edges_valid`), that no edge is listed in
    /// two matchings (`matchings_disjoint`) and that each list is a perfect
    /// matching (`matching_perfect`).
    pub fn from_edge_lists(
        dimension: u32,
        lists: &[Vec<(Vertex, Vertex)>],
    ) -> Result<Self, ConstructError> {
        let g = HypercubeGraph::new(dimension).map_err(|e| broken("edges_valid", e.to_string()))?;
        for (i, list) in lists.iter().enumerate() {
            if let Some(&(u, v)) = list.iter().find(|&&(u, v)| !g.is_edge(u, v)) {
                return Err(broken(
                    "edges_valid",
                    format!("matching {}: {u}-{v} is not an edge", i + 1),
                ));
            }
        }
        let mut owner: std::collections::HashMap<(Vertex, Vertex), usize> =
            std::collections::HashMap::new();
        for (i, list) in lists.iter().enumerate() {
            for &(u, v) in list {
                let key = crate::graph::edge_key(u, v);
                if let Some(j) = owner.insert(key, i) {
                    return Err(broken(
                        "matchings_disjoint",
                        format!(
                            "edge {u}-{v} is listed in matchings {} and {}",
                            j + 1,
                            i + 1
                        ),
                    ));
                }
            }
        }
        let matchings = lists
            .iter()
            .enumerate()
            .map(|(i, list)| {
                PerfectMatching::from_edges(g.order(), list).ok_or_else(|| {
                    broken(
                        "matching_perfect",
                        format!("matching {} is not perfect", i + 1),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(dimension, matchings))
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn matchings(&self) -> &[PerfectMatching] {
        &self.matchings
    }

    pub fn graph(&self) -> HypercubeGraph {
        HypercubeGraph::new(self.dimension).expect("decomposition dimension is valid")
    }

    /// Index of the matching containing edge `u-v`.
    pub fn owner(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.matchings.iter().position(|m| m.contains(u, v))
    }
}

/// Directed Hamiltonian faces, `cycles[i]` bounding `M_i ∪ M_{i+1}`, each
/// starting at vertex `0…0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedCycleFamily {
    pub cycles: Vec<Vec<Vertex>>,
}

/// Full check of a decomposition of `Q_n`: `n` perfect matchings, pairwise
/// disjoint, covering every edge, with every cyclically consecutive union a
/// single Hamiltonian cycle.
pub fn verify_decomposition(dec: &MatchingDecomposition) -> Result<(), ConstructError> {
    let g = dec.graph();
    let k = dec.matchings.len();
    if k != dec.dimension as usize {
        return Err(broken(
            "matching_count",
            format!("expected {} matchings, found {k}", dec.dimension),
        ));
    }
    for (i, m) in dec.matchings.iter().enumerate() {
        validate_matching(&g, m)
            .map_err(|e| broken("matching_perfect", format!("matching {}: {e}", i + 1)))?;
    }
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    if let Some(&(i, j)) = pairs
        .par_iter()
        .find_first(|&&(i, j)| !dec.matchings[i].is_disjoint(&dec.matchings[j]))
    {
        return Err(broken(
            "matchings_disjoint",
            format!("matchings {} and {} share an edge", i + 1, j + 1),
        ));
    }
    let total: usize = dec.matchings.iter().map(|m| m.vertex_count() / 2).sum();
    if total != g.edge_count() {
        return Err(broken(
            "edge_partition",
            format!("{total} matching edges for {} graph edges", g.edge_count()),
        ));
    }
    (0..k).into_par_iter().try_for_each(|i| {
        let next = (i + 1) % k;
        let cover = union_cycles(&g, &dec.matchings[i], &dec.matchings[next])
            .map_err(|e| broken("consecutive_union_hamiltonian", e.to_string()))?;
        if cover.cycles.len() != 1 || cover.cycles[0].len() != g.order() {
            return Err(broken(
                "consecutive_union_hamiltonian",
                format!(
                    "M_{} ∪ M_{} splits into {} cycles",
                    i + 1,
                    next + 1,
                    cover.cycles.len()
                ),
            ));
        }
        Ok(())
    })
}

/// Checks that the faces are Hamiltonian and are exactly the consecutive
/// unions `M_i ∪ M_{i+1}`, each once. Assumes `dec` is already verified.
pub fn check_faces_match_unions(
    dec: &MatchingDecomposition,
    faces: &FaceSet,
) -> Result<(), ConstructError> {
    let k = dec.matchings.len();
    let g = dec.graph();
    if faces.face_count() != k {
        return Err(broken(
            "faces_match_unions",
            format!("{} faces for {k} consecutive unions", faces.face_count()),
        ));
    }
    let mut expected: Vec<(usize, usize)> = (0..k)
        .map(|i| {
            let j = (i + 1) % k;
            (i.min(j), i.max(j))
        })
        .collect();
    let mut found = faces
        .walks
        .par_iter()
        .enumerate()
        .map(|(fi, w)| {
            if !crate::embedding::is_hamiltonian_face(&g, w) {
                return Err(broken(
                    "faces_match_unions",
                    format!("face {fi} is not Hamiltonian"),
                ));
            }
            let owners: Vec<usize> = w
                .darts()
                .take(2)
                .map(|(a, b)| dec.owner(a, b).expect("decomposition covers all edges"))
                .collect();
            let (a, b) = (owners[0], owners[1]);
            for (step, (x, y)) in w.darts().enumerate() {
                let want = if step % 2 == 0 { a } else { b };
                if !dec.matchings[want].contains(x, y) {
                    return Err(broken(
                        "faces_match_unions",
                        format!("face {fi} does not alternate between two matchings"),
                    ));
                }
            }
            Ok((a.min(b), a.max(b)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    expected.sort_unstable();
    found.sort_unstable();
    if expected != found {
        return Err(broken(
            "faces_match_unions",
            "faces are not in bijection with consecutive unions",
        ));
    }
    Ok(())
}

/// The base decomposition `M_1 = {00-01, 10-11}`, `M_2 = {00-10, 01-11}` of `Q_2`.
pub fn base_case() -> (MatchingDecomposition, RotationSystem) {
    let dec = MatchingDecomposition::new(
        2,
        vec![
            PerfectMatching::dimension_flip(2, 0),
            PerfectMatching::dimension_flip(2, 1),
        ],
    );
    let rot = rotation_from_decomposition(&dec);
    (dec, rot)
}

/// Reads the directed faces of `rot` and assigns `cycles[i]` to the face
/// through the dart `(0…0, M_{i+1}(0…0))`, checking that its edge set is
/// `M_i ∪ M_{i+1}`.
pub fn oriented_faces(
    dec: &MatchingDecomposition,
    rot: &RotationSystem,
) -> Result<OrientedCycleFamily, ConstructError> {
    let g = dec.graph();
    let k = dec.matchings.len();
    let faces = trace_faces(&g, rot).map_err(|e| broken("faces_match_unions", e.to_string()))?;
    let mut slots: Vec<Option<Vec<Vertex>>> = vec![None; k];
    for w in &faces.walks {
        let walk = w
            .starting_at(0)
            .filter(|w| crate::embedding::is_hamiltonian_face(&g, w))
            .ok_or_else(|| broken("faces_match_unions", "face is not Hamiltonian"))?;
        let first = walk.vertices()[1];
        let owner = dec
            .owner(0, first)
            .ok_or_else(|| broken("faces_match_unions", "face edge outside decomposition"))?;
        let i = (owner + k - 1) % k;
        let (mi, mj) = (&dec.matchings[i], &dec.matchings[owner]);
        let alternating = walk.darts().enumerate().all(|(step, (x, y))| {
            if step % 2 == 0 {
                mj.contains(x, y)
            } else {
                mi.contains(x, y)
            }
        });
        if !alternating || slots[i].is_some() {
            return Err(broken(
                "faces_match_unions",
                format!(
                    "face leaving 0 along M_{} is not M_{} ∪ M_{}",
                    owner + 1,
                    i + 1,
                    owner + 1
                ),
            ));
        }
        slots[i] = Some(walk.0);
    }
    let cycles = slots
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| broken("faces_match_unions", "some consecutive union has no face"))?;
    Ok(OrientedCycleFamily { cycles })
}

/// `O_i` for the directed Hamiltonian cycle `cycle` of `Q_m`, as a matching of
/// `Q_{2m}`.
pub fn build_outside(m: u32, cycle: &[Vertex]) -> Result<PerfectMatching, ConstructError> {
    let g = HypercubeGraph::new(2 * m).map_err(|e| broken("outside_perfect", e.to_string()))?;
    let inner = 1u32 << m;
    if cycle.len() != inner as usize {
        return Err(broken(
            "outside_perfect",
            format!("cycle has {} vertices, Q_{m} has {inner}", cycle.len()),
        ));
    }
    let mut partner = vec![Vertex::MAX; g.order()];
    for (j, &x) in cycle.iter().enumerate() {
        let y = cycle[(j + 1) % cycle.len()];
        if (x ^ y).count_ones() != 1 {
            return Err(broken(
                "outside_perfect",
                format!("copies {x} and {y} are not adjacent"),
            ));
        }
        for u in 0..inner {
            let a = join(m, x, u);
            if label_parity(a) != Parity::Even {
                continue;
            }
            let b = join(m, y, u);
            if partner[a as usize] != Vertex::MAX || partner[b as usize] != Vertex::MAX {
                return Err(broken(
                    "outside_perfect",
                    format!("vertex {a} or {b} matched twice"),
                ));
            }
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
    }
    let o = PerfectMatching::from_partners(partner);
    validate_matching(&g, &o).map_err(|e| broken("outside_perfect", e.to_string()))?;
    Ok(o)
}

/// Lifts `M_k` into copies of `Q_m`: copy `start` uses `patch`, every other copy `base`.
fn lift(m: u32, base: &PerfectMatching, start: Vertex, patch: &PerfectMatching) -> PerfectMatching {
    let inner = 1u32 << m;
    let mut partner = Vec::with_capacity((inner as usize) * (inner as usize));
    for x in 0..inner {
        let src = if x == start { patch } else { base };
        partner.extend((0..inner).map(|u| join(m, x, src.partner(u))));
    }
    PerfectMatching::from_partners(partner)
}

/// `P_i`: `M_{i+1}` inside copy `start`, `M_i` inside every other copy
/// (`i` is 0-based, indices mod `m`).
pub fn build_patched_inside(
    dec: &MatchingDecomposition,
    i: usize,
    start: Vertex,
) -> Result<PerfectMatching, ConstructError> {
    let k = dec.matchings.len();
    if i >= k {
        return Err(broken(
            "patched_perfect",
            format!("matching index {i} out of range"),
        ));
    }
    let m = dec.dimension;
    let p = lift(m, &dec.matchings[i], start, &dec.matchings[(i + 1) % k]);
    let g = HypercubeGraph::new(2 * m).map_err(|e| broken("patched_perfect", e.to_string()))?;
    validate_matching(&g, &p).map_err(|e| broken("patched_perfect", e.to_string()))?;
    Ok(p)
}

/// Edges of `M` lifted into copy `copy` of `Q_{2m}`.
fn copy_edges(m: u32, matching: &PerfectMatching, copy: Vertex) -> Vec<(Vertex, Vertex)> {
    matching
        .edges()
        .into_iter()
        .map(|(u, v)| (join(m, copy, u), join(m, copy, v)))
        .collect()
}

/// Re-derives `outside ∪ patched` by splicing the cover `N_i ∪ outside` with
/// `merge_cycles` and compares it with the direct union.
fn check_patch_route(
    g: &HypercubeGraph,
    dec: &MatchingDecomposition,
    i: usize,
    outside: &PerfectMatching,
    patched: &PerfectMatching,
    label: &str,
) -> Result<(), ConstructError> {
    let m = dec.dimension;
    let k = dec.matchings.len();
    let (mi, mnext) = (&dec.matchings[i], &dec.matchings[(i + 1) % k]);
    let lifted = lift(m, mi, Vertex::MAX, mi);
    let cover = union_cycles(g, &lifted, outside)
        .map_err(|e| broken("unpatched_cover", format!("{label}: {e}")))?;
    if cover.total_length() != g.order() {
        return Err(broken(
            "unpatched_cover",
            format!("{label}: cover is not spanning"),
        ));
    }
    let merged = merge_cycles(
        g,
        &cover.cycles,
        &copy_edges(m, mi, 0),
        &copy_edges(m, mnext, 0),
    )
    .map_err(|e| broken("patch_merge", format!("{label}: {e}")))?;
    let direct = union_cycles(g, outside, patched)
        .map_err(|e| broken("consecutive_union_hamiltonian", format!("{label}: {e}")))?;
    if direct.cycles.len() != 1 || direct.cycles[0] != merged {
        return Err(broken(
            "patch_merge",
            format!("{label}: merged cycle differs from the direct union"),
        ));
    }
    Ok(())
}

/// One doubling step `Q_m → Q_{2m}`.
pub fn double(
    dec: &MatchingDecomposition,
    rot: &RotationSystem,
) -> Result<(MatchingDecomposition, RotationSystem), ConstructError> {
    let m = dec.dimension;
    if 2 * m > MAX_CONSTRUCT_DIMENSION {
        return Err(ConstructError::ResourceBound(2 * m));
    }
    verify_decomposition(dec)?;
    let k = dec.matchings.len();
    let family = oriented_faces(dec, rot)?;
    let g = HypercubeGraph::new(2 * m).expect("dimension within bound");

    let outside: Vec<PerfectMatching> = family
        .cycles
        .par_iter()
        .map(|c| build_outside(m, c))
        .collect::<Result<_, _>>()?;
    let patched: Vec<PerfectMatching> = (0..k)
        .into_par_iter()
        .map(|i| build_patched_inside(dec, i, 0))
        .collect::<Result<_, _>>()?;

    (0..k).into_par_iter().try_for_each(|i| {
        check_patch_route(
            &g,
            dec,
            i,
            &outside[i],
            &patched[i],
            &format!("O_{0} ∪ P_{0}", i + 1),
        )?;
        check_patch_route(
            &g,
            dec,
            i,
            &outside[(i + 1) % k],
            &patched[i],
            &format!("P_{} ∪ O_{}", i + 1, (i + 1) % k + 1),
        )
    })?;

    let matchings = outside
        .into_iter()
        .zip(patched)
        .flat_map(|(o, p)| [o, p])
        .collect();
    let next = MatchingDecomposition::new(2 * m, matchings);
    verify_decomposition(&next)?;
    let next_rot = rotation_from_decomposition(&next);
    let faces =
        trace_faces(&g, &next_rot).map_err(|e| broken("faces_match_unions", e.to_string()))?;
    check_faces_match_unions(&next, &faces)?;
    Ok((next, next_rot))
}

/// Decomposition and rotation system of `Q_n` for `n` a power of two, `2 ≤ n ≤ 16`.
pub fn construct(n: u32) -> Result<(MatchingDecomposition, RotationSystem), ConstructError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(ConstructError::NotPowerOfTwo(n));
    }
    if n > MAX_CONSTRUCT_DIMENSION {
        return Err(ConstructError::ResourceBound(n));
    }
    let (mut dec, mut rot) = base_case();
    verify_decomposition(&dec)?;
    while dec.dimension < n {
        (dec, rot) = double(&dec, &rot)?;
    }
    Ok((dec, rot))
}
