//! Perfect matchings, their unions, and patching of cycle covers into a single cycle.

use std::collections::{BTreeSet, HashMap};

use crate::graph::{edge_key, Graph, Vertex};

/// A perfect matching stored as a total partner map.
///
/// The invariants (involution, no fixed points, edges of the host graph) are
/// checked by [`validate_matching`], not on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PerfectMatching {
    partner: Vec<Vertex>,
}

impl PerfectMatching {
    pub fn from_partners(partner: Vec<Vertex>) -> Self {
        Self { partner }
    }

    /// Builds a partner map from an edge list. Returns `None` if a vertex is
    /// covered twice, left uncovered, or out of range.
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Option<Self> {
        let mut partner = vec![Vertex::MAX; vertex_count];
        for &(u, v) in edges {
            if u as usize >= vertex_count || v as usize >= vertex_count || u == v {
                return None;
            }
            if partner[u as usize] != Vertex::MAX || partner[v as usize] != Vertex::MAX {
                return None;
            }
            partner[u as usize] = v;
            partner[v as usize] = u;
        }
        partner
            .iter()
            .all(|&p| p != Vertex::MAX)
            .then_some(Self { partner })
    }

    /// The matching of `Q_n` that flips bit `k`.
    pub fn dimension_flip(n: u32, k: u32) -> Self {
        Self {
            partner: (0..1u32 << n).map(|v| v ^ (1 << k)).collect(),
        }
    }

    #[inline]
    pub fn partner(&self, v: Vertex) -> Vertex {
        self.partner[v as usize]
    }

    pub fn partners(&self) -> &[Vertex] {
        &self.partner
    }

    pub fn vertex_count(&self) -> usize {
        self.partner.len()
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(u, &v)| (u as Vertex) < v)
            .map(|(u, &v)| (u as Vertex, v))
            .collect()
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.partner.get(u as usize) == Some(&v)
    }

    /// True iff the two matchings share no edge.
    pub fn is_disjoint(&self, other: &PerfectMatching) -> bool {
        self.partner.len() == other.partner.len()
            && self.partner.iter().zip(&other.partner).all(|(a, b)| a != b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    WrongSize { expected: usize, found: usize },
    PartnerOutOfRange,
    FixedPoint,
    NotInvolution,
    NotAnEdge,
}

/// First vertex at which a matching fails to be perfect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("matching violation at vertex {vertex}: {kind:?}")]
pub struct MatchingViolation {
    pub vertex: Vertex,
    pub kind: ViolationKind,
}

pub fn validate_matching<G: Graph>(g: &G, m: &PerfectMatching) -> Result<(), MatchingViolation> {
    let n = g.vertex_count();
    if m.partner.len() != n {
        return Err(MatchingViolation {
            vertex: 0,
            kind: ViolationKind::WrongSize {
                expected: n,
                found: m.partner.len(),
            },
        });
    }
    for (v, &p) in m.partner.iter().enumerate() {
        let v = v as Vertex;
        let kind = if p as usize >= n {
            Some(ViolationKind::PartnerOutOfRange)
        } else if p == v {
            Some(ViolationKind::FixedPoint)
        } else if m.partner[p as usize] != v {
            Some(ViolationKind::NotInvolution)
        } else if !g.is_edge(v, p) {
            Some(ViolationKind::NotAnEdge)
        } else {
            None
        };
        if let Some(kind) = kind {
            return Err(MatchingViolation { vertex: v, kind });
        }
    }
    Ok(())
}

/// A simple cycle given by its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(pub Vec<Vertex>);

impl Cycle {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    /// Rotates so the smallest vertex comes first, then picks the direction
    /// whose second vertex is smaller.
    pub fn canonical(&self) -> Cycle {
        let seq = &self.0;
        if seq.len() < 3 {
            let mut v = seq.clone();
            if let Some(i) = v
                .iter()
                .enumerate()
                .min_by_key(|&(_, x)| *x)
                .map(|(i, _)| i)
            {
                v.rotate_left(i);
            }
            return Cycle(v);
        }
        let start = seq
            .iter()
            .enumerate()
            .min_by_key(|&(_, x)| *x)
            .map(|(i, _)| i)
            .unwrap();
        let len = seq.len();
        let fwd = seq[(start + 1) % len];
        let bwd = seq[(start + len - 1) % len];
        let out = if fwd <= bwd {
            (0..len).map(|k| seq[(start + k) % len]).collect()
        } else {
            (0..len).map(|k| seq[(start + len - k) % len]).collect()
        };
        Cycle(out)
    }

    /// Consecutive pairs, including the closing pair.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycleError {
    #[error("vertex {0} repeats in the cycle")]
    RepeatedVertex(Vertex),
    #[error("a cycle needs at least three vertices, got {0}")]
    TooShort(usize),
}

/// Canonical undirected edge set of a simple cycle.
pub fn cycle_edge_set(c: &Cycle) -> Result<BTreeSet<(Vertex, Vertex)>, CycleError> {
    if c.len() < 3 {
        return Err(CycleError::TooShort(c.len()));
    }
    let mut seen = BTreeSet::new();
    for &v in c.vertices() {
        if !seen.insert(v) {
            return Err(CycleError::RepeatedVertex(v));
        }
    }
    Ok(c.edges().map(|(a, b)| edge_key(a, b)).collect())
}

/// Vertex-disjoint cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCover {
    pub cycles: Vec<Cycle>,
}

impl CycleCover {
    pub fn total_length(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnionError {
    #[error("matchings share the edge {0}-{1}")]
    SharedEdge(Vertex, Vertex),
    #[error("matchings cover {0} and {1} vertices")]
    SizeMismatch(usize, usize),
}

/// Decomposes `A ∪ B` into its alternating cycles.
///
/// Cycles are reported in canonical form, ordered by their smallest vertex.
pub fn union_cycles<G: Graph>(
    g: &G,
    a: &PerfectMatching,
    b: &PerfectMatching,
) -> Result<CycleCover, UnionError> {
    let n = g.vertex_count();
    if a.vertex_count() != n || b.vertex_count() != n {
        return Err(UnionError::SizeMismatch(a.vertex_count(), b.vertex_count()));
    }
    for v in 0..n as Vertex {
        if a.partner(v) == b.partner(v) {
            return Err(UnionError::SharedEdge(v, a.partner(v)));
        }
    }
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n as Vertex {
        if visited[start as usize] {
            continue;
        }
        let mut seq = Vec::new();
        let mut v = start;
        let mut use_a = true;
        loop {
            visited[v as usize] = true;
            seq.push(v);
            v = if use_a { a.partner(v) } else { b.partner(v) };
            use_a = !use_a;
            if v == start {
                break;
            }
        }
        cycles.push(Cycle(seq).canonical());
    }
    Ok(CycleCover { cycles })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("cover cycle {cycle} is malformed: {reason}")]
    MalformedCover { cycle: usize, reason: String },
    #[error("{0}-{1} is not an edge of the host graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("marker edge {0}-{1} lies on no cycle of the cover")]
    MarkerOffCover(Vertex, Vertex),
    #[error("cover cycle {0} contains no marker edge")]
    CycleWithoutMarker(usize),
    #[error("cover cycle {0} contains more than one marker edge")]
    MultipleMarkers(usize),
    #[error("patch edge {0}-{1} overlaps the marker matching or the cover")]
    PatchOverlaps(Vertex, Vertex),
    #[error("markers and patch do not form a single cycle: {0}")]
    PatchNotCycle(String),
}

/// Splices the cycles of `cover` into one cycle.
///
/// Each cycle must carry exactly one edge of `marker`; `marker ∪ patch` must be
/// a single alternating cycle; `patch` must avoid `marker` and every cover
/// cycle. The result has edge set `(⋃ C_i \ marker) ∪ patch`, in canonical form.
pub fn merge_cycles<G: Graph>(
    g: &G,
    cover: &[Cycle],
    marker: &[(Vertex, Vertex)],
    patch: &[(Vertex, Vertex)],
) -> Result<Cycle, MergeError> {
    // Position of every covered vertex: (cycle index, index within cycle).
    let mut position: HashMap<Vertex, (usize, usize)> = HashMap::new();
    for (ci, c) in cover.iter().enumerate() {
        if c.len() < 3 {
            return Err(MergeError::MalformedCover {
                cycle: ci,
                reason: format!("length {}", c.len()),
            });
        }
        for (pi, &v) in c.vertices().iter().enumerate() {
            if position.insert(v, (ci, pi)).is_some() {
                return Err(MergeError::MalformedCover {
                    cycle: ci,
                    reason: format!("vertex {v} is covered twice"),
                });
            }
        }
        for (a, b) in c.edges() {
            if !g.is_edge(a, b) {
                return Err(MergeError::NotAnEdge(a, b));
            }
        }
    }
    let on_cover = |a: Vertex, b: Vertex| -> Option<usize> {
        let (&(ca, pa), &(cb, pb)) = (position.get(&a)?, position.get(&b)?);
        let len = cover[ca].len();
        (ca == cb && ((pa + 1) % len == pb || (pb + 1) % len == pa)).then_some(ca)
    };

    let mut marker_of = vec![None; cover.len()];
    for &(a, b) in marker {
        let ci = on_cover(a, b).ok_or(MergeError::MarkerOffCover(a, b))?;
        if marker_of[ci].is_some() {
            return Err(MergeError::MultipleMarkers(ci));
        }
        marker_of[ci] = Some((a, b));
    }
    if let Some(ci) = marker_of.iter().position(Option::is_none) {
        return Err(MergeError::CycleWithoutMarker(ci));
    }

    let marker_keys: BTreeSet<_> = marker.iter().map(|&(a, b)| edge_key(a, b)).collect();
    for &(a, b) in patch {
        if !g.is_edge(a, b) {
            return Err(MergeError::NotAnEdge(a, b));
        }
        if marker_keys.contains(&edge_key(a, b)) || on_cover(a, b).is_some() {
            return Err(MergeError::PatchOverlaps(a, b));
        }
    }

    // marker ∪ patch must be one alternating cycle through every marker vertex.
    let mut marker_partner: HashMap<Vertex, Vertex> = HashMap::new();
    for &(a, b) in marker {
        marker_partner.insert(a, b);
        marker_partner.insert(b, a);
    }
    let mut patch_partner: HashMap<Vertex, Vertex> = HashMap::new();
    for &(a, b) in patch {
        if a == b || patch_partner.insert(a, b).is_some() || patch_partner.insert(b, a).is_some() {
            return Err(MergeError::PatchNotCycle(format!(
                "patch is not a matching at {a}-{b}"
            )));
        }
    }
    if patch_partner.len() != marker_partner.len()
        || patch_partner
            .keys()
            .any(|v| !marker_partner.contains_key(v))
    {
        return Err(MergeError::PatchNotCycle(
            "patch does not cover exactly the marker vertices".into(),
        ));
    }

    // Walk marker ∪ patch: x_1 y_1 x_2 y_2 ..., with x_i y_i marker edges.
    let (x1, _) = marker[0];
    let mut order = Vec::with_capacity(marker.len());
    let mut x = x1;
    loop {
        let y = marker_partner[&x];
        order.push((x, y));
        x = patch_partner[&y];
        if x == x1 {
            break;
        }
        if order.len() > marker.len() {
            return Err(MergeError::PatchNotCycle("walk does not close".into()));
        }
    }
    if order.len() != marker.len() {
        return Err(MergeError::PatchNotCycle(format!(
            "markers split into more than one cycle ({} of {} edges reached)",
            order.len(),
            marker.len()
        )));
    }

    // Concatenate, for each marker x_i y_i, the path from x_i to y_i around its
    // cycle that avoids the marker edge.
    let mut out = Vec::with_capacity(position.len());
    for &(x, y) in &order {
        let (ci, px) = position[&x];
        let (_, py) = position[&y];
        let c = cover[ci].vertices();
        let len = c.len();
        // Step away from y.
        let forward = (px + 1) % len != py;
        for k in 0..len {
            let idx = if forward {
                (px + k) % len
            } else {
                (px + len - k) % len
            };
            out.push(c[idx]);
        }
    }
    Ok(Cycle(out).canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use crate::hypercube::HypercubeGraph;

    fn q(n: u32) -> HypercubeGraph {
        HypercubeGraph::new(n).unwrap()
    }

    #[test]
    fn validate_examples() {
        let q2 = q(2);
        assert!(validate_matching(&q2, &PerfectMatching::dimension_flip(2, 0)).is_ok());
        let id = PerfectMatching::from_partners(vec![0, 1, 2, 3]);
        assert_eq!(
            validate_matching(&q2, &id),
            Err(MatchingViolation {
                vertex: 0,
                kind: ViolationKind::FixedPoint
            })
        );
        let diag = PerfectMatching::from_partners(vec![3, 2, 1, 0]);
        assert_eq!(
            validate_matching(&q2, &diag),
            Err(MatchingViolation {
                vertex: 0,
                kind: ViolationKind::NotAnEdge
            })
        );
        let not_inv = PerfectMatching::from_partners(vec![1, 3, 0, 2]);
        assert_eq!(
            validate_matching(&q2, &not_inv).unwrap_err().kind,
            ViolationKind::NotInvolution
        );
    }

    #[test]
    fn union_q2_single_square() {
        let cover = union_cycles(
            &q(2),
            &PerfectMatching::dimension_flip(2, 0),
            &PerfectMatching::dimension_flip(2, 1),
        )
        .unwrap();
        assert_eq!(cover.cycles, vec![Cycle(vec![0b00, 0b01, 0b11, 0b10])]);
    }

    #[test]
    fn union_q4_four_squares() {
        let cover = union_cycles(
            &q(4),
            &PerfectMatching::dimension_flip(4, 0),
            &PerfectMatching::dimension_flip(4, 1),
        )
        .unwrap();
        assert_eq!(cover.cycles.len(), 4);
        for c in &cover.cycles {
            assert_eq!(c.len(), 4);
            let high = c.vertices()[0] >> 2;
            assert!(c.vertices().iter().all(|v| v >> 2 == high));
        }
    }

    #[test]
    fn union_rejects_shared_edge() {
        let m = PerfectMatching::dimension_flip(2, 0);
        assert_eq!(
            union_cycles(&q(2), &m, &m),
            Err(UnionError::SharedEdge(0, 1))
        );
    }

    #[test]
    fn cycle_edge_set_examples() {
        let c = Cycle(vec![0b00, 0b01, 0b11, 0b10]);
        let set = cycle_edge_set(&c).unwrap();
        let want: BTreeSet<_> = [(0, 1), (1, 3), (2, 3), (0, 2)].into_iter().collect();
        assert_eq!(set, want);
        assert_eq!(
            cycle_edge_set(&Cycle(vec![0, 1, 0, 2])),
            Err(CycleError::RepeatedVertex(0))
        );
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Cycle(vec![3, 2, 0, 1]).canonical(), Cycle(vec![0, 1, 3, 2]));
        assert_eq!(Cycle(vec![2, 0, 1, 3]).canonical(), Cycle(vec![0, 1, 3, 2]));
    }

    // a..h = 0..7
    fn two_squares() -> (SimpleGraph, Vec<Cycle>) {
        let (a, b, c, d, e, f, gg, h) = (0, 1, 2, 3, 4, 5, 6, 7);
        let edges = [
            (a, b),
            (b, c),
            (c, d),
            (d, a),
            (e, f),
            (f, gg),
            (gg, h),
            (h, e),
            (b, e),
            (f, a),
        ];
        let g = SimpleGraph::from_edges(8, &edges).unwrap();
        (g, vec![Cycle(vec![a, b, c, d]), Cycle(vec![e, f, gg, h])])
    }

    #[test]
    fn merge_two_squares() {
        let (g, cover) = two_squares();
        let merged = merge_cycles(&g, &cover, &[(0, 1), (4, 5)], &[(1, 4), (5, 0)]).unwrap();
        // a,d,c,b,e,h,g,f
        assert_eq!(merged, Cycle(vec![0, 3, 2, 1, 4, 7, 6, 5]).canonical());
        let edges = cycle_edge_set(&merged).unwrap();
        let want: BTreeSet<_> = [
            (0, 3),
            (2, 3),
            (1, 2),
            (1, 4),
            (4, 7),
            (6, 7),
            (5, 6),
            (0, 5),
        ]
        .into_iter()
        .collect();
        assert_eq!(edges, want);
    }

    #[test]
    fn merge_errors() {
        let (g, cover) = two_squares();
        assert_eq!(
            merge_cycles(&g, &cover, &[(0, 1)], &[(1, 4), (5, 0)]),
            Err(MergeError::CycleWithoutMarker(1))
        );
        assert_eq!(
            merge_cycles(&g, &cover, &[(0, 1), (2, 3), (4, 5)], &[(1, 4), (5, 0)]),
            Err(MergeError::MultipleMarkers(0))
        );
        assert!(matches!(
            merge_cycles(&g, &cover, &[(0, 1), (4, 5)], &[(1, 4)]),
            Err(MergeError::PatchNotCycle(_))
        ));
        assert_eq!(
            merge_cycles(&g, &cover, &[(0, 1), (4, 5)], &[(1, 2), (5, 0)]),
            Err(MergeError::PatchOverlaps(1, 2))
        );
        let one = [cover[0].clone()];
        assert!(matches!(
            merge_cycles(&g, &one, &[(0, 1)], &[(1, 4)]),
            Err(MergeError::PatchNotCycle(_))
        ));
        assert_eq!(
            merge_cycles(&g, &one, &[(0, 1)], &[(1, 0)]),
            Err(MergeError::PatchOverlaps(1, 0))
        );
    }
}
