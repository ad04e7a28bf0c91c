//! Rotation systems and facial walks.
//!
//! A rotation system fixes a cyclic order `π_v` of the neighbors around every
//! vertex. Faces are the orbits of the dart successor rule: from dart `(u, v)`
//! the next dart is `(v, w)` where `w` follows `u` in `π_v`. Every rotation
//! system whose rotations are full cycles describes an embedding in an
//! orientable surface, whose genus follows from `v - e + f = 2 - 2g`.

use crate::construct::{self, MatchingDecomposition};
use crate::graph::{Graph, Vertex};
use crate::hypercube::{label_parity, Parity};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {vertex} is not a cyclic order of its neighbors")]
    InvalidRotation { vertex: Vertex },
    #[error("rotation system covers {found} vertices, graph has {expected}")]
    VertexCountMismatch { expected: usize, found: usize },
    #[error("Euler characteristic {0} is odd")]
    NonOrientableOrInvalid(i64),
    #[error("Euler characteristic {0} implies a negative genus")]
    Invalid(i64),
}

/// Per-vertex cyclic neighbor orders, stored flat.
///
/// Equality is up to cyclic rotation of each `π_v`, not reflection.
#[derive(Debug, Clone, Eq)]
pub struct RotationSystem {
    offsets: Vec<usize>,
    order: Vec<Vertex>,
}

impl RotationSystem {
    pub fn from_orders(orders: Vec<Vec<Vertex>>) -> Self {
        let mut offsets = Vec::with_capacity(orders.len() + 1);
        let mut order = Vec::with_capacity(orders.iter().map(Vec::len).sum());
        offsets.push(0);
        for o in orders {
            order.extend(o);
            offsets.push(order.len());
        }
        Self { offsets, order }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.order[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn dart_count(&self) -> usize {
        self.order.len()
    }

    /// Every `π_v` reversed.
    pub fn mirror(&self) -> Self {
        let mut order = self.order.clone();
        for w in self.offsets.windows(2) {
            order[w[0]..w[1]].reverse();
        }
        Self {
            offsets: self.offsets.clone(),
            order,
        }
    }

    /// Checks that every `π_v` lists each neighbor of `v` in `g` exactly once.
    pub fn validate<G: Graph>(&self, g: &G) -> Result<(), EmbeddingError> {
        if self.vertex_count() != g.vertex_count() {
            return Err(EmbeddingError::VertexCountMismatch {
                expected: g.vertex_count(),
                found: self.vertex_count(),
            });
        }
        let mut scratch = Vec::new();
        for v in 0..self.vertex_count() as Vertex {
            let rot = self.rotation(v);
            scratch.clear();
            scratch.extend_from_slice(rot);
            scratch.sort_unstable();
            let mut nbrs = g.neighbors(v);
            nbrs.sort_unstable();
            if scratch != nbrs {
                return Err(EmbeddingError::InvalidRotation { vertex: v });
            }
        }
        Ok(())
    }

    fn rotated_eq(a: &[Vertex], b: &[Vertex]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        match b.iter().position(|&x| x == a[0]) {
            Some(s) => (0..a.len()).all(|k| a[k] == b[(s + k) % b.len()]),
            None => false,
        }
    }
}

impl PartialEq for RotationSystem {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count() == other.vertex_count()
            && (0..self.vertex_count() as Vertex)
                .all(|v| Self::rotated_eq(self.rotation(v), other.rotation(v)))
    }
}

/// Directed closed walk bounding one face.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacialWalk(pub Vec<Vertex>);

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn darts(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let len = self.0.len();
        (0..len).map(move |i| (self.0[i], self.0[(i + 1) % len]))
    }

    /// The same walk rotated to start at the first occurrence of `v`.
    pub fn starting_at(&self, v: Vertex) -> Option<FacialWalk> {
        let i = self.0.iter().position(|&x| x == v)?;
        let mut seq = self.0.clone();
        seq.rotate_left(i);
        Some(FacialWalk(seq))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub walks: Vec<FacialWalk>,
    pub vertex_count: usize,
    pub edge_count: usize,
}

impl FaceSet {
    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count as i64 + self.walks.len() as i64
    }

    pub fn genus(&self) -> Result<u64, EmbeddingError> {
        euler_genus(
            self.vertex_count as u64,
            self.edge_count as u64,
            self.walks.len() as u64,
        )
    }

    /// Index of the face that traverses the dart `(u, v)`.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.walks
            .iter()
            .position(|w| w.darts().any(|d| d == (u, v)))
    }
}

/// `(2 - v + e - f) / 2`.
pub fn euler_genus(v: u64, e: u64, f: u64) -> Result<u64, EmbeddingError> {
    let chi = v as i64 - e as i64 + f as i64;
    if chi.rem_euclid(2) != 0 {
        return Err(EmbeddingError::NonOrientableOrInvalid(chi));
    }
    if chi > 2 {
        return Err(EmbeddingError::Invalid(chi));
    }
    Ok(((2 - chi) / 2) as u64)
}

/// Traces all faces. Faces are discovered from the lowest-numbered unused dart,
/// darts being numbered by source vertex and then position in the rotation.
pub fn trace_faces<G: Graph>(g: &G, rot: &RotationSystem) -> Result<FaceSet, EmbeddingError> {
    rot.validate(g)?;
    let darts = rot.dart_count();
    let offsets = &rot.offsets;
    let order = &rot.order;

    // reverse[d] = index of the opposite dart.
    let mut reverse = vec![0usize; darts];
    for v in 0..rot.vertex_count() {
        for d in offsets[v]..offsets[v + 1] {
            let w = order[d] as usize;
            let block = &order[offsets[w]..offsets[w + 1]];
            let pos = block.iter().position(|&x| x as usize == v).ok_or(
                EmbeddingError::InvalidRotation {
                    vertex: w as Vertex,
                },
            )?;
            reverse[d] = offsets[w] + pos;
        }
    }
    let mut source = vec![0 as Vertex; darts];
    for v in 0..rot.vertex_count() {
        for s in &mut source[offsets[v]..offsets[v + 1]] {
            *s = v as Vertex;
        }
    }

    let mut used = vec![false; darts];
    let mut walks = Vec::new();
    for start in 0..darts {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            used[d] = true;
            walk.push(source[d]);
            // d = (u -> w); continue with (w -> successor of u in π_w).
            let r = reverse[d];
            let w = order[d] as usize;
            let (lo, hi) = (offsets[w], offsets[w + 1]);
            d = if r + 1 == hi { lo } else { r + 1 };
            if d == start {
                break;
            }
        }
        walks.push(FacialWalk(walk));
    }
    Ok(FaceSet {
        walks,
        vertex_count: g.vertex_count(),
        edge_count: darts / 2,
    })
}

/// True iff the walk visits every vertex of `g` exactly once.
pub fn is_hamiltonian_face<G: Graph>(g: &G, w: &FacialWalk) -> bool {
    let n = g.vertex_count();
    if w.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in w.vertices() {
        match seen.get_mut(v as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// How matching partners are ordered around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RotationConvention {
    /// Ascending matching index at even vertices, descending at odd ones.
    #[default]
    ParityAlternating,
    /// Ascending matching index everywhere.
    Uniform,
}

/// Rotation system read off a matching decomposition with the parity-alternating
/// convention; faces then alternate between two cyclically consecutive matchings.
pub fn rotation_from_decomposition(dec: &MatchingDecomposition) -> RotationSystem {
    rotation_with_convention(dec, RotationConvention::ParityAlternating)
}

pub fn rotation_with_convention(
    dec: &MatchingDecomposition,
    convention: RotationConvention,
) -> RotationSystem {
    let order_count = 1usize << dec.dimension();
    let k = dec.matchings().len();
    let mut offsets = Vec::with_capacity(order_count + 1);
    let mut order = Vec::with_capacity(order_count * k);
    offsets.push(0);
    for v in 0..order_count as Vertex {
        let ascending =
            convention == RotationConvention::Uniform || label_parity(v) == Parity::Even;
        if ascending {
            order.extend(dec.matchings().iter().map(|m| m.partner(v)));
        } else {
            order.extend(dec.matchings().iter().rev().map(|m| m.partner(v)));
        }
        offsets.push(order.len());
    }
    RotationSystem { offsets, order }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceSummary {
    pub length: usize,
    pub hamiltonian: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    /// `None` when the Euler characteristic does not yield a genus.
    pub genus: Option<u64>,
    pub faces: Vec<FaceSummary>,
    pub is_hamiltonian_embedding: bool,
    /// First failed verification clause, if any.
    pub failed_clause: Option<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failed_clause.is_none()
    }
}

/// Traces the faces of `rot` and checks that each one is a Hamiltonian cycle.
/// When a decomposition is supplied, also checks it and that the faces are
/// exactly its consecutive unions.
pub fn verify_hamiltonian_embedding<G: Graph>(
    g: &G,
    rot: &RotationSystem,
    dec: Option<&MatchingDecomposition>,
) -> Result<(EmbeddingReport, FaceSet), EmbeddingError> {
    let faces = trace_faces(g, rot)?;
    let summaries: Vec<FaceSummary> = faces
        .walks
        .iter()
        .map(|w| FaceSummary {
            length: w.len(),
            hamiltonian: is_hamiltonian_face(g, w),
        })
        .collect();
    let is_ham = summaries.iter().all(|s| s.hamiltonian);
    let genus = faces.genus().ok();

    let mut failed = None;
    if !is_ham {
        failed = Some("faces_hamiltonian".to_string());
    } else if genus.is_none() {
        failed = Some("genus".to_string());
    } else if let Some(dec) = dec {
        if let Err(e) = construct::verify_decomposition(dec)
            .and_then(|_| construct::check_faces_match_unions(dec, &faces))
        {
            failed = e
                .clause()
                .map(str::to_string)
                .or_else(|| Some(e.to_string()));
        }
    }
    let report = EmbeddingReport {
        vertex_count: faces.vertex_count,
        edge_count: faces.edge_count,
        face_count: faces.face_count(),
        genus,
        faces: summaries,
        is_hamiltonian_embedding: is_ham,
        failed_clause: failed,
    };
    Ok((report, faces))
}
