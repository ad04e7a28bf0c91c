//! Bit-level hypercube graphs.
//!
//! A vertex of `Q_n` is an `n`-bit integer; bit `k` (least significant first) is
//! coordinate `k + 1`. Two vertices are adjacent iff their labels differ in
//! exactly one bit.
//!
//! For the doubling `Q_{2m} = Q_m □ Q_m` the high `m` bits of a label select the
//! copy of `Q_m` and the low `m` bits the vertex inside that copy. Edges that
//! flip a low bit stay inside a copy, edges that flip a high bit join two copies.

use std::fmt;

use crate::graph::{Graph, Vertex};

/// Largest dimension whose labels fit in a [`Vertex`].
pub const MAX_LABEL_DIMENSION: u32 = 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypercubeError {
    #[error("hypercube dimension must be between 1 and {MAX_LABEL_DIMENSION}, got {0}")]
    InvalidDimension(u32),
    #[error("label {label} is out of range for Q_{dimension}")]
    LabelOutOfRange { label: u64, dimension: u32 },
    #[error("copies {x} and {y} are not adjacent in Q_{dimension}")]
    NotAdjacent { x: u32, y: u32, dimension: u32 },
    #[error("counts of Q_{0} overflow 64-bit integers")]
    CountOverflow(u32),
    #[error("malformed binary label {0:?}")]
    MalformedLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_weight(weight: u32) -> Self {
        if weight.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// A hypercube vertex label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexLabel(pub u32);

impl VertexLabel {
    /// Population count.
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    pub fn parity(self) -> Parity {
        weight_parity(self)
    }

    /// Fixed-width binary rendering, most significant bit first.
    pub fn render(self, width: u32) -> String {
        render_label(self.0, width)
    }

    /// Parses a binary string whose leftmost character is the highest bit.
    pub fn parse(text: &str) -> Result<Self, HypercubeError> {
        parse_label(text).map(VertexLabel)
    }
}

impl From<u32> for VertexLabel {
    fn from(v: u32) -> Self {
        VertexLabel(v)
    }
}

pub fn weight_parity(v: VertexLabel) -> Parity {
    Parity::of_weight(v.weight())
}

/// Parity of a raw label.
#[inline]
pub fn label_parity(v: Vertex) -> Parity {
    Parity::of_weight(v.count_ones())
}

pub fn render_label(v: Vertex, width: u32) -> String {
    (0..width)
        .rev()
        .map(|k| if (v >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_label(text: &str) -> Result<Vertex, HypercubeError> {
    if text.is_empty() || text.len() > MAX_LABEL_DIMENSION as usize {
        return Err(HypercubeError::MalformedLabel(text.to_string()));
    }
    let mut v: Vertex = 0;
    for c in text.chars() {
        v = (v << 1)
            | match c {
                '0' => 0,
                '1' => 1,
                _ => return Err(HypercubeError::MalformedLabel(text.to_string())),
            };
    }
    Ok(v)
}

/// Canonical undirected hypercube edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    lo: VertexLabel,
    hi: VertexLabel,
}

impl EdgeRef {
    /// Returns `None` unless the labels differ in exactly one bit.
    pub fn new(a: VertexLabel, b: VertexLabel) -> Option<Self> {
        if (a.0 ^ b.0).count_ones() != 1 {
            return None;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Some(Self { lo, hi })
    }

    pub fn lo(self) -> VertexLabel {
        self.lo
    }

    pub fn hi(self) -> VertexLabel {
        self.hi
    }

    /// Index of the flipped bit.
    pub fn dimension(self) -> u32 {
        (self.lo.0 ^ self.hi.0).trailing_zeros()
    }

    pub fn key(self) -> (Vertex, Vertex) {
        (self.lo.0, self.hi.0)
    }
}

/// Position of a `Q_{2m}` vertex inside the product `Q_m □ Q_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CopyCoordinates {
    pub copy: VertexLabel,
    pub inner: VertexLabel,
}

pub fn split_label(m: u32, v: VertexLabel) -> Result<CopyCoordinates, HypercubeError> {
    check_dimension(2 * m)?;
    check_label(2 * m, v)?;
    let mask = (1u32 << m) - 1;
    Ok(CopyCoordinates {
        copy: VertexLabel(v.0 >> m),
        inner: VertexLabel(v.0 & mask),
    })
}

pub fn join_label(m: u32, coords: CopyCoordinates) -> VertexLabel {
    VertexLabel(join(m, coords.copy.0, coords.inner.0))
}

#[inline]
pub(crate) fn join(m: u32, copy: Vertex, inner: Vertex) -> Vertex {
    (copy << m) | inner
}

fn check_dimension(n: u32) -> Result<(), HypercubeError> {
    if n == 0 || n > MAX_LABEL_DIMENSION {
        Err(HypercubeError::InvalidDimension(n))
    } else {
        Ok(())
    }
}

fn check_label(n: u32, v: VertexLabel) -> Result<(), HypercubeError> {
    if (v.0 as u64) >> n != 0 {
        Err(HypercubeError::LabelOutOfRange {
            label: v.0 as u64,
            dimension: n,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphStats {
    pub vertex_count: u64,
    pub edge_count: u64,
    pub regularity: u32,
}

/// Vertex count, edge count and degree of `Q_n`, with overflow checking.
pub fn graph_stats(dimension: u32) -> Result<GraphStats, HypercubeError> {
    if dimension == 0 {
        return Err(HypercubeError::InvalidDimension(0));
    }
    let vertex_count = 1u64
        .checked_shl(dimension)
        .filter(|_| dimension < 64)
        .ok_or(HypercubeError::CountOverflow(dimension))?;
    let edge_count = (vertex_count / 2)
        .checked_mul(dimension as u64)
        .ok_or(HypercubeError::CountOverflow(dimension))?;
    Ok(GraphStats {
        vertex_count,
        edge_count,
        regularity: dimension,
    })
}

/// The hypercube `Q_n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HypercubeGraph {
    dimension: u32,
}

impl HypercubeGraph {
    pub fn new(dimension: u32) -> Result<Self, HypercubeError> {
        check_dimension(dimension)?;
        Ok(Self { dimension })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn order(&self) -> usize {
        1usize << self.dimension
    }

    pub fn stats(&self) -> GraphStats {
        graph_stats(self.dimension).expect("dimension validated at construction")
    }

    /// `v XOR 2^k` for `k = 0..n`, ascending in `k`.
    pub fn neighbors_of(&self, v: VertexLabel) -> Result<Vec<VertexLabel>, HypercubeError> {
        check_label(self.dimension, v)?;
        Ok((0..self.dimension)
            .map(|k| VertexLabel(v.0 ^ (1 << k)))
            .collect())
    }

    /// All edges, ordered by lower endpoint then by flipped bit.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        let n = self.dimension;
        (0..self.order() as Vertex).flat_map(move |v| {
            (0..n).filter_map(move |k| {
                let u = v ^ (1 << k);
                (v < u).then_some(EdgeRef {
                    lo: VertexLabel(v),
                    hi: VertexLabel(u),
                })
            })
        })
    }

    /// Vertices with the given parity, ascending.
    pub fn parity_class(&self, parity: Parity) -> impl Iterator<Item = VertexLabel> + '_ {
        (0..self.order() as Vertex)
            .filter(move |&v| label_parity(v) == parity)
            .map(VertexLabel)
    }
}

impl Graph for HypercubeGraph {
    fn vertex_count(&self) -> usize {
        self.order()
    }

    fn degree(&self, _v: Vertex) -> usize {
        self.dimension as usize
    }

    #[inline]
    fn neighbor(&self, v: Vertex, k: usize) -> Vertex {
        v ^ (1 << k)
    }

    #[inline]
    fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.order() && (v as usize) < self.order() && (u ^ v).count_ones() == 1
    }

    fn edge_count(&self) -> usize {
        self.order() / 2 * self.dimension as usize
    }
}

impl fmt::Debug for HypercubeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{}", self.dimension)
    }
}

/// Outside edges of `Q_{2m}` from copy `x` to copy `y` whose endpoint in copy
/// `x` has the requested parity.
///
/// Parity is that of the endpoint's full `Q_{2m}` label. Since the labels
/// `(x, u)` and `(y, u)` lie in opposite classes, the set for `(x, y, Even)`
/// equals the set for `(y, x, Odd)`, and the two parities split the
/// `2^m` outside edges between the copies evenly.
pub fn outside_edge_set(
    m: u32,
    x: VertexLabel,
    y: VertexLabel,
    parity: Parity,
) -> Result<Vec<EdgeRef>, HypercubeError> {
    check_dimension(2 * m)?;
    check_label(m, x)?;
    check_label(m, y)?;
    if (x.0 ^ y.0).count_ones() != 1 {
        return Err(HypercubeError::NotAdjacent {
            x: x.0,
            y: y.0,
            dimension: m,
        });
    }
    let mut edges: Vec<EdgeRef> = (0..1u32 << m)
        .filter(|&u| label_parity(join(m, x.0, u)) == parity)
        .map(|u| {
            EdgeRef::new(VertexLabel(join(m, x.0, u)), VertexLabel(join(m, y.0, u)))
                .expect("copies are adjacent")
        })
        .collect();
    edges.sort_unstable();
    Ok(edges)
}
