//! Orientable Hamiltonian embeddings of hypercube graphs.
//!
//! For `n` a power of two, [`construct::construct`] builds `n` pairwise disjoint
//! perfect matchings of `Q_n` whose cyclically consecutive unions are
//! Hamiltonian cycles, together with the rotation system whose faces are
//! exactly those cycles. Every step is verified as it is built.
//!
//! The remaining modules provide the supporting machinery: bit-level hypercube
//! structure ([`hypercube`]), matchings and cycle splicing ([`matching`]),
//! rotation systems and face tracing ([`embedding`]), and necessary conditions,
//! intersection structure and brute-force search ([`analysis`]).

pub mod analysis;
pub mod construct;
pub mod embedding;
pub mod graph;
pub mod hypercube;
pub mod matching;

pub use construct::{construct, ConstructError, MatchingDecomposition};
pub use embedding::{trace_faces, FaceSet, FacialWalk, RotationSystem};
pub use graph::{Graph, SimpleGraph, Vertex};
pub use hypercube::{HypercubeGraph, Parity, VertexLabel};
pub use matching::{Cycle, PerfectMatching};
