//! Minimal graph abstraction shared by the hypercube and by explicit small graphs.

use std::fmt;

/// Vertex index. Hypercube vertices use their label value directly.
pub type Vertex = u32;

/// Read-only access to a finite simple undirected graph on `0..vertex_count()`.
///
/// Neighbor order is part of the contract: `neighbor(v, k)` for `k in 0..degree(v)`
/// enumerates the neighbors of `v` in a fixed order, which the search and
/// rotation code rely on for reproducibility.
pub trait Graph {
    fn vertex_count(&self) -> usize;
    fn degree(&self, v: Vertex) -> usize;
    fn neighbor(&self, v: Vertex, k: usize) -> Vertex;
    fn is_edge(&self, u: Vertex, v: Vertex) -> bool;

    fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        (0..self.degree(v)).map(|k| self.neighbor(v, k)).collect()
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count() as Vertex)
            .map(|v| self.degree(v))
            .sum::<usize>()
            / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} has a self loop")]
    SelfLoop { vertex: Vertex },
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    DuplicateNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("neighbor {neighbor} of vertex {vertex} is out of range")]
    OutOfRange { vertex: Vertex, neighbor: Vertex },
    #[error("edge {vertex}-{neighbor} is not listed from {neighbor}")]
    Asymmetric { vertex: Vertex, neighbor: Vertex },
}

/// Explicit adjacency-list graph with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    /// Builds a graph from adjacency lists; lists are sorted, and symmetry and
    /// loop-freeness are checked.
    pub fn from_adjacency(mut adjacency: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = adjacency.len();
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::DuplicateNeighbor {
                        vertex: v as Vertex,
                        neighbor: w[0],
                    });
                }
            }
            for &u in list.iter() {
                if u as usize >= n {
                    return Err(GraphError::OutOfRange {
                        vertex: v as Vertex,
                        neighbor: u,
                    });
                }
                if u as usize == v {
                    return Err(GraphError::SelfLoop { vertex: u });
                }
            }
        }
        for (v, list) in adjacency.iter().enumerate() {
            for &u in list {
                if adjacency[u as usize].binary_search(&(v as Vertex)).is_err() {
                    return Err(GraphError::Asymmetric {
                        vertex: v as Vertex,
                        neighbor: u,
                    });
                }
            }
        }
        Ok(Self { adjacency })
    }

    /// Builds a graph from an undirected edge list.
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(GraphError::OutOfRange {
                    vertex: u,
                    neighbor: v,
                });
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n)
            .map(|v| (0..n as Vertex).filter(|&u| u as usize != v).collect())
            .collect();
        Self { adjacency }
    }

    /// Copies any graph into explicit form.
    pub fn from_graph<G: Graph>(g: &G) -> Self {
        let adjacency = (0..g.vertex_count() as Vertex)
            .map(|v| {
                let mut list = g.neighbors(v);
                list.sort_unstable();
                list
            })
            .collect();
        Self { adjacency }
    }

    pub fn adjacency(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }
}

impl Graph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    fn neighbor(&self, v: Vertex, k: usize) -> Vertex {
        self.adjacency[v as usize][k]
    }

    fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        (u as usize) < self.adjacency.len() && self.adjacency[u as usize].binary_search(&v).is_ok()
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimpleGraph(v={}, e={})",
            self.vertex_count(),
            self.edge_count()
        )
    }
}

/// Canonical undirected edge key, smaller endpoint first.
#[inline]
pub fn edge_key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
