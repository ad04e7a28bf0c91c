//! Random instances for `merge_cycles`, with an oracle that does not share
//! code with the splice itself.
//!
//! Instances live in a complete graph so every vertex pair is available as an
//! edge. Each instance is a set of vertex-disjoint cycles, one marker edge on
//! each, and a patch matching that closes the markers into one alternating
//! cycle.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hamcube::matching::{Cycle, MergeError};
use hamcube::Vertex;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Edge = (Vertex, Vertex);

#[derive(Debug, Clone)]
pub struct Instance {
    pub vertex_count: usize,
    pub cover: Vec<Cycle>,
    pub marker: Vec<Edge>,
    pub patch: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    CycleWithoutMarker,
    MultipleMarkers,
    PatchOverlaps,
    PatchNotCycle,
}

pub const VIOLATIONS: [Violation; 4] = [
    Violation::CycleWithoutMarker,
    Violation::MultipleMarkers,
    Violation::PatchOverlaps,
    Violation::PatchNotCycle,
];

pub fn key(a: Vertex, b: Vertex) -> Edge {
    (a.min(b), a.max(b))
}

/// A valid instance with `2..=max_cycles` cycles of length `3..=max_len`.
pub fn valid_instance<R: Rng>(rng: &mut R, max_cycles: usize, max_len: usize) -> Instance {
    let k = rng.gen_range(2..=max_cycles.max(2));
    let lengths: Vec<usize> = (0..k).map(|_| rng.gen_range(3..=max_len.max(3))).collect();
    build(rng, &lengths)
}

fn build<R: Rng>(rng: &mut R, lengths: &[usize]) -> Instance {
    let n: usize = lengths.iter().sum();
    let mut labels: Vec<Vertex> = (0..n as Vertex).collect();
    labels.shuffle(rng);

    let mut cover = Vec::new();
    let mut marker = Vec::new();
    let mut rest = &labels[..];
    for &len in lengths {
        let (c, tail) = rest.split_at(len);
        rest = tail;
        // Marker on a random edge of the cycle, in a random direction.
        let i = rng.gen_range(0..len);
        let (a, b) = (c[i], c[(i + 1) % len]);
        marker.push(if rng.gen() { (a, b) } else { (b, a) });
        cover.push(Cycle(c.to_vec()));
    }

    // Visit the markers in random order; patch edges join the end of one
    // marker to the start of the next.
    let mut order: Vec<usize> = (0..marker.len()).collect();
    order.shuffle(rng);
    let oriented: Vec<Edge> = order
        .iter()
        .map(|&i| {
            let (a, b) = marker[i];
            if rng.gen() {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    let patch = (0..oriented.len())
        .map(|j| (oriented[j].1, oriented[(j + 1) % oriented.len()].0))
        .collect();

    Instance {
        vertex_count: n,
        cover,
        marker,
        patch,
    }
}

/// Edge set `(⋃ cover \ marker) ∪ patch`.
pub fn expected_edges(inst: &Instance) -> BTreeSet<Edge> {
    let mut edges = BTreeSet::new();
    for c in &inst.cover {
        let v = &c.0;
        for i in 0..v.len() {
            edges.insert(key(v[i], v[(i + 1) % v.len()]));
        }
    }
    for &(a, b) in &inst.marker {
        edges.remove(&key(a, b));
    }
    for &(a, b) in &inst.patch {
        edges.insert(key(a, b));
    }
    edges
}

/// True iff `edges` form one cycle through all `vertex_count` vertices.
pub fn is_hamiltonian_cycle(vertex_count: usize, edges: &BTreeSet<Edge>) -> bool {
    if edges.len() != vertex_count || vertex_count < 3 {
        return false;
    }
    let mut adj = vec![Vec::new(); vertex_count];
    for &(a, b) in edges {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    if adj.iter().any(|n| n.len() != 2) {
        return false;
    }
    // Degree two everywhere: one component means one cycle.
    let mut seen = vec![false; vertex_count];
    let mut stack = vec![0 as Vertex];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v as usize] {
            if !seen[u as usize] {
                seen[u as usize] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached == vertex_count
}

pub fn cycle_edges(c: &Cycle) -> BTreeSet<Edge> {
    let v = &c.0;
    (0..v.len())
        .map(|i| key(v[i], v[(i + 1) % v.len()]))
        .collect()
}

/// Breaks `inst` so that `merge_cycles` must reject it with `kind`.
pub fn violate<R: Rng>(
    rng: &mut R,
    kind: Violation,
    max_cycles: usize,
    max_len: usize,
) -> Instance {
    match kind {
        Violation::CycleWithoutMarker => {
            let mut inst = valid_instance(rng, max_cycles, max_len);
            let j = rng.gen_range(0..inst.marker.len());
            inst.marker.remove(j);
            inst
        }
        Violation::MultipleMarkers => {
            // Needs a cycle of length four or more for a second, disjoint marker.
            let mut inst = loop {
                let inst = valid_instance(rng, max_cycles, max_len.max(4));
                if inst.cover.iter().any(|c| c.0.len() >= 4) {
                    break inst;
                }
            };
            let candidates: Vec<usize> = (0..inst.cover.len())
                .filter(|&j| inst.cover[j].0.len() >= 4)
                .collect();
            let j = *candidates.choose(rng).unwrap();
            let c = &inst.cover[j].0;
            let (a, b) = inst.marker[j];
            let len = c.len();
            let extra = (0..len)
                .map(|i| (c[i], c[(i + 1) % len]))
                .find(|&(x, y)| x != a && x != b && y != a && y != b)
                .expect("a cycle of length four has an edge disjoint from any other edge");
            inst.marker.push(extra);
            inst
        }
        Violation::PatchOverlaps => {
            let mut inst = valid_instance(rng, max_cycles, max_len);
            let j = rng.gen_range(0..inst.cover.len());
            let extra = if rng.gen() {
                inst.marker[j]
            } else {
                let c = &inst.cover[j].0;
                let i = rng.gen_range(0..c.len());
                (c[i], c[(i + 1) % c.len()])
            };
            let at = rng.gen_range(0..=inst.patch.len());
            inst.patch.insert(at, extra);
            inst
        }
        Violation::PatchNotCycle => {
            if rng.gen() {
                let mut inst = valid_instance(rng, max_cycles, max_len);
                let j = rng.gen_range(0..inst.patch.len());
                inst.patch.remove(j);
                inst
            } else {
                // Four or more markers split into two alternating cycles.
                let k = rng.gen_range(4..=max_cycles.max(4));
                let lengths: Vec<usize> =
                    (0..k).map(|_| rng.gen_range(3..=max_len.max(3))).collect();
                let mut inst = build(rng, &lengths);
                let mut order: Vec<usize> = (0..k).collect();
                order.shuffle(rng);
                let split = rng.gen_range(2..=k - 2);
                let mut patch = Vec::new();
                for group in [&order[..split], &order[split..]] {
                    for i in 0..group.len() {
                        let (_, end) = inst.marker[group[i]];
                        let (start, _) = inst.marker[group[(i + 1) % group.len()]];
                        patch.push((end, start));
                    }
                }
                inst.patch = patch;
                inst
            }
        }
    }
}

pub fn matches(kind: Violation, err: &MergeError) -> bool {
    matches!(
        (kind, err),
        (
            Violation::CycleWithoutMarker,
            MergeError::CycleWithoutMarker(_)
        ) | (Violation::MultipleMarkers, MergeError::MultipleMarkers(_))
            | (Violation::PatchOverlaps, MergeError::PatchOverlaps(..))
            | (Violation::PatchNotCycle, MergeError::PatchNotCycle(_))
    )
}
