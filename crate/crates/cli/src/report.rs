//! Report documents emitted by `verify`, `analyze`, `necessary` and `search`.
//!
//! Every key is always present; sections that do not apply to a command are
//! `null`. All numbers are exact integers.

use std::fmt::Write as _;

use serde::Serialize;

use hamcube::analysis::{
    ConjectureCheck, IntersectionProfile, NecessaryConditionReport, SearchOutcome, ShapeReport,
};
use hamcube::embedding::EmbeddingReport;

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct ReportDocument {
    pub graph: Option<String>,
    pub v: Option<u64>,
    pub e: Option<u64>,
    pub f: Option<u64>,
    pub genus: Option<u64>,
    pub faces: Option<Vec<FaceEntry>>,
    pub verification: Option<Verification>,
    pub intersections: Option<Vec<IntersectionEntry>>,
    pub intersection_graph_shape: Option<ShapeEntry>,
    pub conjectures: Option<ConjectureEntry>,
    pub conditions: Option<ConditionsEntry>,
    pub search: Option<SearchEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FaceEntry {
    pub length: u64,
    pub hamiltonian: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Verification {
    pub is_hamiltonian_embedding: bool,
    pub decomposition_checked: bool,
    pub passed: bool,
    pub failed_clause: Option<String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IntersectionEntry {
    pub i: u64,
    pub j: u64,
    pub size: u64,
    pub class: &'static str,
    pub shares_adjacent_edges: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ShapeEntry {
    pub kind: &'static str,
    pub common_weight: Option<u64>,
    pub edges: Vec<(u64, u64, u64)>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConjectureEntry {
    pub degenerate: bool,
    pub pairwise_matching_or_empty: bool,
    pub intersection_cycle_half_order: bool,
    pub no_adjacent_sharing: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ConditionsEntry {
    pub order: u64,
    pub degree: u64,
    pub congruence_holds: bool,
    pub clauses: [bool; 3],
    pub implied_face_count: u64,
    pub twice_implied_genus: Option<i64>,
    pub implied_genus: Option<i64>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SearchEntry {
    pub mode: &'static str,
    pub space_size: u128,
    pub candidates: u64,
    pub found: u64,
    pub hits: u64,
    pub max_hamiltonian_faces: u64,
    pub seed: Option<u64>,
}

impl ReportDocument {
    pub fn with_embedding(mut self, report: &EmbeddingReport, decomposition_checked: bool) -> Self {
        self.v = Some(report.vertex_count as u64);
        self.e = Some(report.edge_count as u64);
        self.f = Some(report.face_count as u64);
        self.genus = report.genus;
        self.faces = Some(
            report
                .faces
                .iter()
                .map(|f| FaceEntry {
                    length: f.length as u64,
                    hamiltonian: f.hamiltonian,
                })
                .collect(),
        );
        self.verification = Some(Verification {
            is_hamiltonian_embedding: report.is_hamiltonian_embedding,
            decomposition_checked,
            passed: report.passed(),
            failed_clause: report.failed_clause.clone(),
        });
        self
    }

    pub fn with_intersections(
        mut self,
        profile: &IntersectionProfile,
        graph: &hamcube::analysis::WeightedIntersectionGraph,
        shape: &ShapeReport,
        check: &ConjectureCheck,
    ) -> Self {
        self.intersections = Some(
            profile
                .pairs
                .iter()
                .map(|p| IntersectionEntry {
                    i: p.i as u64,
                    j: p.j as u64,
                    size: p.size,
                    class: p.class.as_str(),
                    shares_adjacent_edges: p.shares_adjacent_edges,
                })
                .collect(),
        );
        self.intersection_graph_shape = Some(ShapeEntry {
            kind: shape.kind.as_str(),
            common_weight: shape.common_weight,
            edges: graph
                .edges
                .iter()
                .map(|&(a, b, w)| (a as u64, b as u64, w))
                .collect(),
        });
        self.conjectures = Some(ConjectureEntry {
            degenerate: check.degenerate,
            pairwise_matching_or_empty: check.pairwise_matching_or_empty,
            intersection_cycle_half_order: check.intersection_cycle_half_order,
            no_adjacent_sharing: check.no_adjacent_sharing,
        });
        self
    }

    pub fn with_conditions(mut self, r: &NecessaryConditionReport) -> Self {
        self.conditions = Some(ConditionsEntry {
            order: r.order,
            degree: r.degree,
            congruence_holds: r.congruence_holds,
            clauses: r.clauses,
            implied_face_count: r.implied_face_count,
            twice_implied_genus: r.twice_implied_genus,
            implied_genus: r.implied_genus,
        });
        self
    }

    pub fn with_search(mut self, s: &SearchOutcome) -> Self {
        self.search = Some(SearchEntry {
            mode: s.mode.as_str(),
            space_size: s.space_size,
            candidates: s.candidates_examined,
            found: s.embeddings_found.len() as u64,
            hits: s.hits,
            max_hamiltonian_faces: s.max_hamiltonian_faces as u64,
            seed: s.seed,
        });
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Line-oriented rendering with the same content as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        if let Some(g) = &self.graph {
            writeln!(out, "graph: {g}").unwrap();
        }
        if self.v.is_some() {
            writeln!(
                out,
                "v={} e={} f={} genus={}",
                opt(self.v),
                opt(self.e),
                opt(self.f),
                opt(self.genus)
            )
            .unwrap();
        }
        if let Some(faces) = &self.faces {
            for (i, f) in faces.iter().enumerate() {
                writeln!(
                    out,
                    "face {i}: length={} hamiltonian={}",
                    f.length, f.hamiltonian
                )
                .unwrap();
            }
        }
        if let Some(v) = &self.verification {
            writeln!(
                out,
                "hamiltonian_embedding={} decomposition_checked={} passed={} failed_clause={}",
                v.is_hamiltonian_embedding,
                v.decomposition_checked,
                v.passed,
                v.failed_clause.as_deref().unwrap_or("-")
            )
            .unwrap();
        }
        if let Some(pairs) = &self.intersections {
            for p in pairs {
                writeln!(
                    out,
                    "intersection {} {}: size={} class={} shares_adjacent_edges={}",
                    p.i, p.j, p.size, p.class, p.shares_adjacent_edges
                )
                .unwrap();
            }
        }
        if let Some(s) = &self.intersection_graph_shape {
            writeln!(
                out,
                "intersection_graph_shape: {} common_weight={}",
                s.kind,
                opt(s.common_weight)
            )
            .unwrap();
        }
        if let Some(c) = &self.conjectures {
            writeln!(
                out,
                "degenerate={} pairwise_matching_or_empty={} intersection_cycle_half_order={} no_adjacent_sharing={}",
                c.degenerate, c.pairwise_matching_or_empty, c.intersection_cycle_half_order, c.no_adjacent_sharing
            )
            .unwrap();
        }
        if let Some(c) = &self.conditions {
            let genus = c
                .implied_genus
                .map_or_else(|| "-".to_string(), |g| g.to_string());
            writeln!(
                out,
                "order={} degree={} congruence={} clauses={}/{}/{} faces={} implied_genus={}",
                c.order,
                c.degree,
                if c.congruence_holds { "holds" } else { "fails" },
                c.clauses[0],
                c.clauses[1],
                c.clauses[2],
                c.implied_face_count,
                genus
            )
            .unwrap();
        }
        if let Some(s) = &self.search {
            writeln!(
                out,
                "mode={} space={} max_hamiltonian_faces={} seed={}",
                s.mode,
                s.space_size,
                s.max_hamiltonian_faces,
                opt(s.seed)
            )
            .unwrap();
            writeln!(out, "candidates={} found={}", s.candidates, s.found).unwrap();
        }
        out
    }
}
