//! Subcommand implementations. Each returns an [`Outcome`] so they can be
//! driven in-process as well as from `main`.

use std::fs;
use std::path::Path;

use hamcube::analysis::{
    self, conjecture_check, intersection_graph, intersection_profile, SearchError, SearchMode,
    DEFAULT_SEARCH_BUDGET,
};
use hamcube::embedding::verify_hamiltonian_embedding;
use hamcube::{ConstructError, Graph, HypercubeGraph, SimpleGraph};

use crate::format::{
    parse_adjacency, parse_decomposition, parse_rotation, serialize_decomposition,
    serialize_rotation, DecompositionFile, Family, FileGraph, RotationFile,
};
use crate::report::ReportDocument;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const BAD_PARAMETERS: u8 = 2;
    pub const IO: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const RESOURCE_BOUND: u8 = 5;
}

/// Default sample count for random search.
pub const DEFAULT_RANDOM_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn render(doc: &ReportDocument, json: bool) -> String {
    if json {
        doc.to_json()
    } else {
        doc.to_text()
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::fail(exit::IO, format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Outcome> {
    fs::write(path, contents)
        .map_err(|e| Outcome::fail(exit::IO, format!("cannot write {}: {e}", path.display())))
}

fn load_rotation(path: &Path) -> Result<RotationFile, Outcome> {
    let text = read(path)?;
    parse_rotation(&text)
        .map_err(|e| Outcome::fail(exit::PARSE, format!("{}: {e}", path.display())))
}

pub fn construct(n: u32, decomposition_path: &Path, rotation_path: &Path) -> Outcome {
    let (dec, rot) = match hamcube::construct(n) {
        Ok(x) => x,
        Err(e @ ConstructError::NotPowerOfTwo(_)) => {
            return Outcome::fail(
                exit::BAD_PARAMETERS,
                format!("{e}: n must be a power of two between 2 and 16"),
            )
        }
        Err(e @ ConstructError::ResourceBound(_)) => {
            return Outcome::fail(exit::RESOURCE_BOUND, e.to_string())
        }
        Err(e) => return Outcome::fail(exit::VERIFICATION_FAILED, e.to_string()),
    };
    let g = dec.graph();
    let faces = match hamcube::trace_faces(&g, &rot) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(exit::VERIFICATION_FAILED, e.to_string()),
    };
    let genus = match faces.genus() {
        Ok(g) => g,
        Err(e) => return Outcome::fail(exit::VERIFICATION_FAILED, e.to_string()),
    };
    let dec_text = serialize_decomposition(&DecompositionFile::from_decomposition(&dec));
    let rot_text = serialize_rotation(Family::Hypercube { dimension: n }, &rot);
    if let Err(o) =
        write(decomposition_path, &dec_text).and_then(|_| write(rotation_path, &rot_text))
    {
        return o;
    }
    Outcome::ok(format!("Q{n}: f={} genus={genus} OK\n", faces.face_count()))
}

fn verify_on<G: Graph>(
    g: &G,
    file: &RotationFile,
    dec: Option<&hamcube::MatchingDecomposition>,
    json: bool,
) -> Outcome {
    let report = match verify_hamiltonian_embedding(g, &file.rotation, dec) {
        Ok((r, _)) => r,
        Err(e) => {
            return Outcome::fail(
                exit::VERIFICATION_FAILED,
                format!("verification failed: {e}"),
            )
        }
    };
    let doc = ReportDocument {
        graph: Some(file.graph_name()),
        ..Default::default()
    }
    .with_embedding(&report, dec.is_some());
    let stdout = render(&doc, json);
    match &report.failed_clause {
        None => Outcome::ok(stdout),
        Some(clause) => Outcome {
            code: exit::VERIFICATION_FAILED,
            stdout,
            stderr: format!("verification failed: {clause}\n"),
        },
    }
}

pub fn verify(rotation_path: &Path, decomposition_path: Option<&Path>, json: bool) -> Outcome {
    let file = match load_rotation(rotation_path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let dec = match decomposition_path {
        None => None,
        Some(path) => {
            let text = match read(path) {
                Ok(t) => t,
                Err(o) => return o,
            };
            let parsed = match parse_decomposition(&text) {
                Ok(p) => p,
                Err(e) => return Outcome::fail(exit::PARSE, format!("{}: {e}", path.display())),
            };
            if file.family
                != (Family::Hypercube {
                    dimension: parsed.dimension,
                })
            {
                return Outcome::fail(
                    exit::VERIFICATION_FAILED,
                    "verification failed: dimension_mismatch",
                );
            }
            match parsed.to_decomposition() {
                Ok(d) => Some(d),
                Err(e) => {
                    return Outcome::fail(
                        exit::VERIFICATION_FAILED,
                        format!(
                            "verification failed: {}\n{e}",
                            e.clause().unwrap_or("decomposition")
                        ),
                    )
                }
            }
        }
    };
    match file.graph() {
        FileGraph::Hypercube(g) => verify_on(&g, &file, dec.as_ref(), json),
        FileGraph::Explicit(g) => verify_on(&g, &file, dec.as_ref(), json),
    }
}

fn analyze_on<G: Graph>(g: &G, file: &RotationFile, json: bool) -> Outcome {
    let (report, faces) = match verify_hamiltonian_embedding(g, &file.rotation, None) {
        Ok(x) => x,
        Err(e) => {
            return Outcome::fail(
                exit::VERIFICATION_FAILED,
                format!("verification failed: {e}"),
            )
        }
    };
    let profile = intersection_profile(g, &faces);
    let (graph, shape) = intersection_graph(&profile);
    let check = conjecture_check(&profile, &shape);
    let doc = ReportDocument {
        graph: Some(file.graph_name()),
        ..Default::default()
    }
    .with_embedding(&report, false)
    .with_intersections(&profile, &graph, &shape, &check);
    Outcome::ok(render(&doc, json))
}

pub fn analyze(rotation_path: &Path, json: bool) -> Outcome {
    let file = match load_rotation(rotation_path) {
        Ok(f) => f,
        Err(o) => return o,
    };
    match file.graph() {
        FileGraph::Hypercube(g) => analyze_on(&g, &file, json),
        FileGraph::Explicit(g) => analyze_on(&g, &file, json),
    }
}

pub fn necessary(order: u64, degree: u64, json: bool) -> Outcome {
    if order < 3 || degree == 0 || degree >= order {
        return Outcome::fail(
            exit::BAD_PARAMETERS,
            format!("need order >= 3 and 1 <= degree < order, got order={order} degree={degree}"),
        );
    }
    let r = analysis::necessary_conditions(order, degree);
    let doc = ReportDocument {
        graph: Some(format!("regular:{order}:{degree}")),
        ..Default::default()
    }
    .with_conditions(&r);
    Outcome::ok(render(&doc, json))
}

enum SearchGraph {
    Hypercube(HypercubeGraph),
    Explicit(SimpleGraph),
}

fn parse_graph_spec(spec: &str) -> Result<SearchGraph, Outcome> {
    let bad = |msg: String| Outcome::fail(exit::BAD_PARAMETERS, msg);
    if let Some(n) = spec.strip_prefix("hypercube:") {
        let n: u32 = n
            .parse()
            .map_err(|_| bad(format!("bad hypercube dimension {n:?}")))?;
        if n == 0 || n > crate::format::MAX_FILE_DIMENSION {
            return Err(bad(format!("hypercube dimension {n} is out of range")));
        }
        return Ok(SearchGraph::Hypercube(
            HypercubeGraph::new(n).expect("range checked"),
        ));
    }
    if let Some(n) = spec.strip_prefix("complete:") {
        let n: usize = n
            .parse()
            .map_err(|_| bad(format!("bad vertex count {n:?}")))?;
        if n < 3 {
            return Err(bad(format!(
                "complete graph needs at least 3 vertices, got {n}"
            )));
        }
        return Ok(SearchGraph::Explicit(SimpleGraph::complete(n)));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    parse_adjacency(&text)
        .map(SearchGraph::Explicit)
        .map_err(|e| Outcome::fail(exit::PARSE, format!("{}: {e}", path.display())))
}

fn search_on<G: Graph>(
    g: &G,
    name: &str,
    mode: SearchMode,
    budget: Option<u64>,
    seed: u64,
    json: bool,
) -> Outcome {
    let space = analysis::rotation_space_size(g);
    let (result, progress) = match mode {
        SearchMode::Exhaustive => {
            let budget = budget.map_or(DEFAULT_SEARCH_BUDGET, u128::from);
            let progress = format!("searching {space} rotation systems of {name}\n");
            (analysis::exhaustive_search(g, budget), progress)
        }
        SearchMode::Random => {
            let budget = budget.unwrap_or(DEFAULT_RANDOM_BUDGET);
            let progress =
                format!("sampling {budget} of {space} rotation systems of {name} (seed {seed})\n");
            (analysis::random_search(g, budget, seed), progress)
        }
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e @ SearchError::ResourceBound { .. }) => {
            return Outcome::fail(exit::RESOURCE_BOUND, e.to_string())
        }
        Err(e) => return Outcome::fail(exit::BAD_PARAMETERS, e.to_string()),
    };
    let doc = ReportDocument {
        graph: Some(name.to_string()),
        v: Some(g.vertex_count() as u64),
        e: Some(g.edge_count() as u64),
        ..Default::default()
    }
    .with_search(&outcome);
    Outcome {
        code: exit::OK,
        stdout: render(&doc, json),
        stderr: progress,
    }
}

pub fn search(spec: &str, mode: SearchMode, budget: Option<u64>, seed: u64, json: bool) -> Outcome {
    match parse_graph_spec(spec) {
        Ok(SearchGraph::Hypercube(g)) => search_on(&g, spec, mode, budget, seed, json),
        Ok(SearchGraph::Explicit(g)) => search_on(&g, spec, mode, budget, seed, json),
        Err(o) => o,
    }
}
