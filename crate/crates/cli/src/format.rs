//! Text file formats.
//!
//! Rotation file:
//!
//! ```text
//! rotation 2 hypercube
//! 00 : 01 10
//! 01 : 11 00
//! 10 : 00 11
//! 11 : 10 01
//! ```
//!
//! The header carries the cube dimension and `hypercube` (labels are fixed-width
//! binary, most significant bit first) or the vertex count and `graph` (labels
//! are decimal). Each vertex line lists the full cyclic neighbor order.
//!
//! Decomposition file:
//!
//! ```text
//! decomposition 2 2
//! matching 1
//! 00 01
//! 10 11
//! matching 2
//! 00 10
//! 01 11
//! ```
//!
//! Adjacency file (explicit graphs for `search`): `adjacency <count>` followed by
//! `<v> : <neighbors>` lines with decimal labels.

use std::fmt::Write as _;

use hamcube::graph::{GraphError, SimpleGraph};
use hamcube::hypercube::{parse_label, render_label};
use hamcube::{Graph, HypercubeGraph, MatchingDecomposition, RotationSystem, Vertex};

/// Largest hypercube dimension accepted in files.
pub const MAX_FILE_DIMENSION: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Hypercube { dimension: u32 },
    Graph { vertex_count: usize },
}

impl Family {
    pub fn vertex_count(self) -> usize {
        match self {
            Family::Hypercube { dimension } => 1usize << dimension,
            Family::Graph { vertex_count } => vertex_count,
        }
    }

    fn render(self, v: Vertex) -> String {
        match self {
            Family::Hypercube { dimension } => render_label(v, dimension),
            Family::Graph { .. } => v.to_string(),
        }
    }

    fn parse_vertex(self, token: &str, line: usize) -> Result<Vertex, ParseError> {
        let v = match self {
            Family::Hypercube { dimension } => {
                if token.len() != dimension as usize {
                    return Err(err(
                        line,
                        format!("label {token:?} is not {dimension} bits wide"),
                    ));
                }
                parse_label(token).map_err(|e| err(line, e.to_string()))?
            }
            Family::Graph { .. } => token
                .parse::<Vertex>()
                .map_err(|_| err(line, format!("bad vertex {token:?}")))?,
        };
        if v as usize >= self.vertex_count() {
            return Err(err(line, format!("vertex {token} out of range")));
        }
        Ok(v)
    }
}

/// A parsed rotation file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationFile {
    pub family: Family,
    pub rotation: RotationSystem,
}

/// The graph a rotation file lives on.
pub enum FileGraph {
    Hypercube(HypercubeGraph),
    Explicit(SimpleGraph),
}

impl RotationFile {
    pub fn graph(&self) -> FileGraph {
        match self.family {
            Family::Hypercube { dimension } => {
                FileGraph::Hypercube(HypercubeGraph::new(dimension).expect("validated on parse"))
            }
            Family::Graph { vertex_count } => {
                let adjacency = (0..vertex_count as Vertex)
                    .map(|v| self.rotation.rotation(v).to_vec())
                    .collect();
                FileGraph::Explicit(
                    SimpleGraph::from_adjacency(adjacency).expect("validated on parse"),
                )
            }
        }
    }

    pub fn graph_name(&self) -> String {
        match self.family {
            Family::Hypercube { dimension } => format!("hypercube:{dimension}"),
            Family::Graph { vertex_count } => format!("graph:{vertex_count}"),
        }
    }
}

pub fn serialize_rotation(family: Family, rot: &RotationSystem) -> String {
    let mut out = String::new();
    match family {
        Family::Hypercube { dimension } => writeln!(out, "rotation {dimension} hypercube"),
        Family::Graph { vertex_count } => writeln!(out, "rotation {vertex_count} graph"),
    }
    .unwrap();
    for v in 0..rot.vertex_count() as Vertex {
        out.push_str(&family.render(v));
        out.push_str(" :");
        for &w in rot.rotation(v) {
            out.push(' ');
            out.push_str(&family.render(w));
        }
        out.push('\n');
    }
    out
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l))
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    fields: usize,
) -> Result<Vec<&'a str>, ParseError> {
    let (no, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != fields + 1 || tokens[0] != keyword {
        return Err(err(no, format!("expected `{keyword}` header")));
    }
    Ok(tokens[1..].to_vec())
}

fn parse_count<T: std::str::FromStr>(token: &str, line: usize) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| err(line, format!("bad number {token:?}")))
}

/// Parses `<v> : <n1> <n2> ...` vertex lines into per-vertex lists.
fn parse_vertex_lines<'a>(
    family: Family,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<(Vec<Vec<Vertex>>, Vec<usize>), ParseError> {
    let n = family.vertex_count();
    let mut orders: Vec<Option<Vec<Vertex>>> = vec![None; n];
    let mut line_of = vec![0usize; n];
    let mut last_line = 1;
    for (no, line) in lines {
        last_line = no;
        let (head, tail) = line
            .split_once(':')
            .ok_or_else(|| err(no, "expected `<vertex> : <neighbors>`"))?;
        let v = family.parse_vertex(head.trim(), no)?;
        if orders[v as usize].is_some() {
            return Err(err(no, format!("vertex {} listed twice", head.trim())));
        }
        let nbrs = tail
            .split_whitespace()
            .map(|t| family.parse_vertex(t, no))
            .collect::<Result<Vec<_>, _>>()?;
        if let Family::Hypercube { dimension } = family {
            if nbrs.len() != dimension as usize {
                return Err(err(
                    no,
                    format!("expected {dimension} neighbors, found {}", nbrs.len()),
                ));
            }
            let mut sorted = nbrs.clone();
            sorted.sort_unstable();
            let mut want: Vec<Vertex> = (0..dimension).map(|k| v ^ (1 << k)).collect();
            want.sort_unstable();
            if sorted != want {
                return Err(err(
                    no,
                    "neighbor list is not a cyclic order of the hypercube neighbors",
                ));
            }
        }
        orders[v as usize] = Some(nbrs);
        line_of[v as usize] = no;
    }
    let orders = orders
        .into_iter()
        .enumerate()
        .map(|(v, o)| {
            o.ok_or_else(|| {
                err(
                    last_line,
                    format!("vertex {} is missing", family.render(v as Vertex)),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((orders, line_of))
}

fn check_explicit(orders: &[Vec<Vertex>], line_of: &[usize]) -> Result<(), ParseError> {
    SimpleGraph::from_adjacency(orders.to_vec())
        .map(|_| ())
        .map_err(|e| {
            let v = match e {
                GraphError::SelfLoop { vertex }
                | GraphError::DuplicateNeighbor { vertex, .. }
                | GraphError::OutOfRange { vertex, .. }
                | GraphError::Asymmetric { vertex, .. } => vertex,
            };
            err(line_of.get(v as usize).copied().unwrap_or(1), e.to_string())
        })
}

pub fn parse_rotation(text: &str) -> Result<RotationFile, ParseError> {
    let mut lines = numbered_lines(text);
    let header = parse_header(&mut lines, "rotation", 2)?;
    let size: usize = parse_count(header[0], 1)?;
    let family = match header[1] {
        "hypercube" => {
            if size == 0 || size > MAX_FILE_DIMENSION as usize {
                return Err(err(1, format!("unsupported hypercube dimension {size}")));
            }
            Family::Hypercube {
                dimension: size as u32,
            }
        }
        "graph" => Family::Graph { vertex_count: size },
        other => return Err(err(1, format!("unknown family {other:?}"))),
    };
    let (orders, line_of) = parse_vertex_lines(family, lines)?;
    if let Family::Graph { .. } = family {
        check_explicit(&orders, &line_of)?;
    }
    Ok(RotationFile {
        family,
        rotation: RotationSystem::from_orders(orders),
    })
}

pub fn parse_adjacency(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = numbered_lines(text);
    let header = parse_header(&mut lines, "adjacency", 1)?;
    let vertex_count: usize = parse_count(header[0], 1)?;
    let (orders, line_of) = parse_vertex_lines(Family::Graph { vertex_count }, lines)?;
    check_explicit(&orders, &line_of)?;
    Ok(SimpleGraph::from_adjacency(orders).expect("checked above"))
}

pub fn serialize_adjacency(g: &SimpleGraph) -> String {
    let mut out = format!("adjacency {}\n", g.vertex_count());
    for v in 0..g.vertex_count() as Vertex {
        write!(out, "{v} :").unwrap();
        for w in g.adjacency(v) {
            write!(out, " {w}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Matchings as explicit edge lists, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFile {
    pub dimension: u32,
    pub matchings: Vec<Vec<(Vertex, Vertex)>>,
}

impl DecompositionFile {
    pub fn from_decomposition(dec: &MatchingDecomposition) -> Self {
        Self {
            dimension: dec.dimension(),
            matchings: dec.matchings().iter().map(|m| m.edges()).collect(),
        }
    }

    /// Checks the blocks and converts them to partner maps.
    pub fn to_decomposition(&self) -> Result<MatchingDecomposition, hamcube::ConstructError> {
        MatchingDecomposition::from_edge_lists(self.dimension, &self.matchings)
    }
}

pub fn serialize_decomposition(file: &DecompositionFile) -> String {
    let d = file.dimension;
    let mut out = format!("decomposition {d} {}\n", file.matchings.len());
    for (i, block) in file.matchings.iter().enumerate() {
        writeln!(out, "matching {}", i + 1).unwrap();
        for &(u, v) in block {
            out.push_str(&render_label(u, d));
            out.push(' ');
            out.push_str(&render_label(v, d));
            out.push('\n');
        }
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<DecompositionFile, ParseError> {
    let mut lines = numbered_lines(text);
    let header = parse_header(&mut lines, "decomposition", 2)?;
    let dimension: u32 = parse_count(header[0], 1)?;
    let count: usize = parse_count(header[1], 1)?;
    if dimension == 0 || dimension > MAX_FILE_DIMENSION {
        return Err(err(1, format!("unsupported dimension {dimension}")));
    }
    let family = Family::Hypercube { dimension };
    let mut matchings: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    let mut last = 1;
    for (no, line) in lines {
        last = no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["matching", idx] => {
                let idx: usize = parse_count(idx, no)?;
                if idx != matchings.len() + 1 {
                    return Err(err(
                        no,
                        format!("expected matching {}", matchings.len() + 1),
                    ));
                }
                matchings.push(Vec::new());
            }
            [a, b] => {
                let block = matchings
                    .last_mut()
                    .ok_or_else(|| err(no, "edge before the first `matching` line"))?;
                block.push((family.parse_vertex(a, no)?, family.parse_vertex(b, no)?));
            }
            _ => return Err(err(no, "expected `matching <i>` or `<u> <v>`")),
        }
    }
    if matchings.len() != count {
        return Err(err(
            last,
            format!(
                "header promises {count} matchings, found {}",
                matchings.len()
            ),
        ));
    }
    Ok(DecompositionFile {
        dimension,
        matchings,
    })
}
