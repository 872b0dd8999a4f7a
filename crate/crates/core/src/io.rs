//! Text and JSON formats. Vertices and graph edges are 1-based on the wire
//! and 0-based in memory; decomposition node ids are 0-based in both.
//!
//! Graph format:
//!
//! ```text
//! # optional comments
//! p tcw <n> <m>
//! e <u> <v>      (exactly m lines)
//! ```

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::certificates::{Bramble, OrientedSeparation, Slab, Tangle};
use crate::decomposition::{TreeCutDecomposition, Violation};
use crate::game::{GameConfig, RoundRecord, Transcript, Winner};
use crate::graph::{MultiGraph, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: expected header `p tcw <n> <m>`")]
    MissingHeader { line: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: loop at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} is outside 1..={n}")]
    BadEndpoint { line: usize, vertex: usize, n: usize },
    #[error("header announces {expected} edges, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("line {line}: a graph needs at least one vertex")]
    EmptyGraph { line: usize },
    #[error("json: {0}")]
    Json(String),
    #[error("invalid decomposition: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidDecomposition(Vec<Violation>),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

fn number(token: Option<&str>, line: usize, what: &str) -> Result<usize, IoError> {
    let token = token.ok_or_else(|| IoError::Syntax { line, message: format!("missing {what}") })?;
    token.parse().map_err(|_| IoError::Syntax { line, message: format!("{what} `{token}` is not a number") })
}

pub fn parse_graph(text: &str) -> Result<MultiGraph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match (tokens.next(), header) {
            (Some("p"), None) => {
                if tokens.next() != Some("tcw") {
                    return Err(IoError::MissingHeader { line });
                }
                let n = number(tokens.next(), line, "vertex count")?;
                let m = number(tokens.next(), line, "edge count")?;
                if n == 0 {
                    return Err(IoError::EmptyGraph { line });
                }
                header = Some((n, m));
            }
            (Some("p"), Some(_)) => return Err(IoError::Syntax { line, message: "second header".into() }),
            (_, None) => return Err(IoError::MissingHeader { line }),
            (Some("e"), Some((n, _))) => {
                let u = number(tokens.next(), line, "endpoint")?;
                let v = number(tokens.next(), line, "endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(IoError::BadEndpoint { line, vertex: w, n });
                    }
                }
                if u == v {
                    return Err(IoError::LoopEdge { line, vertex: u });
                }
                edges.push((u - 1, v - 1));
            }
            (Some(other), Some(_)) => {
                return Err(IoError::Syntax { line, message: format!("unknown line type `{other}`") })
            }
            (None, Some(_)) => unreachable!("blank lines are skipped"),
        }
        if tokens.next().is_some() {
            return Err(IoError::Syntax { line, message: "trailing tokens".into() });
        }
    }
    let (n, m) = header.ok_or(IoError::MissingHeader { line: last_line + 1 })?;
    if edges.len() != m {
        return Err(IoError::CountMismatch { expected: m, found: edges.len() });
    }
    Ok(MultiGraph::new(n, edges).expect("endpoints were checked"))
}

pub fn write_graph(g: &MultiGraph) -> String {
    let mut out = format!("p tcw {} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

fn to_wire(items: &[usize]) -> Vec<usize> {
    items.iter().map(|x| x + 1).collect()
}

fn from_wire(items: &[usize], what: &str) -> Result<Vec<usize>, IoError> {
    items
        .iter()
        .map(|&x| x.checked_sub(1).ok_or_else(|| IoError::Json(format!("{what} ids are 1-based, found 0"))))
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: usize,
    bag: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionDoc {
    nodes: Vec<NodeDoc>,
    edges: Vec<[usize; 2]>,
}

pub fn decomposition_to_json(d: &TreeCutDecomposition) -> String {
    let doc = DecompositionDoc {
        nodes: d.bags().iter().enumerate().map(|(id, bag)| NodeDoc { id, bag: to_wire(bag) }).collect(),
        edges: d.tree_edges().iter().map(|&(s, t)| [s, t]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serialises")
}

/// Parses a decomposition and checks it against `g`.
pub fn parse_decomposition(text: &str, g: &MultiGraph) -> Result<TreeCutDecomposition, IoError> {
    let doc: DecompositionDoc = serde_json::from_str(text)?;
    let mut bags = Vec::with_capacity(doc.nodes.len());
    for (i, node) in doc.nodes.iter().enumerate() {
        if node.id != i {
            return Err(IoError::Json(format!("node ids must be 0, 1, 2, ... in order; position {i} has id {}", node.id)));
        }
        bags.push(from_wire(&node.bag, "vertex")?);
    }
    let d = TreeCutDecomposition::new(bags, doc.edges.iter().map(|&[s, t]| (s, t)).collect());
    let violations = d.validate(g);
    if !violations.is_empty() {
        return Err(IoError::InvalidDecomposition(violations));
    }
    Ok(d)
}

/// A violation list as JSON with 1-based vertices.
pub fn violations_to_json(violations: &[Violation]) -> Value {
    Value::Array(
        violations
            .iter()
            .map(|v| match *v {
                Violation::EmptyTree => json!({"kind": "EmptyTree"}),
                Violation::TreeEdgeOutOfRange { index, node, nodes } => {
                    json!({"kind": "TreeEdgeOutOfRange", "edge": index, "node": node, "nodes": nodes})
                }
                Violation::SelfLoop { index, node } => json!({"kind": "SelfLoop", "edge": index, "node": node}),
                Violation::NotATree { nodes, edges } => json!({"kind": "NotATree", "nodes": nodes, "edges": edges}),
                Violation::VertexOutOfRange { node, vertex } => {
                    json!({"kind": "VertexOutOfRange", "node": node, "vertex": vertex + 1})
                }
                Violation::VertexInTwoBags { vertex, first, second } => {
                    json!({"kind": "VertexInTwoBags", "vertex": vertex + 1, "nodes": [first, second]})
                }
                Violation::VertexMissing(vertex) => json!({"kind": "VertexMissing", "vertex": vertex + 1}),
            })
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct SlabDoc {
    H_vertices: Vec<usize>,
    H_edges: Vec<usize>,
    core: Vec<usize>,
}

pub fn bramble_to_json(b: &Bramble) -> String {
    let doc: Vec<SlabDoc> = b
        .slabs
        .iter()
        .map(|s| SlabDoc { H_vertices: to_wire(&s.vertices), H_edges: to_wire(&s.edges), core: to_wire(&s.core) })
        .collect();
    serde_json::to_string_pretty(&doc).expect("plain data serialises")
}

/// Parses the structure only; use the bramble verifier for the rest.
pub fn parse_bramble(text: &str) -> Result<Bramble, IoError> {
    let doc: Vec<SlabDoc> = serde_json::from_str(text)?;
    let slabs = doc
        .iter()
        .map(|s| {
            Ok(Slab::new(
                from_wire(&s.H_vertices, "vertex")?,
                from_wire(&s.H_edges, "edge")?,
                from_wire(&s.core, "vertex")?,
            ))
        })
        .collect::<Result<_, IoError>>()?;
    Ok(Bramble { slabs })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct SideDoc {
    A: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TangleDoc {
    a: usize,
    b: usize,
    oriented: Vec<SideDoc>,
}

/// Each oriented separation `(A, B)` is written as its side `A`.
pub fn tangle_to_json(t: &Tangle) -> String {
    let doc = TangleDoc {
        a: t.a,
        b: t.b,
        oriented: t.oriented.iter().map(|s| SideDoc { A: to_wire(&s.from.to_vec()) }).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serialises")
}

/// Side `B` of each separation is the complement of `A` in `V(g)`.
pub fn parse_tangle(text: &str, g: &MultiGraph) -> Result<Tangle, IoError> {
    let doc: TangleDoc = serde_json::from_str(text)?;
    if g.vertex_count() > VertexSet::CAPACITY {
        return Err(IoError::Json(format!("tangles need at most {} vertices", VertexSet::CAPACITY)));
    }
    let all = g.all_vertices();
    let mut oriented = Vec::with_capacity(doc.oriented.len());
    for side in &doc.oriented {
        let from_list = from_wire(&side.A, "vertex")?;
        if let Some(&v) = from_list.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(IoError::Json(format!("vertex {} is not in the graph", v + 1)));
        }
        let from: VertexSet = from_list.into_iter().collect();
        oriented.push(OrientedSeparation { from, to: all.difference(from) });
    }
    Ok(Tangle { a: doc.a, b: doc.b, oriented })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
struct RoundDoc {
    round: usize,
    F: Vec<usize>,
    r: usize,
    capture_set_size: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TranscriptDoc {
    config: GameConfig,
    rounds: Vec<RoundDoc>,
    winner: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dogs: Option<Vec<usize>>,
}

pub fn transcript_to_json(t: &Transcript) -> String {
    let doc = TranscriptDoc {
        config: t.config,
        rounds: t
            .rounds
            .iter()
            .map(|r| RoundDoc { round: r.round, F: to_wire(&r.cops), r: r.robber + 1, capture_set_size: r.capture_set_size })
            .collect(),
        winner: match t.winner {
            Winner::Cops => "cops",
            Winner::Robber => "robber",
        }
        .into(),
        dogs: t.dogs.as_deref().map(to_wire),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serialises")
}

pub fn parse_transcript(text: &str) -> Result<Transcript, IoError> {
    let doc: TranscriptDoc = serde_json::from_str(text)?;
    let winner = match doc.winner.as_str() {
        "cops" => Winner::Cops,
        "robber" => Winner::Robber,
        other => return Err(IoError::Json(format!("unknown winner `{other}`"))),
    };
    let rounds = doc
        .rounds
        .iter()
        .map(|r| {
            Ok(RoundRecord {
                round: r.round,
                cops: from_wire(&r.F, "edge")?,
                robber: r.r.checked_sub(1).ok_or_else(|| IoError::Json("vertex ids are 1-based, found 0".into()))?,
                capture_set_size: r.capture_set_size,
            })
        })
        .collect::<Result<_, IoError>>()?;
    let dogs = doc.dogs.as_deref().map(|d| from_wire(d, "vertex")).transpose()?;
    Ok(Transcript { config: doc.config, rounds, winner, dogs })
}

/// 1-based copy of a vertex list, for output.
pub fn vertices_to_wire(vs: &[Vertex]) -> Vec<usize> {
    to_wire(vs)
}
