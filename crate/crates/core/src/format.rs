//! Text formats: graph6, whitespace edge lists and `v L` assignment files.
//!
//! graph6 follows the published byte encoding: a size prefix `N(n)`
//! followed by the upper triangle of the adjacency matrix in column
//! order, packed six bits per byte with 63 added to each byte.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AssignedGraph, Graph, GraphError, VertexLabel};

const GRAPH6_HEADER: &str = ">>graph6<<";
const SMALL_LIMIT: usize = 62;
const MEDIUM_LIMIT: usize = 258_047;
const LARGE_LIMIT: usize = 68_719_476_735;
const VERTICES_DIRECTIVE: &str = "vertices:";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("graph6: {message} at byte {offset}")]
    Graph6 { offset: usize, message: String },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("assignment line {line}: {message}")]
    Assignment { line: usize, message: String },
    #[error("assignment line {line}: unknown vertex {vertex} (graph has {vertex_count} vertices)")]
    UnknownVertex {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("assignment line {line}: unknown label {label:?}")]
    UnknownLabel { line: usize, label: String },
    #[error("input is not valid UTF-8")]
    Utf8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edges" | "edge_list" | "edgelist" => Ok(GraphFormat::EdgeList),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

/// A parsed value plus any non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

pub fn parse_graph(input: &[u8], format: GraphFormat) -> Result<Parsed<Graph>, ParseError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(input).map(|value| Parsed {
            value,
            warnings: Vec::new(),
        }),
        GraphFormat::EdgeList => parse_edge_list(input),
    }
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and
/// surrounding whitespace/newlines are accepted.
pub fn parse_graph6(input: &[u8]) -> Result<Graph, ParseError> {
    let mut start = 0;
    if input.starts_with(GRAPH6_HEADER.as_bytes()) {
        start = GRAPH6_HEADER.len();
    }
    let mut end = input.len();
    while end > start && input[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    while start < end && input[start].is_ascii_whitespace() {
        start += 1;
    }
    let body = &input[start..end];
    let err = |offset: usize, message: &str| ParseError::Graph6 {
        offset: start + offset,
        message: message.to_string(),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte 0x{b:02x} outside 63..=126")));
        }
    }
    if body.is_empty() {
        return Err(err(0, "empty input"));
    }

    let (n, mut pos) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.len() >= 2 && body[1] == 126 {
        if body.len() < 8 {
            return Err(err(body.len(), "truncated 8-byte size prefix"));
        }
        (sixbit_value(&body[2..8]), 8)
    } else {
        if body.len() < 4 {
            return Err(err(body.len(), "truncated 4-byte size prefix"));
        }
        (sixbit_value(&body[1..4]), 4)
    };

    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let data = &body[pos..];
    if data.len() != needed {
        return Err(err(
            pos + data.len().min(needed),
            &format!(
                "expected {needed} adjacency bytes for {n} vertices, found {}",
                data.len()
            ),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[needed - 1] - 63;
        let pad_mask = (1u8 << (6 - bits % 6)) - 1;
        if last & pad_mask != 0 {
            pos += needed - 1;
            return Err(err(pos, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_edges(n, edges).expect("graph6 encodes a simple graph"))
}

fn sixbit_value(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

/// Encodes `g` as graph6 without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    assert!(n <= LARGE_LIMIT, "graph too large for graph6");
    let mut out: Vec<u8> = Vec::new();
    if n <= SMALL_LIMIT {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_LIMIT {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses `u v` lines. `#` starts a comment; a comment of the form
/// `# vertices: N` declares the vertex count (otherwise it is one more
/// than the largest endpoint seen). Repeated edges collapse with a
/// warning.
pub fn parse_edge_list(input: &[u8]) -> Result<Parsed<Graph>, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::Utf8)?;
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(rest) = c.trim().strip_prefix(VERTICES_DIRECTIVE) {
                let n = rest.trim().parse::<usize>().map_err(|_| ParseError::EdgeList {
                    line,
                    message: format!("bad vertex-count directive {:?}", rest.trim()),
                })?;
                declared = Some(n);
            }
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [a, b] => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| ParseError::EdgeList {
                        line,
                        message: format!("expected a vertex index, found {s:?}"),
                    })
                };
                let (u, v) = (parse(a)?, parse(b)?);
                if u == v {
                    return Err(ParseError::SelfLoop { line, vertex: u });
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    warnings.push(format!("line {line}: duplicate edge {u} {v} ignored"));
                    continue;
                }
                edges.push(key);
            }
            _ => {
                return Err(ParseError::EdgeList {
                    line,
                    message: format!("expected two fields, found {}", fields.len()),
                })
            }
        }
    }

    let inferred = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let n = match declared {
        Some(n) if n < inferred => {
            return Err(ParseError::EdgeList {
                line: 0,
                message: format!("declared {n} vertices but edges use vertex {}", inferred - 1),
            })
        }
        Some(n) => n,
        None => inferred,
    };
    let value = Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::SelfLoop(v) => ParseError::SelfLoop { line: 0, vertex: v },
        other => ParseError::EdgeList {
            line: 0,
            message: other.to_string(),
        },
    })?;
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Parsed { value, warnings })
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("# {VERTICES_DIRECTIVE} {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Parses `v L` lines (`L` in `I`, `F`, `U`). Unlisted vertices are `U`.
/// A later line for the same vertex overrides an earlier one.
pub fn parse_assignment(input: &[u8], g: &Graph) -> Result<Parsed<AssignedGraph>, ParseError> {
    let text = std::str::from_utf8(input).map_err(|_| ParseError::Utf8)?;
    let n = g.vertex_count();
    let mut labels = vec![VertexLabel::U; n];
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            [v, l] => {
                let vertex = v.parse::<usize>().map_err(|_| ParseError::Assignment {
                    line,
                    message: format!("expected a vertex index, found {v:?}"),
                })?;
                if vertex >= n {
                    return Err(ParseError::UnknownVertex {
                        line,
                        vertex,
                        vertex_count: n,
                    });
                }
                let mut chars = l.chars();
                let label = match (chars.next().and_then(VertexLabel::from_letter), chars.next()) {
                    (Some(label), None) => label,
                    _ => {
                        return Err(ParseError::UnknownLabel {
                            line,
                            label: l.to_string(),
                        })
                    }
                };
                labels[vertex] = label;
            }
            _ => {
                return Err(ParseError::Assignment {
                    line,
                    message: format!("expected two fields, found {}", fields.len()),
                })
            }
        }
    }

    let ag = AssignedGraph::new(g.clone(), labels).expect("label vector sized to graph");
    warnings.extend(close_i_pairs(&ag).into_iter().map(|(u, v)| {
        format!("I-labeled vertices {u} and {v} are within distance 2; a nonpositive-potential subgraph exists")
    }));
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(Parsed { value: ag, warnings })
}

/// Pairs of I-labeled vertices at distance 1 or 2.
pub fn close_i_pairs(ag: &AssignedGraph) -> Vec<(usize, usize)> {
    let g = ag.graph();
    let mut out = Vec::new();
    for u in g.vertices().filter(|&u| ag.label(u) == VertexLabel::I) {
        for w in g.second_neighborhood(u) {
            if w > u && ag.label(w) == VertexLabel::I {
                out.push((u, w));
            }
        }
    }
    out
}

/// Lists every non-`U` vertex as `v L`, one per line.
pub fn to_assignment(ag: &AssignedGraph) -> String {
    let mut s = String::new();
    for (v, &l) in ag.labels().iter().enumerate() {
        if l != VertexLabel::U {
            let _ = writeln!(s, "{v} {l}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn graph6_known_strings() {
        // K_4 is "C~", the 5-cycle 0-1-2-3-4 is "Dhc".
        assert_eq!(to_graph6(&named::complete(4)), "C~");
        assert_eq!(to_graph6(&named::cycle(5)), "Dhc");
        assert_eq!(parse_graph6(b"C~").unwrap(), named::complete(4));
        assert_eq!(parse_graph6(b"@").unwrap(), Graph::empty(1));
        assert_eq!(parse_graph6(b"?").unwrap(), Graph::empty(0));
    }

    #[test]
    fn graph6_sample_from_docs() {
        let g = parse_graph6(b"D?{\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(to_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_header_and_errors() {
        assert_eq!(parse_graph6(b">>graph6<<C~").unwrap(), named::complete(4));
        assert!(matches!(parse_graph6(b"C~~"), Err(ParseError::Graph6 { .. })));
        assert!(matches!(
            parse_graph6(b"C\x20"),
            Err(ParseError::Graph6 { offset: 1, .. })
        ));
        // 3 vertices use 3 bits; the low three bits must be zero.
        assert!(matches!(parse_graph6(b"BA"), Err(ParseError::Graph6 { .. })));
    }

    #[test]
    fn graph6_medium_size_prefix() {
        let g = named::path(100);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(s.as_bytes()).unwrap(), g);
    }

    #[test]
    fn edge_list_path_and_loop() {
        let p = parse_edge_list(b"0 1\n1 2").unwrap();
        assert_eq!(p.value, named::path(3));
        assert_eq!(
            parse_edge_list(b"0 0"),
            Err(ParseError::SelfLoop { line: 1, vertex: 0 })
        );
    }

    #[test]
    fn edge_list_comments_duplicates_crlf() {
        let p = parse_edge_list(b"# a triangle\r\n0 1\r\n1 2 # tail\r\n2 0\r\n1 0\r\n").unwrap();
        assert_eq!(p.value, named::complete(3));
        assert_eq!(p.warnings.len(), 1);
        let p = parse_edge_list(b"# vertices: 5\n0 1\n").unwrap();
        assert_eq!(p.value.vertex_count(), 5);
        assert!(matches!(
            parse_edge_list(b"0 1 2"),
            Err(ParseError::EdgeList { line: 1, .. })
        ));
    }

    #[test]
    fn assignment_defaults_and_errors() {
        let c4 = named::cycle(4);
        let ag = parse_assignment(b"", &c4).unwrap().value;
        assert!(ag.labels().iter().all(|&l| l == VertexLabel::U));

        let k2 = named::complete(2);
        let ag = parse_assignment(b"0 I\r\n1 F\r\n", &k2).unwrap().value;
        assert_eq!(ag.labels(), &[VertexLabel::I, VertexLabel::F]);

        let p3 = named::path(3);
        assert!(matches!(
            parse_assignment(b"5 I", &p3),
            Err(ParseError::UnknownVertex { vertex: 5, .. })
        ));
        assert!(matches!(
            parse_assignment(b"0 X", &p3),
            Err(ParseError::UnknownLabel { .. })
        ));
    }

    #[test]
    fn assignment_warns_on_close_i_vertices() {
        let p3 = named::path(3);
        let p = parse_assignment(b"0 I\n2 I\n", &p3).unwrap();
        assert_eq!(p.warnings.len(), 1);
        let p5 = named::path(5);
        assert!(parse_assignment(b"0 I\n3 I\n", &p5).unwrap().warnings.is_empty());
    }
}
