//! Graph file formats.
//!
//! Edge list: one `u v` pair per line, 0-indexed, `#` starts a comment.
//! A trailing vertex with no incident edge cannot be represented; use the
//! DIMACS format when the exact vertex count matters.
//!
//! DIMACS colouring format (`.col`): a `p edge n m` header followed by
//! `e u v` lines with 1-indexed endpoints; `c` lines are comments. Written
//! edges are sorted by `(u, v)`.

use super::{Graph, GraphError};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GraphFormat {
    EdgeList,
    DimacsCol,
}

pub fn read_graph(path: &Path, format: GraphFormat) -> Result<Graph, GraphError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let name = path.display().to_string();
    match format {
        GraphFormat::EdgeList => parse_edge_list(&name, &text),
        GraphFormat::DimacsCol => parse_dimacs(&name, &text),
    }
}

pub fn write_graph(g: &Graph, path: &Path, format: GraphFormat) -> Result<(), GraphError> {
    let text = match format {
        GraphFormat::EdgeList => render_edge_list(g),
        GraphFormat::DimacsCol => render_dimacs(g),
    };
    std::fs::write(path, text).map_err(|source| GraphError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn render_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub(crate) fn render_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub(crate) fn parse_edge_list(name: &str, text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut max_vertex = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_ascii_whitespace();
        let u = parse_vertex(name, idx + 1, it.next())?;
        let v = parse_vertex(name, idx + 1, it.next())?;
        if it.next().is_some() {
            return Err(parse_err(name, idx + 1, "expected exactly two endpoints"));
        }
        max_vertex = Some(max_vertex.unwrap_or(0).max(u).max(v));
        edges.push((u, v));
    }
    let n = max_vertex.map_or(0, |m| m + 1);
    Graph::build(n, &edges)
}

pub(crate) fn parse_dimacs(name: &str, text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            if n.is_some() {
                return Err(parse_err(name, lineno, "duplicate problem line"));
            }
            let mut it = rest.split_ascii_whitespace();
            if it.next() != Some("edge") {
                return Err(parse_err(name, lineno, "expected 'p edge n m'"));
            }
            let declared = parse_vertex(name, lineno, it.next())?;
            let _m = parse_vertex(name, lineno, it.next())?;
            n = Some(declared);
        } else if let Some(rest) = line.strip_prefix("e ") {
            let declared = n.ok_or_else(|| parse_err(name, lineno, "edge before problem line"))?;
            let mut it = rest.split_ascii_whitespace();
            let u = parse_vertex(name, lineno, it.next())?;
            let v = parse_vertex(name, lineno, it.next())?;
            if u == 0 || v == 0 || u > declared || v > declared {
                return Err(parse_err(
                    name,
                    lineno,
                    &format!("vertex out of range 1..={declared}"),
                ));
            }
            edges.push((u - 1, v - 1));
        } else {
            return Err(parse_err(name, lineno, "unrecognized line"));
        }
    }
    let n = n.ok_or_else(|| parse_err(name, text.lines().count(), "missing problem line"))?;
    Graph::build(n, &edges)
}

fn parse_vertex(name: &str, line: usize, token: Option<&str>) -> Result<usize, GraphError> {
    let token = token.ok_or_else(|| parse_err(name, line, "missing field"))?;
    token
        .parse()
        .map_err(|_| parse_err(name, line, &format!("invalid integer '{token}'")))
}

fn parse_err(name: &str, line: usize, reason: &str) -> GraphError {
    GraphError::Parse {
        path: name.to_string(),
        line,
        reason: reason.to_string(),
    }
}
