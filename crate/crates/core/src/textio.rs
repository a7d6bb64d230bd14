//! Plain-text graph format.
//!
//! A graph file starts with a header line `p aim <n> <m>`, followed by `m`
//! edge lines `e <u> <v>` with 0-based vertex ids. Lines whose first token is
//! `c` are comments. The writer renumbers vertices to `0..n` in id order and
//! emits edges with `u < v`, sorted lexicographically, so writing a canonical
//! file back out reproduces it byte for byte.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId, VertexSet};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("missing `p aim <n> <m>` header")]
    MissingHeader,
    #[error("duplicate header on line {0}")]
    DuplicateHeader(usize),
    #[error("header declares {expected} edges but the file has {found} edge lines")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Parses a graph from the text format.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut tokens = raw.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        match first {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::DuplicateHeader(lineno));
                }
                let kind = tokens.next();
                if kind != Some("aim") {
                    return Err(ParseError::Malformed(
                        lineno,
                        "expected `p aim <n> <m>`".into(),
                    ));
                }
                let n = parse_num(tokens.next(), lineno)?;
                let m = parse_num(tokens.next(), lineno)? as usize;
                if tokens.next().is_some() {
                    return Err(ParseError::Malformed(lineno, "trailing tokens".into()));
                }
                header = Some((n, m));
            }
            "e" => {
                if header.is_none() {
                    return Err(ParseError::MissingHeader);
                }
                let u = parse_num(tokens.next(), lineno)?;
                let v = parse_num(tokens.next(), lineno)?;
                if tokens.next().is_some() {
                    return Err(ParseError::Malformed(lineno, "trailing tokens".into()));
                }
                edges.push((u, v));
            }
            other => {
                return Err(ParseError::Malformed(
                    lineno,
                    format!("unknown line type `{other}`"),
                ));
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::MissingHeader);
    };
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_num(tok: Option<&str>, lineno: usize) -> Result<u32, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::Malformed(lineno, "missing number".into()))?;
    tok.parse()
        .map_err(|_| ParseError::Malformed(lineno, format!("bad number `{tok}`")))
}

/// Writes a graph in canonical form: vertices renumbered to `0..n` in
/// ascending id order, edges sorted with `u < v`.
pub fn write_graph(g: &Graph) -> String {
    let rank: BTreeMap<VertexId, u32> = g
        .vertices()
        .enumerate()
        .map(|(i, v)| (v, i as u32))
        .collect();
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (ru, rv) = (rank[&u], rank[&v]);
            if ru < rv {
                (ru, rv)
            } else {
                (rv, ru)
            }
        })
        .collect();
    edges.sort_unstable();
    let mut out = format!("p aim {} {}\n", g.vertex_count(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

pub fn read_graph_file(path: &Path) -> Result<Graph, ParseError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph_file(g: &Graph, path: &Path) -> Result<(), ParseError> {
    Ok(std::fs::write(path, write_graph(g))?)
}

/// Parses a witness file: whitespace-separated vertex ids. Comment lines
/// starting with `c` and a leading `S:` token are accepted, so the solver's
/// witness output can be fed back in directly.
pub fn parse_vertex_set(text: &str) -> Result<VertexSet, ParseError> {
    let mut out = VertexSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut tokens = raw.split_whitespace().peekable();
        match tokens.peek() {
            Some(&"c") => continue,
            Some(&"S:") => {
                tokens.next();
            }
            _ => {}
        }
        for tok in tokens {
            out.insert(parse_num(Some(tok), lineno)?);
        }
    }
    Ok(out)
}
