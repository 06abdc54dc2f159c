//! Edge-list text and graph6 encodings.
//!
//! Edge list: one `u v` pair per line (0-based, whitespace separated),
//! blank lines ignored, `#` starts a comment line, and an optional
//! `n=<count>` header on the first non-comment line.

use std::fmt::Write as _;

use super::{Edge, Graph};
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_content {
            seen_content = true;
            if let Some(count) = line.strip_prefix("n=") {
                let count = count.trim().parse::<usize>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad vertex count: {e}"),
                })?;
                n = Some(count);
                continue;
            }
        }
        let mut fields = line.split_whitespace();
        let mut vertex = || -> Result<usize> {
            let f = fields.next().ok_or_else(|| Error::Parse {
                line: line_no,
                msg: "expected two vertex indices".into(),
            })?;
            f.parse::<usize>().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("bad vertex index {f:?}: {e}"),
            })
        };
        let (u, v) = (vertex()?, vertex()?);
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "trailing fields after edge".into(),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edge_list(&edges, n)
}

/// Writes the edge list in lexicographic order. The `n=` header is only
/// emitted when it carries information (trailing isolated vertices).
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let implied = g.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
    if implied != g.n() {
        writeln!(out, "n={}", g.n()).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// graph6 encoding (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes: Vec<u8> = Vec::new();
    if n < 63 {
        bytes.push(n as u8 + 63);
    } else if n < 258_048 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                bytes.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        bytes.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 is printable ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s).as_bytes();
    let bad = |msg: &str| Error::Graph6(msg.to_string());
    if s.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, body) = match s {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated 8-byte size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated 4-byte size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(Error::Graph6(format!(
            "expected {} data bytes for n={n}, found {}",
            pairs.div_ceil(6),
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (pairs..body.len() * 6).any(bit) {
        return Err(bad("nonzero padding bits"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(&edges, Some(n))
}
