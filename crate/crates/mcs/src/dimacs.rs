//! DIMACS edge format: `p edge n m`, then `e u v` with 1-based endpoints.
//! Lines starting with `c` are comments.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use mcs_core::Graph;

use crate::error::{fail, number, read_to_string, write_string, LineError, Result};

/// Parses DIMACS text. The edge count in the problem line must match the
/// number of `e` lines; duplicate edges and self-loops are rejected.
pub fn parse(text: &str) -> Result<Graph, LineError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None | Some("c") => continue,
            Some("p") => {
                if header.is_some() {
                    return fail(line, "second problem line");
                }
                match tokens.next() {
                    Some("edge" | "col") => {}
                    Some(other) => return fail(line, format!("unsupported problem type `{other}`")),
                    None => return fail(line, "missing problem type"),
                }
                let n = number(tokens.next(), line, "vertex count")?;
                let m = number(tokens.next(), line, "edge count")?;
                header = Some((n, m, line));
            }
            Some("e") => {
                let Some((n, _, _)) = header else {
                    return fail(line, "edge before the problem line");
                };
                let u = number(tokens.next(), line, "endpoint")?;
                let v = number(tokens.next(), line, "endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return fail(line, format!("endpoint outside 1..={n}"));
                }
                if u == v {
                    return fail(line, format!("self-loop on {u}"));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return fail(line, format!("duplicate edge {u} {v}"));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => return fail(line, format!("unknown line type `{other}`")),
        }
        if tokens.next().is_some() {
            return fail(line, "trailing tokens");
        }
    }
    let Some((n, m, header_line)) = header else {
        return fail(text.lines().count().max(1), "no problem line");
    };
    if edges.len() != m {
        return fail(header_line, format!("problem line declares {m} edges, found {}", edges.len()));
    }
    Graph::new(n, &edges).or_else(|e| fail(header_line, e.to_string()))
}

/// Renders `g` with edges in ascending `(u, v)` order, `u < v`.
pub fn to_string(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.order(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

pub fn read(path: &Path) -> Result<Graph> {
    let text = read_to_string(path)?;
    parse(&text).map_err(|e| e.at(path))
}

pub fn write(path: &Path, g: &Graph, comments: &[&str]) -> Result<()> {
    write_string(path, &to_string(g, comments))
}
