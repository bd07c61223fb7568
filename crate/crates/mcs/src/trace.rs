//! Sidecar file for a kernel dump, enough to lift a kernel solution offline.
//!
//! All ids are 1-based like the DIMACS kernel next to it. Header lines:
//!
//! ```text
//! ORDER n          order of the reduced graph
//! EXACT k          kernel order when the exact rules stopped
//! MAP k id         kernel vertex k is reduction id `id`
//! ```
//!
//! followed by the decisions in the order they were made:
//!
//! ```text
//! INC v
//! EXC v
//! PUSH v           v's neighbours are its predecessor and successor in the
//!                  latest PATH line, read as v0 p1 .. pl w
//! FOLD x v u w     x stands for {u, w}; otherwise v
//! TWIN x u v a b c x stands for {a, b, c}; otherwise {u, v}
//! PATH case v0 w p1 .. pl   (`PATH cycle p1 .. pl` for a cycle)
//! ```

use std::fmt::Write as _;
use std::path::Path;

use mcs_core::kernel::{KernelResult, PathCase, ReductionTrace, TraceEntry};
use mcs_core::Graph;

use crate::error::{fail, number, read_to_string, write_string, LineError, Result};

/// Everything in a trace file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceFile {
    pub trace: ReductionTrace,
    pub name_map: Vec<usize>,
    pub exact_kernel_order: usize,
}

impl TraceFile {
    pub fn of(result: &KernelResult) -> Self {
        Self {
            trace: result.trace.clone(),
            name_map: result.name_map.clone(),
            exact_kernel_order: result.exact_kernel_order,
        }
    }

    /// Pairs the trace with its kernel graph again.
    pub fn into_kernel_result(self, kernel: Graph) -> Result<KernelResult> {
        if kernel.order() != self.name_map.len() {
            return Err(crate::CliError::Param(format!(
                "kernel has {} vertices but the trace maps {}",
                kernel.order(),
                self.name_map.len()
            )));
        }
        let forced_count = self.trace.replay(&[])?.len();
        Ok(KernelResult {
            kernel,
            trace: self.trace,
            name_map: self.name_map,
            forced_count,
            exact_kernel_order: self.exact_kernel_order,
        })
    }
}

fn ids(out: &mut String, vs: impl IntoIterator<Item = usize>) {
    for v in vs {
        let _ = write!(out, " {}", v + 1);
    }
}

pub fn to_string(file: &TraceFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ORDER {}", file.trace.original_order);
    let _ = writeln!(out, "EXACT {}", file.exact_kernel_order);
    for (k, &id) in file.name_map.iter().enumerate() {
        let _ = writeln!(out, "MAP {} {}", k + 1, id + 1);
    }
    for entry in &file.trace.entries {
        match entry {
            TraceEntry::Include(v) => {
                out.push_str("INC");
                ids(&mut out, [*v]);
            }
            TraceEntry::Exclude(v) => {
                out.push_str("EXC");
                ids(&mut out, [*v]);
            }
            TraceEntry::StackPush { vertex, .. } => {
                out.push_str("PUSH");
                ids(&mut out, [*vertex]);
            }
            TraceEntry::Fold { placeholder, center, left, right } => {
                out.push_str("FOLD");
                ids(&mut out, [*placeholder, *center, *left, *right]);
            }
            TraceEntry::Twin { placeholder, first, second, neighborhood } => {
                out.push_str("TWIN");
                ids(&mut out, [*placeholder, *first, *second]);
                ids(&mut out, neighborhood.iter().copied());
            }
            TraceEntry::Path { case, path, endpoints } => {
                let _ = write!(out, "PATH {}", case.name());
                if let Some((a, b)) = endpoints {
                    ids(&mut out, [*a, *b]);
                }
                ids(&mut out, path.iter().copied());
            }
        }
        out.push('\n');
    }
    out
}

/// Tokens after the keyword, as 0-based ids.
fn read_ids(tokens: &[&str], line: usize) -> Result<Vec<usize>, LineError> {
    tokens
        .iter()
        .map(|t| match number(Some(t), line, "vertex id")? {
            0 => fail(line, "vertex ids are 1-based"),
            v => Ok(v - 1),
        })
        .collect()
}

fn exactly<const K: usize>(v: Vec<usize>, line: usize) -> Result<[usize; K], LineError> {
    let got = v.len();
    v.try_into().or_else(|_| fail(line, format!("expected {K} ids, found {got}")))
}

pub fn parse(text: &str) -> Result<TraceFile, LineError> {
    let mut order = None;
    let mut exact = None;
    let mut name_map = Vec::new();
    let mut entries = Vec::new();
    // v0, p1 .. pl, w of the latest PATH line
    let mut sequence: Option<Vec<usize>> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some((&keyword, rest)) = tokens.split_first() else { continue };
        match keyword {
            "c" => continue,
            "ORDER" | "EXACT" => {
                if rest.len() != 1 {
                    return fail(line, format!("{keyword} takes one count"));
                }
                let value = number(rest.first().copied(), line, "count")?;
                *(if keyword == "ORDER" { &mut order } else { &mut exact }) = Some(value);
            }
            "MAP" => {
                let [k, id] = exactly::<2>(read_ids(rest, line)?, line)?;
                if k != name_map.len() {
                    return fail(line, format!("expected kernel vertex {}", name_map.len() + 1));
                }
                name_map.push(id);
            }
            "INC" => entries.push(TraceEntry::Include(exactly::<1>(read_ids(rest, line)?, line)?[0])),
            "EXC" => entries.push(TraceEntry::Exclude(exactly::<1>(read_ids(rest, line)?, line)?[0])),
            "PUSH" => {
                let [vertex] = exactly::<1>(read_ids(rest, line)?, line)?;
                let Some(seq) = &sequence else {
                    return fail(line, "PUSH outside a path");
                };
                let Some(at) = seq[1..seq.len() - 1].iter().position(|&p| p == vertex) else {
                    return fail(line, format!("vertex {} is not on the current path", vertex + 1));
                };
                entries.push(TraceEntry::StackPush { vertex, neighbors: [seq[at], seq[at + 2]] });
            }
            "FOLD" => {
                let [placeholder, center, left, right] = exactly::<4>(read_ids(rest, line)?, line)?;
                entries.push(TraceEntry::Fold { placeholder, center, left, right });
            }
            "TWIN" => {
                let [placeholder, first, second, a, b, c] = exactly::<6>(read_ids(rest, line)?, line)?;
                entries.push(TraceEntry::Twin { placeholder, first, second, neighborhood: [a, b, c] });
            }
            "PATH" => {
                let Some((&name, rest)) = rest.split_first() else {
                    return fail(line, "missing path case");
                };
                let Some(case) = PathCase::from_name(name) else {
                    return fail(line, format!("unknown path case `{name}`"));
                };
                let vs = read_ids(rest, line)?;
                let (endpoints, path) = if case == PathCase::Cycle {
                    (None, vs)
                } else if vs.len() >= 3 {
                    (Some((vs[0], vs[1])), vs[2..].to_vec())
                } else {
                    return fail(line, "a path needs two endpoints and at least one vertex");
                };
                if path.is_empty() {
                    return fail(line, "empty path");
                }
                sequence = endpoints.map(|(a, b)| {
                    let mut seq = vec![a];
                    seq.extend(&path);
                    seq.push(b);
                    seq
                });
                entries.push(TraceEntry::Path { case, path, endpoints });
            }
            other => return fail(line, format!("unknown trace line `{other}`")),
        }
    }
    let Some(original_order) = order else {
        return fail(text.lines().count().max(1), "missing ORDER line");
    };
    Ok(TraceFile {
        exact_kernel_order: exact.unwrap_or(name_map.len()),
        trace: ReductionTrace { original_order, entries },
        name_map,
    })
}

pub fn read(path: &Path) -> Result<TraceFile> {
    parse(&read_to_string(path)?).map_err(|e| e.at(path))
}

pub fn write(path: &Path, file: &TraceFile) -> Result<()> {
    write_string(path, &to_string(file))
}
