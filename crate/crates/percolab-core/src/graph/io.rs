//! Plain text graph format.
//!
//! ```text
//! n m d
//! u v
//! ...
//! ```
//!
//! One header line, then `m` edge lines with `u < v`, sorted
//! lexicographically. `d` is the uniform degree, or `-1` when the graph is
//! irregular. The reader is strict: single spaces, canonical decimal
//! numbers, LF line endings, no trailing junk. Anything the writer would
//! not produce is rejected, which makes write -> read -> write the
//! identity on bytes.

use super::Graph;
use crate::error::{Error, Result};
use std::path::Path;

/// Serializes a graph to the canonical text form.
pub fn write_graph(g: &Graph) -> String {
    let d: i64 = match g.degree_uniform() {
        Some(d) => d as i64,
        None => -1,
    };
    let mut out = String::with_capacity(16 + g.m() * 8);
    out.push_str(&format!("{} {} {}\n", g.n(), g.m(), d));
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_graph_file(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, write_graph(g))?;
    Ok(())
}

fn fail(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

/// Splits a line into exactly `want` canonical decimal tokens.
fn tokens(line: &str, lineno: usize, want: usize) -> Result<Vec<i64>> {
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != want {
        return Err(fail(lineno, format!("expected {want} fields, got {}", parts.len())));
    }
    let mut out = Vec::with_capacity(want);
    for tok in parts {
        let val: i64 = tok
            .parse()
            .map_err(|_| fail(lineno, format!("bad number {tok:?}")))?;
        if val.to_string() != tok {
            return Err(fail(lineno, format!("non-canonical number {tok:?}")));
        }
        out.push(val);
    }
    Ok(out)
}

/// Parses the canonical text form back into a graph.
pub fn read_graph(text: &str) -> Result<Graph> {
    if !text.ends_with('\n') {
        return Err(fail(0, "missing trailing newline"));
    }
    let mut lines = text.split_inclusive('\n');
    let header_line = lines.next().ok_or_else(|| fail(1, "empty input"))?;
    let header = tokens(header_line.trim_end_matches('\n'), 1, 3)?;
    let (n, m, d) = (header[0], header[1], header[2]);
    if n < 1 {
        return Err(fail(1, "vertex count must be at least 1"));
    }
    if m < 0 {
        return Err(fail(1, "negative edge count"));
    }
    if d < -1 {
        return Err(fail(1, format!("bad degree field {d}")));
    }
    let (n, m) = (n as usize, m as usize);

    let mut edges = Vec::with_capacity(m);
    let mut prev: Option<(u32, u32)> = None;
    for i in 0..m {
        let lineno = i + 2;
        let line = lines
            .next()
            .ok_or_else(|| fail(lineno, "fewer edge lines than header promises"))?;
        let pair = tokens(line.trim_end_matches('\n'), lineno, 2)?;
        let (u, v) = (pair[0], pair[1]);
        if u < 0 || v < 0 || u as usize >= n || v as usize >= n {
            return Err(fail(lineno, format!("endpoint out of range in {u} {v}")));
        }
        let e = (u as u32, v as u32);
        if e.0 >= e.1 {
            return Err(fail(lineno, format!("edge {u} {v} not in u < v form")));
        }
        if prev.is_some_and(|p| p >= e) {
            return Err(fail(lineno, format!("edge {u} {v} out of order")));
        }
        prev = Some(e);
        edges.push(e);
    }
    if let Some(extra) = lines.next() {
        return Err(fail(m + 2, format!("trailing content {:?}", extra.trim_end_matches('\n'))));
    }

    let g = Graph::from_edges(n, edges)?;
    match (d, g.degree_uniform()) {
        (-1, None) => {}
        (-1, Some(real)) => {
            return Err(fail(1, format!("header declares irregular but every degree is {real}")))
        }
        (want, Some(real)) if want as u32 == real => {}
        (want, got) => {
            return Err(fail(1, format!("header degree {want} does not match graph ({got:?})")))
        }
    }
    Ok(g)
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    read_graph(&std::fs::read_to_string(path)?)
}
