//! Canonical edge-list file format.
//!
//! Text, UTF-8. Comment lines start with `#`. The first payload line is
//! `graph <n> <d>`, followed by exactly n*d/2 lines `<u> <v>` with u < v,
//! sorted lexicographically.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Graph, RawGraph};

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    read_graph(BufReader::new(File::open(path)?))
}

pub fn save_graph(graph: &Graph, path: impl AsRef<Path>, comments: &[String]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_graph(graph, &mut w, comments)
}

pub fn read_graph(reader: impl Read) -> Result<Graph> {
    let parse = |line_no: usize, message: String| Error::Parse {
        line: line_no,
        message,
    };
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 3 || fields[0] != "graph" {
                    return Err(parse(
                        line_no,
                        format!("expected `graph <n> <d>`, got `{line}`"),
                    ));
                }
                let n: usize = fields[1]
                    .parse()
                    .map_err(|_| parse(line_no, format!("bad vertex count `{}`", fields[1])))?;
                let d: usize = fields[2]
                    .parse()
                    .map_err(|_| parse(line_no, format!("bad degree `{}`", fields[2])))?;
                header = Some((n, d));
            }
            Some((n, _)) => {
                if fields.len() != 2 {
                    return Err(parse(line_no, format!("expected `<u> <v>`, got `{line}`")));
                }
                let u: u32 = fields[0]
                    .parse()
                    .map_err(|_| parse(line_no, format!("bad vertex id `{}`", fields[0])))?;
                let v: u32 = fields[1]
                    .parse()
                    .map_err(|_| parse(line_no, format!("bad vertex id `{}`", fields[1])))?;
                if u >= v {
                    return Err(parse(
                        line_no,
                        format!("edge ({u}, {v}) must satisfy u < v"),
                    ));
                }
                if v as usize >= n {
                    return Err(parse(
                        line_no,
                        format!("vertex id {v} out of range (n = {n})"),
                    ));
                }
                if let Some(&prev) = edges.last() {
                    if prev >= (u, v) {
                        return Err(parse(
                            line_no,
                            format!("edges out of lexicographic order at ({u}, {v})"),
                        ));
                    }
                }
                edges.push((u, v));
            }
        }
    }
    let (n, d) = header.ok_or_else(|| parse(0, "missing `graph <n> <d>` header".into()))?;
    if d < 3 {
        return Err(parse(0, format!("d >= 3 required, got {d}")));
    }
    if edges.len() != n * d / 2 {
        return Err(parse(
            0,
            format!("expected {} edge lines, found {}", n * d / 2, edges.len()),
        ));
    }
    RawGraph::from_edges(n, d, &edges)?.into_graph()
}

pub fn write_graph(graph: &Graph, w: &mut impl Write, comments: &[String]) -> Result<()> {
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "graph {} {}", graph.n(), graph.d())?;
    for (u, v) in graph.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}
