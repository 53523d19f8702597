//! OR-Library Steiner (Beasley) graph files.
//!
//! ```text
//! <nodes> <edges>
//! <u> <v> <cost>      (one line per edge)
//! <terminal count>
//! <terminal ids...>
//! ```
//!
//! Only the graph is used; the terminal section is skipped.

use super::{Edge, NodeId};
use crate::error::{Error, Result};

/// The core graph read from an STP file.
#[derive(Debug, Clone, PartialEq)]
pub struct StpGraph {
    pub node_count: usize,
    pub edges: Vec<Edge>,
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
}

pub fn parse_stp(text: &str) -> Result<StpGraph> {
    let mut lines = numbered_lines(text);
    let (line, header) = lines.next().ok_or_else(|| Error::parse(1, "empty STP file"))?;
    if header.len() < 2 {
        return Err(Error::parse(line, "expected '<nodes> <edges>' header"));
    }
    let node_count: usize = header[0]
        .parse()
        .map_err(|_| Error::parse(line, format!("bad node count '{}'", header[0])))?;
    let edge_count: usize = header[1]
        .parse()
        .map_err(|_| Error::parse(line, format!("bad edge count '{}'", header[1])))?;

    let mut edges = Vec::with_capacity(edge_count);
    let mut last_line = line;
    for _ in 0..edge_count {
        let (line, toks) = lines.next().ok_or_else(|| {
            Error::parse(
                last_line + 1,
                format!("expected {edge_count} edges, found {}", edges.len()),
            )
        })?;
        last_line = line;
        if toks.len() != 3 {
            return Err(Error::parse(line, "expected '<u> <v> <cost>'"));
        }
        let node = |tok: &str| -> Result<NodeId> {
            let id: u32 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad node id '{tok}'")))?;
            if id == 0 || id as usize > node_count {
                return Err(Error::parse(
                    line,
                    format!("node id {id} out of range 1..={node_count}"),
                ));
            }
            Ok(NodeId(id))
        };
        let u = node(toks[0])?;
        let v = node(toks[1])?;
        let cost: f64 = toks[2]
            .parse()
            .map_err(|_| Error::parse(line, format!("bad edge cost '{}'", toks[2])))?;
        if !cost.is_finite() || cost < 0.0 {
            return Err(Error::parse(line, format!("negative or non-finite edge cost {cost}")));
        }
        edges.push(Edge { u, v, cost });
    }
    Ok(StpGraph { node_count, edges })
}
