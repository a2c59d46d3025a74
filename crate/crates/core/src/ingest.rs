//! Readers and writers for SNAP edge lists, weighted CSV edge lists and
//! node-weight files.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

/// Parses a SNAP edge list: `#` comments, one whitespace-separated
/// `src dst` pair of non-negative integers per line, unit weights.
pub fn parse_snap_edge_list<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut b = DirectedGraph::builder();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let (Some(s), Some(d), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::parse(lineno, format!("expected two node ids, got {trimmed:?}")));
        };
        let src = parse_id(s, lineno)?;
        let dst = parse_id(d, lineno)?;
        b.add_edge(src, dst, 1.0)?;
    }
    if b.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(b.build())
}

/// Parses `src,dst,weight` rows. A first row whose first field is not an
/// integer is treated as a header.
pub fn parse_weighted_csv<R: BufRead>(reader: R) -> Result<DirectedGraph> {
    let mut b = DirectedGraph::builder();
    let mut seen_data = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if !seen_data && fields[0].parse::<u64>().is_err() {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != 3 {
            return Err(Error::parse(lineno, format!("expected src,dst,weight, got {trimmed:?}")));
        }
        let src = parse_id(fields[0], lineno)?;
        let dst = parse_id(fields[1], lineno)?;
        let weight: f64 = fields[2]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid weight {:?}", fields[2])))?;
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::validation(format!("line {lineno}: weight must be positive, got {weight}")));
        }
        b.add_edge(src, dst, weight)?;
    }
    if b.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(b.build())
}

/// Parses a `node,alpha` file into a weight map. Header row optional.
pub fn parse_node_weights<R: BufRead>(reader: R) -> Result<BTreeMap<NodeId, f64>> {
    let mut out = BTreeMap::new();
    let mut seen_data = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if !seen_data && fields[0].parse::<u64>().is_err() {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if fields.len() != 2 {
            return Err(Error::parse(lineno, format!("expected node,alpha, got {trimmed:?}")));
        }
        let id = parse_id(fields[0], lineno)?;
        let alpha: f64 = fields[1]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid weight {:?}", fields[1])))?;
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::validation(format!("line {lineno}: node weight must be nonnegative, got {alpha}")));
        }
        out.insert(id, alpha);
    }
    Ok(out)
}

fn parse_id(field: &str, lineno: usize) -> Result<NodeId> {
    field
        .parse::<u64>()
        .map(NodeId)
        .map_err(|_| Error::parse(lineno, format!("invalid node id {field:?}")))
}

/// Writes the graph topology as a SNAP edge list (weights are dropped).
pub fn write_snap_edge_list<W: Write>(g: &DirectedGraph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# Nodes: {} Edges: {}", g.node_count(), g.edge_count())?;
    writeln!(w, "# FromNodeId\tToNodeId")?;
    for e in g.edges() {
        writeln!(w, "{}\t{}", e.src, e.dst)?;
    }
    Ok(())
}

pub fn write_weighted_csv<W: Write>(g: &DirectedGraph, mut w: W) -> std::io::Result<()> {
    writeln!(w, "src,dst,weight")?;
    for e in g.edges() {
        writeln!(w, "{},{},{}", e.src, e.dst, e.weight)?;
    }
    Ok(())
}
