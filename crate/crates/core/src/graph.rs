//! Directed weighted graphs keyed by external node ids.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// External node label, preserved verbatim through every reduction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for NodeId {
    fn from(id: u64) -> Self {
        NodeId(id)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub src: NodeId,
    pub dst: NodeId,
    pub weight: f64,
}

impl Edge {
    pub fn new(src: impl Into<NodeId>, dst: impl Into<NodeId>, weight: f64) -> Self {
        Edge {
            src: src.into(),
            dst: dst.into(),
            weight,
        }
    }

    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Immutable directed graph with optional per-node weights.
///
/// Nodes are kept sorted by id and edges sorted by `(src, dst)` with no
/// duplicate pairs. Edge weights are strictly positive; self-loops are allowed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DirectedGraph {
    nodes: Vec<NodeId>,
    node_weights: BTreeMap<NodeId, f64>,
    edges: Vec<Edge>,
}

impl DirectedGraph {
    /// Assembles a graph from parts that already satisfy the invariants
    /// (sorted unique nodes, sorted unique edges with known endpoints).
    pub(crate) fn from_sorted_parts(
        nodes: Vec<NodeId>,
        node_weights: BTreeMap<NodeId, f64>,
        edges: Vec<Edge>,
    ) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.windows(2).all(|w| (w[0].src, w[0].dst) < (w[1].src, w[1].dst)));
        DirectedGraph {
            nodes,
            node_weights,
            edges,
        }
    }

    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Convenience constructor for unit-weight edges.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut b = GraphBuilder::default();
        for (s, d) in pairs {
            b.add_edge(s, d, 1.0).expect("unit weight is valid");
        }
        b.build()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.index_of(id).is_some()
    }

    /// Position of `id` in [`nodes`](Self::nodes).
    pub fn index_of(&self, id: NodeId) -> Option<usize> {
        self.nodes.binary_search(&id).ok()
    }

    /// Node complexity weight; 1.0 unless set explicitly.
    pub fn node_weight(&self, id: NodeId) -> f64 {
        self.node_weights.get(&id).copied().unwrap_or(1.0)
    }

    pub fn explicit_node_weights(&self) -> &BTreeMap<NodeId, f64> {
        &self.node_weights
    }

    /// Returns a copy with the given node weights attached.
    pub fn with_node_weights(mut self, weights: BTreeMap<NodeId, f64>) -> Result<Self> {
        for (&id, &w) in &weights {
            if !self.contains(id) {
                return Err(Error::validation(format!("node weight given for unknown node {id}")));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::validation(format!("node {id} has invalid weight {w}")));
            }
        }
        self.node_weights = weights;
        Ok(self)
    }

    /// Out- and in-degree per node position. Self-loops count on both sides.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut out = vec![0; self.nodes.len()];
        let mut inc = vec![0; self.nodes.len()];
        for e in &self.edges {
            out[self.index_of(e.src).unwrap()] += 1;
            inc[self.index_of(e.dst).unwrap()] += 1;
        }
        (out, inc)
    }

    /// Adjacency lists by node position: `(target position, weight)`.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            let s = self.index_of(e.src).unwrap();
            let d = self.index_of(e.dst).unwrap();
            adj[s].push((d, e.weight));
        }
        adj
    }

    /// Subgraph induced by `keep`, carrying over node weights.
    pub fn induced_subgraph(&self, keep: &BTreeSet<NodeId>) -> DirectedGraph {
        let nodes: Vec<NodeId> = self.nodes.iter().copied().filter(|n| keep.contains(n)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| keep.contains(&e.src) && keep.contains(&e.dst))
            .copied()
            .collect();
        let node_weights = self
            .node_weights
            .iter()
            .filter(|(n, _)| keep.contains(n))
            .map(|(&n, &w)| (n, w))
            .collect();
        DirectedGraph {
            nodes,
            node_weights,
            edges,
        }
    }

    /// Sum of edge weights over all edges.
    pub fn total_edge_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

/// Accumulates nodes and edges; duplicate `(src, dst)` pairs merge by summing
/// their weights in insertion order.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    nodes: BTreeSet<NodeId>,
    edges: BTreeMap<(NodeId, NodeId), f64>,
    node_weights: BTreeMap<NodeId, f64>,
}

impl GraphBuilder {
    pub fn add_node(&mut self, id: impl Into<NodeId>) -> &mut Self {
        self.nodes.insert(id.into());
        self
    }

    pub fn add_edge(&mut self, src: impl Into<NodeId>, dst: impl Into<NodeId>, weight: f64) -> Result<&mut Self> {
        let (src, dst) = (src.into(), dst.into());
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::validation(format!(
                "edge {src}->{dst} has non-positive or non-finite weight {weight}"
            )));
        }
        self.nodes.insert(src);
        self.nodes.insert(dst);
        *self.edges.entry((src, dst)).or_insert(0.0) += weight;
        Ok(self)
    }

    pub fn set_node_weight(&mut self, id: impl Into<NodeId>, weight: f64) -> Result<&mut Self> {
        let id = id.into();
        if !(weight >= 0.0) || !weight.is_finite() {
            return Err(Error::validation(format!("node {id} has invalid weight {weight}")));
        }
        self.nodes.insert(id);
        self.node_weights.insert(id, weight);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn build(self) -> DirectedGraph {
        DirectedGraph {
            nodes: self.nodes.into_iter().collect(),
            node_weights: self.node_weights,
            edges: self
                .edges
                .into_iter()
                .map(|((src, dst), weight)| Edge { src, dst, weight })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    /// Out-edges per node.
    pub average_degree: f64,
    pub source_count: usize,
    pub sink_count: usize,
    pub disconnected_count: usize,
}

/// Node and edge counts plus source/sink/disconnected classification.
///
/// A node that only has a self-loop has both an in- and an out-edge and is
/// therefore none of source, sink or disconnected.
pub fn graph_stats(g: &DirectedGraph) -> GraphStats {
    let (out, inc) = g.degrees();
    let mut stats = GraphStats {
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        average_degree: if g.node_count() > 0 {
            g.edge_count() as f64 / g.node_count() as f64
        } else {
            0.0
        },
        source_count: 0,
        sink_count: 0,
        disconnected_count: 0,
    };
    for (o, i) in out.into_iter().zip(inc) {
        match (o > 0, i > 0) {
            (true, false) => stats.source_count += 1,
            (false, true) => stats.sink_count += 1,
            (false, false) => stats.disconnected_count += 1,
            (true, true) => {}
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stats_of_chain() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 2)]);
        let s = graph_stats(&g);
        assert_eq!((s.source_count, s.sink_count, s.disconnected_count), (1, 1, 0));
        assert_eq!(s.average_degree, 2.0 / 3.0);
    }

    #[test]
    fn stats_of_three_cycle() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 2), (2, 0)]);
        let s = graph_stats(&g);
        assert_eq!((s.source_count, s.sink_count, s.disconnected_count), (0, 0, 0));
    }

    #[test]
    fn isolated_node_is_disconnected() {
        let mut b = DirectedGraph::builder();
        b.add_node(7);
        let s = graph_stats(&b.build());
        assert_eq!(s.disconnected_count, 1);
        assert_eq!(s.node_count, 1);
    }

    #[test]
    fn pure_self_loop_is_unclassified() {
        let g = DirectedGraph::from_pairs([(3, 3)]);
        let s = graph_stats(&g);
        assert_eq!((s.source_count, s.sink_count, s.disconnected_count), (0, 0, 0));
    }

    #[test]
    fn duplicate_edges_merge_by_sum() {
        let mut b = DirectedGraph::builder();
        b.add_edge(0, 1, 0.1).unwrap();
        b.add_edge(0, 1, 0.2).unwrap();
        b.add_edge(0, 1, 0.3).unwrap();
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edges()[0].weight, 0.1 + 0.2 + 0.3);
    }

    #[test]
    fn rejects_non_positive_weight() {
        let mut b = DirectedGraph::builder();
        assert!(b.add_edge(0, 1, 0.0).is_err());
        assert!(b.add_edge(0, 1, -2.0).is_err());
        assert!(b.add_edge(0, 1, f64::NAN).is_err());
    }

    #[test]
    fn node_weights_default_to_one() {
        let g = DirectedGraph::from_pairs([(0, 1)]);
        assert_eq!(g.node_weight(NodeId(0)), 1.0);
        let g = g.with_node_weights([(NodeId(1), 4.0)].into()).unwrap();
        assert_eq!(g.node_weight(NodeId(1)), 4.0);
        assert!(DirectedGraph::from_pairs([(0, 1)])
            .with_node_weights([(NodeId(9), 1.0)].into())
            .is_err());
    }

    #[test]
    fn induced_subgraph_drops_crossing_edges() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 2), (2, 0), (2, 3)]);
        let sub = g.induced_subgraph(&[NodeId(0), NodeId(1), NodeId(2)].into());
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 3);
    }
}
