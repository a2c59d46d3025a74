//! Source stripping, recurrence matrix construction and strongly connected
//! components.

use std::collections::{BTreeMap, BTreeSet};

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge, NodeId};

/// Result of iterated source removal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedGraph {
    /// Retained nodes in ascending id order; reduced index = position.
    pub kept: Vec<NodeId>,
    /// Removed sources, sweep by sweep, ascending id within a sweep.
    pub removed_sources: Vec<NodeId>,
    /// Out-edges of removed sources, in removal order.
    pub removed_edges: Vec<Edge>,
    /// Kept nodes with incoming but no outgoing edges; they get a unit self-loop.
    pub sink_selfloops_added: BTreeSet<NodeId>,
    /// Kept nodes with no edges at all after stripping; they also get a unit self-loop.
    pub disconnected: BTreeSet<NodeId>,
    /// Number of nodes in the input graph.
    pub original_node_count: usize,
    #[serde(skip)]
    graph: DirectedGraph,
}

impl ReducedGraph {
    /// The kept nodes and the edges among them (before self-loop insertion).
    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn is_sink(&self, id: NodeId) -> bool {
        self.sink_selfloops_added.contains(&id)
    }

    pub fn is_disconnected(&self, id: NodeId) -> bool {
        self.disconnected.contains(&id)
    }

    /// Total weight of the removed edges.
    pub fn removed_weight(&self) -> f64 {
        self.removed_edges.iter().map(|e| e.weight).sum()
    }
}

/// Repeatedly removes every node with zero in-degree and positive out-degree,
/// together with its out-edges, until none remain.
///
/// Nodes without any edges are not sources and are kept.
pub fn strip_sources(g: &DirectedGraph) -> ReducedGraph {
    let n = g.node_count();
    let adj = g.out_adjacency();
    let (out_deg, mut in_deg) = g.degrees();
    let mut removed = vec![false; n];
    let mut removed_sources = Vec::new();
    let mut removed_edges = Vec::new();

    let mut sweep: Vec<usize> = (0..n).filter(|&v| in_deg[v] == 0 && out_deg[v] > 0).collect();
    while !sweep.is_empty() {
        let mut next = Vec::new();
        for &v in &sweep {
            removed[v] = true;
            removed_sources.push(g.nodes()[v]);
            for &(d, w) in &adj[v] {
                removed_edges.push(Edge {
                    src: g.nodes()[v],
                    dst: g.nodes()[d],
                    weight: w,
                });
                in_deg[d] -= 1;
                if in_deg[d] == 0 && out_deg[d] > 0 {
                    next.push(d);
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        sweep = next;
    }

    let kept: Vec<NodeId> = (0..n).filter(|&v| !removed[v]).map(|v| g.nodes()[v]).collect();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !removed[g.index_of(e.src).unwrap()])
        .copied()
        .collect();
    let weights: BTreeMap<NodeId, f64> = g
        .explicit_node_weights()
        .iter()
        .filter(|(id, _)| !removed[g.index_of(**id).unwrap()])
        .map(|(&id, &w)| (id, w))
        .collect();
    let graph = DirectedGraph::from_sorted_parts(kept.clone(), weights, edges);

    let (r_out, r_in) = graph.degrees();
    let mut sinks = BTreeSet::new();
    let mut disconnected = BTreeSet::new();
    for (i, &id) in kept.iter().enumerate() {
        if r_out[i] == 0 {
            if r_in[i] == 0 {
                disconnected.insert(id);
            } else {
                sinks.insert(id);
            }
        }
    }

    ReducedGraph {
        kept,
        removed_sources,
        removed_edges,
        sink_selfloops_added: sinks,
        disconnected,
        original_node_count: n,
        graph,
    }
}

/// Dense row-stochastic matrix over the kept nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceMatrix {
    dim: usize,
    entries: Vec<f64>,
    index: Vec<NodeId>,
}

impl RecurrenceMatrix {
    /// Builds a matrix from explicit rows. Rows must be square, finite,
    /// nonnegative and sum to one within `1e-9`. Nodes are labelled `0..dim`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::validation(format!("row {i} has length {} (expected {dim})", row.len())));
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite);
            }
            if row.iter().any(|&x| x < 0.0) {
                return Err(Error::validation(format!("row {i} has a negative entry")));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return Err(Error::validation(format!("row {i} sums to {s}")));
            }
            entries.extend_from_slice(row);
        }
        Ok(RecurrenceMatrix {
            dim,
            entries,
            index: (0..dim as u64).map(NodeId).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Node id of each row/column.
    pub fn index(&self) -> &[NodeId] {
        &self.index
    }

    pub fn position(&self, id: NodeId) -> Option<usize> {
        self.index.binary_search(&id).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn to_mat(&self) -> Mat<f64> {
        Mat::from_fn(self.dim, self.dim, |i, j| self.get(i, j))
    }

    /// Number of structurally nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0.0).count()
    }
}

/// Row-normalizes the reduced graph's weights; nodes without out-edges get a
/// one on the diagonal.
pub fn build_recurrence_matrix(rg: &ReducedGraph) -> RecurrenceMatrix {
    let g = rg.graph();
    let dim = g.node_count();
    let mut entries = vec![0.0; dim * dim];
    for (i, row) in g.out_adjacency().into_iter().enumerate() {
        if row.is_empty() {
            entries[i * dim + i] = 1.0;
            continue;
        }
        let total: f64 = row.iter().map(|&(_, w)| w).sum();
        for (j, w) in row {
            entries[i * dim + j] = w / total;
        }
    }
    RecurrenceMatrix {
        dim,
        entries,
        index: g.nodes().to_vec(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SccDecomposition {
    /// Components in reverse topological order of the condensation; ids
    /// within a component are ascending.
    pub components: Vec<Vec<NodeId>>,
    pub component_of: BTreeMap<NodeId, usize>,
}

impl SccDecomposition {
    /// Largest component by node count; ties go to the one with the smallest id.
    pub fn largest(&self) -> Option<&[NodeId]> {
        self.components
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b[0].cmp(&a[0])))
            .map(Vec::as_slice)
    }
}

/// Strongly connected components (iterative Tarjan).
pub fn scc(g: &DirectedGraph) -> SccDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.node_count();
    let adj: Vec<Vec<usize>> = g
        .out_adjacency()
        .into_iter()
        .map(|r| r.into_iter().map(|(d, _)| d).collect())
        .collect();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut components = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut calls: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(v, child)) = calls.last() {
            if child < adj[v].len() {
                calls.last_mut().unwrap().1 += 1;
                let w = adj[v][child];
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                calls.pop();
                if let Some(&(u, _)) = calls.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(g.nodes()[w]);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }

    let component_of = components
        .iter()
        .enumerate()
        .flat_map(|(c, ids)| ids.iter().map(move |&id| (id, c)))
        .collect();
    SccDecomposition {
        components,
        component_of,
    }
}
