//! Fiedler-vector bipartition of the symmetrized graph.

use std::collections::VecDeque;

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::complexity::binary_adjacency;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};

/// Components within this of zero join the positive side.
const ZERO_COMPONENT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiedlerResult {
    pub cluster_pos: Vec<NodeId>,
    pub cluster_neg: Vec<NodeId>,
    /// Second-smallest Laplacian eigenvalue.
    pub fiedler_value: f64,
    /// Oriented so its largest-modulus entry is positive; indexed like `nodes`.
    pub fiedler_vector: Vec<f64>,
    pub nodes: Vec<NodeId>,
}

impl FiedlerResult {
    /// Both sides, larger first (positive side on equal sizes).
    pub fn clusters(&self) -> Vec<Vec<NodeId>> {
        if self.cluster_neg.len() > self.cluster_pos.len() {
            vec![self.cluster_neg.clone(), self.cluster_pos.clone()]
        } else {
            vec![self.cluster_pos.clone(), self.cluster_neg.clone()]
        }
    }
}

/// `L = D - M_sym` over the OR-symmetrized, self-loop-free 0/1 adjacency.
pub fn laplacian(g: &DirectedGraph) -> Mat<f64> {
    let m = binary_adjacency(g, true);
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| {
        if i == j {
            (0..n).map(|k| m[(i, k)]).sum::<f64>()
        } else {
            -m[(i, j)]
        }
    })
}

fn symmetric_components(g: &DirectedGraph) -> usize {
    let n = g.node_count();
    let mut adj = vec![Vec::new(); n];
    for e in g.edges() {
        let (s, d) = (g.index_of(e.src).unwrap(), g.index_of(e.dst).unwrap());
        adj[s].push(d);
        adj[d].push(s);
    }
    let mut seen = vec![false; n];
    let mut count = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        count += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

/// Splits `g` by the signs of the Laplacian eigenvector of the second-smallest
/// eigenvalue. The input must be connected once edge directions are ignored.
pub fn fiedler_partition(g: &DirectedGraph) -> Result<FiedlerResult> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::validation("Fiedler partition needs at least two nodes"));
    }
    let components = symmetric_components(g);
    if components > 1 {
        return Err(Error::Disconnected { components });
    }
    let l = laplacian(g);
    let evd = l
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::NonConvergence { hash: 0 })?;
    let s = evd.S();
    let fiedler_value = s[1];
    if n > 2 && (s[2] - s[1]).abs() <= 1e-9 * s[1].abs().max(1.0) {
        log::warn!("second Laplacian eigenvalue is repeated; the Fiedler vector is not unique");
    }
    let mut v: Vec<f64> = evd.U().col(1).iter().copied().collect();
    let max = v.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let pivot = v.iter().position(|x| x.abs() >= max * (1.0 - 1e-9)).unwrap();
    if v[pivot] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    let (mut cluster_pos, mut cluster_neg) = (Vec::new(), Vec::new());
    for (&id, &x) in g.nodes().iter().zip(&v) {
        if x >= -ZERO_COMPONENT_TOL {
            cluster_pos.push(id);
        } else {
            cluster_neg.push(id);
        }
    }
    if cluster_neg.is_empty() {
        return Err(Error::NoCut);
    }
    Ok(FiedlerResult {
        cluster_pos,
        cluster_neg,
        fiedler_value,
        fiedler_vector: v,
        nodes: g.nodes().to_vec(),
    })
}
