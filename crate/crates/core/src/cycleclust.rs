//! Almost-cyclic clustering from a generating eigenvector of the recurrence
//! matrix.
//!
//! A cycle of order `K` shows up as eigenvalues near the `K`-th roots of
//! unity. [`find_kmin`] picks the order, [`select_generators`] picks the
//! eigenvalue closest to `exp(2πi/K)`, and [`assign_clusters`] bins the
//! arguments of its eigenvector components into `K` sectors. Along an edge
//! the argument advances by roughly `2π/K`, so cluster `c` feeds `c + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::reduction::{build_recurrence_matrix, scc, strip_sources, ReducedGraph};
use crate::spectra::{angle, eig, EigenClass, Spectrum, ToleranceConfig};

/// Objective differences below this are treated as ties in the K search.
const KMIN_TIE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KminSearchResult {
    pub k_min: usize,
    /// Average sector distance for every evaluated `K`.
    pub objective: BTreeMap<usize, f64>,
    /// Number of nonzero eigenvalues.
    pub n_candidates: usize,
}

/// Searches `K = 2..=min(N, k_cap)` for the cycle order whose roots of unity
/// best match the nonzero eigenvalues.
///
/// For each `t = 2..=K` the eigenvalues with argument in
/// `[(2π/K)(t - 1.5), (2π/K)(t - 0.5)]` are compared against
/// `exp(2πi(t - 1)/K)`; an empty sector scores 1. Objectives within `1e-9` of
/// the minimum count as tied and the largest such `K` wins, so a pure
/// `d`-cycle yields `d` rather than one of its divisors.
pub fn find_kmin(s: &Spectrum, tol: &ToleranceConfig, k_cap: usize) -> Result<KminSearchResult> {
    let nonzero: Vec<(Complex64, f64)> = s
        .eigenvalues()
        .iter()
        .filter(|&&z| tol.classify(z) != EigenClass::Zero)
        .map(|&z| (z, angle(z)))
        .collect();
    let n = nonzero.len();
    if n < 2 {
        return Err(Error::NoCycle);
    }
    if k_cap < 2 {
        return Err(Error::validation(format!("K search cap must be at least 2, got {k_cap}")));
    }
    let mut objective = BTreeMap::new();
    for k in 2..=n.min(k_cap) {
        let w = TAU / k as f64;
        let mut total = 0.0;
        for t in 2..=k {
            let lo = w * (t as f64 - 1.5);
            let hi = w * (t as f64 - 0.5);
            let target = Complex64::from_polar(1.0, w * (t - 1) as f64);
            let best = nonzero
                .iter()
                .filter(|(_, a)| lo <= *a && *a <= hi)
                .map(|(z, _)| (target - z).norm())
                .fold(f64::INFINITY, f64::min);
            total += if best.is_finite() { best } else { 1.0 };
        }
        objective.insert(k, total / (k - 1) as f64);
    }
    let min = objective.values().copied().fold(f64::INFINITY, f64::min);
    let k_min = objective
        .iter()
        .filter(|(_, &v)| v <= min + KMIN_TIE_TOL)
        .map(|(&k, _)| k)
        .max()
        .unwrap();
    Ok(KminSearchResult {
        k_min,
        objective,
        n_candidates: n,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratingSet {
    pub k_min: usize,
    /// Position of the primary generator in the spectrum's eigenvalue order.
    pub primary_index: usize,
    pub primary: Complex64,
    /// Spectrum positions of all generators, primary first.
    pub indices: Vec<usize>,
    pub generating_eigenvalues: Vec<Complex64>,
    #[serde(skip)]
    pub generating_eigenvectors: Vec<Vec<Complex64>>,
    /// Node id of each eigenvector component.
    #[serde(skip)]
    pub index: Vec<NodeId>,
}

/// Picks the nonzero eigenvalue with argument in `[π/K, 3π/K]` closest to
/// `exp(2πi/K)`, plus every eigenvalue within `generator_match_tol` of it.
///
/// Distance ties prefer a positive imaginary part, then spectrum order.
pub fn select_generators(s: &Spectrum, k_min: usize, tol: &ToleranceConfig) -> Result<GeneratingSet> {
    if !s.has_vectors() {
        return Err(Error::MissingEigenvectors);
    }
    if k_min < 2 {
        return Err(Error::validation(format!("K_min must be at least 2, got {k_min}")));
    }
    let k = k_min as f64;
    let (lo, hi) = (PI / k, 3.0 * PI / k);
    let target = Complex64::from_polar(1.0, TAU / k);
    let eigenvalues = s.eigenvalues();
    let primary_index = eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &z)| tol.classify(z) != EigenClass::Zero)
        .filter(|(_, &z)| {
            let a = angle(z);
            lo <= a && a <= hi
        })
        .min_by(|(i, a), (j, b)| {
            (target - **a)
                .norm()
                .total_cmp(&(target - **b).norm())
                .then_with(|| (b.im > 0.0).cmp(&(a.im > 0.0)))
                .then_with(|| i.cmp(j))
        })
        .map(|(i, _)| i)
        .ok_or(Error::DegenerateSpectrum { k_min })?;
    let primary = eigenvalues[primary_index];

    let mut indices = vec![primary_index];
    indices.extend(
        eigenvalues
            .iter()
            .enumerate()
            .filter(|&(i, &z)| i != primary_index && (z - primary).norm() <= tol.generator_match_tol)
            .map(|(i, _)| i),
    );
    Ok(GeneratingSet {
        k_min,
        primary_index,
        primary,
        generating_eigenvalues: indices.iter().map(|&i| eigenvalues[i]).collect(),
        generating_eigenvectors: indices.iter().map(|&i| s.eigenvector(i).unwrap()).collect(),
        indices,
        index: s.index().to_vec(),
    })
}

/// Sector of angle `phi` when the circle is cut into `k` equal parts centred
/// on the `k`-th roots of unity. Exact boundary hits go to the lower index.
pub fn sector_of(phi: f64, k: usize) -> usize {
    let w = TAU / k as f64;
    let q = (phi + w / 2.0).rem_euclid(TAU) / w;
    let c = q.floor();
    let c = if c == q && c > 0.0 { c - 1.0 } else { c } as usize;
    if c >= k {
        0
    } else {
        c
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clustering {
    pub k_min: usize,
    /// Sector cluster of every node that is neither a sink nor disconnected.
    pub labels: BTreeMap<NodeId, usize>,
    pub sink_cluster: BTreeSet<NodeId>,
    pub disconnected_cluster: BTreeSet<NodeId>,
    /// Argument in `[0, 2π)` of each sector-clustered node's component.
    pub phi: BTreeMap<NodeId, f64>,
    /// Generating eigenvector component of each sector-clustered node, after
    /// per-component phase alignment.
    #[serde(skip)]
    pub components: BTreeMap<NodeId, Complex64>,
    /// Non-sink nodes whose component is numerically zero; their sector is
    /// not meaningful.
    pub near_zero: BTreeSet<NodeId>,
    /// Structural sinks whose component is not numerically zero.
    pub sinks_with_nonzero_component: BTreeSet<NodeId>,
}

impl Clustering {
    /// Sector clusters as ascending node-id lists, indexed by label.
    pub fn clusters(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.k_min];
        for (&n, &c) in &self.labels {
            out[c].push(n);
        }
        out
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters().iter().map(Vec::len).collect()
    }
}

/// Weakly connected components of `g` as lists of node positions.
fn weak_components(g: &DirectedGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in g.edges() {
        let a = find(&mut parent, g.index_of(e.src).unwrap());
        let b = find(&mut parent, g.index_of(e.dst).unwrap());
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Bins the generating eigenvector's component arguments into `k_min`
/// sectors.
///
/// Sinks and disconnected nodes of `rg` get their own clusters. When several
/// generators exist (a repeated eigenvalue), each weakly connected component
/// of the reduced graph uses the generator with the largest norm on it, and
/// that restriction is rotated so its largest entry is real positive. This
/// keeps disjoint copies of the same cycle aligned.
pub fn assign_clusters(
    gen: &GeneratingSet,
    rg: &ReducedGraph,
    component_zero_tol: f64,
) -> Result<Clustering> {
    let k = gen.k_min;
    let g = rg.graph();
    if gen.index.as_slice() != g.nodes() {
        return Err(Error::validation("generating eigenvectors do not match the reduced graph"));
    }
    if !(component_zero_tol > 0.0) {
        return Err(Error::validation("component_zero_tol must be positive"));
    }
    let all_small = gen
        .generating_eigenvectors
        .iter()
        .all(|v| v.iter().all(|z| z.norm() <= component_zero_tol));
    if all_small {
        return Err(Error::DegenerateEigenvector);
    }

    let mut out = Clustering {
        k_min: k,
        labels: BTreeMap::new(),
        sink_cluster: BTreeSet::new(),
        disconnected_cluster: BTreeSet::new(),
        phi: BTreeMap::new(),
        components: BTreeMap::new(),
        near_zero: BTreeSet::new(),
        sinks_with_nonzero_component: BTreeSet::new(),
    };
    for comp in weak_components(g) {
        let restricted_norm = |v: &Vec<Complex64>| comp.iter().map(|&i| v[i].norm_sqr()).sum::<f64>();
        let v = gen
            .generating_eigenvectors
            .iter()
            .max_by(|a, b| restricted_norm(a).total_cmp(&restricted_norm(b)).then(std::cmp::Ordering::Greater))
            .unwrap();
        let max = comp.iter().map(|&i| v[i].norm()).fold(0.0, f64::max);
        let pivot = comp.iter().copied().find(|&i| max > 0.0 && v[i].norm() >= max * (1.0 - 1e-9));
        let rot = pivot.map_or(Complex64::new(1.0, 0.0), |p| v[p].conj() / v[p].norm());

        for &i in &comp {
            let id = g.nodes()[i];
            let z = if Some(i) == pivot {
                Complex64::new(v[i].norm(), 0.0)
            } else {
                v[i] * rot
            };
            let small = z.norm() <= component_zero_tol;
            if rg.is_disconnected(id) {
                out.disconnected_cluster.insert(id);
            } else if rg.is_sink(id) {
                out.sink_cluster.insert(id);
                if !small {
                    out.sinks_with_nonzero_component.insert(id);
                }
            } else {
                let phi = angle(z);
                if small {
                    out.near_zero.insert(id);
                }
                out.labels.insert(id, sector_of(phi, k));
                out.phi.insert(id, phi);
                out.components.insert(id, z);
            }
        }
    }
    if !out.near_zero.is_empty() {
        log::warn!("{} non-sink nodes have numerically zero eigenvector components", out.near_zero.len());
    }
    if !out.sinks_with_nonzero_component.is_empty() {
        log::warn!(
            "{} sinks have nonzero generating eigenvector components",
            out.sinks_with_nonzero_component.len()
        );
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RatioMode {
    /// Divide by the number of nodes in the source cluster.
    EdgesPerNode,
    /// Divide by the number of edges inside the source cluster (at least 1).
    EdgesPerInternalEdge,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioTable {
    pub mode: RatioMode,
    /// `cells[x][y]` = edges from cluster `x` to cluster `y` over the
    /// denominator of `x`.
    pub cells: Vec<Vec<f64>>,
    pub counts: Vec<Vec<usize>>,
    pub cluster_sizes: Vec<usize>,
}

fn edge_counts(g: &DirectedGraph, clusters: &[Vec<NodeId>]) -> Vec<Vec<usize>> {
    let label: BTreeMap<NodeId, usize> = clusters
        .iter()
        .enumerate()
        .flat_map(|(c, ns)| ns.iter().map(move |&n| (n, c)))
        .collect();
    let k = clusters.len();
    let mut counts = vec![vec![0usize; k]; k];
    for e in g.edges() {
        if let (Some(&x), Some(&y)) = (label.get(&e.src), label.get(&e.dst)) {
            counts[x][y] += 1;
        }
    }
    counts
}

/// Edge-count ratios between clusters of `g`. Edges touching nodes outside
/// every cluster are ignored; self-loops count as internal edges.
pub fn ratio_table(g: &DirectedGraph, clusters: &[Vec<NodeId>], mode: RatioMode) -> RatioTable {
    let counts = edge_counts(g, clusters);
    let cells = counts
        .iter()
        .enumerate()
        .map(|(x, row)| {
            let denom = match mode {
                RatioMode::EdgesPerNode => clusters[x].len() as f64,
                RatioMode::EdgesPerInternalEdge => row[x].max(1) as f64,
            };
            if clusters[x].is_empty() {
                log::warn!("cluster {x} is empty; its ratio row is zero");
                return vec![0.0; row.len()];
            }
            row.iter().map(|&c| c as f64 / denom).collect()
        })
        .collect();
    RatioTable {
        mode,
        cells,
        counts,
        cluster_sizes: clusters.iter().map(Vec::len).collect(),
    }
}

/// Order in which nodes are kept when trimming a cluster.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrimRank {
    /// Largest eigenvector component modulus first.
    #[default]
    MagnitudeDesc,
    /// Smallest real part first.
    RealAsc,
}

impl FromStr for TrimRank {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "magnitude" | "magnitude_desc" => Ok(TrimRank::MagnitudeDesc),
            "real" | "real_asc" => Ok(TrimRank::RealAsc),
            _ => Err(Error::validation(format!("unknown trim rank {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub fraction: f64,
    pub objective: f64,
    /// `ratios[x][y]` = edges `x → y` over `max(1, edges inside x)`.
    pub ratios: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrimResult {
    pub fraction: f64,
    pub objective: f64,
    /// Kept nodes per cluster at the best fraction, disjoint nodes removed.
    pub trimmed_clusters: Vec<Vec<NodeId>>,
    /// Kept nodes left without any edge to another kept node.
    pub dropped_disjoint: BTreeSet<NodeId>,
    /// Share of clustered nodes that survive trimming and the disjoint drop.
    pub fraction_after_drop: f64,
    pub rank: TrimRank,
    pub objective_curve: Vec<CurvePoint>,
}

/// Sweeps the kept fraction `ρ` over `step, 2·step, …, 1` and keeps the
/// `⌈ρ·|C|⌉` top-ranked nodes of every cluster. The objective is the sum of
/// `edges(X → X+1) / max(1, edges inside X)` around the cycle of clusters.
/// Equal objectives resolve toward the larger fraction.
pub fn trim_clusters(g: &DirectedGraph, clustering: &Clustering, rank: TrimRank, step: f64) -> Result<TrimResult> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::validation(format!("trim step must lie in (0, 1], got {step}")));
    }
    let clusters = clustering.clusters();
    let k = clusters.len();
    if k < 2 {
        return Err(Error::validation("trimming needs at least two clusters"));
    }
    for (c, members) in clusters.iter().enumerate() {
        if members.is_empty() {
            log::warn!("cluster {c} is empty");
        }
    }

    // position of each node in its cluster's keep order
    let mut order_of: BTreeMap<NodeId, (usize, usize)> = BTreeMap::new();
    let mut ranked = Vec::with_capacity(k);
    for (c, members) in clusters.iter().enumerate() {
        let mut m = members.clone();
        let z = |n: &NodeId| clustering.components.get(n).copied().unwrap_or_default();
        match rank {
            TrimRank::MagnitudeDesc => m.sort_by(|a, b| z(b).norm().total_cmp(&z(a).norm()).then(a.cmp(b))),
            TrimRank::RealAsc => m.sort_by(|a, b| z(a).re.total_cmp(&z(b).re).then(a.cmp(b))),
        }
        for (pos, &n) in m.iter().enumerate() {
            order_of.insert(n, (c, pos));
        }
        ranked.push(m);
    }
    let edges: Vec<((usize, usize), (usize, usize))> = g
        .edges()
        .iter()
        .filter_map(|e| Some((*order_of.get(&e.src)?, *order_of.get(&e.dst)?)))
        .collect();

    let steps = (1.0 / step).round().max(1.0) as usize;
    let keep_counts = |rho: f64| -> Vec<usize> {
        clusters
            .iter()
            .map(|c| ((rho * c.len() as f64 - 1e-9).ceil().max(0.0) as usize).min(c.len()))
            .collect()
    };
    let mut curve = Vec::with_capacity(steps);
    for i in 1..=steps {
        let fraction = if i == steps { 1.0 } else { i as f64 * step };
        let keep = keep_counts(fraction);
        let mut counts = vec![vec![0usize; k]; k];
        for &((x, px), (y, py)) in &edges {
            if px < keep[x] && py < keep[y] {
                counts[x][y] += 1;
            }
        }
        let ratios: Vec<Vec<f64>> = counts
            .iter()
            .enumerate()
            .map(|(x, row)| {
                let d = row[x].max(1) as f64;
                row.iter().map(|&c| c as f64 / d).collect()
            })
            .collect();
        let objective = (0..k).map(|x| ratios[x][(x + 1) % k]).sum();
        curve.push(CurvePoint {
            fraction,
            objective,
            ratios,
        });
    }
    let best = curve
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.objective.total_cmp(&b.objective).then(i.cmp(j)))
        .map(|(i, _)| i)
        .unwrap();
    let fraction = curve[best].fraction;
    let objective = curve[best].objective;

    let keep = keep_counts(fraction);
    let kept: BTreeSet<NodeId> = ranked
        .iter()
        .zip(&keep)
        .flat_map(|(m, &n)| m[..n].iter().copied())
        .collect();
    let mut linked = BTreeSet::new();
    for e in g.edges() {
        if e.src != e.dst && kept.contains(&e.src) && kept.contains(&e.dst) {
            linked.insert(e.src);
            linked.insert(e.dst);
        }
    }
    let dropped_disjoint: BTreeSet<NodeId> = kept.difference(&linked).copied().collect();
    let trimmed_clusters: Vec<Vec<NodeId>> = ranked
        .iter()
        .zip(&keep)
        .map(|(m, &n)| {
            let mut c: Vec<NodeId> = m[..n].iter().copied().filter(|x| !dropped_disjoint.contains(x)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let total: usize = clusters.iter().map(Vec::len).sum();
    let survivors: usize = trimmed_clusters.iter().map(Vec::len).sum();
    Ok(TrimResult {
        fraction,
        objective,
        trimmed_clusters,
        dropped_disjoint,
        fraction_after_drop: survivors as f64 / total.max(1) as f64,
        rank,
        objective_curve: curve,
    })
}

/// Which part of the reduced graph is clustered.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterScope {
    /// The whole source-stripped graph.
    #[default]
    Full,
    /// Only the largest strongly connected component of the stripped graph.
    LargestScc,
}

impl FromStr for ClusterScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ClusterScope::Full),
            "largest_scc" | "largest-scc" | "scc" => Ok(ClusterScope::LargestScc),
            _ => Err(Error::validation(format!("unknown scope {s:?}"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig {
    pub scope: ClusterScope,
    pub tolerances: ToleranceConfig,
    pub k_cap: usize,
    pub component_zero_tol: f64,
    pub trim_step: f64,
    pub trim_rank: TrimRank,
}

impl Default for ClusterConfig {
    fn default() -> Self {
        ClusterConfig {
            scope: ClusterScope::Full,
            tolerances: ToleranceConfig::default(),
            k_cap: 50,
            component_zero_tol: 1e-8,
            trim_step: 0.001,
            trim_rank: TrimRank::MagnitudeDesc,
        }
    }
}

/// Everything produced by one clustering run.
#[derive(Clone, Debug, Serialize)]
pub struct ClusterAnalysis {
    pub scope: ClusterScope,
    /// The graph that was clustered, after source stripping.
    pub reduced: ReducedGraph,
    #[serde(skip)]
    pub spectrum: Spectrum,
    pub kmin: KminSearchResult,
    pub generators: GeneratingSet,
    pub clustering: Clustering,
    pub ratios_per_node: RatioTable,
    pub ratios_per_internal_edge: RatioTable,
    pub trim: TrimResult,
}

/// Reduced graph for the requested scope.
pub fn scoped_reduction(g: &DirectedGraph, scope: ClusterScope) -> ReducedGraph {
    let rg = strip_sources(g);
    match scope {
        ClusterScope::Full => rg,
        ClusterScope::LargestScc => {
            let sccs = scc(rg.graph());
            let keep: BTreeSet<NodeId> = sccs.largest().unwrap_or(&[]).iter().copied().collect();
            strip_sources(&rg.graph().induced_subgraph(&keep))
        }
    }
}

/// Strip, decompose, search `K_min`, cluster, tabulate and trim.
pub fn analyze_clusters(g: &DirectedGraph, cfg: &ClusterConfig) -> Result<ClusterAnalysis> {
    cfg.tolerances.validate()?;
    let reduced = scoped_reduction(g, cfg.scope);
    if reduced.kept.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let spectrum = eig(&build_recurrence_matrix(&reduced), true)?;
    let kmin = find_kmin(&spectrum, &cfg.tolerances, cfg.k_cap)?;
    let generators = select_generators(&spectrum, kmin.k_min, &cfg.tolerances)?;
    let clustering = assign_clusters(&generators, &reduced, cfg.component_zero_tol)?;
    let clusters = clustering.clusters();
    let ratios_per_node = ratio_table(reduced.graph(), &clusters, RatioMode::EdgesPerNode);
    let ratios_per_internal_edge = ratio_table(reduced.graph(), &clusters, RatioMode::EdgesPerInternalEdge);
    let trim = trim_clusters(reduced.graph(), &clustering, cfg.trim_rank, cfg.trim_step)?;
    Ok(ClusterAnalysis {
        scope: cfg.scope,
        reduced,
        spectrum,
        kmin,
        generators,
        clustering,
        ratios_per_node,
        ratios_per_internal_edge,
        trim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(d: usize) -> Spectrum {
        Spectrum::from_eigenvalues((0..d).map(|j| Complex64::from_polar(1.0, TAU * j as f64 / d as f64)).collect())
    }

    fn cycle(d: u64) -> DirectedGraph {
        DirectedGraph::from_pairs((0..d).map(|i| (i, (i + 1) % d)))
    }

    #[test]
    fn kmin_of_pure_cycles() {
        let tol = ToleranceConfig::default();
        let r = find_kmin(&roots(3), &tol, 50).unwrap();
        assert_eq!(r.k_min, 3);
        assert!(r.objective[&3].abs() < 1e-12);
        let r = find_kmin(&roots(2), &tol, 50).unwrap();
        assert_eq!(r.k_min, 2);
        assert!(r.objective[&2].abs() < 1e-12);
    }

    #[test]
    fn kmin_prefers_the_full_order_over_divisors() {
        let r = find_kmin(&roots(4), &ToleranceConfig::default(), 50).unwrap();
        assert!(r.objective[&2] < 1e-12);
        assert_eq!(r.k_min, 4);
    }

    #[test]
    fn kmin_objective_can_exceed_one() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
        let r = find_kmin(&s, &ToleranceConfig::default(), 50).unwrap();
        assert!((r.objective[&2] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kmin_needs_two_nonzero_eigenvalues() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        assert!(matches!(find_kmin(&s, &ToleranceConfig::default(), 50), Err(Error::NoCycle)));
    }

    #[test]
    fn kmin_respects_cap() {
        let r = find_kmin(&roots(12), &ToleranceConfig::default(), 6).unwrap();
        assert_eq!(r.objective.len(), 5);
        assert_eq!(r.k_min, 6);
    }

    #[test]
    fn sector_boundaries() {
        assert_eq!(sector_of(0.0, 3), 0);
        assert_eq!(sector_of(TAU / 3.0, 3), 1);
        assert_eq!(sector_of(2.0 * TAU / 3.0, 3), 2);
        assert_eq!(sector_of(TAU - 0.1, 3), 0);
        // exactly between sectors 0 and 1 for K = 2
        assert_eq!(sector_of(PI / 2.0, 2), 0);
        assert_eq!(sector_of(PI / 2.0 + 1e-12, 2), 1);
    }

    fn analyze(g: &DirectedGraph) -> ClusterAnalysis {
        analyze_clusters(g, &ClusterConfig::default()).unwrap()
    }

    #[test]
    fn three_cycle_gives_singletons_that_advance() {
        let a = analyze(&cycle(3));
        assert_eq!(a.kmin.k_min, 3);
        let p = a.generators.primary;
        assert!((p - Complex64::from_polar(1.0, TAU / 3.0)).norm() < 1e-9);
        assert_eq!(a.clustering.sizes(), vec![1, 1, 1]);
        let l = &a.clustering.labels;
        for i in 0..3u64 {
            assert_eq!(l[&NodeId((i + 1) % 3)], (l[&NodeId(i)] + 1) % 3);
        }
    }

    #[test]
    fn disjoint_cycles_share_sectors() {
        let mut pairs = Vec::new();
        for c in 0..3u64 {
            for i in 0..4u64 {
                pairs.push((10 * c + i, 10 * c + (i + 1) % 4));
            }
        }
        let g = DirectedGraph::from_pairs(pairs);
        let a = analyze(&g);
        assert_eq!(a.kmin.k_min, 4);
        assert_eq!(a.clustering.sizes(), vec![3, 3, 3, 3]);
        for e in g.edges() {
            let l = &a.clustering.labels;
            assert_eq!(l[&e.dst], (l[&e.src] + 1) % 4);
        }
    }

    #[test]
    fn sinks_and_isolated_nodes_get_their_own_clusters() {
        let mut b = DirectedGraph::builder();
        b.add_edge(1, 2, 1.0).unwrap();
        b.add_edge(2, 1, 1.0).unwrap();
        b.add_edge(2, 3, 1.0).unwrap();
        b.add_node(9);
        let a = analyze(&b.build());
        assert_eq!(a.kmin.k_min, 2);
        assert_eq!(a.clustering.sink_cluster, [NodeId(3)].into());
        assert_eq!(a.clustering.disconnected_cluster, [NodeId(9)].into());
        assert_eq!(a.clustering.labels.len(), 2);
        assert_ne!(a.clustering.labels[&NodeId(1)], a.clustering.labels[&NodeId(2)]);
    }

    #[test]
    fn no_generator_in_band() {
        let r = crate::reduction::RecurrenceMatrix::from_rows(&[vec![0.75, 0.25], vec![0.25, 0.75]]).unwrap();
        let s = eig(&r, true).unwrap();
        let err = select_generators(&s, 2, &ToleranceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateSpectrum { k_min: 2 }));
    }

    #[test]
    fn generators_need_vectors() {
        let err = select_generators(&roots(3), 3, &ToleranceConfig::default()).unwrap_err();
        assert!(matches!(err, Error::MissingEigenvectors));
    }

    #[test]
    fn ratio_table_of_two_cycle() {
        let g = cycle(2);
        let clusters = vec![vec![NodeId(0)], vec![NodeId(1)]];
        let t = ratio_table(&g, &clusters, RatioMode::EdgesPerNode);
        assert_eq!(t.cells, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let t = ratio_table(&g, &clusters, RatioMode::EdgesPerInternalEdge);
        assert_eq!(t.cells, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(t.counts.iter().flatten().sum::<usize>(), 2);
    }

    #[test]
    fn ratio_table_empty_cluster_row_is_zero() {
        let g = cycle(2);
        let t = ratio_table(&g, &[vec![NodeId(0), NodeId(1)], vec![]], RatioMode::EdgesPerNode);
        assert_eq!(t.cells[1], vec![0.0, 0.0]);
        assert_eq!(t.cells[0], vec![1.0, 0.0]);
    }

    #[test]
    fn trimming_a_pure_cycle_keeps_everything() {
        let a = analyze(&cycle(3));
        assert_eq!(a.trim.fraction, 1.0);
        assert!((a.trim.objective - 3.0).abs() < 1e-12);
        assert!(a.trim.dropped_disjoint.is_empty());
        assert_eq!(a.trim.objective_curve.len(), 1000);
    }

    #[test]
    fn full_fraction_objective_matches_ratio_table() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (3, 0), (0, 0)]);
        let a = analyze(&g);
        let k = a.clustering.k_min;
        let full = a.trim.objective_curve.last().unwrap();
        assert_eq!(full.fraction, 1.0);
        let expected: f64 = (0..k).map(|x| a.ratios_per_internal_edge.cells[x][(x + 1) % k]).sum();
        assert!((full.objective - expected).abs() < 1e-12);
    }

    #[test]
    fn trim_step_validation() {
        let a = analyze(&cycle(3));
        let g = a.reduced.graph();
        assert!(trim_clusters(g, &a.clustering, TrimRank::MagnitudeDesc, 0.0).is_err());
        assert!(trim_clusters(g, &a.clustering, TrimRank::MagnitudeDesc, 1.5).is_err());
        let t = trim_clusters(g, &a.clustering, TrimRank::RealAsc, 0.5).unwrap();
        assert_eq!(t.objective_curve.len(), 2);
    }

    #[test]
    fn largest_scc_scope() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 2), (2, 0), (2, 5), (5, 6), (6, 5), (6, 7)]);
        let rg = scoped_reduction(&g, ClusterScope::LargestScc);
        assert_eq!(rg.kept, vec![NodeId(0), NodeId(1), NodeId(2)]);
        let a = analyze_clusters(
            &g,
            &ClusterConfig {
                scope: ClusterScope::LargestScc,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.clustering.sizes(), vec![1, 1, 1]);
    }
}
