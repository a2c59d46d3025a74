//! The JSON report written by every subcommand.

use std::collections::BTreeMap;

use serde::Serialize;
use spectral_complexity::baselines::FiedlerResult;
use spectral_complexity::complexity::{BaselineSummary, ComplexityReport, EnergyReport, TotalComplexityReport};
use spectral_complexity::cycleclust::{ClusterAnalysis, ClusterScope, RatioTable, TrimRank};
use spectral_complexity::reduction::ReducedGraph;
use spectral_complexity::spectra::{PolarSummary, Spectrum};
use spectral_complexity::{Complex64, GraphStats};

#[derive(Serialize)]
pub struct ReportDocument<C: Serialize> {
    pub command: &'static str,
    pub version: &'static str,
    pub config: C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity: Option<ComplexityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_complexity: Option<TotalComplexityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clustering: Option<ClusteringSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiedler: Option<FiedlerSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<EnergyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<Vec<BaselineSummary>>,
}

impl<C: Serialize> ReportDocument<C> {
    pub fn new(command: &'static str, config: C) -> Self {
        ReportDocument {
            command,
            version: env!("CARGO_PKG_VERSION"),
            config,
            graph: None,
            reduction: None,
            spectrum: None,
            complexity: None,
            total_complexity: None,
            clustering: None,
            fiedler: None,
            energy: None,
            baseline: None,
        }
    }
}

#[derive(Serialize)]
pub struct ReductionSummary {
    pub original_nodes: usize,
    pub kept_nodes: usize,
    pub removed_sources: usize,
    pub removed_edges: usize,
    pub removed_edge_weight: f64,
    pub sinks: usize,
    pub disconnected: usize,
}

impl From<&ReducedGraph> for ReductionSummary {
    fn from(rg: &ReducedGraph) -> Self {
        ReductionSummary {
            original_nodes: rg.original_node_count,
            kept_nodes: rg.kept.len(),
            removed_sources: rg.removed_sources.len(),
            removed_edges: rg.removed_edges.len(),
            removed_edge_weight: rg.removed_weight(),
            sinks: rg.sink_selfloops_added.len(),
            disconnected: rg.disconnected.len(),
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumSummary {
    pub dim: usize,
    pub n_zero: usize,
    pub n_one: usize,
    pub n_theta_nonzero: usize,
    pub max_modulus: f64,
    /// Largest modulus among eigenvalues not classified as one.
    pub subdominant_modulus: f64,
    /// Smallest modulus among eigenvalues not classified as zero.
    pub min_nonzero_modulus: f64,
}

impl SpectrumSummary {
    pub fn new(s: &Spectrum, p: &PolarSummary) -> Self {
        use spectral_complexity::spectra::EigenClass;
        let r = |pred: fn(EigenClass) -> bool| p.polar.iter().filter(move |e| pred(e.class)).map(|e| e.r);
        SpectrumSummary {
            dim: s.len(),
            n_zero: p.n_zero,
            n_one: p.n_one,
            n_theta_nonzero: p.n_theta_nonzero,
            max_modulus: p.polar.iter().map(|e| e.r).fold(0.0, f64::max),
            subdominant_modulus: r(|c| c != EigenClass::One).fold(0.0, f64::max),
            min_nonzero_modulus: r(|c| c != EigenClass::Zero).fold(f64::INFINITY, f64::min).min(f64::MAX),
        }
    }
}

#[derive(Serialize)]
pub struct TrimSummary {
    pub fraction: f64,
    pub objective: f64,
    pub fraction_after_drop: f64,
    pub rank: TrimRank,
    pub cluster_sizes: Vec<usize>,
    pub dropped_disjoint: usize,
    pub ratios_per_node: RatioTable,
}

#[derive(Serialize)]
pub struct ClusteringSummary {
    pub scope: ClusterScope,
    pub k_min: usize,
    pub kmin_objective: BTreeMap<usize, f64>,
    pub n_nonzero_eigenvalues: usize,
    pub primary_generator: Complex64,
    pub generators: Vec<Complex64>,
    pub cluster_sizes: Vec<usize>,
    pub sinks: usize,
    pub disconnected: usize,
    pub near_zero_components: usize,
    pub sinks_with_nonzero_component: usize,
    pub ratios_per_node: RatioTable,
    pub ratios_per_internal_edge: RatioTable,
    pub trim: TrimSummary,
}

impl ClusteringSummary {
    pub fn new(a: &ClusterAnalysis, trimmed_ratios: RatioTable) -> Self {
        let c = &a.clustering;
        ClusteringSummary {
            scope: a.scope,
            k_min: a.kmin.k_min,
            kmin_objective: a.kmin.objective.clone(),
            n_nonzero_eigenvalues: a.kmin.n_candidates,
            primary_generator: a.generators.primary,
            generators: a.generators.generating_eigenvalues.clone(),
            cluster_sizes: c.sizes(),
            sinks: c.sink_cluster.len(),
            disconnected: c.disconnected_cluster.len(),
            near_zero_components: c.near_zero.len(),
            sinks_with_nonzero_component: c.sinks_with_nonzero_component.len(),
            ratios_per_node: a.ratios_per_node.clone(),
            ratios_per_internal_edge: a.ratios_per_internal_edge.clone(),
            trim: TrimSummary {
                fraction: a.trim.fraction,
                objective: a.trim.objective,
                fraction_after_drop: a.trim.fraction_after_drop,
                rank: a.trim.rank,
                cluster_sizes: a.trim.trimmed_clusters.iter().map(Vec::len).collect(),
                dropped_disjoint: a.trim.dropped_disjoint.len(),
                ratios_per_node: trimmed_ratios,
            },
        }
    }
}

#[derive(Serialize)]
pub struct FiedlerSummary {
    pub scope: ClusterScope,
    pub nodes: usize,
    pub fiedler_value: f64,
    pub cluster_sizes: Vec<usize>,
    /// Computed on the directed edges.
    pub ratios_per_node: RatioTable,
}

impl FiedlerSummary {
    pub fn new(scope: ClusterScope, r: &FiedlerResult, ratios: RatioTable) -> Self {
        FiedlerSummary {
            scope,
            nodes: r.nodes.len(),
            fiedler_value: r.fiedler_value,
            cluster_sizes: r.clusters().iter().map(Vec::len).collect(),
            ratios_per_node: ratios,
        }
    }
}
