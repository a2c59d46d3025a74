//! WebAssembly bindings for the browser demo in `www/`. Every export returns
//! a JSON string; errors surface as thrown JS exceptions.

use std::io::Cursor;

use serde::Serialize;
use spectral_complexity::complexity::{random_digraph, spectral_complexity, ComplexityReport, ZeroEigPolicy};
use spectral_complexity::cycleclust::{analyze_clusters, ClusterConfig};
use spectral_complexity::export::to_json_string;
use spectral_complexity::ingest::{parse_snap_edge_list, parse_weighted_csv};
use spectral_complexity::reduction::{build_recurrence_matrix, strip_sources, RecurrenceMatrix};
use spectral_complexity::spectra::{eig, Spectrum, ToleranceConfig};
use spectral_complexity::{graph_stats, DirectedGraph, GraphStats, NodeId};
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct SpectrumView {
    /// `[re, im, class]` per eigenvalue.
    eigenvalues: Vec<(f64, f64, &'static str)>,
    complexity: ComplexityReport,
}

impl SpectrumView {
    fn new(s: &Spectrum, policy: ZeroEigPolicy) -> Result<Self, String> {
        let tol = ToleranceConfig::default();
        Ok(SpectrumView {
            eigenvalues: s.eigenvalues().iter().map(|z| (z.re, z.im, tol.classify(*z).as_str())).collect(),
            complexity: spectral_complexity(s, &tol, policy).map_err(|e| e.to_string())?,
        })
    }
}

#[derive(Serialize)]
struct GraphView {
    stats: GraphStats,
    kept_nodes: usize,
    #[serde(flatten)]
    spectrum: SpectrumView,
    clustering: Option<ClusterView>,
    clustering_error: Option<String>,
}

#[derive(Serialize)]
struct ClusterView {
    k_min: usize,
    generator: (f64, f64),
    clusters: Vec<Vec<NodeId>>,
    ratios: Vec<Vec<f64>>,
    trim_fraction: f64,
    trimmed_sizes: Vec<usize>,
    edges: Vec<(NodeId, NodeId)>,
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    to_json_string(v).map_err(|e| e.to_string())
}

/// Two states that stay put with probability `p` and swap otherwise.
pub fn two_graph_json(p: f64) -> Result<String, String> {
    let r = RecurrenceMatrix::from_rows(&[vec![p, 1.0 - p], vec![1.0 - p, p]]).map_err(|e| e.to_string())?;
    let s = eig(&r, false).map_err(|e| e.to_string())?;
    json(&SpectrumView::new(&s, ZeroEigPolicy::IncludeZeros)?)
}

pub fn random_graph_json(n: usize, degree: f64, seed: u64) -> Result<String, String> {
    let g = random_digraph(n, degree, seed).map_err(|e| e.to_string())?;
    let s = eig(&build_recurrence_matrix(&strip_sources(&g)), false).map_err(|e| e.to_string())?;
    json(&SpectrumView::new(&s, ZeroEigPolicy::ExcludeZeros)?)
}

pub fn analyze_edges_json(text: &str, format: &str) -> Result<String, String> {
    let reader = Cursor::new(text.as_bytes());
    let g: DirectedGraph = match format {
        "csv" => parse_weighted_csv(reader),
        _ => parse_snap_edge_list(reader),
    }
    .map_err(|e| e.to_string())?;
    let rg = strip_sources(&g);
    let s = eig(&build_recurrence_matrix(&rg), false).map_err(|e| e.to_string())?;
    let spectrum = SpectrumView::new(&s, ZeroEigPolicy::ExcludeZeros)?;
    let (clustering, clustering_error) = match analyze_clusters(&g, &ClusterConfig::default()) {
        Ok(a) => (
            Some(ClusterView {
                k_min: a.kmin.k_min,
                generator: (a.generators.primary.re, a.generators.primary.im),
                clusters: a.clustering.clusters(),
                ratios: a.ratios_per_node.cells,
                trim_fraction: a.trim.fraction,
                trimmed_sizes: a.trim.trimmed_clusters.iter().map(Vec::len).collect(),
                edges: a.reduced.graph().edges().iter().filter(|e| !e.is_self_loop()).map(|e| (e.src, e.dst)).collect(),
            }),
            None,
        ),
        Err(e) => (None, Some(e.to_string())),
    };
    json(&GraphView {
        stats: graph_stats(&g),
        kept_nodes: rg.kept.len(),
        spectrum,
        clustering,
        clustering_error,
    })
}

#[wasm_bindgen]
pub fn two_graph(p: f64) -> Result<String, JsError> {
    two_graph_json(p).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_graph(n: usize, degree: f64, seed: u32) -> Result<String, JsError> {
    random_graph_json(n, degree, u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze_edges(text: &str, format: &str) -> Result<String, JsError> {
    analyze_edges_json(text, format).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_graph_reports_formula_value() {
        let s = two_graph_json(0.25).unwrap();
        assert!(s.contains("\"F\": 0.75"), "{s}");
    }

    #[test]
    fn three_cycle_is_clustered() {
        let s = analyze_edges_json("0 1\n1 2\n2 0\n", "snap").unwrap();
        assert!(s.contains("\"k_min\": 3"), "{s}");
        assert!(s.contains("\"clustering_error\": null"));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(analyze_edges_json("a b\n", "snap").is_err());
        assert!(random_graph_json(0, 1.0, 1).is_err());
    }
}
