use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::Serialize;
use spectral_complexity::baselines::fiedler_partition;
use spectral_complexity::complexity::{
    complexity_weights, estimate_gamma, graph_energy, random_baseline, spectral_complexity, total_complexity,
    BetaSource, GammaMode, GraphSample, ZeroEigPolicy,
};
use spectral_complexity::cycleclust::{
    analyze_clusters, ratio_table, scoped_reduction, ClusterConfig, ClusterScope, RatioMode,
};
use spectral_complexity::export;
use spectral_complexity::ingest::{parse_node_weights, parse_snap_edge_list, parse_weighted_csv};
use spectral_complexity::reduction::build_recurrence_matrix;
use spectral_complexity::spectra::{eig, polar_classify, ToleranceConfig};
use spectral_complexity::{graph_stats, DirectedGraph, Error, NodeId};

use crate::report::{ClusteringSummary, FiedlerSummary, ReductionSummary, ReportDocument, SpectrumSummary};
use crate::{
    parse_weight, ClusterArgs, ComplexityArgs, EnergyArgs, FiedlerArgs, Format, InputArgs, SweepArgs,
};

type Result<T> = std::result::Result<T, Error>;

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_graph(path: &Path, format: Format) -> Result<DirectedGraph> {
    let r = open(path)?;
    let g = match format {
        Format::Snap => parse_snap_edge_list(r)?,
        Format::Csv => parse_weighted_csv(r)?,
    };
    log::info!("{}: {} nodes, {} edges", path.display(), g.node_count(), g.edge_count());
    Ok(g)
}

fn load(input: &InputArgs) -> Result<DirectedGraph> {
    let g = read_graph(&input.input, input.format)?;
    match &input.node_weights {
        Some(p) => g.with_node_weights(parse_node_weights(open(p)?)?),
        None => Ok(g),
    }
}

struct OutDir(PathBuf);

impl OutDir {
    fn create(path: &Path) -> Result<Self> {
        fs::create_dir_all(path)?;
        Ok(OutDir(path.to_path_buf()))
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        fs::write(self.0.join(name), contents)?;
        Ok(())
    }

    fn json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        self.write(name, &export::to_json_string(value)?)
    }
}

#[derive(Serialize)]
struct ComplexityConfig<'a> {
    input: &'a Path,
    scope: ClusterScope,
    zero_policy: ZeroEigPolicy,
    beta: BetaSource,
    gamma_mode: GammaMode,
    gamma_from: &'a [PathBuf],
    tolerances: ToleranceConfig,
}

pub fn complexity(a: &ComplexityArgs) -> Result<()> {
    let tol = a.tol.config()?;
    let w = parse_weight(&a.w)?;
    let policy = a.zero_policy.into();
    let beta = a.beta.into();
    let scope = a.scope.into();
    let g = load(&a.input)?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let rg = scoped_reduction(&g, scope);
    // weights are counted on the analysed part of the graph
    let target = match scope {
        ClusterScope::Full => g.clone(),
        ClusterScope::LargestScc => rg.graph().clone(),
    };
    let s = eig(&build_recurrence_matrix(&rg), false)?;
    let polar = polar_classify(&s, &tol);
    let report = spectral_complexity(&s, &tol, policy)?;
    let (alphas, betas) = complexity_weights(&target, &rg, beta);

    let gamma = match a.gamma {
        Some(gm) => gm,
        None => {
            let mut samples = vec![GraphSample {
                f: report.f,
                weight_sum: alphas.iter().sum::<f64>() + betas.iter().sum::<f64>(),
            }];
            for p in &a.gamma_from {
                samples.push(GraphSample::from_graph(&read_graph(p, a.input.format)?, &tol, policy, beta)?);
            }
            estimate_gamma(&samples, a.gamma_mode.into())?
        }
    };
    let total = total_complexity(report.f, &alphas, &betas, gamma, w)?;

    let out = OutDir::create(&a.out_dir)?;
    let mut doc = ReportDocument::new(
        "complexity",
        ComplexityConfig {
            input: &a.input.input,
            scope,
            zero_policy: policy,
            beta,
            gamma_mode: a.gamma_mode.into(),
            gamma_from: &a.gamma_from,
            tolerances: tol,
        },
    );
    doc.graph = Some(graph_stats(&g));
    doc.reduction = Some(ReductionSummary::from(&rg));
    doc.spectrum = Some(SpectrumSummary::new(&s, &polar));
    doc.complexity = Some(report);
    doc.total_complexity = Some(total);
    out.json("report.json", &doc)?;
    out.write("eigenvalues.csv", &export::eigenvalues_csv(&s, &tol))?;
    out.write("spectrum.svg", &export::spectrum_svg(&s, &tol))?;
    Ok(())
}

#[derive(Serialize)]
struct ClusterConfigEcho<'a> {
    input: &'a Path,
    #[serde(flatten)]
    cluster: ClusterConfig,
}

#[derive(Serialize)]
struct ClustersFile<'a> {
    k_min: usize,
    clusters: Vec<Vec<NodeId>>,
    sink_cluster: &'a BTreeSet<NodeId>,
    disconnected_cluster: &'a BTreeSet<NodeId>,
    near_zero: &'a BTreeSet<NodeId>,
    trim_fraction: f64,
    trimmed_clusters: &'a [Vec<NodeId>],
    dropped_disjoint: &'a BTreeSet<NodeId>,
    phi: &'a BTreeMap<NodeId, f64>,
}

pub fn cluster(a: &ClusterArgs) -> Result<()> {
    let cfg = ClusterConfig {
        scope: a.scope.into(),
        tolerances: a.tol.config()?,
        k_cap: a.kmax,
        component_zero_tol: a.component_zero_tol,
        trim_step: a.trim_step,
        trim_rank: a.trim_rank.into(),
    };
    if !(cfg.component_zero_tol >= 0.0) {
        return Err(Error::Validation("component-zero-tol must be non-negative".into()));
    }
    let g = load(&a.input)?;
    let an = analyze_clusters(&g, &cfg)?;
    let rgraph = an.reduced.graph();
    let clusters = an.clustering.clusters();
    let trimmed_ratios = ratio_table(rgraph, &an.trim.trimmed_clusters, RatioMode::EdgesPerNode);
    let polar = polar_classify(&an.spectrum, &cfg.tolerances);

    let out = OutDir::create(&a.out_dir)?;
    let mut doc = ReportDocument::new(
        "cluster",
        ClusterConfigEcho {
            input: &a.input.input,
            cluster: cfg,
        },
    );
    doc.graph = Some(graph_stats(&g));
    doc.reduction = Some(ReductionSummary::from(&an.reduced));
    doc.spectrum = Some(SpectrumSummary::new(&an.spectrum, &polar));
    doc.clustering = Some(ClusteringSummary::new(&an, trimmed_ratios));
    out.json("report.json", &doc)?;
    out.json(
        "clusters.json",
        &ClustersFile {
            k_min: an.clustering.k_min,
            clusters: clusters.clone(),
            sink_cluster: &an.clustering.sink_cluster,
            disconnected_cluster: &an.clustering.disconnected_cluster,
            near_zero: &an.clustering.near_zero,
            trim_fraction: an.trim.fraction,
            trimmed_clusters: &an.trim.trimmed_clusters,
            dropped_disjoint: &an.trim.dropped_disjoint,
            phi: &an.clustering.phi,
        },
    )?;
    out.write("eigenvalues.csv", &export::eigenvalues_csv(&an.spectrum, &cfg.tolerances))?;
    out.write("spectrum.svg", &export::spectrum_svg(&an.spectrum, &cfg.tolerances))?;
    out.write("ratios.csv", &export::ratio_csv(&an.ratios_per_node))?;
    out.write("ratios_internal.csv", &export::ratio_csv(&an.ratios_per_internal_edge))?;
    out.write("curve.csv", &export::curve_csv(&an.trim))?;
    out.write("clusters.dot", &export::clusters_dot(rgraph, &clusters))?;
    out.write("trimmed.dot", &export::clusters_dot(rgraph, &an.trim.trimmed_clusters))?;
    Ok(())
}

#[derive(Serialize)]
struct EnergyConfig<'a> {
    input: &'a Path,
    symmetrize: bool,
}

pub fn energy(a: &EnergyArgs) -> Result<()> {
    let g = load(&a.input)?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let e = graph_energy(&g, a.symmetrize)?;
    let out = OutDir::create(&a.out_dir)?;
    let mut doc = ReportDocument::new(
        "energy",
        EnergyConfig {
            input: &a.input.input,
            symmetrize: a.symmetrize,
        },
    );
    doc.graph = Some(graph_stats(&g));
    doc.energy = Some(e);
    out.json("report.json", &doc)
}

#[derive(Serialize)]
struct FiedlerConfig<'a> {
    input: &'a Path,
    scope: ClusterScope,
}

#[derive(Serialize)]
struct FiedlerClusters {
    clusters: Vec<Vec<NodeId>>,
    fiedler_value: f64,
    fiedler_vector: Vec<(NodeId, f64)>,
}

pub fn fiedler(a: &FiedlerArgs) -> Result<()> {
    let scope = a.scope.into();
    let g = load(&a.input)?;
    let rg = scoped_reduction(&g, scope);
    let sub = rg.graph();
    let r = fiedler_partition(sub)?;
    let clusters = r.clusters();
    let ratios = ratio_table(sub, &clusters, RatioMode::EdgesPerNode);

    let out = OutDir::create(&a.out_dir)?;
    out.write("ratios.csv", &export::ratio_csv(&ratios))?;
    out.write("clusters.dot", &export::clusters_dot(sub, &clusters))?;
    out.json(
        "clusters.json",
        &FiedlerClusters {
            clusters: clusters.clone(),
            fiedler_value: r.fiedler_value,
            fiedler_vector: r.nodes.iter().copied().zip(r.fiedler_vector.iter().copied()).collect(),
        },
    )?;
    let mut doc = ReportDocument::new(
        "fiedler",
        FiedlerConfig {
            input: &a.input.input,
            scope,
        },
    );
    doc.graph = Some(graph_stats(&g));
    doc.reduction = Some(ReductionSummary::from(&rg));
    doc.fiedler = Some(FiedlerSummary::new(scope, &r, ratios));
    out.json("report.json", &doc)
}

/// Accepts `a..b` (inclusive, unit steps) or a comma separated list.
pub fn parse_degrees(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Validation(format!("cannot parse degree list {s:?}"));
    let degrees: Vec<f64> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        (lo..=hi).map(f64::from).collect()
    } else {
        s.split(',').map(|d| d.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if degrees.is_empty() {
        return Err(Error::Validation(format!("degree list {s:?} is empty")));
    }
    Ok(degrees)
}

#[derive(Serialize)]
struct SweepConfig<'a> {
    n: usize,
    degrees: &'a [f64],
    realizations: usize,
    seed: u64,
    zero_policy: ZeroEigPolicy,
    tolerances: ToleranceConfig,
}

/// Every degree reuses the same seed, so neighbouring degrees see coupled
/// random graphs and the curve is smoother than with independent draws.
pub fn baseline_sweep(a: &SweepArgs) -> Result<()> {
    let tol = a.tol.config()?;
    let policy = a.zero_policy.into();
    let degrees = parse_degrees(&a.degrees)?;
    let mut rows = Vec::with_capacity(degrees.len());
    for &d in &degrees {
        let row = random_baseline(a.n, d, a.realizations, a.seed, &tol, policy)?;
        log::info!("degree {d}: mean F {:.4}", row.mean_f);
        rows.push(row);
    }
    let out = OutDir::create(&a.out_dir)?;
    out.write("baseline.csv", &export::baseline_csv(&rows))?;
    out.write("baseline.svg", &export::baseline_svg(&rows))?;
    let mut doc = ReportDocument::new(
        "baseline-sweep",
        SweepConfig {
            n: a.n,
            degrees: &degrees,
            realizations: a.realizations,
            seed: a.seed,
            zero_policy: policy,
            tolerances: tol,
        },
    );
    doc.baseline = Some(rows);
    out.json("report.json", &doc)
}
