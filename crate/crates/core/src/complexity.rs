//! Spectral complexity, total complexity, graph energy and random-graph
//! baselines.

use std::fmt;
use std::str::FromStr;

use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Edge};
use crate::reduction::{build_recurrence_matrix, strip_sources, ReducedGraph};
use crate::spectra::{eig, EigenClass, Spectrum, ToleranceConfig};

/// Which eigenvalues enter the spectral complexity average.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroEigPolicy {
    /// Average only over eigenvalues with `|λ| >= zero_mod_tol`.
    #[default]
    ExcludeZeros,
    /// Average over all eigenvalues; each zero contributes `1 + 1`.
    IncludeZeros,
}

impl FromStr for ZeroEigPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exclude" | "exclude_zeros" | "exclude-zeros" => Ok(ZeroEigPolicy::ExcludeZeros),
            "include" | "include_zeros" | "include-zeros" => Ok(ZeroEigPolicy::IncludeZeros),
            _ => Err(Error::validation(format!("unknown zero-eigenvalue policy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    #[serde(rename = "F")]
    pub f: f64,
    /// Mean of `1 - r` over the selected eigenvalues.
    pub radial_term: f64,
    /// Fraction of selected eigenvalues off the positive real axis.
    pub angular_term: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub policy: ZeroEigPolicy,
    pub tolerances: ToleranceConfig,
}

/// `F = (1/K) Σ [(1 - r_i) + 1{θ_i ≠ 0}]` over the eigenvalues selected by
/// `policy`.
///
/// Eigenvalues classified as one count as exactly `r = 1, θ = 0`; those
/// classified as zero count as `r = 0, θ ≠ 0`. Moduli above one (round-off)
/// are clamped.
pub fn spectral_complexity(s: &Spectrum, tol: &ToleranceConfig, policy: ZeroEigPolicy) -> Result<ComplexityReport> {
    tol.validate()?;
    let mut radial = 0.0;
    let mut off_axis = 0usize;
    let mut k = 0usize;
    for &z in s.eigenvalues() {
        let (dr, off) = match tol.classify(z) {
            EigenClass::Zero => match policy {
                ZeroEigPolicy::ExcludeZeros => continue,
                ZeroEigPolicy::IncludeZeros => (1.0, true),
            },
            EigenClass::One => (0.0, false),
            EigenClass::ThetaZero => (1.0 - z.norm().min(1.0), false),
            EigenClass::ThetaNonzero => (1.0 - z.norm().min(1.0), true),
        };
        radial += dr;
        off_axis += off as usize;
        k += 1;
    }
    if k == 0 {
        return Err(Error::EmptySpectrum);
    }
    let radial_term = radial / k as f64;
    let angular_term = off_axis as f64 / k as f64;
    Ok(ComplexityReport {
        f: radial_term + angular_term,
        radial_term,
        angular_term,
        k,
        policy,
        tolerances: *tol,
    })
}

/// Strip sources, build the recurrence matrix and score its spectrum.
pub fn graph_complexity(g: &DirectedGraph, tol: &ToleranceConfig, policy: ZeroEigPolicy) -> Result<ComplexityReport> {
    let rg = strip_sources(g);
    if rg.kept.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let s = eig(&build_recurrence_matrix(&rg), false)?;
    spectral_complexity(&s, tol, policy)
}

/// Weight `W` of the spectral term in the total complexity.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum SpectralWeight {
    Finite(f64),
    /// The `W → ∞` limit, where `C = F`.
    Infinite,
}

impl SpectralWeight {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SpectralWeight::Finite(w) if !(w >= 0.0) || !w.is_finite() => {
                Err(Error::validation(format!("W must be nonnegative or inf, got {w}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SpectralWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralWeight::Finite(w) => write!(f, "{w}"),
            SpectralWeight::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for SpectralWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "inf" || t == "infinity" {
            return Ok(SpectralWeight::Infinite);
        }
        let w: f64 = t
            .parse()
            .map_err(|_| Error::validation(format!("W must be a number or \"inf\", got {s:?}")))?;
        let w = SpectralWeight::Finite(w);
        w.validate()?;
        Ok(w)
    }
}

impl Serialize for SpectralWeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            SpectralWeight::Finite(w) => s.serialize_f64(w),
            SpectralWeight::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TotalComplexityReport {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "W")]
    pub w: SpectralWeight,
    pub gamma: f64,
    pub sum_alpha: f64,
    pub sum_beta: f64,
    #[serde(rename = "F")]
    pub f: f64,
}

/// `C = (γ (Σα + Σβ) + W F) / (1 + W)`, or `C = F` when `W` is infinite.
pub fn total_complexity(
    f: f64,
    node_weights: &[f64],
    beta_weights: &[f64],
    gamma: f64,
    w: SpectralWeight,
) -> Result<TotalComplexityReport> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::validation(format!("gamma must be positive, got {gamma}")));
    }
    w.validate()?;
    if let Some(a) = node_weights.iter().find(|a| !(**a >= 0.0)) {
        return Err(Error::validation(format!("negative node weight {a}")));
    }
    if let Some(b) = beta_weights.iter().find(|b| !(**b >= 0.0)) {
        return Err(Error::validation(format!("negative edge weight {b}")));
    }
    let sum_alpha: f64 = node_weights.iter().sum();
    let sum_beta: f64 = beta_weights.iter().sum();
    let c = match w {
        SpectralWeight::Infinite => f,
        SpectralWeight::Finite(w) => (gamma * (sum_alpha + sum_beta) + w * f) / (1.0 + w),
    };
    Ok(TotalComplexityReport {
        c,
        w,
        gamma,
        sum_alpha,
        sum_beta,
        f,
    })
}

/// Which edges supply the `β` weights of the total complexity.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaSource {
    /// Edges deleted while stripping sources.
    #[default]
    RemovedEdges,
    /// Every edge of the input graph.
    AllEdges,
}

/// `(α_i over all input nodes, β_j per the chosen source)`.
pub fn complexity_weights(g: &DirectedGraph, rg: &ReducedGraph, beta: BetaSource) -> (Vec<f64>, Vec<f64>) {
    let alphas = g.nodes().iter().map(|&n| g.node_weight(n)).collect();
    let edges: &[Edge] = match beta {
        BetaSource::RemovedEdges => &rg.removed_edges,
        BetaSource::AllEdges => g.edges(),
    };
    (alphas, edges.iter().map(|e| e.weight).collect())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaMode {
    Expectation,
    Max,
}

impl FromStr for GammaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expectation" | "mean" => Ok(GammaMode::Expectation),
            "max" => Ok(GammaMode::Max),
            _ => Err(Error::validation(format!("unknown gamma mode {s:?}"))),
        }
    }
}

/// One member of a graph collection used to calibrate `γ`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphSample {
    pub f: f64,
    /// `Σα + Σβ`.
    pub weight_sum: f64,
}

impl GraphSample {
    pub fn from_graph(g: &DirectedGraph, tol: &ToleranceConfig, policy: ZeroEigPolicy, beta: BetaSource) -> Result<Self> {
        let rg = strip_sources(g);
        let s = eig(&build_recurrence_matrix(&rg), false)?;
        let f = spectral_complexity(&s, tol, policy)?.f;
        let (a, b) = complexity_weights(g, &rg, beta);
        Ok(GraphSample {
            f,
            weight_sum: a.iter().sum::<f64>() + b.iter().sum::<f64>(),
        })
    }
}

/// `γ = E[F] / E[Σα + Σβ]`, or the same ratio with `max` in place of `E`.
pub fn estimate_gamma(samples: &[GraphSample], mode: GammaMode) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::validation("gamma estimation needs at least one graph"));
    }
    let (num, den) = match mode {
        GammaMode::Expectation => {
            let n = samples.len() as f64;
            (
                samples.iter().map(|s| s.f).sum::<f64>() / n,
                samples.iter().map(|s| s.weight_sum).sum::<f64>() / n,
            )
        }
        GammaMode::Max => (
            samples.iter().map(|s| s.f).fold(f64::NEG_INFINITY, f64::max),
            samples.iter().map(|s| s.weight_sum).fold(f64::NEG_INFINITY, f64::max),
        ),
    };
    if !(den > 0.0) {
        return Err(Error::validation("node and edge weights sum to zero, gamma undefined"));
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub energy: f64,
    pub singular_value_sum: f64,
    pub mean_edge_weight: f64,
    pub symmetrized: bool,
}

/// 0/1 adjacency over `g`'s nodes without self-loops, optionally OR-ed with
/// its transpose.
pub fn binary_adjacency(g: &DirectedGraph, symmetrize: bool) -> Mat<f64> {
    let n = g.node_count();
    let mut m = Mat::<f64>::zeros(n, n);
    for e in g.edges().iter().filter(|e| !e.is_self_loop()) {
        let i = g.index_of(e.src).unwrap();
        let j = g.index_of(e.dst).unwrap();
        m[(i, j)] = 1.0;
        if symmetrize {
            m[(j, i)] = 1.0;
        }
    }
    m
}

/// Mean edge weight (over all edges of `g`) times the sum of singular values
/// of the binary adjacency matrix.
pub fn graph_energy(g: &DirectedGraph, symmetrize: bool) -> Result<EnergyReport> {
    if g.edge_count() == 0 {
        log::warn!("graph has no edges; energy is zero");
        return Ok(EnergyReport {
            energy: 0.0,
            singular_value_sum: 0.0,
            mean_edge_weight: 0.0,
            symmetrized: symmetrize,
        });
    }
    let m = binary_adjacency(g, symmetrize);
    let sv = m
        .singular_values()
        .map_err(|_| Error::NonConvergence { hash: 0 })?;
    let singular_value_sum: f64 = sv.iter().sum();
    let mean_edge_weight = g.total_edge_weight() / g.edge_count() as f64;
    Ok(EnergyReport {
        energy: mean_edge_weight * singular_value_sum,
        singular_value_sum,
        mean_edge_weight,
        symmetrized: symmetrize,
    })
}

fn realization_rng(seed: u64, realization: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(realization);
    rng
}

/// Random digraph on nodes `0..n`: each ordered pair `i != j` gets a unit
/// edge independently with probability `avg_degree / n`.
pub fn random_digraph(n: usize, avg_degree: f64, seed: u64) -> Result<DirectedGraph> {
    random_digraph_with(n, avg_degree, &mut realization_rng(seed, 0))
}

fn random_digraph_with<R: Rng>(n: usize, avg_degree: f64, rng: &mut R) -> Result<DirectedGraph> {
    if n == 0 {
        return Err(Error::validation("random graph needs at least one node"));
    }
    if !(avg_degree > 0.0) || avg_degree > n as f64 {
        return Err(Error::validation(format!("average degree must lie in (0, {n}], got {avg_degree}")));
    }
    let p = avg_degree / n as f64;
    let mut b = DirectedGraph::builder();
    for i in 0..n as u64 {
        b.add_node(i);
        for j in 0..n as u64 {
            if i != j && rng.random_bool(p) {
                b.add_edge(i, j, 1.0)?;
            }
        }
    }
    Ok(b.build())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineSummary {
    pub n: usize,
    pub avg_degree: f64,
    pub realizations: usize,
    pub mean_f: f64,
    pub std_f: f64,
    pub mean_radial: f64,
    pub std_radial: f64,
    pub mean_angular: f64,
    pub std_angular: f64,
}

/// Mean and sample standard deviation of `F` and its two terms over
/// independent random digraphs.
///
/// Realization `i` draws from the ChaCha stream `i` of `seed`, so results do
/// not depend on evaluation order.
pub fn random_baseline(
    n: usize,
    avg_degree: f64,
    realizations: usize,
    seed: u64,
    tol: &ToleranceConfig,
    policy: ZeroEigPolicy,
) -> Result<BaselineSummary> {
    if realizations == 0 {
        return Err(Error::validation("at least one realization is required"));
    }
    let run = |i: usize| -> Result<ComplexityReport> {
        let g = random_digraph_with(n, avg_degree, &mut realization_rng(seed, i as u64))?;
        graph_complexity(&g, tol, policy).map_err(|e| Error::Realization {
            index: i,
            source: Box::new(e),
        })
    };
    #[cfg(feature = "parallel")]
    let reports: Vec<ComplexityReport> = {
        use rayon::prelude::*;
        (0..realizations).into_par_iter().map(run).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<ComplexityReport> = (0..realizations).map(run).collect::<Result<_>>()?;

    let (mean_f, std_f) = mean_std(reports.iter().map(|r| r.f));
    let (mean_radial, std_radial) = mean_std(reports.iter().map(|r| r.radial_term));
    let (mean_angular, std_angular) = mean_std(reports.iter().map(|r| r.angular_term));
    Ok(BaselineSummary {
        n,
        avg_degree,
        realizations,
        mean_f,
        std_f,
        mean_radial,
        std_radial,
        mean_angular,
        std_angular,
    })
}

fn mean_std(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    let xs: Vec<f64> = xs.collect();
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::RecurrenceMatrix;
    use num_complex::Complex64;

    fn two_graph(p: f64, policy: ZeroEigPolicy) -> f64 {
        let r = RecurrenceMatrix::from_rows(&[vec![p, 1.0 - p], vec![1.0 - p, p]]).unwrap();
        spectral_complexity(&eig(&r, false).unwrap(), &ToleranceConfig::default(), policy)
            .unwrap()
            .f
    }

    #[test]
    fn identity_has_zero_complexity() {
        for k in [1, 3, 10] {
            let s = Spectrum::from_eigenvalues(vec![Complex64::new(1.0, 0.0); k]);
            let r = spectral_complexity(&s, &ToleranceConfig::default(), ZeroEigPolicy::default()).unwrap();
            assert_eq!(r.f, 0.0);
        }
    }

    #[test]
    fn two_graph_examples() {
        assert!((two_graph(0.25, ZeroEigPolicy::ExcludeZeros) - 0.75).abs() < 1e-12);
        assert!((two_graph(0.75, ZeroEigPolicy::ExcludeZeros) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn zero_policy_changes_k() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let tol = ToleranceConfig::default();
        let ex = spectral_complexity(&s, &tol, ZeroEigPolicy::ExcludeZeros).unwrap();
        let inc = spectral_complexity(&s, &tol, ZeroEigPolicy::IncludeZeros).unwrap();
        assert_eq!((ex.k, ex.f), (1, 0.0));
        assert_eq!((inc.k, inc.f), (2, 1.0));
    }

    #[test]
    fn all_zero_spectrum_is_an_error() {
        let s = Spectrum::from_eigenvalues(vec![Complex64::new(0.0, 0.0)]);
        let err = spectral_complexity(&s, &ToleranceConfig::default(), ZeroEigPolicy::ExcludeZeros).unwrap_err();
        assert!(matches!(err, Error::EmptySpectrum));
    }

    #[test]
    fn total_complexity_limits() {
        let t = total_complexity(0.7, &[1.0, 2.0], &[3.0], 0.5, SpectralWeight::Infinite).unwrap();
        assert_eq!(t.c, 0.7);
        let t = total_complexity(0.7, &[1.0, 2.0], &[3.0], 1.0, SpectralWeight::Finite(0.0)).unwrap();
        assert_eq!(t.c, 6.0);
        assert_eq!((t.sum_alpha, t.sum_beta), (3.0, 3.0));
    }

    #[test]
    fn total_complexity_hand_evaluation() {
        // γ(Σα+Σβ) = 0.9981 with Σα+Σβ = 10; W = 1 halves the blend
        let f = 1.4043;
        let t = total_complexity(f, &[4.0, 6.0], &[], 0.09981, SpectralWeight::Finite(1.0)).unwrap();
        assert!((t.c - (0.9981 + 1.4043) / 2.0).abs() < 1e-12);
        assert!((t.c - 1.2012).abs() < 1e-12);
    }

    #[test]
    fn total_complexity_rejects_negative_weights() {
        assert!(total_complexity(1.0, &[-1.0], &[], 1.0, SpectralWeight::Infinite).is_err());
        assert!(total_complexity(1.0, &[1.0], &[], 0.0, SpectralWeight::Infinite).is_err());
        assert!(total_complexity(1.0, &[1.0], &[], 1.0, SpectralWeight::Finite(-1.0)).is_err());
    }

    #[test]
    fn spectral_weight_parsing() {
        assert_eq!("inf".parse::<SpectralWeight>().unwrap(), SpectralWeight::Infinite);
        assert_eq!("2.5".parse::<SpectralWeight>().unwrap(), SpectralWeight::Finite(2.5));
        assert!("-1".parse::<SpectralWeight>().is_err());
        assert!("x".parse::<SpectralWeight>().is_err());
        let json = serde_json::to_string(&SpectralWeight::Infinite).unwrap();
        assert_eq!(json, "\"inf\"");
    }

    #[test]
    fn gamma_estimates() {
        let one = [GraphSample { f: 1.2, weight_sum: 4.0 }];
        assert!((estimate_gamma(&one, GammaMode::Expectation).unwrap() - 0.3).abs() < 1e-15);

        let same = [GraphSample { f: 1.0, weight_sum: 2.0 }; 2];
        assert_eq!(estimate_gamma(&same, GammaMode::Expectation).unwrap(), 0.5);
        assert_eq!(estimate_gamma(&same, GammaMode::Max).unwrap(), 0.5);

        let mixed = [
            GraphSample { f: 0.5, weight_sum: 1.0 },
            GraphSample { f: 1.5, weight_sum: 3.0 },
        ];
        assert_eq!(estimate_gamma(&mixed, GammaMode::Expectation).unwrap(), 0.5);
        assert_eq!(estimate_gamma(&mixed, GammaMode::Max).unwrap(), 0.5);

        let zero = [GraphSample { f: 1.0, weight_sum: 0.0 }];
        assert!(estimate_gamma(&zero, GammaMode::Max).is_err());
        assert!(estimate_gamma(&[], GammaMode::Max).is_err());
    }

    #[test]
    fn gamma_from_graph_collection() {
        let g = DirectedGraph::from_pairs([(0, 1), (1, 2), (2, 1)]);
        let sample = GraphSample::from_graph(
            &g,
            &ToleranceConfig::default(),
            ZeroEigPolicy::ExcludeZeros,
            BetaSource::RemovedEdges,
        )
        .unwrap();
        // 2-cycle remains: F = 1/2; Σα = 3 nodes, Σβ = 1 removed edge
        assert!((sample.f - 0.5).abs() < 1e-12);
        assert_eq!(sample.weight_sum, 4.0);
        let gamma = estimate_gamma(&[sample], GammaMode::Expectation).unwrap();
        assert!((gamma - 0.125).abs() < 1e-12);
    }

    #[test]
    fn energy_examples() {
        let e = graph_energy(&DirectedGraph::from_pairs([(0, 1)]), false).unwrap();
        assert!((e.singular_value_sum - 1.0).abs() < 1e-12);
        assert!((e.energy - 1.0).abs() < 1e-12);

        let e = graph_energy(&DirectedGraph::from_pairs([(0, 1), (1, 0)]), false).unwrap();
        assert!((e.energy - 2.0).abs() < 1e-12);

        let k3 = DirectedGraph::from_pairs([(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]);
        let e = graph_energy(&k3, false).unwrap();
        assert!((e.singular_value_sum - 4.0).abs() < 1e-12);
        assert!((e.energy - 4.0).abs() < 1e-12);
    }

    #[test]
    fn energy_ignores_self_loops_in_matrix_but_not_in_mean() {
        let mut b = DirectedGraph::builder();
        b.add_edge(0, 1, 2.0).unwrap();
        b.add_edge(1, 1, 4.0).unwrap();
        let e = graph_energy(&b.build(), false).unwrap();
        assert!((e.singular_value_sum - 1.0).abs() < 1e-12);
        assert_eq!(e.mean_edge_weight, 3.0);
        assert!((e.energy - 3.0).abs() < 1e-12);
    }

    #[test]
    fn symmetrized_energy_of_single_edge() {
        // [[0,1],[1,0]] after OR: singular values {1,1}
        let e = graph_energy(&DirectedGraph::from_pairs([(0, 1)]), true).unwrap();
        assert!((e.singular_value_sum - 2.0).abs() < 1e-12);
        assert!(e.symmetrized);
    }

    #[test]
    fn edgeless_energy_is_zero() {
        let mut b = DirectedGraph::builder();
        b.add_node(0);
        assert_eq!(graph_energy(&b.build(), false).unwrap().energy, 0.0);
    }

    #[test]
    fn random_digraph_determinism_and_bounds() {
        let a = random_digraph(50, 4.0, 7).unwrap();
        let b = random_digraph(50, 4.0, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_digraph(50, 4.0, 8).unwrap());
        assert!(a.edges().iter().all(|e| !e.is_self_loop()));
        assert_eq!(a.node_count(), 50);

        let full = random_digraph(6, 6.0, 1).unwrap();
        assert_eq!(full.edge_count(), 30);

        assert!(random_digraph(10, 11.0, 0).is_err());
        assert!(random_digraph(10, 0.0, 0).is_err());
    }

    #[test]
    fn random_baseline_needs_realizations() {
        let tol = ToleranceConfig::default();
        assert!(random_baseline(10, 2.0, 0, 1, &tol, ZeroEigPolicy::default()).is_err());
        let s = random_baseline(30, 3.0, 3, 1, &tol, ZeroEigPolicy::default()).unwrap();
        assert!(s.mean_f > 0.0 && s.mean_f < 2.0);
        assert_eq!(s, random_baseline(30, 3.0, 3, 1, &tol, ZeroEigPolicy::default()).unwrap());
    }
}
