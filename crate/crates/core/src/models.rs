//! Size-matched Erdős–Rényi, Watts–Strogatz and Barabási–Albert reference
//! graphs and the small-world comparison against an observed network.
//!
//! Generated graphs carry unit weights on reciprocal edge pairs, so they run
//! through the same metric code as the teammate network. Each run draws from
//! its own ChaCha stream keyed by `(seed, kind, run)`.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::InteractionGraph;
use crate::metrics::{self, Bins, Histogram};

pub const DEFAULT_WS_REWIRE_P: f64 = 0.05;
pub const DEFAULT_RUNS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "ER")]
    ErdosRenyi,
    #[serde(rename = "WS")]
    WattsStrogatz,
    #[serde(rename = "BA")]
    BarabasiAlbert,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::ErdosRenyi,
        ModelKind::WattsStrogatz,
        ModelKind::BarabasiAlbert,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::ErdosRenyi => "ER",
            ModelKind::WattsStrogatz => "WS",
            ModelKind::BarabasiAlbert => "BA",
        }
    }

    fn stream(self) -> u64 {
        match self {
            ModelKind::ErdosRenyi => 1,
            ModelKind::WattsStrogatz => 2,
            ModelKind::BarabasiAlbert => 3,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    /// Undirected pair count to match.
    pub target_pairs: usize,
    /// Rewiring probability, used by Watts–Strogatz only.
    pub ws_rewire_p: f64,
    pub seed: u64,
}

fn max_pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl ModelSpec {
    /// Spec matched to the node and pair counts of `graph`.
    pub fn matched(kind: ModelKind, graph: &InteractionGraph, ws_rewire_p: f64, seed: u64) -> Self {
        ModelSpec {
            kind,
            n: graph.node_count(),
            target_pairs: graph.directed_edge_count() / 2,
            ws_rewire_p,
            seed,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        ModelSpec { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::ModelSpec(format!("n = {} is below 3", self.n)));
        }
        if self.target_pairs > max_pairs(self.n) {
            return Err(Error::ModelSpec(format!(
                "{} pairs exceed the {} possible on {} nodes",
                self.target_pairs,
                max_pairs(self.n),
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.ws_rewire_p) {
            return Err(Error::ModelSpec(format!(
                "rewiring probability {} outside [0, 1]",
                self.ws_rewire_p
            )));
        }
        Ok(())
    }

    /// Even ring degree `2 * round(target_pairs / n)`.
    pub fn ws_ring_degree(&self) -> usize {
        2 * (self.target_pairs as f64 / self.n as f64).round() as usize
    }

    /// Edges added per new node, `round(target_pairs / n)`.
    pub fn ba_attachment(&self) -> usize {
        (self.target_pairs as f64 / self.n as f64).round() as usize
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.kind.stream());
        rng
    }
}

fn expect_kind(spec: &ModelSpec, kind: ModelKind) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::ModelSpec(format!(
            "expected a {kind} spec, got {}",
            spec.kind
        )));
    }
    spec.validate()
}

/// Uniform `G(n, m)` with exactly `target_pairs` pairs.
pub fn gen_er(spec: &ModelSpec) -> Result<InteractionGraph> {
    expect_kind(spec, ModelKind::ErdosRenyi)?;
    let n = spec.n;
    let mut rng = spec.rng();
    let mut picked = index::sample(&mut rng, max_pairs(n), spec.target_pairs).into_vec();
    picked.sort_unstable();
    let pairs: Vec<(usize, usize)> = picked.into_iter().map(|k| decode_pair(n, k)).collect();
    InteractionGraph::from_pairs(n, &pairs)
}

/// Maps `k` in `0..n(n-1)/2` to the `k`-th pair `(i, j)`, `i < j`, in
/// row-major order.
fn decode_pair(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    loop {
        let row = n - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
        i += 1;
    }
}

/// Ring lattice of even degree `k` with each lattice edge rewired with
/// probability `ws_rewire_p`. The pair count stays `n * k / 2`.
pub fn gen_ws(spec: &ModelSpec) -> Result<InteractionGraph> {
    expect_kind(spec, ModelKind::WattsStrogatz)?;
    let n = spec.n;
    let k = spec.ws_ring_degree();
    if k < 2 {
        return Err(Error::ModelSpec(format!("ring degree {k} is below 2")));
    }
    if k >= n {
        return Err(Error::ModelSpec(format!("ring degree {k} must be below n = {n}")));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let mut rng = spec.rng();
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.gen_bool(spec.ws_rewire_p) {
                continue;
            }
            if !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    InteractionGraph::from_pairs(n, &pairs_of(&adj))
}

/// Preferential attachment grown from a complete seed graph of
/// `m + 1` nodes, each later node adding `m` edges.
pub fn gen_ba(spec: &ModelSpec) -> Result<InteractionGraph> {
    expect_kind(spec, ModelKind::BarabasiAlbert)?;
    let n = spec.n;
    let m = spec.ba_attachment();
    if m < 1 {
        return Err(Error::ModelSpec("attachment count rounds to 0".into()));
    }
    if m >= n {
        return Err(Error::ModelSpec(format!("attachment count {m} must be below n = {n}")));
    }
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    // each endpoint appears once per incident edge
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (m * (m + 1) / 2 + (n - m - 1) * m));
    for i in 0..=m {
        for j in i + 1..=m {
            adj[i].insert(j);
            adj[j].insert(i);
            endpoints.extend([i, j]);
        }
    }
    let mut rng = spec.rng();
    for source in m + 1..n {
        let mut targets = BTreeSet::new();
        while targets.len() < m {
            targets.insert(endpoints[rng.gen_range(0..endpoints.len())]);
        }
        for &t in &targets {
            adj[source].insert(t);
            adj[t].insert(source);
            endpoints.extend([source, t]);
        }
    }
    InteractionGraph::from_pairs(n, &pairs_of(&adj))
}

fn pairs_of(adj: &[BTreeSet<usize>]) -> Vec<(usize, usize)> {
    adj.iter()
        .enumerate()
        .flat_map(|(i, set)| set.range(i + 1..).map(move |&j| (i, j)))
        .collect()
}

pub fn generate(spec: &ModelSpec) -> Result<InteractionGraph> {
    match spec.kind {
        ModelKind::ErdosRenyi => gen_er(spec),
        ModelKind::WattsStrogatz => gen_ws(spec),
        ModelKind::BarabasiAlbert => gen_ba(spec),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation; 0 for a single run.
    pub stddev: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let stddev = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Summary { mean, stddev }
    }
}

/// Statistics of one graph (or the summary over seeded runs of a model).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub label: String,
    pub runs: usize,
    pub node_count: usize,
    pub pair_count: Summary,
    pub avg_path_length: Summary,
    /// Transitivity.
    pub global_clustering: Summary,
    pub mean_local_clustering: Summary,
    pub max_degree: Summary,
    /// Degree histogram of the first run.
    pub degree_histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub observed: ComparisonRow,
    pub models: Vec<ComparisonRow>,
    pub ln_n: f64,
    /// Model whose mean path length is nearest the observed one.
    pub closest_path_length: Option<String>,
    /// Model whose mean transitivity is nearest the observed one.
    pub closest_clustering: Option<String>,
}

struct RunStats {
    pairs: f64,
    apl: f64,
    transitivity: f64,
    mean_local: f64,
    max_degree: f64,
    degrees: Vec<f64>,
}

fn run_stats(graph: &InteractionGraph) -> RunStats {
    let degrees: Vec<f64> = metrics::degree(graph).into_iter().map(f64::from).collect();
    RunStats {
        pairs: (graph.directed_edge_count() / 2) as f64,
        apl: metrics::avg_path_length(graph).unwrap_or(f64::NAN),
        transitivity: metrics::global_clustering(graph),
        mean_local: metrics::mean_local_clustering(graph),
        max_degree: degrees.iter().copied().fold(0.0, f64::max),
        degrees,
    }
}

fn row(label: &str, node_count: usize, runs: &[RunStats]) -> Result<ComparisonRow> {
    let pick = |f: fn(&RunStats) -> f64| Summary::of(&runs.iter().map(f).collect::<Vec<_>>());
    Ok(ComparisonRow {
        label: label.to_string(),
        runs: runs.len(),
        node_count,
        pair_count: pick(|r| r.pairs),
        avg_path_length: pick(|r| r.apl),
        global_clustering: pick(|r| r.transitivity),
        mean_local_clustering: pick(|r| r.mean_local),
        max_degree: pick(|r| r.max_degree),
        degree_histogram: Histogram::new("degree", &runs[0].degrees, &Bins::Width(20.0))?,
    })
}

/// Generates `runs` graphs from `spec` (run `r` uses `spec.seed + r`) and
/// summarizes them.
pub fn evaluate(spec: &ModelSpec, runs: usize) -> Result<ComparisonRow> {
    Ok(evaluate_all(std::slice::from_ref(spec), runs)?.remove(0))
}

fn evaluate_all(specs: &[ModelSpec], runs: usize) -> Result<Vec<ComparisonRow>> {
    if specs.is_empty() {
        return Err(Error::ModelSpec("no model specs to compare".into()));
    }
    if runs == 0 {
        return Err(Error::ModelSpec("at least one run is required".into()));
    }
    let jobs: Vec<(usize, u64)> = (0..specs.len())
        .flat_map(|s| (0..runs as u64).map(move |r| (s, r)))
        .collect();
    let results: Vec<RunStats> = jobs
        .par_iter()
        .map(|&(s, r)| {
            let spec = specs[s].with_seed(specs[s].seed.wrapping_add(r));
            generate(&spec).map(|g| run_stats(&g))
        })
        .collect::<Result<_>>()?;
    results
        .chunks(runs)
        .zip(specs)
        .map(|(chunk, spec)| row(spec.kind.label(), spec.n, chunk))
        .collect()
}

/// Runs every spec through [`evaluate`] and compares the results with
/// `observed`.
pub fn compare(observed: &InteractionGraph, specs: &[ModelSpec], runs: usize) -> Result<ComparisonReport> {
    let models = evaluate_all(specs, runs)?;
    let observed_row = row("PSL", observed.node_count(), &[run_stats(observed)])?;

    let closest = |f: fn(&ComparisonRow) -> f64| {
        let target = f(&observed_row);
        models
            .iter()
            .filter(|m| f(m).is_finite())
            .min_by(|a, b| (f(a) - target).abs().total_cmp(&(f(b) - target).abs()))
            .map(|m| m.label.clone())
    };
    Ok(ComparisonReport {
        closest_path_length: closest(|r| r.avg_path_length.mean),
        closest_clustering: closest(|r| r.global_clustering.mean),
        ln_n: (observed.node_count() as f64).ln(),
        observed: observed_row,
        models,
    })
}

impl ComparisonReport {
    pub fn rows(&self) -> impl Iterator<Item = &ComparisonRow> {
        self.models.iter().chain(std::iter::once(&self.observed))
    }

    pub fn row(&self, label: &str) -> Option<&ComparisonRow> {
        self.rows().find(|r| r.label == label)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "label,runs,nodes,pairs_mean,avg_path_length_mean,avg_path_length_sd,\
             global_clustering_mean,global_clustering_sd,mean_local_clustering_mean,\
             mean_local_clustering_sd,max_degree_mean,ln_n\n",
        );
        for r in self.rows() {
            let _ = writeln!(
                out,
                "{},{},{},{:.1},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.1},{:.6}",
                r.label,
                r.runs,
                r.node_count,
                r.pair_count.mean,
                r.avg_path_length.mean,
                r.avg_path_length.stddev,
                r.global_clustering.mean,
                r.global_clustering.stddev,
                r.mean_local_clustering.mean,
                r.mean_local_clustering.stddev,
                r.max_degree.mean,
                self.ln_n
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: ModelKind, n: usize, target_pairs: usize) -> ModelSpec {
        ModelSpec {
            kind,
            n,
            target_pairs,
            ws_rewire_p: DEFAULT_WS_REWIRE_P,
            seed: 7,
        }
    }

    #[test]
    fn decode_covers_every_pair_once() {
        let n = 6;
        let pairs: Vec<_> = (0..max_pairs(n)).map(|k| decode_pair(n, k)).collect();
        let unique: BTreeSet<_> = pairs.iter().collect();
        assert_eq!(unique.len(), 15);
        assert!(pairs.iter().all(|&(i, j)| i < j && j < n));
    }

    #[test]
    fn saturated_er_is_complete() {
        for seed in 0..5 {
            let g = gen_er(&spec(ModelKind::ErdosRenyi, 4, 6).with_seed(seed)).unwrap();
            assert_eq!(g.directed_edge_count(), 12);
        }
        assert!(gen_er(&spec(ModelKind::ErdosRenyi, 4, 7)).is_err());
    }

    #[test]
    fn ba_tree_for_single_attachment() {
        let g = gen_ba(&spec(ModelKind::BarabasiAlbert, 5, 5)).unwrap();
        assert_eq!(spec(ModelKind::BarabasiAlbert, 5, 5).ba_attachment(), 1);
        assert_eq!(g.directed_edge_count() / 2, 4);
        assert!(metrics::reach_all(&g).iter().all(|r| r.reachable == 4));
    }

    #[test]
    fn ws_rejects_oversized_ring() {
        assert!(gen_ws(&spec(ModelKind::WattsStrogatz, 4, 6)).is_err());
        assert!(gen_ws(&spec(ModelKind::WattsStrogatz, 10, 2)).is_err());
    }

    #[test]
    fn wrong_kind_is_rejected() {
        assert!(gen_er(&spec(ModelKind::BarabasiAlbert, 10, 10)).is_err());
    }

    #[test]
    fn ws_full_rewiring_is_deterministic() {
        let s = ModelSpec {
            ws_rewire_p: 1.0,
            ..spec(ModelKind::WattsStrogatz, 30, 60)
        };
        let a = gen_ws(&s).unwrap();
        assert_eq!(a, gen_ws(&s).unwrap());
        assert_eq!(a.directed_edge_count(), 2 * 60);
    }

    #[test]
    fn compare_flags_and_rows() {
        let observed = gen_ba(&spec(ModelKind::BarabasiAlbert, 60, 180)).unwrap();
        let specs: Vec<ModelSpec> = ModelKind::ALL
            .iter()
            .map(|&k| ModelSpec::matched(k, &observed, DEFAULT_WS_REWIRE_P, 1))
            .collect();
        let report = compare(&observed, &specs, 3).unwrap();
        let labels: Vec<&str> = report.rows().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, ["ER", "WS", "BA", "PSL"]);
        assert_eq!(report.row("ER").unwrap().runs, 3);
        assert!(report.closest_clustering.is_some());
        assert_eq!(report.to_csv().lines().count(), 5);
        assert_eq!(report, compare(&observed, &specs, 3).unwrap());
        assert!(compare(&observed, &[], 3).is_err());
    }
}
