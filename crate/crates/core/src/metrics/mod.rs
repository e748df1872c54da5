//! Per-player centrality and clustering, and graph-level statistics.
//!
//! Path-based measures use hop counts and ignore weights; only the local
//! clustering coefficient reads edge weights.

mod betweenness;
mod clustering;
mod histogram;
mod paths;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::InteractionGraph;

pub use betweenness::{betweenness, PairConvention};
pub use clustering::{global_clustering, local_clustering, mean_local_clustering, ClusteringMode};
pub use histogram::{Bins, Histogram};
pub use paths::{avg_path_length, bfs_distances, closeness, reach_all, Reach};

/// Total degree (in + out) per node.
pub fn degree(graph: &InteractionGraph) -> Vec<u32> {
    let mut deg: Vec<u32> = (0..graph.node_count())
        .map(|i| graph.out_edges(i).len() as u32)
        .collect();
    for i in 0..graph.node_count() {
        for j in graph.neighbors(i) {
            deg[j] += 1;
        }
    }
    deg
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MetricOptions {
    pub pair_convention: PairConvention,
    pub clustering_mode: ClusteringMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerMetrics {
    pub player_id: String,
    pub name: String,
    pub degree: u32,
    /// `degree / 2`: distinct teammates.
    pub co_players: u32,
    pub betweenness: f64,
    /// `None` when the player reaches no one.
    pub closeness: Option<f64>,
    pub local_clustering: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub directed_edge_count: usize,
    pub avg_path_length: Option<f64>,
    pub ln_n: f64,
    pub global_clustering: f64,
    pub mean_local_clustering: f64,
    pub mean_degree: f64,
    pub max_degree: u32,
    pub mean_betweenness: f64,
    pub max_betweenness: f64,
    pub mean_closeness: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub options: MetricOptions,
    pub players: Vec<PlayerMetrics>,
    pub graph: GraphStats,
}

fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    if n == 0 {
        0.0
    } else {
        values.sum::<f64>() / n as f64
    }
}

impl MetricReport {
    pub fn compute(graph: &InteractionGraph, options: MetricOptions) -> Self {
        let degrees = degree(graph);
        let between = betweenness(graph, options.pair_convention);
        let reach = reach_all(graph);
        let close = paths::closeness_from_reach(&reach);
        let clustering = local_clustering(graph, options.clustering_mode);

        let players: Vec<PlayerMetrics> = (0..graph.node_count())
            .map(|i| PlayerMetrics {
                player_id: graph.id(i).to_string(),
                name: graph.label(i).to_string(),
                degree: degrees[i],
                co_players: degrees[i] / 2,
                betweenness: between[i],
                closeness: close[i],
                local_clustering: clustering[i],
            })
            .collect();

        let defined: Vec<f64> = close.iter().flatten().copied().collect();
        let n = graph.node_count();
        let stats = GraphStats {
            node_count: n,
            directed_edge_count: graph.directed_edge_count(),
            avg_path_length: paths::avg_from_reach(&reach),
            ln_n: (n as f64).ln(),
            global_clustering: global_clustering(graph),
            mean_local_clustering: mean(clustering.iter().copied()),
            mean_degree: mean(degrees.iter().map(|&d| f64::from(d))),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            mean_betweenness: mean(between.iter().copied()),
            max_betweenness: between.iter().copied().fold(0.0, f64::max),
            mean_closeness: (!defined.is_empty()).then(|| mean(defined.iter().copied())),
        };
        MetricReport {
            options,
            players,
            graph: stats,
        }
    }

    pub fn player(&self, id: &str) -> Option<&PlayerMetrics> {
        self.players.iter().find(|p| p.player_id == id)
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.players.iter().map(|p| f64::from(p.degree)).collect()
    }

    pub fn betweenness_values(&self) -> Vec<f64> {
        self.players.iter().map(|p| p.betweenness).collect()
    }

    /// Closeness with unreachable rows dropped.
    pub fn closeness_values(&self) -> Vec<f64> {
        self.players.iter().filter_map(|p| p.closeness).collect()
    }

    pub fn clustering_values(&self) -> Vec<f64> {
        self.players.iter().map(|p| p.local_clustering).collect()
    }

    /// `id,name,degree,betweenness,closeness,clustering`; undefined closeness
    /// is left empty.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let _ = writer.write_record(["id", "name", "degree", "betweenness", "closeness", "clustering"]);
        for p in &self.players {
            let _ = writer.write_record([
                p.player_id.clone(),
                p.name.clone(),
                p.degree.to_string(),
                format!("{:.6}", p.betweenness),
                p.closeness.map(|c| format!("{c:.8}")).unwrap_or_default(),
                format!("{:.6}", p.local_clustering),
            ]);
        }
        String::from_utf8(writer.into_inner().unwrap_or_default()).unwrap_or_default()
    }

    /// Histograms for the four per-player measures.
    pub fn histograms(&self) -> Vec<Histogram> {
        let mut out = Vec::new();
        let specs: [(&str, Vec<f64>, Bins); 4] = [
            ("degree", self.degrees(), Bins::Width(20.0)),
            ("betweenness", self.betweenness_values(), Bins::Width(500.0)),
            ("closeness", self.closeness_values(), Bins::Width(0.0001)),
            ("clustering", self.clustering_values(), Bins::Width(0.1)),
        ];
        for (name, values, bins) in specs {
            if let Ok(h) = Histogram::new(name, &values, &bins) {
                out.push(h);
            }
        }
        out
    }

    /// One-line human summary of the graph-level statistics.
    pub fn describe(&self) -> String {
        let g = &self.graph;
        let mut s = String::new();
        let _ = write!(
            s,
            "N={} directed_edges={} mean_degree={:.2} max_degree={} ",
            g.node_count, g.directed_edge_count, g.mean_degree, g.max_degree
        );
        if let Some(apl) = g.avg_path_length {
            let _ = write!(s, "avg_path_length={apl:.4} ");
        }
        let _ = write!(s, "ln_N={:.4} global_clustering={:.4}", g.ln_n, g.global_clustering);
        s
    }
}
