//! Hop-count distances, closeness and average path length.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::InteractionGraph;

/// Sources handled per parallel task. Partial results are combined in
/// chunk order so floating-point sums do not depend on thread count.
pub(crate) const SOURCE_CHUNK: usize = 32;

/// BFS hop distances from `source` along out-edges. Unreachable nodes are
/// `None`.
pub fn bfs_distances(graph: &InteractionGraph, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.node_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let next = dist[v].map(|d| d + 1);
        for w in graph.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Sum of distances to reachable peers and the number of such peers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Reach {
    pub distance_sum: u64,
    pub reachable: usize,
}

pub fn reach_all(graph: &InteractionGraph) -> Vec<Reach> {
    (0..graph.node_count())
        .into_par_iter()
        .map(|s| {
            bfs_distances(graph, s)
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != s)
                .filter_map(|(_, d)| *d)
                .fold(Reach::default(), |acc, d| Reach {
                    distance_sum: acc.distance_sum + u64::from(d),
                    reachable: acc.reachable + 1,
                })
        })
        .collect()
}

/// Unnormalized closeness `1 / Σ d(v, u)` over peers reachable from `v`.
/// `None` for a node that reaches no one.
pub fn closeness(graph: &InteractionGraph) -> Vec<Option<f64>> {
    closeness_from_reach(&reach_all(graph))
}

pub(crate) fn closeness_from_reach(reach: &[Reach]) -> Vec<Option<f64>> {
    reach
        .iter()
        .map(|r| (r.reachable > 0).then(|| 1.0 / r.distance_sum as f64))
        .collect()
}

/// Mean hop distance over ordered reachable pairs, or `None` when no pair
/// is connected.
pub fn avg_path_length(graph: &InteractionGraph) -> Option<f64> {
    avg_from_reach(&reach_all(graph))
}

pub(crate) fn avg_from_reach(reach: &[Reach]) -> Option<f64> {
    let (sum, pairs) = reach.iter().fold((0u64, 0u64), |(s, p), r| {
        (s + r.distance_sum, p + r.reachable as u64)
    });
    (pairs > 0).then(|| sum as f64 / pairs as f64)
}
