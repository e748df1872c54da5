//! Local and global clustering.
//!
//! The local coefficient follows Fagiolo's total directed formulation:
//!
//! ```text
//! C_i = [(W + Wᵀ)³]_ii / (2 · (d_tot (d_tot − 1) − 2 d_bil))
//! ```
//!
//! where `W` holds cube roots of the weights scaled by the largest weight,
//! `d_tot` is in-degree plus out-degree and `d_bil` counts reciprocated
//! neighbours. With [`ClusteringMode::Binary`] the adjacency matrix replaces
//! `W`. The global coefficient is the transitivity of the undirected
//! projection.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::InteractionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusteringMode {
    #[default]
    Weighted,
    Binary,
}

fn max_weight(graph: &InteractionGraph) -> f64 {
    (0..graph.node_count())
        .flat_map(|i| graph.out_edges(i).iter().map(|e| e.weight))
        .fold(0.0, f64::max)
}

/// `W_ij + W_ji` for the chosen mode, zero when neither edge exists.
fn symmetric_strength(graph: &InteractionGraph, mode: ClusteringMode, scale: f64, i: usize, j: usize) -> f64 {
    let term = |a: usize, b: usize| match (graph.edge(a, b), mode) {
        (None, _) => 0.0,
        (Some(_), ClusteringMode::Binary) => 1.0,
        (Some(e), ClusteringMode::Weighted) => (e.weight / scale).cbrt(),
    };
    term(i, j) + term(j, i)
}

/// Undirected neighbour set: out-neighbours plus in-neighbours.
fn undirected_neighbors(graph: &InteractionGraph, node: usize) -> Vec<usize> {
    // out-edges have reverses, so out-neighbours already cover in-neighbours
    graph.neighbors(node).collect()
}

/// Local clustering per node. Nodes with fewer than two neighbours score 0.
pub fn local_clustering(graph: &InteractionGraph, mode: ClusteringMode) -> Vec<f64> {
    let scale = max_weight(graph);
    (0..graph.node_count())
        .into_par_iter()
        .map(|i| {
            let nbrs = undirected_neighbors(graph, i);
            let out_deg = graph.out_edges(i).len();
            let in_deg = nbrs.iter().filter(|&&j| graph.edge(j, i).is_some()).count();
            let bilateral = nbrs
                .iter()
                .filter(|&&j| graph.edge(i, j).is_some() && graph.edge(j, i).is_some())
                .count();
            let total = (out_deg + in_deg) as f64;
            let denominator = 2.0 * (total * (total - 1.0) - 2.0 * bilateral as f64);
            if denominator <= 0.0 {
                return 0.0;
            }
            let mut numerator = 0.0;
            for (a, &j) in nbrs.iter().enumerate() {
                let s_ij = symmetric_strength(graph, mode, scale, i, j);
                for &k in &nbrs[a + 1..] {
                    let s_jk = symmetric_strength(graph, mode, scale, j, k);
                    if s_jk == 0.0 {
                        continue;
                    }
                    let s_ki = symmetric_strength(graph, mode, scale, k, i);
                    // (j, k) and (k, j) both close the walk i -> j -> k -> i
                    numerator += 2.0 * s_ij * s_jk * s_ki;
                }
            }
            numerator / denominator
        })
        .collect()
}

/// Closed and connected triple counts of the undirected projection.
fn triples(graph: &InteractionGraph) -> (u64, u64) {
    (0..graph.node_count())
        .into_par_iter()
        .map(|i| {
            let nbrs = undirected_neighbors(graph, i);
            let k = nbrs.len() as u64;
            let mut closed = 0u64;
            for (a, &j) in nbrs.iter().enumerate() {
                for &l in &nbrs[a + 1..] {
                    if graph.edge(j, l).is_some() {
                        closed += 1;
                    }
                }
            }
            (closed, k * k.saturating_sub(1) / 2)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Transitivity: three times the triangle count over connected triples.
/// Zero when the graph has no connected triple.
pub fn global_clustering(graph: &InteractionGraph) -> f64 {
    let (closed, connected) = triples(graph);
    if connected == 0 {
        0.0
    } else {
        closed as f64 / connected as f64
    }
}

/// Mean of the unweighted undirected local coefficient over all nodes,
/// counting nodes of degree below two as 0.
pub fn mean_local_clustering(graph: &InteractionGraph) -> f64 {
    let n = graph.node_count();
    if n == 0 {
        return 0.0;
    }
    let values = local_clustering(graph, ClusteringMode::Binary);
    values.iter().sum::<f64>() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_fully_clustered() {
        let g = InteractionGraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        for mode in [ClusteringMode::Weighted, ClusteringMode::Binary] {
            for c in local_clustering(&g, mode) {
                assert!((c - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(global_clustering(&g), 1.0);
    }

    #[test]
    fn path_has_no_triangles() {
        let g = InteractionGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(local_clustering(&g, ClusteringMode::Weighted), vec![0.0; 3]);
        assert_eq!(global_clustering(&g), 0.0);
    }

    #[test]
    fn weights_scale_triangle_credit() {
        // triangle with every weight 1/8: cube roots are 1/2 before scaling,
        // but scaling by the max weight restores 1.0
        let ids: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    edges.push((i, j, 0.125));
                }
            }
        }
        let g = InteractionGraph::from_weighted_edges(ids.clone(), ids.clone(), &edges).unwrap();
        assert!((local_clustering(&g, ClusteringMode::Weighted)[0] - 1.0).abs() < 1e-12);

        // one pair at full weight, the rest at 1/8: node 0 sees
        // s01 = 2, s12 = 1, s20 = 1 -> 2 * (2*1*1) / (2*(4*3 - 4)) = 0.25
        edges.iter_mut().for_each(|e| {
            if (e.0, e.1) == (0, 1) || (e.0, e.1) == (1, 0) {
                e.2 = 1.0;
            }
        });
        let g = InteractionGraph::from_weighted_edges(ids.clone(), ids, &edges).unwrap();
        let c = local_clustering(&g, ClusteringMode::Weighted);
        assert!((c[0] - 0.25).abs() < 1e-12, "{c:?}");
        // same triangle from every corner
        assert!((c[2] - 0.25).abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn square_with_diagonal() {
        // 0-1-2-3-0 plus 0-2
        let g = InteractionGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let c = local_clustering(&g, ClusteringMode::Binary);
        assert!((c[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((c[1] - 1.0).abs() < 1e-12);
        // 2 triangles * 3 / (3 + 1 + 3 + 1) connected triples
        assert!((global_clustering(&g) - 0.75).abs() < 1e-12);
        assert!((mean_local_clustering(&g) - (2.0 / 3.0 + 1.0 + 2.0 / 3.0 + 1.0) / 4.0).abs() < 1e-12);
    }
}
