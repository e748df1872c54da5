//! Brandes betweenness on unweighted out-edges.
//!
//! Scores sum over ordered pairs `(s, t)` with `s != v != t`, crediting `v`
//! with the fraction of shortest `s -> t` paths through it. On a graph whose
//! edges all come in reciprocal pairs this is twice the unordered-pair score.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::paths::SOURCE_CHUNK;
use crate::graph::InteractionGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairConvention {
    /// Every ordered pair `(s, t)` counts.
    #[default]
    Ordered,
    /// Each unordered pair counts once (ordered score halved).
    Unordered,
}

fn accumulate_from(graph: &InteractionGraph, s: usize, scores: &mut [f64]) {
    let n = graph.node_count();
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![u32::MAX; n];
    sigma[s] = 1.0;
    dist[s] = 0;

    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        stack.push(v);
        for w in graph.neighbors(v) {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
                preds[w].push(v);
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    while let Some(w) = stack.pop() {
        let coeff = (1.0 + delta[w]) / sigma[w];
        for &v in &preds[w] {
            delta[v] += sigma[v] * coeff;
        }
        if w != s {
            scores[w] += delta[w];
        }
    }
}

/// Betweenness of every node. Deterministic for a given graph regardless of
/// the rayon pool size.
pub fn betweenness(graph: &InteractionGraph, convention: PairConvention) -> Vec<f64> {
    let n = graph.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut local = vec![0.0; n];
            for &s in chunk {
                accumulate_from(graph, s, &mut local);
            }
            local
        })
        .collect();
    let mut scores = vec![0.0; n];
    for partial in partials {
        for (acc, x) in scores.iter_mut().zip(partial) {
            *acc += x;
        }
    }
    if convention == PairConvention::Unordered {
        scores.iter_mut().for_each(|x| *x /= 2.0);
    }
    scores
}
