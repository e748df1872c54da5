//! Brute-force reference implementations and seeded fixtures shared by the
//! integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use chrono::NaiveDate;
use pslnet::ingest::MatchRecord;
use pslnet::metrics::{GraphStats, MetricOptions, PlayerMetrics};
use pslnet::{InteractionGraph, MetricReport, PlayerRecord, Role};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> InteractionGraph {
    let n = rng.gen_range(2..=max_nodes);
    let p: f64 = rng.gen_range(0.2..0.9);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    InteractionGraph::from_pairs(n, &pairs).unwrap()
}

pub fn seeded_corpus(count: usize, seed: u64) -> Vec<InteractionGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, 7)).collect()
}

pub fn adjacency(g: &InteractionGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for i in 0..n {
        for j in g.neighbors(i) {
            a[i][j] = true;
        }
    }
    a
}

pub fn floyd_warshall(a: &[Vec<bool>]) -> Vec<Vec<u32>> {
    let n = a.len();
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Every walk `s -> t` with exactly `d(s, t)` hops, listed explicitly.
pub fn all_shortest_paths(a: &[Vec<bool>], d: &[Vec<u32>], s: usize, t: usize) -> Vec<Vec<usize>> {
    fn extend(a: &[Vec<bool>], target: usize, len: u32, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() as u32 - 1 == len {
            if last == target {
                out.push(path.clone());
            }
            return;
        }
        for next in 0..a.len() {
            if a[last][next] && !path.contains(&next) {
                path.push(next);
                extend(a, target, len, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if d[s][t] < INF {
        extend(a, t, d[s][t], &mut vec![s], &mut out);
    }
    out
}

/// Ordered-pair betweenness by path enumeration.
pub fn betweenness(g: &InteractionGraph) -> Vec<f64> {
    let a = adjacency(g);
    let d = floyd_warshall(&a);
    let n = a.len();
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let paths = all_shortest_paths(&a, &d, s, t);
            if paths.is_empty() {
                continue;
            }
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = paths.iter().filter(|p| p.contains(&v)).count();
                score[v] += through as f64 / paths.len() as f64;
            }
        }
    }
    score
}

/// Reciprocal of the summed distances to reachable nodes.
pub fn closeness(g: &InteractionGraph) -> Vec<Option<f64>> {
    let d = floyd_warshall(&adjacency(g));
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let sum: u32 = (0..n).filter(|&u| u != v && d[v][u] < INF).map(|u| d[v][u]).sum();
            (sum > 0).then(|| 1.0 / f64::from(sum))
        })
        .collect()
}

pub fn is_connected(g: &InteractionGraph) -> bool {
    let d = floyd_warshall(&adjacency(g));
    d.iter().all(|row| row.iter().all(|&x| x < INF))
}

/// Closed neighbor pairs over all neighbor pairs, 0 below two neighbors.
pub fn triangle_ratio(g: &InteractionGraph) -> Vec<f64> {
    let a = adjacency(g);
    let n = a.len();
    (0..n)
        .map(|i| {
            let nbrs: Vec<usize> = (0..n).filter(|&j| a[i][j]).collect();
            let k = nbrs.len();
            if k < 2 {
                return 0.0;
            }
            let mut closed = 0;
            for x in 0..k {
                for y in x + 1..k {
                    if a[nbrs[x]][nbrs[y]] {
                        closed += 1;
                    }
                }
            }
            closed as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

pub fn transitivity(g: &InteractionGraph) -> f64 {
    let a = adjacency(g);
    let n = a.len();
    let mut triangles = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] && a[j][k] && a[i][k] {
                    triangles += 1;
                }
            }
        }
    }
    let triples: usize = (0..n)
        .map(|i| {
            let k = a[i].iter().filter(|&&x| x).count();
            k * k.saturating_sub(1) / 2
        })
        .sum();
    if triples == 0 {
        0.0
    } else {
        3.0 * triangles as f64 / triples as f64
    }
}

pub fn skewness(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    m3 / m2.powf(1.5)
}

/// Random league: `players` in the pool, each match draws two disjoint XIs.
pub fn synthetic_matches(rng: &mut ChaCha8Rng, players: usize, matches: usize) -> Vec<MatchRecord> {
    let pool: Vec<String> = (0..players).map(|i| format!("p{i:04}")).collect();
    (0..matches)
        .map(|m| {
            let picked: Vec<String> = pool.choose_multiple(rng, 22).cloned().collect();
            MatchRecord {
                match_id: format!("m{m:04}"),
                date: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
                season: "2020".into(),
                teams: ["H".into(), "A".into()],
                lineups: BTreeMap::from([
                    ("H".to_string(), picked[..11].to_vec()),
                    ("A".to_string(), picked[11..].to_vec()),
                ]),
            }
        })
        .collect()
}

/// Report whose betweenness, closeness and clustering all equal `values`.
pub fn report_from(values: &[f64]) -> MetricReport {
    MetricReport {
        options: MetricOptions::default(),
        players: values
            .iter()
            .enumerate()
            .map(|(i, &v)| PlayerMetrics {
                player_id: format!("p{i:03}"),
                name: format!("p{i:03}"),
                degree: 0,
                co_players: 0,
                betweenness: v,
                closeness: Some(v),
                local_clustering: v,
            })
            .collect(),
        graph: GraphStats {
            node_count: values.len(),
            directed_edge_count: 0,
            avg_path_length: None,
            ln_n: 0.0,
            global_clustering: 0.0,
            mean_local_clustering: 0.0,
            mean_degree: 0.0,
            max_degree: 0,
            mean_betweenness: 0.0,
            max_betweenness: 0.0,
            mean_closeness: None,
        },
    }
}

/// `n` eligible Pakistani players cycling through the roles.
pub fn roster(n: usize) -> BTreeMap<String, PlayerRecord> {
    (0..n)
        .map(|i| {
            let id = format!("p{i:03}");
            (
                id.clone(),
                PlayerRecord {
                    player_id: id.clone(),
                    display_name: id,
                    aliases: vec![],
                    role: Role::ALL_ROLES[i % 4],
                    nationality: "Pakistan".into(),
                    birth_date: None,
                    last_intl_t20: None,
                    retired_intl_t20: false,
                    banned: false,
                },
            )
        })
        .collect()
}
