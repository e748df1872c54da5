//! Bidirectional weighted teammate network.
//!
//! Node `i` links to node `j` when both appeared in the same playing XI at
//! least once. The directed weight is `|M_i ∩ M_j| / |M_i|`, where the
//! intersection counts every match both played, on either side. The two
//! directions of a pair generally differ while their common-match count is
//! the same.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{MatchRecord, ParticipationIndex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub target: usize,
    pub weight: f64,
    /// `|M_i ∩ M_j|`, when the graph was built from match data.
    pub shared: Option<u32>,
}

/// Immutable directed graph whose edges always come in reciprocal pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionGraph {
    ids: Vec<String>,
    labels: Vec<String>,
    /// Out-edges per node, sorted by target.
    adjacency: Vec<Vec<Edge>>,
    /// `|M_i|` per node, when built from match data.
    match_counts: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub node_count: usize,
    pub directed_edge_count: usize,
    pub undirected_pair_count: usize,
}

/// Builds the teammate network for every indexed player.
pub fn build_network(index: &ParticipationIndex, matches: &[MatchRecord]) -> Result<InteractionGraph> {
    if matches.is_empty() || index.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let ids: Vec<String> = index.player_ids().map(str::to_string).collect();
    let position: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();

    // (common matches, ever teammates) per pair; opponents share a match
    // but are only linked once they have also shared a lineup
    let mut pairs: BTreeMap<(usize, usize), (u32, bool)> = BTreeMap::new();
    for m in matches {
        let sides: Vec<Vec<usize>> = m
            .lineups
            .values()
            .map(|lineup| {
                lineup
                    .iter()
                    .map(|id| {
                        position.get(id.as_str()).copied().ok_or_else(|| {
                            Error::InvalidGraph(format!(
                                "player {id} of match {} missing from the index",
                                m.match_id
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let everyone: Vec<(usize, usize)> = sides
            .iter()
            .enumerate()
            .flat_map(|(side, members)| members.iter().map(move |&p| (p, side)))
            .collect();
        for (a, &(i, side_i)) in everyone.iter().enumerate() {
            for &(j, side_j) in &everyone[a + 1..] {
                let entry = pairs.entry((i.min(j), i.max(j))).or_insert((0, false));
                entry.0 += 1;
                entry.1 |= side_i == side_j;
            }
        }
    }

    let counts: Vec<u32> = ids.iter().map(|id| index.total(id) as u32).collect();
    let mut adjacency = vec![Vec::new(); ids.len()];
    for (&(i, j), &(common, teammates)) in &pairs {
        if !teammates {
            continue;
        }
        adjacency[i].push(Edge {
            target: j,
            weight: f64::from(common) / f64::from(counts[i]),
            shared: Some(common),
        });
        adjacency[j].push(Edge {
            target: i,
            weight: f64::from(common) / f64::from(counts[j]),
            shared: Some(common),
        });
    }
    for edges in &mut adjacency {
        edges.sort_by_key(|e| e.target);
    }
    Ok(InteractionGraph {
        labels: ids.clone(),
        ids,
        adjacency,
        match_counts: Some(counts),
    })
}

impl InteractionGraph {
    /// Unit-weight graph over `n` nodes from undirected pairs. Node ids are
    /// the decimal indices.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("pair ({i}, {j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at {i}")));
            }
            adjacency[i].push(Edge {
                target: j,
                weight: 1.0,
                shared: None,
            });
            adjacency[j].push(Edge {
                target: i,
                weight: 1.0,
                shared: None,
            });
        }
        let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        Self::checked(ids.clone(), ids, adjacency, None)
    }

    /// Graph from explicit directed weighted edges. Every edge needs its
    /// reverse.
    pub fn from_weighted_edges(
        ids: Vec<String>,
        labels: Vec<String>,
        edges: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); ids.len()];
        for &(i, j, w) in edges {
            if i >= ids.len() || j >= ids.len() {
                return Err(Error::InvalidGraph(format!("edge ({i}, {j}) out of range")));
            }
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidGraph(format!(
                    "weight {w} on {} -> {} outside (0, 1]",
                    ids[i], ids[j]
                )));
            }
            adjacency[i].push(Edge {
                target: j,
                weight: w,
                shared: None,
            });
        }
        Self::checked(ids, labels, adjacency, None)
    }

    fn checked(
        ids: Vec<String>,
        labels: Vec<String>,
        mut adjacency: Vec<Vec<Edge>>,
        match_counts: Option<Vec<u32>>,
    ) -> Result<Self> {
        if labels.len() != ids.len() {
            return Err(Error::InvalidGraph("label count differs from node count".into()));
        }
        for (i, edges) in adjacency.iter_mut().enumerate() {
            edges.sort_by_key(|e| e.target);
            if edges.windows(2).any(|w| w[0].target == w[1].target) {
                return Err(Error::InvalidGraph(format!("duplicate edge from {}", ids[i])));
            }
            if edges.iter().any(|e| e.target == i) {
                return Err(Error::InvalidGraph(format!("self-loop at {}", ids[i])));
            }
        }
        let graph = InteractionGraph {
            ids,
            labels,
            adjacency,
            match_counts,
        };
        for i in 0..graph.node_count() {
            for e in graph.out_edges(i) {
                if graph.edge(e.target, i).is_none() {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} -> {} has no reverse",
                        graph.ids[i], graph.ids[e.target]
                    )));
                }
            }
        }
        Ok(graph)
    }

    /// Replaces node display labels, keyed by node id. Unknown ids keep
    /// their id as the label.
    pub fn with_labels(mut self, names: &HashMap<String, String>) -> Self {
        for (id, label) in self.ids.iter().zip(self.labels.iter_mut()) {
            if let Some(name) = names.get(id) {
                label.clone_from(name);
            }
        }
        self
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn directed_edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, node: usize) -> &str {
        &self.ids[node]
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|probe| probe.as_str().cmp(id)).ok().or_else(|| {
            // ids from `from_weighted_edges` need not be sorted
            self.ids.iter().position(|probe| probe == id)
        })
    }

    pub fn out_edges(&self, node: usize) -> &[Edge] {
        &self.adjacency[node]
    }

    pub fn neighbors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[node].iter().map(|e| e.target)
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<&Edge> {
        let edges = &self.adjacency[from];
        edges
            .binary_search_by_key(&to, |e| e.target)
            .ok()
            .map(|k| &edges[k])
    }

    pub fn match_count(&self, node: usize) -> Option<u32> {
        self.match_counts.as_ref().map(|c| c[node])
    }

    pub fn summary(&self) -> GraphSummary {
        let directed = self.directed_edge_count();
        GraphSummary {
            node_count: self.node_count(),
            directed_edge_count: directed,
            undirected_pair_count: directed / 2,
        }
    }

    /// Undirected pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.node_count())
            .flat_map(|i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz DOT text: one node statement per player (labelled by display
/// name) and one statement per directed edge.
pub fn export_dot(graph: &InteractionGraph) -> String {
    let mut out = String::from("digraph interactions {\n");
    for i in 0..graph.node_count() {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\"];",
            dot_escape(graph.id(i)),
            dot_escape(graph.label(i))
        );
    }
    for i in 0..graph.node_count() {
        for e in graph.out_edges(i) {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [weight={:.6}];",
                dot_escape(graph.id(i)),
                dot_escape(graph.id(e.target)),
                e.weight
            );
        }
    }
    out.push_str("}\n");
    out
}

/// `source,target,weight` CSV, one row per directed edge.
pub fn export_edgelist(graph: &InteractionGraph) -> String {
    let mut out = String::from("source,target,weight\n");
    for i in 0..graph.node_count() {
        for e in graph.out_edges(i) {
            let _ = writeln!(out, "{},{},{:.6}", graph.id(i), graph.id(e.target), e.weight);
        }
    }
    out
}

/// Reads an edge list written by [`export_edgelist`]. Node ids are taken
/// from the endpoints, sorted.
pub fn import_edgelist(path: &Path, raw: &str) -> Result<InteractionGraph> {
    let mut reader = csv::Reader::from_reader(raw.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Csv {
            path: path.to_path_buf(),
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |message: String| Error::Csv {
            path: path.to_path_buf(),
            line,
            message,
        };
        if record.len() != 3 {
            return Err(bad(format!("expected 3 fields, found {}", record.len())));
        }
        let weight: f64 = record[2]
            .trim()
            .parse()
            .map_err(|e| bad(format!("bad weight {:?}: {e}", &record[2])))?;
        rows.push((record[0].trim().to_string(), record[1].trim().to_string(), weight));
    }
    let mut ids: Vec<String> = rows
        .iter()
        .flat_map(|(s, t, _)| [s.clone(), t.clone()])
        .collect();
    ids.sort();
    ids.dedup();
    let position: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let edges: Vec<(usize, usize, f64)> = rows
        .iter()
        .map(|(s, t, w)| (position[s.as_str()], position[t.as_str()], *w))
        .collect();
    InteractionGraph::from_weighted_edges(ids.clone(), ids, &edges)
}
