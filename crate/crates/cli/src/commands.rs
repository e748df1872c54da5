use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use chrono::NaiveDate;
use pslnet::graph::{build_network, export_dot, export_edgelist};
use pslnet::ingest::{self, Dataset, MatchRecord, ParticipationIndex, RegistryEntry};
use pslnet::metrics::MetricOptions;
use pslnet::models::{self, ModelKind, ModelSpec};
use pslnet::selection::{self, Composition, EligibilityReport, SquadEntry};
use pslnet::{EligibilityRules, InteractionGraph, Metric, MetricReport, PlayerRecord, Ranking, TeamSheet};

const MATCHES: &str = "matches.json";
const PLAYERS: &str = "players.json";
const INDEX: &str = "index.json";

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: serde::Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write(path, &text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn ingest(archive: &Path, registry: &Path, supplement: Option<&Path>, out: &Path) -> Result<()> {
    if !archive.is_dir() {
        bail!("archive directory {} does not exist", archive.display());
    }
    let dataset = Dataset::load(archive, supplement)?;
    let entries = ingest::parse_registry(registry, &read(registry)?)?;
    let indexed: BTreeSet<&str> = dataset.index.player_ids().collect();
    let players: Vec<&RegistryEntry> = entries
        .iter()
        .filter(|e| indexed.contains(e.player_id.as_str()))
        .collect();
    let missing: Vec<&str> = indexed
        .iter()
        .filter(|id| !players.iter().any(|p| p.player_id == **id))
        .copied()
        .collect();
    if !missing.is_empty() {
        bail!(
            "{}: no registry row for {} indexed player(s): {}",
            registry.display(),
            missing.len(),
            missing.join(", ")
        );
    }

    write_json(&out.join(MATCHES), &dataset.matches)?;
    write_json(&out.join(PLAYERS), &players)?;
    write_json(&out.join(INDEX), &dataset.index)?;
    println!("{} matches, {} players", dataset.matches.len(), dataset.index.len());
    Ok(())
}

struct Loaded {
    matches: Vec<MatchRecord>,
    index: ParticipationIndex,
    players: Vec<RegistryEntry>,
    graph: InteractionGraph,
}

fn load_dataset(out: &Path) -> Result<Loaded> {
    let matches_path = out.join(MATCHES);
    if !matches_path.exists() {
        bail!(
            "no dataset in {}: run `pslnet ingest --out {}` first",
            out.display(),
            out.display()
        );
    }
    let matches: Vec<MatchRecord> = read_json(&matches_path)?;
    for m in &matches {
        m.validate(&matches_path)?;
    }
    let index: ParticipationIndex = read_json(&out.join(INDEX))?;
    if index != ingest::build_index(&matches) {
        bail!("{} is out of date with {}; rerun ingest", INDEX, MATCHES);
    }
    let players: Vec<RegistryEntry> = read_json(&out.join(PLAYERS))?;
    let names: HashMap<String, String> = players
        .iter()
        .map(|p| (p.player_id.clone(), p.display_name.clone()))
        .collect();
    let graph = build_network(&index, &matches)?.with_labels(&names);
    Ok(Loaded {
        matches,
        index,
        players,
        graph,
    })
}

pub fn analyze(out: &Path, options: MetricOptions) -> Result<()> {
    let data = load_dataset(out)?;
    let report = MetricReport::compute(&data.graph, options);

    write(&out.join("metrics.csv"), &report.to_csv())?;
    write_json(&out.join("metrics.json"), &report)?;
    for h in report.histograms() {
        write(&out.join("histograms").join(format!("{}.csv", h.metric)), &h.to_csv())?;
    }
    write(&out.join("graph.dot"), &export_dot(&data.graph))?;
    write(&out.join("edges.csv"), &export_edgelist(&data.graph))?;
    let summary = serde_json::json!({
        "match_count": data.matches.len(),
        "graph": data.graph.summary(),
        "stats": report.graph,
    });
    write_json(&out.join("summary.json"), &summary)?;
    println!("{}", report.describe());
    Ok(())
}

pub fn compare_models(out: &Path, seed: u64, ws_p: f64, runs: usize) -> Result<()> {
    let data = load_dataset(out)?;
    let specs: Vec<ModelSpec> = ModelKind::ALL
        .iter()
        .map(|&kind| ModelSpec::matched(kind, &data.graph, ws_p, seed))
        .collect();
    let report = models::compare(&data.graph, &specs, runs)?;
    write(&out.join("comparison.csv"), &report.to_csv())?;
    write_json(&out.join("comparison.json"), &report)?;
    for row in report.rows() {
        let name = format!("model_{}_degree.csv", row.label.to_ascii_lowercase());
        write(&out.join("histograms").join(name), &row.degree_histogram.to_csv())?;
    }
    for row in report.rows() {
        println!(
            "{:<4} path_length={:.4}±{:.4} clustering={:.4}±{:.4}",
            row.label,
            row.avg_path_length.mean,
            row.avg_path_length.stddev,
            row.global_clustering.mean,
            row.global_clustering.stddev
        );
    }
    println!(
        "ln(N)={:.4} closest path length: {} closest clustering: {}",
        report.ln_n,
        report.closest_path_length.as_deref().unwrap_or("-"),
        report.closest_clustering.as_deref().unwrap_or("-")
    );
    Ok(())
}

pub struct Selection {
    pub out: PathBuf,
    pub enrichment: PathBuf,
    pub as_of: NaiveDate,
    pub metric: Option<Metric>,
    pub squad: Option<PathBuf>,
    pub options: MetricOptions,
}

struct Ranked {
    data: Loaded,
    eligibility: EligibilityReport,
    rankings: Vec<Ranking>,
}

fn rank_all(sel: &Selection, metrics: &[Metric]) -> Result<Ranked> {
    if !sel.enrichment.is_file() {
        bail!("enrichment file {} not found", sel.enrichment.display());
    }
    let data = load_dataset(&sel.out)?;
    let enrichment = ingest::parse_enrichment(&sel.enrichment, &read(&sel.enrichment)?)?;
    let players: BTreeMap<String, PlayerRecord> = ingest::join_players(&data.players, &enrichment)?;
    let rules = EligibilityRules {
        as_of_date: sel.as_of,
        ..EligibilityRules::default()
    };
    rules.validate()?;
    let eligibility = selection::filter_eligible(data.index.player_ids(), &players, &rules);
    for (id, why) in &eligibility.indeterminate {
        eprintln!("warning: eligibility of {id} is indeterminate ({why}); excluded");
    }
    let report = MetricReport::compute(&data.graph, sel.options);
    let rankings = metrics
        .iter()
        .map(|&m| selection::rank_by(&report, &players, &eligibility.eligible, &data.index.total_matches, m))
        .collect::<pslnet::Result<Vec<_>>>()?;
    write_json(&sel.out.join("eligibility.json"), &eligibility)?;
    Ok(Ranked {
        data,
        eligibility,
        rankings,
    })
}

pub fn rank(sel: &Selection) -> Result<()> {
    let Some(metric) = sel.metric else {
        bail!("rank needs --metric");
    };
    let ranked = rank_all(sel, &[metric])?;
    let ranking = &ranked.rankings[0];
    write(&sel.out.join(format!("ranking_{metric}.csv")), &ranking.to_csv())?;
    println!(
        "{} eligible players ranked by {metric}",
        ranked.eligibility.eligible.len()
    );
    for row in ranking.rows.iter().take(20) {
        println!("{:>3}. {:<28} {:<4} {:.6}", row.rank, row.name, row.role.to_string(), row.value);
    }
    Ok(())
}

fn teams_for(ranked: &Ranked) -> Result<Vec<TeamSheet>> {
    let composition = Composition::default();
    Ok(ranked
        .rankings
        .iter()
        .map(|r| selection::form_team(r, &composition))
        .collect::<pslnet::Result<Vec<_>>>()?)
}

fn load_squad(path: &Path) -> Result<Vec<SquadEntry>> {
    Ok(selection::parse_squad(path, &read(path)?)?)
}

fn write_diff(sel: &Selection, ranked: &Ranked, teams: &[TeamSheet], squad_path: &Path) -> Result<()> {
    let official = load_squad(squad_path)?;
    let known: BTreeSet<String> = ranked.data.graph.ids().iter().cloned().collect();
    let centrality: Vec<TeamSheet> = teams
        .iter()
        .filter(|t| Metric::CENTRALITY.contains(&t.metric))
        .cloned()
        .collect();
    let diff = selection::diff_squad(&centrality, &official, &known, &ranked.rankings)?;
    write(&sel.out.join("squad_diff.csv"), &diff.to_csv(&official))?;
    write_json(&sel.out.join("squad_diff.json"), &diff)?;
    println!(
        "{} distinct players across {} team(s); {} included / {} excluded",
        diff.union_size,
        centrality.len(),
        diff.included.len(),
        diff.excluded.len()
    );
    Ok(())
}

pub fn form_team(sel: &Selection) -> Result<()> {
    let metrics: Vec<Metric> = sel.metric.map_or_else(|| Metric::ALL.to_vec(), |m| vec![m]);
    let ranked = rank_all(sel, &metrics)?;
    let teams = teams_for(&ranked)?;
    let table = selection::format_team_table(&teams);
    write(&sel.out.join("teams.csv"), &selection::teams_to_csv(&teams))?;
    write_json(&sel.out.join("teams.json"), &teams)?;
    write(&sel.out.join("teams.txt"), &table)?;
    print!("{table}");
    println!("{} team(s) of {}", teams.len(), Composition::default().size());
    if let Some(squad) = &sel.squad {
        write_diff(sel, &ranked, &teams, squad)?;
    }
    Ok(())
}

pub fn diff_squad(sel: &Selection) -> Result<()> {
    let Some(squad) = &sel.squad else {
        bail!("diff-squad needs --squad");
    };
    let metrics: Vec<Metric> = sel.metric.map_or_else(|| Metric::CENTRALITY.to_vec(), |m| vec![m]);
    let ranked = rank_all(sel, &metrics)?;
    let teams = teams_for(&ranked)?;
    write_diff(sel, &ranked, &teams, squad)
}
