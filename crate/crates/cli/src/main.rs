use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use pslnet::metrics::{ClusteringMode, MetricOptions, PairConvention};
use pslnet::models::{DEFAULT_RUNS, DEFAULT_WS_REWIRE_P};
use pslnet::Metric;

mod commands;

#[derive(Parser)]
#[command(name = "pslnet", version, about = "Teammate-network analysis and team selection from ball-by-ball cricket data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse the match archive and registry into canonical dataset files.
    Ingest(IngestArgs),
    /// Build the network and write metrics, histograms and graph exports.
    Analyze(AnalyzeArgs),
    /// Compare the network against size-matched random graph models.
    CompareModels(CompareArgs),
    /// Rank eligible players by one metric.
    Rank(SelectArgs),
    /// Form role-constrained team sheets, optionally diffed against a squad.
    FormTeam(SelectArgs),
    /// Compare the centrality team sheets with an official squad.
    DiffSquad(SelectArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Directory of per-match JSON files.
    #[arg(long)]
    archive: PathBuf,
    /// People registry CSV.
    #[arg(long)]
    registry: PathBuf,
    /// Directory of manually authored matches in the archive schema.
    #[arg(long)]
    supplement: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairs {
    Ordered,
    Unordered,
}

#[derive(Clone, Copy, ValueEnum)]
enum Clustering {
    Weighted,
    Binary,
}

#[derive(Args, Clone)]
struct MetricArgs {
    /// Betweenness pair convention.
    #[arg(long, value_enum, default_value = "ordered")]
    pairs: Pairs,
    /// Local clustering formulation.
    #[arg(long, value_enum, default_value = "weighted")]
    clustering: Clustering,
}

impl MetricArgs {
    fn options(&self) -> MetricOptions {
        MetricOptions {
            pair_convention: match self.pairs {
                Pairs::Ordered => PairConvention::Ordered,
                Pairs::Unordered => PairConvention::Unordered,
            },
            clustering_mode: match self.clustering {
                Clustering::Weighted => ClusteringMode::Weighted,
                Clustering::Binary => ClusteringMode::Binary,
            },
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Output directory holding the ingested dataset.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    metrics: MetricArgs,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Watts–Strogatz rewiring probability.
    #[arg(long = "ws-p", default_value_t = DEFAULT_WS_REWIRE_P)]
    ws_p: f64,
    /// Seeded runs per model.
    #[arg(long, default_value_t = DEFAULT_RUNS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    runs: u64,
}

#[derive(Args)]
struct SelectArgs {
    #[arg(long)]
    out: PathBuf,
    /// Curated enrichment CSV (role, nationality, dates, flags).
    #[arg(long)]
    enrichment: PathBuf,
    /// Reference date for ages and recency.
    #[arg(long = "as-of", default_value = "2022-10-01")]
    as_of: NaiveDate,
    /// Restrict to one metric (all four by default).
    #[arg(long, value_parser = parse_metric)]
    metric: Option<Metric>,
    /// Official squad CSV (identifier,name,role).
    #[arg(long)]
    squad: Option<PathBuf>,
    #[command(flatten)]
    metrics: MetricArgs,
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => commands::ingest(&a.archive, &a.registry, a.supplement.as_deref(), &a.out),
        Command::Analyze(a) => commands::analyze(&a.out, a.metrics.options()),
        Command::CompareModels(a) => commands::compare_models(&a.out, a.seed, a.ws_p, a.runs as usize),
        Command::Rank(a) => commands::rank(&a.into()),
        Command::FormTeam(a) => commands::form_team(&a.into()),
        Command::DiffSquad(a) => commands::diff_squad(&a.into()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

impl From<SelectArgs> for commands::Selection {
    fn from(a: SelectArgs) -> Self {
        commands::Selection {
            options: a.metrics.options(),
            out: a.out,
            enrichment: a.enrichment,
            as_of: a.as_of,
            metric: a.metric,
            squad: a.squad,
        }
    }
}
