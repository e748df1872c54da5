//! Player-interaction network analysis for franchise T20 cricket.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`ingest`] parses per-match lineups and the people registry into
//!    canonical [`MatchRecord`]s and a [`ParticipationIndex`].
//! 2. [`graph`] turns shared lineups into a bidirectional weighted
//!    [`InteractionGraph`].
//! 3. [`metrics`] computes degree, betweenness, closeness and clustering, and
//!    [`models`] builds size-matched random reference graphs for comparison.
//! 4. [`selection`] filters the eligible pool, ranks it per metric and fills
//!    role quotas to produce [`TeamSheet`]s.

pub mod error;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod models;
pub mod selection;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use graph::InteractionGraph;
pub use ingest::{MatchRecord, ParticipationIndex, PlayerRecord, RegistryEntry, Role};
pub use metrics::{Histogram, MetricReport};
pub use models::{ComparisonReport, ModelKind, ModelSpec};
pub use selection::{EligibilityRules, Metric, Ranking, SquadDiff, TeamSheet};
