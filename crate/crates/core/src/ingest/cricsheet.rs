//! Lineup extraction from Cricsheet match documents.
//!
//! Only the `info` block is read. Delivery data is skipped, so a player who
//! appears solely as a fielding substitute never becomes a participant.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const LINEUP_SIZE: usize = 11;

/// One match and the two playing XIs, resolved to registry identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRecord {
    /// Source file stem.
    pub match_id: String,
    pub date: NaiveDate,
    pub season: String,
    pub teams: [String; 2],
    /// Team name to the eleven player identifiers, in listed order.
    pub lineups: BTreeMap<String, Vec<String>>,
}

impl MatchRecord {
    pub fn participants(&self) -> impl Iterator<Item = &str> {
        self.lineups.values().flatten().map(String::as_str)
    }

    /// Re-checks the record invariants. Records read back from serialized
    /// dataset files go through this before indexing.
    pub fn validate(&self, path: &Path) -> Result<()> {
        let invalid = |message: String| Error::MatchValidation {
            path: path.to_path_buf(),
            message,
        };
        if self.teams[0] == self.teams[1] {
            return Err(invalid(format!("team {} listed twice", self.teams[0])));
        }
        let mut seen = BTreeSet::new();
        for team in &self.teams {
            let lineup = self
                .lineups
                .get(team)
                .ok_or_else(|| invalid(format!("no lineup for team {team}")))?;
            if lineup.len() != LINEUP_SIZE {
                return Err(invalid(format!(
                    "team {team} lists {} players, expected {LINEUP_SIZE}",
                    lineup.len()
                )));
            }
            let distinct: BTreeSet<&String> = lineup.iter().collect();
            if distinct.len() != LINEUP_SIZE {
                return Err(invalid(format!("team {team} lists a player twice")));
            }
            for id in lineup {
                if !seen.insert(id.as_str()) {
                    return Err(invalid(format!("player {id} appears in both lineups")));
                }
            }
        }
        if self.lineups.len() != 2 {
            return Err(invalid("lineups for teams outside the fixture".into()));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct Document {
    info: Info,
}

#[derive(Deserialize)]
struct Info {
    #[serde(default)]
    dates: Vec<String>,
    season: Option<Season>,
    #[serde(default)]
    teams: Vec<String>,
    #[serde(default)]
    players: HashMap<String, Vec<String>>,
    #[serde(default)]
    registry: Registry,
}

#[derive(Deserialize, Default)]
struct Registry {
    #[serde(default)]
    people: HashMap<String, String>,
}

// Cricsheet writes single-year seasons as numbers in some archives.
#[derive(Deserialize)]
#[serde(untagged)]
enum Season {
    Text(String),
    Number(i64),
}

/// Parses one Cricsheet JSON match document. `path` supplies the match id
/// (its file stem) and error context.
pub fn parse_match(path: &Path, raw: &str) -> Result<MatchRecord> {
    let doc: Document = serde_json::from_str(raw).map_err(|source| Error::MatchParse {
        path: path.to_path_buf(),
        source,
    })?;
    let invalid = |message: String| Error::MatchValidation {
        path: path.to_path_buf(),
        message,
    };
    let info = doc.info;

    let match_id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| !s.is_empty())
        .ok_or_else(|| invalid("cannot derive a match id from the file name".into()))?
        .to_string();

    let first_date = info
        .dates
        .first()
        .ok_or_else(|| invalid("info.dates is empty".into()))?;
    let date = NaiveDate::parse_from_str(first_date, "%Y-%m-%d")
        .map_err(|e| invalid(format!("bad date {first_date:?}: {e}")))?;

    let season = match info.season {
        Some(Season::Text(s)) => s,
        Some(Season::Number(n)) => n.to_string(),
        None => date.format("%Y").to_string(),
    };

    let teams: [String; 2] = info
        .teams
        .try_into()
        .map_err(|t: Vec<String>| invalid(format!("expected 2 teams, found {}", t.len())))?;

    let mut unresolved = Vec::new();
    let mut lineups = BTreeMap::new();
    for team in &teams {
        let names = info
            .players
            .get(team)
            .ok_or_else(|| invalid(format!("no player list for team {team}")))?;
        if names.len() != LINEUP_SIZE {
            return Err(invalid(format!(
                "team {team} lists {} players, expected {LINEUP_SIZE}",
                names.len()
            )));
        }
        let mut ids = Vec::with_capacity(LINEUP_SIZE);
        for name in names {
            match info.registry.people.get(name) {
                Some(id) => ids.push(id.clone()),
                None => unresolved.push(name.clone()),
            }
        }
        lineups.insert(team.clone(), ids);
    }
    if !unresolved.is_empty() {
        return Err(Error::UnresolvedIdentity {
            path: path.to_path_buf(),
            names: unresolved,
        });
    }

    let record = MatchRecord {
        match_id,
        date,
        season,
        teams,
        lineups,
    };
    record.validate(path)?;
    Ok(record)
}

/// A manually authored match uses the archive schema verbatim.
pub fn load_supplement(path: &Path, raw: &str) -> Result<MatchRecord> {
    parse_match(path, raw)
}
