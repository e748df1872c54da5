//! Match archive, registry and participation index.

mod cricsheet;
mod registry;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cricsheet::{load_supplement, parse_match, MatchRecord, LINEUP_SIZE};
pub use registry::{
    join_players, parse_enrichment, parse_registry, Enrichment, PlayerRecord, RegistryEntry, Role,
};

/// Match sets `M_i` and their sizes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParticipationIndex {
    pub match_sets: BTreeMap<String, BTreeSet<String>>,
    pub total_matches: BTreeMap<String, usize>,
}

impl ParticipationIndex {
    pub fn len(&self) -> usize {
        self.match_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.match_sets.is_empty()
    }

    pub fn matches_of(&self, player_id: &str) -> Option<&BTreeSet<String>> {
        self.match_sets.get(player_id)
    }

    pub fn total(&self, player_id: &str) -> usize {
        self.total_matches.get(player_id).copied().unwrap_or(0)
    }

    pub fn player_ids(&self) -> impl Iterator<Item = &str> {
        self.match_sets.keys().map(String::as_str)
    }
}

/// Indexes every lineup appearance. Players who never appear get no entry.
pub fn build_index(matches: &[MatchRecord]) -> ParticipationIndex {
    let mut match_sets: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for m in matches {
        for id in m.participants() {
            match_sets
                .entry(id.to_string())
                .or_default()
                .insert(m.match_id.clone());
        }
    }
    let total_matches = match_sets
        .iter()
        .map(|(id, set)| (id.clone(), set.len()))
        .collect();
    ParticipationIndex {
        match_sets,
        total_matches,
    }
}

fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn parse_dir(dir: &Path) -> Result<Vec<(PathBuf, MatchRecord)>> {
    json_files(dir)?
        .into_par_iter()
        .map(|path| {
            let raw = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            let record = parse_match(&path, &raw)?;
            Ok((path, record))
        })
        .collect()
}

/// Parses every `*.json` file in `dir`, sorted by match id. An empty
/// directory is an error.
pub fn load_archive(dir: &Path) -> Result<Vec<MatchRecord>> {
    let parsed = parse_dir(dir)?;
    if parsed.is_empty() {
        return Err(Error::NoMatches(dir.to_path_buf()));
    }
    merge_supplement(Vec::new(), parsed)
}

/// Parses a directory of manually authored matches. A missing or empty
/// directory yields no records.
pub fn load_supplement_dir(dir: &Path) -> Result<Vec<(PathBuf, MatchRecord)>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    parse_dir(dir)
}

/// Adds supplement matches to the archive. A supplement whose match id is
/// already present is a conflict. The result is sorted by match id.
pub fn merge_supplement(
    archive: Vec<MatchRecord>,
    supplement: Vec<(PathBuf, MatchRecord)>,
) -> Result<Vec<MatchRecord>> {
    let mut by_id: BTreeMap<String, MatchRecord> = BTreeMap::new();
    for m in archive {
        by_id.insert(m.match_id.clone(), m);
    }
    for (path, m) in supplement {
        if by_id.contains_key(&m.match_id) {
            return Err(Error::MatchConflict {
                match_id: m.match_id,
                path,
            });
        }
        by_id.insert(m.match_id.clone(), m);
    }
    Ok(by_id.into_values().collect())
}

/// Archive plus optional supplement, merged and indexed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dataset {
    pub matches: Vec<MatchRecord>,
    pub index: ParticipationIndex,
}

impl Dataset {
    pub fn load(archive_dir: &Path, supplement_dir: Option<&Path>) -> Result<Self> {
        let archive = load_archive(archive_dir)?;
        let supplement = match supplement_dir {
            Some(dir) => load_supplement_dir(dir)?,
            None => Vec::new(),
        };
        Ok(Self::from_matches(merge_supplement(archive, supplement)?))
    }

    pub fn from_matches(mut matches: Vec<MatchRecord>) -> Self {
        matches.sort_by(|a, b| a.match_id.cmp(&b.match_id));
        let index = build_index(&matches);
        Dataset { matches, index }
    }
}
