use std::collections::BTreeMap;

use chrono::NaiveDate;

use crate::ingest::{MatchRecord, LINEUP_SIZE};

/// Match `id` between teams H and A. The named players are placed first and
/// each lineup is padded with players unique to this match.
pub(crate) fn record(id: &str, home: &[&str], away: &[&str]) -> MatchRecord {
    let pad = |side: &str, given: &[&str]| -> Vec<String> {
        let mut ids: Vec<String> = given.iter().map(|s| s.to_string()).collect();
        let mut k = 0;
        while ids.len() < LINEUP_SIZE {
            ids.push(format!("{id}-{side}-{k}"));
            k += 1;
        }
        ids
    };
    let mut lineups = BTreeMap::new();
    lineups.insert("H".to_string(), pad("h", home));
    lineups.insert("A".to_string(), pad("a", away));
    MatchRecord {
        match_id: id.to_string(),
        date: NaiveDate::from_ymd_opt(2020, 1, 1).unwrap(),
        season: "2020".into(),
        teams: ["H".into(), "A".into()],
        lineups,
    }
}
