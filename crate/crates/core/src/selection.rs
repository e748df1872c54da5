//! Eligibility filtering, per-metric rankings, role-quota team sheets and
//! comparison against an official squad.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use chrono::{Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{PlayerRecord, Role};
use crate::metrics::MetricReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Degree,
    Betweenness,
    Closeness,
    Clustering,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Degree,
        Metric::Betweenness,
        Metric::Closeness,
        Metric::Clustering,
    ];
    pub const CENTRALITY: [Metric; 3] = [Metric::Degree, Metric::Betweenness, Metric::Closeness];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Betweenness => "betweenness",
            Metric::Closeness => "closeness",
            Metric::Clustering => "clustering",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown metric {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityRules {
    pub as_of_date: NaiveDate,
    pub max_age: u32,
    pub stale_window_min_age: u32,
    pub stale_years: u32,
    pub require_nationality: String,
}

impl Default for EligibilityRules {
    fn default() -> Self {
        EligibilityRules {
            as_of_date: NaiveDate::from_ymd_opt(2022, 10, 1).expect("valid date"),
            max_age: 40,
            stale_window_min_age: 35,
            stale_years: 5,
            require_nationality: "Pakistan".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Exclusion {
    Nationality { nationality: String },
    Banned,
    Retired,
    Age { age: u32 },
    /// Aged in the stale window without a recent international appearance.
    Stale {
        age: u32,
        last_intl_t20: Option<NaiveDate>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EligibilityReport {
    pub eligible: BTreeSet<String>,
    pub excluded: BTreeMap<String, Exclusion>,
    /// Players that could not be judged (missing enrichment or birth date).
    /// They are left out of the eligible set.
    pub indeterminate: BTreeMap<String, String>,
}

fn age_on(birth: NaiveDate, on: NaiveDate) -> u32 {
    on.years_since(birth).unwrap_or(0)
}

impl EligibilityRules {
    pub fn validate(&self) -> Result<()> {
        if self.stale_window_min_age >= self.max_age || self.stale_years == 0 {
            return Err(Error::InvalidRules(
                "need stale_window_min_age < max_age and stale_years > 0".into(),
            ));
        }
        Ok(())
    }

    /// `Ok(())` when eligible, otherwise the first failing rule.
    pub fn judge(&self, player: &PlayerRecord) -> std::result::Result<(), Option<Exclusion>> {
        if !player.nationality.eq_ignore_ascii_case(&self.require_nationality) {
            return Err(Some(Exclusion::Nationality {
                nationality: player.nationality.clone(),
            }));
        }
        if player.banned {
            return Err(Some(Exclusion::Banned));
        }
        if player.retired_intl_t20 {
            return Err(Some(Exclusion::Retired));
        }
        let Some(birth) = player.birth_date else {
            return Err(None);
        };
        let age = age_on(birth, self.as_of_date);
        if age >= self.max_age {
            return Err(Some(Exclusion::Age { age }));
        }
        if age >= self.stale_window_min_age {
            let cutoff = self
                .as_of_date
                .checked_sub_months(Months::new(12 * self.stale_years))
                .unwrap_or(NaiveDate::MIN);
            let recent = player.last_intl_t20.is_some_and(|d| d > cutoff);
            if !recent {
                return Err(Some(Exclusion::Stale {
                    age,
                    last_intl_t20: player.last_intl_t20,
                }));
            }
        }
        Ok(())
    }
}

/// Splits `pool` into eligible, excluded and indeterminate players.
/// Pool members without a record are indeterminate.
pub fn filter_eligible<'a>(
    pool: impl IntoIterator<Item = &'a str>,
    players: &BTreeMap<String, PlayerRecord>,
    rules: &EligibilityRules,
) -> EligibilityReport {
    let mut report = EligibilityReport::default();
    for id in pool {
        let Some(player) = players.get(id) else {
            report
                .indeterminate
                .insert(id.to_string(), "no enrichment row".into());
            continue;
        };
        match rules.judge(player) {
            Ok(()) => {
                report.eligible.insert(id.to_string());
            }
            Err(Some(reason)) => {
                report.excluded.insert(id.to_string(), reason);
            }
            Err(None) => {
                report
                    .indeterminate
                    .insert(id.to_string(), "missing birth date".into());
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    /// 1-based position among all eligible players.
    pub rank: usize,
    /// 1-based position among eligible players of the same role.
    pub role_rank: usize,
    pub player_id: String,
    pub name: String,
    pub role: Role,
    pub value: f64,
    pub total_matches: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub metric: Metric,
    pub rows: Vec<RankRow>,
}

/// Ranks eligible players by `metric`, highest first. Ties go to the player
/// with more matches, then to the smaller identifier.
pub fn rank_by(
    report: &MetricReport,
    players: &BTreeMap<String, PlayerRecord>,
    eligible: &BTreeSet<String>,
    total_matches: &BTreeMap<String, usize>,
    metric: Metric,
) -> Result<Ranking> {
    let mut rows: Vec<RankRow> = report
        .players
        .iter()
        .filter(|p| eligible.contains(&p.player_id))
        .filter_map(|p| {
            let record = players.get(&p.player_id)?;
            let value = match metric {
                Metric::Degree => f64::from(p.degree),
                Metric::Betweenness => p.betweenness,
                Metric::Closeness => p.closeness.unwrap_or(0.0),
                Metric::Clustering => p.local_clustering,
            };
            Some(RankRow {
                rank: 0,
                role_rank: 0,
                player_id: p.player_id.clone(),
                name: record.display_name.clone(),
                role: record.role,
                value,
                total_matches: total_matches.get(&p.player_id).copied().unwrap_or(0),
            })
        })
        .collect();
    if rows.is_empty() {
        return Err(Error::EmptyRanking);
    }
    rows.sort_by(|a, b| {
        b.value
            .total_cmp(&a.value)
            .then(b.total_matches.cmp(&a.total_matches))
            .then_with(|| a.player_id.cmp(&b.player_id))
    });
    let mut per_role: HashMap<Role, usize> = HashMap::new();
    for (k, row) in rows.iter_mut().enumerate() {
        row.rank = k + 1;
        let slot = per_role.entry(row.role).or_insert(0);
        *slot += 1;
        row.role_rank = *slot;
    }
    Ok(Ranking { metric, rows })
}

impl Ranking {
    pub fn position(&self, player_id: &str) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.player_id == player_id)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(["rank", "role_rank", "id", "name", "role", "value", "matches"]);
        for r in &self.rows {
            let _ = w.write_record([
                r.rank.to_string(),
                r.role_rank.to_string(),
                r.player_id.clone(),
                r.name.clone(),
                r.role.to_string(),
                format!("{:.8}", r.value),
                r.total_matches.to_string(),
            ]);
        }
        String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
    }
}

/// Players required per role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition(pub BTreeMap<Role, usize>);

impl Default for Composition {
    /// 6 batters, 2 wicket-keepers, 3 all-rounders, 7 bowlers.
    fn default() -> Self {
        Composition(BTreeMap::from([
            (Role::Bat, 6),
            (Role::Wk, 2),
            (Role::All, 3),
            (Role::Ball, 7),
        ]))
    }
}

impl Composition {
    pub fn quota(&self, role: Role) -> usize {
        self.0.get(&role).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.0.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamSheet {
    pub metric: Metric,
    pub composition: Composition,
    /// Members per role, best-ranked first.
    pub members: BTreeMap<Role, Vec<RankRow>>,
}

/// Fills each role's quota with that role's top-ranked players.
pub fn form_team(ranking: &Ranking, composition: &Composition) -> Result<TeamSheet> {
    let mut members = BTreeMap::new();
    for role in Role::ALL_ROLES {
        let needed = composition.quota(role);
        let picked: Vec<RankRow> = ranking
            .rows
            .iter()
            .filter(|r| r.role == role)
            .take(needed)
            .cloned()
            .collect();
        if picked.len() < needed {
            return Err(Error::RoleShortfall {
                role,
                needed,
                available: picked.len(),
            });
        }
        if needed > 0 {
            members.insert(role, picked);
        }
    }
    Ok(TeamSheet {
        metric: ranking.metric,
        composition: composition.clone(),
        members,
    })
}

impl TeamSheet {
    pub fn member_ids(&self) -> BTreeSet<&str> {
        self.members
            .values()
            .flatten()
            .map(|r| r.player_id.as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.members.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Members in display order: roles as in [`Role::ALL_ROLES`], then rank.
    pub fn ordered(&self) -> impl Iterator<Item = &RankRow> {
        Role::ALL_ROLES
            .iter()
            .filter_map(|role| self.members.get(role))
            .flatten()
    }
}

/// `metric,role,rank,role_rank,id,name,value` rows for each sheet.
pub fn teams_to_csv(teams: &[TeamSheet]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record(["metric", "role", "rank", "role_rank", "id", "name", "value"]);
    for team in teams {
        for r in team.ordered() {
            let _ = w.write_record([
                team.metric.to_string(),
                r.role.to_string(),
                r.rank.to_string(),
                r.role_rank.to_string(),
                r.player_id.clone(),
                r.name.clone(),
                format!("{:.8}", r.value),
            ]);
        }
    }
    String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
}

/// Side-by-side text table with one column per sheet.
pub fn format_team_table(teams: &[TeamSheet]) -> String {
    let columns: Vec<Vec<String>> = teams
        .iter()
        .map(|t| {
            t.ordered()
                .map(|r| format!("{} ({})", r.name, r.role))
                .collect()
        })
        .collect();
    let headers: Vec<String> = teams.iter().map(|t| t.metric.to_string()).collect();
    let widths: Vec<usize> = columns
        .iter()
        .zip(&headers)
        .map(|(col, h)| col.iter().map(String::len).chain([h.len()]).max().unwrap_or(0))
        .collect();
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join(" | ")
            .trim_end()
            .to_string()
    };
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    let _ = writeln!(out, "{}", line(&header_refs));
    let _ = writeln!(
        out,
        "{}",
        widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
    );
    for k in 0..rows {
        let cells: Vec<&str> = columns
            .iter()
            .map(|c| c.get(k).map_or("", String::as_str))
            .collect();
        let _ = writeln!(out, "{}", line(&cells));
    }
    out
}

/// A member of an official squad.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquadEntry {
    pub player_id: String,
    pub name: String,
    pub role: Role,
}

/// Parses an `identifier,name,role` squad CSV.
pub fn parse_squad(path: &Path, raw: &str) -> Result<Vec<SquadEntry>> {
    let mut reader = csv::Reader::from_reader(raw.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Csv {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        })?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::Csv {
                path: path.to_path_buf(),
                line: 1,
                message: format!("missing column {name:?}"),
            })
    };
    let (id_col, name_col, role_col) = (col("identifier")?, col("name")?, col("role")?);
    let mut entries = Vec::new();
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
        let id = record.get(id_col).unwrap_or("").trim();
        if id.is_empty() {
            return Err(bad("blank identifier".into()));
        }
        entries.push(SquadEntry {
            player_id: id.to_string(),
            name: record.get(name_col).unwrap_or("").trim().to_string(),
            role: record.get(role_col).unwrap_or("").parse().map_err(bad)?,
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankPosition {
    pub rank: usize,
    pub role_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearMiss {
    pub player_id: String,
    pub name: String,
    pub role: Role,
    /// Position in each supplied ranking; `None` when not eligible.
    pub ranks: BTreeMap<Metric, Option<RankPosition>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquadDiff {
    pub metrics: Vec<Metric>,
    /// Distinct players across the compared sheets.
    pub union_size: usize,
    /// Official players present in some sheet, in squad order.
    pub included: Vec<String>,
    /// Official players absent from every sheet, in squad order.
    pub excluded: Vec<String>,
    /// Sheet members absent from the official squad.
    pub not_in_official: Vec<String>,
    pub near_misses: Vec<NearMiss>,
}

/// Compares the union of `teams` with `official`. Every official id must be
/// in `known_ids`.
pub fn diff_squad(
    teams: &[TeamSheet],
    official: &[SquadEntry],
    known_ids: &BTreeSet<String>,
    rankings: &[Ranking],
) -> Result<SquadDiff> {
    if official.is_empty() {
        return Err(Error::UnknownPlayers(vec!["<empty official squad>".into()]));
    }
    let unknown: Vec<String> = official
        .iter()
        .filter(|e| !known_ids.contains(&e.player_id))
        .map(|e| e.player_id.clone())
        .collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownPlayers(unknown));
    }
    let union: BTreeSet<&str> = teams.iter().flat_map(TeamSheet::member_ids).collect();
    let official_ids: BTreeSet<&str> = official.iter().map(|e| e.player_id.as_str()).collect();

    let (included, excluded): (Vec<&SquadEntry>, Vec<&SquadEntry>) = official
        .iter()
        .partition(|e| union.contains(e.player_id.as_str()));
    let near_misses = excluded
        .iter()
        .map(|e| NearMiss {
            player_id: e.player_id.clone(),
            name: e.name.clone(),
            role: e.role,
            ranks: rankings
                .iter()
                .map(|r| {
                    let pos = r.position(&e.player_id).map(|row| RankPosition {
                        rank: row.rank,
                        role_rank: row.role_rank,
                    });
                    (r.metric, pos)
                })
                .collect(),
        })
        .collect();
    Ok(SquadDiff {
        metrics: teams.iter().map(|t| t.metric).collect(),
        union_size: union.len(),
        included: included.iter().map(|e| e.player_id.clone()).collect(),
        excluded: excluded.iter().map(|e| e.player_id.clone()).collect(),
        not_in_official: union
            .iter()
            .filter(|id| !official_ids.contains(*id))
            .map(|id| id.to_string())
            .collect(),
        near_misses,
    })
}

impl SquadDiff {
    /// `id,name,role,status` plus `<metric>_rank,<metric>_role_rank` for
    /// each excluded official player.
    pub fn to_csv(&self, official: &[SquadEntry]) -> String {
        let metrics: Vec<Metric> = self
            .near_misses
            .first()
            .map(|n| n.ranks.keys().copied().collect())
            .unwrap_or_default();
        let mut header = vec!["id".to_string(), "name".into(), "role".into(), "status".into()];
        for m in &metrics {
            header.push(format!("{m}_rank"));
            header.push(format!("{m}_role_rank"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record(&header);
        for e in official {
            let near = self.near_misses.iter().find(|n| n.player_id == e.player_id);
            let status = if near.is_some() { "excluded" } else { "included" };
            let mut row = vec![e.player_id.clone(), e.name.clone(), e.role.to_string(), status.into()];
            for m in &metrics {
                let pos = near.and_then(|n| n.ranks.get(m).copied().flatten());
                row.push(pos.map(|p| p.rank.to_string()).unwrap_or_default());
                row.push(pos.map(|p| p.role_rank.to_string()).unwrap_or_default());
            }
            let _ = w.write_record(&row);
        }
        String::from_utf8(w.into_inner().unwrap_or_default()).unwrap_or_default()
    }
}
