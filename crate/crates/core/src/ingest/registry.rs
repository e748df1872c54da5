//! People registry and the curated enrichment sidecar.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Playing role as observed over a player's franchise career.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Role {
    Bat,
    Wk,
    All,
    Ball,
}

impl Role {
    /// Display order used by team sheets.
    pub const ALL_ROLES: [Role; 4] = [Role::Bat, Role::Wk, Role::All, Role::Ball];

    pub fn code(self) -> &'static str {
        match self {
            Role::Bat => "BAT",
            Role::Wk => "WK",
            Role::All => "ALL",
            Role::Ball => "BALL",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "BAT" | "BATTER" => Ok(Role::Bat),
            "WK" | "WICKET-KEEPER" | "WICKETKEEPER" => Ok(Role::Wk),
            "ALL" | "ALL-ROUNDER" | "ALLROUNDER" => Ok(Role::All),
            "BALL" | "BOWL" | "BOWLER" => Ok(Role::Ball),
            other => Err(format!("unknown role {other:?}")),
        }
    }
}

/// A row of the people registry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub player_id: String,
    pub display_name: String,
    pub aliases: Vec<String>,
}

/// Curated per-player facts used by the eligibility rules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enrichment {
    pub player_id: String,
    pub role: Role,
    pub nationality: String,
    pub birth_date: Option<NaiveDate>,
    pub last_intl_t20: Option<NaiveDate>,
    pub retired_intl_t20: bool,
    pub banned: bool,
}

/// Registry identity joined with its enrichment row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerRecord {
    pub player_id: String,
    pub display_name: String,
    pub aliases: Vec<String>,
    pub role: Role,
    pub nationality: String,
    pub birth_date: Option<NaiveDate>,
    pub last_intl_t20: Option<NaiveDate>,
    pub retired_intl_t20: bool,
    pub banned: bool,
}

struct Table {
    columns: HashMap<String, usize>,
    rows: Vec<(u64, csv::StringRecord)>,
}

fn read_table(path: &Path, raw: &str) -> Result<Table> {
    let csv_err = |line: u64, message: String| Error::Csv {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .from_reader(raw.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| csv_err(1, e.to_string()))?
        .clone();
    let columns = headers
        .iter()
        .enumerate()
        .map(|(i, h)| (h.trim().to_ascii_lowercase(), i))
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            csv_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push((line, record));
    }
    Ok(Table { columns, rows })
}

impl Table {
    fn require(&self, path: &Path, name: &str) -> Result<usize> {
        self.columns.get(name).copied().ok_or_else(|| Error::Csv {
            path: path.to_path_buf(),
            line: 1,
            message: format!("missing column {name:?}"),
        })
    }
}

fn field(record: &csv::StringRecord, column: Option<usize>) -> &str {
    column.and_then(|c| record.get(c)).unwrap_or("").trim()
}

/// Parses the people registry. Each identifier yields one entry; two rows
/// sharing a display name stay distinct players.
pub fn parse_registry(path: &Path, raw: &str) -> Result<Vec<RegistryEntry>> {
    let table = read_table(path, raw)?;
    let id_col = table.require(path, "identifier")?;
    let name_col = table.require(path, "name")?;
    let unique_col = table.columns.get("unique_name").copied();

    let mut first_seen: HashMap<String, u64> = HashMap::new();
    let mut entries = Vec::with_capacity(table.rows.len());
    for (line, record) in &table.rows {
        let id = field(record, Some(id_col));
        if id.is_empty() {
            return Err(Error::Csv {
                path: path.to_path_buf(),
                line: *line,
                message: "blank identifier".into(),
            });
        }
        if let Some(&first_line) = first_seen.get(id) {
            return Err(Error::DuplicateIdentifier {
                path: path.to_path_buf(),
                identifier: id.to_string(),
                first_line,
                line: *line,
            });
        }
        first_seen.insert(id.to_string(), *line);

        let name = field(record, Some(name_col));
        let unique = field(record, unique_col);
        let mut aliases = Vec::new();
        if !unique.is_empty() && unique != name {
            aliases.push(unique.to_string());
        }
        entries.push(RegistryEntry {
            player_id: id.to_string(),
            display_name: name.to_string(),
            aliases,
        });
    }
    Ok(entries)
}

fn parse_flag(value: &str) -> Option<bool> {
    match value.to_ascii_lowercase().as_str() {
        "" | "0" | "false" | "no" | "n" => Some(false),
        "1" | "true" | "yes" | "y" => Some(true),
        _ => None,
    }
}

fn parse_optional_date(value: &str) -> std::result::Result<Option<NaiveDate>, String> {
    if value.is_empty() {
        return Ok(None);
    }
    NaiveDate::parse_from_str(value, "%Y-%m-%d")
        .map(Some)
        .map_err(|e| format!("bad date {value:?}: {e}"))
}

/// Parses the curated enrichment CSV
/// (`identifier,role,nationality,birth_date,last_intl_t20,retired,banned`).
pub fn parse_enrichment(path: &Path, raw: &str) -> Result<Vec<Enrichment>> {
    let table = read_table(path, raw)?;
    let id_col = table.require(path, "identifier")?;
    let role_col = table.require(path, "role")?;
    let nat_col = table.require(path, "nationality")?;
    let birth_col = table.columns.get("birth_date").copied();
    let last_col = table.columns.get("last_intl_t20").copied();
    let retired_col = table.columns.get("retired").copied();
    let banned_col = table.columns.get("banned").copied();

    let mut first_seen: HashMap<String, u64> = HashMap::new();
    let mut rows = Vec::with_capacity(table.rows.len());
    for (line, record) in &table.rows {
        let row_err = |message: String| Error::Csv {
            path: path.to_path_buf(),
            line: *line,
            message,
        };
        let id = field(record, Some(id_col));
        if id.is_empty() {
            return Err(row_err("blank identifier".into()));
        }
        if let Some(&first_line) = first_seen.get(id) {
            return Err(Error::DuplicateIdentifier {
                path: path.to_path_buf(),
                identifier: id.to_string(),
                first_line,
                line: *line,
            });
        }
        first_seen.insert(id.to_string(), *line);

        let role = field(record, Some(role_col)).parse().map_err(row_err)?;
        let flag = |col: Option<usize>, what: &str| {
            let v = field(record, col);
            parse_flag(v).ok_or_else(|| row_err(format!("bad {what} flag {v:?}")))
        };
        rows.push(Enrichment {
            player_id: id.to_string(),
            role,
            nationality: field(record, Some(nat_col)).to_string(),
            birth_date: parse_optional_date(field(record, birth_col)).map_err(row_err)?,
            last_intl_t20: parse_optional_date(field(record, last_col)).map_err(row_err)?,
            retired_intl_t20: flag(retired_col, "retired")?,
            banned: flag(banned_col, "banned")?,
        });
    }
    Ok(rows)
}

/// Joins enrichment rows with registry identities. Every enrichment id must
/// exist in the registry; registry entries without enrichment are skipped.
pub fn join_players(
    registry: &[RegistryEntry],
    enrichment: &[Enrichment],
) -> Result<BTreeMap<String, PlayerRecord>> {
    let by_id: HashMap<&str, &RegistryEntry> = registry
        .iter()
        .map(|e| (e.player_id.as_str(), e))
        .collect();
    let mut unknown = Vec::new();
    let mut players = BTreeMap::new();
    for row in enrichment {
        let Some(entry) = by_id.get(row.player_id.as_str()) else {
            unknown.push(row.player_id.clone());
            continue;
        };
        players.insert(
            row.player_id.clone(),
            PlayerRecord {
                player_id: row.player_id.clone(),
                display_name: entry.display_name.clone(),
                aliases: entry.aliases.clone(),
                role: row.role,
                nationality: row.nationality.clone(),
                birth_date: row.birth_date,
                last_intl_t20: row.last_intl_t20,
                retired_intl_t20: row.retired_intl_t20,
                banned: row.banned,
            },
        );
    }
    if !unknown.is_empty() {
        return Err(Error::UnknownPlayers(unknown));
    }
    Ok(players)
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "identifier,name,unique_name,key_cricinfo\n";

    #[test]
    fn same_name_distinct_ids_stay_distinct() {
        let raw = format!(
            "{HEADER}aa11bb22,Mohammad Irfan,Mohammad Irfan,41434\ncc33dd44,Mohammad Irfan,Mohammad Irfan (5),1121010\n"
        );
        let entries = parse_registry(Path::new("people.csv"), &raw).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].display_name, entries[1].display_name);
        assert_ne!(entries[0].player_id, entries[1].player_id);
        assert!(entries[0].aliases.is_empty());
        assert_eq!(entries[1].aliases, vec!["Mohammad Irfan (5)"]);
    }

    #[test]
    fn empty_body_is_empty_list() {
        assert!(parse_registry(Path::new("p.csv"), HEADER).unwrap().is_empty());
    }

    #[test]
    fn blank_identifier_reports_line() {
        let raw = format!("{HEADER}aa11bb22,A,A,1\n,B,B,2\n");
        match parse_registry(Path::new("p.csv"), &raw) {
            Err(Error::Csv { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_identifier_is_rejected() {
        let raw = format!("{HEADER}aa11bb22,A,A,1\naa11bb22,A,A,1\n");
        match parse_registry(Path::new("p.csv"), &raw) {
            Err(Error::DuplicateIdentifier {
                identifier, line, ..
            }) => {
                assert_eq!(identifier, "aa11bb22");
                assert_eq!(line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_identifier_column() {
        assert!(parse_registry(Path::new("p.csv"), "name\nA\n").is_err());
    }

    #[test]
    fn enrichment_rows_and_join() {
        let raw = "identifier,role,nationality,birth_date,last_intl_t20,retired,banned\n\
                   aa11bb22,BALL,Pakistan,1985-06-28,2021-11-07,false,no\n\
                   cc33dd44,bat,Australia,,,1,0\n";
        let rows = parse_enrichment(Path::new("e.csv"), raw).unwrap();
        assert_eq!(rows[0].role, Role::Ball);
        assert_eq!(rows[1].role, Role::Bat);
        assert_eq!(rows[1].birth_date, None);
        assert!(rows[1].retired_intl_t20);

        let registry = parse_registry(
            Path::new("p.csv"),
            &format!("{HEADER}aa11bb22,X,X,1\ncc33dd44,Y,Y,2\n"),
        )
        .unwrap();
        let joined = join_players(&registry, &rows).unwrap();
        assert_eq!(joined["aa11bb22"].display_name, "X");
        assert!(join_players(&registry[..1], &rows).is_err());
    }

    #[test]
    fn enrichment_bad_role_reports_line() {
        let raw = "identifier,role,nationality\naa,BAT,Pakistan\nbb,KEEPER,Pakistan\n";
        match parse_enrichment(Path::new("e.csv"), raw) {
            Err(Error::Csv { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("KEEPER"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
