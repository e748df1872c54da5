//! Synthetic league written in the archive layout: per-match JSON files, a
//! people registry, enrichment and an official squad.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chrono::{Duration, NaiveDate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub const POOL: usize = 96;
pub const TEAMS: [&str; 6] = [
    "Islamabad United",
    "Karachi Kings",
    "Lahore Qalandars",
    "Multan Sultans",
    "Peshawar Zalmi",
    "Quetta Gladiators",
];
pub const SEASONS: usize = 3;
pub const MATCHES_PER_SEASON: usize = 15;

pub struct League {
    pub root: PathBuf,
    pub archive: PathBuf,
    pub registry: PathBuf,
    pub enrichment: PathBuf,
    pub squad: PathBuf,
}

pub fn player_id(i: usize) -> String {
    format!("{:08x}", 0x1a2b_0000 + i * 7919)
}

/// Name as it appears in match files. Players 40 and 41 share a display
/// name and are told apart by their unique names.
pub fn match_name(i: usize) -> String {
    match i {
        40 => "Ali Khan".into(),
        41 => "Ali Khan (2)".into(),
        _ => format!("Player {i:02}"),
    }
}

fn display_name(i: usize) -> String {
    match i {
        40 | 41 => "Ali Khan".into(),
        _ => format!("Player {i:02}"),
    }
}

pub fn role(i: usize) -> &'static str {
    ["BAT", "BAT", "BAT", "WK", "ALL", "ALL", "BALL", "BALL", "BALL", "BAT"][i % 10]
}

pub fn write_league(root: &Path, seed: u64) -> League {
    let archive = root.join("archive");
    fs::create_dir_all(&archive).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<usize> = (0..POOL).collect();
    let start = NaiveDate::from_ymd_opt(2016, 2, 4).unwrap();
    let mut number = 0;
    for season in 0..SEASONS {
        pool.shuffle(&mut rng);
        let rosters: Vec<&[usize]> = pool.chunks(POOL / TEAMS.len()).collect();
        for k in 0..MATCHES_PER_SEASON {
            let home = rng.gen_range(0..TEAMS.len());
            let away = (home + rng.gen_range(1..TEAMS.len())) % TEAMS.len();
            let mut people = serde_json::Map::new();
            let mut players = serde_json::Map::new();
            for team in [home, away] {
                let xi: Vec<usize> = rosters[team].choose_multiple(&mut rng, 11).copied().collect();
                for &p in &xi {
                    people.insert(match_name(p), json!(player_id(p)));
                }
                players.insert(
                    TEAMS[team].into(),
                    json!(xi.iter().map(|&p| match_name(p)).collect::<Vec<_>>()),
                );
            }
            people.insert("Umpire One".into(), json!("ffff0001"));
            let date = start + Duration::days((365 * season + 2 * k) as i64);
            let doc = json!({
                "meta": {"data_version": "1.1.0", "revision": 1},
                "info": {
                    "dates": [date.format("%Y-%m-%d").to_string()],
                    "season": 2016 + season as i64,
                    "event": {"name": "Synthetic League", "match_number": k + 1},
                    "teams": [TEAMS[home], TEAMS[away]],
                    "players": players,
                    "officials": {"umpires": ["Umpire One"]},
                    "registry": {"people": people},
                },
                "innings": [],
            });
            number += 1;
            fs::write(archive.join(format!("{}.json", 900_000 + number)), doc.to_string()).unwrap();
        }
    }

    let registry = root.join("people.csv");
    let mut people = String::from("identifier,name,unique_name\n");
    for i in 0..POOL {
        people.push_str(&format!("{},{},{}\n", player_id(i), display_name(i), match_name(i)));
    }
    people.push_str("ffff0001,Umpire One,Umpire One\n");
    fs::write(&registry, people).unwrap();

    let enrichment = root.join("enrichment.csv");
    let mut rows = String::from("identifier,role,nationality,birth_date,last_intl_t20,retired,banned\n");
    for i in 0..POOL {
        let nationality = if i % 12 == 5 { "Australia" } else { "Pakistan" };
        let birth = match i {
            13 => String::new(),
            _ if i % 17 == 0 => "1980-03-01".into(),
            _ if i % 11 == 0 => "1985-06-15".into(),
            _ => format!("{}-0{}-1{}", 1990 + i % 12, 1 + i % 9, i % 10),
        };
        let last = if i % 22 == 0 { "2021-08-01" } else { "" };
        let retired = u8::from(i == 9);
        let banned = u8::from(i == 7);
        rows.push_str(&format!(
            "{},{},{nationality},{birth},{last},{retired},{banned}\n",
            player_id(i),
            role(i)
        ));
    }
    fs::write(&enrichment, rows).unwrap();

    let squad = root.join("squad.csv");
    let mut lines = String::from("identifier,name,role\n");
    let mut quota = [("BAT", 6), ("WK", 2), ("ALL", 3), ("BALL", 7)];
    for i in (1..POOL).step_by(3) {
        if let Some(q) = quota.iter_mut().find(|(r, n)| *r == role(i) && *n > 0) {
            q.1 -= 1;
            lines.push_str(&format!("{},{},{}\n", player_id(i), display_name(i), role(i)));
        }
    }
    assert!(quota.iter().all(|(_, n)| *n == 0), "squad quotas unfilled: {quota:?}");
    fs::write(&squad, lines).unwrap();

    League {
        root: root.to_path_buf(),
        archive,
        registry,
        enrichment,
        squad,
    }
}

pub fn pslnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pslnet"))
        .args(args)
        .output()
        .expect("running pslnet")
}

pub fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// `ingest` then every downstream stage into `out`; panics on failure.
pub fn run_pipeline(league: &League, out: &Path) -> Vec<Output> {
    let o = arg(out);
    let (en, sq) = (arg(&league.enrichment), arg(&league.squad));
    let stages: Vec<Vec<&str>> = vec![
        vec!["ingest", "--archive", arg(&league.archive), "--registry", arg(&league.registry), "--out", o],
        vec!["analyze", "--out", o],
        vec!["compare-models", "--out", o, "--seed", "7", "--runs", "3"],
        vec!["rank", "--out", o, "--enrichment", en, "--metric", "betweenness"],
        vec!["form-team", "--out", o, "--enrichment", en],
        vec!["diff-squad", "--out", o, "--enrichment", en, "--squad", sq],
    ];
    stages
        .iter()
        .map(|args| {
            let out = pslnet(args);
            assert!(
                out.status.success(),
                "{args:?} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            out
        })
        .collect()
}

/// Relative path and contents of every file under `dir`, sorted.
pub fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    fn walk(base: &Path, dir: &Path, out: &mut Vec<(PathBuf, Vec<u8>)>) {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(base, &path, out);
            } else {
                out.push((path.strip_prefix(base).unwrap().to_path_buf(), fs::read(&path).unwrap()));
            }
        }
    }
    let mut out = Vec::new();
    walk(dir, dir, &mut out);
    out.sort();
    out
}
