//! Seeded synthetic workloads for the benchmarks.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use pslnet::ingest::{build_index, MatchRecord};
use pslnet::{InteractionGraph, ParticipationIndex};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `matches` fixtures between six franchises whose 16-player rosters are
/// redrawn from `players` every 34 matches.
pub fn league(players: usize, matches: usize, seed: u64) -> Vec<MatchRecord> {
    assert!(players >= 96, "six rosters of 16 need at least 96 players");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<String> = (0..players).map(|i| format!("{i:08x}")).collect();
    let date = NaiveDate::from_ymd_opt(2016, 2, 4).expect("valid date");
    let mut out = Vec::with_capacity(matches);
    for m in 0..matches {
        if m % 34 == 0 {
            pool.shuffle(&mut rng);
        }
        let mut teams = [0usize, 1, 2, 3, 4, 5];
        teams.shuffle(&mut rng);
        let xi = |t: usize, rng: &mut ChaCha8Rng| -> Vec<String> {
            pool[t * 16..(t + 1) * 16].choose_multiple(rng, 11).cloned().collect()
        };
        let (home, away) = (xi(teams[0], &mut rng), xi(teams[1], &mut rng));
        let names = [format!("T{}", teams[0]), format!("T{}", teams[1])];
        out.push(MatchRecord {
            match_id: format!("{m:06}"),
            date,
            season: (2016 + m / 34).to_string(),
            lineups: BTreeMap::from([(names[0].clone(), home), (names[1].clone(), away)]),
            teams: names,
        });
    }
    out
}

/// League of PSL-like scale: 214 matches over a 284-player pool.
pub fn psl_scale(seed: u64) -> (Vec<MatchRecord>, ParticipationIndex, InteractionGraph) {
    let matches = league(284, 214, seed);
    let index = build_index(&matches);
    let graph = pslnet::graph::build_network(&index, &matches).expect("valid league");
    (matches, index, graph)
}
