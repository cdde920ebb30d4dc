//! Text formats: the line-oriented relation and game files plus the JSON
//! relation alternative, and the matching renderers.

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;

use ordex_core::{profile_universe, Game, Profile, Relation, Universe};

#[derive(Deserialize)]
struct JsonRelation {
    universe: Vec<String>,
    pairs: Vec<(String, String)>,
}

/// `#` starts a comment; the first payload line is `universe <label>+`,
/// every following line `pair <label> <label>`. A leading `{` switches to
/// the JSON form {"universe":[...],"pairs":[[a,b],...]}.
pub fn parse_relation_text(text: &str) -> Result<Relation> {
    if text.trim_start().starts_with('{') {
        let j: JsonRelation = serde_json::from_str(text).context("malformed JSON relation")?;
        let u = Universe::new(j.universe)?;
        return Ok(Relation::from_pairs(u, j.pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))?);
    }
    let mut universe = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        match keyword {
            "universe" => {
                if universe.is_some() {
                    bail!("line {}: duplicate universe line", lineno + 1);
                }
                universe = Some(Universe::new(words.map(str::to_string))?);
            }
            "pair" => {
                let a = words.next().ok_or_else(|| anyhow!("line {}: pair needs two labels", lineno + 1))?;
                let b = words.next().ok_or_else(|| anyhow!("line {}: pair needs two labels", lineno + 1))?;
                if words.next().is_some() {
                    bail!("line {}: pair takes exactly two labels", lineno + 1);
                }
                if universe.is_none() {
                    bail!("line {}: pair before universe line", lineno + 1);
                }
                pairs.push((a.to_string(), b.to_string()));
            }
            other => bail!("line {}: unknown keyword `{other}`", lineno + 1),
        }
    }
    let u = universe.ok_or_else(|| anyhow!("missing universe line"))?;
    Relation::from_pairs(u, pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())))
        .map_err(Into::into)
}

/// Inverse of `parse_relation_text` for the line format: one universe line,
/// one pair line per related pair in row-major order.
pub fn render_relation(r: &Relation) -> String {
    let u = r.universe();
    let mut out = String::from("universe");
    for l in u.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for (a, b) in r.labeled_pairs() {
        out.push_str(&format!("pair {a} {b}\n"));
    }
    out
}

/// `players k`, then `actions <i> <label>+` for each player, then per-player
/// `pref <i>` blocks of `pair <profile> <profile>` with `|`-joined profiles.
pub fn parse_game_text(text: &str) -> Result<Game> {
    let mut players: Option<usize> = None;
    let mut actions: Vec<Option<Vec<String>>> = Vec::new();
    let mut pref_pairs: Vec<Vec<(String, String)>> = Vec::new();
    let mut current: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap();
        let at = |msg: &str| anyhow!("line {}: {msg}", lineno + 1);
        match keyword {
            "players" => {
                let k: usize = words
                    .next()
                    .ok_or_else(|| at("players needs a count"))?
                    .parse()
                    .map_err(|_| at("players count must be a number"))?;
                if k == 0 {
                    return Err(at("players count must be positive"));
                }
                players = Some(k);
                actions = vec![None; k];
                pref_pairs = vec![Vec::new(); k];
            }
            "actions" => {
                let k = players.ok_or_else(|| at("actions before players line"))?;
                let i: usize = words
                    .next()
                    .ok_or_else(|| at("actions needs a player index"))?
                    .parse()
                    .map_err(|_| at("player index must be a number"))?;
                if i >= k {
                    return Err(at("player index out of range"));
                }
                let labels: Vec<String> = words.map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(at("actions needs at least one label"));
                }
                actions[i] = Some(labels);
            }
            "pref" => {
                let k = players.ok_or_else(|| at("pref before players line"))?;
                let i: usize = words
                    .next()
                    .ok_or_else(|| at("pref needs a player index"))?
                    .parse()
                    .map_err(|_| at("player index must be a number"))?;
                if i >= k {
                    return Err(at("player index out of range"));
                }
                current = Some(i);
            }
            "pair" => {
                let i = current.ok_or_else(|| at("pair before any pref line"))?;
                let a = words.next().ok_or_else(|| at("pair needs two profiles"))?;
                let b = words.next().ok_or_else(|| at("pair needs two profiles"))?;
                if words.next().is_some() {
                    return Err(at("pair takes exactly two profiles"));
                }
                pref_pairs[i].push((a.to_string(), b.to_string()));
            }
            other => return Err(at(&format!("unknown keyword `{other}`"))),
        }
    }
    let k = players.ok_or_else(|| anyhow!("missing players line"))?;
    let actions: Vec<Vec<String>> = actions
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| anyhow!("missing actions line for player {i}")))
        .collect::<Result<_>>()?;
    let universe = profile_universe(&actions)?;
    let mut game = Game::with_empty_prefs(actions)?;
    for (i, pairs) in pref_pairs.iter().enumerate() {
        // route profile labels through the index to validate coordinates
        let index_pairs: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| {
                let pa = game.profile_index(&Profile::parse(a))?;
                let pb = game.profile_index(&Profile::parse(b))?;
                Ok::<_, ordex_core::Error>((pa, pb))
            })
            .collect::<std::result::Result<_, _>>()
            .with_context(|| format!("in pref block of player {i} ({k} players)"))?;
        game.set_pref(i, Relation::from_index_pairs(universe.clone(), index_pairs))?;
    }
    Ok(game)
}
