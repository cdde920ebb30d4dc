//! Finite normal-form games whose players rank action profiles by possibly
//! incomplete binary relations: equilibria under strict-part deviations,
//! completions, and the equilibrium-union verification.

use std::sync::Arc;

use serde::Serialize;

use crate::consistency::is_s_consistent;
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::universe::Universe;

/// One action label per player, player 0 first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile(pub Vec<String>);

impl Profile {
    pub fn label(&self) -> String {
        self.0.join("|")
    }

    pub fn parse(s: &str) -> Profile {
        Profile(s.split('|').map(str::to_string).collect())
    }
}

/// Players are indexed from 0; every preference relation lives on the shared
/// profile universe, whose labels are `|`-joined action tuples in row-major
/// order with player 0 outermost.
#[derive(Debug, Clone)]
pub struct Game {
    actions: Vec<Vec<String>>,
    universe: Arc<Universe>,
    prefs: Vec<Relation>,
}

/// The profile universe induced by per-player action sets.
pub fn profile_universe(actions: &[Vec<String>]) -> Result<Arc<Universe>> {
    if actions.is_empty() || actions.iter().any(|a| a.is_empty()) {
        return Err(Error::EmptyUniverse);
    }
    let mut labels = vec![String::new()];
    for acts in actions {
        let mut next = Vec::with_capacity(labels.len() * acts.len());
        for prefix in &labels {
            for a in acts {
                next.push(if prefix.is_empty() {
                    a.clone()
                } else {
                    format!("{prefix}|{a}")
                });
            }
        }
        labels = next;
    }
    Universe::new(labels)
}

impl Game {
    pub fn new(actions: Vec<Vec<String>>, prefs: Vec<Relation>) -> Result<Game> {
        let universe = profile_universe(&actions)?;
        if prefs.len() != actions.len() {
            return Err(Error::ProfileArity { got: prefs.len(), want: actions.len() });
        }
        for r in &prefs {
            if *r.universe() != universe {
                return Err(Error::UniverseMismatch);
            }
        }
        Ok(Game { actions, universe, prefs })
    }

    /// A game with the given action sets and fully incomparable preferences.
    pub fn with_empty_prefs(actions: Vec<Vec<String>>) -> Result<Game> {
        let universe = profile_universe(&actions)?;
        let prefs = vec![Relation::empty(universe.clone()); actions.len()];
        Ok(Game { actions, universe, prefs })
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn pref(&self, player: usize) -> &Relation {
        &self.prefs[player]
    }

    pub fn set_pref(&mut self, player: usize, r: Relation) -> Result<()> {
        if *r.universe() != self.universe {
            return Err(Error::UniverseMismatch);
        }
        self.prefs[player] = r;
        Ok(())
    }

    pub fn profile_count(&self) -> usize {
        self.universe.size()
    }

    pub fn profile_index(&self, p: &Profile) -> Result<usize> {
        if p.0.len() != self.actions.len() {
            return Err(Error::ProfileArity { got: p.0.len(), want: self.actions.len() });
        }
        let mut idx = 0;
        for (player, a) in p.0.iter().enumerate() {
            let pos = self.actions[player].iter().position(|x| x == a).ok_or_else(|| {
                Error::UnknownAction { player, action: a.clone() }
            })?;
            idx = idx * self.actions[player].len() + pos;
        }
        Ok(idx)
    }

    pub fn profile_from_index(&self, mut idx: usize) -> Profile {
        let mut coords = vec![0usize; self.actions.len()];
        for player in (0..self.actions.len()).rev() {
            coords[player] = idx % self.actions[player].len();
            idx /= self.actions[player].len();
        }
        Profile(
            coords
                .iter()
                .enumerate()
                .map(|(player, &c)| self.actions[player][c].clone())
                .collect(),
        )
    }

    /// Profile indices reachable from `idx` when `player` deviates alone,
    /// the profile itself excluded.
    fn deviations(&self, idx: usize, player: usize) -> Vec<usize> {
        let mut stride = 1;
        for p in (player + 1)..self.actions.len() {
            stride *= self.actions[p].len();
        }
        let k = self.actions[player].len();
        let base = idx - (idx / stride % k) * stride;
        (0..k).map(|c| base + c * stride).filter(|&q| q != idx).collect()
    }
}

/// How a profitable deviation is read off the preference relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Deviation {
    /// The deviation must be strictly preferred: the default, matching the
    /// maximality reading.
    Strict,
    /// Any weakly related deviation already disqualifies the profile: the
    /// literal quantifier-over-R reading.
    Weak,
}

pub fn nash_equilibria_with(g: &Game, semantics: Deviation) -> Vec<usize> {
    let strict: Vec<Relation> = g.prefs.iter().map(Relation::asymmetric_part).collect();
    (0..g.profile_count())
        .filter(|&a| {
            (0..g.players()).all(|i| {
                g.deviations(a, i).into_iter().all(|d| match semantics {
                    Deviation::Strict => !strict[i].contains(d, a),
                    Deviation::Weak => !g.prefs[i].contains(d, a),
                })
            })
        })
        .collect()
}

pub fn nash_equilibria(g: &Game) -> Vec<usize> {
    nash_equilibria_with(g, Deviation::Strict)
}

pub fn nash_equilibrium_profiles(g: &Game) -> Vec<Profile> {
    nash_equilibria(g).into_iter().map(|i| g.profile_from_index(i)).collect()
}

/// Number of completions: the product over players of 3^(incomparable
/// unordered pairs of R_i u diag).
pub fn completion_count(g: &Game) -> u64 {
    (0..g.players())
        .map(|i| {
            3u64.checked_pow(g.pref(i).reflexivize().incomparable_unordered().len() as u32)
                .unwrap_or(u64::MAX)
        })
        .fold(1u64, |acc, k| acc.saturating_mul(k))
}

/// All games whose preferences are reflexive complete extensions of the
/// originals, as the cartesian product of per-player completions.
pub fn enumerate_completions(g: &Game, cap: u64) -> Result<Vec<Game>> {
    let needed = completion_count(g);
    if needed > cap {
        return Err(Error::CapExceeded { cap, needed });
    }
    let per_player: Vec<Vec<Relation>> = g
        .prefs
        .iter()
        .map(|r| crate::extension::enumerate_tournament_extensions(r, cap))
        .collect::<Result<_>>()?;
    let mut out = vec![g.clone()];
    for (i, options) in per_player.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for partial in &out {
            for opt in options {
                let mut game = partial.clone();
                game.prefs[i] = opt.clone();
                next.push(game);
            }
        }
        out = next;
    }
    Ok(out)
}

/// A completion in which `astar` stays an equilibrium: every incomparable
/// pair involving astar is oriented in astar's favor, all the rest
/// lexicographically. Requires astar to be an equilibrium of the original
/// game and every preference to be S-consistent.
pub fn witness_completion(g: &Game, astar: &Profile) -> Result<Game> {
    let a = g.profile_index(astar)?;
    if !nash_equilibria(g).contains(&a) {
        return Err(Error::NotEquilibrium);
    }
    for i in 0..g.players() {
        if !is_s_consistent(g.pref(i)) {
            return Err(Error::PlayerInconsistent { player: i });
        }
    }
    let mut out = g.clone();
    for i in 0..g.players() {
        let mut q = g.pref(i).reflexivize();
        for (x, y) in q.incomparable_unordered() {
            // unordered pairs come out with x < y
            let (top, bottom) = if y == a { (y, x) } else { (x, y) };
            q = q.with_pair(top, bottom);
        }
        out.prefs[i] = q;
    }
    debug_assert!(nash_equilibria(&out).contains(&a));
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletionUnionReport {
    /// Completions examined; the full count when exhaustive.
    pub completions: u64,
    pub exhaustive: bool,
    pub nash_count: usize,
    pub union_count: usize,
    pub equal: bool,
    /// A profile label and the side it witnesses: "nash-only" profiles are
    /// equilibria of G missed by every examined completion, "union-only"
    /// would refute the easy inclusion.
    pub witness: Option<(String, String)>,
}

/// Compares N(G) with the union of N(G') over completions G'. Exhaustive
/// when the completion count fits under `cap`; otherwise a deterministic
/// stride sample of completions is used and the result is flagged partial.
pub fn completion_union_check(g: &Game, cap: u64) -> CompletionUnionReport {
    completion_union_check_seeded(g, cap, 0)
}

/// As `completion_union_check`; in partial mode the seed rotates which
/// completions the stride sample visits.
pub fn completion_union_check_seeded(g: &Game, cap: u64, seed: u64) -> CompletionUnionReport {
    let total = completion_count(g);
    let exhaustive = total <= cap;
    let nash: Vec<usize> = nash_equilibria(g);
    let mut union = vec![false; g.profile_count()];
    let mut examined = 0u64;
    if exhaustive {
        for gp in enumerate_completions(g, cap).expect("count checked against cap") {
            examined += 1;
            for e in nash_equilibria(&gp) {
                union[e] = true;
            }
        }
    } else {
        let stride = total / cap + 1;
        let mut code = seed % stride;
        while code < total {
            let gp = completion_by_code(g, code);
            examined += 1;
            for e in nash_equilibria(&gp) {
                union[e] = true;
            }
            code += stride;
        }
        // certify remaining equilibria through the constructive witness
        for &e in &nash {
            if !union[e] {
                if let Ok(gp) = witness_completion(g, &g.profile_from_index(e)) {
                    if nash_equilibria(&gp).contains(&e) {
                        union[e] = true;
                    }
                }
            }
        }
    }
    let union_only = (0..g.profile_count()).find(|&p| union[p] && !nash.contains(&p));
    let nash_only = nash.iter().copied().find(|&p| !union[p]);
    let witness = union_only
        .map(|p| (g.profile_from_index(p).label(), "union-only".to_string()))
        .or_else(|| {
            nash_only.map(|p| (g.profile_from_index(p).label(), "nash-only".to_string()))
        });
    CompletionUnionReport {
        completions: examined,
        exhaustive,
        nash_count: nash.len(),
        union_count: union.iter().filter(|&&b| b).count(),
        equal: witness.is_none(),
        witness,
    }
}

/// The completion selected by one index into the per-player orientation
/// product, decoded player by player without materializing the family.
fn completion_by_code(g: &Game, mut code: u64) -> Game {
    let mut out = g.clone();
    for i in 0..g.players() {
        let mut q = g.pref(i).reflexivize();
        let free = q.incomparable_unordered();
        for &(x, y) in &free {
            match code % 3 {
                0 => q = q.with_pair(x, y),
                1 => q = q.with_pair(y, x),
                _ => q = q.with_pair(x, y).with_pair(y, x),
            }
            code /= 3;
        }
        out.prefs[i] = q;
    }
    out
}
