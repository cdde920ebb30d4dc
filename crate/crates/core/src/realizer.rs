//! Intersection-of-extensions machinery: realizer checks, the covers
//! preorder and uncovered pairs, exact dimension with a minimal witness
//! family, the Duggan-class verification, and the conjecture harness.

use serde::Serialize;

use crate::consistency::{has_m_rank_of_symmetry, is_m_consistent, lambda_index, LambdaIndex};
use crate::error::{Error, Result};
use crate::extension::{
    enumerate_linear_extensions, enumerate_ordering_extensions, enumerate_tournament_extensions,
    is_extension_of, tournament_formula, DEFAULT_ENUM_CAP,
};
use crate::relation::Relation;
use crate::universe::Universe;

/// A candidate realizer: a family of relations checked against a target.
#[derive(Debug, Clone)]
pub struct RealizerFamily {
    pub members: Vec<Relation>,
    pub target: Relation,
}

impl RealizerFamily {
    pub fn new(members: Vec<Relation>, target: Relation) -> Result<RealizerFamily> {
        for m in &members {
            if m.universe() != target.universe() {
                return Err(Error::UniverseMismatch);
            }
        }
        Ok(RealizerFamily { members, target })
    }
}

/// Pairwise intersection of the members. Refuses the empty family: the
/// intersection over an empty index would be the full relation and would
/// let degenerate cases pass silently.
pub fn intersect(members: &[Relation]) -> Result<Relation> {
    let mut it = members.iter();
    let first = it.next().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    for m in it {
        acc = acc.intersection(m)?;
    }
    Ok(acc)
}

/// The two realizer conditions, reported separately: (alpha) the members
/// intersect exactly to the target; (beta) every incomparable ordered pair
/// of the target appears in some member.
#[derive(Debug, Clone, Serialize)]
pub struct RealizerCheck {
    pub alpha: bool,
    pub beta: bool,
    pub alpha_witness: Option<(String, String)>,
    pub beta_witness: Option<(String, String)>,
}

impl RealizerCheck {
    pub fn holds(&self) -> bool {
        self.alpha && self.beta
    }
}

pub fn is_realizer(family: &RealizerFamily) -> Result<RealizerCheck> {
    let meet = intersect(&family.members)?;
    let target = &family.target;
    let u = target.universe();
    let alpha_witness = if meet == *target {
        None
    } else {
        let extra = meet.difference(target)?;
        let missing = target.difference(&meet)?;
        let first = extra.pairs().chain(missing.pairs()).next();
        first.map(|(i, j)| (u.label(i).to_string(), u.label(j).to_string()))
    };
    let beta_witness = target
        .incomparable_pairs()
        .into_iter()
        .find(|&(x, y)| !family.members.iter().any(|m| m.contains(x, y)))
        .map(|(i, j)| (u.label(i).to_string(), u.label(j).to_string()));
    Ok(RealizerCheck {
        alpha: alpha_witness.is_none(),
        beta: beta_witness.is_none(),
        alpha_witness,
        beta_witness,
    })
}

/// Which family of extensions an intersection theorem quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    Ordering,
    Linear,
    StrictLinear,
    Tournament,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Flavor> {
        match s {
            "ordering" => Some(Flavor::Ordering),
            "linear" => Some(Flavor::Linear),
            "strict-linear" => Some(Flavor::StrictLinear),
            "tournament" => Some(Flavor::Tournament),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IntersectionOutcome {
    Equal,
    Unequal { witness: (String, String) },
    NoExtensions,
}

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub flavor: Flavor,
    pub family_size: usize,
    pub outcome: IntersectionOutcome,
    pub realizer: Option<RealizerCheck>,
}

/// Enumerates the flavor's extension family, intersects, and compares with
/// the flavor's target: the reflexivized closure for the ordering and linear
/// flavors, the bare closure for the strict-linear flavor, and the
/// reflexivized m-th power for tournaments.
pub fn verify_intersection_theorem(
    r: &Relation,
    flavor: Flavor,
    m: u32,
    cap: usize,
) -> Result<IntersectionReport> {
    let closure = r.transitive_closure();
    let (members, target) = match flavor {
        Flavor::Ordering => {
            (enumerate_ordering_extensions(r, cap)?, closure.reflexivize())
        }
        Flavor::Linear => (enumerate_linear_extensions(r, cap)?, closure.reflexivize()),
        Flavor::StrictLinear => {
            let strict: Vec<Relation> = enumerate_linear_extensions(r, cap)?
                .into_iter()
                .map(|q| q.strip_diagonal())
                .collect();
            (strict, closure)
        }
        Flavor::Tournament => {
            let cap3 = 3u64.saturating_pow(cap as u32 * cap as u32);
            (
                enumerate_tournament_extensions(r, cap3)?,
                r.reflexivize().power_sequence().power(m).clone(),
            )
        }
    };
    if members.is_empty() {
        return Ok(IntersectionReport {
            flavor,
            family_size: 0,
            outcome: IntersectionOutcome::NoExtensions,
            realizer: None,
        });
    }
    let family = RealizerFamily::new(members, target.clone())?;
    let check = is_realizer(&family)?;
    let outcome = if check.alpha {
        IntersectionOutcome::Equal
    } else {
        IntersectionOutcome::Unequal { witness: check.alpha_witness.clone().unwrap() }
    };
    Ok(IntersectionReport {
        flavor,
        family_size: family.members.len(),
        outcome,
        realizer: Some(check),
    })
}

/// (x,y) covers (k,l) when every linear extension containing (x,y) also
/// contains (k,l); brute force over the full family.
pub fn covers_with(family: &[Relation], p: (usize, usize), q: (usize, usize)) -> Result<bool> {
    if family.is_empty() {
        return Err(Error::NoLinearExtensions);
    }
    Ok(family.iter().all(|m| !m.contains(p.0, p.1) || m.contains(q.0, q.1)))
}

pub fn covers(r: &Relation, p: (usize, usize), q: (usize, usize)) -> Result<bool> {
    let family = enumerate_linear_extensions(r, DEFAULT_ENUM_CAP)?;
    covers_with(&family, p, q)
}

/// Pairs of inc(closure) maximal under the covers preorder: every pair that
/// covers them is covered right back.
pub fn uncovered_pairs(r: &Relation) -> Result<Vec<(usize, usize)>> {
    let family = enumerate_linear_extensions(r, DEFAULT_ENUM_CAP)?;
    if family.is_empty() {
        return Err(Error::NoLinearExtensions);
    }
    let inc = r.transitive_closure().incomparable_pairs();
    let mut out = Vec::new();
    for &p in &inc {
        let maximal = inc.iter().all(|&q| {
            !covers_with(&family, q, p).unwrap() || covers_with(&family, p, q).unwrap()
        });
        if maximal {
            out.push(p);
        }
    }
    Ok(out)
}

/// Minimum number of linear extensions intersecting to the reflexivized
/// closure, with a witness family. Branch-and-bound set cover over the
/// reversal constraints, greedy-seeded, deterministic.
pub fn dimension(r: &Relation, cap: usize) -> Result<(usize, Vec<Relation>)> {
    let members = enumerate_linear_extensions(r, cap)?;
    if members.is_empty() {
        return Err(Error::NoLinearExtensions);
    }
    let target = r.reflexivize().transitive_closure();
    // each ordered incomparable pair (x,y) of the target must be excluded
    // from the intersection by some member that reverses it
    let constraints = target.incomparable_pairs();
    if constraints.is_empty() {
        return Ok((1, vec![members[0].clone()]));
    }
    assert!(constraints.len() <= 64, "constraint mask exceeds one word");
    let masks: Vec<u64> = members
        .iter()
        .map(|m| {
            constraints
                .iter()
                .enumerate()
                .filter(|&(_, &(x, y))| m.contains(y, x))
                .fold(0u64, |acc, (c, _)| acc | 1 << c)
        })
        .collect();
    let full: u64 = (0..constraints.len()).fold(0, |acc, c| acc | 1 << c);
    // member order: most reversals first (greedy seed), index as tie-break
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(masks[i].count_ones()), i));
    for k in 1..=members.len() {
        let mut chosen = Vec::with_capacity(k);
        if cover_search(&order, &masks, full, 0, k, 0, &mut chosen) {
            chosen.sort_unstable();
            let witness: Vec<Relation> = chosen.iter().map(|&i| members[i].clone()).collect();
            debug_assert_eq!(intersect(&witness)?, target);
            return Ok((k, witness));
        }
    }
    unreachable!("the full family always covers every reversal constraint");
}

fn cover_search(
    order: &[usize],
    masks: &[u64],
    full: u64,
    covered: u64,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if covered == full {
        return true;
    }
    if chosen.len() == k {
        return false;
    }
    for pos in start..order.len() {
        let idx = order[pos];
        if masks[idx] & !covered == 0 {
            continue; // contributes nothing new
        }
        chosen.push(idx);
        if cover_search(order, masks, full, covered | masks[idx], k, pos + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// A decidable class of relations on a fixed universe for the Duggan-style
/// verification.
#[derive(Debug, Clone)]
pub enum RelationClass {
    /// Every relation on the universe.
    All,
    /// All compatible extensions of the base relation.
    CompatibleExtensions,
    /// An explicit finite list.
    Explicit(Vec<Relation>),
}

impl RelationClass {
    fn contains(&self, base: &Relation, q: &Relation) -> bool {
        match self {
            RelationClass::All => true,
            RelationClass::CompatibleExtensions => is_extension_of(q, base),
            RelationClass::Explicit(list) => list.contains(q),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DugganReport {
    pub closed_upward: bool,
    pub arc_receptive: bool,
    /// (s, t, offending member rendered as pairs) for the first
    /// arc-receptivity failure.
    pub arc_witness: Option<(String, String, String)>,
    pub closure_in_class: bool,
    pub extension_count: usize,
    pub outcome: IntersectionOutcome,
}

/// Finite-scale verification of the general extension proposition: checks
/// the closed-upward and arc-receptive hypotheses over all relations on the
/// universe, then compares the closure with the intersection of the class's
/// complete transitive extensions of R. The arc-receptivity text closes
/// R u {(s,t)}, not R' u {(s,t)}; reports follow that literal reading.
pub fn duggan_check(r: &Relation, class: &RelationClass, cap: usize) -> Result<DugganReport> {
    let n = r.size();
    if n > cap {
        return Err(Error::CapExceeded { cap: cap as u64, needed: n as u64 });
    }
    let everything: Vec<Relation> = match class {
        RelationClass::Explicit(list) => list.clone(),
        _ => Relation::all_on(r.universe().clone()),
    };
    let members: Vec<&Relation> =
        everything.iter().filter(|q| class.contains(r, q)).collect();

    // Finite chains are exhausted by their top member, so a union of a chain
    // is that member; verified literally over all comparable member pairs.
    // The full class needs no scan: every union is a member by fiat.
    let mut closed_upward = true;
    if !matches!(class, RelationClass::All) {
        'chains: for a in &members {
            for b in &members {
                if a.is_subset(b).unwrap_or(false) {
                    let union = a.union(b).unwrap();
                    if !class.contains(r, &union) {
                        closed_upward = false;
                        break 'chains;
                    }
                }
            }
        }
    }

    let u = r.universe();
    let mut arc_witness = None;
    'arcs: for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let augmented = r.with_pair(s, t).transitive_closure();
            if class.contains(r, &augmented) {
                continue;
            }
            for q in &members {
                if q.is_transitive() && !q.contains(t, s) {
                    arc_witness = Some((
                        u.label(s).to_string(),
                        u.label(t).to_string(),
                        q.to_string(),
                    ));
                    break 'arcs;
                }
            }
        }
    }

    let closure = r.transitive_closure();
    let closure_in_class = class.contains(r, &closure);
    let extensions: Vec<Relation> = members
        .iter()
        .filter(|q| q.is_complete() && q.is_transitive() && is_extension_of(q, r))
        .map(|q| (*q).clone())
        .collect();
    let outcome = if extensions.is_empty() {
        IntersectionOutcome::NoExtensions
    } else {
        let meet = intersect(&extensions)?;
        if meet == closure {
            IntersectionOutcome::Equal
        } else {
            let diff = meet
                .difference(&closure)?
                .pairs()
                .chain(closure.difference(&meet)?.pairs())
                .next()
                .unwrap();
            IntersectionOutcome::Unequal {
                witness: (u.label(diff.0).to_string(), u.label(diff.1).to_string()),
            }
        }
    };
    Ok(DugganReport {
        closed_upward,
        arc_receptive: arc_witness.is_none(),
        arc_witness,
        closure_in_class,
        extension_count: extensions.len(),
        outcome,
    })
}

/// A claim the harness probes empirically. The harness only ever reports
/// counterexamples or their absence at the swept scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scope {
    /// Lambda(m)-consistency at a finite m implies m'-consistency for all
    /// smaller m'.
    RemarkMonotoneM,
    /// m-consistency up to a finite depth implies an ordering extension
    /// exists.
    Theorem1FiniteM,
    /// For m-consistent R, the complete extensions intersect to the m-th
    /// power of R u diag.
    TournamentRealizer,
    /// For reflexive Q with the m-rank of symmetry,
    /// closure(Q) = Q^m u union of P(Q^p) over p > m.
    ClosureFormula,
}

impl Scope {
    pub fn parse(s: &str) -> Option<Scope> {
        match s {
            "remark-monotone-m" => Some(Scope::RemarkMonotoneM),
            "theorem1-finite-m" => Some(Scope::Theorem1FiniteM),
            "tournament-realizer" => Some(Scope::TournamentRealizer),
            "closure-formula" => Some(Scope::ClosureFormula),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Scope::RemarkMonotoneM => "remark-monotone-m",
            Scope::Theorem1FiniteM => "theorem1-finite-m",
            Scope::TournamentRealizer => "tournament-realizer",
            Scope::ClosureFormula => "closure-formula",
        }
    }

    pub const ALL: [Scope; 4] = [
        Scope::RemarkMonotoneM,
        Scope::Theorem1FiniteM,
        Scope::TournamentRealizer,
        Scope::ClosureFormula,
    ];
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub relation: String,
    pub m: Option<u32>,
    pub m_prime: Option<u32>,
    pub witness: Option<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HarnessReport {
    pub scope: &'static str,
    pub swept: usize,
    pub counterexamples: Vec<Counterexample>,
    pub conclusion: &'static str,
}

/// The swept instances: every relation on 1, 2 and 3 elements, a
/// deterministic stride sample of the 4-element relations, and a handful of
/// named seeds known to exercise each claim.
fn harness_instances() -> Vec<Relation> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        out.extend(Relation::all_on(Universe::new(labels).unwrap()));
    }
    let labels: Vec<String> = (0..4).map(|i| format!("e{i}")).collect();
    let u4 = Universe::new(labels).unwrap();
    let cells = 16;
    let mut mask = 0u32;
    while mask < 1 << cells {
        out.push(Relation::from_index_pairs(
            u4.clone(),
            (0..cells).filter(|c| mask >> c & 1 == 1).map(|c| (c / 4, c % 4)),
        ));
        mask += 257;
    }
    // the five-element running example: 2-consistent, not S-consistent
    let ug = Universe::new(["x1", "x2", "x3", "x4", "x5"]).unwrap();
    out.push(
        Relation::from_pairs(
            ug,
            [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x3"), ("x4", "x1"), ("x2", "x5")],
        )
        .unwrap(),
    );
    // the expected tournament counterexample: a two-step chain
    let uc = Universe::new(["a", "b", "c"]).unwrap();
    out.push(Relation::from_pairs(uc, [("a", "b"), ("b", "c")]).unwrap());
    out
}

pub fn conjecture_harness(scope: Scope) -> HarnessReport {
    let instances = harness_instances();
    let mut counterexamples = Vec::new();
    for r in &instances {
        if let Some(cx) = probe(scope, r) {
            counterexamples.push(cx);
        }
    }
    HarnessReport {
        scope: scope.name(),
        swept: instances.len(),
        conclusion: if counterexamples.is_empty() {
            "no counterexample found"
        } else {
            "counterexamples found"
        },
        counterexamples,
    }
}

fn probe(scope: Scope, r: &Relation) -> Option<Counterexample> {
    match scope {
        Scope::RemarkMonotoneM => {
            let LambdaIndex::Finite(m) = lambda_index(r) else { return None };
            let bad = (1..=m).find(|&mp| !is_m_consistent(r, mp))?;
            Some(Counterexample {
                relation: r.to_string(),
                m: Some(m),
                m_prime: Some(bad),
                witness: None,
            })
        }
        Scope::Theorem1FiniteM => {
            // consistency depth: the largest m with m'-consistency for all
            // m' <= m; 1-consistency is vacuous, so the depth is >= 1
            let horizon = r.power_sequence().horizon();
            let m = (1..=horizon).take_while(|&m| is_m_consistent(r, m)).last()?;
            let extensions = enumerate_ordering_extensions(r, r.size()).ok()?;
            if extensions.is_empty() {
                Some(Counterexample {
                    relation: r.to_string(),
                    m: Some(m),
                    m_prime: None,
                    witness: None,
                })
            } else {
                None
            }
        }
        Scope::TournamentRealizer => {
            let base = r.reflexivize();
            let seq = base.power_sequence();
            let members = enumerate_tournament_extensions(r, 1 << 20).ok()?;
            if members.is_empty() {
                return None;
            }
            let meet = intersect(&members).unwrap();
            for m in 1..=seq.horizon() {
                if !is_m_consistent(&base, m) {
                    continue;
                }
                let target = seq.power(m);
                if meet != *target {
                    let u = r.universe();
                    let witness = meet
                        .difference(target)
                        .unwrap()
                        .pairs()
                        .chain(target.difference(&meet).unwrap().pairs())
                        .next()
                        .map(|(i, j)| (u.label(i).to_string(), u.label(j).to_string()));
                    return Some(Counterexample {
                        relation: r.to_string(),
                        m: Some(m),
                        m_prime: None,
                        witness,
                    });
                }
            }
            None
        }
        Scope::ClosureFormula => {
            let q = r.reflexivize();
            let closure = q.transitive_closure();
            let horizon = q.power_sequence().horizon();
            for m in 1..=horizon {
                if !has_m_rank_of_symmetry(&q, m) {
                    continue;
                }
                if tournament_formula(&q, m) != closure {
                    return Some(Counterexample {
                        relation: r.to_string(),
                        m: Some(m),
                        m_prime: None,
                        witness: None,
                    });
                }
            }
            None
        }
    }
}
