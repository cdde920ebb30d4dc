//! Constructive extension algorithms: the one-shot constrained step, ordering
//! and linear extensions with a prescribed restriction on an antichain,
//! tournament closures, maximal-element-preserving extensions, and the
//! exhaustive enumerators the verification layer uses as oracles.

use std::sync::Arc;

use crate::consistency::{is_m_consistent, s_consistency_witness};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::universe::Universe;

/// Default cap on the universe size for the exhaustive enumerators.
pub const DEFAULT_ENUM_CAP: usize = 6;

/// A constraint (Y, T): an antichain Y of the closure together with an
/// ordering T on Y that the extension must reproduce exactly.
#[derive(Debug, Clone)]
pub struct ExtensionConstraint {
    y: Vec<String>,
    t: Option<Relation>,
}

impl ExtensionConstraint {
    /// The empty constraint: no restriction is imposed.
    pub fn none() -> ExtensionConstraint {
        ExtensionConstraint { y: Vec::new(), t: None }
    }

    /// `t` must live on the universe with exactly the labels of `y`,
    /// in order.
    pub fn new(y: Vec<String>, t: Relation) -> Result<ExtensionConstraint> {
        if t.universe().labels() != y.as_slice() {
            return Err(Error::ConstraintUniverseMismatch);
        }
        Ok(ExtensionConstraint { y, t: Some(t) })
    }

    /// Convenience: Y = {x, y} with x weakly above y.
    pub fn pair_above(x: &str, y: &str) -> ExtensionConstraint {
        let u = Universe::new([x, y]).expect("two distinct labels");
        let t = Relation::from_pairs(u, [(x, x), (y, y), (x, y)]).unwrap();
        ExtensionConstraint { y: vec![x.to_string(), y.to_string()], t: Some(t) }
    }

    pub fn y(&self) -> &[String] {
        &self.y
    }

    pub fn t(&self) -> Option<&Relation> {
        self.t.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// Validates against a host relation: Y lives in its universe, all
    /// distinct members of Y are incomparable in the transitive closure,
    /// and T (reflexivized) is an ordering on Y.
    fn validate(&self, r: &Relation, require_linear: bool) -> Result<Vec<(usize, usize)>> {
        let Some(t) = &self.t else {
            return Ok(Vec::new());
        };
        let idx: Vec<usize> =
            self.y.iter().map(|l| r.universe().index_of(l)).collect::<Result<_>>()?;
        let closure = r.transitive_closure();
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                if a != b && closure.contains(ia, ib) {
                    return Err(Error::ConstraintNotAntichain(
                        self.y[a].clone(),
                        self.y[b].clone(),
                    ));
                }
            }
        }
        let t = t.reflexivize();
        let report = t.classify();
        if require_linear {
            if !report.linear_order {
                return Err(Error::ConstraintNotLinear);
            }
        } else if !report.ordering {
            return Err(Error::ConstraintNotOrdering);
        }
        // off-diagonal pairs of T, translated to host indices
        Ok(t.pairs().filter(|(a, b)| a != b).map(|(a, b)| (idx[a], idx[b])).collect())
    }
}

/// Pairs glued in by placing `above` weakly over `below`: everything that
/// reaches `above` in the closure goes over everything reachable from
/// `below`.
fn oriented_pairs(closure: &Relation, above: usize, below: usize) -> Vec<(usize, usize)> {
    let n = closure.size();
    let mut out = Vec::new();
    for k in 0..n {
        if closure.contains(k, above) {
            for l in 0..n {
                if closure.contains(below, l) {
                    out.push((k, l));
                }
            }
        }
    }
    out
}

fn add_pairs(r: &Relation, pairs: &[(usize, usize)]) -> Relation {
    let mut out = r.clone();
    for &(i, j) in pairs {
        out = out.with_pair(i, j);
    }
    out
}

/// The one-shot constrained step: reflexivizes R, then glues in, for every
/// off-diagonal (y,x) of T, all pairs (k,l) with k reaching y and x reaching
/// l in the closure. The result contains R and T and is an extension of R,
/// but is not transitively closed.
pub fn szpilrajn_step(r: &Relation, c: &ExtensionConstraint) -> Result<Relation> {
    szpilrajn_step_on(&r.reflexivize(), c)
}

/// As `szpilrajn_step` but without the implicit reflexivization.
pub fn szpilrajn_step_raw(r: &Relation, c: &ExtensionConstraint) -> Result<Relation> {
    szpilrajn_step_on(r, c)
}

fn szpilrajn_step_on(r: &Relation, c: &ExtensionConstraint) -> Result<Relation> {
    let t_pairs = c.validate(r, false)?;
    let closure = r.transitive_closure();
    let mut out = r.clone();
    for (y, x) in t_pairs {
        out = add_pairs(&out, &oriented_pairs(&closure, y, x));
    }
    Ok(out)
}

/// Saturation driver shared by the transitive extension operations: applies
/// singleton steps to the lexicographically least incomparable pair of the
/// running closure until none remain, then returns the closure. `orient`
/// maps the chosen pair (x,y), x < y, to (above, below).
fn saturate<F>(start: Relation, orient: F) -> Relation
where
    F: Fn(usize, usize) -> (usize, usize),
{
    let mut closure = start.transitive_closure();
    loop {
        let Some(&(x, y)) = closure.incomparable_pairs().first() else {
            return closure;
        };
        let (above, below) = orient(x, y);
        let glued = add_pairs(&closure, &oriented_pairs(&closure, above, below));
        closure = glued.transitive_closure();
    }
}

/// A reflexive, transitive, complete extension Q of R with restrict(Q,Y)=T.
/// Requires S-consistency; saturation orients every leftover incomparable
/// pair deterministically (lexicographically least pair, second element
/// below the first).
pub fn ordering_extension(r: &Relation, c: &ExtensionConstraint) -> Result<Relation> {
    if let Some((x, y)) = s_consistency_witness(r) {
        return Err(Error::NotSConsistent(
            r.universe().label(x).to_string(),
            r.universe().label(y).to_string(),
        ));
    }
    let stepped = szpilrajn_step(r, c)?;
    Ok(saturate(stepped, |x, y| (x, y)))
}

fn require_delta(r: &Relation) -> Result<()> {
    if let Some((x, y)) = s_consistency_witness(r) {
        return Err(Error::NotSConsistent(
            r.universe().label(x).to_string(),
            r.universe().label(y).to_string(),
        ));
    }
    let stray = r.reflexivize().transitive_closure().symmetric_part().strip_diagonal();
    if let Some((x, y)) = stray.pairs().next() {
        return Err(Error::NotDeltaConsistent(
            r.universe().label(x).to_string(),
            r.universe().label(y).to_string(),
        ));
    }
    Ok(())
}

/// A linear order extension with restrict(Q,Y)=T; T must be a linear order
/// on Y and R must admit one (no strict cycle and no off-diagonal symmetric
/// pair in the closure).
pub fn linear_extension(r: &Relation, c: &ExtensionConstraint) -> Result<Relation> {
    require_delta(r)?;
    let reflexive = r.reflexivize();
    c.validate(&reflexive, true)?;
    let q = ordering_extension(r, c)?;
    debug_assert!(q.is_antisymmetric());
    Ok(q)
}

/// The power-union formula (R u diag)^m union of strict parts of all higher
/// powers, truncated at the power-sequence horizon where it stabilizes.
pub fn tournament_formula(r: &Relation, m: u32) -> Relation {
    assert!(m >= 1);
    let seq = r.power_sequence();
    let upper = (m as usize).max(seq.tail()) as u32 + seq.period() as u32;
    let mut acc = seq.power(m).clone();
    for p in m + 1..=upper {
        acc = acc.union(&seq.power(p).asymmetric_part()).expect("same universe");
    }
    acc
}

/// Reflexive, complete extension built from the power-union formula on the
/// reflexivized relation; leftover incomparable pairs (possible when the
/// closure itself is incomplete) are oriented lexicographically so the
/// result is always complete. Not necessarily transitive.
pub fn tournament_extension(r: &Relation, m: u32) -> Result<Relation> {
    let reflexive = r.reflexivize();
    if !is_m_consistent(&reflexive, m) {
        return Err(Error::NotMConsistent { m });
    }
    let mut out = tournament_formula(&reflexive, m);
    for (i, j) in out.incomparable_unordered() {
        out = out.with_pair(i, j);
    }
    Ok(out)
}

/// The raw power-union formula without reflexivization, for study.
pub fn tournament_extension_raw(r: &Relation, m: u32) -> Result<Relation> {
    if !is_m_consistent(r, m) {
        return Err(Error::NotMConsistent { m });
    }
    Ok(tournament_formula(r, m))
}

/// A linear order extension keeping `xstar` maximal: saturation puts the
/// non-`xstar` element of every incomparable pair below, with lexicographic
/// tie-breaking between two non-`xstar` elements.
pub fn extension_with_maximal(r: &Relation, xstar: &str) -> Result<Relation> {
    let star = r.universe().index_of(xstar)?;
    if !r.maximal_elements().contains(&star) {
        return Err(Error::NotMaximal(xstar.to_string()));
    }
    require_delta(r)?;
    let q = saturate(r.reflexivize(), |x, y| if y == star { (y, x) } else { (x, y) });
    debug_assert!(q.maximal_elements().contains(&star));
    Ok(q)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { cap: cap as u64, needed: n as u64 })
    } else {
        Ok(())
    }
}

/// Every weak order on 0..n as an ordered set partition, encoded as a
/// surjection onto 1..=k levels with lower level meaning higher block.
fn all_weak_orders(universe: &Arc<Universe>) -> Vec<Relation> {
    let n = universe.size();
    let mut out = Vec::new();
    for k in 1..=n {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut levels = vec![0usize; n];
            let mut c = code;
            for l in levels.iter_mut().rev() {
                *l = (c % k as u64) as usize;
                c /= k as u64;
            }
            if !(0..k).all(|l| levels.contains(&l)) {
                continue;
            }
            out.push(Relation::from_index_pairs(
                universe.clone(),
                (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| levels[i] <= levels[j]),
            ));
        }
    }
    out
}

/// All complete reflexive transitive Q with R subset of Q and P(R) subset
/// of P(Q), by filtering every weak order on the universe. Deterministic
/// (level-function lexicographic) order.
pub fn enumerate_ordering_extensions(r: &Relation, cap: usize) -> Result<Vec<Relation>> {
    check_cap(r.size(), cap)?;
    let strict = r.asymmetric_part();
    Ok(all_weak_orders(r.universe())
        .into_iter()
        .filter(|q| {
            r.is_subset(q).unwrap() && strict.is_subset(&q.asymmetric_part()).unwrap()
        })
        .collect())
}

/// All linear order extensions, via backtracking over topological orders of
/// the strict part of the reflexivized closure. Empty when the closure has
/// an off-diagonal symmetric pair or a strict edge sits on a cycle.
pub fn enumerate_linear_extensions(r: &Relation, cap: usize) -> Result<Vec<Relation>> {
    check_cap(r.size(), cap)?;
    let closure = r.reflexivize().transitive_closure();
    if s_consistency_witness(r).is_some()
        || !closure.symmetric_part().strip_diagonal().is_empty()
    {
        return Ok(Vec::new());
    }
    let n = r.size();
    let strict = closure.asymmetric_part();
    let mut out = Vec::new();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn descend(
        n: usize,
        strict: &Relation,
        used: &mut Vec<bool>,
        order: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if order.len() == n {
            out.push(order.clone());
            return;
        }
        for c in 0..n {
            // next element from the top: nothing unplaced strictly above it
            if !used[c] && (0..n).all(|r2| used[r2] || !strict.contains(r2, c)) {
                used[c] = true;
                order.push(c);
                descend(n, strict, used, order, out);
                order.pop();
                used[c] = false;
            }
        }
    }
    let mut sequences = Vec::new();
    descend(n, &strict, &mut used, &mut order, &mut sequences);
    for seq in sequences {
        let mut pos = vec![0usize; n];
        for (p, &e) in seq.iter().enumerate() {
            pos[e] = p;
        }
        out.push(Relation::from_index_pairs(
            r.universe().clone(),
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| pos[i] <= pos[j]),
        ));
    }
    Ok(out)
}

/// All reflexive complete extensions: every unordered incomparable pair of
/// R u diag takes one of its three orientations; comparable pairs are fixed.
/// `cap` bounds 3^(number of incomparable unordered pairs).
pub fn enumerate_tournament_extensions(r: &Relation, cap: u64) -> Result<Vec<Relation>> {
    let base = r.reflexivize();
    let free = base.incomparable_unordered();
    let needed = 3u64.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
    if needed > cap {
        return Err(Error::CapExceeded { cap, needed });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for code in 0..needed {
        let mut q = base.clone();
        let mut c = code;
        for &(i, j) in &free {
            match c % 3 {
                0 => q = q.with_pair(i, j),
                1 => q = q.with_pair(j, i),
                _ => q = q.with_pair(i, j).with_pair(j, i),
            }
            c /= 3;
        }
        out.push(q);
    }
    Ok(out)
}

/// Verbatim extension check used throughout the tests and reports:
/// R subset of Q and P(R) subset of P(Q).
pub fn is_extension_of(q: &Relation, r: &Relation) -> bool {
    r.is_subset(q).unwrap_or(false)
        && r.asymmetric_part().is_subset(&q.asymmetric_part()).unwrap_or(false)
}
