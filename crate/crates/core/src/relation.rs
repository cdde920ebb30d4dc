use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::universe::Universe;

/// Exponent for relation powers: a positive natural or the first infinite
/// ordinal, for which `R^omega` is the transitive closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exponent {
    Finite(u32),
    Omega,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(m) => write!(f, "{m}"),
            Exponent::Omega => write!(f, "omega"),
        }
    }
}

/// An immutable binary relation on a finite universe, stored as a boolean
/// incidence matrix with machine-word rows. All operations return fresh
/// relations; inputs are never mutated.
#[derive(Debug, Clone)]
pub struct Relation {
    universe: Arc<Universe>,
    words: usize,
    bits: Vec<u64>,
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.bits == other.bits
    }
}

impl Eq for Relation {}

impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl Relation {
    pub fn empty(universe: Arc<Universe>) -> Relation {
        let n = universe.size();
        let words = n.div_ceil(64);
        Relation { universe, words, bits: vec![0; n * words] }
    }

    pub fn diagonal(universe: Arc<Universe>) -> Relation {
        let mut r = Relation::empty(universe);
        for i in 0..r.size() {
            r.set(i, i);
        }
        r
    }

    pub fn full(universe: Arc<Universe>) -> Relation {
        let mut r = Relation::empty(universe);
        for i in 0..r.size() {
            for j in 0..r.size() {
                r.set(i, j);
            }
        }
        r
    }

    /// Every relation on the universe, in mask order. 2^(n*n) relations,
    /// so callers must keep n tiny (n <= 5 already means 2^25 entries).
    pub fn all_on(universe: Arc<Universe>) -> Vec<Relation> {
        let n = universe.size();
        let cells = n * n;
        assert!(cells < 32, "exhaustive enumeration needs n*n < 32");
        (0u32..1 << cells)
            .map(|mask| {
                Relation::from_index_pairs(
                    universe.clone(),
                    (0..cells).filter(|c| mask >> c & 1 == 1).map(|c| (c / n, c % n)),
                )
            })
            .collect()
    }

    pub fn from_pairs<'a, I>(universe: Arc<Universe>, pairs: I) -> Result<Relation>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut r = Relation::empty(universe);
        for (a, b) in pairs {
            let i = r.universe.index_of(a)?;
            let j = r.universe.index_of(b)?;
            r.set(i, j);
        }
        Ok(r)
    }

    pub fn from_index_pairs<I>(universe: Arc<Universe>, pairs: I) -> Relation
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Relation::empty(universe);
        for (i, j) in pairs {
            r.set(i, j);
        }
        r
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1u64 << (j % 64);
    }

    fn clear(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] &= !(1u64 << (j % 64));
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn contains_labels(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.contains(self.universe.index_of(a)?, self.universe.index_of(b)?))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|w| *w == 0)
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index pairs in row-major (lexicographic) order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| self.contains(i, j)).map(move |j| (i, j)))
    }

    pub fn labeled_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.pairs().map(|(i, j)| (self.universe.label(i), self.universe.label(j)))
    }

    fn check_same_universe(&self, other: &Relation) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same_universe(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        Ok(out)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.check_same_universe(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        Ok(out)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.check_same_universe(other)?;
        let mut out = self.clone();
        for (w, o) in out.bits.iter_mut().zip(&other.bits) {
            *w &= !o;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Relation {
        let mut out = Relation::empty(self.universe.clone());
        for (i, j) in self.pairs() {
            out.set(j, i);
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_same_universe(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    /// Adds a single index pair; used internally by the extension machinery.
    pub fn with_pair(&self, i: usize, j: usize) -> Relation {
        let mut out = self.clone();
        out.set(i, j);
        out
    }

    pub fn reflexivize(&self) -> Relation {
        let mut out = self.clone();
        for i in 0..out.size() {
            out.set(i, i);
        }
        out
    }

    pub fn strip_diagonal(&self) -> Relation {
        let mut out = self.clone();
        for i in 0..out.size() {
            out.clear(i, i);
        }
        out
    }

    /// Relational composition: (x,y) iff some z with x R1 z and z R2 y.
    /// Row-by-row bit-parallel OR.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.check_same_universe(other)?;
        let n = self.size();
        let mut out = Relation::empty(self.universe.clone());
        for i in 0..n {
            for z in 0..n {
                if self.contains(i, z) {
                    let dst = &mut out.bits[i * out.words..(i + 1) * out.words];
                    for (w, o) in dst.iter_mut().zip(other.row(z)) {
                        *w |= o;
                    }
                }
            }
        }
        Ok(out)
    }

    /// m-fold composition; `Omega` yields the transitive closure.
    pub fn power(&self, m: Exponent) -> Result<Relation> {
        match m {
            Exponent::Omega => Ok(self.transitive_closure()),
            Exponent::Finite(0) => Err(Error::ZeroExponent),
            Exponent::Finite(m) => {
                let mut acc = self.clone();
                for _ in 1..m {
                    acc = acc.compose(self)?;
                }
                Ok(acc)
            }
        }
    }

    /// Smallest transitive superset (Warshall, bit-parallel rows).
    pub fn transitive_closure(&self) -> Relation {
        let n = self.size();
        let mut out = self.clone();
        for k in 0..n {
            let row_k = out.row(k).to_vec();
            for i in 0..n {
                if out.contains(i, k) {
                    for (w, o) in out.bits[i * out.words..(i + 1) * out.words].iter_mut().zip(&row_k)
                    {
                        *w |= o;
                    }
                }
            }
        }
        out
    }

    /// Splits into the asymmetric part P and the symmetric part I.
    pub fn decompose(&self) -> (Relation, Relation) {
        let t = self.transpose();
        let i = self.intersection(&t).expect("same universe");
        let p = self.difference(&t).expect("same universe");
        (p, i)
    }

    pub fn asymmetric_part(&self) -> Relation {
        self.decompose().0
    }

    pub fn symmetric_part(&self) -> Relation {
        self.decompose().1
    }

    /// Ordered pairs (x,y), x != y, with neither direction in the relation.
    /// Diagonal pairs are excluded by convention.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.contains(i, j) && !self.contains(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Unordered incomparable pairs, each reported once as (i,j) with i < j.
    pub fn incomparable_unordered(&self) -> Vec<(usize, usize)> {
        self.incomparable_pairs().into_iter().filter(|&(i, j)| i < j).collect()
    }

    /// Restriction to a nonempty sub-universe.
    pub fn restrict(&self, labels: &[String]) -> Result<Relation> {
        if labels.is_empty() {
            return Err(Error::EmptyRestriction);
        }
        let sub = Universe::new(labels.iter().cloned())?;
        let idx: Vec<usize> =
            labels.iter().map(|l| self.universe.index_of(l)).collect::<Result<_>>()?;
        let mut out = Relation::empty(sub);
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                if self.contains(ia, ib) {
                    out.set(a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.size()).all(|i| !self.contains(i, i))
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(self).expect("same universe").is_subset(self).expect("same universe")
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| i == j || !(self.contains(i, j) && self.contains(j, i))))
    }

    pub fn is_total(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| i == j || self.contains(i, j) || self.contains(j, i)))
    }

    pub fn is_complete(&self) -> bool {
        self.is_reflexive() && self.is_total()
    }

    pub fn is_asymmetric(&self) -> bool {
        self.is_irreflexive() && self.is_antisymmetric()
    }

    /// No cycle of any length >= 1, i.e. the closure has an empty diagonal.
    pub fn is_acyclic(&self) -> bool {
        let c = self.transitive_closure();
        (0..self.size()).all(|i| !c.contains(i, i))
    }

    pub fn classify(&self) -> RelationReport {
        let reflexive = self.is_reflexive();
        let irreflexive = self.is_irreflexive();
        let transitive = self.is_transitive();
        let antisymmetric = self.is_antisymmetric();
        let total = self.is_total();
        let complete = reflexive && total;
        let acyclic = self.is_acyclic();
        let quasi_ordering = reflexive && transitive;
        RelationReport {
            reflexive,
            irreflexive,
            transitive,
            antisymmetric,
            total,
            complete,
            acyclic,
            quasi_ordering,
            ordering: quasi_ordering && total,
            partial_order: quasi_ordering && antisymmetric,
            linear_order: quasi_ordering && antisymmetric && total,
            strict_partial_order: irreflexive && transitive,
            strict_linear_order: irreflexive && transitive && total,
        }
    }

    /// Elements x with no y such that (y,x) is in the asymmetric part.
    pub fn maximal_elements(&self) -> Vec<usize> {
        let p = self.asymmetric_part();
        let n = self.size();
        (0..n).filter(|&x| (0..n).all(|y| !p.contains(y, x))).collect()
    }

    pub fn maximal_element_labels(&self) -> Vec<String> {
        self.maximal_elements().iter().map(|&i| self.universe.label(i).to_string()).collect()
    }

    /// Collapses the equivalence classes of I(closure) (the strongly
    /// connected components plus singletons). Class labels join their
    /// members with `+` in universe order. Returns the quotient universe,
    /// the induced relation, and the element-to-class map.
    pub fn quotient_by_indifference(&self) -> (Arc<Universe>, Relation, Vec<usize>) {
        let n = self.size();
        let closure = self.transitive_closure();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[i] = c;
            let mut members = vec![i];
            for (j, slot) in class_of.iter_mut().enumerate().skip(i + 1) {
                if *slot == usize::MAX && closure.contains(i, j) && closure.contains(j, i) {
                    *slot = c;
                    members.push(j);
                }
            }
            classes.push(members);
        }
        let labels: Vec<String> = classes
            .iter()
            .map(|m| m.iter().map(|&i| self.universe.label(i)).collect::<Vec<_>>().join("+"))
            .collect();
        let qu = Universe::new(labels).expect("quotient labels distinct");
        let mut induced = Relation::empty(qu.clone());
        for (i, j) in self.pairs() {
            induced.set(class_of[i], class_of[j]);
        }
        (qu, induced, class_of)
    }

    /// Powers R^1, R^2, ... until the sequence repeats. Returns the power
    /// list together with the tail index t and period p (1-based: the
    /// sequence satisfies R^(n+p) = R^n for all n >= t).
    pub fn power_sequence(&self) -> PowerSequence {
        let mut powers: Vec<Relation> = vec![self.clone()];
        let mut seen: HashMap<Relation, usize> = HashMap::new();
        seen.insert(self.clone(), 1);
        loop {
            let next = powers.last().unwrap().compose(self).expect("same universe");
            let k = powers.len() + 1;
            if let Some(&first) = seen.get(&next) {
                return PowerSequence { powers, tail: first, period: k - first };
            }
            seen.insert(next.clone(), k);
            powers.push(next);
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.labeled_pairs().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Cached power sequence with its eventual cycle: `powers[k-1] = R^k`,
/// and R^(n+period) = R^n for every n >= tail.
#[derive(Debug, Clone)]
pub struct PowerSequence {
    powers: Vec<Relation>,
    tail: usize,
    period: usize,
}

impl PowerSequence {
    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// R^m for any m >= 1, reduced into the detected cycle.
    pub fn power(&self, m: u32) -> &Relation {
        let m = m as usize;
        assert!(m >= 1);
        if m <= self.powers.len() {
            &self.powers[m - 1]
        } else {
            let reduced = self.tail + (m - self.tail) % self.period;
            &self.powers[reduced - 1]
        }
    }

    /// Exponent beyond which every power has already appeared.
    pub fn horizon(&self) -> u32 {
        (self.tail + self.period) as u32
    }
}

/// Property flags and the derived order classifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub reflexive: bool,
    pub irreflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub total: bool,
    pub complete: bool,
    pub acyclic: bool,
    pub quasi_ordering: bool,
    pub ordering: bool,
    pub partial_order: bool,
    pub linear_order: bool,
    pub strict_partial_order: bool,
    pub strict_linear_order: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{example_g, naive_power, naive_reach, random_relation};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(labels: &[&str], pairs: &[(&str, &str)]) -> Relation {
        let u = Universe::new(labels.iter().copied()).unwrap();
        Relation::from_pairs(u, pairs.iter().copied()).unwrap()
    }

    fn pair_set(r: &Relation) -> Vec<(String, String)> {
        let mut v: Vec<_> =
            r.labeled_pairs().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        v.sort();
        v
    }

    fn expect_pairs(r: &Relation, pairs: &[(&str, &str)]) {
        let mut want: Vec<_> =
            pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        want.sort();
        want.dedup();
        assert_eq!(pair_set(r), want);
    }

    #[test]
    fn compose_two_step_path() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        expect_pairs(&r.compose(&r).unwrap(), &[("a", "c")]);
    }

    #[test]
    fn compose_with_empty_absorbs() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let e = Relation::empty(r.universe().clone());
        assert!(r.compose(&e).unwrap().is_empty());
        assert!(e.compose(&r).unwrap().is_empty());
    }

    #[test]
    fn compose_universe_mismatch_errors() {
        let r = rel(&["a", "b"], &[("a", "b")]);
        let s = rel(&["a", "c"], &[("a", "c")]);
        assert_eq!(r.compose(&s).unwrap_err(), Error::UniverseMismatch);
    }

    #[test]
    fn example_g_square() {
        let g = example_g();
        expect_pairs(
            &g.compose(&g).unwrap(),
            &[
                ("x1", "x3"),
                ("x1", "x5"),
                ("x2", "x4"),
                ("x3", "x3"),
                ("x3", "x1"),
                ("x4", "x2"),
                ("x4", "x4"),
            ],
        );
    }

    #[test]
    fn example_g_cube() {
        let g = example_g();
        let cube = g.power(Exponent::Finite(3)).unwrap();
        expect_pairs(
            &cube,
            &[
                ("x1", "x4"),
                ("x2", "x3"),
                ("x2", "x1"),
                ("x3", "x4"),
                ("x4", "x3"),
                ("x4", "x5"),
                ("x3", "x2"),
                ("x4", "x1"),
            ],
        );
        // cross-check against the path-enumeration oracle
        assert_eq!(cube, naive_power(&g, 3));
    }

    #[test]
    fn power_one_is_identity_and_zero_rejected() {
        let g = example_g();
        assert_eq!(g.power(Exponent::Finite(1)).unwrap(), g);
        assert_eq!(g.power(Exponent::Finite(0)).unwrap_err(), Error::ZeroExponent);
    }

    #[test]
    fn power_of_chain() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        expect_pairs(&r.power(Exponent::Finite(2)).unwrap(), &[("a", "c")]);
    }

    #[test]
    fn closure_of_chain_and_fixpoint() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let c = r.transitive_closure();
        expect_pairs(&c, &[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(c.transitive_closure(), c);
    }

    #[test]
    fn closure_of_example_g() {
        let g = example_g();
        let c = g.transitive_closure();
        // the 4-cycle component saturates; x5 is reachable from all of it
        for i in 0..4 {
            for j in 0..4 {
                assert!(c.contains(i, j), "missing ({i},{j})");
            }
            assert!(c.contains(i, 4));
        }
        assert_eq!(c.cardinality(), 20);
        assert_eq!(c, naive_reach(&g));
        assert!(c.incomparable_pairs().is_empty());
    }

    #[test]
    fn power_omega_matches_closure_on_random_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = random_relation(&mut rng, 6, 0.3);
            let omega = r.power(Exponent::Omega).unwrap();
            assert_eq!(omega, naive_reach(&r));
            // closure is extensive, monotone in iteration, idempotent
            assert!(r.is_subset(&omega).unwrap());
            assert_eq!(omega.transitive_closure(), omega);
        }
    }

    #[test]
    fn decompose_example_g() {
        let g = example_g();
        let (p, i) = g.decompose();
        expect_pairs(&p, &[("x1", "x2"), ("x2", "x3"), ("x4", "x1"), ("x2", "x5")]);
        expect_pairs(&i, &[("x3", "x4"), ("x4", "x3")]);
        assert_eq!(p.union(&i).unwrap(), g);
        assert!(p.intersection(&i).unwrap().is_empty());
    }

    #[test]
    fn decompose_symmetric_and_strict() {
        let sym = rel(&["a", "b"], &[("a", "b"), ("b", "a")]);
        let (p, i) = sym.decompose();
        assert!(p.is_empty());
        assert_eq!(i, sym);

        let strict = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let (p, i) = strict.decompose();
        assert_eq!(p, strict);
        assert!(i.is_empty());
    }

    #[test]
    fn incomparable_pairs_cases() {
        let chain =
            rel(&["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")]);
        assert!(chain.incomparable_pairs().is_empty());

        let empty = Relation::empty(Universe::new(["a", "b"]).unwrap());
        assert_eq!(empty.incomparable_pairs(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn restrict_cases() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]);
        let s = r.restrict(&["a".into(), "c".into()]).unwrap();
        expect_pairs(&s, &[("a", "c")]);

        let whole = r.restrict(&["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(pair_set(&whole), pair_set(&r));

        assert_eq!(r.restrict(&[]).unwrap_err(), Error::EmptyRestriction);
        assert!(r.restrict(&["z".into()]).is_err());

        let g = example_g();
        let gq = g.restrict(&["x3".into(), "x4".into()]).unwrap();
        expect_pairs(&gq, &[("x3", "x4"), ("x4", "x3")]);
    }

    #[test]
    fn classify_diagonal_full_and_g() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let d = Relation::diagonal(u.clone());
        let rep = d.classify();
        assert!(rep.reflexive && rep.transitive && rep.antisymmetric && !rep.total);
        assert!(rep.partial_order && !rep.linear_order);

        let full = Relation::full(u);
        let rep = full.classify();
        assert!(rep.ordering && !rep.partial_order);

        let rep = example_g().classify();
        assert!(!rep.reflexive && !rep.transitive && !rep.acyclic);
    }

    #[test]
    fn maximal_elements_cases() {
        assert_eq!(example_g().maximal_element_labels(), vec!["x4"]);

        let empty = Relation::empty(Universe::new(["a", "b", "c"]).unwrap());
        assert_eq!(empty.maximal_elements(), vec![0, 1, 2]);

        let chain = rel(&["a", "b", "c"], &[("b", "a"), ("c", "b"), ("c", "a")]);
        assert_eq!(chain.maximal_element_labels(), vec!["c"]);
    }

    #[test]
    fn quotient_of_partial_order_is_isomorphic() {
        let r = rel(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c"), ("b", "c")],
        );
        let (qu, induced, class_of) = r.quotient_by_indifference();
        assert_eq!(qu.size(), 3);
        assert_eq!(class_of, vec![0, 1, 2]);
        assert_eq!(induced.cardinality(), r.cardinality());
    }

    #[test]
    fn quotient_of_full_relation() {
        let r = Relation::full(Universe::new(["a", "b"]).unwrap());
        let (qu, induced, class_of) = r.quotient_by_indifference();
        assert_eq!(qu.size(), 1);
        assert_eq!(class_of, vec![0, 0]);
        assert!(induced.contains(0, 0));
    }

    #[test]
    fn quotient_of_g_closure() {
        let c = example_g().transitive_closure();
        let (qu, induced, class_of) = c.quotient_by_indifference();
        assert_eq!(qu.size(), 2);
        assert_eq!(class_of, vec![0, 0, 0, 0, 1]);
        assert!(induced.contains(0, 1));
        assert!(!induced.contains(1, 0));
        // SCC collapse: induced closure is antisymmetric off the diagonal
        let ic = induced.transitive_closure();
        assert!(ic.symmetric_part().strip_diagonal().is_empty());
    }

    #[test]
    fn quotient_closure_antisymmetric_off_diagonal_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let r = random_relation(&mut rng, 5, 0.35);
            let (_, induced, _) = r.quotient_by_indifference();
            let ic = induced.transitive_closure();
            assert!(ic.symmetric_part().strip_diagonal().is_empty(), "relation {r}");
        }
    }

    #[test]
    fn closure_equals_union_of_first_n_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let r = random_relation(&mut rng, 5, 0.3);
            let mut acc = r.clone();
            let mut pw = r.clone();
            for _ in 1..r.size() {
                pw = pw.compose(&r).unwrap();
                acc = acc.union(&pw).unwrap();
            }
            assert_eq!(acc, r.transitive_closure());
        }
    }

    #[test]
    fn reflexive_powers_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let r = random_relation(&mut rng, 5, 0.3).reflexivize();
            let seq = r.power_sequence();
            for m in 1..seq.horizon() {
                assert!(seq.power(m).is_subset(seq.power(m + 1)).unwrap());
            }
        }
    }

    #[test]
    fn power_sequence_cycles_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..100 {
            let r = random_relation(&mut rng, 5, 0.3);
            let seq = r.power_sequence();
            let horizon = seq.horizon();
            for m in 1..=horizon + 4 {
                assert_eq!(*seq.power(m), r.power(Exponent::Finite(m)).unwrap());
            }
        }
    }
}
