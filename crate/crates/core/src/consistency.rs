//! The consistency hierarchy: m-consistency, m-rank of symmetry, the
//! Lambda classification, Delta(m)-consistency and Suzumura consistency.

use serde::Serialize;

use crate::relation::{Exponent, PowerSequence, Relation};

/// Outcome of the Lambda classification. `Finite(m)` is the largest m within
/// the power-sequence horizon at which both m-consistency and m-rank of
/// symmetry hold; `Omega` coincides with S-consistency; `Inconsistent` means
/// no exponent qualifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LambdaIndex {
    Finite(u32),
    Omega,
    Inconsistent,
}

/// True iff no x,y have an R-path of length exactly m from x to y while
/// (y,x) lies in the asymmetric part: R^m meets transpose(P(R)) nowhere.
pub fn is_m_consistent(r: &Relation, m: u32) -> bool {
    assert!(m >= 1, "m-consistency is defined for m >= 1");
    let pm = r.power(Exponent::Finite(m)).expect("m >= 1");
    m_consistent_at(r, &pm)
}

fn m_consistent_at(r: &Relation, power: &Relation) -> bool {
    let strict_t = r.asymmetric_part().transpose();
    power.intersection(&strict_t).expect("same universe").is_empty()
}

/// The equivalence route of the parts proposition: P(R) subset of P(R^m).
/// Agrees with `is_m_consistent` on reflexive relations; the forward
/// direction needs R contained in R^m, so callers should reflexivize first.
pub fn is_m_consistent_via_parts(r: &Relation, m: u32) -> bool {
    assert!(m >= 1);
    let pm = r.power(Exponent::Finite(m)).expect("m >= 1");
    r.asymmetric_part().is_subset(&pm.asymmetric_part()).expect("same universe")
}

/// True iff I(R^n) = I(R^m) for every n >= m. Checking up to
/// max(m, tail) + period is exhaustive because powers repeat from the tail
/// on with the detected period.
pub fn has_m_rank_of_symmetry(r: &Relation, m: u32) -> bool {
    has_m_rank_with(&r.power_sequence(), m)
}

fn has_m_rank_with(seq: &PowerSequence, m: u32) -> bool {
    assert!(m >= 1);
    let base = seq.power(m).symmetric_part();
    let upper = m.max(seq.tail() as u32) + seq.period() as u32;
    (m..=upper).all(|n| seq.power(n).symmetric_part() == base)
}

/// Suzumura consistency: no cycle of R contains a strict edge. Within every
/// strongly connected component, every internal edge must be symmetric.
pub fn is_s_consistent(r: &Relation) -> bool {
    s_consistency_witness(r).is_none()
}

/// A strict edge (x,y) lying on a cycle, if one exists.
pub fn s_consistency_witness(r: &Relation) -> Option<(usize, usize)> {
    let closure = r.transitive_closure();
    let strict = r.asymmetric_part();
    // (x,y) in R on a cycle iff y reaches back to x
    r.pairs().find(|&(x, y)| closure.contains(y, x) && strict.contains(x, y))
}

/// The Lambda classification: Omega iff S-consistent, otherwise the largest
/// qualifying m within the power-sequence horizon, otherwise Inconsistent.
pub fn lambda_index(r: &Relation) -> LambdaIndex {
    if is_s_consistent(r) {
        return LambdaIndex::Omega;
    }
    let seq = r.power_sequence();
    let horizon = seq.horizon();
    for m in (1..=horizon).rev() {
        if m_consistent_at(r, seq.power(m)) && has_m_rank_with(&seq, m) {
            return LambdaIndex::Finite(m);
        }
    }
    LambdaIndex::Inconsistent
}

/// Delta(m)-consistency: the Lambda predicates hold at m and the symmetric
/// part of R^m is exactly the diagonal.
pub fn is_delta_consistent(r: &Relation, m: Exponent) -> bool {
    let diagonal = Relation::diagonal(r.universe().clone());
    match m {
        Exponent::Omega => {
            is_s_consistent(r) && r.transitive_closure().symmetric_part() == diagonal
        }
        Exponent::Finite(m) => {
            assert!(m >= 1);
            let seq = r.power_sequence();
            m_consistent_at(r, seq.power(m))
                && has_m_rank_with(&seq, m)
                && seq.power(m).symmetric_part() == diagonal
        }
    }
}

/// Smallest exponent witnessing Delta-consistency, finite exponents first,
/// then omega. `None` when the relation admits no linear-order treatment.
pub fn delta_witness(r: &Relation) -> Option<Exponent> {
    let diagonal = Relation::diagonal(r.universe().clone());
    let seq = r.power_sequence();
    for m in 1..=seq.horizon() {
        if m_consistent_at(r, seq.power(m))
            && has_m_rank_with(&seq, m)
            && seq.power(m).symmetric_part() == diagonal
        {
            return Some(Exponent::Finite(m));
        }
    }
    if is_s_consistent(r) && r.transitive_closure().symmetric_part() == diagonal {
        return Some(Exponent::Omega);
    }
    None
}

/// Per-m predicate table plus the derived classifications, all reproducible
/// from the individual predicates.
#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    /// (m, m-consistent?, m-rank of symmetry?) for m up to the horizon.
    pub table: Vec<(u32, bool, bool)>,
    pub s_consistent: bool,
    pub lambda: LambdaIndex,
    /// Smallest finite m with I(R^m) = diagonal alongside the Lambda
    /// predicates, if any.
    pub delta_m: Option<u32>,
    pub delta_omega: bool,
}

pub fn consistency_report(r: &Relation) -> ConsistencyReport {
    let seq = r.power_sequence();
    let diagonal = Relation::diagonal(r.universe().clone());
    let table: Vec<(u32, bool, bool)> = (1..=seq.horizon())
        .map(|m| (m, m_consistent_at(r, seq.power(m)), has_m_rank_with(&seq, m)))
        .collect();
    let delta_m = table
        .iter()
        .find(|&&(m, c, k)| c && k && seq.power(m).symmetric_part() == diagonal)
        .map(|&(m, _, _)| m);
    ConsistencyReport {
        table,
        s_consistent: is_s_consistent(r),
        lambda: lambda_index(r),
        delta_m,
        delta_omega: is_delta_consistent(r, Exponent::Omega),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{
        all_relations, example_g, naive_m_consistent, naive_s_consistent, random_relation,
    };
    use crate::universe::Universe;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(labels: &[&str], pairs: &[(&str, &str)]) -> Relation {
        let u = Universe::new(labels.iter().copied()).unwrap();
        Relation::from_pairs(u, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn example_g_is_2_consistent_but_not_s_consistent() {
        let g = example_g();
        assert!(is_m_consistent(&g, 2));
        assert!(!is_s_consistent(&g));
    }

    #[test]
    fn strict_three_cycle_fails_2_consistency() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert!(!is_m_consistent(&r, 2));
        // but paths of length 1 and 3 close back onto diagonal/forward edges
        assert!(is_m_consistent(&r, 1));
        assert!(is_m_consistent(&r, 3));
    }

    #[test]
    fn quasi_orderings_are_m_consistent_for_all_m() {
        let r = rel(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c"), ("a", "c")],
        );
        for m in 1..=6 {
            assert!(is_m_consistent(&r, m));
            assert!(has_m_rank_of_symmetry(&r, m));
        }
        assert!(is_s_consistent(&r));
        assert_eq!(lambda_index(&r), LambdaIndex::Omega);
    }

    #[test]
    fn parts_route_agrees_on_reflexive_relations_exhaustively() {
        for r in all_relations(3) {
            let r = r.reflexivize();
            for m in 1..=4 {
                assert_eq!(
                    is_m_consistent(&r, m),
                    is_m_consistent_via_parts(&r, m),
                    "disagreement at m={m} on {r}"
                );
            }
        }
    }

    #[test]
    fn parts_route_on_reflexivized_g_and_diagonal() {
        let g = example_g().reflexivize();
        assert!(is_m_consistent_via_parts(&g, 2));

        let d = Relation::diagonal(Universe::new(["a", "b"]).unwrap());
        for m in 1..=4 {
            assert!(is_m_consistent_via_parts(&d, m));
        }
    }

    #[test]
    fn rank_of_symmetry_cases() {
        // strict 2-cycle: symmetric parts flip between off-diagonal and diagonal
        let two = rel(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(!has_m_rank_of_symmetry(&two, 1));

        // raw example relation: I(G^3) gains pairs missing from I(G^2)
        assert!(!has_m_rank_of_symmetry(&example_g(), 2));

        // transitive reflexive: every power equals R
        let q = rel(&["a", "b"], &[("a", "a"), ("b", "b"), ("a", "b")]);
        for m in 1..=4 {
            assert!(has_m_rank_of_symmetry(&q, m));
        }
    }

    #[test]
    fn rank_check_is_stable_beyond_the_horizon() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            let r = random_relation(&mut rng, 4, 0.35);
            let seq = r.power_sequence();
            let horizon = seq.horizon();
            for m in 1..=horizon {
                let direct = (m..=2 * (horizon + 1)).all(|n| {
                    seq.power(n).symmetric_part() == seq.power(m).symmetric_part()
                });
                assert_eq!(has_m_rank_of_symmetry(&r, m), direct, "m={m} on {r}");
            }
        }
    }

    #[test]
    fn s_consistency_matches_naive_cycle_check_exhaustively() {
        for r in all_relations(3) {
            assert_eq!(is_s_consistent(&r), naive_s_consistent(&r), "on {r}");
        }
    }

    #[test]
    fn m_consistency_matches_naive_path_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let r = random_relation(&mut rng, 4, 0.35);
            for m in 1..=4 {
                assert_eq!(is_m_consistent(&r, m as u32), naive_m_consistent(&r, m));
            }
        }
    }

    #[test]
    fn lambda_omega_iff_s_consistent_exhaustively() {
        for r in all_relations(3) {
            assert_eq!(lambda_index(&r) == LambdaIndex::Omega, is_s_consistent(&r), "on {r}");
        }
    }

    #[test]
    fn s_consistency_implies_every_m_consistency() {
        for r in all_relations(3) {
            if is_s_consistent(&r) {
                for m in 1..=5 {
                    assert!(is_m_consistent(&r, m), "m={m} on {r}");
                }
            }
        }
    }

    #[test]
    fn lambda_of_example_g_is_inconsistent() {
        // the 3-4 cycle makes I(G^n) alternate with period 2 forever, so no
        // exponent has the rank of symmetry despite 2-consistency
        let g = example_g();
        let seq = g.power_sequence();
        for m in 1..=seq.horizon() {
            let this = seq.power(m).symmetric_part();
            let next = seq.power(m + 1).symmetric_part();
            assert_ne!(this, next, "symmetric parts should alternate at m={m}");
        }
        assert_eq!(lambda_index(&g), LambdaIndex::Inconsistent);
    }

    #[test]
    fn strict_three_cycle_is_lambda_inconsistent() {
        let r = rel(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(lambda_index(&r), LambdaIndex::Inconsistent);
    }

    #[test]
    fn delta_consistency_cases() {
        let po = rel(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("a", "c"), ("b", "c")],
        );
        assert!(is_delta_consistent(&po, Exponent::Finite(1)));
        assert_eq!(delta_witness(&po), Some(Exponent::Finite(1)));

        let full = Relation::full(Universe::new(["a", "b"]).unwrap());
        assert!(!is_delta_consistent(&full, Exponent::Finite(1)));
        assert_eq!(delta_witness(&full), None);

        // reflexivized example relation: the 4-cycle component keeps the
        // symmetric part of every power strictly above the diagonal
        let g = example_g().reflexivize();
        let horizon = g.power_sequence().horizon();
        for m in 1..=horizon {
            assert!(!is_delta_consistent(&g, Exponent::Finite(m)));
        }
        assert!(!is_delta_consistent(&g, Exponent::Omega));
    }

    #[test]
    fn report_table_reproduces_predicates() {
        let g = example_g();
        let rep = consistency_report(&g);
        for &(m, c, k) in &rep.table {
            assert_eq!(c, is_m_consistent(&g, m));
            assert_eq!(k, has_m_rank_of_symmetry(&g, m));
        }
        assert!(!rep.s_consistent);
    }
}
