//! Independent oracles shared by the unit tests. Everything here works by
//! brute force over explicit paths or exhaustive pair checks and never calls
//! the bit-matrix fast paths it is used to verify.

use std::sync::Arc;

use rand::Rng;

use crate::relation::Relation;
use crate::universe::Universe;

/// The five-element relation used as a running example:
/// a 2-consistent relation that is not S-consistent.
pub fn example_g() -> Relation {
    let u = Universe::new(["x1", "x2", "x3", "x4", "x5"]).unwrap();
    Relation::from_pairs(
        u,
        [("x1", "x2"), ("x2", "x3"), ("x3", "x4"), ("x4", "x3"), ("x4", "x1"), ("x2", "x5")],
    )
    .unwrap()
}

/// R^m by explicit enumeration of all directed paths of length exactly m.
pub fn naive_power(r: &Relation, m: usize) -> Relation {
    assert!(m >= 1);
    let n = r.size();
    let mut frontier: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for _ in 0..m {
        let mut next = Vec::new();
        for path in &frontier {
            let last = *path.last().unwrap();
            for j in 0..n {
                if r.contains(last, j) {
                    let mut p = path.clone();
                    p.push(j);
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Relation::from_index_pairs(
        r.universe().clone(),
        frontier.iter().map(|p| (p[0], *p.last().unwrap())),
    )
}

/// Transitive closure as plain reachability (paths of length >= 1),
/// computed by repeated single-step expansion until a fixpoint.
pub fn naive_reach(r: &Relation) -> Relation {
    let n = r.size();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| r.contains(i, j)).collect()).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if !reach[i][j] {
                    for k in 0..n {
                        if reach[i][k] && reach[k][j] {
                            reach[i][j] = true;
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Relation::from_index_pairs(
        r.universe().clone(),
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| reach[i][j]),
    )
}

/// S-consistency by explicit path enumeration: no directed path from x to y
/// while (y,x) lies in the asymmetric part.
pub fn naive_s_consistent(r: &Relation) -> bool {
    let reach = naive_reach(r);
    let p = r.asymmetric_part();
    for (x, y) in reach.pairs() {
        if p.contains(y, x) {
            return false;
        }
    }
    true
}

/// m-consistency straight from the definition via naive_power.
pub fn naive_m_consistent(r: &Relation, m: usize) -> bool {
    let pm = naive_power(r, m);
    let p = r.asymmetric_part();
    let ok = pm.pairs().all(|(x, y)| !p.contains(y, x));
    ok
}

pub fn random_relation<R: Rng>(rng: &mut R, max_n: usize, density: f64) -> Relation {
    let n = rng.gen_range(1..=max_n);
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let u = Universe::new(labels).unwrap();
    random_relation_on(rng, u, density)
}

pub fn random_relation_on<R: Rng>(rng: &mut R, u: Arc<Universe>, density: f64) -> Relation {
    let n = u.size();
    Relation::from_index_pairs(
        u,
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(density)),
    )
}

/// All 2^(n*n) relations on a fresh n-element universe, n small.
pub fn all_relations(n: usize) -> Vec<Relation> {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let u = Universe::new(labels).unwrap();
    let cells = n * n;
    (0u32..1 << cells)
        .map(|mask| {
            Relation::from_index_pairs(
                u.clone(),
                (0..cells).filter(|c| mask >> c & 1 == 1).map(|c| (c / n, c % n)),
            )
        })
        .collect()
}
