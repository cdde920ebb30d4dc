//! Finite binary relations over labeled universes: the consistency
//! hierarchy, constrained extension theorems, realizers and dimension, and
//! games with incomplete preferences.

pub mod consistency;
pub mod error;
pub mod extension;
pub mod games;
pub mod realizer;
pub mod relation;
pub mod universe;

#[cfg(test)]
pub(crate) mod test_support;

pub use consistency::{
    consistency_report, delta_witness, has_m_rank_of_symmetry, is_delta_consistent,
    is_m_consistent, is_s_consistent, lambda_index, s_consistency_witness, ConsistencyReport,
    LambdaIndex,
};
pub use error::{Error, Result};
pub use extension::{
    enumerate_linear_extensions, enumerate_ordering_extensions,
    enumerate_tournament_extensions, extension_with_maximal, is_extension_of, linear_extension,
    ordering_extension, szpilrajn_step, szpilrajn_step_raw, tournament_extension,
    tournament_extension_raw, tournament_formula,
    ExtensionConstraint, DEFAULT_ENUM_CAP,
};
pub use games::{
    completion_count, completion_union_check, completion_union_check_seeded,
    enumerate_completions, nash_equilibria,
    nash_equilibria_with, nash_equilibrium_profiles, profile_universe, witness_completion,
    CompletionUnionReport, Deviation, Game, Profile,
};
pub use realizer::{
    conjecture_harness, covers, dimension, duggan_check, intersect, is_realizer,
    uncovered_pairs, verify_intersection_theorem, Counterexample, DugganReport, Flavor,
    HarnessReport, IntersectionOutcome, IntersectionReport, RealizerCheck, RealizerFamily,
    RelationClass, Scope,
};
pub use relation::{Exponent, PowerSequence, Relation, RelationReport};
pub use universe::Universe;
