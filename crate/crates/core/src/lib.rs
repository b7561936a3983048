//! Prioritized databases under universal constraints.
//!
//! Conflicts of a database (sets of literals that force a violation), its
//! symmetric-difference repairs, Pareto/global/completion-optimal repairs under
//! a priority relation, repair-based query answering, active integrity
//! constraints and the translations between the two settings.

pub mod aic;
pub mod bridges;
pub mod conflicts;
pub mod error;
#[doc(hidden)]
pub mod fixtures;
pub mod model;
pub mod priority;
pub mod query;
pub mod repairs;
pub mod text;
pub mod universe;

pub use conflicts::{
    blake, conflict_hypergraph, conflicts_hitting_sets, conflicts_prime_implicants, is_conflict,
    max_conflict_size, minimal_hitting_sets, Analysis, ConflictHypergraph,
};
pub use error::{Error, Limits, Result};
pub use model::{
    adom, is_consistent, sym, Atom, BodyLit, Constraint, Database, Fact, LitSet, Literal, Schema,
    Sign, Sym, Term,
};
pub use universe::{facts_universe, lits, satisfies, GroundBits, Instance, Universe};
pub use repairs::{
    delta_repairs, delta_repairs_bruteforce, is_delta_repair, repairs, subset_repairs,
    superset_repairs, RepairKind,
};
pub use priority::{
    completion_certificate, completion_optimal_by_enumeration, completions, delta_p_repairs,
    detect_score_structure, for_each_completion, greedy_completion_optimal, is_global_improvement,
    is_optimal_repair, is_pareto_improvement, optimal_repairs, validate_priority, Optimality,
    PrioritizedDb, PriorityRelation, PriorityReport, ScoreStructure,
};
pub use text::{
    format_facts, format_lits, parse_aics, parse_constraints, parse_database, parse_priority, parse_queries, parse_query, parse_schema,
    parse_update, print_aics, print_constraints, print_database, print_priority, print_schema,
    print_update,
};
pub use query::{answers, entails, evaluate, repairs_intersection, AnswerSet, Query, Semantics, Tuple};
pub use aic::{
    anti_normalize, anti_normalize_ground, apply, check_properties, format_update, is_consistent_update,
    min_bodies, min_bodies_ground, min_g, normalize, normalize_ground, r_updates_bruteforce, Action, Aic,
    AicAnalysis, AicSet, Classification, GroundAic, Op, PropertyReport, Update, UpdateAtom,
};
pub use bridges::{
    aics_to_prio, check_aics_against_priority, check_denial_priority_aics, check_priority_aics,
    denial_prio_to_aics, fact_to_lit, lit_to_fact, min_constraints, prio_aic_analysis, prio_to_aics, refine,
    stored_priority, to_denial, to_denial_from, AicPriority, AicPriorityCheck, DenialImage, RepairComparison,
};
