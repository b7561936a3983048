//! Small worked instances in the text formats, shared by tests, the
//! acceptance suite and the CLI tests.

use crate::aic::{AicAnalysis, AicSet};
use crate::model::{Database, Schema};
use crate::priority::{PrioritizedDb, PriorityRelation};
use crate::text::{parse_aics, parse_constraints, parse_database, parse_priority, parse_schema};
use crate::universe::Instance;

/// A database with constraints and optional priority and AIC texts.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub schema: &'static str,
    pub db: &'static str,
    pub constraints: &'static str,
    pub priority: &'static str,
    pub aics: &'static str,
}

impl Fixture {
    pub const fn empty() -> Fixture {
        Fixture {
            schema: "",
            db: "",
            constraints: "",
            priority: "",
            aics: "",
        }
    }

    pub fn database(&self) -> Database {
        parse_database(self.db).expect("fixture database")
    }

    /// Declared schema merged with the predicates in use.
    pub fn instance(&self) -> Instance {
        let mut schema: Schema = parse_schema(self.schema).expect("fixture schema");
        let inferred = Instance::infer(self.database(), parse_constraints(self.constraints).expect("fixture constraints"))
            .expect("fixture instance");
        schema.merge(&inferred.schema).expect("fixture schema agrees");
        Instance::new(schema, inferred.db, inferred.constraints).expect("fixture instance")
    }

    pub fn aic_set(&self) -> AicSet {
        let mut schema: Schema = parse_schema(self.schema).expect("fixture schema");
        let inferred = AicSet::infer(self.database(), parse_aics(self.aics).expect("fixture AICs")).expect("fixture AICs");
        schema.merge(&inferred.schema).expect("fixture schema agrees");
        AicSet::new(schema, inferred.db, inferred.aics).expect("fixture AICs")
    }

    pub fn aic_analysis(&self) -> AicAnalysis {
        AicAnalysis::new(&self.aic_set()).expect("fixture AIC analysis")
    }

    pub fn priority(&self) -> PriorityRelation {
        parse_priority(self.priority).expect("fixture priority")
    }

    pub fn prioritized(&self) -> PrioritizedDb {
        PrioritizedDb::new(&self.instance(), self.priority()).expect("fixture priority is valid")
    }
}

/// Two inclusions whose targets exclude each other: A(a), B(a) conflict
/// through C and D.
pub const IMPLIED_EXCLUSION: Fixture = Fixture {
    schema: "A/1. B/1. C/1. D/1.",
    db: "A(a). B(a).",
    constraints: "A(X) -> C(X).\nB(X) -> D(X).\nC(X), D(X) -> false.\n",
    ..Fixture::empty()
};

/// Keys on S and R, S implies A and B, R and S may not share a second column.
pub const KEYS_AND_INCLUSIONS: Fixture = Fixture {
    schema: "S/2. R/2. A/1. B/1.",
    db: "S(a,b). S(a,c). R(d,b). R(d,c).",
    constraints: "S(X,Y), S(X,Z), Y != Z -> false.\n\
                  S(X,Y) -> A(X).\n\
                  R(X,Y), R(X,Z), Y != Z -> false.\n\
                  S(X,Y) -> B(X).\n\
                  R(Y,X), S(Z,X) -> false.\n",
    priority: "R(d,b) > S(a,b).\nS(a,b) > !A(a).\nS(a,c) > R(d,c).\nS(a,c) > !B(a).\n",
    aics: "",
};

/// Disjunctive head with both absences dominated: the Pareto-optimal repairs
/// intersect to an inconsistent database.
pub const DISJUNCTIVE_HEAD: Fixture = Fixture {
    schema: "A/1. B/1. C/1.",
    db: "A(a).",
    constraints: "A(X) -> B(X) | C(X).\n",
    priority: "A(a) > !B(a).\nA(a) > !C(a).\n",
    aics: "",
};

/// Reachability propagation and an exclusion: the chain of length `n` is a
/// conflict of size n + 2.
pub fn reachability_chain(n: usize) -> Instance {
    let mut db = String::from("A(a0). ");
    for i in 0..n {
        db += &format!("R(a{i},a{}). ", i + 1);
    }
    db += &format!("B(a{n}).");
    let cs = parse_constraints("R(X,Y), A(X) -> A(Y).\nA(X), B(X) -> false.\n").unwrap();
    Instance::infer(parse_database(&db).unwrap(), cs).unwrap()
}

/// Three removal rules where a well-founded update is not founded.
pub const WELL_FOUNDED_NOT_FOUNDED: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0. delta/0.",
    db: "alpha. beta. gamma. delta.",
    aics: "alpha, beta -> {-beta}.\nalpha, gamma -> {-alpha}.\ngamma, delta -> {-gamma}.\n",
    ..Fixture::empty()
};

/// Empty database whose unique update is founded and well-founded but not
/// grounded.
pub const UNIQUE_UPDATE_NOT_GROUNDED: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0.",
    aics: "not alpha, not beta -> {+alpha}.\n\
           alpha, not beta -> {+beta}.\n\
           not alpha, beta -> {-beta}.\n\
           alpha, beta, not gamma -> {+gamma}.\n\
           alpha, not beta, gamma -> {+beta}.\n\
           not alpha, beta, gamma -> {+alpha}.\n",
    ..Fixture::empty()
};

/// Closed under resolution, but the resolvent of the last two rules does not
/// carry their actions.
pub const RESOLUTION_DROPS_ACTIONS: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0. delta/0.",
    db: "alpha. beta. gamma.",
    aics: "alpha, beta -> {-alpha}.\n\
           beta, gamma -> {-gamma}.\n\
           alpha, not delta -> {+delta}.\n\
           beta, delta -> {-beta}.\n",
    ..Fixture::empty()
};

/// Not closed under resolution: two founded updates, one not well-founded.
pub const UNRESOLVED_PAIR: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0.",
    db: "alpha. beta. gamma.",
    aics: "alpha, not beta -> {-alpha}.\n\
           not alpha, beta -> {-beta}.\n\
           alpha, beta, gamma -> {-gamma}.\n",
    ..Fixture::empty()
};

/// The previous set plus its resolvents, all removing gamma.
pub const RESOLVED_PAIR: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0.",
    db: "alpha. beta. gamma.",
    aics: "alpha, not beta -> {-alpha}.\n\
           not alpha, beta -> {-beta}.\n\
           alpha, beta, gamma -> {-gamma}.\n\
           alpha, gamma -> {-gamma}.\n\
           beta, gamma -> {-gamma}.\n",
    ..Fixture::empty()
};

/// Monotone rules where a longer body permits an action the shorter one
/// forbids.
pub const STRENGTHENING_ADDS_ACTIONS: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0. delta/0.",
    db: "alpha. beta. gamma. delta.",
    aics: "alpha, delta -> {-delta}.\n\
           alpha, beta, delta -> {-alpha}.\n\
           alpha, beta, gamma, delta -> {-beta}.\n\
           beta, gamma -> {-gamma}.\n",
    ..Fixture::empty()
};

/// Preserves actions but misses the resolvent of its two rules.
pub const MISSING_RESOLVENT: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0.",
    db: "alpha. beta. gamma.",
    aics: "alpha, beta -> {-beta}.\nnot beta, gamma -> {-gamma}.\n",
    ..Fixture::empty()
};

/// Each rule removes a different member of a three-way cycle.
pub const CYCLIC_PREFERENCES: Fixture = Fixture {
    schema: "A/1. B/1. C/1.",
    db: "A(a). B(a). C(a).",
    aics: "A(X), B(X) -> {-A(X)}.\nB(X), C(X) -> {-B(X)}.\nC(X), A(X) -> {-C(X)}.\n",
    ..Fixture::empty()
};

/// Ternary conflicts where a Pareto-optimal repair has no founded update.
pub const TERNARY_PARETO_GAP: Fixture = Fixture {
    schema: "alpha/0. beta/0. gamma/0. delta/0. eps/0.",
    db: "alpha. beta. gamma. delta. eps.",
    aics: "alpha, beta, gamma -> {-beta}.\n\
           alpha, beta, delta -> {-alpha, -beta}.\n\
           delta, eps -> {-delta}.\n",
    ..Fixture::empty()
};
