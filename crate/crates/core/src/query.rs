//! Conjunctive queries and repair-based answering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Atom, Database, Fact, Sym, Term};
use crate::priority::{optimal_repairs, Optimality, PrioritizedDb};

/// `q(t1,...,tk) :- A1, ..., An.` with positive atoms only.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Query {
    pub name: Sym,
    pub head: Vec<Term>,
    pub body: Vec<Atom>,
}

pub type Tuple = Vec<Sym>;

impl Query {
    /// Fails if a head variable does not occur in the body.
    pub fn new(name: &str, head: Vec<Term>, body: Vec<Atom>) -> Result<Query> {
        let bound: BTreeSet<&Sym> = body.iter().flat_map(|a| a.vars()).collect();
        for t in &head {
            if let Term::Var(v) = t {
                if !bound.contains(v) {
                    return Err(Error::Unsafe(format!(
                        "head variable {v} of query {name} does not occur in its body"
                    )));
                }
            }
        }
        Ok(Query {
            name: crate::model::sym(name),
            head,
            body,
        })
    }

    pub fn is_boolean(&self) -> bool {
        self.head.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.head.len()
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Atom::new(&self.name, self.head.clone()))?;
        write!(f, " :- ")?;
        for (i, a) in self.body.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ".")
    }
}

/// Every answer tuple of `q` over `db`.
pub fn evaluate(q: &Query, db: &Database) -> BTreeSet<Tuple> {
    let mut by_pred: BTreeMap<(&str, usize), Vec<&Fact>> = BTreeMap::new();
    for f in db {
        by_pred.entry((&f.pred, f.arity())).or_default().push(f);
    }
    let empty = Vec::new();
    let mut atoms: Vec<(&Atom, &Vec<&Fact>)> = q
        .body
        .iter()
        .map(|a| (a, by_pred.get(&(&*a.pred, a.args.len())).unwrap_or(&empty)))
        .collect();
    atoms.sort_by_key(|(_, fs)| fs.len());

    fn go(
        atoms: &[(&Atom, &Vec<&Fact>)],
        k: usize,
        sub: &mut BTreeMap<Sym, Sym>,
        head: &[Term],
        out: &mut BTreeSet<Tuple>,
    ) {
        if k == atoms.len() {
            out.insert(
                head.iter()
                    .map(|t| match t {
                        Term::Var(v) => sub[v].clone(),
                        Term::Const(c) => c.clone(),
                    })
                    .collect(),
            );
            return;
        }
        let (atom, facts) = atoms[k];
        'facts: for f in facts.iter() {
            let mut bound = Vec::new();
            for (t, c) in atom.args.iter().zip(&f.args) {
                let ok = match t {
                    Term::Const(d) => d == c,
                    Term::Var(v) => match sub.get(v) {
                        Some(d) => d == c,
                        None => {
                            sub.insert(v.clone(), c.clone());
                            bound.push(v.clone());
                            true
                        }
                    },
                };
                if !ok {
                    for v in &bound {
                        sub.remove(v);
                    }
                    continue 'facts;
                }
            }
            go(atoms, k + 1, sub, head, out);
            for v in &bound {
                sub.remove(v);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(&atoms, 0, &mut BTreeMap::new(), &q.head, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Brave,
    Cqa,
    Intersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerSet {
    pub query: Query,
    pub semantics: Semantics,
    pub optimality: Optimality,
    pub tuples: BTreeSet<Tuple>,
}

/// Intersection of the optimal repairs of the given kind. It may violate the
/// constraints. With no repairs at all the fact universe is returned.
pub fn repairs_intersection(pdb: &PrioritizedDb, kind: Optimality) -> Database {
    intersect(&optimal_repairs(pdb, kind), pdb)
}

fn intersect(reps: &BTreeSet<Database>, pdb: &PrioritizedDb) -> Database {
    let mut it = reps.iter();
    let Some(first) = it.next() else {
        return pdb.analysis.universe.facts().iter().cloned().collect();
    };
    it.fold(first.clone(), |acc, r| acc.intersection(r).cloned().collect())
}

pub fn answers(pdb: &PrioritizedDb, q: &Query, semantics: Semantics, optimality: Optimality) -> AnswerSet {
    let reps = optimal_repairs(pdb, optimality);
    let tuples = match semantics {
        Semantics::Brave => reps.iter().flat_map(|r| evaluate(q, r)).collect(),
        Semantics::Cqa => {
            let mut per = reps.iter().map(|r| evaluate(q, r));
            match per.next() {
                // vacuous: every tuple over the universe constants
                None => evaluate(q, &intersect(&reps, pdb)),
                Some(first) => per.fold(first, |acc, s| acc.intersection(&s).cloned().collect()),
            }
        }
        Semantics::Intersection => evaluate(q, &intersect(&reps, pdb)),
    };
    AnswerSet {
        query: q.clone(),
        semantics,
        optimality,
        tuples,
    }
}

/// Whether `tuple` is an answer to `q` under the given semantics.
pub fn entails(pdb: &PrioritizedDb, q: &Query, tuple: &[Sym], semantics: Semantics, optimality: Optimality) -> bool {
    answers(pdb, q, semantics, optimality).tuples.contains(tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{DISJUNCTIVE_HEAD, KEYS_AND_INCLUSIONS};
    use crate::text::{parse_database, parse_query};

    fn q(text: &str) -> Query {
        parse_query(text).unwrap()
    }

    #[test]
    fn evaluation() {
        let db = parse_database("R(d,b). R(d,c).").unwrap();
        let ans = evaluate(&q("q(X) :- R(X,Y)."), &db);
        assert_eq!(ans.len(), 1);
        assert_eq!(&*ans.iter().next().unwrap()[0], "d");
        assert_eq!(evaluate(&q("q :- A(a)."), &parse_database("A(a).").unwrap()).len(), 1);
        assert!(evaluate(&q("q(X) :- R(X,Y)."), &Database::new()).is_empty());
        let path = evaluate(&q("q(X,Z) :- R(X,Y), R(Y,Z)."), &parse_database("R(a,b). R(b,c). R(c,c).").unwrap());
        assert_eq!(path.len(), 3);
        assert!(evaluate(&q("q :- R(X,X)."), &parse_database("R(a,b).").unwrap()).is_empty());
    }

    #[test]
    fn pareto_judgments() {
        let pdb = KEYS_AND_INCLUSIONS.prioritized();
        let yes = |text: &str, s, o| entails(&pdb, &q(text), &[], s, o);
        use Optimality::*;
        use Semantics::*;
        assert!(yes("q :- A(a).", Brave, Pareto));
        assert!(!yes("q :- A(a).", Cqa, Pareto));
        assert!(yes("q :- R(d,Y).", Cqa, Pareto));
        assert!(!yes("q :- R(d,Y).", Intersection, Pareto));
        assert!(!yes("q :- A(a).", Cqa, Global));
        assert!(!yes("q :- R(d,b).", Cqa, Pareto));
        assert!(repairs_intersection(&pdb, Pareto).is_empty());
        // follows the definitional completion-optimal set, which keeps {R(d,b)}
        assert!(!yes("q :- A(a).", Cqa, Completion));
        assert!(yes("q :- R(d,b).", Cqa, Completion));
    }

    #[test]
    fn intersection_may_be_inconsistent() {
        let pdb = DISJUNCTIVE_HEAD.prioritized();
        let i = repairs_intersection(&pdb, Optimality::Pareto);
        assert_eq!(i, parse_database("A(a).").unwrap());
        let inst = DISJUNCTIVE_HEAD.instance();
        assert!(!crate::universe::satisfies(&i, &inst.constraints));
    }

    #[test]
    fn unsafe_head() {
        assert!(matches!(parse_query("q(X) :- A(a)."), Err(Error::Unsafe(_))));
    }
}
