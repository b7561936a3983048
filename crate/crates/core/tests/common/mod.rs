//! Seeded random corpus shared by the property and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use prirep::{
    Action, Aic, AicAnalysis, AicSet, Analysis, Atom, BodyLit, Constraint, Database, Fact, GroundAic, Instance,
    Literal, PrioritizedDb, PriorityRelation, Query, Schema, Term, Update,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest fact universe of a generated instance; keeps the brute-force
/// oracles cheap.
pub const MAX_FACTS: usize = 12;

pub const PREDS: [&str; 4] = ["A", "B", "C", "D"];
pub const CONSTS: [&str; 4] = ["a", "b", "c", "d"];
pub const LETTERS: [&str; 5] = ["p", "q", "r", "s", "t"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn term(rng: &mut ChaCha8Rng, vars: &[&str], consts: &[&str]) -> Term {
    if !vars.is_empty() && (consts.is_empty() || rng.random_bool(0.8)) {
        Term::var(vars[rng.random_range(0..vars.len())])
    } else {
        Term::cons(consts[rng.random_range(0..consts.len())])
    }
}

fn atom(rng: &mut ChaCha8Rng, schema: &[(&'static str, usize)], vars: &[&str], consts: &[&str]) -> Atom {
    let (p, n) = schema[rng.random_range(0..schema.len())];
    Atom::new(p, (0..n).map(|_| term(rng, vars, consts)).collect())
}

/// A safe universal constraint: 1-2 positive atoms, maybe a negated atom,
/// an inequality and a head atom.
fn constraint(rng: &mut ChaCha8Rng, schema: &[(&'static str, usize)], consts: &[&str]) -> Constraint {
    let npos = rng.random_range(1..=2);
    let pos: Vec<Atom> = (0..npos).map(|_| atom(rng, schema, &["X", "Y"], consts)).collect();
    let bound: Vec<&str> = ["X", "Y"]
        .into_iter()
        .filter(|v| pos.iter().any(|a| a.args.contains(&Term::var(v))))
        .collect();
    let mut body: Vec<BodyLit> = pos.into_iter().map(BodyLit::pos).collect();
    if rng.random_bool(0.3) {
        body.push(BodyLit::neg(atom(rng, schema, &bound, consts)));
    }
    let mut neqs = Vec::new();
    if bound.len() == 2 && rng.random_bool(0.3) {
        neqs.push((Term::var("X"), Term::var("Y")));
    }
    let head = if rng.random_bool(0.5) { vec![atom(rng, schema, &bound, consts)] } else { vec![] };
    Constraint::new(body, neqs, head).expect("generated constraint is safe")
}

/// A random instance with at most four constants, predicates and
/// constraints and at most `MAX_FACTS` facts in its universe.
pub fn instance(seed: u64) -> Instance {
    let mut rng = rng(seed);
    loop {
        let npred = rng.random_range(1..=4);
        let nconst = rng.random_range(1..=4);
        let consts = &CONSTS[..nconst];
        let schema: Vec<(&'static str, usize)> = PREDS[..npred]
            .iter()
            .map(|&p| (p, [0, 1, 1, 1, 2][rng.random_range(0..5)]))
            .collect();
        let size: usize = schema.iter().map(|&(_, n)| nconst.pow(n as u32)).sum();
        if size > MAX_FACTS {
            continue;
        }
        let ncons = rng.random_range(1..=4);
        let cs: Vec<Constraint> = (0..ncons).map(|_| constraint(&mut rng, &schema, consts)).collect();
        let mut db = Database::new();
        for &(p, n) in &schema {
            let mut idx = vec![0usize; n];
            loop {
                if rng.random_bool(0.5) {
                    let args: Vec<&str> = idx.iter().map(|&i| consts[i]).collect();
                    db.insert(Fact::new(p, &args));
                }
                let mut k = n;
                while k > 0 {
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < nconst {
                        break;
                    }
                    idx[k] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        let sch = Schema::from_pairs(&schema).unwrap();
        let inst = Instance::new(sch, db, cs).unwrap();
        if inst.universe().map(|u| u.len() <= MAX_FACTS).unwrap_or(false) {
            return inst;
        }
    }
}

fn co_pairs(a: &Analysis) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for c in &a.conflicts {
        let v: Vec<usize> = c.ones().collect();
        for (k, &i) in v.iter().enumerate() {
            for &j in &v[k + 1..] {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Orients co-conflicting pairs along a random ranking; each pair gets an
/// edge with probability `p`, so the relation is acyclic.
pub fn priority(a: &Analysis, seed: u64, p: f64) -> PriorityRelation {
    let mut rng = rng(seed ^ 0x9e37_79b9);
    let mut rank: Vec<usize> = (0..a.universe.len()).collect();
    rank.shuffle(&mut rng);
    let mut edges = BTreeSet::new();
    for (i, j) in co_pairs(a) {
        if rng.random_bool(p) {
            let (hi, lo) = if rank[i] > rank[j] { (i, j) } else { (j, i) };
            edges.insert((a.universe.literal(hi), a.universe.literal(lo)));
        }
    }
    PriorityRelation::from_edges(edges)
}

/// Scores 0-2 on every conflict literal.
pub fn scores(a: &Analysis, seed: u64) -> PriorityRelation {
    let mut rng = rng(seed ^ 0x5bd1_e995);
    let mut scores = BTreeMap::new();
    for i in a.vertices().ones() {
        scores.insert(a.universe.literal(i), rng.random_range(0..=2));
    }
    PriorityRelation {
        edges: BTreeSet::new(),
        scores,
    }
}

pub fn prioritized(seed: u64) -> PrioritizedDb {
    let inst = instance(seed);
    let a = Analysis::new(&inst).unwrap();
    let rel = priority(&a, seed, 0.6);
    PrioritizedDb::from_analysis(a, rel).unwrap()
}

/// A conjunctive query of 1-2 atoms with at most one answer variable.
pub fn query(inst: &Instance, seed: u64) -> Query {
    let mut rng = rng(seed ^ 0x2545_f491);
    let schema: Vec<(&'static str, usize)> = inst
        .schema
        .predicates()
        .map(|(p, n)| (PREDS.into_iter().find(|q| **q == **p).unwrap(), n))
        .collect();
    let consts: Vec<&str> = CONSTS.into_iter().filter(|c| inst.db.iter().any(|f| f.args.iter().any(|x| &**x == *c))).collect();
    let consts = if consts.is_empty() { vec!["a"] } else { consts };
    let n = rng.random_range(1..=2);
    let body: Vec<Atom> = (0..n).map(|_| atom(&mut rng, &schema, &["X", "Y"], &consts)).collect();
    let vars: BTreeSet<&str> = ["X", "Y"]
        .into_iter()
        .filter(|v| body.iter().any(|a| a.args.contains(&Term::var(v))))
        .collect();
    let head: Vec<Term> = vars.into_iter().take(rng.random_range(0..=1)).map(Term::var).collect();
    Query::new("q", head, body).unwrap()
}

fn letter_lit(l: usize, positive: bool) -> Literal {
    let f = Fact::new(LETTERS[l], &[]);
    if positive {
        Literal::pos(f)
    } else {
        Literal::neg(f)
    }
}

fn letters_schema() -> Schema {
    let pairs: Vec<(&str, usize)> = LETTERS.iter().map(|&l| (l, 0)).collect();
    Schema::from_pairs(&pairs).unwrap()
}

fn random_db(rng: &mut ChaCha8Rng) -> Database {
    LETTERS
        .iter()
        .filter(|_| rng.random_bool(0.5))
        .map(|l| Fact::new(l, &[]))
        .collect()
}

fn analysis_of(db: Database, rules: impl IntoIterator<Item = GroundAic>) -> AicAnalysis {
    let aics: Vec<Aic> = rules.into_iter().map(|r| r.to_aic()).collect();
    let set = AicSet::new(letters_schema(), db, aics).unwrap();
    AicAnalysis::new(&set).unwrap()
}

fn random_rule(rng: &mut ChaCha8Rng, sign: Option<&[bool]>, max_body: usize) -> GroundAic {
    let mut letters: Vec<usize> = (0..LETTERS.len()).collect();
    letters.shuffle(rng);
    let n = rng.random_range(1..=max_body);
    let lits: BTreeSet<Literal> = letters[..n]
        .iter()
        .map(|&l| letter_lit(l, sign.map_or_else(|| rng.random_bool(0.5), |s| s[l])))
        .collect();
    let mut upd: Update = lits.iter().filter(|_| rng.random_bool(0.5)).map(Action::fix).collect();
    if upd.is_empty() {
        let all: Vec<&Literal> = lits.iter().collect();
        upd.insert(Action::fix(all[rng.random_range(0..all.len())]));
    }
    GroundAic::new(lits, upd)
}

/// Ground AICs over five propositional letters with arbitrary signs.
pub fn aic_set(seed: u64) -> AicAnalysis {
    let mut rng = rng(seed ^ 0x7f4a_7c15);
    let n = rng.random_range(1..=4);
    let rules: Vec<GroundAic> = (0..n).map(|_| random_rule(&mut rng, None, 3)).collect();
    analysis_of(random_db(&mut rng), rules)
}

/// Ground AICs where every letter keeps one sign across all bodies.
pub fn monotone_aic_set(seed: u64) -> AicAnalysis {
    let mut rng = rng(seed ^ 0x1234_5678);
    let sign: Vec<bool> = (0..LETTERS.len()).map(|_| rng.random_bool(0.5)).collect();
    let n = rng.random_range(1..=4);
    let rules: Vec<GroundAic> = (0..n).map(|_| random_rule(&mut rng, Some(&sign), 3)).collect();
    analysis_of(random_db(&mut rng), rules)
}

/// Adds resolvents of the rules, carrying the actions of both parents
/// except the ones on the resolved letter, until nothing changes. None when
/// a resolvent is empty or gets no action.
fn close_under_resolution(rules: Vec<GroundAic>) -> Option<Vec<GroundAic>> {
    let mut by_body: BTreeMap<BTreeSet<Literal>, Update> = BTreeMap::new();
    for r in rules {
        by_body.entry(r.lits).or_default().extend(r.upd);
    }
    loop {
        let mut changed = false;
        let snapshot: Vec<(BTreeSet<Literal>, Update)> = by_body.clone().into_iter().collect();
        for (l1, u1) in &snapshot {
            for (l2, u2) in &snapshot {
                for a in l1.iter().filter(|a| a.is_positive() && l2.contains(&a.negate())) {
                    let mut res: BTreeSet<Literal> = l1.union(l2).cloned().collect();
                    res.remove(a);
                    res.remove(&a.negate());
                    if !prirep::is_consistent(&res) {
                        continue;
                    }
                    if res.is_empty() {
                        return None;
                    }
                    let drop = [Action::add(a.fact.clone()), Action::remove(a.fact.clone())];
                    let needed: Update = u1.union(u2).filter(|x| !drop.contains(x)).cloned().collect();
                    if needed.is_empty() && !by_body.contains_key(&res) {
                        return None;
                    }
                    let e = by_body.entry(res).or_default();
                    let before = e.len();
                    e.extend(needed);
                    changed |= e.len() != before;
                }
            }
        }
        if !changed {
            return Some(by_body.into_iter().map(|(l, u)| GroundAic::new(l, u)).collect());
        }
    }
}

/// A well-behaved ground AIC set with conflicts of at most two literals and
/// an acyclic derived priority. Odd seeds come from random rules closed
/// under resolution, even seeds from the rules of a random priority.
pub fn binary_well_behaved(seed: u64) -> AicAnalysis {
    let mut rng = rng(seed ^ 0x0bad_cafe);
    loop {
        let a = if seed % 2 == 1 {
            let n = rng.random_range(1..=4);
            let rules: Vec<GroundAic> = (0..n).map(|_| random_rule(&mut rng, None, 2)).collect();
            match close_under_resolution(rules) {
                Some(r) => analysis_of(random_db(&mut rng), r),
                None => continue,
            }
        } else {
            let n = rng.random_range(1..=5);
            let rules: Vec<GroundAic> = (0..n)
                .map(|_| random_rule(&mut rng, None, 2))
                .collect();
            let a = analysis_of(random_db(&mut rng), rules);
            let rel = priority(&a.analysis, rng.random(), 0.7);
            let pdb = PrioritizedDb::from_analysis(a.analysis.clone(), rel).unwrap();
            prirep::prio_aic_analysis(&pdb).unwrap()
        };
        let p = prirep::check_properties(&a);
        let binary = a.analysis.conflicts.iter().all(|c| c.count_ones(..) <= 2);
        let ok = p.closed_under_resolution && p.preserves_actions_under_resolution && p.preserves_actions_under_strengthening;
        if ok && binary && prirep::aics_to_prio(&a).cycle.is_none() {
            return a;
        }
    }
}
