//! Translations between the frameworks: universal constraints to ground
//! denials, prioritized databases to AICs (data-dependent, and for denial
//! constraints with a stored priority, data-independent), and AICs back to
//! prioritized databases.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::aic::{apply, check_properties, Action, Aic, AicAnalysis, GroundAic, Op, PropertyReport, UpdateAtom};
use crate::conflicts::Analysis;
use crate::error::{Error, Limits, Result};
use crate::model::{sym, Atom, BodyLit, Constraint, Database, Fact, LitSet, Literal, Schema, Sym, Term};
use crate::priority::{find_cycle, format_cycle, optimal_repairs, Optimality, PrioritizedDb, PriorityRelation};
use crate::repairs::delta_repairs_of;
use crate::text::format_facts;
use crate::universe::Instance;

/// Largest number of variables plus constants a constraint may have when
/// its refinements are enumerated.
pub const MAX_REFINE_TERMS: usize = 10;

pub fn tilde(pred: &str) -> Sym {
    sym(&format!("~{pred}"))
}

/// `facts(λ)`: `P(c)` stays, `¬P(c)` becomes `~P(c)`.
pub fn lit_to_fact(l: &Literal) -> Fact {
    if l.is_positive() {
        l.fact.clone()
    } else {
        Fact {
            pred: tilde(&l.fact.pred),
            args: l.fact.args.clone(),
        }
    }
}

pub fn fact_to_lit(f: &Fact) -> Literal {
    match f.pred.strip_prefix('~') {
        Some(p) => Literal::neg(Fact {
            pred: sym(p),
            args: f.args.clone(),
        }),
        None => Literal::pos(f.clone()),
    }
}

fn lits_to_facts(lits: &LitSet) -> Database {
    lits.iter().map(lit_to_fact).collect()
}

/// A database over the schema extended with `~P` predicates, with one ground
/// denial per conflict of the original instance.
#[derive(Clone, Debug)]
pub struct DenialImage {
    pub schema: Schema,
    pub db: Database,
    pub constraints: Vec<Constraint>,
}

impl DenialImage {
    pub fn instance(&self) -> Result<Instance> {
        Instance::new(self.schema.clone(), self.db.clone(), self.constraints.clone())
    }

    /// Differences between the conflicts and Δ-repairs of the image and the
    /// `facts` images of those of `original`. Empty when they correspond.
    pub fn discrepancies(&self, original: &Analysis) -> Result<Vec<String>> {
        let image = Analysis::new(&self.instance()?)?;
        let mut out = Vec::new();
        let want: BTreeSet<Database> = original.conflict_sets().iter().map(lits_to_facts).collect();
        let got: BTreeSet<Database> = image
            .conflict_sets()
            .iter()
            .map(|c| c.iter().map(|l| l.fact.clone()).collect())
            .collect();
        for c in want.difference(&got) {
            out.push(format!("conflict {} of the image is missing", format_facts(c)));
        }
        for c in got.difference(&want) {
            out.push(format!("image has the extra conflict {}", format_facts(c)));
        }
        let u = &original.universe;
        let want: BTreeSet<Database> = crate::repairs::repair_agreements(original)
            .iter()
            .map(|agree| lits_to_facts(&u.bits_to_lits(agree)))
            .collect();
        let got = delta_repairs_of(&image);
        for r in want.difference(&got) {
            out.push(format!("repair {} of the image is missing", format_facts(r)));
        }
        for r in got.difference(&want) {
            out.push(format!("image has the extra repair {}", format_facts(r)));
        }
        Ok(out)
    }
}

/// `D_d = facts(Lits)` and `C_{d,D}`.
pub fn to_denial(inst: &Instance) -> Result<DenialImage> {
    to_denial_from(&Analysis::new(inst)?, &inst.schema)
}

pub fn to_denial_from(a: &Analysis, schema: &Schema) -> Result<DenialImage> {
    let mut ext = Schema::new();
    for (p, n) in schema.predicates() {
        if p.starts_with('~') {
            return Err(Error::Invalid(format!("predicate {p} clashes with the negated predicates")));
        }
        ext.declare(p, n)?;
        ext.declare(&tilde(p), n)?;
    }
    let u = &a.universe;
    let db = lits_to_facts(&u.lits());
    let constraints = a
        .conflict_sets()
        .iter()
        .map(|c| {
            let facts: LitSet = lits_to_facts(c).into_iter().map(Literal::pos).collect();
            Constraint::from_literals(&facts)
        })
        .collect();
    Ok(DenialImage {
        schema: ext,
        db,
        constraints,
    })
}

/// `η^C_≻`: for each conflict, a rule fixing its literals that are preferred
/// to no other literal of the conflict.
pub fn prio_to_aics(pdb: &PrioritizedDb) -> BTreeSet<GroundAic> {
    let u = &pdb.analysis.universe;
    pdb.analysis
        .conflicts
        .iter()
        .map(|c| {
            let upd = c
                .ones()
                .filter(|&l| !c.ones().any(|m| pdb.prefers(l, m)))
                .map(|l| Action::fix(&u.literal(l)))
                .collect();
            GroundAic::new(u.bits_to_lits(c), upd)
        })
        .collect()
}

pub fn prio_aic_analysis(pdb: &PrioritizedDb) -> Result<AicAnalysis> {
    AicAnalysis::from_ground(pdb.analysis.universe.clone(), prio_to_aics(pdb))
}

/// Pareto-optimal repairs next to the repairs of each kind of r-update, with
/// the expected relations that failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepairComparison {
    pub pareto: BTreeSet<Database>,
    pub founded: BTreeSet<Database>,
    pub well_founded: BTreeSet<Database>,
    pub grounded: BTreeSet<Database>,
    pub justified: BTreeSet<Database>,
    pub failures: Vec<String>,
}

impl RepairComparison {
    pub fn new(pareto: BTreeSet<Database>, a: &AicAnalysis, limits: &Limits) -> Result<RepairComparison> {
        let db = a.db();
        let mut cmp = RepairComparison {
            pareto,
            ..RepairComparison::default()
        };
        for (u, c) in a.classify_all(limits)? {
            let r = apply(&db, &u)?;
            for (flag, set) in [
                (c.founded, &mut cmp.founded),
                (c.well_founded, &mut cmp.well_founded),
                (c.grounded, &mut cmp.grounded),
                (c.justified, &mut cmp.justified),
            ] {
                if flag {
                    set.insert(r.clone());
                }
            }
        }
        Ok(cmp)
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    fn get(&self, name: &str) -> &BTreeSet<Database> {
        match name {
            "Pareto" => &self.pareto,
            "founded" => &self.founded,
            "well-founded" => &self.well_founded,
            "grounded" => &self.grounded,
            "justified" => &self.justified,
            _ => unreachable!("unknown repair kind {name}"),
        }
    }

    fn expect_subset(&mut self, small: &str, big: &str) {
        if let Some(r) = self.get(small).difference(self.get(big)).next() {
            let msg = format!("{} is {small} but not {big}", format_facts(r));
            self.failures.push(msg);
        }
    }

    fn expect_equal(&mut self, x: &str, y: &str) {
        self.expect_subset(x, y);
        self.expect_subset(y, x);
    }

    /// Justified = grounded = founded ⊆ well-founded.
    fn expect_collapse(&mut self) {
        self.expect_equal("justified", "grounded");
        self.expect_equal("grounded", "founded");
        self.expect_subset("founded", "well-founded");
    }

    /// Pareto-optimal repairs that come from no founded r-update.
    pub fn pareto_not_founded(&self) -> Vec<&Database> {
        self.pareto.difference(&self.founded).collect()
    }

    pub fn describe(&self) -> Vec<String> {
        let line = |name: &str, s: &BTreeSet<Database>| {
            let parts: Vec<String> = s.iter().map(format_facts).collect();
            format!("{name}: {}", parts.join(" "))
        };
        let mut out = vec![
            line("Pareto", &self.pareto),
            line("founded", &self.founded),
            line("well-founded", &self.well_founded),
            line("grounded", &self.grounded),
            line("justified", &self.justified),
        ];
        out.extend(self.failures.iter().map(|f| format!("FAILED: {f}")));
        out
    }
}

/// Compares the Pareto-optimal repairs of `pdb` with the repairs of the
/// rules `η^C_≻`: Pareto = justified = grounded = founded ⊆ well-founded.
pub fn check_priority_aics(pdb: &PrioritizedDb, limits: &Limits) -> Result<RepairComparison> {
    let a = prio_aic_analysis(pdb)?;
    let mut cmp = RepairComparison::new(optimal_repairs(pdb, Optimality::Pareto), &a, limits)?;
    cmp.expect_equal("Pareto", "founded");
    cmp.expect_collapse();
    Ok(cmp)
}

// ---------------------------------------------------------------------------
// Denial constraints with a stored priority

fn subst_term(t: &Term, m: &BTreeMap<Sym, Term>) -> Term {
    match t {
        Term::Var(v) => m.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::Const(_) => t.clone(),
    }
}

/// Every refinement of a denial constraint: variables are identified with
/// each other or with constants of `constants` in every possible way, then
/// all remaining variables are made pairwise distinct and distinct from the
/// constants. Refinements contradicting an inequality are skipped.
pub fn refine(c: &Constraint, constants: &BTreeSet<Sym>) -> Result<Vec<Constraint>> {
    if !c.is_denial() {
        return Err(Error::Invalid(format!("`{c}` is not a denial constraint")));
    }
    let vars: Vec<Sym> = c.vars().into_iter().collect();
    let consts: Vec<Sym> = constants.iter().cloned().collect();
    if vars.len() + consts.len() > MAX_REFINE_TERMS {
        return Err(Error::Budget(format!(
            "`{c}` has {} variables and constants to partition (limit {MAX_REFINE_TERMS})",
            vars.len() + consts.len()
        )));
    }
    // blocks 0..k hold one constant each, later blocks are named by their
    // first (smallest) variable
    let mut out = Vec::new();
    let mut block_of = vec![0usize; vars.len()];
    fn go(
        k: usize,
        nblocks: usize,
        block_of: &mut Vec<usize>,
        vars: &[Sym],
        consts: &[Sym],
        c: &Constraint,
        out: &mut Vec<Constraint>,
    ) {
        if k == vars.len() {
            if let Some(r) = build_refinement(block_of, vars, consts, c) {
                out.push(r);
            }
            return;
        }
        for b in 0..=nblocks {
            block_of[k] = b;
            go(k + 1, nblocks.max(b + 1), block_of, vars, consts, c, out);
        }
    }
    go(0, consts.len(), &mut block_of, &vars, &consts, c, &mut out);
    Ok(out)
}

fn build_refinement(block_of: &[usize], vars: &[Sym], consts: &[Sym], c: &Constraint) -> Option<Constraint> {
    let mut rep: BTreeMap<usize, Term> = BTreeMap::new();
    let mut m = BTreeMap::new();
    for (v, &b) in vars.iter().zip(block_of) {
        let t = if b < consts.len() {
            Term::Const(consts[b].clone())
        } else {
            rep.entry(b).or_insert_with(|| Term::Var(v.clone())).clone()
        };
        m.insert(v.clone(), t);
    }
    for (x, y) in &c.neqs {
        if subst_term(x, &m) == subst_term(y, &m) {
            return None;
        }
    }
    let mut lits: Vec<BodyLit> = Vec::new();
    for l in &c.lits {
        let atom = Atom {
            pred: l.atom.pred.clone(),
            args: l.atom.args.iter().map(|t| subst_term(t, &m)).collect(),
        };
        let bl = BodyLit::pos(atom);
        if !lits.contains(&bl) {
            lits.push(bl);
        }
    }
    let new_vars: Vec<Sym> = rep
        .values()
        .map(|t| match t {
            Term::Var(v) => v.clone(),
            Term::Const(_) => unreachable!(),
        })
        .collect();
    let mut neqs = Vec::new();
    for (i, v) in new_vars.iter().enumerate() {
        for z in &new_vars[i + 1..] {
            neqs.push((Term::Var(v.clone()), Term::Var(z.clone())));
        }
        for k in consts {
            neqs.push((Term::Var(v.clone()), Term::Const(k.clone())));
        }
    }
    Some(Constraint { lits, neqs })
}

/// Whether an injective map from the variables of `a` to the variables of
/// `b`, fixing constants, sends every atom of `a` to an atom of `b`.
fn embeds(a: &[Atom], b: &[Atom]) -> bool {
    fn count(xs: &[Atom]) -> BTreeMap<(&Sym, usize), usize> {
        let mut m = BTreeMap::new();
        for x in xs {
            *m.entry((&x.pred, x.args.len())).or_default() += 1;
        }
        m
    }
    let (ca, cb) = (count(a), count(b));
    if ca.iter().any(|(k, n)| cb.get(k).copied().unwrap_or(0) < *n) {
        return false;
    }
    fn go(k: usize, a: &[Atom], b: &[Atom], h: &mut BTreeMap<Sym, Sym>, used: &mut BTreeSet<Sym>) -> bool {
        if k == a.len() {
            return true;
        }
        let x = &a[k];
        for y in b.iter().filter(|y| y.pred == x.pred && y.args.len() == x.args.len()) {
            let mut added = Vec::new();
            let mut ok = true;
            for (s, t) in x.args.iter().zip(&y.args) {
                ok = match (s, t) {
                    (Term::Const(c), Term::Const(d)) => c == d,
                    (Term::Var(v), Term::Var(w)) => match h.get(v) {
                        Some(w2) => w2 == w,
                        None if used.contains(w) => false,
                        None => {
                            h.insert(v.clone(), w.clone());
                            used.insert(w.clone());
                            added.push(v.clone());
                            true
                        }
                    },
                    _ => false,
                };
                if !ok {
                    break;
                }
            }
            if ok && go(k + 1, a, b, h, used) {
                return true;
            }
            for v in added {
                used.remove(&h.remove(&v).unwrap());
            }
        }
        false
    }
    go(0, a, b, &mut BTreeMap::new(), &mut BTreeSet::new())
}

fn atoms(c: &Constraint) -> Vec<Atom> {
    c.lits.iter().map(|l| l.atom.clone()).collect()
}

/// `min(C)`: the refinements of every constraint, up to variable renaming,
/// that are not subsumed by a refinement with strictly fewer atoms.
pub fn min_constraints(cs: &[Constraint]) -> Result<Vec<Constraint>> {
    let constants: BTreeSet<Sym> = cs.iter().flat_map(|c| c.constants()).collect();
    let mut all: Vec<(Constraint, Vec<Atom>)> = Vec::new();
    for c in cs {
        for r in refine(c, &constants)? {
            let a = atoms(&r);
            let dup = all
                .iter()
                .any(|(_, b)| b.len() == a.len() && embeds(b, &a) && embeds(&a, b));
            if !dup {
                all.push((r, a));
            }
        }
    }
    Ok(all
        .iter()
        .filter(|(_, a)| !all.iter().any(|(_, b)| b.len() < a.len() && embeds(b, a)))
        .map(|(r, _)| r.clone())
        .collect())
}

fn check_id_convention(c: &Constraint, prio_pred: &str) -> Result<()> {
    if !c.is_denial() {
        return Err(Error::Invalid(format!("`{c}` is not a denial constraint")));
    }
    for l in &c.lits {
        if &*l.atom.pred == prio_pred {
            return Err(Error::Invalid(format!("`{c}` mentions the priority predicate {prio_pred}")));
        }
        if l.atom.args.is_empty() {
            return Err(Error::Invalid(format!(
                "{} has no identifier argument in `{c}`",
                l.atom.pred
            )));
        }
    }
    Ok(())
}

/// `η^C`: for every constraint of `min(C)` and each of its atoms `ℓ_i`, the
/// rule removing `ℓ_i` unless its identifier is preferred to the identifier
/// of another atom, as recorded by `prio_pred`.
pub fn denial_prio_to_aics(cs: &[Constraint], prio_pred: &str) -> Result<Vec<Aic>> {
    for c in cs {
        check_id_convention(c, prio_pred)?;
    }
    let mut out = Vec::new();
    for m in min_constraints(cs)? {
        let ls = atoms(&m);
        for (i, li) in ls.iter().enumerate() {
            let mut body: Vec<BodyLit> = ls.iter().cloned().map(BodyLit::pos).collect();
            for (j, lj) in ls.iter().enumerate() {
                if j == i {
                    continue;
                }
                let guard = BodyLit::neg(Atom::new(prio_pred, vec![li.args[0].clone(), lj.args[0].clone()]));
                if !body.contains(&guard) {
                    body.push(guard);
                }
            }
            let upd = UpdateAtom {
                op: Op::Remove,
                atom: li.clone(),
            };
            out.push(Aic::new(body, m.neqs.clone(), vec![upd])?);
        }
    }
    Ok(out)
}

/// Reads the priority recorded in `db`: `prio_pred(i, j)` means the fact
/// with identifier `i` is preferred to the one with identifier `j`.
pub fn stored_priority(db: &Database, prio_pred: &str) -> Result<PriorityRelation> {
    let mut by_id: BTreeMap<&Sym, &Fact> = BTreeMap::new();
    for f in db.iter().filter(|f| &*f.pred != prio_pred) {
        let Some(id) = f.args.first() else {
            return Err(Error::Invalid(format!("{f} has no identifier argument")));
        };
        if let Some(g) = by_id.insert(id, f) {
            return Err(Error::Invalid(format!("identifier {id} is used by both {g} and {f}")));
        }
    }
    let mut edges = BTreeSet::new();
    for f in db.iter().filter(|f| &*f.pred == prio_pred) {
        if f.arity() != 2 {
            return Err(Error::Invalid(format!("{f} does not relate two identifiers")));
        }
        let look = |id: &Sym| {
            by_id
                .get(id)
                .map(|g| Literal::pos((*g).clone()))
                .ok_or_else(|| Error::Invalid(format!("{f} refers to the unknown identifier {id}")))
        };
        edges.insert((look(&f.args[0])?, look(&f.args[1])?));
    }
    Ok(PriorityRelation::from_edges(edges))
}

/// Compares the Pareto-optimal repairs of `db` under `cs` and the stored
/// priority with the repairs of `η^C`.
pub fn check_denial_priority_aics(
    db: &Database,
    cs: &[Constraint],
    prio_pred: &str,
    limits: &Limits,
) -> Result<RepairComparison> {
    let aics = denial_prio_to_aics(cs, prio_pred)?;
    let set = crate::aic::AicSet::infer(db.clone(), aics)?;
    let mut schema = set.schema.clone();
    let inst = Instance::infer(db.clone(), cs.to_vec())?;
    schema.merge(&inst.schema)?;
    let inst = Instance::new(schema, inst.db, inst.constraints)?;
    let pdb = PrioritizedDb::new(&inst, stored_priority(db, prio_pred)?)?;
    let a = AicAnalysis::new(&set)?;
    let mut cmp = RepairComparison::new(optimal_repairs(&pdb, Optimality::Pareto), &a, limits)?;
    cmp.expect_equal("Pareto", "founded");
    cmp.expect_collapse();
    Ok(cmp)
}

// ---------------------------------------------------------------------------
// AICs to a prioritized database

/// `C_η`, `min_g(η)` and the derived relation `≻_η`, which may be cyclic.
#[derive(Clone, Debug)]
pub struct AicPriority {
    pub constraints: Vec<Constraint>,
    pub min_g: BTreeSet<GroundAic>,
    pub edges: BTreeSet<(Literal, Literal)>,
    pub cycle: Option<Vec<Literal>>,
    pub properties: PropertyReport,
}

impl AicPriority {
    pub fn priority(&self) -> PriorityRelation {
        PriorityRelation::from_edges(self.edges.iter().cloned())
    }

    /// Fails when `≻_η` is cyclic or relates literals sharing no conflict.
    pub fn prioritized(&self, a: &AicAnalysis) -> Result<PrioritizedDb> {
        if let Some(c) = &self.cycle {
            return Err(Error::InvalidPriority(format!("cycle {}", format_cycle(c))));
        }
        PrioritizedDb::from_analysis(a.analysis.clone(), self.priority())
    }

    /// Warnings for the failed well-behavedness conditions.
    pub fn warnings(&self) -> Vec<String> {
        let p = &self.properties;
        let mut out = Vec::new();
        if !p.closed_under_resolution {
            out.push("the rules are not closed under resolution".to_string());
        }
        if !p.preserves_actions_under_resolution {
            out.push("the rules do not preserve actions under resolution".to_string());
        }
        if !p.preserves_actions_under_strengthening {
            out.push("the rules do not preserve actions under strengthening".to_string());
        }
        if let Some(c) = &self.cycle {
            out.push(format!("the derived priority is cyclic: {}", format_cycle(c)));
        }
        out
    }
}

/// `λ ≻_η μ` iff some rule of `min_g(η)` violated by D contains both and
/// has the action `fix(μ)`, and no such rule has the action `fix(λ)`.
pub fn aics_to_prio(a: &AicAnalysis) -> AicPriority {
    let db = a.db();
    let rules: BTreeSet<GroundAic> = a.rules.iter().cloned().collect();
    let min_g = crate::aic::min_g(&rules);
    let violated: Vec<&GroundAic> = min_g.iter().filter(|r| r.violated_by(&db)).collect();
    let mut edges = BTreeSet::new();
    for r in &violated {
        for mu in r.lits.iter().filter(|m| r.upd.contains(&Action::fix(m))) {
            for lambda in r.lits.iter().filter(|l| *l != mu) {
                let blocked = violated.iter().any(|s| {
                    s.lits.contains(lambda) && s.lits.contains(mu) && s.upd.contains(&Action::fix(lambda))
                });
                if !blocked {
                    edges.insert((lambda.clone(), mu.clone()));
                }
            }
        }
    }
    let u = a.universe();
    let mut succ = vec![FixedBitSet::with_capacity(u.len()); u.len()];
    for (l, m) in &edges {
        // literals of violated rules hold in D, hence lie in Lits
        let (i, j) = (u.literal_index(l).unwrap(), u.literal_index(m).unwrap());
        succ[i].insert(j);
    }
    let cycle = find_cycle(&succ).map(|c| c.into_iter().map(|i| u.literal(i)).collect());
    let constraints = rules
        .iter()
        .filter(|r| crate::model::is_consistent(&r.lits))
        .map(|r| Constraint::from_literals(&r.lits))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    AicPriority {
        constraints,
        min_g,
        edges,
        cycle,
        properties: check_properties(a),
    }
}

/// Outcome of comparing an AIC set with the prioritized database built
/// from it.
#[derive(Clone, Debug)]
pub struct AicPriorityCheck {
    pub translation: AicPriority,
    pub max_conflict_size: usize,
    /// Closed under resolution and preserving actions under resolution and
    /// strengthening.
    pub well_behaved: bool,
    /// Absent when `≻_η` is not a valid priority.
    pub comparison: Option<RepairComparison>,
    pub notes: Vec<String>,
}

impl AicPriorityCheck {
    pub fn holds(&self) -> bool {
        self.comparison.as_ref().is_none_or(|c| c.holds())
    }

    pub fn describe(&self) -> Vec<String> {
        let mut out = self.notes.clone();
        if let Some(c) = &self.comparison {
            out.extend(c.describe());
            for r in c.pareto_not_founded() {
                out.push(format!("Pareto-optimal but not founded: {}", format_facts(r)));
            }
        }
        out
    }
}

/// For well-behaved rules with acyclic `≻_η`: justified = grounded =
/// founded ⊆ Pareto, with equality when conflicts have at most two
/// literals. Otherwise the sets are only reported.
pub fn check_aics_against_priority(a: &AicAnalysis, limits: &Limits) -> Result<AicPriorityCheck> {
    let translation = aics_to_prio(a);
    let p = &translation.properties;
    let well_behaved =
        p.closed_under_resolution && p.preserves_actions_under_resolution && p.preserves_actions_under_strengthening;
    let max_conflict_size = a.analysis.conflicts.iter().map(|c| c.count_ones(..)).max().unwrap_or(0);
    let mut notes = translation.warnings();
    let comparison = match translation.prioritized(a) {
        Err(e) => {
            notes.push(format!("no prioritized database: {e}"));
            None
        }
        Ok(pdb) => {
            let mut cmp = RepairComparison::new(optimal_repairs(&pdb, Optimality::Pareto), a, limits)?;
            if well_behaved {
                cmp.expect_collapse();
                cmp.expect_subset("founded", "Pareto");
                if max_conflict_size <= 2 {
                    cmp.expect_equal("Pareto", "founded");
                }
            } else {
                notes.push("conditions fail, no relation between the sets is expected".to_string());
            }
            Some(cmp)
        }
    };
    Ok(AicPriorityCheck {
        translation,
        max_conflict_size,
        well_behaved,
        comparison,
        notes,
    })
}
