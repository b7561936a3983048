//! Active integrity constraints: update actions, r-updates and their
//! founded / well-founded / grounded / justified variants, normalization,
//! and the well-behavedness checks on ground AIC sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::conflicts::Analysis;
use crate::error::{Error, Limits, Result};
use crate::model::{
    adom, is_consistent, write_body, Atom, BodyLit, Constraint, Database, Fact, LitSet, Literal, Schema, Sign,
    Term,
};
use crate::repairs::{is_delta_repair_bits, repair_agreements};
use crate::universe::{GroundBits, Instance, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Add,
    Remove,
}

/// A ground update action `+α` or `-α`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub fact: Fact,
    pub op: Op,
}

pub type Update = BTreeSet<Action>;

impl Action {
    pub fn add(fact: Fact) -> Action {
        Action { fact, op: Op::Add }
    }

    pub fn remove(fact: Fact) -> Action {
        Action { fact, op: Op::Remove }
    }

    /// The action that falsifies `l`.
    pub fn fix(l: &Literal) -> Action {
        match l.sign {
            Sign::Pos => Action::remove(l.fact.clone()),
            Sign::Neg => Action::add(l.fact.clone()),
        }
    }

    /// The literal made true by the action.
    pub fn effect(&self) -> Literal {
        match self.op {
            Op::Add => Literal::pos(self.fact.clone()),
            Op::Remove => Literal::neg(self.fact.clone()),
        }
    }

    pub fn opposite(&self) -> Action {
        Action {
            fact: self.fact.clone(),
            op: match self.op {
                Op::Add => Op::Remove,
                Op::Remove => Op::Add,
            },
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.op == Op::Add { "+" } else { "-" };
        write!(f, "{s}{}", self.fact)
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{a1, a2, ...}`.
pub fn format_update<'a>(u: impl IntoIterator<Item = &'a Action>) -> String {
    let parts: Vec<String> = u.into_iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// No fact is both added and removed.
pub fn is_consistent_update(u: &Update) -> bool {
    !u.iter().any(|a| a.op == Op::Add && u.contains(&a.opposite()))
}

/// `D ∘ U`.
pub fn apply(db: &Database, u: &Update) -> Result<Database> {
    if !is_consistent_update(u) {
        return Err(Error::Invalid(format!(
            "update {} adds and removes the same fact",
            format_update(u)
        )));
    }
    let mut out = db.clone();
    for a in u {
        match a.op {
            Op::Add => out.insert(a.fact.clone()),
            Op::Remove => out.remove(&a.fact),
        };
    }
    Ok(out)
}

/// `+P(t..)` or `-P(t..)`, possibly with variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UpdateAtom {
    pub op: Op,
    pub atom: Atom,
}

impl fmt::Display for UpdateAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.op == Op::Add { "+" } else { "-" };
        write!(f, "{s}{}", self.atom)
    }
}

/// `body -> {updates}` where each update fixes a body literal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Aic {
    pub body: Constraint,
    pub updates: Vec<UpdateAtom>,
}

impl Aic {
    pub fn new(lits: Vec<BodyLit>, neqs: Vec<(Term, Term)>, updates: Vec<UpdateAtom>) -> Result<Aic> {
        let body = Constraint::new(lits, neqs, vec![])?;
        if updates.is_empty() {
            return Err(Error::Invalid(format!("`{body}` has no update action")));
        }
        for u in &updates {
            let sign = if u.op == Op::Remove { Sign::Pos } else { Sign::Neg };
            if !body.lits.iter().any(|l| l.sign == sign && l.atom == u.atom) {
                return Err(Error::Invalid(format!(
                    "update {u} does not fix a literal of `{}`",
                    DisplayBody(&body)
                )));
            }
        }
        let mut updates = updates;
        updates.sort();
        updates.dedup();
        Ok(Aic { body, updates })
    }

    /// `τ_r`: the body as a constraint.
    pub fn constraint(&self) -> &Constraint {
        &self.body
    }

    pub fn is_normal(&self) -> bool {
        self.updates.len() == 1
    }

    /// Ground instances over `domain`. Bodies holding a fact and its negation
    /// are kept.
    pub fn ground(&self, domain: &BTreeSet<crate::model::Sym>) -> BTreeSet<GroundAic> {
        let mut out = BTreeSet::new();
        self.body.for_each_grounding(domain, |s| {
            let lits = self
                .body
                .lits
                .iter()
                .map(|l| l.ground(s).expect("all variables bound"))
                .collect();
            let upd = self
                .updates
                .iter()
                .map(|u| Action {
                    fact: u.atom.ground(s).expect("update variables occur in the body"),
                    op: u.op,
                })
                .collect();
            out.insert(GroundAic { lits, upd });
        });
        out
    }
}

struct DisplayBody<'a>(&'a Constraint);

impl fmt::Display for DisplayBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_body(f, &self.0.lits, &self.0.neqs)
    }
}

impl fmt::Display for Aic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {{", DisplayBody(&self.body))?;
        for (i, u) in self.updates.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str("}.")
    }
}

/// A variable-free AIC: its literal set and its update actions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAic {
    pub lits: LitSet,
    pub upd: Update,
}

impl GroundAic {
    pub fn new(lits: LitSet, upd: Update) -> GroundAic {
        GroundAic { lits, upd }
    }

    /// Body literals whose fix is not an update action of the rule.
    pub fn non_updatable(&self) -> impl Iterator<Item = &Literal> {
        self.lits.iter().filter(|l| !self.upd.contains(&Action::fix(l)))
    }

    pub fn violated_by(&self, db: &Database) -> bool {
        self.lits.iter().all(|l| l.holds_in(db))
    }

    pub fn to_aic(&self) -> Aic {
        let lits = self.lits.iter().map(BodyLit::from_literal).collect();
        let updates = self
            .upd
            .iter()
            .map(|a| UpdateAtom {
                op: a.op,
                atom: Atom::from_fact(&a.fact),
            })
            .collect();
        Aic::new(lits, vec![], updates).expect("ground AIC is well formed")
    }
}

impl fmt::Display for GroundAic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_aic())
    }
}

impl fmt::Debug for GroundAic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A database with a schema and a set of AICs.
#[derive(Clone, Debug)]
pub struct AicSet {
    pub schema: Schema,
    pub db: Database,
    pub aics: Vec<Aic>,
}

impl AicSet {
    pub fn new(schema: Schema, db: Database, aics: Vec<Aic>) -> Result<AicSet> {
        for f in &db {
            schema.check_fact(f)?;
        }
        for r in &aics {
            schema.check_constraint(&r.body)?;
        }
        Ok(AicSet { schema, db, aics })
    }

    /// Schema inferred from the predicates in use.
    pub fn infer(db: Database, aics: Vec<Aic>) -> Result<AicSet> {
        let mut schema = Schema::new();
        schema.add_facts(&db)?;
        schema.add_atoms(aics.iter().flat_map(|r| r.body.lits.iter().map(|l| &l.atom)))?;
        AicSet::new(schema, db, aics)
    }

    /// The universal constraints `τ_r`.
    pub fn constraints(&self) -> Vec<Constraint> {
        self.aics.iter().map(|r| r.body.clone()).collect()
    }

    pub fn instance(&self) -> Result<Instance> {
        Instance::new(self.schema.clone(), self.db.clone(), self.constraints())
    }

    pub fn universe(&self) -> Result<Universe> {
        let mut dom = adom(&self.db);
        for r in &self.aics {
            dom.extend(r.body.constants());
        }
        Universe::new(&self.schema, &self.db, dom)
    }

    /// `gr_D(η)`.
    pub fn ground(&self) -> Result<BTreeSet<GroundAic>> {
        let u = self.universe()?;
        Ok(self.aics.iter().flat_map(|r| r.ground(u.domain())).collect())
    }
}

/// Bitset form of a ground AIC.
#[derive(Clone, Debug)]
struct RuleBits {
    body: GroundBits,
    add: FixedBitSet,
    rem: FixedBitSet,
}

impl RuleBits {
    fn has(&self, a: (Op, usize)) -> bool {
        match a.0 {
            Op::Add => self.add.contains(a.1),
            Op::Remove => self.rem.contains(a.1),
        }
    }
}

/// A ground AIC set over a fact universe, with the conflicts of its
/// constraints.
#[derive(Clone, Debug)]
pub struct AicAnalysis {
    pub rules: Vec<GroundAic>,
    pub analysis: Analysis,
    bits: Vec<RuleBits>,
}

/// Flags of an r-update.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Classification {
    pub founded: bool,
    pub well_founded: bool,
    pub grounded: bool,
    pub justified: bool,
}

impl AicAnalysis {
    pub fn new(set: &AicSet) -> Result<AicAnalysis> {
        AicAnalysis::from_ground(set.universe()?, set.ground()?)
    }

    /// Rules must only mention facts of the universe.
    pub fn from_ground(universe: Universe, rules: impl IntoIterator<Item = GroundAic>) -> Result<AicAnalysis> {
        let rules: Vec<GroundAic> = rules.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let n = universe.len();
        let mut bits = Vec::with_capacity(rules.len());
        for r in &rules {
            for l in &r.lits {
                if universe.fact_index(&l.fact).is_none() {
                    return Err(Error::OutsideUniverse(l.fact.to_string()));
                }
            }
            let mut add = FixedBitSet::with_capacity(n);
            let mut rem = FixedBitSet::with_capacity(n);
            for a in &r.upd {
                let i = universe
                    .fact_index(&a.fact)
                    .ok_or_else(|| Error::OutsideUniverse(a.fact.to_string()))?;
                match a.op {
                    Op::Add => add.insert(i),
                    Op::Remove => rem.insert(i),
                }
            }
            bits.push(RuleBits {
                body: universe.ground_bits(&r.lits),
                add,
                rem,
            });
        }
        let bodies: Vec<GroundBits> = bits
            .iter()
            .filter(|b| b.body.pos.is_disjoint(&b.body.neg))
            .map(|b| b.body.clone())
            .collect();
        let analysis = Analysis::from_ground(universe, bodies);
        Ok(AicAnalysis {
            rules,
            analysis,
            bits,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.analysis.universe
    }

    pub fn db(&self) -> Database {
        self.universe().bits_to_db(self.universe().db_bits())
    }

    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(|r| r.upd.len() == 1)
    }

    fn to_actions(&self, u: &Update) -> Result<Vec<(Op, usize)>> {
        u.iter()
            .map(|a| {
                self.universe()
                    .fact_index(&a.fact)
                    .map(|i| (a.op, i))
                    .ok_or_else(|| Error::OutsideUniverse(a.fact.to_string()))
            })
            .collect()
    }

    fn update_of(&self, acts: &[(Op, usize)]) -> Update {
        acts.iter()
            .map(|&(op, i)| Action {
                fact: self.universe().fact(i).clone(),
                op,
            })
            .collect()
    }

    /// `D ∘ {acts[i] : bit i of mask}` as fact bits.
    fn applied(&self, acts: &[(Op, usize)], mask: u64) -> FixedBitSet {
        let mut b = self.universe().db_bits().clone();
        for (k, &(op, i)) in acts.iter().enumerate() {
            if mask >> k & 1 == 1 {
                b.set(i, op == Op::Add);
            }
        }
        b
    }

    fn violated(&self, r: usize, b: &FixedBitSet) -> bool {
        self.bits[r].body.holds_in(b)
    }

    /// Every r-update: the differences between D and its Δ-repairs under
    /// the constraints `τ_r`.
    pub fn r_updates(&self) -> BTreeSet<Update> {
        let u = self.universe();
        repair_agreements(&self.analysis)
            .iter()
            .map(|agree| {
                let changed: Vec<(Op, usize)> = (0..u.len())
                    .filter(|&i| !agree.contains(i))
                    .map(|i| (if u.in_db(i) { Op::Remove } else { Op::Add }, i))
                    .collect();
                self.update_of(&changed)
            })
            .collect()
    }

    /// Whether `u` is a consistent, minimal update restoring consistency.
    pub fn is_r_update(&self, u: &Update) -> Result<bool> {
        let acts = self.to_actions(u)?;
        // minimal updates never hold no-op actions
        if acts.iter().any(|&(op, i)| self.universe().in_db(i) == (op == Op::Add)) {
            return Ok(false);
        }
        let b = self.applied(&acts, u64::MAX);
        Ok(is_delta_repair_bits(&self.analysis, &self.universe().flip(&b)))
    }

    fn checked(&self, u: &Update, limits: &Limits) -> Result<Vec<(Op, usize)>> {
        if !self.is_r_update(u)? {
            return Err(Error::Invalid(format!("{} is not an r-update", format_update(u))));
        }
        limits.check_universe("update", u.len())?;
        self.to_actions(u)
    }

    /// Each action is the fix of some rule violated when only that action is
    /// withheld.
    pub fn is_founded(&self, u: &Update, limits: &Limits) -> Result<bool> {
        let acts = self.checked(u, limits)?;
        let full = (1u64 << acts.len()) - 1;
        Ok((0..acts.len()).all(|k| {
            let b = self.applied(&acts, full & !(1 << k));
            (0..self.bits.len()).any(|r| self.bits[r].has(acts[k]) && self.violated(r, &b))
        }))
    }

    /// Some ordering applies each action to fix a rule violated at that
    /// point. Searched as reachability over subsets.
    pub fn is_well_founded(&self, u: &Update, limits: &Limits) -> Result<bool> {
        let acts = self.checked(u, limits)?;
        let n = acts.len();
        let mut reach = vec![false; 1 << n];
        reach[0] = true;
        for mask in 0..(1u64 << n) {
            if !reach[mask as usize] {
                continue;
            }
            let b = self.applied(&acts, mask);
            for k in (0..n).filter(|k| mask >> k & 1 == 0) {
                let next = (mask | 1 << k) as usize;
                if !reach[next]
                    && (0..self.bits.len()).any(|r| self.bits[r].has(acts[k]) && self.violated(r, &b))
                {
                    reach[next] = true;
                }
            }
        }
        Ok(reach[(1usize << n) - 1])
    }

    /// For every proper subset V, some rule violated by `D ∘ V` has one of
    /// its actions in `U \ V` (rules taken normalized).
    pub fn is_grounded(&self, u: &Update, limits: &Limits) -> Result<bool> {
        let acts = self.checked(u, limits)?;
        let full = (1u64 << acts.len()) - 1;
        Ok((0..full).all(|v| {
            let b = self.applied(&acts, v);
            (0..self.bits.len()).any(|r| {
                self.violated(r, &b)
                    && (0..acts.len()).any(|k| v >> k & 1 == 0 && self.bits[r].has(acts[k]))
            })
        }))
    }

    /// `U` is an r-update of `η[U]`: the ground rules with their actions
    /// outside `U` deleted, and rules left without actions dropped.
    pub fn is_grounded_by_restriction(&self, u: &Update, limits: &Limits) -> Result<bool> {
        self.checked(u, limits)?;
        let restricted = self.rules.iter().filter_map(|r| {
            let upd: Update = r.upd.intersection(u).cloned().collect();
            (!upd.is_empty()).then(|| GroundAic::new(r.lits.clone(), upd))
        });
        let sub = AicAnalysis::from_ground(self.universe().clone(), restricted)?;
        Ok(sub.r_updates().contains(u))
    }

    /// `ne(D, D∘U) ∪ U` is closed under the rules and no `ne ∪ U'` with
    /// `U' ⊊ U` is.
    pub fn is_justified(&self, u: &Update, limits: &Limits) -> Result<bool> {
        let acts = self.checked(u, limits)?;
        let n = self.universe().len();
        let target = self.applied(&acts, u64::MAX);
        // no-effect actions: keep what D and D∘U agree on
        let mut ne_add = FixedBitSet::with_capacity(n);
        let mut ne_rem = FixedBitSet::with_capacity(n);
        for i in 0..n {
            match (self.universe().in_db(i), target.contains(i)) {
                (true, true) => ne_add.insert(i),
                (false, false) => ne_rem.insert(i),
                _ => {}
            }
        }
        let closed = |mask: u64| {
            let (mut add, mut rem) = (ne_add.clone(), ne_rem.clone());
            for (k, &(op, i)) in acts.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    match op {
                        Op::Add => add.insert(i),
                        Op::Remove => rem.insert(i),
                    }
                }
            }
            self.bits.iter().all(|r| {
                // non-updatable literals: positive α with -α ∉ upd, negative with +α ∉ upd
                let mut pos = r.body.pos.clone();
                pos.difference_with(&r.rem);
                let mut neg = r.body.neg.clone();
                neg.difference_with(&r.add);
                let satisfied = pos.is_subset(&add) && neg.is_subset(&rem);
                !satisfied || !r.add.is_disjoint(&add) || !r.rem.is_disjoint(&rem)
            })
        };
        let full = (1u64 << acts.len()) - 1;
        Ok(closed(full) && !(0..full).any(closed))
    }

    pub fn classify(&self, u: &Update, limits: &Limits) -> Result<Classification> {
        Ok(Classification {
            founded: self.is_founded(u, limits)?,
            well_founded: self.is_well_founded(u, limits)?,
            grounded: self.is_grounded(u, limits)?,
            justified: self.is_justified(u, limits)?,
        })
    }

    /// Every r-update with its classification.
    pub fn classify_all(&self, limits: &Limits) -> Result<BTreeMap<Update, Classification>> {
        self.r_updates()
            .into_iter()
            .map(|u| {
                let c = self.classify(&u, limits)?;
                Ok((u, c))
            })
            .collect()
    }
}

/// Oracle: r-updates as the minimal consistent action sets, by enumerating
/// every candidate database over the universe.
pub fn r_updates_bruteforce(a: &AicAnalysis, limits: &Limits) -> Result<BTreeSet<Update>> {
    let u = a.universe();
    let ground: Vec<GroundBits> = a.bits.iter().map(|r| r.body.clone()).collect();
    let reps = crate::repairs::bruteforce_repair_bits(u, &ground, limits)?;
    Ok(reps
        .iter()
        .map(|b| {
            let mut diff = b.clone();
            diff.symmetric_difference_with(u.db_bits());
            diff.ones()
                .map(|i| Action {
                    fact: u.fact(i).clone(),
                    op: if u.in_db(i) { Op::Remove } else { Op::Add },
                })
                .collect()
        })
        .collect())
}

/// `N(η)`: one rule per update action.
pub fn normalize(aics: &[Aic]) -> Vec<Aic> {
    let mut out: BTreeSet<Aic> = BTreeSet::new();
    for r in aics {
        for u in &r.updates {
            out.insert(Aic {
                body: r.body.clone(),
                updates: vec![u.clone()],
            });
        }
    }
    out.into_iter().collect()
}

fn body_key(c: &Constraint) -> (BTreeSet<BodyLit>, BTreeSet<(Term, Term)>) {
    (c.lits.iter().cloned().collect(), c.neqs.iter().cloned().collect())
}

/// `AN(η)`: rules with the same body merged, updates united.
pub fn anti_normalize(aics: &[Aic]) -> Vec<Aic> {
    let mut by_body: BTreeMap<_, (Constraint, BTreeSet<UpdateAtom>)> = BTreeMap::new();
    for r in aics {
        by_body
            .entry(body_key(&r.body))
            .or_insert_with(|| (r.body.clone(), BTreeSet::new()))
            .1
            .extend(r.updates.iter().cloned());
    }
    by_body
        .into_values()
        .map(|(body, ups)| Aic {
            body,
            updates: ups.into_iter().collect(),
        })
        .collect()
}

/// Rules of `AN(η)` whose bodies (as literal and inequality sets) are
/// ⊆-minimal. On ground sets this is exactly body minimality.
pub fn min_bodies(aics: &[Aic]) -> Vec<Aic> {
    let an = anti_normalize(aics);
    let keys: Vec<_> = an.iter().map(|r| body_key(&r.body)).collect();
    let strictly_inside = |a: &(BTreeSet<BodyLit>, BTreeSet<(Term, Term)>), b: &(BTreeSet<BodyLit>, BTreeSet<(Term, Term)>)| {
        a != b && a.0.is_subset(&b.0) && a.1.is_subset(&b.1)
    };
    an.iter()
        .zip(&keys)
        .filter(|(_, k)| !keys.iter().any(|o| strictly_inside(o, k)))
        .map(|(r, _)| r.clone())
        .collect()
}

pub fn normalize_ground(rules: &BTreeSet<GroundAic>) -> BTreeSet<GroundAic> {
    rules
        .iter()
        .flat_map(|r| {
            r.upd
                .iter()
                .map(|a| GroundAic::new(r.lits.clone(), [a.clone()].into()))
        })
        .collect()
}

pub fn anti_normalize_ground(rules: &BTreeSet<GroundAic>) -> BTreeSet<GroundAic> {
    let mut by_body: BTreeMap<&LitSet, Update> = BTreeMap::new();
    for r in rules {
        by_body.entry(&r.lits).or_default().extend(r.upd.iter().cloned());
    }
    by_body
        .into_iter()
        .map(|(l, u)| GroundAic::new(l.clone(), u))
        .collect()
}

pub fn min_bodies_ground(rules: &BTreeSet<GroundAic>) -> BTreeSet<GroundAic> {
    let an = anti_normalize_ground(rules);
    an.iter()
        .filter(|r| !an.iter().any(|o| o.lits.len() < r.lits.len() && o.lits.is_subset(&r.lits)))
        .cloned()
        .collect()
}

/// `min_g(η)`: ground rules with no strictly smaller body among them.
pub fn min_g(rules: &BTreeSet<GroundAic>) -> BTreeSet<GroundAic> {
    rules
        .iter()
        .filter(|r| !rules.iter().any(|o| o.lits.len() < r.lits.len() && o.lits.is_subset(&r.lits)))
        .cloned()
        .collect()
}

/// Well-behavedness of a ground AIC set, each with a witness when it fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyReport {
    pub monotone: bool,
    /// Consistent, and every consistent resolvent is the body of a rule.
    pub closed_under_resolution: bool,
    pub preserves_actions_under_resolution: bool,
    pub preserves_actions_under_strengthening: bool,
    pub consistent: bool,
    /// A fact occurring with both signs.
    pub monotone_witness: Option<Fact>,
    /// Two rules and their resolvent, which has no rule.
    pub resolution_witness: Option<(GroundAic, GroundAic, LitSet)>,
    /// Two rules and the rule on their resolvent missing some of their actions.
    pub resolution_action_witness: Option<(GroundAic, GroundAic, GroundAic)>,
    /// A rule of `AN(η)` and a stronger one with an extra action.
    pub strengthening_witness: Option<(GroundAic, GroundAic)>,
}

impl PropertyReport {
    pub fn describe(&self) -> Vec<String> {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let mut out = vec![
            format!("consistent: {}", yn(self.consistent)),
            format!("monotone: {}", yn(self.monotone)),
            format!("closed under resolution: {}", yn(self.closed_under_resolution)),
            format!(
                "preserves actions under resolution: {}",
                yn(self.preserves_actions_under_resolution)
            ),
            format!(
                "preserves actions under strengthening: {}",
                yn(self.preserves_actions_under_strengthening)
            ),
        ];
        if let Some(f) = &self.monotone_witness {
            out.push(format!("  {f} occurs with both signs"));
        }
        if let Some((a, b, l)) = &self.resolution_witness {
            out.push(format!(
                "  no rule for resolvent {} of `{a}` and `{b}`",
                crate::text::format_lits(l)
            ));
        }
        if let Some((a, b, c)) = &self.resolution_action_witness {
            out.push(format!("  `{c}` lacks actions of `{a}` and `{b}`"));
        }
        if let Some((a, b)) = &self.strengthening_witness {
            out.push(format!("  `{b}` has an action `{a}` does not"));
        }
        out
    }
}

/// Resolvents `lits(r1) ∪ lits(r2) \ {α, ¬α}` with α ∈ lits(r1), ¬α ∈ lits(r2).
fn resolvents<'a>(rules: &'a [GroundAic]) -> impl Iterator<Item = (&'a GroundAic, &'a GroundAic, Fact, LitSet)> + 'a {
    rules.iter().flat_map(move |r1| {
        rules.iter().flat_map(move |r2| {
            r1.lits
                .iter()
                .filter(|l| l.is_positive() && r2.lits.contains(&l.negate()))
                .map(move |l| {
                    let mut res: LitSet = r1.lits.union(&r2.lits).cloned().collect();
                    res.remove(l);
                    res.remove(&l.negate());
                    (r1, r2, l.fact.clone(), res)
                })
        })
    })
}

/// Checks the well-behavedness conditions on the ground set `rules`; the
/// universal ("for every database") versions are not decided.
pub fn check_properties(a: &AicAnalysis) -> PropertyReport {
    let rules = &a.rules;
    let mut rep = PropertyReport {
        consistent: !a.analysis.unsatisfiable(),
        ..PropertyReport::default()
    };
    let mut seen: BTreeMap<&Fact, (bool, bool)> = BTreeMap::new();
    for l in rules.iter().flat_map(|r| &r.lits) {
        let e = seen.entry(&l.fact).or_default();
        if l.is_positive() {
            e.0 = true;
        } else {
            e.1 = true;
        }
    }
    rep.monotone_witness = seen.into_iter().find(|(_, (p, n))| *p && *n).map(|(f, _)| f.clone());
    rep.monotone = rep.monotone_witness.is_none();

    let mut by_lits: BTreeMap<&LitSet, Vec<&GroundAic>> = BTreeMap::new();
    for r in rules {
        by_lits.entry(&r.lits).or_default().push(r);
    }
    for (r1, r2, fact, res) in resolvents(rules) {
        let alpha = [Action::add(fact.clone()), Action::remove(fact)];
        match by_lits.get(&res) {
            None => {
                if is_consistent(&res) && rep.resolution_witness.is_none() {
                    rep.resolution_witness = Some((r1.clone(), r2.clone(), res));
                }
            }
            Some(r3s) => {
                let needed: Update = r1
                    .upd
                    .union(&r2.upd)
                    .filter(|x| !alpha.contains(x))
                    .cloned()
                    .collect();
                if rep.resolution_action_witness.is_none() {
                    if let Some(r3) = r3s.iter().find(|r3| !needed.is_subset(&r3.upd)) {
                        rep.resolution_action_witness = Some((r1.clone(), r2.clone(), (*r3).clone()));
                    }
                }
            }
        }
    }
    rep.closed_under_resolution = rep.consistent && rep.resolution_witness.is_none();
    rep.preserves_actions_under_resolution = rep.resolution_action_witness.is_none();

    let an: Vec<GroundAic> = anti_normalize_ground(&rules.iter().cloned().collect()).into_iter().collect();
    'outer: for r1 in &an {
        for r2 in &an {
            if r1.lits.is_subset(&r2.lits) && !r2.upd.is_subset(&r1.upd) {
                rep.strengthening_witness = Some((r1.clone(), r2.clone()));
                break 'outer;
            }
        }
    }
    rep.preserves_actions_under_strengthening = rep.strengthening_witness.is_none();
    rep
}
