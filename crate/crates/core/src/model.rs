//! Facts, literals, terms, constraints and schemas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Interned name of a predicate, constant or variable. Ordered lexicographically.
pub type Sym = Arc<str>;

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

/// A ground fact `P(c1,...,cn)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub pred: Sym,
    pub args: Vec<Sym>,
}

impl Fact {
    pub fn new(pred: &str, args: &[&str]) -> Fact {
        Fact {
            pred: sym(pred),
            args: args.iter().map(|a| sym(a)).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

/// A signed ground fact. Literals sort by fact first, positive before negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub fact: Fact,
    pub sign: Sign,
}

impl Literal {
    pub fn pos(fact: Fact) -> Literal {
        Literal {
            fact,
            sign: Sign::Pos,
        }
    }

    pub fn neg(fact: Fact) -> Literal {
        Literal {
            fact,
            sign: Sign::Neg,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Pos
    }

    pub fn negate(&self) -> Literal {
        Literal {
            fact: self.fact.clone(),
            sign: self.sign.flip(),
        }
    }

    /// Whether the database makes this literal true.
    pub fn holds_in(&self, db: &Database) -> bool {
        db.contains(&self.fact) == self.is_positive()
    }
}

pub type Database = BTreeSet<Fact>;
pub type LitSet = BTreeSet<Literal>;

/// A literal set is consistent when it never holds both signs of a fact.
pub fn is_consistent(lits: &LitSet) -> bool {
    lits.iter()
        .filter(|l| l.is_positive())
        .all(|l| !lits.contains(&l.negate()))
}

/// Active domain: the constants occurring in the database.
pub fn adom(db: &Database) -> BTreeSet<Sym> {
    db.iter().flat_map(|f| f.args.iter().cloned()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Sym),
    Const(Sym),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(sym(name))
    }

    pub fn cons(name: &str) -> Term {
        Term::Const(sym(name))
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    fn resolve(&self, subst: &BTreeMap<Sym, Sym>) -> Option<Sym> {
        match self {
            Term::Const(c) => Some(c.clone()),
            Term::Var(v) => subst.get(v).cloned(),
        }
    }
}

/// A possibly non-ground atom.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub pred: Sym,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(pred: &str, args: Vec<Term>) -> Atom {
        Atom {
            pred: sym(pred),
            args,
        }
    }

    pub fn from_fact(f: &Fact) -> Atom {
        Atom {
            pred: f.pred.clone(),
            args: f.args.iter().map(|c| Term::Const(c.clone())).collect(),
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = &Sym> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v),
            Term::Const(_) => None,
        })
    }

    pub fn constants(&self) -> impl Iterator<Item = &Sym> {
        self.args.iter().filter_map(|t| match t {
            Term::Const(c) => Some(c),
            Term::Var(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(|t| !t.is_var())
    }

    /// Instantiates the atom; `None` if some variable is unbound.
    pub fn ground(&self, subst: &BTreeMap<Sym, Sym>) -> Option<Fact> {
        let args = self
            .args
            .iter()
            .map(|t| t.resolve(subst))
            .collect::<Option<Vec<_>>>()?;
        Some(Fact {
            pred: self.pred.clone(),
            args,
        })
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BodyLit {
    pub sign: Sign,
    pub atom: Atom,
}

impl BodyLit {
    pub fn pos(atom: Atom) -> BodyLit {
        BodyLit {
            sign: Sign::Pos,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> BodyLit {
        BodyLit {
            sign: Sign::Neg,
            atom,
        }
    }

    pub fn from_literal(l: &Literal) -> BodyLit {
        BodyLit {
            sign: l.sign,
            atom: Atom::from_fact(&l.fact),
        }
    }

    pub fn ground(&self, subst: &BTreeMap<Sym, Sym>) -> Option<Literal> {
        Some(Literal {
            fact: self.atom.ground(subst)?,
            sign: self.sign,
        })
    }
}

/// A universal constraint in body-only form `l1 ∧ ... ∧ ln ∧ t1≠t2 ∧ ... → ⊥`.
///
/// Head atoms are moved into the body as negative literals on construction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub lits: Vec<BodyLit>,
    pub neqs: Vec<(Term, Term)>,
}

impl Constraint {
    /// Builds `body ∧ neqs → head1 ∨ ... ∨ headk` (empty head means ⊥) and checks safety.
    pub fn new(body: Vec<BodyLit>, neqs: Vec<(Term, Term)>, head: Vec<Atom>) -> Result<Constraint> {
        let mut lits = body;
        lits.extend(head.into_iter().map(BodyLit::neg));
        let c = Constraint { lits, neqs };
        c.check_safety()?;
        Ok(c)
    }

    /// Denial constraint over positive atoms.
    pub fn denial(atoms: Vec<Atom>, neqs: Vec<(Term, Term)>) -> Result<Constraint> {
        Constraint::new(atoms.into_iter().map(BodyLit::pos).collect(), neqs, vec![])
    }

    /// Ground denial-style constraint whose body is exactly the given literal set.
    pub fn from_literals(lits: &LitSet) -> Constraint {
        Constraint {
            lits: lits.iter().map(BodyLit::from_literal).collect(),
            neqs: vec![],
        }
    }

    fn check_safety(&self) -> Result<()> {
        if self.lits.is_empty() {
            return Err(Error::Unsafe(format!(
                "`{self}` has no relational literal in its body"
            )));
        }
        let bound: BTreeSet<&Sym> = self
            .lits
            .iter()
            .filter(|l| l.sign == Sign::Pos)
            .flat_map(|l| l.atom.vars())
            .collect();
        for l in self.lits.iter().filter(|l| l.sign == Sign::Neg) {
            if let Some(v) = l.atom.vars().find(|v| !bound.contains(v)) {
                return Err(Error::Unsafe(format!(
                    "variable {v} of `{}` does not occur in a positive body atom of `{self}`",
                    l.atom
                )));
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> BTreeSet<Sym> {
        let mut vs: BTreeSet<Sym> = self
            .lits
            .iter()
            .flat_map(|l| l.atom.vars().cloned())
            .collect();
        for (a, b) in &self.neqs {
            for t in [a, b] {
                if let Term::Var(v) = t {
                    vs.insert(v.clone());
                }
            }
        }
        vs
    }

    pub fn constants(&self) -> BTreeSet<Sym> {
        let mut cs: BTreeSet<Sym> = self
            .lits
            .iter()
            .flat_map(|l| l.atom.constants().cloned())
            .collect();
        for (a, b) in &self.neqs {
            for t in [a, b] {
                if let Term::Const(c) = t {
                    cs.insert(c.clone());
                }
            }
        }
        cs
    }

    /// No negative literal and no head: a denial constraint.
    pub fn is_denial(&self) -> bool {
        self.lits.iter().all(|l| l.sign == Sign::Pos)
    }

    /// Calls `f` for every substitution of the variables by `domain` constants
    /// that makes all inequalities true.
    pub fn for_each_grounding<F: FnMut(&BTreeMap<Sym, Sym>)>(&self, domain: &BTreeSet<Sym>, mut f: F) {
        let vars: Vec<Sym> = self.vars().into_iter().collect();
        let dom: Vec<Sym> = domain.iter().cloned().collect();
        if !vars.is_empty() && dom.is_empty() {
            return;
        }
        let mut idx = vec![0usize; vars.len()];
        let mut subst = BTreeMap::new();
        loop {
            subst.clear();
            for (v, &i) in vars.iter().zip(&idx) {
                subst.insert(v.clone(), dom[i].clone());
            }
            let ok = self
                .neqs
                .iter()
                .all(|(a, b)| a.resolve(&subst) != b.resolve(&subst));
            if ok {
                f(&subst);
            }
            // odometer
            let mut k = vars.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < dom.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Ground instances over `domain`: inequalities resolved, instances with
    /// a false inequality dropped, duplicates merged. Instances whose literal
    /// set holds a fact and its negation can never be violated and are dropped.
    pub fn ground(&self, domain: &BTreeSet<Sym>) -> BTreeSet<LitSet> {
        let mut out = BTreeSet::new();
        self.for_each_grounding(domain, |s| {
            let lits: LitSet = self
                .lits
                .iter()
                .map(|l| l.ground(s).expect("all variables bound"))
                .collect();
            if is_consistent(&lits) {
                out.insert(lits);
            }
        });
        out
    }
}

/// Ground instances of a constraint set over `domain`.
pub fn ground_all(constraints: &[Constraint], domain: &BTreeSet<Sym>) -> BTreeSet<LitSet> {
    constraints.iter().flat_map(|c| c.ground(domain)).collect()
}

/// Predicate names with arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Schema {
    preds: BTreeMap<Sym, usize>,
}

impl Schema {
    pub fn new() -> Schema {
        Schema::default()
    }

    pub fn from_pairs(pairs: &[(&str, usize)]) -> Result<Schema> {
        let mut s = Schema::new();
        for (p, a) in pairs {
            s.declare(p, *a)?;
        }
        Ok(s)
    }

    pub fn declare(&mut self, pred: &str, arity: usize) -> Result<()> {
        match self.preds.get(pred) {
            Some(&a) if a != arity => Err(Error::Arity {
                pred: pred.to_string(),
                expected: a,
                found: arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.preds.insert(sym(pred), arity);
                Ok(())
            }
        }
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        self.preds.get(pred).copied()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&Sym, usize)> {
        self.preds.iter().map(|(p, a)| (p, *a))
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    pub fn merge(&mut self, other: &Schema) -> Result<()> {
        for (p, a) in other.predicates() {
            self.declare(p, a)?;
        }
        Ok(())
    }

    pub fn check_atom(&self, pred: &str, nargs: usize) -> Result<()> {
        match self.arity(pred) {
            None => Err(Error::UnknownPredicate(pred.to_string())),
            Some(a) if a != nargs => Err(Error::Arity {
                pred: pred.to_string(),
                expected: a,
                found: nargs,
            }),
            Some(_) => Ok(()),
        }
    }

    pub fn check_fact(&self, f: &Fact) -> Result<()> {
        self.check_atom(&f.pred, f.arity())
    }

    pub fn check_constraint(&self, c: &Constraint) -> Result<()> {
        c.lits
            .iter()
            .try_for_each(|l| self.check_atom(&l.atom.pred, l.atom.args.len()))
    }

    /// Declares every predicate used by the facts.
    pub fn add_facts<'a>(&mut self, facts: impl IntoIterator<Item = &'a Fact>) -> Result<()> {
        facts
            .into_iter()
            .try_for_each(|f| self.declare(&f.pred, f.arity()))
    }

    pub fn add_atoms<'a>(&mut self, atoms: impl IntoIterator<Item = &'a Atom>) -> Result<()> {
        atoms
            .into_iter()
            .try_for_each(|a| self.declare(&a.pred, a.args.len()))
    }
}

// Display. The syntax matches the text formats of the `text` module.

pub(crate) fn is_plain_constant(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "not" | "false" | "score")
}

pub(crate) fn write_constant(f: &mut fmt::Formatter<'_>, c: &str) -> fmt::Result {
    if is_plain_constant(c) {
        f.write_str(c)
    } else {
        write!(f, "\"{}\"", c.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn write_args<T>(
    f: &mut fmt::Formatter<'_>,
    args: &[T],
    mut each: impl FnMut(&mut fmt::Formatter<'_>, &T) -> fmt::Result,
) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        each(f, a)?;
    }
    f.write_str(")")
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args, |f, a| write_constant(f, a))
    }
}

impl fmt::Debug for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_positive() {
            f.write_str("!")?;
        }
        write!(f, "{}", self.fact)
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write_constant(f, c),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args, |f, t| write!(f, "{t}"))
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for BodyLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Neg {
            f.write_str("not ")?;
        }
        write!(f, "{}", self.atom)
    }
}

impl fmt::Debug for BodyLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `l1, ..., ln, t1 != t2, ...` (the shared body syntax of constraints and AICs).
pub(crate) fn write_body(
    f: &mut fmt::Formatter<'_>,
    lits: &[BodyLit],
    neqs: &[(Term, Term)],
) -> fmt::Result {
    let mut first = true;
    for l in lits {
        if !first {
            f.write_str(", ")?;
        }
        first = false;
        write!(f, "{l}")?;
    }
    for (a, b) in neqs {
        if !first {
            f.write_str(", ")?;
        }
        first = false;
        write!(f, "{a} != {b}")?;
    }
    Ok(())
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_body(f, &self.lits, &self.neqs)?;
        f.write_str(" -> false.")
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
