//! The fact and literal universes of a database, and the maps between
//! candidate repairs and literal sets.
//!
//! Facts are numbered in their canonical order. Literal `i` is the literal of
//! fact `i` that holds in the database, so a set of literals and a set of fact
//! indices are the same thing. Both maps (agreement and restriction) become
//! `!(x ^ db)` on bitsets.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::model::{
    adom, ground_all, Constraint, Database, Fact, LitSet, Literal, Schema, Sign, Sym,
};

/// Largest fact universe any operation will materialize.
pub const MAX_FACTS: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct Universe {
    facts: Vec<Fact>,
    db: FixedBitSet,
    domain: BTreeSet<Sym>,
}

impl Universe {
    /// All facts over `schema` with constants from `domain`.
    pub fn new(schema: &Schema, db: &Database, domain: BTreeSet<Sym>) -> Result<Universe> {
        for f in db {
            schema.check_fact(f)?;
        }
        let consts: Vec<Sym> = domain.iter().cloned().collect();
        let mut total = 0usize;
        for (p, arity) in schema.predicates() {
            let n = (consts.len() as u128).pow(arity as u32);
            total = total.saturating_add(n.min(usize::MAX as u128) as usize);
            if total > MAX_FACTS {
                return Err(Error::Budget(format!(
                    "fact universe exceeds {MAX_FACTS} facts (at predicate {p})"
                )));
            }
        }
        let mut facts = Vec::with_capacity(total);
        for (p, arity) in schema.predicates() {
            for_each_tuple(consts.len(), arity, |idx| {
                facts.push(Fact {
                    pred: p.clone(),
                    args: idx.iter().map(|&i| consts[i].clone()).collect(),
                })
            });
        }
        debug_assert!(facts.windows(2).all(|w| w[0] < w[1]));
        let mut bits = FixedBitSet::with_capacity(facts.len());
        for f in db {
            match facts.binary_search(f) {
                Ok(i) => bits.insert(i),
                Err(_) => return Err(Error::OutsideUniverse(f.to_string())),
            }
        }
        Ok(Universe {
            facts,
            db: bits,
            domain,
        })
    }

    /// Universe over the active domain of the database plus the constants of
    /// the constraints.
    pub fn for_instance(schema: &Schema, db: &Database, constraints: &[Constraint]) -> Result<Universe> {
        let mut dom = adom(db);
        for c in constraints {
            dom.extend(c.constants());
        }
        Universe::new(schema, db, dom)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }

    pub fn fact(&self, i: usize) -> &Fact {
        &self.facts[i]
    }

    pub fn domain(&self) -> &BTreeSet<Sym> {
        &self.domain
    }

    pub fn db_bits(&self) -> &FixedBitSet {
        &self.db
    }

    pub fn in_db(&self, i: usize) -> bool {
        self.db.contains(i)
    }

    pub fn fact_index(&self, f: &Fact) -> Option<usize> {
        self.facts.binary_search(f).ok()
    }

    /// The element of Lits for fact `i`.
    pub fn literal(&self, i: usize) -> Literal {
        Literal {
            fact: self.facts[i].clone(),
            sign: if self.in_db(i) { Sign::Pos } else { Sign::Neg },
        }
    }

    /// Index of a literal if it belongs to Lits.
    pub fn literal_index(&self, l: &Literal) -> Option<usize> {
        let i = self.fact_index(&l.fact)?;
        (self.in_db(i) == l.is_positive()).then_some(i)
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Facts of the universe as a bitset; errors on a fact outside it.
    pub fn db_to_bits(&self, db: &Database) -> Result<FixedBitSet> {
        let mut s = self.empty_set();
        for f in db {
            let i = self
                .fact_index(f)
                .ok_or_else(|| Error::OutsideUniverse(f.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn bits_to_db(&self, bits: &FixedBitSet) -> Database {
        bits.ones().map(|i| self.facts[i].clone()).collect()
    }

    /// Literal set as index bits; errors on a literal outside Lits.
    pub fn lits_to_bits(&self, lits: &LitSet) -> Result<FixedBitSet> {
        let mut s = self.empty_set();
        for l in lits {
            let i = self
                .literal_index(l)
                .ok_or_else(|| Error::NotInLits(l.to_string()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn bits_to_lits(&self, bits: &FixedBitSet) -> LitSet {
        bits.ones().map(|i| self.literal(i)).collect()
    }

    /// `!(x ^ db)`: agreement on candidate repairs, restriction on literal sets.
    pub fn flip(&self, x: &FixedBitSet) -> FixedBitSet {
        let mut s = x.clone();
        s.symmetric_difference_with(&self.db);
        s.toggle_range(..);
        s
    }

    /// Literals of Lits on which `repair` and the database agree.
    pub fn agreement(&self, repair: &Database) -> Result<LitSet> {
        Ok(self.bits_to_lits(&self.flip(&self.db_to_bits(repair)?)))
    }

    /// The candidate repair associated with a subset of Lits.
    pub fn restriction(&self, lits: &LitSet) -> Result<Database> {
        Ok(self.bits_to_db(&self.flip(&self.lits_to_bits(lits)?)))
    }

    /// All of Lits.
    pub fn lits(&self) -> LitSet {
        (0..self.len()).map(|i| self.literal(i)).collect()
    }

    pub fn ground_bits(&self, lits: &LitSet) -> GroundBits {
        let mut g = GroundBits {
            pos: self.empty_set(),
            neg: self.empty_set(),
        };
        for l in lits {
            let i = self
                .fact_index(&l.fact)
                .expect("ground literal built over the universe domain");
            match l.sign {
                Sign::Pos => g.pos.insert(i),
                Sign::Neg => g.neg.insert(i),
            }
        }
        g
    }

    pub fn ground_to_lits(&self, g: &GroundBits) -> LitSet {
        let pos = g.pos.ones().map(|i| Literal::pos(self.facts[i].clone()));
        let neg = g.neg.ones().map(|i| Literal::neg(self.facts[i].clone()));
        pos.chain(neg).collect()
    }
}

/// Calls `f` on every tuple in `0..n` of length `arity`, in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, arity: usize, mut f: impl FnMut(&[usize])) {
    if arity > 0 && n == 0 {
        return;
    }
    let mut idx = vec![0usize; arity];
    loop {
        f(&idx);
        let mut k = arity;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// A consistent conjunction of ground literals: facts required present and
/// facts required absent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundBits {
    pub pos: FixedBitSet,
    pub neg: FixedBitSet,
}

impl GroundBits {
    /// Whether the database given by `bits` makes every literal true.
    pub fn holds_in(&self, bits: &FixedBitSet) -> bool {
        self.pos.is_subset(bits) && self.neg.is_disjoint(bits)
    }

    pub fn len(&self) -> usize {
        self.pos.count_ones(..) + self.neg.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_clear() && self.neg.is_clear()
    }

    /// Whether every literal of `self` also occurs in `other`.
    pub fn is_subset(&self, other: &GroundBits) -> bool {
        self.pos.is_subset(&other.pos) && self.neg.is_subset(&other.neg)
    }

    /// Whether all literals lie in Lits, i.e. they all hold in the database.
    pub fn within_lits(&self, db: &FixedBitSet) -> bool {
        self.holds_in(db)
    }

    /// The union of positive and negative parts, as Lits indices.
    pub fn support(&self) -> FixedBitSet {
        let mut s = self.pos.clone();
        s.union_with(&self.neg);
        s
    }
}

/// A database with its schema and constraints.
#[derive(Clone, Debug)]
pub struct Instance {
    pub schema: Schema,
    pub db: Database,
    pub constraints: Vec<Constraint>,
}

impl Instance {
    /// Checks every fact and constraint against the schema.
    pub fn new(schema: Schema, db: Database, constraints: Vec<Constraint>) -> Result<Instance> {
        for f in &db {
            schema.check_fact(f)?;
        }
        for c in &constraints {
            schema.check_constraint(c)?;
        }
        Ok(Instance {
            schema,
            db,
            constraints,
        })
    }

    /// Instance whose schema holds exactly the predicates in use.
    pub fn infer(db: Database, constraints: Vec<Constraint>) -> Result<Instance> {
        let mut schema = Schema::new();
        schema.add_facts(&db)?;
        schema.add_atoms(constraints.iter().flat_map(|c| c.lits.iter().map(|l| &l.atom)))?;
        Instance::new(schema, db, constraints)
    }

    pub fn universe(&self) -> Result<Universe> {
        Universe::for_instance(&self.schema, &self.db, &self.constraints)
    }

    /// Ground constraint bodies over the universe domain, as bitsets.
    pub fn ground(&self, u: &Universe) -> Vec<GroundBits> {
        ground_all(&self.constraints, u.domain())
            .iter()
            .map(|g| u.ground_bits(g))
            .collect()
    }
}

/// `Facts^S_D`: all facts over the schema with constants from the active domain.
pub fn facts_universe(db: &Database, schema: &Schema) -> Result<BTreeSet<Fact>> {
    Ok(Universe::new(schema, db, adom(db))?.facts.into_iter().collect())
}

/// `Lits^S_D`: one literal per fact of the universe, with the sign it has in `db`.
pub fn lits(db: &Database, schema: &Schema) -> Result<LitSet> {
    Ok(Universe::new(schema, db, adom(db))?.lits())
}

/// Whether `db` satisfies every constraint.
pub fn satisfies(db: &Database, constraints: &[Constraint]) -> bool {
    let mut dom = adom(db);
    for c in constraints {
        dom.extend(c.constants());
    }
    !constraints.iter().any(|c| {
        let mut violated = false;
        c.for_each_grounding(&dom, |s| {
            if !violated {
                violated = c
                    .lits
                    .iter()
                    .all(|l| l.ground(s).expect("bound").holds_in(db));
            }
        });
        violated
    })
}
