//! Conflicts: minimal sets of literals of the database that force a violation.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::{Limits, Result};
use crate::model::{LitSet, Literal};
use crate::repairs::bruteforce_repair_bits;
use crate::universe::{GroundBits, Instance, Universe};

/// An instance together with its universe, ground constraints and conflicts.
///
/// Conflicts are stored as bitsets over literal indices, sorted by size and
/// then by content. A tautological constraint set has the single conflict ∅.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub universe: Universe,
    pub ground: Vec<GroundBits>,
    pub conflicts: Vec<FixedBitSet>,
}

impl Analysis {
    pub fn new(inst: &Instance) -> Result<Analysis> {
        let universe = inst.universe()?;
        let ground = inst.ground(&universe);
        Ok(Analysis::from_ground(universe, ground))
    }

    /// Conflicts computed from already-grounded constraint bodies.
    pub fn from_ground(universe: Universe, ground: Vec<GroundBits>) -> Analysis {
        let db = universe.db_bits();
        let mut conflicts: Vec<FixedBitSet> = blake(prune_outside_lits(&ground, db))
            .into_iter()
            .filter(|t| t.within_lits(db))
            .map(|t| t.support())
            .collect();
        sort_sets(&mut conflicts);
        Analysis {
            universe,
            ground,
            conflicts,
        }
    }

    /// Whether the database with fact bits `b` violates some ground constraint.
    pub fn violated_by(&self, b: &FixedBitSet) -> bool {
        self.ground.iter().any(|g| g.holds_in(b))
    }

    /// Whether some conflict is the empty set, i.e. no database is consistent.
    pub fn unsatisfiable(&self) -> bool {
        self.conflicts.first().is_some_and(|c| c.is_clear())
    }

    /// Literals occurring in some conflict.
    pub fn vertices(&self) -> FixedBitSet {
        let mut v = self.universe.empty_set();
        for c in &self.conflicts {
            v.union_with(c);
        }
        v
    }

    /// Whether the literal set `x` (index bits) contains no conflict.
    pub fn conflict_free(&self, x: &FixedBitSet) -> bool {
        !self.conflicts.iter().any(|c| c.is_subset(x))
    }

    pub fn conflict_sets(&self) -> BTreeSet<LitSet> {
        self.conflicts
            .iter()
            .map(|c| self.universe.bits_to_lits(c))
            .collect()
    }
}

pub(crate) fn sort_sets(sets: &mut [FixedBitSet]) {
    sets.sort_by(|a, b| {
        a.count_ones(..)
            .cmp(&b.count_ones(..))
            .then_with(|| a.ones().cmp(b.ones()))
    });
}

/// The resolvent of two terms that clash on exactly one fact.
fn consensus(a: &GroundBits, b: &GroundBits) -> Option<GroundBits> {
    let mut clash = a.pos.intersection(&b.neg).chain(a.neg.intersection(&b.pos));
    let x = clash.next()?;
    if clash.next().is_some() {
        return None;
    }
    let mut pos = a.pos.clone();
    pos.union_with(&b.pos);
    pos.remove(x);
    let mut neg = a.neg.clone();
    neg.union_with(&b.neg);
    neg.remove(x);
    Some(GroundBits { pos, neg })
}

/// Drops terms holding a literal outside Lits whose complement occurs in no
/// term: resolution never removes it, so no prime implicant within Lits
/// descends from such a term, and it absorbs only terms holding it too.
fn prune_outside_lits(terms: &[GroundBits], db: &FixedBitSet) -> Vec<GroundBits> {
    let mut keep: Vec<&GroundBits> = terms.iter().collect();
    loop {
        let n = db.len();
        let (mut occ_pos, mut occ_neg) = (FixedBitSet::with_capacity(n), FixedBitSet::with_capacity(n));
        for t in &keep {
            occ_pos.union_with(&t.pos);
            occ_neg.union_with(&t.neg);
        }
        // positive literals of absent facts, negative literals of present ones
        let mut bad_pos = db.clone();
        bad_pos.toggle_range(..);
        bad_pos.difference_with(&occ_neg);
        let mut bad_neg = db.clone();
        bad_neg.difference_with(&occ_pos);
        let before = keep.len();
        keep.retain(|t| t.pos.is_disjoint(&bad_pos) && t.neg.is_disjoint(&bad_neg));
        if keep.len() == before {
            return keep.into_iter().cloned().collect();
        }
    }
}

/// Blake canonical form of a disjunction of terms: all its prime implicants.
///
/// Iterated consensus with absorption. Each round only resolves pairs that
/// involve a term added in the previous round.
pub fn blake(terms: impl IntoIterator<Item = GroundBits>) -> Vec<GroundBits> {
    let mut start: Vec<GroundBits> = terms.into_iter().collect();
    start.sort_by_key(|t| t.len());
    start.dedup();
    let mut cur: Vec<GroundBits> = Vec::new();
    for t in start {
        if !cur.iter().any(|c| c.is_subset(&t)) {
            cur.push(t);
        }
    }
    let mut fresh = 0;
    loop {
        let mut found: Vec<GroundBits> = Vec::new();
        for j in fresh..cur.len() {
            for i in 0..j {
                if let Some(r) = consensus(&cur[i], &cur[j]) {
                    if !cur.iter().chain(&found).any(|c| c.is_subset(&r)) {
                        found.retain(|f| !r.is_subset(f));
                        found.push(r);
                    }
                }
            }
        }
        if found.is_empty() {
            return cur;
        }
        cur.retain(|c| !found.iter().any(|f| f.is_subset(c)));
        fresh = cur.len();
        cur.extend(found);
    }
}

/// Conflicts as the prime implicants of the disjunction of ground constraint
/// bodies that lie within Lits.
pub fn conflicts_prime_implicants(inst: &Instance) -> Result<BTreeSet<LitSet>> {
    Ok(Analysis::new(inst)?.conflict_sets())
}

/// All minimal hitting sets of a family of sets.
pub fn minimal_hitting_sets(family: &[FixedBitSet], n: usize) -> Vec<FixedBitSet> {
    fn go(family: &[FixedBitSet], partial: &mut FixedBitSet, out: &mut Vec<FixedBitSet>) {
        if out.iter().any(|h| h.is_subset(partial)) {
            return;
        }
        match family.iter().find(|s| s.is_disjoint(partial)) {
            None => {
                out.retain(|h| !partial.is_subset(h));
                out.push(partial.clone());
            }
            Some(s) => {
                for e in s.ones() {
                    partial.insert(e);
                    go(family, partial, out);
                    partial.remove(e);
                }
            }
        }
    }
    let mut out = Vec::new();
    go(family, &mut FixedBitSet::with_capacity(n), &mut out);
    // A set found early may be a superset of one found later on another branch.
    let all = out.clone();
    out.retain(|h| !all.iter().any(|g| g != h && g.is_subset(h)));
    sort_sets(&mut out);
    out
}

/// Conflicts as the minimal hitting sets of `{R Δ D}` over the Δ-repairs,
/// with the repairs found by exhaustive search.
pub fn conflicts_hitting_sets(inst: &Instance, limits: &Limits) -> Result<BTreeSet<LitSet>> {
    let u = inst.universe()?;
    let ground = inst.ground(&u);
    let reps = bruteforce_repair_bits(&u, &ground, limits)?;
    let diffs: Vec<FixedBitSet> = reps
        .iter()
        .map(|r| {
            let mut d = r.clone();
            d.symmetric_difference_with(u.db_bits());
            d
        })
        .collect();
    // Fact index i in a hitting set stands for literal i of Lits.
    Ok(minimal_hitting_sets(&diffs, u.len())
        .iter()
        .map(|h| u.bits_to_lits(h))
        .collect())
}

/// Membership in the conflict set.
pub fn is_conflict(inst: &Instance, lits: &LitSet) -> Result<bool> {
    let a = Analysis::new(inst)?;
    let x = a.universe.lits_to_bits(lits)?;
    Ok(a.conflicts.contains(&x))
}

/// Hypergraph with the conflict literals as vertices and conflicts as edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictHypergraph {
    pub vertices: Vec<Literal>,
    pub edges: Vec<LitSet>,
}

impl ConflictHypergraph {
    pub fn from_analysis(a: &Analysis) -> ConflictHypergraph {
        ConflictHypergraph {
            vertices: a.vertices().ones().map(|i| a.universe.literal(i)).collect(),
            edges: a
                .conflicts
                .iter()
                .map(|c| a.universe.bits_to_lits(c))
                .collect(),
        }
    }

    /// Graphviz rendering. Binary edges become plain edges; larger ones get a
    /// point node joined to each member.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph conflicts {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for (k, e) in self.edges.iter().enumerate() {
            let ls: Vec<&Literal> = e.iter().collect();
            if ls.len() == 2 {
                let _ = writeln!(s, "  \"{}\" -- \"{}\";", ls[0], ls[1]);
            } else {
                let _ = writeln!(s, "  e{k} [shape=point];");
                for l in ls {
                    let _ = writeln!(s, "  e{k} -- \"{l}\";");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn conflict_hypergraph(inst: &Instance) -> Result<ConflictHypergraph> {
    Ok(ConflictHypergraph::from_analysis(&Analysis::new(inst)?))
}

pub fn max_conflict_size(conflicts: &BTreeSet<LitSet>) -> usize {
    conflicts.iter().map(|c| c.len()).max().unwrap_or(0)
}
