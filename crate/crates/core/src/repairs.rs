//! Δ-repairs, subset repairs and superset repairs.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::conflicts::{sort_sets, Analysis};
use crate::error::{Limits, Result};
use crate::model::Database;
use crate::universe::{GroundBits, Instance, Universe};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepairKind {
    Delta,
    Subset,
    Superset,
}

fn mask(bits: &FixedBitSet) -> u64 {
    bits.ones().fold(0, |m, i| m | 1u64 << i)
}

fn unmask(m: u64, n: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if m >> i & 1 == 1 {
            b.insert(i);
        }
    }
    b
}

struct MaskedGround(Vec<(u64, u64)>);

impl MaskedGround {
    fn new(ground: &[GroundBits]) -> MaskedGround {
        MaskedGround(ground.iter().map(|g| (mask(&g.pos), mask(&g.neg))).collect())
    }

    fn consistent(&self, b: u64) -> bool {
        !self.0.iter().any(|&(p, n)| p & b == p && n & b == 0)
    }
}

/// Keeps the masks that have no proper subset among the input.
fn minimal_masks(mut ms: Vec<u64>) -> Vec<u64> {
    ms.sort_by_key(|m| m.count_ones());
    let mut out: Vec<u64> = Vec::new();
    for m in ms {
        if !out.iter().any(|&o| o & !m == 0) {
            out.push(m);
        }
    }
    out
}

/// Δ-repairs as fact bitsets by exhaustive search over all candidate repairs.
pub(crate) fn bruteforce_repair_bits(
    u: &Universe,
    ground: &[GroundBits],
    limits: &Limits,
) -> Result<Vec<FixedBitSet>> {
    let n = u.len();
    limits.check_universe("Δ-repair enumeration", n)?;
    let g = MaskedGround::new(ground);
    let d = mask(u.db_bits());
    let diffs: Vec<u64> = (0..1u64 << n)
        .filter(|&b| g.consistent(b))
        .map(|b| b ^ d)
        .collect();
    let mut out: Vec<FixedBitSet> = minimal_masks(diffs)
        .into_iter()
        .map(|x| unmask(x ^ d, n))
        .collect();
    sort_sets(&mut out);
    Ok(out)
}

/// Maximal independent sets of the conflict hypergraph, by backtracking over
/// the vertices in index order.
pub(crate) fn maximal_independent_sets(a: &Analysis) -> Vec<FixedBitSet> {
    if a.unsatisfiable() {
        return Vec::new();
    }
    let verts: Vec<usize> = a.vertices().ones().collect();
    let n = a.universe.len();
    let mut rank = vec![usize::MAX; n];
    for (k, &v) in verts.iter().enumerate() {
        rank[v] = k;
    }
    let mut edges_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, c) in a.conflicts.iter().enumerate() {
        for v in c.ones() {
            edges_of[v].push(e);
        }
    }
    struct Search<'a> {
        a: &'a Analysis,
        verts: Vec<usize>,
        rank: Vec<usize>,
        edges_of: Vec<Vec<usize>>,
        chosen: FixedBitSet,
        out: Vec<FixedBitSet>,
    }
    impl Search<'_> {
        // Whether every other member of edge e is chosen.
        fn closes(&self, e: usize, v: usize) -> bool {
            self.a.conflicts[e].ones().all(|w| w == v || self.chosen.contains(w))
        }

        // Whether v can still end up blocked once vertices after position k are decided.
        fn blockable(&self, v: usize, k: usize) -> bool {
            self.edges_of[v].iter().any(|&e| {
                self.a.conflicts[e]
                    .ones()
                    .all(|w| w == v || self.chosen.contains(w) || self.rank[w] > k)
            })
        }

        fn go(&mut self, k: usize) {
            if k == self.verts.len() {
                let maximal = self.verts.iter().all(|&v| {
                    self.chosen.contains(v) || self.edges_of[v].iter().any(|&e| self.closes(e, v))
                });
                if maximal {
                    self.out.push(self.chosen.clone());
                }
                return;
            }
            let v = self.verts[k];
            if !self.edges_of[v].iter().any(|&e| self.closes(e, v)) {
                self.chosen.insert(v);
                self.go(k + 1);
                self.chosen.remove(v);
            }
            if self.blockable(v, k) {
                self.go(k + 1);
            }
        }
    }
    let mut s = Search {
        a,
        verts,
        rank,
        edges_of,
        chosen: FixedBitSet::with_capacity(n),
        out: Vec::new(),
    };
    s.go(0);
    s.out
}

/// Agreement sets of the Δ-repairs: each MIS plus every literal outside the
/// conflicts.
pub(crate) fn repair_agreements(a: &Analysis) -> Vec<FixedBitSet> {
    let mut outside = a.vertices();
    outside.toggle_range(..);
    let mut out: Vec<FixedBitSet> = maximal_independent_sets(a)
        .into_iter()
        .map(|mut m| {
            m.union_with(&outside);
            m
        })
        .collect();
    sort_sets(&mut out);
    out
}

fn to_dbs(u: &Universe, sets: impl IntoIterator<Item = FixedBitSet>) -> BTreeSet<Database> {
    sets.into_iter().map(|b| u.bits_to_db(&b)).collect()
}

/// Δ-repairs from the maximal independent sets of the conflict hypergraph.
pub fn delta_repairs(inst: &Instance) -> Result<BTreeSet<Database>> {
    let a = Analysis::new(inst)?;
    Ok(delta_repairs_of(&a))
}

pub(crate) fn delta_repairs_of(a: &Analysis) -> BTreeSet<Database> {
    repair_agreements(a)
        .iter()
        .map(|l| a.universe.bits_to_db(&a.universe.flip(l)))
        .collect()
}

/// Δ-repairs by enumerating every candidate repair.
pub fn delta_repairs_bruteforce(inst: &Instance, limits: &Limits) -> Result<BTreeSet<Database>> {
    let u = inst.universe()?;
    let g = inst.ground(&u);
    let reps = bruteforce_repair_bits(&u, &g, limits)?;
    Ok(to_dbs(&u, reps))
}

/// Whether the candidate is consistent and its agreement set is maximal
/// among conflict-free subsets of Lits.
pub fn is_delta_repair(inst: &Instance, candidate: &Database) -> Result<bool> {
    let a = Analysis::new(inst)?;
    let b = a.universe.db_to_bits(candidate)?;
    Ok(is_delta_repair_bits(&a, &a.universe.flip(&b)))
}

/// Same test on an agreement set.
pub(crate) fn is_delta_repair_bits(a: &Analysis, agree: &FixedBitSet) -> bool {
    if !a.conflict_free(agree) {
        return false;
    }
    let mut x = agree.clone();
    (0..a.universe.len()).filter(|&i| !agree.contains(i)).all(|i| {
        x.insert(i);
        let blocked = !a.conflict_free(&x);
        x.remove(i);
        blocked
    })
}

/// Minimal sets of changes, chosen among `positions`, whose application
/// yields a consistent database.
fn minimal_changes(
    u: &Universe,
    ground: &[GroundBits],
    positions: &[usize],
    apply: impl Fn(&FixedBitSet) -> FixedBitSet,
) -> BTreeSet<Database> {
    let select = |sel: u64| {
        let mut b = u.empty_set();
        for (k, &p) in positions.iter().enumerate() {
            if sel >> k & 1 == 1 {
                b.insert(p);
            }
        }
        b
    };
    let ok: Vec<u64> = (0..1u64 << positions.len())
        .filter(|&sel| {
            let b = apply(&select(sel));
            !ground.iter().any(|g| g.holds_in(&b))
        })
        .collect();
    to_dbs(u, minimal_masks(ok).into_iter().map(|sel| apply(&select(sel))))
}

/// Maximal consistent subsets of the database.
pub fn subset_repairs(inst: &Instance, limits: &Limits) -> Result<BTreeSet<Database>> {
    let u = inst.universe()?;
    let g = inst.ground(&u);
    let inside: Vec<usize> = u.db_bits().ones().collect();
    limits.check_universe("subset-repair enumeration", inside.len())?;
    Ok(minimal_changes(&u, &g, &inside, |r| {
        let mut b = u.db_bits().clone();
        b.difference_with(r);
        b
    }))
}

/// Minimal consistent supersets of the database within the fact universe.
pub fn superset_repairs(inst: &Instance, limits: &Limits) -> Result<BTreeSet<Database>> {
    let u = inst.universe()?;
    let g = inst.ground(&u);
    let outside: Vec<usize> = (0..u.len()).filter(|&i| !u.in_db(i)).collect();
    limits.check_universe("superset-repair enumeration", outside.len())?;
    Ok(minimal_changes(&u, &g, &outside, |a| {
        let mut b = u.db_bits().clone();
        b.union_with(a);
        b
    }))
}

pub fn repairs(inst: &Instance, kind: RepairKind, limits: &Limits) -> Result<BTreeSet<Database>> {
    match kind {
        RepairKind::Delta => delta_repairs(inst),
        RepairKind::Subset => subset_repairs(inst, limits),
        RepairKind::Superset => superset_repairs(inst, limits),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{IMPLIED_EXCLUSION, KEYS_AND_INCLUSIONS};
    use crate::text::{parse_constraints, parse_database};

    fn db(s: &str) -> Database {
        parse_database(s).unwrap()
    }

    fn dbs(ss: &[&str]) -> BTreeSet<Database> {
        ss.iter().map(|s| db(s)).collect()
    }

    #[test]
    fn implied_exclusion_repairs() {
        let inst = IMPLIED_EXCLUSION.instance();
        let expected = dbs(&["", "A(a). C(a).", "B(a). D(a)."]);
        assert_eq!(delta_repairs(&inst).unwrap(), expected);
        assert_eq!(delta_repairs_bruteforce(&inst, &Limits::default()).unwrap(), expected);
        assert!(is_delta_repair(&inst, &db("A(a). C(a).")).unwrap());
        assert!(!is_delta_repair(&inst, &db("A(a).")).unwrap());
        assert!(!is_delta_repair(&inst, &db("C(a). D(a).")).unwrap());
        assert!(is_delta_repair(&inst, &db("Z(a).")).is_err());
    }

    #[test]
    fn implied_exclusion_subset_and_superset() {
        let inst = IMPLIED_EXCLUSION.instance();
        let l = Limits::default();
        assert_eq!(subset_repairs(&inst, &l).unwrap(), dbs(&[""]));
        assert!(superset_repairs(&inst, &l).unwrap().is_empty());
    }

    #[test]
    fn consistent_database_is_its_own_repair() {
        let inst = Instance::infer(db("A(a). B(a)."), parse_constraints("A(X) -> B(X).").unwrap()).unwrap();
        let l = Limits::default();
        let me: BTreeSet<Database> = [inst.db.clone()].into();
        assert_eq!(delta_repairs(&inst).unwrap(), me);
        assert_eq!(subset_repairs(&inst, &l).unwrap(), me);
        assert_eq!(superset_repairs(&inst, &l).unwrap(), me);
    }

    #[test]
    fn keys_and_inclusions_has_four_repairs() {
        let inst = KEYS_AND_INCLUSIONS.instance();
        let expected = dbs(&[
            "R(d,b). S(a,c). A(a). B(a).",
            "R(d,b).",
            "R(d,c).",
            "R(d,c). S(a,b). A(a). B(a).",
        ]);
        assert_eq!(delta_repairs(&inst).unwrap(), expected);
    }

    #[test]
    fn budget_is_enforced() {
        let inst = KEYS_AND_INCLUSIONS.instance();
        assert!(matches!(
            delta_repairs_bruteforce(&inst, &Limits::default()),
            Err(crate::Error::Budget(_))
        ));
    }

    #[test]
    fn unsatisfiable_constraints_have_no_repairs() {
        let inst = Instance::infer(Database::new(), parse_constraints("-> p.\np -> false.").unwrap()).unwrap();
        assert!(delta_repairs(&inst).unwrap().is_empty());
        assert!(delta_repairs_bruteforce(&inst, &Limits::default()).unwrap().is_empty());
    }
}
