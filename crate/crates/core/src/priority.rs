//! Priority relations over conflict literals and the optimal repairs they
//! select.
//!
//! Internally a priority is a successor table over literal indices:
//! `below[l]` holds every literal that `l` is preferred to.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;
use petgraph::algo::toposort;
use petgraph::graphmap::DiGraphMap;
use petgraph::unionfind::UnionFind;

use crate::conflicts::Analysis;
use crate::error::{Error, Limits, Result};
use crate::model::{Database, LitSet, Literal};
use crate::repairs::{is_delta_repair_bits, repair_agreements};
use crate::text::format_lits;
use crate::universe::Instance;

/// A set of preference edges `λ ≻ μ`, plus optional scores.
///
/// Scores, when present, induce `λ ≻ μ` for every co-conflicting pair with
/// `score(λ) > score(μ)`; unscored literals count as 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PriorityRelation {
    pub edges: BTreeSet<(Literal, Literal)>,
    pub scores: BTreeMap<Literal, u64>,
}

impl PriorityRelation {
    pub fn new() -> PriorityRelation {
        PriorityRelation::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (Literal, Literal)>) -> PriorityRelation {
        PriorityRelation {
            edges: edges.into_iter().collect(),
            scores: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty() && self.scores.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Optimality {
    /// Plain Δ-repairs, priority ignored.
    S,
    Pareto,
    Global,
    Completion,
}

/// Outcome of validating a priority against the conflicts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PriorityReport {
    /// Literals mentioned by the priority that are not in Lits.
    pub unknown: Vec<Literal>,
    /// Edges whose endpoints share no conflict.
    pub not_co_conflicting: Vec<(Literal, Literal)>,
    /// A cycle `l1 ≻ l2 ≻ ... ≻ l1`, listed without repeating `l1`.
    pub cycle: Option<Vec<Literal>>,
}

impl PriorityReport {
    pub fn is_valid(&self) -> bool {
        self.unknown.is_empty() && self.not_co_conflicting.is_empty() && self.cycle.is_none()
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for l in &self.unknown {
            parts.push(format!("literal {l} is not in the literal universe"));
        }
        for (a, b) in &self.not_co_conflicting {
            parts.push(format!("{a} > {b} relates literals that share no conflict"));
        }
        if let Some(c) = &self.cycle {
            parts.push(format!("cycle {}", format_cycle(c)));
        }
        parts.join("; ")
    }
}

/// `l1 > l2 > ... > l1`.
pub fn format_cycle(c: &[Literal]) -> String {
    let mut s: Vec<String> = c.iter().map(|l| l.to_string()).collect();
    if let Some(f) = c.first() {
        s.push(f.to_string());
    }
    s.join(" > ")
}

/// Any cycle of the graph given by successor sets, as a node sequence.
pub(crate) fn find_cycle(succ: &[FixedBitSet]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    fn dfs(v: usize, succ: &[FixedBitSet], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[v] = 1;
        stack.push(v);
        for w in succ[v].ones() {
            match state[w] {
                1 => {
                    let at = stack.iter().position(|&x| x == w).unwrap();
                    return Some(stack[at..].to_vec());
                }
                0 => {
                    if let Some(c) = dfs(w, succ, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state[v] = 2;
        None
    }
    let mut state = vec![0u8; succ.len()];
    let mut stack = Vec::new();
    (0..succ.len()).find_map(|v| if state[v] == 0 { dfs(v, succ, &mut state, &mut stack) } else { None })
}

/// For each literal, the other literals it shares a conflict with.
pub(crate) fn co_conflicts(a: &Analysis) -> Vec<FixedBitSet> {
    let n = a.universe.len();
    let mut co = vec![FixedBitSet::with_capacity(n); n];
    for c in &a.conflicts {
        for v in c.ones() {
            co[v].union_with(c);
            co[v].remove(v);
        }
    }
    co
}

/// Resolves literal edges (explicit and score-induced) to index edges.
fn resolve(priority: &PriorityRelation, a: &Analysis) -> (Vec<(usize, usize)>, PriorityReport) {
    let u = &a.universe;
    let co = co_conflicts(a);
    let mut report = PriorityReport::default();
    let mut edges = BTreeSet::new();
    let index = |l: &Literal, report: &mut PriorityReport| {
        let i = u.literal_index(l);
        if i.is_none() && !report.unknown.contains(l) {
            report.unknown.push(l.clone());
        }
        i
    };
    for (x, y) in &priority.edges {
        let (i, j) = (index(x, &mut report), index(y, &mut report));
        if let (Some(i), Some(j)) = (i, j) {
            if co[i].contains(j) {
                edges.insert((i, j));
            } else {
                report.not_co_conflicting.push((x.clone(), y.clone()));
            }
        }
    }
    if !priority.scores.is_empty() {
        let mut score = vec![0u64; u.len()];
        for (l, &s) in &priority.scores {
            if let Some(i) = index(l, &mut report) {
                score[i] = s;
            }
        }
        for (i, row) in co.iter().enumerate() {
            for j in row.ones() {
                if score[i] > score[j] {
                    edges.insert((i, j));
                }
            }
        }
    }
    let mut succ = vec![FixedBitSet::with_capacity(u.len()); u.len()];
    for &(i, j) in &edges {
        succ[i].insert(j);
    }
    report.cycle = find_cycle(&succ).map(|c| c.into_iter().map(|i| u.literal(i)).collect());
    (edges.into_iter().collect(), report)
}

/// Checks that the priority only relates co-conflicting literals of Lits and
/// is acyclic.
pub fn validate_priority(priority: &PriorityRelation, a: &Analysis) -> PriorityReport {
    resolve(priority, a).1
}

/// A database, its constraints and a valid priority relation.
#[derive(Clone, Debug)]
pub struct PrioritizedDb {
    pub analysis: Analysis,
    pub priority: PriorityRelation,
    below: Vec<FixedBitSet>,
    reps: Vec<FixedBitSet>,
}

impl PrioritizedDb {
    pub fn new(inst: &Instance, priority: PriorityRelation) -> Result<PrioritizedDb> {
        PrioritizedDb::from_analysis(Analysis::new(inst)?, priority)
    }

    pub fn from_analysis(analysis: Analysis, priority: PriorityRelation) -> Result<PrioritizedDb> {
        let (edges, report) = resolve(&priority, &analysis);
        if !report.is_valid() {
            return Err(Error::InvalidPriority(report.describe()));
        }
        let n = analysis.universe.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (i, j) in edges {
            below[i].insert(j);
        }
        let reps = repair_agreements(&analysis);
        Ok(PrioritizedDb {
            analysis,
            priority,
            below,
            reps,
        })
    }

    /// Same database under another successor table (used for completions).
    fn with_below(&self, below: Vec<FixedBitSet>) -> PrioritizedDb {
        PrioritizedDb {
            analysis: self.analysis.clone(),
            priority: PriorityRelation::from_edges(edge_literals(&self.analysis, &below)),
            below,
            reps: self.reps.clone(),
        }
    }

    /// Resolved edges as index pairs.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        self.below
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.ones().map(move |j| (i, j)))
            .collect()
    }

    /// All edges, including score-induced ones.
    pub fn edges(&self) -> BTreeSet<(Literal, Literal)> {
        edge_literals(&self.analysis, &self.below)
    }

    pub fn prefers(&self, l: usize, m: usize) -> bool {
        self.below[l].contains(m)
    }

    /// Agreement sets of the Δ-repairs.
    pub fn repair_agreements(&self) -> &[FixedBitSet] {
        &self.reps
    }

    pub fn to_db(&self, agree: &FixedBitSet) -> Database {
        let u = &self.analysis.universe;
        u.bits_to_db(&u.flip(agree))
    }

    fn agreement_of(&self, b: &Database) -> Result<FixedBitSet> {
        let u = &self.analysis.universe;
        Ok(u.flip(&u.db_to_bits(b)?))
    }

    fn pareto_bits(&self, lb: &FixedBitSet, lr: &FixedBitSet) -> bool {
        let lost = difference(lr, lb);
        difference(lb, lr).ones().any(|m| lost.is_subset(&self.below[m]))
    }

    fn global_bits(&self, lb: &FixedBitSet, lr: &FixedBitSet) -> bool {
        if lb == lr {
            return false;
        }
        let mut covered = self.analysis.universe.empty_set();
        for m in difference(lb, lr).ones() {
            covered.union_with(&self.below[m]);
        }
        difference(lr, lb).is_subset(&covered)
    }

    /// No Pareto improvement exists. `lr` must be a Δ-repair agreement set.
    ///
    /// An improvement with witness μ exists iff keeping μ and dropping what
    /// μ dominates leaves a conflict-free set.
    fn pareto_optimal_bits(&self, lr: &FixedBitSet) -> bool {
        let a = &self.analysis;
        (0..a.universe.len()).filter(|&m| !lr.contains(m)).all(|m| {
            let mut x = difference(lr, &self.below[m]);
            x.insert(m);
            !a.conflict_free(&x)
        })
    }

    /// No global improvement exists. `lr` must be a Δ-repair agreement set.
    ///
    /// Any improvement extends to a Δ-repair that is still one, so only
    /// Δ-repairs are tried.
    fn global_optimal_bits(&self, lr: &FixedBitSet) -> bool {
        !self.reps.iter().any(|lb| self.global_bits(lb, lr))
    }

    /// A linear extension of the priority under which the greedy procedure
    /// rebuilds `lr`, if one exists. `lr` must be a Δ-repair agreement set.
    ///
    /// Literals are placed as soon as all literals preferred to them are
    /// placed: those of `lr` at once, the others once a conflict with them
    /// and otherwise only placed literals of `lr` exists. Placing eagerly
    /// never blocks a later choice, so getting stuck means no order exists.
    fn certificate_bits(&self, lr: &FixedBitSet) -> Option<Vec<usize>> {
        let a = &self.analysis;
        let verts: Vec<usize> = a.vertices().ones().collect();
        let n = a.universe.len();
        let mut above = vec![0usize; n];
        for &v in &verts {
            for w in self.below[v].ones() {
                above[w] += 1;
            }
        }
        let mut placed = a.universe.empty_set();
        let mut kept = a.universe.empty_set();
        let mut order = Vec::with_capacity(verts.len());
        let mut remaining: Vec<usize> = verts.clone();
        while !remaining.is_empty() {
            let pick = remaining.iter().position(|&v| {
                above[v] == 0
                    && (lr.contains(v)
                        || a.conflicts.iter().any(|c| {
                            c.contains(v) && c.ones().all(|w| w == v || kept.contains(w))
                        }))
            })?;
            let v = remaining.remove(pick);
            placed.insert(v);
            if lr.contains(v) {
                kept.insert(v);
            }
            for w in self.below[v].ones() {
                above[w] -= 1;
            }
            order.push(v);
        }
        Some(order)
    }

    fn optimal_bits(&self, lr: &FixedBitSet, kind: Optimality) -> bool {
        match kind {
            Optimality::S => true,
            Optimality::Pareto => self.pareto_optimal_bits(lr),
            Optimality::Global => self.global_optimal_bits(lr),
            Optimality::Completion => self.certificate_bits(lr).is_some(),
        }
    }

    /// Agreement sets of the optimal repairs of the given kind.
    pub fn optimal_agreements(&self, kind: Optimality) -> Vec<FixedBitSet> {
        self.reps
            .iter()
            .filter(|lr| self.optimal_bits(lr, kind))
            .cloned()
            .collect()
    }

    /// Whether every co-conflicting pair is ordered.
    pub fn is_total(&self) -> bool {
        let co = co_conflicts(&self.analysis);
        co.iter().enumerate().all(|(i, row)| {
            row.ones().all(|j| self.below[i].contains(j) || self.below[j].contains(i))
        })
    }
}

fn edge_literals(a: &Analysis, below: &[FixedBitSet]) -> BTreeSet<(Literal, Literal)> {
    let u = &a.universe;
    below
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.ones().map(move |j| (u.literal(i), u.literal(j))))
        .collect()
}

fn difference(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut d = a.clone();
    d.difference_with(b);
    d
}

fn consistent(pdb: &PrioritizedDb, b: &Database) -> Result<bool> {
    let u = &pdb.analysis.universe;
    Ok(!pdb.analysis.violated_by(&u.db_to_bits(b)?))
}

/// `b` is consistent and some literal it gains over `r` is preferred to
/// every literal it loses.
pub fn is_pareto_improvement(b: &Database, r: &Database, pdb: &PrioritizedDb) -> Result<bool> {
    let (lb, lr) = (pdb.agreement_of(b)?, pdb.agreement_of(r)?);
    Ok(consistent(pdb, b)? && pdb.pareto_bits(&lb, &lr))
}

/// `b` is consistent, differs from `r`, and every literal it loses is
/// dominated by some literal it gains.
pub fn is_global_improvement(b: &Database, r: &Database, pdb: &PrioritizedDb) -> Result<bool> {
    let (lb, lr) = (pdb.agreement_of(b)?, pdb.agreement_of(r)?);
    Ok(consistent(pdb, b)? && pdb.global_bits(&lb, &lr))
}

pub fn optimal_repairs(pdb: &PrioritizedDb, kind: Optimality) -> BTreeSet<Database> {
    pdb.optimal_agreements(kind)
        .iter()
        .map(|l| pdb.to_db(l))
        .collect()
}

/// Whether `r` is a Δ-repair that is optimal of the given kind.
pub fn is_optimal_repair(r: &Database, pdb: &PrioritizedDb, kind: Optimality) -> Result<bool> {
    let lr = pdb.agreement_of(r)?;
    Ok(is_delta_repair_bits(&pdb.analysis, &lr) && pdb.optimal_bits(&lr, kind))
}

/// An order of the conflict literals, compatible with the priority, under
/// which the greedy procedure yields `r`; `None` if `r` is not
/// completion-optimal.
pub fn completion_certificate(r: &Database, pdb: &PrioritizedDb) -> Result<Option<Vec<Literal>>> {
    let lr = pdb.agreement_of(r)?;
    if !is_delta_repair_bits(&pdb.analysis, &lr) {
        return Ok(None);
    }
    let u = &pdb.analysis.universe;
    Ok(pdb
        .certificate_bits(&lr)
        .map(|o| o.into_iter().map(|i| u.literal(i)).collect()))
}

/// Greedy construction: repeatedly take the first (by `tiebreak`, then by
/// canonical order) literal that no remaining literal is preferred to, and
/// keep it unless it completes a conflict.
pub fn greedy_completion_optimal(pdb: &PrioritizedDb, tiebreak: &[Literal]) -> Database {
    let a = &pdb.analysis;
    let n = a.universe.len();
    let mut rank: Vec<usize> = (0..n).map(|i| n + i).collect();
    for (k, l) in tiebreak.iter().enumerate() {
        if let Some(i) = a.universe.literal_index(l) {
            rank[i] = rank[i].min(k);
        }
    }
    let mut above = vec![0usize; n];
    for b in &pdb.below {
        for w in b.ones() {
            above[w] += 1;
        }
    }
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut kept = a.universe.empty_set();
    while !remaining.is_empty() {
        let (pos, &v) = remaining
            .iter()
            .enumerate()
            .filter(|(_, &v)| above[v] == 0)
            .min_by_key(|(_, &v)| rank[v])
            .expect("priority is acyclic");
        remaining.remove(pos);
        kept.insert(v);
        if !a.conflict_free(&kept) {
            kept.remove(v);
        }
        for w in pdb.below[v].ones() {
            above[w] -= 1;
        }
    }
    pdb.to_db(&kept)
}

/// Calls `f` on each completion of the priority (as a prioritized database)
/// and returns how many there are.
pub fn for_each_completion(
    pdb: &PrioritizedDb,
    limits: &Limits,
    mut f: impl FnMut(&PrioritizedDb),
) -> Result<u64> {
    let co = co_conflicts(&pdb.analysis);
    let mut open = Vec::new();
    for (i, row) in co.iter().enumerate() {
        for j in row.ones().filter(|&j| j > i) {
            if !pdb.prefers(i, j) && !pdb.prefers(j, i) {
                open.push((i, j));
            }
        }
    }
    fn reaches(below: &[FixedBitSet], from: usize, to: usize) -> bool {
        let mut seen = FixedBitSet::with_capacity(below.len());
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if !seen.put(v) {
                stack.extend(below[v].ones());
            }
        }
        false
    }
    struct Walk<'a, F> {
        pdb: &'a PrioritizedDb,
        open: Vec<(usize, usize)>,
        below: Vec<FixedBitSet>,
        count: u64,
        max: u64,
        f: F,
    }
    impl<F: FnMut(&PrioritizedDb)> Walk<'_, F> {
        fn go(&mut self, k: usize) -> Result<()> {
            if k == self.open.len() {
                self.count += 1;
                if self.count > self.max {
                    return Err(Error::Budget(format!(
                        "more than {} completions",
                        self.max
                    )));
                }
                let c = self.pdb.with_below(self.below.clone());
                (self.f)(&c);
                return Ok(());
            }
            let (i, j) = self.open[k];
            for (x, y) in [(i, j), (j, i)] {
                if !reaches(&self.below, y, x) {
                    self.below[x].insert(y);
                    self.go(k + 1)?;
                    self.below[x].remove(y);
                }
            }
            Ok(())
        }
    }
    let mut w = Walk {
        pdb,
        open,
        below: pdb.below.clone(),
        count: 0,
        max: limits.max_completions,
        f: &mut f,
    };
    w.go(0)?;
    Ok(w.count)
}

/// Every completion, as its edge set.
pub fn completions(pdb: &PrioritizedDb, limits: &Limits) -> Result<Vec<BTreeSet<(Literal, Literal)>>> {
    let mut out = Vec::new();
    for_each_completion(pdb, limits, |c| out.push(c.edges()))?;
    Ok(out)
}

/// Completion-optimal repairs by definition: the union over all completions
/// of the globally-optimal repairs.
pub fn completion_optimal_by_enumeration(pdb: &PrioritizedDb, limits: &Limits) -> Result<BTreeSet<Database>> {
    let mut out = BTreeSet::new();
    for_each_completion(pdb, limits, |c| {
        out.extend(optimal_repairs(c, Optimality::Global));
    })?;
    Ok(out)
}

/// Scores witnessing that a priority is score-structured.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreStructure {
    pub score: BTreeMap<Literal, u64>,
    /// Conflict literals grouped by score, highest score first.
    pub levels: Vec<LitSet>,
}

/// Finds scores such that, on co-conflicting pairs, `λ ≻ μ` iff
/// `score(λ) > score(μ)`.
///
/// Unordered co-conflicting pairs must share a score, so they are merged into
/// classes. A solution exists iff no edge lies inside a class and the edges
/// between classes are acyclic; longest-path layering then gives the scores.
pub fn detect_score_structure(pdb: &PrioritizedDb) -> Option<ScoreStructure> {
    let a = &pdb.analysis;
    let n = a.universe.len();
    let co = co_conflicts(a);
    let mut uf = UnionFind::<usize>::new(n);
    for (i, row) in co.iter().enumerate() {
        for j in row.ones() {
            if !pdb.prefers(i, j) && !pdb.prefers(j, i) {
                uf.union(i, j);
            }
        }
    }
    let verts: Vec<usize> = a.vertices().ones().collect();
    let mut g = DiGraphMap::<usize, ()>::new();
    for &v in &verts {
        g.add_node(uf.find(v));
    }
    for (i, j) in pdb.edge_indices() {
        let (ci, cj) = (uf.find(i), uf.find(j));
        if ci == cj {
            return None;
        }
        g.add_edge(ci, cj, ());
    }
    let order = toposort(&g, None).ok()?;
    let mut level: BTreeMap<usize, u64> = BTreeMap::new();
    for &c in order.iter().rev() {
        let l = g
            .neighbors(c)
            .map(|d| level[&d] + 1)
            .max()
            .unwrap_or(1);
        level.insert(c, l);
    }
    let score: BTreeMap<Literal, u64> = verts
        .iter()
        .map(|&v| (a.universe.literal(v), level[&uf.find(v)]))
        .collect();
    let mut by_level: BTreeMap<std::cmp::Reverse<u64>, LitSet> = BTreeMap::new();
    for (l, &s) in &score {
        by_level.entry(std::cmp::Reverse(s)).or_default().insert(l.clone());
    }
    Some(ScoreStructure {
        score,
        levels: by_level.into_values().collect(),
    })
}

/// Δ-repairs whose agreement sets are maximal level by level, from the most
/// reliable level down.
pub fn delta_p_repairs(pdb: &PrioritizedDb) -> Result<BTreeSet<Database>> {
    let s = detect_score_structure(pdb)
        .ok_or_else(|| Error::InvalidPriority("the priority is not score-structured".into()))?;
    let u = &pdb.analysis.universe;
    let levels: Vec<FixedBitSet> = s
        .levels
        .iter()
        .map(|l| u.lits_to_bits(l).expect("conflict literals lie in Lits"))
        .collect();
    // A consistent improvement extends to a Δ-repair that still improves, so
    // comparing Δ-repairs suffices.
    let beats = |x: &FixedBitSet, y: &FixedBitSet| {
        for lv in &levels {
            let mut xs = x.clone();
            xs.intersect_with(lv);
            let mut ys = y.clone();
            ys.intersect_with(lv);
            if xs != ys {
                return ys.is_subset(&xs);
            }
        }
        false
    };
    Ok(pdb
        .reps
        .iter()
        .filter(|r| !pdb.reps.iter().any(|o| beats(o, r)))
        .map(|r| pdb.to_db(r))
        .collect())
}

/// Literal sets for display.
pub fn describe_edges(edges: &BTreeSet<(Literal, Literal)>) -> Vec<String> {
    edges.iter().map(|(a, b)| format!("{a} > {b}")).collect()
}

#[allow(dead_code)]
fn debug_lits(a: &Analysis, x: &FixedBitSet) -> String {
    format_lits(&a.universe.bits_to_lits(x))
}
