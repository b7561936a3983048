//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion; each
//! must finish within five seconds.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use prirep::fixtures::*;
use prirep::*;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const CORPUS: u64 = 200;
const TIME_LIMIT: Duration = Duration::from_secs(5);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn db(t: &str) -> Database {
    parse_database(t).unwrap()
}

fn dbs(ts: &[&str]) -> BTreeSet<Database> {
    ts.iter().map(|t| db(t)).collect()
}

fn lits(t: &[&str]) -> LitSet {
    t.iter()
        .map(|s| match s.strip_prefix('!') {
            Some(f) => Literal::neg(parse_database(&format!("{f}.")).unwrap().pop_first().unwrap()),
            None => Literal::pos(parse_database(&format!("{s}.")).unwrap().pop_first().unwrap()),
        })
        .collect()
}

fn upd(t: &str) -> Update {
    parse_update(t).unwrap()
}

fn show(s: &BTreeSet<Database>) -> String {
    s.iter().map(format_facts).collect::<Vec<_>>().join(" ")
}

fn lim() -> Limits {
    Limits::default()
}

fn founded_updates(a: &AicAnalysis) -> BTreeSet<Update> {
    a.r_updates()
        .into_iter()
        .filter(|u| a.is_founded(u, &lim()).unwrap())
        .collect()
}

fn implied_exclusion() -> Check {
    let inst = IMPLIED_EXCLUSION.instance();
    let got = conflicts_prime_implicants(&inst).map_err(|e| e.to_string())?;
    let want: BTreeSet<LitSet> = [
        lits(&["A(a)", "!C(a)"]),
        lits(&["B(a)", "!D(a)"]),
        lits(&["A(a)", "B(a)"]),
    ]
    .into();
    ensure!(got == want, "conflicts {got:?}");
    let reps = delta_repairs(&inst).map_err(|e| e.to_string())?;
    ensure!(reps == dbs(&["", "A(a). C(a).", "B(a). D(a)."]), "repairs {}", show(&reps));
    Ok(())
}

fn keys_optimal_sets() -> Check {
    let pdb = KEYS_AND_INCLUSIONS.prioritized();
    let c = dbs(&["R(d,b). S(a,c). A(a). B(a)."]);
    let mut g = c.clone();
    g.insert(db("R(d,b)."));
    let mut p = g.clone();
    p.extend(dbs(&["R(d,c).", "R(d,c). S(a,b). A(a). B(a)."]));
    let mut bad = Vec::new();
    for (kind, want) in [(Optimality::Completion, &c), (Optimality::Global, &g), (Optimality::Pareto, &p)] {
        let got = optimal_repairs(&pdb, kind);
        if &got != want {
            bad.push(format!("{kind:?}: got {} expected {}", show(&got), show(want)));
        }
    }
    let delta = delta_repairs(&KEYS_AND_INCLUSIONS.instance()).unwrap();
    if delta != optimal_repairs(&pdb, Optimality::Pareto) {
        bad.push("Δ-repairs differ from Pareto-optimal repairs".into());
    }
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok(())
}

fn keys_query_judgments() -> Check {
    let pdb = KEYS_AND_INCLUSIONS.prioritized();
    use Optimality::*;
    use Semantics::*;
    let cases = [
        ("q :- A(a).", Brave, Pareto, true),
        ("q :- A(a).", Cqa, Pareto, false),
        ("q :- R(d,Y).", Cqa, Pareto, true),
        ("q :- R(d,Y).", Intersection, Pareto, false),
        ("q :- A(a).", Cqa, Completion, true),
        ("q :- A(a).", Cqa, Global, false),
        ("q :- R(d,b).", Cqa, Global, true),
        ("q :- R(d,b).", Cqa, Pareto, false),
    ];
    let mut bad = Vec::new();
    for (q, sem, opt, want) in cases {
        let got = entails(&pdb, &parse_query(q).unwrap(), &[], sem, opt);
        if got != want {
            bad.push(format!("{q} under {sem:?}/{opt:?}: got {got}, expected {want}"));
        }
    }
    ensure!(bad.is_empty(), "{}", bad.join("; "));
    Ok(())
}

fn inconsistent_intersection() -> Check {
    let pdb = DISJUNCTIVE_HEAD.prioritized();
    let i = repairs_intersection(&pdb, Optimality::Pareto);
    ensure!(i == db("A(a)."), "intersection {}", format_facts(&i));
    ensure!(!satisfies(&i, &DISJUNCTIVE_HEAD.instance().constraints), "intersection satisfies C");
    Ok(())
}

fn aic_fixtures() -> Check {
    let a = WELL_FOUNDED_NOT_FOUNDED.aic_analysis();
    ensure!(founded_updates(&a) == [upd("-beta. -gamma.")].into(), "removal rules: founded updates");
    let u = upd("-alpha. -gamma.");
    ensure!(
        a.is_well_founded(&u, &lim()).unwrap() && !a.is_founded(&u, &lim()).unwrap(),
        "removal rules: {{-alpha,-gamma}}"
    );

    let a = UNIQUE_UPDATE_NOT_GROUNDED.aic_analysis();
    let u = upd("+alpha. +beta. +gamma.");
    ensure!(a.r_updates() == [u.clone()].into(), "unique update: r-updates");
    let c = a.classify(&u, &lim()).unwrap();
    ensure!(c.founded && c.well_founded && !c.grounded && !c.justified, "unique update: {c:?}");

    for (name, fx) in [("unresolved", UNRESOLVED_PAIR), ("resolved", RESOLVED_PAIR)] {
        let a = fx.aic_analysis();
        ensure!(
            founded_updates(&a) == [upd("-gamma."), upd("-alpha. -beta.")].into(),
            "{name} pair: founded updates"
        );
        ensure!(!a.is_well_founded(&upd("-alpha. -beta."), &lim()).unwrap(), "{name} pair: well-founded");
    }

    let a = STRENGTHENING_ADDS_ACTIONS.aic_analysis();
    let all = a.classify_all(&lim()).unwrap();
    ensure!(all.len() == 4, "four r-updates expected, got {}", all.len());
    let row = |t: &str| all.get(&upd(t)).copied().ok_or(format!("{t} is not an r-update"));
    let (u1, u2, u3, u4) = (
        row("-alpha. -gamma.")?,
        row("-delta. -gamma.")?,
        row("-delta. -beta.")?,
        row("-alpha. -beta.")?,
    );
    ensure!(u1.founded && u2.founded, "U1, U2 founded");
    ensure!(!u3.founded && u3.well_founded, "U3 well-founded only: {u3:?}");
    ensure!(!u4.founded && !u4.well_founded, "U4 neither: {u4:?}");
    Ok(())
}

fn lit(p: &str) -> Literal {
    Literal::pos(Fact::new(p, &[]))
}

fn aic_priority_fixtures() -> Check {
    let chk = |fx: Fixture| check_aics_against_priority(&fx.aic_analysis(), &lim()).map_err(|e| e.to_string());

    let c = chk(MISSING_RESOLVENT)?;
    ensure!(!c.translation.properties.closed_under_resolution, "missing resolvent: closed");
    ensure!(c.translation.edges == [(lit("alpha"), lit("beta"))].into(), "missing resolvent: edges");
    let cmp = c.comparison.ok_or("missing resolvent: no comparison")?;
    ensure!(cmp.pareto == dbs(&["alpha.", "beta. gamma."]), "missing resolvent: Pareto {}", show(&cmp.pareto));
    ensure!(cmp.founded == dbs(&["alpha."]), "missing resolvent: founded {}", show(&cmp.founded));

    let c = chk(RESOLUTION_DROPS_ACTIONS)?;
    let p = &c.translation.properties;
    ensure!(
        p.closed_under_resolution && !p.preserves_actions_under_resolution && p.preserves_actions_under_strengthening,
        "resolution drops actions: properties"
    );
    let nd = Literal::neg(Fact::new("delta", &[]));
    ensure!(
        c.translation.edges
            == [(lit("beta"), lit("alpha")), (lit("beta"), lit("gamma")), (lit("alpha"), nd)].into(),
        "resolution drops actions: edges"
    );
    let cmp = c.comparison.ok_or("resolution drops actions: no comparison")?;
    ensure!(cmp.pareto == dbs(&["beta."]), "resolution drops actions: Pareto {}", show(&cmp.pareto));
    let r = db("alpha. gamma. delta.");
    ensure!(
        cmp.founded.contains(&r) && cmp.grounded.contains(&r) && cmp.justified.contains(&r),
        "resolution drops actions: {{-beta,+delta}}"
    );

    let c = chk(STRENGTHENING_ADDS_ACTIONS)?;
    let p = &c.translation.properties;
    ensure!(
        p.closed_under_resolution && p.preserves_actions_under_resolution && !p.preserves_actions_under_strengthening,
        "strengthening: properties"
    );
    ensure!(
        c.translation.edges == [(lit("alpha"), lit("delta")), (lit("beta"), lit("gamma"))].into(),
        "strengthening: edges"
    );
    let cmp = c.comparison.ok_or("strengthening: no comparison")?;
    ensure!(cmp.pareto == dbs(&["alpha. beta."]), "strengthening: Pareto {}", show(&cmp.pareto));
    let r = db("beta. delta.");
    ensure!(
        cmp.founded.contains(&r) && cmp.grounded.contains(&r) && cmp.justified.contains(&r),
        "strengthening: {{-alpha,-gamma}}"
    );

    let t = aics_to_prio(&CYCLIC_PREFERENCES.aic_analysis());
    let cycle = t.cycle.ok_or("cyclic rules: no cycle reported")?;
    let al = |p: &str| Literal::pos(Fact::new(p, &["a"]));
    let want = [al("A"), al("C"), al("B")];
    let k = cycle.iter().position(|l| *l == want[0]).ok_or("cyclic rules: A(a) not on the cycle")?;
    let rotated: Vec<Literal> = cycle[k..].iter().chain(&cycle[..k]).cloned().collect();
    ensure!(rotated == want, "cyclic rules: cycle {cycle:?}");

    let c = chk(TERNARY_PARETO_GAP)?;
    ensure!(c.well_behaved && c.holds(), "ternary: {:?}", c.describe());
    let cmp = c.comparison.ok_or("ternary: no comparison")?;
    let r = db("beta. gamma. eps.");
    ensure!(cmp.pareto.contains(&r) && !cmp.founded.contains(&r), "ternary: {{beta,gamma,eps}}");
    ensure!(cmp.founded.is_subset(&cmp.pareto) && cmp.founded != cmp.pareto, "ternary: strict inclusion");
    Ok(())
}

fn oracle_equivalences() -> Check {
    for seed in 0..CORPUS {
        let inst = common::instance(seed);
        let e = |e: Error| format!("seed {seed}: {e}");
        let pi = conflicts_prime_implicants(&inst).map_err(e)?;
        let hs = conflicts_hitting_sets(&inst, &lim()).map_err(e)?;
        ensure!(pi == hs, "seed {seed}: conflicts differ");
        let reps = delta_repairs(&inst).map_err(e)?;
        ensure!(reps == delta_repairs_bruteforce(&inst, &lim()).map_err(e)?, "seed {seed}: Δ-repairs differ");

        let a = common::aic_set(seed);
        ensure!(a.r_updates() == r_updates_bruteforce(&a, &lim()).map_err(e)?, "seed {seed}: r-updates differ");
        for u in a.r_updates() {
            ensure!(
                a.is_grounded(&u, &lim()).map_err(e)? == a.is_grounded_by_restriction(&u, &lim()).map_err(e)?,
                "seed {seed}: grounded check differs on {}",
                format_update(&u)
            );
        }

        let pdb = common::prioritized(seed);
        let cert = optimal_repairs(&pdb, Optimality::Completion);
        let enumerated = completion_optimal_by_enumeration(&pdb, &lim()).map_err(e)?;
        ensure!(cert == enumerated, "seed {seed}: completion-optimal {} vs {}", show(&cert), show(&enumerated));
    }
    Ok(())
}

fn property_suite() -> Check {
    use Optimality::*;
    for seed in 0..CORPUS {
        let e = |e: Error| format!("seed {seed}: {e}");
        let pdb = common::prioritized(seed);
        let [c, g, p, s] = [Completion, Global, Pareto, S].map(|k| optimal_repairs(&pdb, k));
        ensure!(
            c.is_subset(&g) && g.is_subset(&p) && p.is_subset(&s),
            "seed {seed}: chain C ⊆ G ⊆ P ⊆ Δ"
        );
        ensure!(pdb.analysis.unsatisfiable() || !c.is_empty(), "seed {seed}: no completion-optimal repair");

        let total = PrioritizedDb::from_analysis(pdb.analysis.clone(), common::priority(&pdb.analysis, seed, 1.0))
            .map_err(e)?;
        ensure!(total.is_total(), "seed {seed}: generated priority is not total");
        let n = optimal_repairs(&total, Pareto).len();
        ensure!(pdb.analysis.unsatisfiable() || n == 1, "seed {seed}: total priority has {n} Pareto-optimal repairs");

        let scored = PrioritizedDb::from_analysis(pdb.analysis.clone(), common::scores(&pdb.analysis, seed)).map_err(e)?;
        let sp = optimal_repairs(&scored, Pareto);
        ensure!(
            optimal_repairs(&scored, Completion) == sp
                && optimal_repairs(&scored, Global) == sp
                && delta_p_repairs(&scored).map_err(e)? == sp,
            "seed {seed}: score-structured collapse"
        );

        let inst = common::instance(seed);
        let q = common::query(&inst, seed);
        for kind in [S, Pareto, Global, Completion] {
            let [i, cq, b] = [Semantics::Intersection, Semantics::Cqa, Semantics::Brave].map(|sem| answers(&pdb, &q, sem, kind).tuples);
            ensure!(
                i.is_subset(&cq) && (pdb.analysis.unsatisfiable() || cq.is_subset(&b)),
                "seed {seed}: semantics chain for {q} under {kind:?}"
            );
        }

        let m = common::monotone_aic_set(seed);
        for (u, cl) in m.classify_all(&lim()).map_err(e)? {
            ensure!(
                cl.justified == cl.grounded && cl.grounded == cl.founded,
                "seed {seed}: monotone rules disagree on {}",
                format_update(&u)
            );
        }

        let img = to_denial(&inst).map_err(e)?;
        let d = img.discrepancies(&Analysis::new(&inst).map_err(e)?).map_err(e)?;
        ensure!(d.is_empty(), "seed {seed}: denial image: {}", d.join("; "));

        let cmp = check_priority_aics(&pdb, &lim()).map_err(e)?;
        ensure!(cmp.holds(), "seed {seed}: priority rules: {}", cmp.failures.join("; "));
    }
    Ok(())
}

fn aic_priority_roundtrip() -> Check {
    for seed in 0..CORPUS {
        let a = common::binary_well_behaved(seed);
        let c = check_aics_against_priority(&a, &lim()).map_err(|e| format!("seed {seed}: {e}"))?;
        let cmp = c.comparison.as_ref().ok_or(format!("seed {seed}: no prioritized database"))?;
        ensure!(c.holds(), "seed {seed}: {}", cmp.failures.join("; "));
        ensure!(
            cmp.pareto == cmp.founded && cmp.founded == cmp.grounded && cmp.grounded == cmp.justified,
            "seed {seed}: Pareto {} founded {}",
            show(&cmp.pareto),
            show(&cmp.founded)
        );
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("conflicts and Δ-repairs of the implied exclusion", implied_exclusion),
        ("completion/global/Pareto-optimal repairs of the keys fixture", keys_optimal_sets),
        ("eight query judgments on the keys fixture", keys_query_judgments),
        ("inconsistent intersection of Pareto-optimal repairs", inconsistent_intersection),
        ("r-update classifications of the AIC fixtures", aic_fixtures),
        ("AIC-to-priority counterexamples, cycle and strict inclusion", aic_priority_fixtures),
        ("oracle equivalences on the random corpus", oracle_equivalences),
        ("property suite on the random corpus", property_suite),
        ("AIC/priority roundtrip on binary well-behaved sets", aic_priority_roundtrip),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(p) => Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into())),
        };
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(()) if took > TIME_LIMIT => Err(format!("took {took:.2?}, limit {TIME_LIMIT:?}")),
            o => o,
        };
        match &outcome {
            Ok(()) => println!("PASS {} ({took:.2?}) {name}", k + 1),
            Err(msg) => {
                println!("FAIL {} ({took:.2?}) {name}: {msg}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
