use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use prirep::fixtures::{
    Fixture, CYCLIC_PREFERENCES, IMPLIED_EXCLUSION, KEYS_AND_INCLUSIONS, STRENGTHENING_ADDS_ACTIONS,
};
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn prirep(dir: &Path, args: &[&str]) -> Run {
    let o = Command::new(env!("CARGO_BIN_EXE_prirep"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    Run {
        code: o.status.code().unwrap(),
        out: String::from_utf8(o.stdout).unwrap(),
        err: String::from_utf8(o.stderr).unwrap(),
    }
}

/// Writes the fixture files into a fresh directory; returns it with the
/// file flags that point at them.
fn setup(fx: &Fixture) -> (TempDir, Vec<String>) {
    let dir = TempDir::new().unwrap();
    let mut flags = Vec::new();
    for (flag, name, text) in [
        ("--schema", "schema.txt", fx.schema),
        ("-d", "db.txt", fx.db),
        ("-c", "constraints.txt", fx.constraints),
        ("-p", "priority.txt", fx.priority),
        ("-a", "aics.txt", fx.aics),
    ] {
        fs::write(dir.path().join(name), text).unwrap();
        flags.push(flag.to_string());
        flags.push(name.to_string());
    }
    (dir, flags)
}

fn with<'a>(flags: &'a [String], args: &[&'a str]) -> Vec<&'a str> {
    args.iter().copied().chain(flags.iter().map(String::as_str)).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

#[test]
fn conflicts_of_the_keys_fixture() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["conflicts"]));
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.lines().count(), 8);
    assert!(r.out.contains("{!A(a), S(a,b)}\n"));
    assert!(r.out.contains("{R(d,b), R(d,c)}\n"));
}

#[test]
fn conflicts_of_an_empty_database() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "db.txt", "");
    let r = prirep(dir.path(), &["conflicts", "-d", "db.txt"]);
    assert_eq!((r.code, r.out.as_str()), (0, ""));
}

#[test]
fn conflict_hypergraph_as_dot() {
    let (dir, f) = setup(&IMPLIED_EXCLUSION);
    let r = prirep(dir.path(), &with(&f, &["conflicts", "--dot"]));
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("graph conflicts {"));
    assert!(r.out.contains("\"A(a)\" -- \"B(a)\";"));
}

#[test]
fn delta_repairs_need_the_declared_schema() {
    let (dir, f) = setup(&IMPLIED_EXCLUSION);
    let r = prirep(dir.path(), &with(&f, &["repairs", "--kind", "delta"]));
    assert_eq!(r.out, "{}\n{A(a), C(a)}\n{B(a), D(a)}\n");
}

#[test]
fn optimal_repairs_listing() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["repairs", "--opt", "pareto"]));
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "{A(a), B(a), R(d,b), S(a,c)}\n{A(a), B(a), R(d,c), S(a,b)}\n{R(d,b)}\n{R(d,c)}\n"
    );
}

#[test]
fn brave_answer_is_yes() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["answer", "--sem", "brave", "--opt", "p", "--query", "q :- A(a)."]));
    assert_eq!((r.code, r.out.as_str()), (0, "yes\n"));
    let r = prirep(dir.path(), &with(&f, &["answer", "--sem", "cqa", "--opt", "p", "--query", "q :- A(a)."]));
    assert_eq!((r.code, r.out.as_str()), (1, "no\n"));
}

#[test]
fn answers_with_free_variables() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    write(dir.path(), "q.txt", "q(Y) :- R(d,Y).\nb :- R(d,Y).\n");
    let r = prirep(dir.path(), &with(&f, &["answer", "--sem", "brave", "-q", "q.txt"]));
    assert_eq!((r.code, r.out.as_str()), (0, "q(b).\nq(c).\nb: yes\n"));
    let r = prirep(dir.path(), &with(&f, &["answer", "--sem", "int", "-q", "q.txt"]));
    assert_eq!((r.code, r.out.as_str()), (1, "b: no\n"));
}

#[test]
fn check_repair_exit_codes() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    write(dir.path(), "cand.txt", "R(d,c).");
    write(dir.path(), "bad.txt", "R(d,c). S(a,c).");
    write(dir.path(), "p.txt", "R(d,c). S(a,b). A(a). B(a).");
    let run = |cand: &str, opt: &str| prirep(dir.path(), &with(&f, &["check-repair", cand, "--opt", opt])).code;
    assert_eq!(run("cand.txt", "none"), 0);
    assert_eq!(run("bad.txt", "none"), 1);
    assert_eq!(run("p.txt", "pareto"), 0);
    assert_eq!(run("p.txt", "global"), 1);
    // {R(d,c)} has no global improvement: any way of giving up !A(a) needs
    // S(a,b), and giving up !B(a) then needs S(a,c) as well.
    assert_eq!(run("cand.txt", "global"), 0);
    assert_eq!(run("cand.txt", "completion"), 1);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "db.txt", "A(a).\nB(a,\n");
    let r = prirep(dir.path(), &["conflicts", "-d", "db.txt"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("db.txt: 2:5"), "{}", r.err);

    write(dir.path(), "db.txt", "A(a).");
    write(dir.path(), "c.txt", "A(X, Y) -> false.");
    let r = prirep(dir.path(), &["conflicts", "-d", "db.txt", "-c", "c.txt"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("arity"), "{}", r.err);

    let r = prirep(dir.path(), &["conflicts", "-d", "missing.txt"]);
    assert_eq!(r.code, 2);
    let r = prirep(dir.path(), &["repairs", "--kind", "sideways"]);
    assert_eq!(r.code, 2);
}

#[test]
fn undeclared_predicate_with_a_schema() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "s.txt", "A/1.");
    write(dir.path(), "db.txt", "A(a). B(a).");
    let r = prirep(dir.path(), &["conflicts", "--schema", "s.txt", "-d", "db.txt"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("`B`"), "{}", r.err);
}

#[test]
fn budget_exit_code() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["repairs", "--kind", "subset", "--max-universe", "2"]));
    assert_eq!(r.code, 3, "{}", r.err);
    assert!(r.err.contains("budget"));
}

#[test]
fn output_is_deterministic() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    for cmd in [&["conflicts"][..], &["repairs", "--opt", "global"], &["translate", "to-denial"]] {
        let a = prirep(dir.path(), &with(&f, cmd)).out;
        let b = prirep(dir.path(), &with(&f, cmd)).out;
        assert_eq!(a, b);
    }
}

#[test]
fn denial_image_roundtrip() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["translate", "to-denial", "--out", "img"]));
    assert_eq!(r.code, 0, "{}", r.err);
    let img = prirep(
        dir.path(),
        &["conflicts", "--schema", "img/schema.txt", "-d", "img/database.txt", "-c", "img/constraints.txt"],
    );
    assert_eq!(img.code, 0, "{}", img.err);
    let orig = prirep(dir.path(), &with(&f, &["conflicts"]));
    assert_eq!(img.out.lines().count(), orig.out.lines().count());
    assert!(img.out.contains("{S(a,b), ~A(a)}\n"), "{}", img.out);
    let cs = fs::read_to_string(dir.path().join("img/constraints.txt")).unwrap();
    assert!(cs.lines().all(|l| l.ends_with("-> false.")));
}

#[test]
fn priority_rules_roundtrip() {
    let (dir, f) = setup(&KEYS_AND_INCLUSIONS);
    let r = prirep(dir.path(), &with(&f, &["translate", "prio-to-aic"]));
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(r.out.lines().count(), 8);
    write(dir.path(), "rules.txt", &r.out);
    let c = prirep(dir.path(), &["aic", "classify", "--schema", "schema.txt", "-d", "db.txt", "-a", "rules.txt"]);
    assert_eq!(c.code, 0, "{}", c.err);
    assert_eq!(c.out.lines().filter(|l| l.contains("founded=yes")).count(), 4);

    let v = prirep(dir.path(), &with(&f, &["verify", "prio-to-aic"]));
    assert_eq!(v.code, 0);
    assert!(v.out.ends_with("holds\n"));
}

#[test]
fn stored_priority_rules() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "db.txt", "S(1,k,a). S(2,k,b). Pref(1,2).");
    write(dir.path(), "c.txt", "S(I,X,Y), S(J,X,Z), Y != Z -> false.");
    let r = prirep(dir.path(), &["translate", "prio-to-aic", "--prio-pred", "Pref", "-d", "db.txt", "-c", "c.txt"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.contains("not Pref("), "{}", r.out);
    let v = prirep(dir.path(), &["verify", "prio-to-aic", "--prio-pred", "Pref", "-d", "db.txt", "-c", "c.txt"]);
    assert_eq!(v.code, 0, "{}{}", v.out, v.err);
    assert!(v.out.contains("Pareto: {Pref(1,2), S(1,k,a)}\n"), "{}", v.out);
}

#[test]
fn aic_commands() {
    let (dir, f) = setup(&STRENGTHENING_ADDS_ACTIONS);
    let r = prirep(dir.path(), &with(&f, &["aic", "classify"]));
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 4);
    assert!(r.out.contains("{-beta, -delta}: founded=no well-founded=yes grounded=no justified=no\n"));

    write(dir.path(), "u.txt", "-alpha. -gamma.");
    write(dir.path(), "w.txt", "-delta. -beta.");
    write(dir.path(), "x.txt", "-alpha.");
    let check = |u: &str, notion: &str| prirep(dir.path(), &with(&f, &["aic", "check-update", u, "--notion", notion]));
    assert_eq!(check("u.txt", "justified").code, 0);
    assert_eq!(check("w.txt", "founded").code, 1);
    assert_eq!(check("w.txt", "well-founded").code, 0);
    let r = check("x.txt", "r");
    assert_eq!(r.code, 1);
    assert!(r.out.contains("not an r-update"));

    let r = prirep(dir.path(), &with(&f, &["aic", "props"]));
    assert!(r.out.contains("preserves actions under strengthening: no\n"));
}

#[test]
fn derived_priority_from_aics() {
    let (dir, f) = setup(&STRENGTHENING_ADDS_ACTIONS);
    let r = prirep(dir.path(), &with(&f, &["translate", "aic-to-prio", "--out", "out"]));
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.err.contains("strengthening"));
    let p = fs::read_to_string(dir.path().join("out/priority.txt")).unwrap();
    assert_eq!(p, "alpha > delta.\nbeta > gamma.\n");
    let reps = prirep(
        dir.path(),
        &["repairs", "--opt", "pareto", "-d", "db.txt", "-c", "out/constraints.txt", "-p", "out/priority.txt"],
    );
    assert_eq!(reps.out, "{alpha, beta}\n");
}

#[test]
fn cyclic_derived_priority() {
    let (dir, f) = setup(&CYCLIC_PREFERENCES);
    let r = prirep(dir.path(), &with(&f, &["translate", "aic-to-prio"]));
    assert_eq!(r.code, 1);
    assert!(r.err.contains("A(a) > C(a) > B(a) > A(a)"), "{}", r.err);
}
