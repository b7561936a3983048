mod workspace;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prirep::*;

use workspace::{load_database, load_update, Files, Workspace};

/// Conflicts, repairs and consistent query answering over prioritized
/// databases, and active integrity constraints.
///
/// Exit status: 0 success or "yes", 1 a check answered "no", 2 bad input,
/// 3 an enumeration budget was exceeded.
#[derive(Parser, Debug)]
#[command(name = "prirep", version)]
struct Cli {
    #[command(flatten)]
    inputs: Inputs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Inputs {
    /// Database file (`P(a,b).` per fact).
    #[arg(short, long, global = true, value_name = "FILE")]
    db: Option<PathBuf>,
    /// Constraint file.
    #[arg(short, long, global = true, value_name = "FILE")]
    constraints: Option<PathBuf>,
    /// Priority file (`LIT > LIT.` and `score LIT = n.`).
    #[arg(short, long, global = true, value_name = "FILE")]
    priority: Option<PathBuf>,
    /// Query file.
    #[arg(short, long, global = true, value_name = "FILE")]
    queries: Option<PathBuf>,
    /// AIC file.
    #[arg(short, long, global = true, value_name = "FILE")]
    aics: Option<PathBuf>,
    /// Schema file (`P/2.` per predicate). Without it the schema is inferred
    /// from the predicates used in all other files.
    #[arg(long, global = true, value_name = "FILE")]
    schema: Option<PathBuf>,
    /// Largest universe an exhaustive enumeration may range over.
    #[arg(long, global = true, default_value_t = 22)]
    max_universe: usize,
    /// Largest number of priority completions to enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_completions: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the conflicts, one literal set per line.
    Conflicts {
        /// Print the conflict hypergraph in Graphviz format instead.
        #[arg(long)]
        dot: bool,
    },
    /// List repairs, one database per line.
    Repairs {
        #[arg(long, value_enum, default_value_t = Kind::Delta)]
        kind: Kind,
        /// Keep only the optimal Δ-repairs under the priority.
        #[arg(long, value_enum, default_value_t = Opt::None)]
        opt: Opt,
    },
    /// Is CANDIDATE a Δ-repair (`--opt none`) or an optimal repair?
    CheckRepair {
        candidate: PathBuf,
        #[arg(long, value_enum, default_value_t = Opt::None)]
        opt: Opt,
    },
    /// Answer queries over the optimal repairs.
    Answer {
        #[arg(long, value_enum)]
        sem: Sem,
        #[arg(long, value_enum, default_value_t = OptShort::P)]
        opt: OptShort,
        /// Query text, in addition to those of `--queries`.
        #[arg(long, value_name = "TEXT")]
        query: Option<String>,
    },
    /// Repair updates of active integrity constraints.
    Aic {
        #[command(subcommand)]
        command: AicCommand,
    },
    /// Translate between the input formats.
    Translate {
        #[command(subcommand)]
        command: TranslateCommand,
    },
    /// Compare optimal repairs with the repairs of the translated AICs.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand, Debug)]
enum AicCommand {
    /// Every r-update with its founded, well-founded, grounded and justified flags.
    Classify,
    /// Is UPDATE an r-update, or an update of the given kind?
    CheckUpdate {
        update: PathBuf,
        #[arg(long, value_enum, default_value_t = Notion::R)]
        notion: Notion,
    },
    /// Monotonicity, closure under resolution and action preservation.
    Props,
}

#[derive(Subcommand, Debug)]
enum TranslateCommand {
    /// Rewrite the constraints as denials over `~P` copies of each predicate.
    ToDenial {
        /// Write schema.txt, database.txt and constraints.txt here.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// One AIC per conflict, fixing the literals that dominate nothing.
    PrioToAic {
        /// Read the priority from facts `PRED(id1, id2)` of the database,
        /// with ids stored in the first column, and emit one AIC per
        /// constraint atom.
        #[arg(long, value_name = "PRED")]
        prio_pred: Option<String>,
    },
    /// Constraints and priority derived from the body-minimal ground AICs.
    AicToPrio {
        /// Write constraints.txt and priority.txt here.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Pareto-optimal repairs equal the founded repairs of the translated AICs.
    PrioToAic {
        #[arg(long, value_name = "PRED")]
        prio_pred: Option<String>,
    },
    /// For well-behaved AICs, their founded repairs against the
    /// Pareto-optimal repairs of the derived priority.
    AicToPrio,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Delta,
    Subset,
    Superset,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Opt {
    None,
    Pareto,
    Global,
    Completion,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OptShort {
    S,
    P,
    G,
    C,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Sem {
    Brave,
    Cqa,
    Int,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Notion {
    R,
    Founded,
    WellFounded,
    Grounded,
    Justified,
}

impl Opt {
    fn optimality(self) -> Optimality {
        match self {
            Opt::None => Optimality::S,
            Opt::Pareto => Optimality::Pareto,
            Opt::Global => Optimality::Global,
            Opt::Completion => Optimality::Completion,
        }
    }
}

impl OptShort {
    fn optimality(self) -> Optimality {
        match self {
            OptShort::S => Optimality::S,
            OptShort::P => Optimality::Pareto,
            OptShort::G => Optimality::Global,
            OptShort::C => Optimality::Completion,
        }
    }
}

impl Sem {
    fn semantics(self) -> Semantics {
        match self {
            Sem::Brave => Semantics::Brave,
            Sem::Cqa => Semantics::Cqa,
            Sem::Int => Semantics::Intersection,
        }
    }
}

/// Report text and whether the command answered "yes".
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn yes(text: String) -> Outcome {
        Outcome { text, ok: true }
    }

    fn check(ok: bool, text: String) -> Outcome {
        Outcome { text, ok }
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().fold(String::new(), |mut s, l| {
        s.push_str(&l);
        s.push('\n');
        s
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_files(dir: &Path, files: &[(&str, &str)]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    for (name, text) in files {
        let p = dir.join(name);
        fs::write(&p, text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

/// Several files on stdout, each under a `# name` comment line.
fn sections(files: &[(&str, &str)]) -> String {
    let mut s = String::new();
    for (name, text) in files {
        let _ = writeln!(s, "# {name}");
        s.push_str(text);
    }
    s
}

fn run(cli: &Cli) -> Result<Outcome> {
    let i = &cli.inputs;
    let limits = Limits {
        max_universe: i.max_universe,
        max_completions: i.max_completions,
    };
    let files = Files {
        schema: i.schema.clone(),
        db: i.db.clone(),
        constraints: i.constraints.clone(),
        priority: i.priority.clone(),
        queries: i.queries.clone(),
        aics: i.aics.clone(),
    };
    let inline = match &cli.command {
        Command::Answer { query, .. } => query.as_deref(),
        _ => None,
    };
    let ws = Workspace::load(&files, inline)?;

    Ok(match &cli.command {
        Command::Conflicts { dot } => {
            let inst = ws.instance()?;
            if *dot {
                Outcome::yes(conflict_hypergraph(&inst)?.to_dot())
            } else {
                let cs = conflicts_prime_implicants(&inst)?;
                Outcome::yes(lines(cs.iter().map(format_lits)))
            }
        }
        Command::Repairs { kind, opt } => {
            let reps = match (kind, opt) {
                (Kind::Delta, Opt::None) => delta_repairs(&ws.instance()?)?,
                (Kind::Delta, o) => optimal_repairs(&ws.prioritized()?, o.optimality()),
                (Kind::Subset, Opt::None) => subset_repairs(&ws.instance()?, &limits)?,
                (Kind::Superset, Opt::None) => superset_repairs(&ws.instance()?, &limits)?,
                _ => anyhow::bail!(Error::Invalid("--opt applies to Δ-repairs only".into())),
            };
            Outcome::yes(lines(reps.iter().map(format_facts)))
        }
        Command::CheckRepair { candidate, opt } => {
            let r = load_database(candidate)?;
            let ok = match opt {
                Opt::None => is_delta_repair(&ws.instance()?, &r)?,
                o => is_optimal_repair(&r, &ws.prioritized()?, o.optimality())?,
            };
            Outcome::check(ok, format!("{}\n", yes_no(ok)))
        }
        Command::Answer { sem, opt, .. } => {
            if ws.queries.is_empty() {
                anyhow::bail!(Error::Invalid("no query given (use --queries or --query)".into()));
            }
            let pdb = ws.prioritized()?;
            let single = ws.queries.len() == 1;
            let mut text = String::new();
            let mut ok = true;
            for q in &ws.queries {
                let a = answers(&pdb, q, sem.semantics(), opt.optimality());
                if q.is_boolean() {
                    let holds = !a.tuples.is_empty();
                    ok &= holds;
                    if single {
                        let _ = writeln!(text, "{}", yes_no(holds));
                    } else {
                        let _ = writeln!(text, "{}: {}", q.name, yes_no(holds));
                    }
                } else {
                    for t in &a.tuples {
                        let args: Vec<&str> = t.iter().map(|s| &**s).collect();
                        let _ = writeln!(text, "{}({}).", q.name, args.join(","));
                    }
                }
            }
            Outcome::check(ok, text)
        }
        Command::Aic { command } => {
            let a = ws.aic_analysis()?;
            match command {
                AicCommand::Classify => {
                    let all = a.classify_all(&limits)?;
                    Outcome::yes(lines(all.iter().map(|(u, c)| classification_line(u, c))))
                }
                AicCommand::CheckUpdate { update, notion } => {
                    let u = load_update(update)?;
                    if !a.is_r_update(&u)? {
                        Outcome::check(false, format!("{}: not an r-update\n", format_update(&u)))
                    } else {
                        let c = a.classify(&u, &limits)?;
                        let ok = match notion {
                            Notion::R => true,
                            Notion::Founded => c.founded,
                            Notion::WellFounded => c.well_founded,
                            Notion::Grounded => c.grounded,
                            Notion::Justified => c.justified,
                        };
                        Outcome::check(ok, format!("{}\n", classification_line(&u, &c)))
                    }
                }
                AicCommand::Props => Outcome::yes(lines(check_properties(&a).describe())),
            }
        }
        Command::Translate { command } => translate(&ws, command)?,
        Command::Verify { command } => match command {
            VerifyCommand::PrioToAic { prio_pred } => {
                let cmp = match prio_pred {
                    Some(p) => check_denial_priority_aics(&ws.db, &ws.constraints, p, &limits)?,
                    None => check_priority_aics(&ws.prioritized()?, &limits)?,
                };
                let mut text = lines(cmp.describe());
                let _ = writeln!(text, "{}", if cmp.holds() { "holds" } else { "fails" });
                Outcome::check(cmp.holds(), text)
            }
            VerifyCommand::AicToPrio => {
                let c = check_aics_against_priority(&ws.aic_analysis()?, &limits)?;
                let mut text = lines(c.describe());
                let _ = writeln!(text, "{}", if c.holds() { "holds" } else { "fails" });
                Outcome::check(c.holds(), text)
            }
        },
    })
}

fn classification_line(u: &Update, c: &Classification) -> String {
    format!(
        "{}: founded={} well-founded={} grounded={} justified={}",
        format_update(u),
        yes_no(c.founded),
        yes_no(c.well_founded),
        yes_no(c.grounded),
        yes_no(c.justified)
    )
}

fn translate(ws: &Workspace, command: &TranslateCommand) -> Result<Outcome> {
    Ok(match command {
        TranslateCommand::ToDenial { out } => {
            let img = to_denial(&ws.instance()?)?;
            let (s, d, c) = (
                print_schema(&img.schema),
                print_database(&img.db),
                print_constraints(&img.constraints),
            );
            let files = [("schema.txt", &*s), ("database.txt", &*d), ("constraints.txt", &*c)];
            match out {
                Some(dir) => {
                    write_files(dir, &files)?;
                    Outcome::yes(String::new())
                }
                None => Outcome::yes(sections(&files)),
            }
        }
        TranslateCommand::PrioToAic { prio_pred } => {
            let aics = match prio_pred {
                Some(p) => denial_prio_to_aics(&ws.constraints, p)?,
                None => prio_to_aics(&ws.prioritized()?).iter().map(|r| r.to_aic()).collect(),
            };
            Outcome::yes(print_aics(&aics))
        }
        TranslateCommand::AicToPrio { out } => {
            let t = aics_to_prio(&ws.aic_analysis()?);
            for w in t.warnings() {
                eprintln!("warning: {w}");
            }
            if t.cycle.is_some() {
                return Ok(Outcome::check(false, String::new()));
            }
            let (c, p) = (print_constraints(&t.constraints), print_priority(&t.priority()));
            let files = [("constraints.txt", &*c), ("priority.txt", &*p)];
            match out {
                Some(dir) => {
                    write_files(dir, &files)?;
                    Outcome::yes(String::new())
                }
                None => Outcome::yes(sections(&files)),
            }
        }
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::Budget(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.text);
            ExitCode::from(if o.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
