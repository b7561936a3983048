//! Loading the input files and inferring a schema that fits all of them.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use prirep::{
    parse_aics, parse_constraints, parse_database, parse_priority, parse_queries, parse_schema, parse_update, Aic,
    AicAnalysis, AicSet, Constraint, Database, Instance, PrioritizedDb, PriorityRelation, Query, Schema, Update,
};

#[derive(Debug, Default)]
pub struct Files {
    pub schema: Option<PathBuf>,
    pub db: Option<PathBuf>,
    pub constraints: Option<PathBuf>,
    pub priority: Option<PathBuf>,
    pub queries: Option<PathBuf>,
    pub aics: Option<PathBuf>,
}

/// Everything the command line pointed at, parsed. Missing files are empty.
pub struct Workspace {
    pub schema: Schema,
    pub db: Database,
    pub constraints: Vec<Constraint>,
    pub priority: PriorityRelation,
    pub queries: Vec<Query>,
    pub aics: Vec<Aic>,
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load<T: Default>(path: &Option<PathBuf>, parse: impl Fn(&str) -> prirep::Result<T>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => parse(&read(p)?).with_context(|| p.display().to_string()),
    }
}

pub fn load_update(path: &Path) -> Result<Update> {
    parse_update(&read(path)?).with_context(|| path.display().to_string())
}

pub fn load_database(path: &Path) -> Result<Database> {
    parse_database(&read(path)?).with_context(|| path.display().to_string())
}

impl Workspace {
    pub fn load(files: &Files, inline_query: Option<&str>) -> Result<Workspace> {
        let declared = files.schema.is_some();
        let schema = load(&files.schema, parse_schema)?;
        let db = load(&files.db, parse_database)?;
        let constraints = load(&files.constraints, parse_constraints)?;
        let priority = load(&files.priority, parse_priority)?;
        let mut queries = load(&files.queries, parse_queries)?;
        if let Some(q) = inline_query {
            queries.extend(parse_queries(q).context("--query")?);
        }
        let aics = load(&files.aics, parse_aics)?;
        let mut ws = Workspace {
            schema,
            db,
            constraints,
            priority,
            queries,
            aics,
        };
        ws.fit_schema(declared)?;
        Ok(ws)
    }

    /// Adds every predicate in use to the schema, or with a declared schema
    /// checks that they are all declared with the right arity.
    fn fit_schema(&mut self, declared: bool) -> Result<()> {
        let mut used = Schema::new();
        used.add_facts(&self.db)?;
        used.add_atoms(self.constraints.iter().flat_map(|c| c.lits.iter().map(|l| &l.atom)))?;
        used.add_atoms(self.aics.iter().flat_map(|r| r.body.lits.iter().map(|l| &l.atom)))?;
        let prio_facts = self
            .priority
            .edges
            .iter()
            .flat_map(|(a, b)| [&a.fact, &b.fact])
            .chain(self.priority.scores.keys().map(|l| &l.fact));
        used.add_facts(prio_facts)?;
        used.add_atoms(self.queries.iter().flat_map(|q| &q.body))?;
        if declared {
            for (p, n) in used.predicates() {
                match self.schema.arity(p) {
                    Some(m) if m == n => {}
                    Some(m) => anyhow::bail!(prirep::Error::Arity {
                        pred: p.to_string(),
                        expected: m,
                        found: n
                    }),
                    None => anyhow::bail!(prirep::Error::UnknownPredicate(p.to_string())),
                }
            }
        } else {
            self.schema.merge(&used)?;
        }
        Ok(())
    }

    pub fn instance(&self) -> Result<Instance> {
        Ok(Instance::new(self.schema.clone(), self.db.clone(), self.constraints.clone())?)
    }

    pub fn prioritized(&self) -> Result<PrioritizedDb> {
        Ok(PrioritizedDb::new(&self.instance()?, self.priority.clone())?)
    }

    pub fn aic_analysis(&self) -> Result<AicAnalysis> {
        let set = AicSet::new(self.schema.clone(), self.db.clone(), self.aics.clone())?;
        Ok(AicAnalysis::new(&set)?)
    }
}
