//! Text formats: schemas, facts, constraints, priorities, queries, AICs and
//! update files.
//!
//! All formats share one lexer. Items end with `.`, `#` starts a line
//! comment, whitespace is insignificant. In term positions a name starting
//! with an uppercase letter or `_` is a variable; anything else (lowercase,
//! digits, `"quoted"`) is a constant.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::aic::{Action, Aic, Op, Update, UpdateAtom};
use crate::error::{Error, Result};
use crate::model::{sym, Atom, BodyLit, Constraint, Database, Fact, Literal, Schema, Term};
use crate::priority::PriorityRelation;
use crate::query::Query;

type Body = (Vec<BodyLit>, Vec<(Term, Term)>);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Quoted(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Arrow,
    Neq,
    Bar,
    Bang,
    Plus,
    Minus,
    ColonDash,
    Slash,
    Eq,
    Gt,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(s) => format!("`{s}`"),
            Tok::Quoted(s) => format!("\"{s}\""),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::ColonDash => "`:-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Gt => "`>`".into(),
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '~' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| Error::Syntax { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let adv = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => adv(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '"' => {
                let mut s = String::new();
                adv(1, &mut i, &mut col);
                loop {
                    match chars.get(i) {
                        None | Some('\n') => return Err(err(l0, c0, "unterminated string".into())),
                        Some('"') => {
                            adv(1, &mut i, &mut col);
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&e @ ('"' | '\\')) => s.push(e),
                                _ => return Err(err(line, col, "bad escape in string".into())),
                            }
                            adv(2, &mut i, &mut col);
                        }
                        Some(&ch) => {
                            s.push(ch);
                            adv(1, &mut i, &mut col);
                        }
                    }
                }
                out.push((Tok::Quoted(s), l0, c0));
            }
            c if is_name_char(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                col += i - start;
                out.push((Tok::Name(chars[start..i].iter().collect()), l0, c0));
            }
            _ => {
                let next = chars.get(i + 1).copied();
                let (tok, n) = match (c, next) {
                    ('-', Some('>')) => (Tok::Arrow, 2),
                    ('!', Some('=')) => (Tok::Neq, 2),
                    (':', Some('-')) => (Tok::ColonDash, 2),
                    ('(', _) => (Tok::LParen, 1),
                    (')', _) => (Tok::RParen, 1),
                    ('{', _) => (Tok::LBrace, 1),
                    ('}', _) => (Tok::RBrace, 1),
                    (',', _) => (Tok::Comma, 1),
                    ('.', _) => (Tok::Dot, 1),
                    ('|', _) => (Tok::Bar, 1),
                    ('!', _) => (Tok::Bang, 1),
                    ('+', _) => (Tok::Plus, 1),
                    ('-', _) => (Tok::Minus, 1),
                    ('/', _) => (Tok::Slash, 1),
                    ('=', _) => (Tok::Eq, 1),
                    ('>', _) => (Tok::Gt, 1),
                    _ => return Err(err(l0, c0, format!("unexpected character `{c}`"))),
                };
                adv(n, &mut i, &mut col);
                out.push((tok, l0, c0));
            }
        }
    }
    Ok(out)
}

pub(crate) struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Parser> {
        let toks = lex(text)?;
        let lines = text.lines().count().max(1);
        let last = text.lines().last().map_or(0, |l| l.chars().count());
        Ok(Parser {
            toks,
            pos: 0,
            end: (lines, last + 1),
        })
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|t| &t.0)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |t| (t.1, t.2))
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.unexpected(&t.describe())
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Name(n)) if n == kw)
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.unexpected(what),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let here = self.pos;
        let n = self.name("a number")?;
        n.parse().or_else(|_| {
            self.pos = here;
            self.error(format!("expected a number, found `{n}`"))
        })
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Quoted(s)) => {
                let t = Term::Const(sym(s));
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Name(n)) => {
                let t = if n.starts_with(|c: char| c.is_uppercase() || c == '_') {
                    Term::Var(sym(n))
                } else {
                    Term::Const(sym(n))
                };
                self.pos += 1;
                Ok(t)
            }
            _ => self.unexpected("a term"),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let pred = self.name("a predicate name")?;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) && !self.eat(&Tok::RParen) {
            loop {
                args.push(self.term()?);
                if self.eat(&Tok::RParen) {
                    break;
                }
                self.expect(Tok::Comma)?;
            }
        }
        Ok(Atom::new(&pred, args))
    }

    pub(crate) fn ground_fact(&mut self) -> Result<Fact> {
        let (line, col) = self.here();
        let a = self.atom()?;
        a.ground(&BTreeMap::new()).ok_or_else(|| Error::Syntax {
            line,
            col,
            msg: format!("`{a}` is not ground (variables start with an uppercase letter or `_`; quote such constants)"),
        })
    }

    /// `P(c,...)` or `!P(c,...)`.
    pub(crate) fn literal(&mut self) -> Result<Literal> {
        let neg = self.eat(&Tok::Bang);
        let f = self.ground_fact()?;
        Ok(if neg { Literal::neg(f) } else { Literal::pos(f) })
    }

    /// Comma-separated body items up to (not including) `->`.
    pub(crate) fn body(&mut self) -> Result<Body> {
        let mut lits = Vec::new();
        let mut neqs = Vec::new();
        if self.peek() == Some(&Tok::Arrow) {
            return Ok((lits, neqs));
        }
        loop {
            if self.is_keyword("not") && matches!(self.peek2(), Some(Tok::Name(_))) {
                self.pos += 1;
                lits.push(BodyLit::neg(self.atom()?));
            } else if self.peek2() == Some(&Tok::Neq) {
                let a = self.term()?;
                self.expect(Tok::Neq)?;
                let b = self.term()?;
                neqs.push((a, b));
            } else {
                lits.push(BodyLit::pos(self.atom()?));
            }
            if !self.eat(&Tok::Comma) {
                return Ok((lits, neqs));
            }
        }
    }

    pub(crate) fn constraint(&mut self) -> Result<Constraint> {
        let (line, col) = self.here();
        let (lits, neqs) = self.body()?;
        self.expect(Tok::Arrow)?;
        let mut head = Vec::new();
        if !(self.is_keyword("false") && self.peek2() == Some(&Tok::Dot)) {
            loop {
                head.push(self.atom()?);
                if !self.eat(&Tok::Bar) {
                    break;
                }
            }
        } else {
            self.pos += 1;
        }
        self.expect(Tok::Dot)?;
        Constraint::new(lits, neqs, head).map_err(|e| match e {
            Error::Unsafe(m) => Error::Unsafe(format!("{line}:{col}: {m}")),
            e => e,
        })
    }

    fn op(&mut self) -> Result<Op> {
        if self.eat(&Tok::Plus) {
            Ok(Op::Add)
        } else if self.eat(&Tok::Minus) {
            Ok(Op::Remove)
        } else {
            self.unexpected("`+` or `-`")
        }
    }

    pub(crate) fn items<T>(&mut self, mut item: impl FnMut(&mut Parser) -> Result<T>) -> Result<Vec<T>> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(item(self)?);
        }
        Ok(out)
    }
}

/// Schema lines `P/2.`
pub fn parse_schema(text: &str) -> Result<Schema> {
    let mut s = Schema::new();
    let mut p = Parser::new(text)?;
    while !p.at_end() {
        let name = p.name("a predicate name")?;
        p.expect(Tok::Slash)?;
        let arity = p.number()? as usize;
        p.expect(Tok::Dot)?;
        s.declare(&name, arity)?;
    }
    Ok(s)
}

/// Ground facts `P(a,b).`
pub fn parse_database(text: &str) -> Result<Database> {
    let mut p = Parser::new(text)?;
    let facts = p.items(|p| {
        let f = p.ground_fact()?;
        p.expect(Tok::Dot)?;
        Ok(f)
    })?;
    let mut schema = Schema::new();
    schema.add_facts(&facts)?;
    Ok(facts.into_iter().collect())
}

/// Constraints `body -> false.` or `body -> H1 | H2.`
pub fn parse_constraints(text: &str) -> Result<Vec<Constraint>> {
    let mut p = Parser::new(text)?;
    p.items(Parser::constraint)
}

pub fn print_schema(s: &Schema) -> String {
    let mut out = String::new();
    for (p, a) in s.predicates() {
        let _ = writeln!(out, "{p}/{a}.");
    }
    out
}

pub fn print_database(db: &Database) -> String {
    let mut out = String::new();
    for f in db {
        let _ = writeln!(out, "{f}.");
    }
    out
}

pub fn print_constraints(cs: &[Constraint]) -> String {
    let mut out = String::new();
    for c in cs {
        let _ = writeln!(out, "{c}");
    }
    out
}

/// `{l1, l2, ...}` in the literal syntax.
pub fn format_lits<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> String {
    let parts: Vec<String> = lits.into_iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn format_facts<'a>(facts: impl IntoIterator<Item = &'a Fact>) -> String {
    let parts: Vec<String> = facts.into_iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Priority lines `LIT > LIT.` and `score LIT = n.`
pub fn parse_priority(text: &str) -> Result<PriorityRelation> {
    let mut p = Parser::new(text)?;
    let mut rel = PriorityRelation::new();
    while !p.at_end() {
        if p.is_keyword("score") && matches!(p.peek2(), Some(Tok::Name(_) | Tok::Bang)) {
            p.pos += 1;
            let l = p.literal()?;
            p.expect(Tok::Eq)?;
            let n = p.number()?;
            p.expect(Tok::Dot)?;
            if rel.scores.insert(l.clone(), n).is_some_and(|old| old != n) {
                return p.error(format!("conflicting scores for {l}"));
            }
        } else {
            let a = p.literal()?;
            p.expect(Tok::Gt)?;
            let b = p.literal()?;
            p.expect(Tok::Dot)?;
            rel.edges.insert((a, b));
        }
    }
    Ok(rel)
}

/// Queries `q(X,...) :- A1, ..., An.`
pub fn parse_queries(text: &str) -> Result<Vec<Query>> {
    let mut p = Parser::new(text)?;
    p.items(|p| {
        let head = p.atom()?;
        p.expect(Tok::ColonDash)?;
        let mut body = Vec::new();
        if !p.eat(&Tok::Dot) {
            loop {
                body.push(p.atom()?);
                if p.eat(&Tok::Dot) {
                    break;
                }
                p.expect(Tok::Comma)?;
            }
        }
        Query::new(&head.pred, head.args, body)
    })
}

/// Exactly one query.
pub fn parse_query(text: &str) -> Result<Query> {
    let mut qs = parse_queries(text)?;
    if qs.len() != 1 {
        return Err(Error::Invalid(format!("expected one query, found {}", qs.len())));
    }
    Ok(qs.remove(0))
}

/// AICs `body -> {+P(..), -Q(..)}.`
pub fn parse_aics(text: &str) -> Result<Vec<Aic>> {
    let mut p = Parser::new(text)?;
    p.items(|p| {
        let (line, col) = p.here();
        let (lits, neqs) = p.body()?;
        p.expect(Tok::Arrow)?;
        p.expect(Tok::LBrace)?;
        let mut updates = Vec::new();
        if !p.eat(&Tok::RBrace) {
            loop {
                let op = p.op()?;
                updates.push(UpdateAtom { op, atom: p.atom()? });
                if p.eat(&Tok::RBrace) {
                    break;
                }
                p.expect(Tok::Comma)?;
            }
        }
        p.expect(Tok::Dot)?;
        Aic::new(lits, neqs, updates).map_err(|e| match e {
            Error::Unsafe(m) => Error::Unsafe(format!("{line}:{col}: {m}")),
            Error::Invalid(m) => Error::Invalid(format!("{line}:{col}: {m}")),
            e => e,
        })
    })
}

/// Update actions `+P(a).` / `-P(a).`
pub fn parse_update(text: &str) -> Result<Update> {
    let mut p = Parser::new(text)?;
    let acts = p.items(|p| {
        let op = p.op()?;
        let fact = p.ground_fact()?;
        p.expect(Tok::Dot)?;
        Ok(Action { fact, op })
    })?;
    Ok(acts.into_iter().collect())
}

pub fn print_aics(aics: &[Aic]) -> String {
    let mut out = String::new();
    for r in aics {
        let _ = writeln!(out, "{r}");
    }
    out
}

pub fn print_update(u: &Update) -> String {
    let mut out = String::new();
    for a in u {
        let _ = writeln!(out, "{a}.");
    }
    out
}

pub fn print_priority(rel: &PriorityRelation) -> String {
    let mut out = String::new();
    for (a, b) in &rel.edges {
        let _ = writeln!(out, "{a} > {b}.");
    }
    for (l, n) in &rel.scores {
        let _ = writeln!(out, "score {l} = {n}.");
    }
    out
}
