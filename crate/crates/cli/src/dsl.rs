//! The line-oriented session format.
//!
//! ```text
//! field QQ            # or: field FP <p>
//! vars X, Y, Z
//! base: X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2
//! module: 0
//! q: X, Y, Z
//! a: X @ 1
//! set n_max = 10
//! ```
//!
//! `base`, `module` and `a` may be omitted or repeated; repeated lines
//! append. Expressions are stored in canonical printed form, so printing a
//! parsed session and parsing it again gives the same session.

use std::fmt;
use std::sync::Arc;

use formcone_core::algebra::{parse_polynomial, parse_polynomial_list, Field, MonomialOrder, Polynomial, Ring};
use formcone_core::filtration::{FiltrationContext, DEFAULT_PROBE_CAP};
use formcone_core::lzero::{LzeroParams, DEFAULT_L_MAX, DEFAULT_N_MAX, DEFAULT_WINDOW};
use formcone_core::oracle::DEFAULT_DEGREE_CAP;
use formcone_core::Error;

pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn field(self) -> Field {
        match self {
            FieldSpec::Rationals => Field::Rationals,
            FieldSpec::Prime(p) => Field::prime(p).expect("checked when parsed"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "FP {p}"),
        }
    }
}

/// Tunable bounds. `None` means the default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub n_max: Option<u32>,
    pub l_max: Option<u32>,
    pub window: Option<u32>,
    pub degree_cap: Option<u32>,
    pub pair_budget: Option<u64>,
    pub probe_cap: Option<u32>,
    pub search_tries: Option<u64>,
    pub seed: Option<u64>,
}

pub const SETTING_KEYS: [&str; 8] = [
    "n_max",
    "l_max",
    "window",
    "degree_cap",
    "pair_budget",
    "probe_cap",
    "search_tries",
    "seed",
];

impl Settings {
    /// Sets `key` from decimal text; the message names what went wrong.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("`{}` is not a nonnegative integer", value.trim()))?;
        let small = || u32::try_from(v).map_err(|_| format!("{v} is too large for `{key}`"));
        match key {
            "n_max" => self.n_max = Some(small()?),
            "l_max" => self.l_max = Some(small()?),
            "window" => self.window = Some(small()?),
            "degree_cap" => self.degree_cap = Some(small()?),
            "pair_budget" => self.pair_budget = Some(v),
            "probe_cap" => self.probe_cap = Some(small()?),
            "search_tries" => self.search_tries = Some(v),
            "seed" => self.seed = Some(v),
            _ => return Err(format!("unknown setting `{key}`")),
        }
        if key == "window" && v == 0 {
            return Err("`window` must be at least 1".into());
        }
        if key == "probe_cap" && v == 0 {
            return Err("`probe_cap` must be at least 1".into());
        }
        Ok(())
    }

    fn entries(&self) -> Vec<(&'static str, u64)> {
        let all = [
            ("n_max", self.n_max.map(u64::from)),
            ("l_max", self.l_max.map(u64::from)),
            ("window", self.window.map(u64::from)),
            ("degree_cap", self.degree_cap.map(u64::from)),
            ("pair_budget", self.pair_budget),
            ("probe_cap", self.probe_cap.map(u64::from)),
            ("search_tries", self.search_tries),
            ("seed", self.seed),
        ];
        all.into_iter().filter_map(|(k, v)| v.map(|v| (k, v))).collect()
    }

    pub fn lzero_params(&self) -> LzeroParams {
        let d = LzeroParams::default();
        LzeroParams {
            n_max: self.n_max.unwrap_or(DEFAULT_N_MAX),
            l_max: self.l_max.unwrap_or(DEFAULT_L_MAX),
            window: self.window.unwrap_or(DEFAULT_WINDOW),
            search_tries: self.search_tries.map(|t| t as usize).unwrap_or(d.search_tries),
            seed: self.seed.unwrap_or(d.seed),
        }
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap.unwrap_or(DEFAULT_DEGREE_CAP)
    }

    pub fn pair_budget(&self) -> u64 {
        self.pair_budget.unwrap_or(DEFAULT_PAIR_BUDGET)
    }

    pub fn probe_cap(&self) -> u32 {
        self.probe_cap.unwrap_or(DEFAULT_PROBE_CAP)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemEntry {
    pub expr: String,
    pub claimed: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub base: Vec<String>,
    pub module: Vec<String>,
    pub q: Vec<String>,
    pub system: Vec<SystemEntry>,
    pub settings: Settings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DslErrorKind {
    Syntax,
    UnknownVariable,
    Field,
    CMismatch,
    Invalid,
    /// A step budget ran out while validating.
    Budget,
    /// An internal consistency check failed while validating.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for DslError {}

fn err(kind: DslErrorKind, line: usize, column: usize, message: impl Into<String>, expected: &[&str]) -> DslError {
    DslError {
        kind,
        line,
        column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

const LINE_STARTS: [&str; 7] = ["field", "vars", "base:", "module:", "q:", "a:", "set"];

/// A polynomial list waiting for the ring: line, column of the text, text.
type Pending = (usize, usize, String);

#[derive(Default)]
struct Raw {
    field: Option<(usize, FieldSpec)>,
    vars: Option<(usize, Vec<String>)>,
    base: Vec<Pending>,
    module: Vec<Pending>,
    q: Option<Pending>,
    system: Vec<Pending>,
    settings: Settings,
}

fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_') && cs.all(|c| c.is_alphanumeric() || c == '_')
}

/// Column (1-based, in characters) of byte offset `at` in `line`.
fn column_of(line: &str, at: usize) -> usize {
    line[..at].chars().count() + 1
}

fn scan_lines(text: &str) -> Result<Raw, DslError> {
    use DslErrorKind::*;
    let mut raw = Raw::default();
    for (i, full) in text.lines().enumerate() {
        let ln = i + 1;
        let body = full.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let start = body.len() - trimmed.len();
        let word_end = trimmed
            .find(|c: char| c.is_whitespace() || c == ':')
            .unwrap_or(trimmed.len());
        let word = &trimmed[..word_end];
        let after = &trimmed[word_end..];
        let rest_at = |s: &str| start + word_end + (after.len() - s.len());
        match word {
            "field" => {
                if raw.field.is_some() {
                    return Err(err(Syntax, ln, column_of(full, start), "duplicate `field` line", &[]));
                }
                let mut parts = after.split_whitespace();
                let spec = match parts.next() {
                    Some("QQ") => FieldSpec::Rationals,
                    Some("FP") => {
                        let Some(p) = parts.next() else {
                            let at = start + word_end + after.trim_end().len();
                            return Err(err(Syntax, ln, column_of(full, at) + 1, "missing characteristic", &["prime number"]));
                        };
                        let at = rest_at(&after[after.find(p).unwrap_or(0)..]);
                        let p: u32 = p.parse().map_err(|_| {
                            err(Syntax, ln, column_of(full, at), format!("`{p}` is not a number"), &["prime number"])
                        })?;
                        if formcone_core::algebra::Field::prime(p).is_err() {
                            return Err(err(Field, ln, column_of(full, at), format!("characteristic {p} is not prime"), &["prime number"]));
                        }
                        FieldSpec::Prime(p)
                    }
                    other => {
                        let at = match other {
                            Some(w) => rest_at(&after[after.find(w).unwrap_or(0)..]),
                            None => start + word_end,
                        };
                        return Err(err(Syntax, ln, column_of(full, at), "unknown field", &["QQ", "FP"]));
                    }
                };
                if let Some(extra) = parts.next() {
                    let at = rest_at(&after[after.rfind(extra).unwrap_or(0)..]);
                    return Err(err(Syntax, ln, column_of(full, at), "unexpected text after the field", &["end of line"]));
                }
                raw.field = Some((ln, spec));
            }
            "vars" => {
                if raw.vars.is_some() {
                    return Err(err(Syntax, ln, column_of(full, start), "duplicate `vars` line", &[]));
                }
                let list = after.strip_prefix(':').unwrap_or(after);
                let mut names = Vec::new();
                let mut offset = rest_at(list);
                for piece in list.split(',') {
                    let name = piece.trim();
                    let at = offset + (piece.len() - piece.trim_start().len());
                    if !is_identifier(name) {
                        return Err(err(Syntax, ln, column_of(full, at), format!("`{name}` is not a variable name"), &["identifier"]));
                    }
                    if names.iter().any(|n| n == name) {
                        return Err(err(Invalid, ln, column_of(full, at), format!("variable `{name}` declared twice"), &[]));
                    }
                    names.push(name.to_string());
                    offset += piece.len() + 1;
                }
                raw.vars = Some((ln, names));
            }
            "base" | "module" | "q" | "a" => {
                let Some(list) = after.strip_prefix(':') else {
                    let at = start + word_end;
                    return Err(err(Syntax, ln, column_of(full, at), format!("missing `:` after `{word}`"), &[":"]));
                };
                let pending = (ln, column_of(full, rest_at(list)), list.to_string());
                match word {
                    "base" => raw.base.push(pending),
                    "module" => raw.module.push(pending),
                    "a" => raw.system.push(pending),
                    _ => {
                        if raw.q.is_some() {
                            return Err(err(Syntax, ln, column_of(full, start), "duplicate `q` line", &[]));
                        }
                        raw.q = Some(pending);
                    }
                }
            }
            "set" => {
                let Some((key, value)) = after.split_once('=') else {
                    let at = start + word_end + after.trim_end().len();
                    return Err(err(Syntax, ln, column_of(full, at) + 1, "missing `=`", &["="]));
                };
                let key = key.trim();
                let key_at = rest_at(&after[after.find(key).unwrap_or(0)..]);
                if !SETTING_KEYS.contains(&key) {
                    return Err(err(Syntax, ln, column_of(full, key_at), format!("unknown setting `{key}`"), &SETTING_KEYS));
                }
                let value_at = start + word_end + after.find('=').unwrap_or(0) + 1;
                raw.settings
                    .set(key, value)
                    .map_err(|m| err(Invalid, ln, column_of(full, value_at) + 1, m, &["integer"]))?;
            }
            _ => return Err(err(Syntax, ln, column_of(full, start), format!("unknown keyword `{word}`"), &LINE_STARTS)),
        }
    }
    Ok(raw)
}

fn from_core(e: Error, line: usize, column: usize) -> DslError {
    match e {
        Error::Parse {
            column: c,
            message,
            expected,
        } => {
            let kind = if message.starts_with("unknown variable") {
                DslErrorKind::UnknownVariable
            } else {
                DslErrorKind::Syntax
            };
            DslError {
                kind,
                line,
                column: column + c - 1,
                message,
                expected,
            }
        }
        Error::UnknownVariable(v) => err(DslErrorKind::UnknownVariable, line, column, format!("unknown variable `{v}`"), &[]),
        other => err(core_kind(&other), line, column, other.to_string(), &[]),
    }
}

fn core_kind(e: &Error) -> DslErrorKind {
    match e {
        Error::Budget(_) => DslErrorKind::Budget,
        Error::Internal(_) => DslErrorKind::Internal,
        _ => DslErrorKind::Invalid,
    }
}

fn parse_list(ring: &Arc<Ring>, p: &Pending) -> Result<Vec<Polynomial>, DslError> {
    parse_polynomial_list(ring, &p.2).map_err(|e| from_core(e, p.0, p.1))
}

/// Splits `expr @ c`; returns the expression, its column offset and the claim.
fn parse_system_entry(ring: &Arc<Ring>, line: usize, column: usize, text: &str) -> Result<(Polynomial, Option<u32>), DslError> {
    let (expr, claim) = match text.split_once('@') {
        Some((e, c)) => {
            let at = column + e.chars().count() + 1;
            let c = c.trim();
            let k: u32 = c
                .parse()
                .map_err(|_| err(DslErrorKind::Syntax, line, at + 1, format!("`{c}` is not an initial degree"), &["integer"]))?;
            (e, Some(k))
        }
        None => (text, None),
    };
    let f = parse_polynomial(ring, expr).map_err(|e| from_core(e, line, column))?;
    Ok((f, claim))
}

fn texts(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|f| f.to_string()).collect()
}

/// Parses and validates a session, returning it with its context.
pub fn load_session(text: &str) -> Result<(SessionSpec, FiltrationContext), DslError> {
    use DslErrorKind::*;
    let raw = scan_lines(text)?;
    let last = text.lines().count() + 1;
    let field = raw.field.map(|(_, f)| f).unwrap_or(FieldSpec::Rationals);
    let Some((vars_line, vars)) = raw.vars else {
        return Err(err(Syntax, last, 1, "missing `vars` line", &["vars"]));
    };
    let Some(q_pending) = raw.q else {
        return Err(err(Syntax, last, 1, "missing `q` line", &["q:"]));
    };
    let ring = Ring::with_budget(field.field(), vars.clone(), MonomialOrder::DegRevLex, raw.settings.pair_budget())
        .map_err(|e| err(Invalid, vars_line, 1, e.to_string(), &[]))?;
    let mut base = Vec::new();
    for p in &raw.base {
        base.extend(parse_list(&ring, p)?);
    }
    let mut module = Vec::new();
    for p in &raw.module {
        module.extend(parse_list(&ring, p)?);
    }
    let q = parse_list(&ring, &q_pending)?;
    let mut system = Vec::new();
    let mut lines = Vec::new();
    for (ln, col, list) in &raw.system {
        let mut offset = 0;
        for piece in list.split(',') {
            if !piece.trim().is_empty() {
                let entry = parse_system_entry(&ring, *ln, col + offset, piece)?;
                if !entry.0.is_zero() {
                    system.push(entry);
                    lines.push((*ln, col + offset + (piece.len() - piece.trim_start().len())));
                }
            }
            offset += piece.chars().count() + 1;
        }
    }

    let bare = FiltrationContext::new(&ring, &base, &module, &q, &[], raw.settings.probe_cap())
        .map_err(|e| err(core_kind(&e), q_pending.0, 1, e.to_string(), &[]))?;
    for (entry, (ln, col)) in system.iter().zip(&lines) {
        bare.with_system(std::slice::from_ref(entry)).map_err(|e| {
            let kind = match core_kind(&e) {
                Invalid if entry.1.is_some() && e.to_string().contains("claimed initial degree") => CMismatch,
                k => k,
            };
            err(kind, *ln, *col, e.to_string(), &[])
        })?;
    }
    let ctx = bare
        .with_system(&system)
        .map_err(|e| err(core_kind(&e), lines.first().map_or(last, |l| l.0), 1, e.to_string(), &[]))?;
    let spec = SessionSpec {
        field,
        vars,
        base: texts(&base),
        module: texts(&module),
        q: texts(&q),
        system: system
            .iter()
            .map(|(f, c)| SystemEntry {
                expr: f.to_string(),
                claimed: *c,
            })
            .collect(),
        settings: raw.settings,
    };
    Ok((spec, ctx))
}

pub fn parse_session(text: &str) -> Result<SessionSpec, DslError> {
    load_session(text).map(|(s, _)| s)
}

impl fmt::Display for SessionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[String]| if v.is_empty() { "0".to_string() } else { v.join(", ") };
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "vars {}", self.vars.join(", "))?;
        writeln!(f, "base: {}", list(&self.base))?;
        writeln!(f, "module: {}", list(&self.module))?;
        writeln!(f, "q: {}", list(&self.q))?;
        for e in &self.system {
            match e.claimed {
                Some(c) => writeln!(f, "a: {} @ {c}", e.expr)?,
                None => writeln!(f, "a: {}", e.expr)?,
            }
        }
        for (k, v) in self.settings.entries() {
            writeln!(f, "set {k} = {v}")?;
        }
        Ok(())
    }
}
