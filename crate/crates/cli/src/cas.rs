//! Scripts for external computer algebra systems that recompute the form
//! module presentation, its dimension and its depth from the raw data.
//!
//! Both dialects use the same construction: the Rees algebra of `q` on
//! `M = P / I_M` by eliminating `t` from `I_M + (T_i - t q_i)`, then the
//! quotient by `q`.

use std::fmt::Write as _;

use crate::dsl::{FieldSpec, SessionSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Dialect {
    #[value(name = "m2")]
    Macaulay2,
    Singular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsupportedConstruct(pub String);

impl std::fmt::Display for UnsupportedConstruct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unsupported construct: {}", self.0)
    }
}

impl std::error::Error for UnsupportedConstruct {}

/// Largest characteristic of `ZZ/p` without a special strategy.
const M2_MAX_PRIME: u32 = 32749;
const SINGULAR_MAX_PRIME: u32 = 2_147_483_647;

fn fresh(stem: &str, taken: &[String]) -> String {
    let mut name = stem.to_string();
    while taken.contains(&name) {
        name.push('z');
    }
    name
}

struct Names {
    t: String,
    tags: Vec<String>,
}

fn names(spec: &SessionSpec) -> Names {
    let mut taken = spec.vars.clone();
    let t = fresh("t", &taken);
    taken.push(t.clone());
    let mut tags = Vec::new();
    for i in 1..=spec.q.len() {
        let v = fresh(&format!("T{i}"), &taken);
        taken.push(v.clone());
        tags.push(v);
    }
    Names { t, tags }
}

fn module_generators(spec: &SessionSpec) -> Vec<String> {
    spec.base.iter().chain(&spec.module).cloned().collect()
}

fn rees_relations(spec: &SessionSpec, n: &Names) -> Vec<String> {
    n.tags
        .iter()
        .zip(&spec.q)
        .map(|(tag, g)| format!("{tag} - {}*({g})", n.t))
        .collect()
}

pub fn emit_cas_script(spec: &SessionSpec, dialect: Dialect) -> Result<String, UnsupportedConstruct> {
    match dialect {
        Dialect::Macaulay2 => macaulay2(spec),
        Dialect::Singular => singular(spec),
    }
}

fn macaulay2(spec: &SessionSpec) -> Result<String, UnsupportedConstruct> {
    let field = match spec.field {
        FieldSpec::Rationals => "QQ".to_string(),
        FieldSpec::Prime(p) if p <= M2_MAX_PRIME => format!("ZZ/{p}"),
        FieldSpec::Prime(p) => {
            return Err(UnsupportedConstruct(format!(
                "ZZ/{p}: Macaulay2 prime fields need p <= {M2_MAX_PRIME}"
            )))
        }
    };
    let n = names(spec);
    let outer: Vec<String> = std::iter::once(n.t.clone())
        .chain(spec.vars.iter().cloned())
        .chain(n.tags.iter().cloned())
        .collect();
    let inner: Vec<String> = spec.vars.iter().chain(&n.tags).cloned().collect();
    let ideal = |gens: &[String], ring: &str| {
        if gens.is_empty() {
            format!("ideal(0_{ring})")
        } else {
            format!("ideal({})", gens.join(", "))
        }
    };
    let mut s = String::new();
    let _ = writeln!(s, "-- form module of M = A/I_M with respect to q: presentation, dimension, depth");
    let _ = writeln!(s, "needsPackage \"Depth\";");
    let _ = writeln!(s, "S = {field}[{}, MonomialOrder => Eliminate 1];", outer.join(", "));
    let _ = writeln!(s, "IM = {};", ideal(&module_generators(spec), "S"));
    let _ = writeln!(s, "K = IM + {};", ideal(&rees_relations(spec, &n), "S"));
    let _ = writeln!(s, "qS = {};", ideal(&spec.q, "S"));
    let _ = writeln!(s, "P = {field}[{}];", inner.join(", "));
    let _ = writeln!(s, "toP = map(P, S, {{0_P}} | gens P);");
    let _ = writeln!(s, "rees = toP ideal selectInSubring(1, gens gb K);");
    let _ = writeln!(s, "G = P / trim(rees + toP qS);");
    let _ = writeln!(s, "print toString gens gb ideal G;");
    let _ = writeln!(s, "print(\"dim G = \" | toString dim G);");
    let _ = writeln!(s, "print(\"depth G = \" | toString depth(ideal vars G, G^1));");
    Ok(s)
}

fn singular(spec: &SessionSpec) -> Result<String, UnsupportedConstruct> {
    let ch = match spec.field {
        FieldSpec::Rationals => 0,
        FieldSpec::Prime(p) if p <= SINGULAR_MAX_PRIME => p,
        FieldSpec::Prime(p) => {
            return Err(UnsupportedConstruct(format!(
                "characteristic {p} exceeds the Singular limit {SINGULAR_MAX_PRIME}"
            )))
        }
    };
    let n = names(spec);
    let outer: Vec<String> = std::iter::once(n.t.clone())
        .chain(spec.vars.iter().cloned())
        .chain(n.tags.iter().cloned())
        .collect();
    let inner: Vec<String> = spec.vars.iter().chain(&n.tags).cloned().collect();
    let list = |gens: &[String]| if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
    let mut k = module_generators(spec);
    k.extend(rees_relations(spec, &n));
    let mut s = String::new();
    let _ = writeln!(s, "// form module of M = A/I_M with respect to q: presentation, dimension, depth");
    let _ = writeln!(s, "LIB \"homolog.lib\";");
    let _ = writeln!(s, "ring S = {ch}, ({}), dp;", outer.join(", "));
    let _ = writeln!(s, "ideal K = {};", list(&k));
    let _ = writeln!(s, "ideal qS = {};", list(&spec.q));
    let _ = writeln!(s, "ideal rees = eliminate(K, {});", n.t);
    let _ = writeln!(s, "ring P = {ch}, ({}), dp;", inner.join(", "));
    let _ = writeln!(s, "ideal G = std(imap(S, rees) + imap(S, qS));");
    let _ = writeln!(s, "print(G);");
    let _ = writeln!(s, "\"dim G =\"; dim(G);");
    let _ = writeln!(s, "\"depth G =\"; depth(G);");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_session;

    #[test]
    fn prime_fields() {
        let spec = parse_session("field FP 7\nvars x, t\nq: x\n").unwrap();
        let m2 = emit_cas_script(&spec, Dialect::Macaulay2).unwrap();
        assert!(m2.contains("S = ZZ/7[tz, x, t, T1, MonomialOrder => Eliminate 1];"));
        let sg = emit_cas_script(&spec, Dialect::Singular).unwrap();
        assert!(sg.contains("ring S = 7, (tz, x, t, T1), dp;"));
        assert!(sg.contains("eliminate(K, tz)"));

        let big = parse_session("field FP 65537\nvars x\nq: x\n").unwrap();
        assert!(emit_cas_script(&big, Dialect::Macaulay2).is_err());
        assert!(emit_cas_script(&big, Dialect::Singular).is_ok());
    }

    #[test]
    fn trivial_ring_has_one_quotient() {
        let spec = parse_session("vars x\nq: x\n").unwrap();
        let m2 = emit_cas_script(&spec, Dialect::Macaulay2).unwrap();
        assert_eq!(m2.matches(" / ").count(), 1);
        assert!(m2.contains("IM = ideal(0_S);"));
        let sg = emit_cas_script(&spec, Dialect::Singular).unwrap();
        assert!(sg.contains("ideal K = T1 - t*(x);"));
    }
}
