//! Machine-readable reports and their plain-text rendering.

use std::fmt::Write as _;

use formcone_core::graded::{GradeValue, GradedElement};
use formcone_core::lzero::LZeroRecord;
use serde::Serialize;

use crate::dsl::SessionSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Grade {
    Finite(usize),
    /// Serialized as the string `"inf"`.
    Infinite(String),
}

impl From<GradeValue> for Grade {
    fn from(g: GradeValue) -> Grade {
        match g {
            GradeValue::Finite(k) => Grade::Finite(k),
            GradeValue::Infinite => Grade::Infinite("inf".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LzeroRow {
    pub n: u32,
    pub vanishing: bool,
    pub stabilized_l: u32,
    pub certified: bool,
    pub status: String,
    pub generators: Vec<String>,
}

impl From<&LZeroRecord> for LzeroRow {
    fn from(r: &LZeroRecord) -> LzeroRow {
        LzeroRow {
            n: r.n,
            vanishing: r.vanishing,
            stabilized_l: r.stabilized_l,
            certified: r.certified,
            status: r.status.to_string(),
            generators: r.quotient_generators.iter().map(|g| g.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerBases {
    pub base: Vec<String>,
    pub module: Vec<String>,
    pub q: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationVar {
    pub name: String,
    pub weight: u32,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub kind: String,
    pub variables: Vec<PresentationVar>,
    pub ideal: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Form {
    pub element: String,
    pub degree: u32,
}

impl From<&GradedElement> for Form {
    fn from(g: &GradedElement) -> Form {
        Form {
            element: g.representative().to_string(),
            degree: g.degree(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulWitness {
    pub index: usize,
    pub cycle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LzeroWitness {
    pub n: u32,
    pub generators: Vec<String>,
}

/// Command-specific evidence; absent entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificates {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cm: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_module: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_local: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner_bases: Option<GroebnerBases>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<Presentation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_sequence: Option<Vec<Form>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub koszul_witness: Option<KoszulWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade_koszul: Option<Grade>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grade_recursion: Option<Grade>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recursion_steps: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lzero_witness: Option<LzeroWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan_summary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub script: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub stage: String,
    pub ms: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub command: String,
    pub field: String,
    pub vars: Vec<String>,
    pub n_max: u32,
    pub l_max: u32,
    pub window: u32,
    pub degree_cap: u32,
    pub pair_budget: u64,
    pub probe_cap: u32,
    pub search_tries: usize,
    pub seed: u64,
}

impl Parameters {
    pub fn new(command: &str, spec: &SessionSpec) -> Parameters {
        let s = &spec.settings;
        let lp = s.lzero_params();
        Parameters {
            command: command.to_string(),
            field: spec.field.to_string(),
            vars: spec.vars.clone(),
            n_max: lp.n_max,
            l_max: lp.l_max,
            window: lp.window,
            degree_cap: s.degree_cap(),
            pair_budget: s.pair_budget(),
            probe_cap: s.probe_cap(),
            search_tries: lp.search_tries,
            seed: lp.seed,
        }
    }
}

/// Field order is the serialized key order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub verdict: String,
    pub depth: Option<usize>,
    pub dim: Option<usize>,
    pub grade: Option<Grade>,
    pub sop: Option<bool>,
    pub lzero_table: Option<Vec<LzeroRow>>,
    pub band: Option<[usize; 2]>,
    pub certificates: Certificates,
    pub timings: Vec<Timing>,
    pub parameters: Parameters,
}

impl Report {
    pub fn new(verdict: impl Into<String>, parameters: Parameters) -> Report {
        Report {
            verdict: verdict.into(),
            depth: None,
            dim: None,
            grade: None,
            sop: None,
            lzero_table: None,
            band: None,
            certificates: Certificates::default(),
            timings: vec![],
            parameters,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Human-readable form; timings are left out so the text is stable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(d) = self.depth {
            let _ = writeln!(out, "depth: {d}");
        }
        if let Some(d) = self.dim {
            let _ = writeln!(out, "dim: {d}");
        }
        if let Some(g) = &self.grade {
            let _ = writeln!(out, "grade: {}", grade_text(g));
        }
        if let Some(s) = self.sop {
            let _ = writeln!(out, "system of parameters: {}", yes_no(s));
        }
        if let Some([lo, hi]) = self.band {
            let _ = writeln!(out, "band: [{lo}, {hi}]");
        }
        if let Some(rows) = &self.lzero_table {
            out.push_str(&lzero_table_text(rows));
        }
        certificates_text(&self.certificates, &mut out);
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn grade_text(g: &Grade) -> String {
    match g {
        Grade::Finite(k) => k.to_string(),
        Grade::Infinite(s) => s.clone(),
    }
}

fn lzero_table_text(rows: &[LzeroRow]) -> String {
    let mut out = String::from("   n  vanishing  l   certified  status     generators\n");
    for r in rows {
        let gens = if r.generators.is_empty() {
            "-".to_string()
        } else {
            r.generators.join(", ")
        };
        let _ = writeln!(
            out,
            "{:>4}  {:<9}  {:<3} {:<9}  {:<9}  {gens}",
            r.n,
            yes_no(r.vanishing),
            r.stabilized_l,
            yes_no(r.certified),
            r.status
        );
    }
    out
}

fn certificates_text(c: &Certificates, out: &mut String) {
    if let Some(cm) = c.cm {
        let _ = writeln!(out, "Cohen-Macaulay: {}", yes_no(cm));
    }
    if let Some(d) = c.dim_module {
        let _ = writeln!(out, "dim M: {d}");
    }
    if let Some(g) = c.graded_local {
        let _ = writeln!(out, "graded local data: {}", yes_no(g));
    }
    if let Some(gb) = &c.groebner_bases {
        let _ = writeln!(out, "Groebner basis of I_A: {}", bracket(&gb.base));
        let _ = writeln!(out, "Groebner basis of I_M: {}", bracket(&gb.module));
        let _ = writeln!(out, "Groebner basis of q + I_A: {}", bracket(&gb.q));
    }
    if let Some(p) = &c.presentation {
        let _ = writeln!(out, "{} presentation:", p.kind);
        for v in &p.variables {
            let _ = writeln!(out, "  {} (degree {}) = {}", v.name, v.weight, v.image);
        }
        let _ = writeln!(out, "  ideal: {}", bracket(&p.ideal));
    }
    if let Some(h) = &c.hilbert {
        let vals: Vec<String> = h.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "Hilbert function from degree 0: {}", vals.join(", "));
    }
    if let Some(seq) = &c.regular_sequence {
        let items: Vec<String> = seq.iter().map(|f| format!("{} (degree {})", f.element, f.degree)).collect();
        let _ = writeln!(out, "regular sequence: {}", bracket(&items));
    }
    if let Some(w) = &c.koszul_witness {
        let _ = writeln!(out, "Koszul cycle in degree {}: {}", w.index, bracket(&w.cycle));
    }
    if let Some(g) = &c.grade_koszul {
        let _ = writeln!(out, "grade from Koszul homology: {}", grade_text(g));
    }
    if let Some(g) = &c.grade_recursion {
        let _ = writeln!(out, "grade from the variation recursion: {}", grade_text(g));
    }
    if let Some(steps) = &c.recursion_steps {
        for s in steps {
            let _ = writeln!(out, "  {s}");
        }
    }
    if let Some(w) = &c.lzero_witness {
        let _ = writeln!(out, "nonzero class at n = {}: {}", w.n, bracket(&w.generators));
    }
    if let Some(s) = &c.scan_summary {
        let _ = writeln!(out, "scan: {s}");
    }
    if let Some(s) = &c.script {
        out.push_str(s);
    }
    for n in &c.notes {
        let _ = writeln!(out, "note: {n}");
    }
}

fn bracket(items: &[String]) -> String {
    format!("({})", items.join(", "))
}
