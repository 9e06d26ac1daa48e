//! Command dispatch.

use std::time::Instant;

use formcone_core::filtration::{FiltrationContext, FormTarget, GradedQuotientPresentation};
use formcone_core::graded::{depth, graded_dim, hilbert_function, koszul_grade, GradeReport, GradeValue, GradeWitness};
use formcone_core::lzero::{criterion_report, grade_via_recursion, lzero_scan};
use formcone_core::Error;

use crate::cas::{emit_cas_script, Dialect};
use crate::dsl::SessionSpec;
use crate::report::{
    Certificates, Form, GroebnerBases, KoszulWitness, LzeroRow, LzeroWitness, Parameters, Presentation,
    PresentationVar, Report, Timing,
};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Reduced Groebner bases of I_A, I_M and q + I_A
    Gb,
    /// Presentation of the form module G_M(q)
    Formring,
    /// Hilbert function of G_M(q) up to degree_cap
    Hilbert,
    /// Dimensions of G_M(q) and M
    Dim,
    /// Depth of G_M(q) with a maximal regular sequence
    Depth,
    /// Degree-zero variation modules for n = 0..n_max
    Lzero,
    /// Grade of a*G on G_M(q), by Koszul homology and by recursion
    Grade,
    /// Cohen-Macaulay verdict for G_M(q)
    CmCheck,
    /// Every invariant with cross-checks
    FullReport,
    /// Script for an external computer algebra system
    EmitCas,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Formring => "formring",
            Command::Hilbert => "hilbert",
            Command::Dim => "dim",
            Command::Depth => "depth",
            Command::Lzero => "lzero",
            Command::Grade => "grade",
            Command::CmCheck => "cm-check",
            Command::FullReport => "full-report",
            Command::EmitCas => "emit-cas",
        }
    }
}

struct Clock {
    start: Instant,
    timings: Vec<Timing>,
}

impl Clock {
    fn new() -> Clock {
        Clock {
            start: Instant::now(),
            timings: vec![],
        }
    }

    fn lap<T>(&mut self, stage: &str, f: impl FnOnce() -> Result<T, Error>) -> Result<T, Error> {
        let t = Instant::now();
        let r = f();
        self.timings.push(Timing {
            stage: stage.to_string(),
            ms: (t.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        });
        r
    }

    fn finish(mut self, report: &mut Report) {
        self.timings.push(Timing {
            stage: "total".into(),
            ms: (self.start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        });
        report.timings = self.timings;
    }
}

fn texts(ps: &[formcone_core::algebra::Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn presentation(p: &GradedQuotientPresentation) -> Result<Presentation, Error> {
    Ok(Presentation {
        kind: p.kind().to_string(),
        variables: p
            .ring()
            .vars()
            .iter()
            .zip(p.weights())
            .zip(p.labels())
            .map(|((name, &weight), image)| PresentationVar {
                name: name.clone(),
                weight,
                image: image.clone(),
            })
            .collect(),
        ideal: texts(p.ideal().gb()?.generators()),
    })
}

fn finite(d: formcone_core::ideal::Dimension) -> Option<usize> {
    d.value()
}

fn depth_value(r: &GradeReport) -> Option<usize> {
    match r.value {
        GradeValue::Finite(d) => Some(d),
        GradeValue::Infinite => None,
    }
}

fn fill_grade_report(c: &mut Certificates, r: &GradeReport) {
    c.regular_sequence = Some(r.regular_sequence.iter().map(Form::from).collect());
    match &r.witness {
        Some(GradeWitness::Koszul { index, cycle }) => {
            c.koszul_witness = Some(KoszulWitness {
                index: *index,
                cycle: texts(cycle.components()),
            })
        }
        Some(GradeWitness::Lzero { n, generators }) => {
            c.lzero_witness = Some(LzeroWitness {
                n: *n,
                generators: texts(generators),
            })
        }
        None => {}
    }
    c.notes.extend(r.notes.iter().cloned());
}

fn cm_verdict(cm: bool) -> &'static str {
    if cm {
        "Cohen-Macaulay"
    } else {
        "NOT Cohen-Macaulay"
    }
}

pub fn run_command(
    cmd: Command,
    spec: &SessionSpec,
    ctx: &FiltrationContext,
    dialect: Dialect,
) -> Result<Report, CliError> {
    let params = spec.settings.lzero_params();
    let mut report = Report::new("", Parameters::new(cmd.name(), spec));
    let mut clock = Clock::new();
    let c = &mut report.certificates;
    match cmd {
        Command::Gb => {
            let q = clock.lap("q", || ctx.power_a(1))?;
            c.groebner_bases = Some(GroebnerBases {
                base: texts(ctx.base_ring_ideal().gb().generators()),
                module: texts(ctx.module_ideal().gb().generators()),
                q: texts(q.gb()?.generators()),
            });
            report.verdict = "Groebner bases computed".into();
        }
        Command::Formring => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            c.presentation = Some(presentation(&p)?);
            c.graded_local = Some(ctx.graded_local_weights().is_some());
            report.verdict = p.to_string();
        }
        Command::Hilbert => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            let cap = spec.settings.degree_cap();
            let h = clock.lap("hilbert", || hilbert_function(&p, cap))?;
            let vals: Vec<String> = h.iter().map(|v| v.to_string()).collect();
            report.verdict = format!("H(0..={cap}) = {}", vals.join(", "));
            c.hilbert = Some(h);
        }
        Command::Dim => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            let dg = clock.lap("dim G", || graded_dim(&p))?;
            let dm = clock.lap("dim M", || ctx.module_dim())?;
            report.dim = finite(dg);
            c.dim_module = finite(dm);
            report.verdict = format!("dim G_M(q) = {dg}, dim M = {dm}");
        }
        Command::Depth => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            let r = clock.lap("depth", || depth(&p))?;
            report.depth = depth_value(&r);
            fill_grade_report(c, &r);
            report.verdict = format!("depth G_M(q) = {}", r.value);
        }
        Command::Lzero => {
            let scan = clock.lap("lzero", || lzero_scan(ctx, &params))?;
            if let Some(r) = scan.first_nonvanishing() {
                c.lzero_witness = Some(LzeroWitness {
                    n: r.n,
                    generators: texts(&r.quotient_generators),
                });
            }
            if scan.budget_hits() > 0 {
                c.notes
                    .push(format!("{} chains reached l_max = {}", scan.budget_hits(), params.l_max));
            }
            report.verdict = scan.summary();
            report.lzero_table = Some(scan.records.iter().map(LzeroRow::from).collect());
        }
        Command::Grade => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            let forms = ctx.system_forms(&p)?;
            let k = clock.lap("koszul", || koszul_grade(&p, &forms))?;
            let r = clock.lap("recursion", || grade_via_recursion(ctx, &params))?;
            if k.value != r.value {
                c.notes.push(format!(
                    "Koszul grade {} differs from recursion grade {}",
                    k.value, r.value
                ));
            }
            report.grade = Some(r.value.into());
            c.grade_koszul = Some(k.value.into());
            c.grade_recursion = Some(r.value.into());
            c.recursion_steps = Some(r.notes.clone());
            c.regular_sequence = Some(r.regular_sequence.iter().map(Form::from).collect());
            if let Some(GradeWitness::Lzero { n, generators }) = &r.witness {
                c.lzero_witness = Some(LzeroWitness {
                    n: *n,
                    generators: texts(generators),
                });
            }
            report.verdict = format!("grade {}", r.value);
        }
        Command::CmCheck => {
            let p = clock.lap("presentation", || ctx.form_presentation(FormTarget::Module))?;
            let r = clock.lap("depth", || depth(&p))?;
            let dg = clock.lap("dim", || graded_dim(&p))?;
            let (Some(d), Some(n)) = (depth_value(&r), finite(dg)) else {
                return Err(CliError::Core(Error::Precondition("G_M(q) is zero".into())));
            };
            report.depth = Some(d);
            report.dim = Some(n);
            report.band = Some([d, n]);
            c.cm = Some(d == n);
            c.dim_module = finite(ctx.module_dim()?);
            fill_grade_report(c, &r);
            report.verdict = cm_verdict(d == n).into();
        }
        Command::FullReport => {
            let r = clock.lap("report", || criterion_report(ctx, &params))?;
            report.depth = Some(r.depth);
            report.dim = Some(r.dim);
            report.grade = Some(r.grade_recursion.into());
            report.sop = Some(r.sop_flag);
            report.lzero_table = Some(r.lzero_table.iter().map(LzeroRow::from).collect());
            report.band = Some([r.predicted_band.0, r.predicted_band.1]);
            c.cm = Some(r.cm_verdict);
            c.dim_module = finite(ctx.module_dim()?);
            c.graded_local = Some(r.graded_local);
            let p = ctx.form_presentation(FormTarget::Module)?;
            c.presentation = Some(presentation(&p)?);
            fill_grade_report(c, &r.depth_report);
            c.grade_koszul = Some(r.grade_direct.into());
            c.grade_recursion = Some(r.grade_recursion.into());
            c.recursion_steps = Some(r.recursion.notes.clone());
            if let Some(w) = r.lzero_table.iter().find(|w| !w.vanishing) {
                c.lzero_witness = Some(LzeroWitness {
                    n: w.n,
                    generators: texts(&w.quotient_generators),
                });
            }
            c.scan_summary = Some(r.scan_summary.clone());
            c.notes.extend(r.notes.iter().cloned());
            report.verdict = cm_verdict(r.cm_verdict).into();
        }
        Command::EmitCas => {
            let script = emit_cas_script(spec, dialect).map_err(|e| CliError::Input(e.to_string()))?;
            c.script = Some(script);
            report.verdict = "script emitted".into();
        }
    }
    clock.finish(&mut report);
    Ok(report)
}
