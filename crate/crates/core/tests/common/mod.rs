//! Deterministic corpus of small instances shared by the integration tests.

#![allow(dead_code)]

use formcone_core::algebra::Field;
use formcone_core::filtration::FiltrationContext;
use formcone_core::graded::graded_dim;
use formcone_core::filtration::FormTarget;
use formcone_core::ideal::Dimension;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEMIGROUP: &str = "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2";

#[derive(Clone, Debug)]
pub struct Instance {
    pub vars: Vec<&'static str>,
    pub base: &'static str,
    pub q: String,
    pub system: Vec<&'static str>,
}

impl Instance {
    pub fn context(&self) -> formcone_core::Result<FiltrationContext> {
        FiltrationContext::parse(Field::Rationals, &self.vars, self.base, "0", &self.q, &self.system)
    }

    pub fn label(&self) -> String {
        format!(
            "k[{}]/({}), q = ({}), a = ({})",
            self.vars.join(","),
            self.base,
            self.q,
            self.system.join(", ")
        )
    }
}

const TWO: &[&str] = &["x", "y"];
const THREE: &[&str] = &["x", "y", "z"];

const BASES: &[(&[&str], &str)] = &[
    (TWO, "0"),
    (TWO, "x^2"),
    (TWO, "x*y"),
    (TWO, "x^2, x*y"),
    (TWO, "y^2 - x^3"),
    (TWO, "x^2*y - y^3"),
    (TWO, "x^3, y^2"),
    (THREE, "0"),
    (THREE, "x*y"),
    (THREE, "x*z, y*z"),
    (THREE, "x*y, y*z, x*z"),
    (THREE, "x*z - y^2"),
    (THREE, "y^2 - x*z, x^3 - y*z, z^2 - x^2*y"),
    (THREE, "x^4 - y*z, y^3 - x*z, z^2 - x^3*y^2"),
    (THREE, "x^2, x*y, y^3"),
];

const SYSTEMS_TWO: &[&[&str]] = &[&["x"], &["y"], &["x", "y"], &["x^2"], &["x*y"], &["y^2", "x"]];
const SYSTEMS_THREE: &[&[&str]] = &[&["x"], &["y"], &["z"], &["x", "y"], &["x", "z"], &["y", "z"], &["x*y"], &["x^2", "z"]];

/// All candidate triples in a seeded order, filtered to instances whose
/// context builds, whose data admit a positive grading, whose system lies
/// in `q`, and whose form module is nonzero.
pub fn corpus(size: usize) -> Vec<(Instance, FiltrationContext)> {
    let mut all = Vec::new();
    for &(vars, base) in BASES {
        let systems = if vars.len() == 2 { SYSTEMS_TWO } else { SYSTEMS_THREE };
        let qs = [vars.join(", "), vars[0].to_string()];
        for q in &qs {
            for sys in systems {
                all.push(Instance {
                    vars: vars.to_vec(),
                    base,
                    q: q.clone(),
                    system: sys.to_vec(),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    all.shuffle(&mut rng);
    let mut out = Vec::new();
    for inst in all {
        if out.len() == size {
            break;
        }
        let Ok(ctx) = inst.context() else { continue };
        // a ⊆ q keeps every a_i* in positive degree
        if ctx.graded_local_weights().is_none() || ctx.system().iter().any(|s| s.zero_flag || s.degree == 0) {
            continue;
        }
        let Ok(pres) = ctx.form_presentation(FormTarget::Module) else { continue };
        if matches!(graded_dim(&pres), Ok(Dimension::Empty) | Err(_)) {
            continue;
        }
        out.push((inst, ctx));
    }
    out
}
