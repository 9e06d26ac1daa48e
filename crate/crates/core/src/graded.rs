//! Graded computations on presentations `k[vars] / H`: Hilbert functions,
//! dimension, regular elements, and grade via Koszul homology.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::filtration::{FiltrationContext, GradedQuotientPresentation, InitialDegree};
use crate::groebner::{syzygies_modulo, FreeModuleElement, ModuleGroebnerBasis};
use crate::ideal::Dimension;

/// Default `n_max` for [`colon_chain_regularity`].
pub const DEFAULT_COLON_N_MAX: u32 = 10;

/// A homogeneous element of a graded presentation, stored as its normal
/// form modulo the defining ideal.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedElement {
    representative: Polynomial,
    degree: u32,
}

impl GradedElement {
    pub fn new(representative: Polynomial, degree: u32) -> GradedElement {
        GradedElement {
            representative,
            degree,
        }
    }

    pub fn representative(&self) -> &Polynomial {
        &self.representative
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.representative.is_zero()
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (degree {})", self.representative, self.degree)
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_homogeneous(g: &GradedQuotientPresentation, b: &GradedElement) -> Result<()> {
    match b.representative.weighted_homogeneous_degree(g.weights())? {
        Some(d) if d != b.degree as u64 => Err(Error::Inhomogeneous(format!(
            "{} has degree {d}, not {}",
            b.representative, b.degree
        ))),
        _ => Ok(()),
    }
}

/// `dim_k [G]_d` for `d = 0..=upto`, by counting standard monomials.
pub fn hilbert_function(g: &GradedQuotientPresentation, upto: u32) -> Result<Vec<u64>> {
    (0..=upto)
        .map(|d| Ok(standard_monomials(g, d)?.len() as u64))
        .collect()
}

/// Standard monomials of weighted degree `d`, ascending in the ring order.
pub fn standard_monomials(g: &GradedQuotientPresentation, d: u32) -> Result<Vec<Monomial>> {
    let gb = g.ideal().gb()?;
    if gb.is_unit() {
        return Ok(vec![]);
    }
    let w = g.weights();
    let n = w.len();
    let lms = gb.leading_monomials();
    // each weight-zero variable needs a pure power among the leading monomials
    let mut bound = vec![u32::MAX; n];
    for (i, &wi) in w.iter().enumerate() {
        if wi != 0 {
            continue;
        }
        let pure = lms
            .iter()
            .filter(|m| m.exponent(i) > 0 && m.degree() == m.exponent(i))
            .map(|m| m.exponent(i))
            .min();
        match pure {
            Some(e) => bound[i] = e,
            None => return Err(Error::InfiniteComponent { degree: d }),
        }
    }
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    enumerate(w, &bound, 0, d as u64, &mut exps, &mut |e| {
        let m = Monomial::new(e.iter().copied());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
    });
    let order = g.ring().order();
    out.sort_by(|a, b| order.compare(a, b));
    Ok(out)
}

fn enumerate(
    w: &[u32],
    bound: &[u32],
    i: usize,
    left: u64,
    exps: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]),
) {
    if i == w.len() {
        if left == 0 {
            f(exps);
        }
        return;
    }
    let mut e = 0u32;
    loop {
        let used = e as u64 * w[i] as u64;
        if used > left || e >= bound[i] {
            break;
        }
        exps[i] = e;
        enumerate(w, bound, i + 1, left - used, exps, f);
        if w[i] == 0 && bound[i] == u32::MAX {
            break;
        }
        e += 1;
    }
    exps[i] = 0;
}

pub fn graded_dim(g: &GradedQuotientPresentation) -> Result<Dimension> {
    g.ideal().krull_dim()
}

/// Outcome of a regularity test; a non-regular element comes with a
/// nonzero element it annihilates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub witness: Option<Polynomial>,
}

/// Exact test of `(H : b) = H`.
pub fn is_regular_element(g: &GradedQuotientPresentation, b: &GradedElement) -> Result<RegularityVerdict> {
    check_homogeneous(g, b)?;
    let h = g.ideal();
    if h.is_unit()? {
        return Ok(RegularityVerdict {
            regular: true,
            witness: None,
        });
    }
    if b.is_zero() {
        return Ok(RegularityVerdict {
            regular: false,
            witness: Some(Polynomial::one(g.ring())),
        });
    }
    let colon = h.colon(&b.representative)?;
    for c in colon.gb()?.generators() {
        let r = h.reduce(c)?;
        if !r.is_zero() {
            return Ok(RegularityVerdict {
                regular: false,
                witness: Some(r),
            });
        }
    }
    Ok(RegularityVerdict {
        regular: true,
        witness: None,
    })
}

/// Checks `(q^(n+d) + I_M) : b = q^n + I_M` for `n = 0..=n_max`, where `d`
/// must be the initial degree of `b` modulo `I_M`.
pub fn colon_chain_regularity(ctx: &FiltrationContext, b: &Polynomial, d: u32, n_max: u32) -> Result<bool> {
    match ctx.initial_degree_in_module(b)? {
        InitialDegree::Finite(c) if c == d => {}
        other => {
            return Err(Error::Precondition(format!(
                "{b} has initial degree {other:?} modulo I_M, not {d}"
            )))
        }
    }
    for n in 0..=n_max {
        let colon = ctx.power_m(n + d)?.colon(b)?;
        if !colon.equals(&*ctx.power_m(n)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GradeValue {
    Finite(usize),
    /// The ideal generates the whole module.
    Infinite,
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Finite(g) => write!(f, "{g}"),
            GradeValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradeMethod {
    Koszul,
    RegularSequenceSearch,
    LzeroRecursion,
}

impl fmt::Display for GradeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradeMethod::Koszul => "koszul",
            GradeMethod::RegularSequenceSearch => "regular-sequence-search",
            GradeMethod::LzeroRecursion => "lzero-recursion",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradeWitness {
    /// A Koszul cycle in homological degree `index` that is not a boundary.
    Koszul { index: usize, cycle: FreeModuleElement },
    /// Generators of a nonzero degree-zero variation module at `n`.
    Lzero { n: u32, generators: Vec<Polynomial> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeReport {
    pub value: GradeValue,
    pub method: GradeMethod,
    /// Elements forming a regular sequence, each regular on the quotient by
    /// the previous ones.
    pub regular_sequence: Vec<GradedElement>,
    pub witness: Option<GradeWitness>,
    pub notes: Vec<String>,
}

fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, r, k, &mut Vec::new(), &mut out);
    out
}

/// Columns of the Koszul differential `K_k -> K_(k-1)`.
fn koszul_columns(g: &GradedQuotientPresentation, gens: &[Polynomial], k: usize) -> Vec<FreeModuleElement> {
    let r = gens.len();
    let rows = subsets(r, k - 1);
    let index: HashMap<Vec<usize>, usize> = rows.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    subsets(r, k)
        .into_iter()
        .map(|s| {
            let mut comps = vec![Polynomial::zero(g.ring()); rows.len()];
            for (j, &sj) in s.iter().enumerate() {
                let mut t = s.clone();
                t.remove(j);
                let f = if j % 2 == 0 { gens[sj].clone() } else { -&gens[sj] };
                comps[index[&t]] = f;
            }
            FreeModuleElement::new(comps).expect("one ring")
        })
        .collect()
}

/// `grade((gens), G) = r - max{i : H_i(gens; G) != 0}`.
pub fn koszul_grade(g: &GradedQuotientPresentation, gens: &[GradedElement]) -> Result<GradeReport> {
    for b in gens {
        check_homogeneous(g, b)?;
    }
    let h = g.ideal();
    let reps: Vec<Polynomial> = gens.iter().map(|b| b.representative.clone()).collect();
    if h.extend(&reps)?.is_unit()? {
        return Ok(GradeReport {
            value: GradeValue::Infinite,
            method: GradeMethod::Koszul,
            regular_sequence: vec![],
            witness: None,
            notes: vec!["the ideal generates the whole module".into()],
        });
    }
    let r = reps.len();
    let hgens = h.gb()?.generators().to_vec();
    for i in (1..=r).rev() {
        let cycles = syzygies_modulo(g.ring(), &koszul_columns(g, &reps, i), &hgens)?;
        let rank = subsets(r, i).len();
        let mut boundary: Vec<FreeModuleElement> = if i < r {
            koszul_columns(g, &reps, i + 1)
        } else {
            vec![]
        };
        for f in &hgens {
            for j in 0..rank {
                boundary.push(FreeModuleElement::unit(f, rank, j));
            }
        }
        let bgb = ModuleGroebnerBasis::new(g.ring(), rank, &boundary)?;
        for z in cycles {
            let nf = bgb.normal_form(&z)?;
            if !nf.is_zero() {
                return Ok(GradeReport {
                    value: GradeValue::Finite(r - i),
                    method: GradeMethod::Koszul,
                    regular_sequence: vec![],
                    witness: Some(GradeWitness::Koszul { index: i, cycle: nf }),
                    notes: vec![],
                });
            }
        }
    }
    Ok(GradeReport {
        value: GradeValue::Finite(r),
        method: GradeMethod::Koszul,
        regular_sequence: vec![],
        witness: None,
        notes: vec![],
    })
}

/// Generators of the maximal homogeneous ideal: every presentation variable
/// that is nonzero in `G`, including degree-zero ones.
pub fn maximal_ideal_generators(g: &GradedQuotientPresentation) -> Result<Vec<GradedElement>> {
    let mut out = Vec::new();
    for i in 0..g.ring().nvars() {
        let v = Polynomial::var(g.ring(), i);
        let r = g.ideal().reduce(&v)?;
        if !r.is_zero() {
            out.push(GradedElement::new(r, g.weights()[i]));
        }
    }
    Ok(out)
}

/// Grade of the maximal homogeneous ideal.
pub fn depth(g: &GradedQuotientPresentation) -> Result<GradeReport> {
    let gens = maximal_ideal_generators(g)?;
    let mut report = koszul_grade(g, &gens)?;
    if gens.iter().any(|b| b.degree == 0) {
        report
            .notes
            .push("degree-zero generators of the maximal ideal were included".into());
    }
    Ok(report)
}

/// `elems` has `dim G` members and `G / (elems)` has dimension zero.
pub fn is_system_of_parameters(g: &GradedQuotientPresentation, elems: &[GradedElement]) -> Result<bool> {
    for b in elems {
        check_homogeneous(g, b)?;
    }
    let Dimension::Finite(d) = graded_dim(g)? else {
        return Ok(false);
    };
    if elems.len() != d {
        return Ok(false);
    }
    let reps: Vec<Polynomial> = elems.iter().map(|b| b.representative.clone()).collect();
    Ok(g.ideal().extend(&reps)?.krull_dim()? == Dimension::Finite(0))
}

/// Replays a regular sequence: each element must be regular on the
/// quotient by the previous ones.
pub fn verify_regular_sequence(g: &GradedQuotientPresentation, seq: &[GradedElement]) -> Result<bool> {
    let mut cur: Vec<Polynomial> = Vec::new();
    for b in seq {
        let quotient = g.quotient(&cur)?;
        let b = quotient.element(&b.representative)?;
        if b.is_zero() || !is_regular_element(&quotient, &b)?.regular {
            return Ok(false);
        }
        cur.push(b.representative.clone());
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Field};

    fn pres(vars: &[&str], ideal: &str) -> GradedQuotientPresentation {
        GradedQuotientPresentation::parse(Field::Rationals, vars, ideal).unwrap()
    }

    fn el(g: &GradedQuotientPresentation, s: &str) -> GradedElement {
        g.element(&parse_polynomial(g.ring(), s).unwrap()).unwrap()
    }

    fn cone() -> GradedQuotientPresentation {
        pres(&["X", "Y", "Z"], "X*Z, Y*Z, Y^4, Z^2")
    }

    #[test]
    fn hilbert_functions() {
        assert_eq!(hilbert_function(&pres(&["Y"], "Y^2"), 3).unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(hilbert_function(&cone(), 6).unwrap(), vec![1, 3, 3, 4, 4, 4, 4]);
        assert_eq!(hilbert_function(&pres(&["X", "Y"], "0"), 3).unwrap(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn infinite_degree_zero_part() {
        let ring = crate::algebra::Ring::new(
            Field::Rationals,
            vec!["x".into(), "y".into()],
            crate::algebra::MonomialOrder::WeightedDegRevLex(vec![0, 1]),
        )
        .unwrap();
        let id = crate::ideal::PresentedIdeal::new(&crate::ideal::Base::zero(&ring), vec![]).unwrap();
        let g = GradedQuotientPresentation::from_ideal(crate::filtration::PresentationKind::FormRing, id).unwrap();
        assert!(matches!(hilbert_function(&g, 2), Err(Error::InfiniteComponent { .. })));
    }

    #[test]
    fn dimensions() {
        assert_eq!(graded_dim(&cone()).unwrap(), Dimension::Finite(1));
        assert_eq!(graded_dim(&pres(&["X", "Y"], "0")).unwrap(), Dimension::Finite(2));
        assert_eq!(graded_dim(&pres(&["X"], "X")).unwrap(), Dimension::Finite(0));
    }

    #[test]
    fn regular_elements() {
        let g = pres(&["X", "Y"], "0");
        assert!(is_regular_element(&g, &el(&g, "X")).unwrap().regular);
        let c = cone();
        let v = is_regular_element(&c, &el(&c, "X")).unwrap();
        assert!(!v.regular);
        assert_eq!(v.witness.unwrap().to_string(), "Z");
        let g = pres(&["X", "Y"], "X^2, X*Y");
        let v = is_regular_element(&g, &el(&g, "Y")).unwrap();
        assert_eq!(v.witness.unwrap().to_string(), "X");
        assert!(g.element(&parse_polynomial(g.ring(), "X + Y^2").unwrap()).is_err());
    }

    #[test]
    fn colon_chains() {
        let sg = "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2";
        let ctx = FiltrationContext::parse(Field::Rationals, &["X", "Y", "Z"], sg, "0", "X", &[]).unwrap();
        let x = parse_polynomial(ctx.ring(), "X").unwrap();
        assert!(colon_chain_regularity(&ctx, &x, 1, 6).unwrap());
        assert!(colon_chain_regularity(&ctx, &x, 2, 6).is_err());
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "x^2, x*y", "0", "x, y", &[]).unwrap();
        let y = parse_polynomial(ctx.ring(), "y").unwrap();
        assert!(!colon_chain_regularity(&ctx, &y, 1, 4).unwrap());
        let ctx = FiltrationContext::parse(Field::Rationals, &["x"], "0", "0", "x", &[]).unwrap();
        let b = parse_polynomial(ctx.ring(), "3*x").unwrap();
        assert!(colon_chain_regularity(&ctx, &b, 1, 10).unwrap());
    }

    #[test]
    fn koszul_grades() {
        let g = pres(&["X", "Y"], "0");
        let r = koszul_grade(&g, &[el(&g, "X"), el(&g, "Y")]).unwrap();
        assert_eq!(r.value, GradeValue::Finite(2));
        let c = cone();
        let r = koszul_grade(&c, &[el(&c, "X"), el(&c, "Y"), el(&c, "Z")]).unwrap();
        assert_eq!(r.value, GradeValue::Finite(0));
        let g = pres(&["X", "Y"], "X*Y");
        assert_eq!(koszul_grade(&g, &[el(&g, "X")]).unwrap().value, GradeValue::Finite(0));
    }

    #[test]
    fn unit_ideal_has_infinite_grade() {
        let g = pres(&["X"], "X^2");
        let one = GradedElement::new(Polynomial::one(g.ring()), 0);
        assert_eq!(koszul_grade(&g, &[one]).unwrap().value, GradeValue::Infinite);
    }

    #[test]
    fn permutation_invariance() {
        let g = pres(&["X", "Y", "Z"], "X*Z");
        let a = koszul_grade(&g, &[el(&g, "X"), el(&g, "Y"), el(&g, "Z")]).unwrap();
        let b = koszul_grade(&g, &[el(&g, "Z"), el(&g, "X"), el(&g, "Y")]).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.value, GradeValue::Finite(2));
    }

    #[test]
    fn depths() {
        assert_eq!(depth(&pres(&["X", "Y"], "0")).unwrap().value, GradeValue::Finite(2));
        assert_eq!(depth(&cone()).unwrap().value, GradeValue::Finite(0));
        assert_eq!(depth(&pres(&["X", "Y"], "X")).unwrap().value, GradeValue::Finite(1));
    }

    #[test]
    fn systems_of_parameters() {
        let g = pres(&["X", "Y"], "0");
        assert!(is_system_of_parameters(&g, &[el(&g, "X"), el(&g, "Y")]).unwrap());
        assert!(!is_system_of_parameters(&g, &[el(&g, "X")]).unwrap());
        let c = cone();
        assert!(is_system_of_parameters(&c, &[el(&c, "X")]).unwrap());
    }

    #[test]
    fn regular_sequence_replay() {
        let g = pres(&["X", "Y"], "0");
        assert!(verify_regular_sequence(&g, &[el(&g, "X"), el(&g, "Y")]).unwrap());
        assert!(!verify_regular_sequence(&g, &[el(&g, "X"), el(&g, "X")]).unwrap());
    }
}
