//! Degree-zero variation modules `Ľ⁰(a, q, M; n)` computed from colon
//! chains, and the grade and Cohen-Macaulay criteria built on them.
//!
//! `Ľ⁰(a, q, M; n) = U / (q^n M)` where `U` is the union over `l` of
//! `U_l = ∩_i (q^(n + l c_i) M : a_i^l)`. The chain `U_l` is ascending, so
//! a nonzero quotient at any `l` is a proof of nonvanishing. Vanishing is
//! only as good as the stopping rule, which is recorded per record.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::filtration::{FiltrationContext, FormTarget, GradedQuotientPresentation};
use crate::graded::{
    depth, graded_dim, is_regular_element, is_system_of_parameters, koszul_grade, verify_regular_sequence,
    GradeMethod, GradeReport, GradeValue, GradeWitness, GradedElement,
};
use crate::ideal::{Dimension, PresentedIdeal};

pub const DEFAULT_N_MAX: u32 = 10;
pub const DEFAULT_L_MAX: u32 = 12;
pub const DEFAULT_WINDOW: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LzeroParams {
    pub n_max: u32,
    pub l_max: u32,
    /// Consecutive equalities `U_l = U_(l+1)` needed to stop the chain.
    pub window: u32,
    /// Random combinations tried per degree when searching for a regular
    /// initial form.
    pub search_tries: usize,
    pub seed: u64,
}

impl Default for LzeroParams {
    fn default() -> Self {
        LzeroParams {
            n_max: DEFAULT_N_MAX,
            l_max: DEFAULT_L_MAX,
            window: DEFAULT_WINDOW,
            search_tries: 24,
            seed: 0x5eed,
        }
    }
}

/// Why the `l`-chain stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainStatus {
    /// `U_l` reached `∩_i (q^n M : a_i^∞)`, which contains every `U_l`.
    Saturated,
    /// `window` consecutive steps without growth.
    Stable,
    /// `l_max` reached without either of the above.
    Budget,
}

impl fmt::Display for ChainStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainStatus::Saturated => "saturated",
            ChainStatus::Stable => "stable",
            ChainStatus::Budget => "budget",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LZeroRecord {
    pub n: u32,
    /// First `l` at which the chain took its final value.
    pub stabilized_l: u32,
    /// Index of the last chain member computed, the one stored in `u`.
    pub last_l: u32,
    pub window: u32,
    /// The last chain member, an ideal of `P` containing `q^n + I_M`.
    pub u: PresentedIdeal,
    pub vanishing: bool,
    /// Groebner basis elements of `U` that are nonzero modulo `q^n + I_M`.
    pub quotient_generators: Vec<Polynomial>,
    /// True when `U` is known to be the full union.
    pub certified: bool,
    pub status: ChainStatus,
}

fn check_system(ctx: &FiltrationContext) -> Result<()> {
    if ctx.system().is_empty() {
        return Err(Error::Precondition("the system a is empty".into()));
    }
    for s in ctx.system() {
        if s.zero_flag {
            return Err(Error::Precondition(format!(
                "{} lies in q^{} modulo I_A; its initial form is undefined",
                s.element,
                ctx.probe_cap()
            )));
        }
    }
    Ok(())
}

fn meet(acc: Option<PresentedIdeal>, next: PresentedIdeal) -> Result<PresentedIdeal> {
    match acc {
        None => Ok(next),
        Some(a) if a.is_unit()? => Ok(next),
        Some(a) if next.is_unit()? => Ok(a),
        Some(a) => a.intersect(&next),
    }
}

/// `U_l = ∩_i ((q^(n + l c_i) + I_M) : a_i^l)`.
fn chain_member(ctx: &FiltrationContext, n: u32, l: u32) -> Result<PresentedIdeal> {
    let mut acc = None;
    for s in ctx.system() {
        let target = ctx.power_m(n + l * s.degree)?;
        acc = Some(meet(acc, target.colon(&s.element.pow(l))?)?);
    }
    acc.ok_or_else(|| Error::Precondition("the system a is empty".into()))
}

fn saturation_bound(ctx: &FiltrationContext, n: u32) -> Result<PresentedIdeal> {
    let target = ctx.power_m(n)?;
    let mut acc = None;
    for s in ctx.system() {
        acc = Some(meet(acc, target.saturate(&s.element)?.0)?);
    }
    acc.ok_or_else(|| Error::Precondition("the system a is empty".into()))
}

pub fn lzero_at(ctx: &FiltrationContext, n: u32, params: &LzeroParams) -> Result<LZeroRecord> {
    check_system(ctx)?;
    let target = ctx.power_m(n)?;
    let bound = saturation_bound(ctx, n)?;
    let mut u = chain_member(ctx, n, 1)?;
    if !target.is_subset(&u)? {
        return Err(Error::Internal(format!("q^{n} M is not contained in U_1")));
    }
    let (mut l, mut same, mut stable_from) = (1u32, 0u32, 1u32);
    let status = loop {
        if !u.is_subset(&bound)? {
            return Err(Error::Internal(format!(
                "U_{l} at n = {n} exceeds the intersection of the saturations"
            )));
        }
        if bound.is_subset(&u)? {
            break ChainStatus::Saturated;
        }
        if same >= params.window {
            break ChainStatus::Stable;
        }
        if l >= params.l_max {
            break ChainStatus::Budget;
        }
        let next = chain_member(ctx, n, l + 1)?;
        if !u.is_subset(&next)? {
            return Err(Error::Internal(format!("U_{l} is not contained in U_{} at n = {n}", l + 1)));
        }
        if next.is_subset(&u)? {
            same += 1;
        } else {
            same = 0;
            stable_from = l + 1;
        }
        u = next;
        l += 1;
    };
    let mut quotient_generators = Vec::new();
    for g in u.gb()?.generators() {
        let r = target.reduce(g)?;
        if !r.is_zero() && !quotient_generators.contains(&r) {
            quotient_generators.push(r);
        }
    }
    Ok(LZeroRecord {
        n,
        stabilized_l: stable_from,
        last_l: l,
        window: params.window,
        vanishing: quotient_generators.is_empty(),
        u,
        quotient_generators,
        certified: status == ChainStatus::Saturated,
        status,
    })
}

/// Records for `n = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct LzeroScan {
    pub n_max: u32,
    pub records: Vec<LZeroRecord>,
}

impl LzeroScan {
    pub fn first_nonvanishing(&self) -> Option<&LZeroRecord> {
        self.records.iter().find(|r| !r.vanishing)
    }

    pub fn all_vanish(&self) -> bool {
        self.first_nonvanishing().is_none()
    }

    /// Every vanishing verdict rests on a saturated chain.
    pub fn certified(&self) -> bool {
        self.records.iter().all(|r| r.certified || !r.vanishing)
    }

    pub fn budget_hits(&self) -> usize {
        self.records.iter().filter(|r| r.status == ChainStatus::Budget).count()
    }

    pub fn summary(&self) -> String {
        match self.first_nonvanishing() {
            Some(r) => format!("nonvanishing at n = {}", r.n),
            None => format!("vanishes for all n <= {}", self.n_max),
        }
    }
}

pub fn lzero_scan(ctx: &FiltrationContext, params: &LzeroParams) -> Result<LzeroScan> {
    scan(ctx, params, false)
}

/// Like [`lzero_scan`] but stops at the first nonvanishing `n`.
pub fn lzero_scan_until_nonvanishing(ctx: &FiltrationContext, params: &LzeroParams) -> Result<LzeroScan> {
    scan(ctx, params, true)
}

fn scan(ctx: &FiltrationContext, params: &LzeroParams, stop: bool) -> Result<LzeroScan> {
    check_system(ctx)?;
    let mut records = Vec::new();
    for n in 0..=params.n_max {
        let r = lzero_at(ctx, n, params)?;
        let done = stop && !r.vanishing;
        records.push(r);
        if done {
            break;
        }
    }
    Ok(LzeroScan {
        n_max: params.n_max,
        records,
    })
}

/// Exact test whether `a* G_A(q)` contains a `G_M(q)`-regular element,
/// i.e. whether `(H : (a*)) = H`. Otherwise returns a nonzero element of
/// `G_M` annihilated by every `a_i*`.
pub fn regular_form_exists(ctx: &FiltrationContext, pres: &GradedQuotientPresentation) -> Result<(bool, Option<Polynomial>)> {
    let h = pres.ideal();
    if h.is_unit()? {
        return Ok((true, None));
    }
    let reps: Vec<Polynomial> = ctx
        .system_forms(pres)?
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(|b| b.representative().clone())
        .collect();
    if reps.is_empty() {
        return Ok((false, Some(Polynomial::one(pres.ring()))));
    }
    let j = PresentedIdeal::new(h.base(), reps)?;
    for c in h.colon_ideal(&j)?.gb()?.generators() {
        let r = h.reduce(c)?;
        if !r.is_zero() {
            return Ok((false, Some(r)));
        }
    }
    Ok((true, None))
}

/// An element `b ∈ aA ∩ q^d` whose initial form of degree `d` is regular
/// on `G_M(q)`.
#[derive(Clone, Debug)]
pub struct RegularCandidate {
    pub element: Polynomial,
    pub degree: u32,
    pub form: GradedElement,
}

const MULTIPLIER_CAP: usize = 40;

/// Products of `k` generators of `q`.
fn multipliers(ctx: &FiltrationContext, k: u32) -> Vec<Polynomial> {
    let q = ctx.q_generators();
    let mut out = vec![Polynomial::one(ctx.ring())];
    let mut starts = vec![0usize];
    for _ in 0..k {
        let mut next = Vec::new();
        let mut next_starts = Vec::new();
        for (p, &s) in out.iter().zip(&starts) {
            for (j, f) in q.iter().enumerate().skip(s) {
                if next.len() >= MULTIPLIER_CAP {
                    break;
                }
                next.push(p * f);
                next_starts.push(j);
            }
        }
        out = next;
        starts = next_starts;
    }
    out
}

/// Searches `b = Σ λ_j m_j a_i` with `m_j` products of generators of `q`
/// and every term in `q^d`: single terms first, then the plain sum, then
/// seeded random coefficients. Each candidate is tested exactly.
pub fn find_regular_combination(
    ctx: &FiltrationContext,
    pres: &GradedQuotientPresentation,
    params: &LzeroParams,
) -> Result<Option<RegularCandidate>> {
    check_system(ctx)?;
    let degrees: Vec<u32> = ctx.system().iter().map(|s| s.degree).collect();
    let lo = *degrees.iter().min().expect("nonempty");
    let hi = *degrees.iter().max().expect("nonempty") + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let ring = ctx.ring();
    for d in lo..=hi {
        let mut terms = Vec::new();
        for s in ctx.system() {
            if s.degree > d {
                continue;
            }
            for m in multipliers(ctx, d - s.degree) {
                let t = ctx.base_ring_ideal().reduce(&(&m * &s.element))?;
                if !t.is_zero() && !terms.contains(&t) {
                    terms.push(t);
                }
            }
        }
        if terms.is_empty() {
            continue;
        }
        let mut candidates: Vec<Polynomial> = terms.clone();
        if terms.len() > 1 {
            candidates.push(terms.iter().fold(Polynomial::zero(ring), |acc, t| &acc + t));
        }
        let try_one = |b: &Polynomial| -> Result<Option<RegularCandidate>> {
            if b.is_zero() {
                return Ok(None);
            }
            let form = pres.lift(b, d)?;
            if form.is_zero() || !is_regular_element(pres, &form)?.regular {
                return Ok(None);
            }
            Ok(Some(RegularCandidate {
                element: b.clone(),
                degree: d,
                form,
            }))
        };
        for b in &candidates {
            if let Some(c) = try_one(b)? {
                return Ok(Some(c));
            }
        }
        if terms.len() > 1 {
            for k in 0..params.search_tries {
                // widen the coefficient range halfway through, which matters
                // over small prime fields
                let span: i64 = if k < params.search_tries / 2 { 2 } else { 50 };
                let b = terms.iter().fold(Polynomial::zero(ring), |acc, t| {
                    let lambda = rng.gen_range(-span..=span);
                    &acc + &t.scale(&ring.field().from_i64(lambda))
                });
                if let Some(c) = try_one(&b)? {
                    return Ok(Some(c));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    /// The scan vanished without certification while no regular form
    /// exists: larger `n_max` or `l_max` should expose a nonzero module.
    RaiseBounds,
    Disagree,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agreement::Agree => "agree",
            Agreement::RaiseBounds => "raise n_max/l_max",
            Agreement::Disagree => "disagree",
        })
    }
}

/// Both sides of the equivalence "`Ľ⁰(a, q, M; n) = 0` for all `n`" versus
/// "`a* G_A(q)` contains a `G_M(q)`-regular element".
#[derive(Clone, Debug)]
pub struct RegularElementCheck {
    pub scan: LzeroScan,
    pub regular_exists: bool,
    /// A regular combination found by the search, when one exists.
    pub regular_witness: Option<RegularCandidate>,
    /// A nonzero element of `G_M` killed by every `a_i*`, when none exists.
    pub annihilated: Option<Polynomial>,
    pub agreement: Agreement,
}

impl RegularElementCheck {
    pub fn agree(&self) -> bool {
        self.agreement == Agreement::Agree
    }
}

pub fn regular_element_equivalence(ctx: &FiltrationContext, params: &LzeroParams) -> Result<RegularElementCheck> {
    check_system(ctx)?;
    let scan = lzero_scan(ctx, params)?;
    let pres = ctx.form_presentation(FormTarget::Module)?;
    let (regular_exists, annihilated) = regular_form_exists(ctx, &pres)?;
    let regular_witness = if regular_exists {
        find_regular_combination(ctx, &pres, params)?
    } else {
        None
    };
    let agreement = match (scan.all_vanish(), regular_exists) {
        (l, r) if l == r => Agreement::Agree,
        (true, false) if !scan.certified() => Agreement::RaiseBounds,
        _ => Agreement::Disagree,
    };
    Ok(RegularElementCheck {
        scan,
        regular_exists,
        regular_witness,
        annihilated,
        agreement,
    })
}

/// `grade(a* G_A(q), G_M(q))` as the number of steps `M -> M / bM` with
/// `b ∈ aA` and `b*` regular that can be taken before `Ľ⁰` becomes nonzero.
/// The elements `b*` are returned as a regular sequence on the original
/// `G_M(q)`.
pub fn grade_via_recursion(ctx: &FiltrationContext, params: &LzeroParams) -> Result<GradeReport> {
    check_system(ctx)?;
    let mut owned: Option<FiltrationContext> = None;
    let mut steps: Vec<(Polynomial, u32)> = Vec::new();
    let mut notes = Vec::new();
    let guard = ctx.ring().nvars() + 1;
    let (value, witness) = loop {
        let cur = owned.as_ref().unwrap_or(ctx);
        if cur.module_zero().is_unit()? {
            notes.push("the quotient module became zero".to_string());
            break (GradeValue::Infinite, None);
        }
        if steps.len() > guard {
            return Err(Error::Internal(format!("recursion took more than {guard} steps")));
        }
        let scan = lzero_scan_until_nonvanishing(cur, params)?;
        if let Some(r) = scan.first_nonvanishing() {
            let w = GradeWitness::Lzero {
                n: r.n,
                generators: r.quotient_generators.clone(),
            };
            break (GradeValue::Finite(steps.len()), Some(w));
        }
        let pres = cur.form_presentation(FormTarget::Module)?;
        let Some(found) = find_regular_combination(cur, &pres, params)? else {
            let (exists, _) = regular_form_exists(cur, &pres)?;
            if exists && cur.system().iter().any(|s| s.degree == 0) {
                return Err(Error::Precondition(format!(
                    "after {} steps: a*G contains a regular element, but with a system element outside q \
                     there need not be a homogeneous one, which the recursion requires",
                    steps.len()
                )));
            }
            let msg = if exists {
                "no regular combination found although a*G contains a regular element; raise search_tries"
            } else {
                "Ľ⁰ vanished for all n <= n_max but a*G has no regular element; raise n_max or l_max"
            };
            return Err(Error::Budget(format!("after {} steps: {msg}", steps.len())));
        };
        let next = cur.quotient_by_element(&found.element)?;
        if !cur.quotient_compatibility(&next, &found.element, found.degree)? {
            return Err(Error::Internal(format!(
                "G_M / b* G_M differs from G_(M/bM) for regular b = {}",
                found.element
            )));
        }
        notes.push(format!("step {}: b = {} of degree {}", steps.len() + 1, found.element, found.degree));
        steps.push((found.element, found.degree));
        owned = Some(next);
    };
    let pres = ctx.form_presentation(FormTarget::Module)?;
    let regular_sequence = steps
        .iter()
        .map(|(b, d)| pres.lift(b, *d))
        .collect::<Result<Vec<_>>>()?;
    if !verify_regular_sequence(&pres, &regular_sequence)? {
        return Err(Error::Internal("the recursion's initial forms are not a regular sequence".into()));
    }
    Ok(GradeReport {
        value,
        method: GradeMethod::LzeroRecursion,
        regular_sequence,
        witness,
        notes,
    })
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub depth: usize,
    pub dim: usize,
    pub grade_direct: GradeValue,
    pub grade_recursion: GradeValue,
    pub lzero_table: Vec<LZeroRecord>,
    pub sop_flag: bool,
    pub cm_verdict: bool,
    /// `(depth, dim)`: the range of indices `i` where `Ľ^i` can be nonzero
    /// when the system is a system of parameters.
    pub predicted_band: (usize, usize),
    /// Some positive grading makes all the data homogeneous, so the affine
    /// computation is the local one.
    pub graded_local: bool,
    pub depth_report: GradeReport,
    pub recursion: GradeReport,
    pub scan_summary: String,
    pub notes: Vec<String>,
}

pub fn criterion_report(ctx: &FiltrationContext, params: &LzeroParams) -> Result<CriterionReport> {
    check_system(ctx)?;
    let pres = ctx.form_presentation(FormTarget::Module)?;
    let depth_report = depth(&pres)?;
    let GradeValue::Finite(depth_value) = depth_report.value else {
        return Err(Error::Precondition("G_M(q) is zero".into()));
    };
    let Dimension::Finite(dim) = graded_dim(&pres)? else {
        return Err(Error::Precondition("G_M(q) is zero".into()));
    };
    let forms = ctx.system_forms(&pres)?;
    let grade_direct = koszul_grade(&pres, &forms)?.value;
    let recursion = grade_via_recursion(ctx, params)?;
    let sop_flag = is_system_of_parameters(&pres, &forms)?;
    let scan = lzero_scan(ctx, params)?;
    let graded_local = ctx.graded_local_weights().is_some();
    let mut notes = depth_report.notes.clone();

    let mut problems = Vec::new();
    if grade_direct != recursion.value {
        problems.push(format!(
            "Koszul grade {grade_direct} differs from recursion grade {}",
            recursion.value
        ));
    }
    if sop_flag && grade_direct != GradeValue::Finite(depth_value) {
        problems.push(format!(
            "the system is a system of parameters but its grade {grade_direct} is not the depth {depth_value}"
        ));
    }
    if ctx.module_dim()? != Dimension::Finite(dim) {
        problems.push(format!("dim G_M = {dim} differs from dim M = {}", ctx.module_dim()?));
    }
    if !problems.is_empty() {
        if graded_local {
            return Err(Error::Internal(format!(
                "{}; system {:?}; recursion notes {:?}",
                problems.join("; "),
                ctx.system().iter().map(|s| s.element.to_string()).collect::<Vec<_>>(),
                recursion.notes
            )));
        }
        for p in problems {
            notes.push(format!("{p} (the data are not graded, so affine and local answers may differ)"));
        }
    }
    if !graded_local {
        notes.push("no positive grading makes the data homogeneous; results describe the affine algebra".into());
    }
    notes.push(format!(
        "Ľ^i for i >= 1 is not computed; the least i with Ľ^i != 0 is predicted to be the grade {}",
        recursion.value
    ));
    if sop_flag {
        notes.push(format!(
            "the system is a system of parameters: nonzero Ľ^i are predicted for i in [{depth_value}, {dim}], \
             nonzero at i = {} and zero afterwards",
            ctx.system().len()
        ));
        if depth_value == dim {
            notes.push(format!("Cohen-Macaulay: the only nonzero index is {dim}"));
        }
    }
    if !scan.certified() {
        notes.push(format!(
            "vanishing verdicts rest on a stabilization window of {}; nonvanishing verdicts are exact",
            params.window
        ));
    }
    if scan.budget_hits() > 0 {
        notes.push(format!("{} chains reached l_max = {}", scan.budget_hits(), params.l_max));
    }
    Ok(CriterionReport {
        depth: depth_value,
        dim,
        grade_direct,
        grade_recursion: recursion.value,
        scan_summary: scan.summary(),
        lzero_table: scan.records,
        sop_flag,
        cm_verdict: depth_value == dim,
        predicted_band: (depth_value, dim),
        graded_local,
        depth_report,
        recursion,
        notes,
    })
}

/// The system `a_i^2` with degrees `2 c_i`, which generates an ideal with
/// the same radical.
pub fn squared_system(ctx: &FiltrationContext) -> Vec<(Polynomial, u32)> {
    ctx.system()
        .iter()
        .map(|s| (s.element.pow(2), 2 * s.degree))
        .collect()
}

/// Compares the ideals `U` of both systems for `n = 0..=n_max`. The caller
/// is responsible for the two systems generating ideals with the same
/// radical; `alt` degrees need only satisfy `b_i ∈ q^(d_i)`.
/// Reruns a chain that stopped at `l_max` with up to four times the budget.
fn lzero_past_budget(ctx: &FiltrationContext, n: u32, params: &LzeroParams) -> Result<LZeroRecord> {
    let mut p = params.clone();
    loop {
        let rec = lzero_at(ctx, n, &p)?;
        if rec.status != ChainStatus::Budget {
            return Ok(rec);
        }
        if p.l_max >= 4 * params.l_max.max(1) {
            return Err(Error::Budget(format!(
                "chain at n = {n} still growing at l = {}",
                rec.last_l
            )));
        }
        p.l_max *= 2;
    }
}

pub fn radical_invariance_check(
    ctx: &FiltrationContext,
    alt: &[(Polynomial, u32)],
    params: &LzeroParams,
) -> Result<bool> {
    let other = ctx.with_system_lower_degrees(alt)?;
    for n in 0..=params.n_max {
        let a = lzero_past_budget(ctx, n, params)?;
        let b = lzero_past_budget(&other, n, params)?;
        if !a.u.equals(&b.u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Field};

    const BASE: &str = "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2";

    fn semigroup(q: &str, a: &[&str]) -> FiltrationContext {
        FiltrationContext::parse(Field::Rationals, &["X", "Y", "Z"], BASE, "0", q, a).unwrap()
    }

    fn small() -> LzeroParams {
        LzeroParams {
            n_max: 6,
            ..LzeroParams::default()
        }
    }

    #[test]
    fn principal_parameter_filtration_vanishes() {
        let ctx = semigroup("X", &["X @ 1"]);
        let scan = lzero_scan(&ctx, &small()).unwrap();
        assert!(scan.all_vanish(), "{}", scan.summary());
        assert_eq!(scan.records.len(), 7);
        for r in &scan.records {
            assert!(r.u.equals(&ctx.power_m(r.n).unwrap()).unwrap());
        }
    }

    #[test]
    fn maximal_filtration_does_not_vanish() {
        let ctx = semigroup("X, Y, Z", &["X"]);
        let scan = lzero_scan_until_nonvanishing(&ctx, &small()).unwrap();
        let r = scan.first_nonvanishing().expect("nonvanishing");
        assert_eq!(r.n, 2);
        // Z X = Y^3 lies in m^3 while Z is not in m^2
        let z = parse_polynomial(ctx.ring(), "Z").unwrap();
        assert!(r.u.contains(&z).unwrap());
        assert!(!ctx.power_m(2).unwrap().contains(&z).unwrap());
        assert!(!r.quotient_generators.is_empty());
    }

    #[test]
    fn embedded_component_example() {
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "x^2, x*y", "0", "x, y", &["y"]).unwrap();
        let r = lzero_at(&ctx, 2, &LzeroParams::default()).unwrap();
        assert!(!r.vanishing);
        let x = parse_polynomial(ctx.ring(), "x").unwrap();
        assert!(r.u.contains(&x).unwrap());
    }

    #[test]
    fn polynomial_ring_scan_and_empty_system() {
        let ctx = FiltrationContext::parse(Field::Rationals, &["x"], "0", "0", "x", &["x"]).unwrap();
        let scan = lzero_scan(&ctx, &LzeroParams::default()).unwrap();
        assert!(scan.all_vanish());
        assert_eq!(scan.records.len(), 11);
        let empty = FiltrationContext::parse(Field::Rationals, &["x"], "0", "0", "x", &[]).unwrap();
        assert!(matches!(lzero_scan(&empty, &LzeroParams::default()), Err(Error::Precondition(_))));
    }

    #[test]
    fn certified_when_saturation_is_reached() {
        // x is regular and q^n : x^inf is q^n : x^n, so the chain meets the bound
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "x^2, x*y", "0", "x, y", &["y"]).unwrap();
        let r = lzero_at(&ctx, 0, &LzeroParams::default()).unwrap();
        assert!(r.certified);
        assert_eq!(r.status, ChainStatus::Saturated);
        assert!(r.vanishing);
    }

    #[test]
    fn equivalence_on_examples() {
        let p = small();
        let c = regular_element_equivalence(&semigroup("X", &["X"]), &p).unwrap();
        assert!(c.agree() && c.regular_exists && c.scan.all_vanish());
        assert!(c.regular_witness.is_some());

        let c = regular_element_equivalence(&semigroup("X, Y, Z", &["X"]), &p).unwrap();
        assert!(c.agree() && !c.regular_exists && !c.scan.all_vanish());
        let z = c.annihilated.expect("annihilated element");
        assert_eq!(z.to_string(), "Z");

        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "0", "0", "x, y", &["x"]).unwrap();
        let c = regular_element_equivalence(&ctx, &p).unwrap();
        assert!(c.agree() && c.regular_exists);
    }

    #[test]
    fn recursion_grades() {
        let p = LzeroParams {
            n_max: 4,
            ..LzeroParams::default()
        };
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "0", "0", "x, y", &["x", "y"]).unwrap();
        let g = grade_via_recursion(&ctx, &p).unwrap();
        assert_eq!(g.value, GradeValue::Finite(2));
        assert_eq!(g.regular_sequence.len(), 2);
        assert!(matches!(g.witness, Some(GradeWitness::Lzero { .. })));

        assert_eq!(grade_via_recursion(&semigroup("X, Y, Z", &["X"]), &p).unwrap().value, GradeValue::Finite(0));
        let g = grade_via_recursion(&semigroup("X", &["X"]), &p).unwrap();
        assert_eq!(g.value, GradeValue::Finite(1));
    }

    #[test]
    fn reports() {
        let p = LzeroParams {
            n_max: 4,
            ..LzeroParams::default()
        };
        let r = criterion_report(&semigroup("X, Y, Z", &["X"]), &p).unwrap();
        assert_eq!((r.depth, r.dim), (0, 1));
        assert_eq!(r.predicted_band, (0, 1));
        assert!(!r.cm_verdict && r.sop_flag);
        assert_eq!(r.grade_direct, GradeValue::Finite(0));

        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "0", "0", "x, y", &["x", "y"]).unwrap();
        let r = criterion_report(&ctx, &p).unwrap();
        assert_eq!(r.predicted_band, (2, 2));
        assert!(r.cm_verdict);

        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "x^2, x*y", "0", "x, y", &["y"]).unwrap();
        let r = criterion_report(&ctx, &p).unwrap();
        assert_eq!((r.depth, r.dim), (0, 1));
        assert!(!r.cm_verdict);
    }

    #[test]
    fn radical_invariance() {
        let p = LzeroParams {
            n_max: 4,
            ..LzeroParams::default()
        };
        let ctx = semigroup("X", &["X"]);
        assert!(radical_invariance_check(&ctx, &squared_system(&ctx), &p).unwrap());
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "0", "0", "x, y", &["x", "y"]).unwrap();
        assert!(radical_invariance_check(&ctx, &squared_system(&ctx), &p).unwrap());
        let same: Vec<(Polynomial, u32)> = ctx.system().iter().map(|s| (s.element.clone(), s.degree)).collect();
        assert!(radical_invariance_check(&ctx, &same, &p).unwrap());
    }

    #[test]
    fn radical_invariance_extends_short_budget() {
        // y^2 = x^3, so the chain for y needs l = 2n before it reaches the unit ideal
        let p = LzeroParams {
            n_max: 5,
            l_max: 4,
            ..LzeroParams::default()
        };
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "y^2 - x^3", "0", "x, y", &["y"]).unwrap();
        assert_eq!(lzero_at(&ctx, 5, &p).unwrap().status, ChainStatus::Budget);
        assert!(radical_invariance_check(&ctx, &squared_system(&ctx), &p).unwrap());
    }
}
