//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use formcone_core::algebra::{Field, Monomial, Polynomial, Ring};
use formcone_core::filtration::{FiltrationContext, FormTarget, GradedQuotientPresentation};
use formcone_core::graded::{graded_dim, hilbert_function, is_regular_element, koszul_grade, GradeValue};
use formcone_core::groebner::{buchberger, is_groebner};
use formcone_core::ideal::{Base, Dimension, PresentedIdeal};
use formcone_core::lzero::{
    criterion_report, grade_via_recursion, lzero_scan, radical_invariance_check, regular_element_equivalence,
    squared_system, Agreement, LzeroParams,
};
use formcone_core::oracle::{
    colon_kernel, component_basis, hilbert_via_lengths, lzero_agreement, span_membership, truncated_regularity,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{corpus, Instance, SEMIGROUP};

const CORPUS_SIZE: usize = 40;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn semigroup(q: &str, a: &[&str]) -> FiltrationContext {
    FiltrationContext::parse(Field::Rationals, &["X", "Y", "Z"], SEMIGROUP, "0", q, a).expect("semigroup context")
}

fn ideal_equals(g: &GradedQuotientPresentation, gens: &str) -> bool {
    let base = Base::zero(g.ring());
    let other = PresentedIdeal::parse(&base, gens).expect("parse");
    g.ideal().equals(&other).expect("compare")
}

fn tangent_cone() -> Outcome {
    let ctx = semigroup("X, Y, Z", &["X @ 1"]);
    let g = ctx.form_presentation(FormTarget::Ring).map_err(|e| e.to_string())?;
    ensure(ideal_equals(&g, "X*Z, Y*Z, Y^4, Z^2"), || format!("got {g}"))?;
    Ok(format!("G_A(m) = {g}"))
}

fn verdicts() -> Outcome {
    let p = LzeroParams::default();
    let ctx = semigroup("X, Y, Z", &["X @ 1"]);
    let dim_a = PresentedIdeal::zero(ctx.base_ring_ideal()).krull_dim().map_err(|e| e.to_string())?;
    ensure(dim_a == Dimension::Finite(1), || format!("dim A = {dim_a}"))?;
    let r = criterion_report(&ctx, &p).map_err(|e| e.to_string())?;
    ensure((r.dim, r.depth, r.cm_verdict) == (1, 0, false), || {
        format!("dim G = {}, depth G = {}, cm = {}", r.dim, r.depth, r.cm_verdict)
    })?;
    let first = r
        .lzero_table
        .iter()
        .find(|rec| !rec.vanishing)
        .ok_or("Ľ⁰(x, m, A; n) vanished for all n <= 10")?;
    ensure(!first.quotient_generators.is_empty(), || "no witness".into())?;
    let principal = semigroup("X", &["X @ 1"]);
    let scan = lzero_scan(&principal, &p).map_err(|e| e.to_string())?;
    ensure(scan.all_vanish() && scan.records.len() == 11, || scan.summary())?;
    Ok(format!(
        "dim A = dim G = 1, depth 0, not CM; q = xA: {}; q = m: first nonzero at n = {} with witness {}",
        scan.summary(),
        first.n,
        first.quotient_generators[0]
    ))
}

struct CorpusRow {
    inst: Instance,
    ctx: FiltrationContext,
}

fn equivalence(rows: &[CorpusRow], p: &LzeroParams) -> Outcome {
    let (mut agree, mut raise, mut bad) = (0, 0, Vec::new());
    for row in rows {
        let c = regular_element_equivalence(&row.ctx, p).map_err(|e| format!("{}: {e}", row.inst.label()))?;
        match c.agreement {
            Agreement::Agree => agree += 1,
            Agreement::RaiseBounds => raise += 1,
            Agreement::Disagree => bad.push(row.inst.label()),
        }
    }
    ensure(bad.is_empty(), || format!("disagreements: {bad:?}"))?;
    ensure(raise * 10 <= rows.len(), || format!("{raise} of {} need larger bounds", rows.len()))?;
    Ok(format!("{} instances: {agree} agree, {raise} need larger bounds, 0 disagree", rows.len()))
}

fn grade_consistency(rows: &[CorpusRow], p: &LzeroParams) -> Outcome {
    let mut hist = [0usize; 4];
    for row in rows {
        let label = row.inst.label();
        let rec = grade_via_recursion(&row.ctx, p).map_err(|e| format!("{label}: {e}"))?;
        let pres = row.ctx.form_presentation(FormTarget::Module).map_err(|e| e.to_string())?;
        let forms = row.ctx.system_forms(&pres).map_err(|e| e.to_string())?;
        let k = koszul_grade(&pres, &forms).map_err(|e| e.to_string())?;
        ensure(rec.value == k.value, || format!("{label}: recursion {} vs Koszul {}", rec.value, k.value))?;
        if let GradeValue::Finite(g) = k.value {
            hist[g.min(3)] += 1;
        }
    }
    Ok(format!(
        "{} instances match; grades 0/1/2/3+: {}/{}/{}/{}",
        rows.len(),
        hist[0],
        hist[1],
        hist[2],
        hist[3]
    ))
}

fn dimension_identity(rows: &[CorpusRow]) -> Outcome {
    for row in rows {
        let pres = row.ctx.form_presentation(FormTarget::Module).map_err(|e| e.to_string())?;
        let g = graded_dim(&pres).map_err(|e| e.to_string())?;
        let m = row.ctx.module_dim().map_err(|e| e.to_string())?;
        ensure(g == m, || format!("{}: dim G = {g}, dim M = {m}", row.inst.label()))?;
    }
    Ok(format!("{} instances", rows.len()))
}

fn band(rows: &[CorpusRow], p: &LzeroParams) -> Outcome {
    let (mut sop, mut cm) = (0, 0);
    for row in rows {
        let r = criterion_report(&row.ctx, p).map_err(|e| format!("{}: {e}", row.inst.label()))?;
        if !r.sop_flag {
            continue;
        }
        sop += 1;
        let label = row.inst.label();
        ensure(r.predicted_band == (r.depth, r.dim), || format!("{label}: band {:?}", r.predicted_band))?;
        ensure(r.cm_verdict == (r.depth == r.dim), || format!("{label}: cm flag"))?;
        ensure(r.grade_direct == GradeValue::Finite(r.depth), || format!("{label}: grade {}", r.grade_direct))?;
        if r.cm_verdict {
            cm += 1;
            ensure(r.predicted_band.0 == r.predicted_band.1, || format!("{label}: band not a point"))?;
        }
    }
    ensure(sop > 0, || "no instance has a system of parameters".into())?;
    Ok(format!("{sop} s.o.p. instances, {cm} Cohen-Macaulay"))
}

fn random_poly(ring: &Arc<Ring>, rng: &mut ChaCha8Rng, homogeneous: Option<u32>) -> Polynomial {
    let n = ring.nvars();
    let terms = rng.gen_range(1..=3);
    let mut out = Polynomial::zero(ring);
    for _ in 0..terms {
        let d = homogeneous.unwrap_or_else(|| rng.gen_range(1..=3));
        let mut e = vec![0u32; n];
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = ring.field().from_i64(rng.gen_range(-3..=3));
        out = &out + &Polynomial::monomial(ring, Monomial::new(e), c);
    }
    out
}

fn kernel_case(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let homogeneous = rng.gen_bool(0.5);
    let deg = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    while gens.len() < rng.gen_range(1..=3) {
        let g = random_poly(ring, rng, homogeneous.then_some(deg));
        if !g.is_zero() {
            gens.push(g);
        }
    }
    let e = |x: formcone_core::Error| x.to_string();
    let gb = buchberger(ring, &gens).map_err(e)?;
    let again = buchberger(ring, gb.generators()).map_err(e)?;
    ensure(again.generators() == gb.generators(), || format!("not idempotent on {gens:?}"))?;
    ensure(is_groebner(ring, gb.generators()).map_err(e)?, || format!("S-pairs do not reduce for {gens:?}"))?;
    // a combination of the generators reduces to zero
    let mut comb = Polynomial::zero(ring);
    for g in &gens {
        comb = &comb + &(&random_poly(ring, rng, None) * g);
    }
    ensure(gb.normal_form(&comb).map_err(e)?.is_zero(), || format!("combination not reduced by {gens:?}"))?;
    let base = Base::zero(ring);
    let ideal = PresentedIdeal::new(&base, gens.clone()).map_err(e)?;
    if homogeneous {
        let d = rng.gen_range(deg..=deg + 2);
        let f = random_poly(ring, rng, Some(d));
        if !f.is_zero() {
            let by_nf = gb.normal_form(&f).map_err(e)?.is_zero();
            let by_span = span_membership(&gens, &f, d).map_err(e)?;
            ensure(by_nf == by_span, || format!("membership of {f} in {gens:?}: nf {by_nf}, span {by_span}"))?;
        }
    }
    let f = random_poly(ring, rng, homogeneous.then_some(1));
    if f.is_zero() {
        return Ok(());
    }
    let colon = ideal.colon(&f).map_err(e)?;
    for g in colon.gb().map_err(e)?.generators() {
        ensure(ideal.contains(&(g * &f)).map_err(e)?, || format!("{g} * {f} not in {gens:?}"))?;
    }
    if homogeneous {
        for d in 0..=2 {
            for g in colon_kernel(&ideal, &f, d).map_err(e)? {
                ensure(colon.contains(&g).map_err(e)?, || format!("{g} missing from ({gens:?}) : {f}"))?;
            }
        }
    }
    let (sat, k) = ideal.saturate(&f).map_err(e)?;
    let at = |j: u32| ideal.colon(&f.pow(j));
    let at_k = if k == 0 { ideal.clone() } else { at(k).map_err(e)? };
    ensure(at_k.equals(&sat).map_err(e)?, || "saturation differs from the colon at its exponent".into())?;
    ensure(at(k + 1).map_err(e)?.equals(&sat).map_err(e)?, || "chain not stable at the exponent".into())?;
    if k > 0 {
        let before = if k == 1 { ideal.clone() } else { at(k - 1).map_err(e)? };
        ensure(!before.equals(&sat).map_err(e)?, || format!("exponent {k} not minimal"))?;
    }
    Ok(())
}

fn kernel_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let rings = [
        Ring::degrevlex(Field::Rationals, &["x", "y"]).expect("ring"),
        Ring::degrevlex(Field::Rationals, &["x", "y", "z"]).expect("ring"),
        Ring::degrevlex(Field::prime(7).expect("prime"), &["x", "y", "z"]).expect("ring"),
    ];
    let cases = 240;
    for i in 0..cases {
        let ring = &rings[i % rings.len()];
        kernel_case(ring, &mut rng).map_err(|m| format!("case {i}: {m}"))?;
    }
    Ok(format!("{cases} randomized cases (seed 0xacce)"))
}

fn oracle_agreement(rows: &[CorpusRow], p: &LzeroParams) -> Outcome {
    let e = |x: formcone_core::Error| x.to_string();
    let cone = semigroup("X, Y, Z", &["X"]);
    let g = cone.form_presentation(FormTarget::Module).map_err(e)?;
    let dims: Vec<u64> = (0..6)
        .map(|n| component_basis(&g, n).map(|b| b.dimension as u64))
        .collect::<Result<_, _>>()
        .map_err(e)?;
    ensure(dims == vec![1, 3, 3, 4, 4, 4], || format!("cone components {dims:?}"))?;
    ensure(hilbert_via_lengths(&cone, 5).map_err(e)? == dims, || "lengths disagree on the cone".into())?;

    let (mut regular_checks, mut lzero_checks, mut hilbert_checks) = (0, 0, 0);
    let cap = 6;
    let lp = LzeroParams { n_max: 4, ..p.clone() };
    for row in rows {
        let label = row.inst.label();
        let pres = row.ctx.form_presentation(FormTarget::Module).map_err(e)?;
        for form in row.ctx.system_forms(&pres).map_err(e)? {
            let exact = is_regular_element(&pres, &form).map_err(e)?;
            let Ok(brute) = truncated_regularity(&pres, &form, 4) else { continue };
            let witness_low = exact
                .witness
                .as_ref()
                .map(|w| w.weighted_homogeneous_degree(pres.weights()).ok().flatten().unwrap_or(u64::MAX) <= 4)
                .unwrap_or(false);
            if exact.regular {
                ensure(brute.regular, || format!("{label}: {form} regular but kernel in degree {:?}", brute.kernel_degree))?;
            } else if witness_low {
                ensure(!brute.regular, || format!("{label}: {form} has a low-degree annihilated element"))?;
            }
            if !brute.regular {
                ensure(!exact.regular, || format!("{label}: kernel found for regular {form}"))?;
            }
            regular_checks += 1;
        }
        for rec in lzero_scan(&row.ctx, &lp).map_err(e)?.records {
            ensure(lzero_agreement(&row.ctx, &rec, cap).map_err(e)?, || format!("{label}: Ľ⁰ at n = {}", rec.n))?;
            lzero_checks += 1;
        }
        if let Ok(lengths) = hilbert_via_lengths(&row.ctx, 5) {
            let h = hilbert_function(&pres, 5).map_err(e)?;
            ensure(lengths == h, || format!("{label}: Hilbert {h:?} vs lengths {lengths:?}"))?;
            hilbert_checks += 1;
        }
    }
    Ok(format!(
        "cone Hilbert 1,3,3,4,4,4; {regular_checks} regularity, {lzero_checks} Ľ⁰ (degree <= {cap}), {hilbert_checks} Hilbert comparisons"
    ))
}

fn radical_invariance(rows: &[CorpusRow], p: &LzeroParams) -> Outcome {
    let take = 12.min(rows.len());
    ensure(take >= 10, || "corpus too small".into())?;
    for row in &rows[..take] {
        let same = radical_invariance_check(&row.ctx, &squared_system(&row.ctx), p)
            .map_err(|e| format!("{}: {e}", row.inst.label()))?;
        ensure(same, || format!("{}: U differs for the squared system", row.inst.label()))?;
    }
    Ok(format!("{take} instances, n <= {}", p.n_max))
}

fn run(n: u32, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let took = t.elapsed();
    let r = r.and_then(|m| {
        if took > limit {
            Err(format!("took {took:.1?}, limit {limit:?}; {m}"))
        } else {
            Ok(m)
        }
    });
    match &r {
        Ok(m) => println!("criterion {n} ({title}): PASS in {took:.2?}; {m}"),
        Err(m) => println!("criterion {n} ({title}): FAIL in {took:.2?}; {m}"),
    }
    r.is_ok()
}

fn main() {
    let p = LzeroParams::default();
    let mut ok = true;
    ok &= run(1, "tangent cone of the semigroup ring", Duration::from_secs(10), tangent_cone);
    ok &= run(2, "semigroup ring verdicts", Duration::from_secs(60), verdicts);

    let t = Instant::now();
    let rows: Vec<CorpusRow> = corpus(CORPUS_SIZE)
        .into_iter()
        .map(|(inst, ctx)| CorpusRow { inst, ctx })
        .collect();
    println!("corpus: {} instances built in {:.2?}", rows.len(), t.elapsed());
    let enough = rows.len() >= 30;
    ok &= run(3, "regular-element equivalence", Duration::from_secs(600), || {
        ensure(enough, || "fewer than 30 instances".into())?;
        equivalence(&rows, &p)
    });
    ok &= run(4, "recursion grade equals Koszul grade", Duration::from_secs(600), || grade_consistency(&rows, &p));
    ok &= run(5, "dimension identity", Duration::from_secs(600), || dimension_identity(&rows));
    ok &= run(6, "depth/dimension band", Duration::from_secs(600), || band(&rows, &p));
    ok &= run(7, "Groebner and colon kernel properties", Duration::from_secs(300), kernel_suite);
    ok &= run(8, "truncation oracle agreement", Duration::from_secs(600), || oracle_agreement(&rows, &p));
    ok &= run(9, "radical invariance at index 0", Duration::from_secs(600), || radical_invariance(&rows, &p));
    if !ok {
        std::process::exit(1);
    }
}
