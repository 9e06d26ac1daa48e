//! The `q`-adic filtration of a cyclic module `M = A / I_M` over
//! `A = P / I_A`: powers of `q`, initial degrees and forms, and polynomial
//! presentations of the Rees algebra and of the form ring and form module.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{parse_polynomial, parse_polynomial_list, Field, Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::graded::GradedElement;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::ideal::{Base, Dimension, PresentedIdeal};

/// Default bound for the Krull-intersection probe in [`FiltrationContext::initial_degree`].
pub const DEFAULT_PROBE_CAP: u32 = 12;

/// Initial degree of an element: `Finite(c)` when it lies in `q^c` but not
/// in `q^(c+1)`, `BeyondCap(cap)` when it lies in `q^cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialDegree {
    Finite(u32),
    BeyondCap(u32),
}

impl InitialDegree {
    pub fn finite(self) -> Option<u32> {
        match self {
            InitialDegree::Finite(c) => Some(c),
            InitialDegree::BeyondCap(_) => None,
        }
    }
}

/// An element together with its initial degree. `zero_flag` is set when
/// the element survived every power up to the probe cap, in which case its
/// initial form is taken to be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialForm {
    pub representative: Polynomial,
    pub degree: u32,
    pub zero_flag: bool,
}

/// Which quotient of `P` the filtration is taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormTarget {
    /// The ring `A` itself, giving `R_A(q)` and `G_A(q)`.
    Ring,
    /// The module `M = A / I_M`, giving `G_M(q)`.
    Module,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PresentationKind {
    Rees,
    FormRing,
    FormModule,
}

impl fmt::Display for PresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PresentationKind::Rees => "rees",
            PresentationKind::FormRing => "form-ring",
            PresentationKind::FormModule => "form-module",
        })
    }
}

/// Memoized `q^0 ⊆ ... ⊆ q^k` modulo a fixed base, each level built from
/// the Groebner basis of the previous one times the generators of `q`.
#[derive(Debug)]
struct Ladder {
    base: Arc<Base>,
    q: Vec<Polynomial>,
    levels: Mutex<Vec<Arc<PresentedIdeal>>>,
}

impl Ladder {
    fn new(base: &Arc<Base>, q: &[Polynomial]) -> Ladder {
        Ladder {
            base: base.clone(),
            q: q.to_vec(),
            levels: Mutex::new(vec![Arc::new(PresentedIdeal::unit(base))]),
        }
    }

    fn get(&self, k: u32) -> Result<Arc<PresentedIdeal>> {
        let mut levels = self
            .levels
            .lock()
            .map_err(|_| Error::Internal("power ladder lock poisoned".into()))?;
        while levels.len() <= k as usize {
            let next = if levels.len() == 1 {
                PresentedIdeal::new(&self.base, self.q.clone())?
            } else {
                let prev = levels.last().expect("nonempty");
                let mut gens: Vec<Polynomial> = Vec::new();
                for g in prev.gb()?.generators() {
                    let g = self.base.reduce(g)?;
                    if g.is_zero() {
                        continue;
                    }
                    for f in &self.q {
                        let p = self.base.reduce(&(&g * f))?;
                        if !p.is_zero() && !gens.contains(&p) {
                            gens.push(p);
                        }
                    }
                }
                PresentedIdeal::new(&self.base, gens)?
            };
            levels.push(Arc::new(next));
        }
        Ok(levels[k as usize].clone())
    }
}

/// Data of the Rees algebra `k[x, y] / H` of a quotient `P / I` with respect
/// to `q = (f_1, ..., f_s)`, where `y_j` stands for `f_j T`.
#[derive(Debug)]
struct ReesData {
    t_ring: Arc<Ring>,
    gb: GroebnerBasis,
    xy_ring: Arc<Ring>,
    weights: Vec<u32>,
    h: Vec<Polynomial>,
    nx: usize,
}

impl ReesData {
    fn build(ring: &Arc<Ring>, base: &Base, q: &[Polynomial]) -> Result<ReesData> {
        let xs: Vec<String> = ring.vars().to_vec();
        let mut ys: Vec<String> = Vec::new();
        for j in 1..=q.len() {
            let name = ring.fresh_name(&format!("y{j}"), &ys);
            ys.push(name);
        }
        let t = ring.fresh_name("T", &ys);
        let mut tv = vec![t];
        tv.extend(xs.iter().cloned());
        tv.extend(ys.iter().cloned());
        let t_ring = ring.sibling(tv, MonomialOrder::BlockElimination(1))?;
        let mut weights = vec![0u32; xs.len()];
        weights.extend(std::iter::repeat_n(1, ys.len()));
        let mut xy = xs.clone();
        xy.extend(ys.iter().cloned());
        let xy_ring = ring.sibling(xy, MonomialOrder::WeightedDegRevLex(weights.clone()))?;

        let mut gens = Vec::new();
        for g in base.gb().generators() {
            gens.push(g.map_into(&t_ring)?);
        }
        let tvar = Polynomial::var(&t_ring, 0);
        for (j, f) in q.iter().enumerate() {
            let y = Polynomial::var(&t_ring, 1 + xs.len() + j);
            gens.push(&y - &(&f.map_into(&t_ring)? * &tvar));
        }
        let gb = buchberger(&t_ring, &gens)?;
        let h = gb
            .generators()
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| g.map_into(&xy_ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReesData {
            t_ring,
            gb,
            xy_ring,
            weights,
            h,
            nx: xs.len(),
        })
    }

    /// A `y`-homogeneous representative in `k[x, y]` of `a T^c`.
    fn lift(&self, a: &Polynomial, c: u32) -> Result<Polynomial> {
        let t = Polynomial::var(&self.t_ring, 0).pow(c);
        let at = &a.map_into(&self.t_ring)? * &t;
        let r = self.gb.normal_form(&at)?;
        if r.uses_var(0) {
            return Err(Error::Internal(format!(
                "element {a} does not lie in degree {c} of the Rees algebra"
            )));
        }
        Ok(r.map_into(&self.xy_ring)?
            .weighted_component(&self.weights, c as u64))
    }
}

/// A graded quotient `k[vars] / H`, presenting a Rees algebra, form ring or
/// form module. Variables carry weights: ambient variables weight 0, the
/// symbols `y_j` for the generators of `q` weight 1.
///
/// Form presentations are trimmed: variables that lie in the defining
/// ideal are set to zero, and a symbol `y_j` whose generator is a removed
/// ambient variable takes that variable's name.
#[derive(Debug)]
pub struct GradedQuotientPresentation {
    kind: PresentationKind,
    ring: Arc<Ring>,
    weights: Vec<u32>,
    ideal: PresentedIdeal,
    labels: Vec<String>,
    dropped: Vec<String>,
    full_ideal: Vec<Polynomial>,
    images: Vec<Polynomial>,
    rees: Option<Arc<ReesData>>,
}

impl GradedQuotientPresentation {
    /// A presentation given directly by a weighted ring and an ideal.
    pub fn from_ideal(kind: PresentationKind, ideal: PresentedIdeal) -> Result<Self> {
        let ring = ideal.ring().clone();
        let weights = match ring.order() {
            MonomialOrder::WeightedDegRevLex(w) => w.clone(),
            MonomialOrder::DegRevLex => vec![1; ring.nvars()],
            other => {
                return Err(Error::Precondition(format!(
                    "graded presentation needs a weighted order, got {other:?}"
                )))
            }
        };
        for g in ideal.gb()?.generators() {
            g.weighted_homogeneous_degree(&weights)?;
        }
        let images = (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
        Ok(GradedQuotientPresentation {
            kind,
            labels: ring.vars().to_vec(),
            full_ideal: ideal.generators().to_vec(),
            ring,
            weights,
            ideal,
            dropped: vec![],
            images,
            rees: None,
        })
    }

    /// Parses `vars` (all of weight 1) and a generator list.
    pub fn parse(field: Field, vars: &[&str], ideal: &str) -> Result<Self> {
        let ring = Ring::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::WeightedDegRevLex(vec![1; vars.len()]),
        )?;
        let id = PresentedIdeal::parse(&Base::zero(&ring), ideal)?;
        Self::from_ideal(PresentationKind::FormModule, id)
    }

    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn ideal(&self) -> &PresentedIdeal {
        &self.ideal
    }

    /// One description per presentation variable.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Variables of the untrimmed presentation that were set to zero.
    pub fn dropped(&self) -> &[String] {
        &self.dropped
    }

    /// Defining ideal before trimming, in `k[x, y]`.
    pub fn untrimmed_generators(&self) -> &[Polynomial] {
        &self.full_ideal
    }

    /// Same ring, defining ideal enlarged by `extra`.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<GradedQuotientPresentation> {
        for e in extra {
            e.weighted_homogeneous_degree(&self.weights)?;
        }
        let ideal = self.ideal.extend(extra)?;
        Ok(GradedQuotientPresentation {
            kind: self.kind,
            ring: self.ring.clone(),
            weights: self.weights.clone(),
            ideal,
            labels: self.labels.clone(),
            dropped: self.dropped.clone(),
            full_ideal: self.full_ideal.clone(),
            images: self.images.clone(),
            rees: self.rees.clone(),
        })
    }

    /// Graded element from a representative in the presentation ring.
    pub fn element(&self, p: &Polynomial) -> Result<GradedElement> {
        Ring::ensure_same(&self.ring, p.ring())?;
        let r = self.ideal.reduce(p)?;
        let d = r.weighted_homogeneous_degree(&self.weights)?;
        let degree = match d {
            Some(d) => d as u32,
            None => p
                .weighted_homogeneous_degree(&self.weights)?
                .unwrap_or(0) as u32,
        };
        Ok(GradedElement::new(r, degree))
    }

    /// The class of `a T^c` (for the Rees kind) or of `a + q^(c+1)` (for
    /// the form kinds), for `a` in the ambient ring with `a ∈ q^c`.
    pub fn lift(&self, a: &Polynomial, c: u32) -> Result<GradedElement> {
        let rees = self
            .rees
            .as_ref()
            .ok_or_else(|| Error::Precondition("presentation has no ambient ring to lift from".into()))?;
        let h = rees.lift(a, c)?;
        let image = h.substitute(&self.ring, &self.images)?;
        Ok(GradedElement::new(self.ideal.reduce(&image)?, c))
    }

    /// The `y = 0` slice of the untrimmed defining ideal, moved into
    /// `ambient` by variable name.
    pub fn degree_zero_generators(&self, ambient: &Arc<Ring>) -> Result<Vec<Polynomial>> {
        let Some(rees) = &self.rees else {
            return Err(Error::Precondition("presentation has no ambient ring".into()));
        };
        let xy = &rees.xy_ring;
        let images: Vec<Polynomial> = (0..xy.nvars())
            .map(|i| {
                if i < rees.nx {
                    Polynomial::var(xy, i)
                } else {
                    Polynomial::zero(xy)
                }
            })
            .collect();
        let mut out = Vec::new();
        for g in &self.full_ideal {
            let s = g.substitute(xy, &images)?;
            if !s.is_zero() {
                out.push(s.map_into(ambient)?);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GradedQuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.weights)
            .map(|(v, w)| format!("{v}:{w}"))
            .collect();
        write!(f, "{} k[{}] / {}", self.kind, vars.join(", "), self.ideal)
    }
}

/// A system element `a_i` with its initial degree `c_i` modulo `I_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemElement {
    pub element: Polynomial,
    pub degree: u32,
    pub zero_flag: bool,
}

/// The data `(A, q, M, a)`: an ambient degrevlex ring `P`, `I_A ⊆ I_M`,
/// generators of `q`, and a system `a_1, ..., a_t` with initial degrees.
#[derive(Debug)]
pub struct FiltrationContext {
    ring: Arc<Ring>,
    base_a: Arc<Base>,
    base_m: Arc<Base>,
    q: Vec<Polynomial>,
    system: Vec<SystemElement>,
    cap: u32,
    ladder_a: Arc<Ladder>,
    ladder_m: Arc<Ladder>,
    rees_a: Arc<OnceLock<Arc<ReesData>>>,
    rees_m: OnceLock<Arc<ReesData>>,
    presentations: Mutex<Vec<((PresentationKind, FormTarget), Arc<GradedQuotientPresentation>)>>,
    weights: OnceLock<Option<Vec<u32>>>,
}

impl FiltrationContext {
    /// Validates the data: `q` proper modulo `I_A`, every `a_i` nonzero
    /// modulo `I_A`, and every claimed `c_i` equal to the initial degree.
    pub fn new(
        ring: &Arc<Ring>,
        base: &[Polynomial],
        module: &[Polynomial],
        q: &[Polynomial],
        system: &[(Polynomial, Option<u32>)],
        cap: u32,
    ) -> Result<FiltrationContext> {
        if *ring.order() != MonomialOrder::DegRevLex {
            return Err(Error::Precondition("the ambient ring must use degrevlex".into()));
        }
        let base_a = Base::new(ring, base)?;
        let mut mgens = base_a.gb().generators().to_vec();
        mgens.extend(module.iter().cloned());
        let base_m = Base::new(ring, &mgens)?;
        let q: Vec<Polynomial> = q.iter().filter(|f| !f.is_zero()).cloned().collect();
        for f in &q {
            Ring::ensure_same(ring, f.ring())?;
        }
        let ctx = FiltrationContext {
            ring: ring.clone(),
            ladder_a: Arc::new(Ladder::new(&base_a, &q)),
            ladder_m: Arc::new(Ladder::new(&base_m, &q)),
            base_a,
            base_m,
            q,
            system: vec![],
            cap,
            rees_a: Arc::new(OnceLock::new()),
            rees_m: OnceLock::new(),
            presentations: Mutex::new(vec![]),
            weights: OnceLock::new(),
        };
        if ctx.power_a(1)?.is_unit()? {
            return Err(Error::Precondition("q is the unit ideal of A".into()));
        }
        let mut checked = Vec::new();
        for (a, claimed) in system {
            checked.push(ctx.check_system_element(a, *claimed)?);
        }
        Ok(FiltrationContext { system: checked, ..ctx })
    }

    /// Builds a context from text; each system entry is `expr` or `expr @ c`.
    pub fn parse(
        field: Field,
        vars: &[&str],
        base: &str,
        module: &str,
        q: &str,
        system: &[&str],
    ) -> Result<FiltrationContext> {
        let ring = Ring::degrevlex(field, vars)?;
        let mut sys = Vec::new();
        for s in system {
            let (expr, c) = match s.split_once('@') {
                Some((e, c)) => {
                    let c: u32 = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::Precondition(format!("bad initial degree in `{s}`")))?;
                    (e, Some(c))
                }
                None => (*s, None),
            };
            sys.push((parse_polynomial(&ring, expr)?, c));
        }
        FiltrationContext::new(
            &ring,
            &parse_polynomial_list(&ring, base)?,
            &parse_polynomial_list(&ring, module)?,
            &parse_polynomial_list(&ring, q)?,
            &sys,
            DEFAULT_PROBE_CAP,
        )
    }

    fn check_system_element(&self, a: &Polynomial, claimed: Option<u32>) -> Result<SystemElement> {
        match self.initial_degree(a)? {
            InitialDegree::Finite(c) => {
                if let Some(k) = claimed {
                    if k != c {
                        return Err(Error::Precondition(format!(
                            "claimed initial degree {k} for {a}, but it lies in q^{c} and not in q^{}",
                            c + 1
                        )));
                    }
                }
                Ok(SystemElement {
                    element: a.clone(),
                    degree: c,
                    zero_flag: false,
                })
            }
            InitialDegree::BeyondCap(cap) => Ok(SystemElement {
                element: a.clone(),
                degree: claimed.unwrap_or(cap),
                zero_flag: true,
            }),
        }
    }

    /// Same data with another system; the new initial degrees are checked
    /// as in [`FiltrationContext::new`].
    pub fn with_system(&self, system: &[(Polynomial, Option<u32>)]) -> Result<FiltrationContext> {
        let mut checked = Vec::new();
        for (a, c) in system {
            Ring::ensure_same(&self.ring, a.ring())?;
            checked.push(self.check_system_element(a, *c)?);
        }
        Ok(self.derive(self.base_m.clone(), self.ladder_m.clone(), checked, false))
    }

    /// Same data with a system whose degrees are only required to satisfy
    /// `a_i ∈ q^(c_i)`, not to be exact initial degrees.
    pub fn with_system_lower_degrees(&self, system: &[(Polynomial, u32)]) -> Result<FiltrationContext> {
        let mut checked = Vec::new();
        for (a, c) in system {
            Ring::ensure_same(&self.ring, a.ring())?;
            if !self.power_a(*c)?.contains(a)? {
                return Err(Error::Precondition(format!("{a} does not lie in q^{c}")));
            }
            checked.push(SystemElement {
                element: a.clone(),
                degree: *c,
                zero_flag: false,
            });
        }
        Ok(self.derive(self.base_m.clone(), self.ladder_m.clone(), checked, false))
    }

    fn derive(
        &self,
        base_m: Arc<Base>,
        ladder_m: Arc<Ladder>,
        system: Vec<SystemElement>,
        fresh_module: bool,
    ) -> FiltrationContext {
        let rees_m = OnceLock::new();
        if !fresh_module {
            if let Some(r) = self.rees_m.get() {
                let _ = rees_m.set(r.clone());
            }
        }
        FiltrationContext {
            ring: self.ring.clone(),
            base_a: self.base_a.clone(),
            base_m,
            q: self.q.clone(),
            system,
            cap: self.cap,
            ladder_a: self.ladder_a.clone(),
            ladder_m,
            rees_a: self.rees_a.clone(),
            rees_m,
            presentations: Mutex::new(vec![]),
            weights: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base_ring_ideal(&self) -> &Arc<Base> {
        &self.base_a
    }

    pub fn module_ideal(&self) -> &Arc<Base> {
        &self.base_m
    }

    pub fn q_generators(&self) -> &[Polynomial] {
        &self.q
    }

    pub fn system(&self) -> &[SystemElement] {
        &self.system
    }

    pub fn probe_cap(&self) -> u32 {
        self.cap
    }

    /// `q^k + I_A`.
    pub fn power_a(&self, k: u32) -> Result<Arc<PresentedIdeal>> {
        self.ladder_a.get(k)
    }

    /// `q^k + I_M`.
    pub fn power_m(&self, k: u32) -> Result<Arc<PresentedIdeal>> {
        self.ladder_m.get(k)
    }

    /// `I_M` as an ideal over the base `I_M` (the zero submodule of `M`).
    pub fn module_zero(&self) -> PresentedIdeal {
        PresentedIdeal::zero(&self.base_m)
    }

    /// Krull dimension of `M`.
    pub fn module_dim(&self) -> Result<Dimension> {
        self.module_zero().krull_dim()
    }

    /// Largest `c ≤ cap` with `a ∈ q^c + I_A`.
    pub fn initial_degree(&self, a: &Polynomial) -> Result<InitialDegree> {
        self.degree_in(&self.ladder_a, a, "I_A")
    }

    /// Largest `c ≤ cap` with `a ∈ q^c + I_M`.
    pub fn initial_degree_in_module(&self, a: &Polynomial) -> Result<InitialDegree> {
        self.degree_in(&self.ladder_m, a, "I_M")
    }

    fn degree_in(&self, ladder: &Ladder, a: &Polynomial, what: &str) -> Result<InitialDegree> {
        Ring::ensure_same(&self.ring, a.ring())?;
        if ladder.base.reduce(a)?.is_zero() {
            return Err(Error::Precondition(format!("{a} is zero modulo {what}")));
        }
        for k in 1..=self.cap {
            if !ladder.get(k)?.contains(a)? {
                return Ok(InitialDegree::Finite(k - 1));
            }
        }
        Ok(InitialDegree::BeyondCap(self.cap))
    }

    pub fn initial_form(&self, a: &Polynomial) -> Result<InitialForm> {
        Ok(match self.initial_degree(a)? {
            InitialDegree::Finite(c) => InitialForm {
                representative: a.clone(),
                degree: c,
                zero_flag: false,
            },
            InitialDegree::BeyondCap(cap) => InitialForm {
                representative: a.clone(),
                degree: cap,
                zero_flag: true,
            },
        })
    }

    fn rees(&self, target: FormTarget) -> Result<Arc<ReesData>> {
        let (cell, base) = match target {
            FormTarget::Ring => (&*self.rees_a, &self.base_a),
            FormTarget::Module => (&self.rees_m, &self.base_m),
        };
        if let Some(r) = cell.get() {
            return Ok(r.clone());
        }
        let r = Arc::new(ReesData::build(&self.ring, base, &self.q)?);
        let _ = cell.set(r);
        Ok(cell.get().expect("just set").clone())
    }

    fn cached(
        &self,
        kind: (PresentationKind, FormTarget),
        build: impl FnOnce() -> Result<GradedQuotientPresentation>,
    ) -> Result<Arc<GradedQuotientPresentation>> {
        let lock = || {
            self.presentations
                .lock()
                .map_err(|_| Error::Internal("presentation cache lock poisoned".into()))
        };
        if let Some((_, p)) = lock()?.iter().find(|(k, _)| *k == kind) {
            return Ok(p.clone());
        }
        let p = Arc::new(build()?);
        let mut cache = lock()?;
        if let Some((_, existing)) = cache.iter().find(|(k, _)| *k == kind) {
            return Ok(existing.clone());
        }
        cache.push((kind, p.clone()));
        Ok(p)
    }

    /// `R(q) = k[x, y] / H` for `A` or for `M`.
    pub fn rees_presentation(&self, target: FormTarget) -> Result<Arc<GradedQuotientPresentation>> {
        self.cached((PresentationKind::Rees, target), || {
            rees_presentation_of(&self.rees(target)?)
        })
    }

    /// `G(q) = R(q) / q R(q)` for `A` (form ring) or `M` (form module).
    pub fn form_presentation(&self, target: FormTarget) -> Result<Arc<GradedQuotientPresentation>> {
        let kind = match target {
            FormTarget::Ring => PresentationKind::FormRing,
            FormTarget::Module => PresentationKind::FormModule,
        };
        self.cached((kind, target), || {
            let rees = self.rees(target)?;
            form_presentation_of(&rees, &self.q, kind)
        })
    }

    /// True when `q + I_A` is the ideal of all ambient variables.
    pub fn q_is_variable_ideal(&self) -> Result<bool> {
        let vars: Vec<Polynomial> = (0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect();
        let m = PresentedIdeal::new(&self.base_a, vars)?;
        m.equals(&*self.power_a(1)?)
    }

    /// Tangent cone of `M` via lowest forms of a homogenized Groebner basis.
    /// Requires `q` to be the ideal of all variables modulo `I_A`.
    pub fn tangent_cone_fast_path(&self) -> Result<GradedQuotientPresentation> {
        if !self.q_is_variable_ideal()? {
            return Err(Error::Precondition("q is not the ideal of all variables".into()));
        }
        let n = self.ring.nvars();
        let h = self.ring.fresh_name("h", &[]);
        let mut vars = vec![h];
        vars.extend(self.ring.vars().iter().cloned());
        let hring = self.ring.sibling(vars, MonomialOrder::BlockElimination(1))?;
        let mut gens = Vec::new();
        for g in self.base_m.gb().generators() {
            let d = g.total_degree().unwrap_or(0);
            let terms = g.terms().iter().map(|(m, c)| {
                let mut e = vec![d - m.degree()];
                e.extend_from_slice(m.exponents());
                (Monomial::new(e), c.clone())
            });
            gens.push(Polynomial::from_terms(&hring, terms));
        }
        let gb = buchberger(&hring, &gens)?;
        let cone_ring = self.ring.sibling(
            self.ring.vars().to_vec(),
            MonomialOrder::WeightedDegRevLex(vec![1; n]),
        )?;
        let mut images = vec![Polynomial::one(&cone_ring)];
        images.extend((0..n).map(|i| Polynomial::var(&cone_ring, i)));
        let mut forms = Vec::new();
        for g in gb.generators() {
            forms.push(g.substitute(&cone_ring, &images)?.lowest_form());
        }
        let ideal = PresentedIdeal::new(&Base::zero(&cone_ring), forms)?.from_gb()?;
        GradedQuotientPresentation::from_ideal(PresentationKind::FormModule, ideal)
    }

    /// The context of `M / bM`: `I_M` replaced by `I_M + (b)`.
    pub fn quotient_by_element(&self, b: &Polynomial) -> Result<FiltrationContext> {
        Ring::ensure_same(&self.ring, b.ring())?;
        let mut gens = self.base_m.gb().generators().to_vec();
        gens.push(b.clone());
        let base_m = Base::new(&self.ring, &gens)?;
        let ladder_m = Arc::new(Ladder::new(&base_m, &self.q));
        Ok(self.derive(base_m, ladder_m, self.system.clone(), true))
    }

    /// Compares `G_M / b* G_M` with `G_{M/bM}` inside the untrimmed
    /// `k[x, y]`, where `b ∈ q^d`. The two agree when `b*` is regular of
    /// degree `d`.
    /// `quotient` must be `self.quotient_by_element(b)`.
    pub fn quotient_compatibility(&self, quotient: &FiltrationContext, b: &Polynomial, d: u32) -> Result<bool> {
        let rees = self.rees(FormTarget::Module)?;
        let xy = &rees.xy_ring;
        let mut lhs = self.form_presentation(FormTarget::Module)?.full_ideal.clone();
        lhs.push(rees.lift(b, d)?);
        let rhs = quotient
            .form_presentation(FormTarget::Module)?
            .full_ideal
            .iter()
            .map(|g| g.map_into(xy))
            .collect::<Result<Vec<_>>>()?;
        let zero = Base::zero(xy);
        PresentedIdeal::new(&zero, lhs)?.equals(&PresentedIdeal::new(&zero, rhs)?)
    }

    /// Initial forms `a_i*` of the system in a form presentation.
    pub fn system_forms(&self, pres: &GradedQuotientPresentation) -> Result<Vec<GradedElement>> {
        self.system
            .iter()
            .map(|s| pres.lift(&s.element, s.degree))
            .collect()
    }

    /// Positive weights making `I_A`, `I_M` and the generators of `q`
    /// weighted homogeneous, if small ones exist. When they do, the affine
    /// computation agrees with the one in the localization at the
    /// homogeneous maximal ideal.
    pub fn graded_local_weights(&self) -> Option<Vec<u32>> {
        self.weights
            .get_or_init(|| {
                let mut polys: Vec<&Polynomial> = Vec::new();
                polys.extend(self.base_a.gb().generators());
                polys.extend(self.base_m.gb().generators());
                polys.extend(&self.q);
                find_grading(self.ring.nvars(), &polys)
            })
            .clone()
    }
}

fn rees_presentation_of(rees: &Arc<ReesData>) -> Result<GradedQuotientPresentation> {
    let ideal = PresentedIdeal::new(&Base::zero(&rees.xy_ring), rees.h.clone())?;
    let ring = rees.xy_ring.clone();
    let images = (0..ring.nvars()).map(|i| Polynomial::var(&ring, i)).collect();
    Ok(GradedQuotientPresentation {
        kind: PresentationKind::Rees,
        labels: ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i < rees.nx {
                    format!("{v} (degree 0)")
                } else {
                    format!("{v} = generator {} times T (degree 1)", i - rees.nx + 1)
                }
            })
            .collect(),
        full_ideal: rees.h.clone(),
        weights: rees.weights.clone(),
        ring,
        ideal,
        dropped: vec![],
        images,
        rees: Some(rees.clone()),
    })
}

fn form_presentation_of(
    rees: &Arc<ReesData>,
    q: &[Polynomial],
    kind: PresentationKind,
) -> Result<GradedQuotientPresentation> {
    let xy = &rees.xy_ring;
    let mut full = rees.h.clone();
    for f in q {
        full.push(f.map_into(xy)?);
    }
    let full_ideal = PresentedIdeal::new(&Base::zero(xy), full)?;
    let mut dropped_idx = Vec::new();
    for i in 0..xy.nvars() {
        if full_ideal.contains(&Polynomial::var(xy, i))? {
            dropped_idx.push(i);
        }
    }
    let q_var: Vec<Option<usize>> = q
        .iter()
        .map(|f| {
            let (m, c) = f.terms().first()?;
            (f.len() == 1 && c.is_one() && m.degree() == 1)
                .then(|| (0..m.nvars()).find(|&k| m.exponent(k) == 1))
                .flatten()
        })
        .collect();
    let mut names: Vec<String> = Vec::new();
    let mut weights = Vec::new();
    let mut labels = Vec::new();
    let mut kept = Vec::new();
    for i in 0..xy.nvars() {
        if dropped_idx.contains(&i) {
            continue;
        }
        kept.push(i);
        weights.push(rees.weights[i]);
        if i < rees.nx {
            names.push(xy.vars()[i].clone());
            labels.push(format!("{} (degree 0)", xy.vars()[i]));
        } else {
            names.push(xy.vars()[i].clone());
            labels.push(format!("initial form of {} (degree 1)", q[i - rees.nx]));
        }
    }
    // give y_j the name of its generator when that variable was removed
    for (slot, &i) in kept.iter().enumerate() {
        if i < rees.nx {
            continue;
        }
        if let Some(k) = q_var[i - rees.nx] {
            let candidate = &xy.vars()[k];
            if dropped_idx.contains(&k) && !names.contains(candidate) {
                names[slot] = candidate.clone();
            }
        }
    }
    let ring = xy.sibling(names, MonomialOrder::WeightedDegRevLex(weights.clone()))?;
    let images: Vec<Polynomial> = (0..xy.nvars())
        .map(|i| match kept.iter().position(|&k| k == i) {
            Some(slot) => Polynomial::var(&ring, slot),
            None => Polynomial::zero(&ring),
        })
        .collect();
    let mut gens = Vec::new();
    for g in full_ideal.gb()?.generators() {
        let s = g.substitute(&ring, &images)?;
        if !s.is_zero() {
            gens.push(s);
        }
    }
    let ideal = PresentedIdeal::new(&Base::zero(&ring), gens)?.from_gb()?;
    Ok(GradedQuotientPresentation {
        kind,
        ring,
        weights,
        ideal,
        labels,
        dropped: dropped_idx.iter().map(|&i| xy.vars()[i].clone()).collect(),
        full_ideal: full_ideal.gb()?.generators().to_vec(),
        images,
        rees: Some(rees.clone()),
    })
}

/// Brute-force search for positive integer weights under which every
/// polynomial is weighted homogeneous.
fn find_grading(n: usize, polys: &[&Polynomial]) -> Option<Vec<u32>> {
    let mut diffs: Vec<Vec<i64>> = Vec::new();
    for p in polys {
        let Some((m0, _)) = p.terms().first() else { continue };
        for (m, _) in &p.terms()[1..] {
            let d: Vec<i64> = (0..n).map(|i| m.exponent(i) as i64 - m0.exponent(i) as i64).collect();
            if !diffs.contains(&d) {
                diffs.push(d);
            }
        }
    }
    if diffs.is_empty() {
        return Some(vec![1; n]);
    }
    let max_w: u32 = match n {
        0..=4 => 12,
        5..=6 => 6,
        _ => return None,
    };
    let mut w = vec![1u32; n];
    loop {
        if diffs
            .iter()
            .all(|d| d.iter().zip(&w).map(|(a, b)| a * *b as i64).sum::<i64>() == 0)
        {
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if w[i] < max_w {
                w[i] += 1;
                break;
            }
            w[i] = 1;
            i += 1;
        }
    }
}
