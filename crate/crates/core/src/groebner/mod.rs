//! Normal forms, reduced Groebner bases and syzygies, for ideals of a
//! polynomial ring and for submodules of free modules over it.

mod engine;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use engine::{Engine, VTerm, Vector};

/// Element of the free module `P^r`, one polynomial per position.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeModuleElement {
    components: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(components: Vec<Polynomial>) -> Result<FreeModuleElement> {
        if let Some(first) = components.first() {
            for c in &components[1..] {
                Ring::ensure_same(first.ring(), c.ring())?;
            }
        }
        Ok(FreeModuleElement { components })
    }

    pub fn zero(ring: &Arc<Ring>, rank: usize) -> FreeModuleElement {
        FreeModuleElement {
            components: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The `i`-th unit vector scaled by `f`.
    pub fn unit(f: &Polynomial, rank: usize, i: usize) -> FreeModuleElement {
        let mut v = FreeModuleElement::zero(f.ring(), rank);
        v.components[i] = f.clone();
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &Polynomial) -> FreeModuleElement {
        FreeModuleElement {
            components: self.components.iter().map(|c| c * f).collect(),
        }
    }

    pub fn try_add(&self, o: &FreeModuleElement) -> Result<FreeModuleElement> {
        check_rank(self.rank(), o.rank())?;
        let components = self
            .components
            .iter()
            .zip(&o.components)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleElement { components })
    }

    /// `sum_i self[i] * columns[i]`.
    pub fn combine(&self, columns: &[FreeModuleElement]) -> Result<FreeModuleElement> {
        check_rank(columns.len(), self.rank())?;
        let rank = columns.first().map_or(0, |c| c.rank());
        let ring = match columns.first().and_then(|c| c.components.first()) {
            Some(p) => p.ring().clone(),
            None => return Ok(FreeModuleElement { components: vec![] }),
        };
        let mut acc = FreeModuleElement::zero(&ring, rank);
        for (s, c) in self.components.iter().zip(columns) {
            acc = acc.try_add(&c.scale(s))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for FreeModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_rank(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

fn to_vector(p: &Polynomial, comp: u32) -> Vector {
    p.terms()
        .iter()
        .map(|(m, c)| VTerm {
            comp,
            mono: m.clone(),
            coeff: c.clone(),
        })
        .collect()
}

fn module_to_vector(v: &FreeModuleElement, offset: u32) -> Vector {
    v.components
        .iter()
        .enumerate()
        .flat_map(|(i, p)| to_vector(p, offset + i as u32))
        .collect()
}

fn from_vector(ring: &Arc<Ring>, v: Vector) -> Polynomial {
    Polynomial::from_sorted(ring, v.into_iter().map(|t| (t.mono, t.coeff)).collect())
}

fn module_from_vector(ring: &Arc<Ring>, v: Vector, offset: u32, rank: usize) -> FreeModuleElement {
    let mut parts: Vec<Vec<(Monomial, crate::algebra::Coeff)>> = vec![Vec::new(); rank];
    for t in v {
        parts[(t.comp - offset) as usize].push((t.mono, t.coeff));
    }
    FreeModuleElement {
        components: parts
            .into_iter()
            .map(|terms| Polynomial::from_sorted(ring, terms))
            .collect(),
    }
}

fn engine(ring: &Ring, module: bool) -> Engine<'_> {
    Engine::new(ring.order(), module, ring.pair_budget())
}

fn ensure_ring<'a>(ring: &Arc<Ring>, polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<()> {
    for p in polys {
        Ring::ensure_same(ring, p.ring())?;
    }
    Ok(())
}

/// Reduced Groebner basis of an ideal, sorted ascending by leading
/// monomial. Leading coefficients are 1.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Always true: [`buchberger`] only returns reduced bases.
    pub fn is_reduced(&self) -> bool {
        true
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        Ring::ensure_same(&self.ring, f.ring())?;
        let basis: Vec<Vector> = self.generators.iter().map(|g| to_vector(g, 0)).collect();
        let r = engine(&self.ring, false).normal_form(to_vector(f, 0), &basis);
        Ok(from_vector(&self.ring, r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// True when `m` lies outside the leading ideal.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .generators
            .iter()
            .any(|g| g.leading_monomial().expect("nonzero").divides(m))
    }
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, o: &Self) -> bool {
        Ring::same(&self.ring, &o.ring) && self.generators == o.generators
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` under the order
/// of `ring`. Fails only when the ring's pair budget runs out.
pub fn buchberger(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    ensure_ring(ring, gens)?;
    let vs = gens.iter().map(|g| to_vector(g, 0)).collect();
    let basis = engine(ring, false).groebner(vs)?;
    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: basis.into_iter().map(|v| from_vector(ring, v)).collect(),
    })
}

/// Full-division remainder of `f` modulo the basis.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// True iff every S-polynomial of `gens` reduces to zero modulo `gens`.
pub fn is_groebner(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<bool> {
    ensure_ring(ring, gens)?;
    let vs: Vec<Vector> = gens.iter().map(|g| to_vector(g, 0)).collect();
    Ok(engine(ring, false).is_groebner(&vs))
}

/// Reduced Groebner basis of a submodule of `P^rank` (position over term).
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    ring: Arc<Ring>,
    rank: usize,
    elements: Vec<FreeModuleElement>,
}

impl ModuleGroebnerBasis {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: &[FreeModuleElement]) -> Result<Self> {
        let vs = module_vectors(ring, rank, gens)?;
        let basis = engine(ring, true).groebner(vs)?;
        Ok(ModuleGroebnerBasis {
            ring: ring.clone(),
            rank,
            elements: basis
                .into_iter()
                .map(|v| module_from_vector(ring, v, 0, rank))
                .collect(),
        })
    }

    pub fn elements(&self) -> &[FreeModuleElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn normal_form(&self, v: &FreeModuleElement) -> Result<FreeModuleElement> {
        check_rank(self.rank, v.rank())?;
        ensure_ring(&self.ring, v.components())?;
        let basis: Vec<Vector> = self.elements.iter().map(|e| module_to_vector(e, 0)).collect();
        let r = engine(&self.ring, true).normal_form(module_to_vector(v, 0), &basis);
        Ok(module_from_vector(&self.ring, r, 0, self.rank))
    }

    pub fn contains(&self, v: &FreeModuleElement) -> Result<bool> {
        Ok(self.normal_form(v)?.is_zero())
    }
}

fn module_vectors(ring: &Arc<Ring>, rank: usize, gens: &[FreeModuleElement]) -> Result<Vec<Vector>> {
    gens.iter()
        .map(|g| {
            check_rank(rank, g.rank())?;
            ensure_ring(ring, g.components())?;
            Ok(module_to_vector(g, 0))
        })
        .collect()
}

/// Generators of the kernel of `P^m -> P^r`, `e_j -> columns[j]`.
pub fn syzygy_basis(ring: &Arc<Ring>, columns: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
    syzygies_modulo(ring, columns, &[])
}

/// Kernel of `P^m -> (P/H)^r`, `e_j -> columns[j]`, where `H` is the ideal
/// generated by `relations`.
pub fn syzygies_modulo(
    ring: &Arc<Ring>,
    columns: &[FreeModuleElement],
    relations: &[Polynomial],
) -> Result<Vec<FreeModuleElement>> {
    let m = columns.len();
    if m == 0 {
        return Ok(vec![]);
    }
    let r = columns[0].rank();
    for c in columns {
        check_rank(r, c.rank())?;
        ensure_ring(ring, c.components())?;
    }
    ensure_ring(ring, relations)?;
    let mut gens: Vec<Vector> = Vec::new();
    let one = Polynomial::one(ring);
    for (j, c) in columns.iter().enumerate() {
        let mut v = module_to_vector(c, 0);
        v.extend(to_vector(&one, (r + j) as u32));
        gens.push(v);
    }
    for h in relations {
        for i in 0..r {
            gens.push(to_vector(h, i as u32));
        }
    }
    let basis = engine(ring, true).groebner(gens)?;
    Ok(basis
        .into_iter()
        .filter(|v| v[0].comp as usize >= r)
        .map(|v| module_from_vector(ring, v, r as u32, m))
        .collect())
}
