use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::algebra::coeff::Coeff;
use crate::algebra::monomial::Monomial;
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};

pub type Term = (Monomial, Coeff);

/// Sparse polynomial. Terms are unique, nonzero, and sorted descending in
/// the ring's monomial order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        Ring::same(&self.ring, &o.ring) && self.terms == o.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Polynomial {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, n: i64) -> Polynomial {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Polynomial {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), ring.field().one())
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Polynomial> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Coeff) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length");
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = Term>) -> Polynomial {
        let order = ring.order();
        let mut terms: Vec<Term> = terms.into_iter().collect();
        for (m, _) in &terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length");
        }
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in canonical order.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &Coeff)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Sum of the terms of least total degree.
    pub fn lowest_form(&self) -> Polynomial {
        let Some(d) = self.lowest_degree() else {
            return self.clone();
        };
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Terms of weighted degree exactly `d`.
    pub fn weighted_component(&self, weights: &[u32], d: u64) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(weights) == d)
                .cloned()
                .collect(),
        }
    }

    pub fn uses_var(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(index) > 0)
    }

    /// `Some(d)` when every term has weighted degree `d`; zero is
    /// homogeneous of every degree and reports `None`.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Result<Option<u64>> {
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        let Some(d) = it.next() else {
            return Ok(None);
        };
        if it.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::Inhomogeneous(format!("{self}")))
        }
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        self.weighted_homogeneous_degree(weights).is_ok()
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial> {
        Ring::ensure_same(&self.ring, &o.ring)?;
        Ok(self.merge(o, false))
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial> {
        Ring::ensure_same(&self.ring, &o.ring)?;
        Ok(self.merge(o, true))
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        Ring::ensure_same(&self.ring, &o.ring)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc = Polynomial::zero(&self.ring);
        // multiply by the shorter operand term by term; each partial
        // product is already sorted
        let (short, long) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        for (m, c) in &short.terms {
            let part = long.mul_term(m, c);
            acc = acc.merge(&part, false);
        }
        Ok(acc)
    }

    /// Multiplication by a field element.
    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn div_scalar(&self, c: &Coeff) -> Result<Polynomial> {
        Ok(self.scale(&c.inv()?))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Exact quotient `self / d`; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Polynomial> {
        Ring::ensure_same(&self.ring, &d.ring)?;
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let Some(q) = lm.quotient_of(m) else {
                return Err(Error::Precondition(format!("{d} does not divide {self}")));
            };
            let qc = c * &lc_inv;
            rem = rem.merge(&d.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Ok(Polynomial::from_sorted(&self.ring, quot))
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn map_into(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        if Ring::same(&self.ring, target) {
            return Ok(self.clone());
        }
        if self.ring.field() != target.field() {
            return Err(Error::RingMismatch(format!(
                "field {} vs {}",
                self.ring.field(),
                target.field()
            )));
        }
        let mut index = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            index.push(target.var_index(v));
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match index[i] {
                    Some(j) => e[j] = x,
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push((Monomial::new(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.ring.nvars(),
                actual: images.len(),
            });
        }
        for p in images {
            Ring::ensure_same(p.ring(), target)?;
        }
        let mut acc = Polynomial::zero(target);
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn merge(&self, o: &Polynomial, subtract: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        while i < a.len() && j < b.len() {
            match order.compare(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if subtract { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use [`Polynomial::try_add`] to get an error.
    fn add(self, o: &Polynomial) -> Polynomial {
        self.try_add(o).expect("polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.try_sub(o).expect("polynomials from different rings")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.try_mul(o).expect("polynomials from different rings")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms descending in the ring order, `*` between
    /// factors, `^` for powers, e.g. `x^4 - y*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m, self.ring.vars());
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}
