//! Ideals of a quotient ring `A = P / I_A`, each stored as an ideal of the
//! polynomial ring `P` that contains `I_A`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};

/// The defining ideal `I_A` of the quotient ring, with its Groebner basis.
#[derive(Debug)]
pub struct Base {
    gb: GroebnerBasis,
}

impl Base {
    pub fn new(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<Arc<Base>> {
        Ok(Arc::new(Base {
            gb: buchberger(ring, gens)?,
        }))
    }

    pub fn zero(ring: &Arc<Ring>) -> Arc<Base> {
        Arc::new(Base {
            gb: buchberger(ring, &[]).expect("empty basis"),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.gb.ring()
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb.normal_form(f)
    }

    fn same(a: &Base, b: &Base) -> bool {
        std::ptr::eq(a, b) || a.gb == b.gb
    }
}

/// Krull dimension; `Empty` for the zero ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl Dimension {
    pub fn value(self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An ideal of `A`, given by generators in `P`; the base is always added.
#[derive(Debug)]
pub struct PresentedIdeal {
    ring: Arc<Ring>,
    base: Arc<Base>,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for PresentedIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        PresentedIdeal {
            ring: self.ring.clone(),
            base: self.base.clone(),
            generators: self.generators.clone(),
            gb,
        }
    }
}

impl PresentedIdeal {
    pub fn new(base: &Arc<Base>, generators: Vec<Polynomial>) -> Result<PresentedIdeal> {
        let ring = base.ring().clone();
        for g in &generators {
            Ring::ensure_same(&ring, g.ring())?;
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(PresentedIdeal {
            ring,
            base: base.clone(),
            generators,
            gb: OnceLock::new(),
        })
    }

    /// Parses a comma separated generator list.
    pub fn parse(base: &Arc<Base>, text: &str) -> Result<PresentedIdeal> {
        let gens = crate::algebra::parse_polynomial_list(base.ring(), text)?;
        PresentedIdeal::new(base, gens)
    }

    /// The base ideal itself (the zero ideal of `A`).
    pub fn zero(base: &Arc<Base>) -> PresentedIdeal {
        PresentedIdeal::new(base, vec![]).expect("same ring")
    }

    pub fn unit(base: &Arc<Base>) -> PresentedIdeal {
        PresentedIdeal::new(base, vec![Polynomial::one(base.ring())]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<Base> {
        &self.base
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Groebner basis of generators plus base, computed once.
    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let mut all = self.generators.clone();
        all.extend(self.base.gb().generators().iter().cloned());
        let g = buchberger(&self.ring, &all)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().expect("just set"))
    }

    fn compatible(&self, o: &PresentedIdeal) -> Result<()> {
        Ring::ensure_same(&self.ring, &o.ring)?;
        if !Base::same(&self.base, &o.base) {
            return Err(Error::RingMismatch("ideals over different base ideals".into()));
        }
        Ok(())
    }

    fn derived(&self, generators: Vec<Polynomial>) -> PresentedIdeal {
        PresentedIdeal {
            ring: self.ring.clone(),
            base: self.base.clone(),
            generators,
            gb: OnceLock::new(),
        }
    }

    /// Same ideal, generated by its Groebner basis.
    pub fn from_gb(&self) -> Result<PresentedIdeal> {
        let g = self.gb()?.clone();
        let id = self.derived(g.generators().to_vec());
        let _ = id.gb.set(g);
        Ok(id)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        self.gb()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// `self ⊆ o`.
    pub fn is_subset(&self, o: &PresentedIdeal) -> Result<bool> {
        self.compatible(o)?;
        for g in &self.generators {
            if !o.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &PresentedIdeal) -> Result<bool> {
        self.compatible(o)?;
        Ok(self.gb()?.generators() == o.gb()?.generators())
    }

    pub fn sum(&self, o: &PresentedIdeal) -> Result<PresentedIdeal> {
        self.compatible(o)?;
        let mut g = self.generators.clone();
        g.extend(o.generators.iter().cloned());
        Ok(self.derived(g))
    }

    /// Adds the given elements to the generators.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<PresentedIdeal> {
        for f in extra {
            Ring::ensure_same(&self.ring, f.ring())?;
        }
        let mut g = self.generators.clone();
        g.extend(extra.iter().filter(|f| !f.is_zero()).cloned());
        Ok(self.derived(g))
    }

    pub fn product(&self, o: &PresentedIdeal) -> Result<PresentedIdeal> {
        self.compatible(o)?;
        let mut out: Vec<Polynomial> = Vec::new();
        for a in &self.generators {
            for b in &o.generators {
                let r = self.base.reduce(&(a * b))?;
                if !r.is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        Ok(self.derived(out))
    }

    /// `self^n`, with `self^0 = (1)`.
    pub fn power(&self, n: u32) -> Result<PresentedIdeal> {
        if n == 0 {
            return Ok(PresentedIdeal::unit(&self.base));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            let reduced = acc.from_gb()?.without_base()?;
            acc = reduced.product(self)?;
        }
        Ok(acc)
    }

    /// Drops generators that reduce to zero modulo the base.
    fn without_base(&self) -> Result<PresentedIdeal> {
        let mut g = Vec::new();
        for f in &self.generators {
            let r = self.base.reduce(f)?;
            if !r.is_zero() {
                g.push(r);
            }
        }
        Ok(self.derived(g))
    }

    pub fn intersect(&self, o: &PresentedIdeal) -> Result<PresentedIdeal> {
        self.compatible(o)?;
        let g = intersect_polys(
            &self.ring,
            self.gb()?.generators(),
            o.gb()?.generators(),
        )?;
        Ok(self.derived(g))
    }

    /// `{g : g f ∈ self}`; the unit ideal when `f` already lies in `self`.
    pub fn colon(&self, f: &Polynomial) -> Result<PresentedIdeal> {
        Ring::ensure_same(&self.ring, f.ring())?;
        if self.contains(f)? {
            return Ok(PresentedIdeal::unit(&self.base));
        }
        let meet = intersect_polys(&self.ring, self.gb()?.generators(), std::slice::from_ref(f))?;
        let g = meet
            .iter()
            .map(|h| h.div_exact(f))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Internal(format!("colon quotient not exact: {e}")))?;
        Ok(self.derived(g))
    }

    /// `self : J`, the intersection of the colons by the generators of `J`.
    pub fn colon_ideal(&self, j: &PresentedIdeal) -> Result<PresentedIdeal> {
        self.compatible(j)?;
        let mut acc = PresentedIdeal::unit(&self.base);
        for f in &j.generators {
            let c = self.colon(f)?;
            acc = if acc.is_unit()? { c } else { acc.intersect(&c)? };
        }
        Ok(acc)
    }

    /// `self : f^∞` together with the first `k` such that
    /// `self : f^k = self : f^(k+1)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<(PresentedIdeal, u32)> {
        if f.is_zero() {
            return Err(Error::Precondition("saturation by zero".into()));
        }
        let mut cur = self.clone();
        let mut k = 0;
        loop {
            let next = cur.colon(f)?;
            if next.equals(&cur)? {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `(self + base) ∩ k[remaining variables]`, as an ideal of a fresh
    /// degrevlex ring on the remaining variables (with zero base).
    pub fn eliminate(&self, vars: &[&str]) -> Result<PresentedIdeal> {
        for v in vars {
            if self.ring.var_index(v).is_none() {
                return Err(Error::UnknownVariable(v.to_string()));
            }
        }
        let keep: Vec<String> = self
            .ring
            .vars()
            .iter()
            .filter(|v| !vars.contains(&v.as_str()))
            .cloned()
            .collect();
        let target = self.ring.sibling(keep, MonomialOrder::DegRevLex)?;
        let elim: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let g = eliminate_into(self.gb()?.generators(), &elim, &target)?;
        PresentedIdeal::new(&Base::zero(&target), g)
    }

    /// Krull dimension of `P / (self + base)`.
    pub fn krull_dim(&self) -> Result<Dimension> {
        dimension_of(self.gb()?)
    }
}

impl fmt::Display for PresentedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Krull dimension from a Groebner basis: the largest set of variables
/// containing the support of no leading monomial.
pub fn dimension_of(gb: &GroebnerBasis) -> Result<Dimension> {
    if gb.is_unit() {
        return Ok(Dimension::Empty);
    }
    let n = gb.ring().nvars();
    if n > 20 {
        return Err(Error::Precondition(format!("dimension search over {n} variables")));
    }
    let supports: Vec<u32> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            (0..n)
                .filter(|&i| m.exponent(i) > 0)
                .fold(0u32, |acc, i| acc | 1 << i)
        })
        .collect();
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !set != 0) {
            best = size;
        }
    }
    Ok(Dimension::Finite(best))
}

/// `I ∩ J` for ideals of the ambient ring given by generators, via
/// elimination of a tag variable from `t I + (1 - t) J`.
pub fn intersect_polys(ring: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if a.is_empty() || b.is_empty() {
        return Ok(vec![]);
    }
    let t = ring.fresh_name("t", &[]);
    let mut vars = vec![t.clone()];
    vars.extend(ring.vars().iter().cloned());
    let tagged = ring.sibling(vars, MonomialOrder::BlockElimination(1))?;
    let tv = Polynomial::var(&tagged, 0);
    let one_minus = &Polynomial::one(&tagged) - &tv;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(&tv * &f.map_into(&tagged)?);
    }
    for f in b {
        gens.push(&one_minus * &f.map_into(&tagged)?);
    }
    let gb = buchberger(&tagged, &gens)?;
    gb.generators()
        .iter()
        .filter(|g| !g.uses_var(0))
        .map(|g| g.map_into(ring))
        .collect()
}

/// Elimination of the named variables: a Groebner basis computation in a
/// block order with `elim` first, keeping the elements free of `elim`, and
/// mapping them into `target` by variable name.
pub fn eliminate_into(gens: &[Polynomial], elim: &[String], target: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(vec![]);
    };
    let src = first.ring();
    let mut vars: Vec<String> = elim.to_vec();
    vars.extend(src.vars().iter().filter(|v| !elim.contains(v)).cloned());
    let ring = src.sibling(vars, MonomialOrder::BlockElimination(elim.len()))?;
    let mapped = gens.iter().map(|g| g.map_into(&ring)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&ring, &mapped)?;
    gb.generators()
        .iter()
        .filter(|g| (0..elim.len()).all(|i| !g.uses_var(i)))
        .map(|g| g.map_into(target))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Field};

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::degrevlex(Field::Rationals, vars).unwrap()
    }

    fn ideal(b: &Arc<Base>, s: &str) -> PresentedIdeal {
        PresentedIdeal::parse(b, s).unwrap()
    }

    fn same(a: &PresentedIdeal, b: &PresentedIdeal) -> bool {
        a.equals(b).unwrap()
    }

    fn affine() -> Arc<Base> {
        let r = ring(&["X", "Y", "Z"]);
        let gens = crate::algebra::parse_polynomial_list(&r, "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2").unwrap();
        Base::new(&r, &gens).unwrap()
    }

    #[test]
    fn sums_products_powers() {
        let b = Base::zero(&ring(&["x", "y"]));
        assert!(same(&ideal(&b, "x").sum(&ideal(&b, "y")).unwrap(), &ideal(&b, "x, y")));
        assert!(same(&ideal(&b, "x").product(&ideal(&b, "x")).unwrap(), &ideal(&b, "x^2")));
        assert!(ideal(&b, "x, y").power(0).unwrap().is_unit().unwrap());
        assert!(same(&ideal(&b, "x, y").power(2).unwrap(), &ideal(&b, "x^2, x*y, y^2")));
    }

    #[test]
    fn maximal_ideal_squared_in_semigroup_ring() {
        let b = affine();
        let m = ideal(&b, "X, Y, Z");
        let expected = ideal(&b, "X^2, X*Y, X*Z, Y^2, Y*Z, Z^2");
        assert!(same(&m.product(&m).unwrap(), &expected));
    }

    #[test]
    fn principal_parameter_powers() {
        let b = affine();
        let x = ideal(&b, "X");
        let xp = |k: u32| parse_polynomial(b.ring(), &format!("X^{k}")).unwrap();
        for n in 0..=4 {
            for k in 1..=3 {
                let lhs = x.power(n + k).unwrap().colon(&xp(k)).unwrap();
                assert!(same(&lhs, &x.power(n).unwrap()), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn intersections() {
        let b = Base::zero(&ring(&["x", "y"]));
        assert!(same(&ideal(&b, "x").intersect(&ideal(&b, "y")).unwrap(), &ideal(&b, "x*y")));
        assert!(same(
            &ideal(&b, "x^2, y").intersect(&ideal(&b, "x")).unwrap(),
            &ideal(&b, "x^2, x*y")
        ));
        let i = ideal(&b, "x^2 + y, x*y");
        assert!(same(&i.intersect(&i).unwrap(), &i));
    }

    #[test]
    fn colons() {
        let r = ring(&["x", "y"]);
        let b = Base::zero(&r);
        let x = parse_polynomial(&r, "x").unwrap();
        let y = parse_polynomial(&r, "y").unwrap();
        assert!(same(&ideal(&b, "x^2").colon(&x).unwrap(), &ideal(&b, "x")));
        assert!(same(&ideal(&b, "x*y, y^2").colon(&y).unwrap(), &ideal(&b, "x, y")));
        assert!(ideal(&b, "x").colon(&x).unwrap().is_unit().unwrap());
        let q = Base::new(&r, &[parse_polynomial(&r, "x^2").unwrap(), parse_polynomial(&r, "x*y").unwrap()]).unwrap();
        assert!(ideal(&q, "y^2").colon(&y).unwrap().contains(&x).unwrap());
        let j = ideal(&b, "x, y");
        assert!(same(&ideal(&b, "x^2, x*y").colon_ideal(&j).unwrap(), &ideal(&b, "x")));
    }

    #[test]
    fn saturations() {
        let r = ring(&["x", "y"]);
        let b = Base::zero(&r);
        let x = parse_polynomial(&r, "x").unwrap();
        let y = parse_polynomial(&r, "y").unwrap();
        let (s, k) = ideal(&b, "x^2*y").saturate(&x).unwrap();
        assert!(same(&s, &ideal(&b, "y")));
        assert_eq!(k, 2);
        let (s, k) = ideal(&b, "x").saturate(&y).unwrap();
        assert!(same(&s, &ideal(&b, "x")));
        assert_eq!(k, 0);
        // (x^2, xy) : x = (x, y), and x^2 lies in the ideal, so 1 is in the saturation
        let i = ideal(&b, "x^2, x*y");
        assert!(same(&i.colon(&x).unwrap(), &ideal(&b, "x, y")));
        let (s, k) = i.saturate(&x).unwrap();
        assert!(s.is_unit().unwrap());
        assert_eq!(k, 2);
    }

    #[test]
    fn elimination() {
        let r = ring(&["t", "x", "y"]);
        let b = Base::zero(&r);
        let e = ideal(&b, "y - t^2, x - t").eliminate(&["t"]).unwrap();
        let expected = PresentedIdeal::parse(e.base(), "y - x^2").unwrap();
        assert!(same(&e, &expected));
        let r = ring(&["T", "x", "y1"]);
        let e = ideal(&Base::zero(&r), "y1 - x*T").eliminate(&["T"]).unwrap();
        assert!(e.gb().unwrap().is_empty());
        let i = ideal(&Base::zero(&r), "x^2 - y1");
        let same_ring = i.eliminate(&[]).unwrap();
        assert_eq!(same_ring.gb().unwrap().len(), 1);
        assert!(ideal(&b, "x").eliminate(&["w"]).is_err());
    }

    #[test]
    fn dimensions() {
        let b = Base::zero(&ring(&["x", "y"]));
        assert_eq!(ideal(&b, "x").krull_dim().unwrap(), Dimension::Finite(1));
        assert_eq!(ideal(&b, "1").krull_dim().unwrap(), Dimension::Empty);
        assert_eq!(PresentedIdeal::zero(&affine()).krull_dim().unwrap(), Dimension::Finite(1));
        let c = Base::zero(&ring(&["X", "Y", "Z"]));
        assert_eq!(ideal(&c, "X*Z, Y*Z, Y^4, Z^2").krull_dim().unwrap(), Dimension::Finite(1));
    }

    #[test]
    fn equality_and_membership() {
        let r = ring(&["x", "y"]);
        let b = Base::zero(&r);
        assert!(same(&ideal(&b, "x, y"), &ideal(&b, "y, x")));
        assert!(ideal(&b, "x").contains(&parse_polynomial(&r, "x^2").unwrap()).unwrap());
        let a = affine();
        assert!(PresentedIdeal::zero(&a)
            .contains(&parse_polynomial(a.ring(), "Y^4 - X^5").unwrap())
            .unwrap());
        assert!(ideal(&b, "x").sum(&ideal(&Base::zero(&r), "y")).is_ok());
        assert!(ideal(&b, "x").sum(&ideal(&affine(), "X")).is_err());
    }
}
