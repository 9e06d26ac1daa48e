//! Degreewise linear algebra over the ground field: graded components as
//! spans of standard monomials, multiplication maps as matrices, and
//! brute-force versions of the regularity and `Ľ⁰` tests.

use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Coeff, Field, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::filtration::{FiltrationContext, GradedQuotientPresentation};
use crate::graded::{standard_monomials, GradedElement};
use crate::groebner::GroebnerBasis;
use crate::ideal::PresentedIdeal;
use crate::lzero::LZeroRecord;

pub const DEFAULT_DEGREE_CAP: u32 = 8;

/// Dense matrix over a field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: o.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : self v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Coeff>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, free);
            }
            out.push(v);
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `[G]_n` as the span of its standard monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub dimension: usize,
}

impl ComponentBasis {
    /// Coordinates of an element already in normal form.
    fn coordinates(&self, nf: &Polynomial) -> Result<Vec<Coeff>> {
        let field = nf.ring().field();
        let mut v = vec![field.zero(); self.dimension];
        for (m, c) in nf.terms() {
            let i = self.monomials.iter().position(|b| b == m).ok_or_else(|| {
                Error::Internal(format!("{nf} is not a combination of degree {} standard monomials", self.degree))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }
}

pub fn component_basis(g: &GradedQuotientPresentation, n: u32) -> Result<ComponentBasis> {
    let monomials = standard_monomials(g, n)?;
    Ok(ComponentBasis {
        degree: n,
        dimension: monomials.len(),
        monomials,
    })
}

/// Matrix of `· b : [G]_n -> [G]_(n + deg b)`; column `j` is the image of
/// the `j`-th standard monomial.
pub fn multiplication_matrix(g: &GradedQuotientPresentation, b: &GradedElement, n: u32) -> Result<Matrix> {
    let src = component_basis(g, n)?;
    let dst = component_basis(g, n + b.degree())?;
    let ring = g.ring();
    let mut m = Matrix::zeros(ring.field(), dst.dimension, src.dimension);
    for (j, mono) in src.monomials.iter().enumerate() {
        let p = Polynomial::monomial(ring, mono.clone(), ring.field().one());
        let image = g.ideal().reduce(&(&p * b.representative()))?;
        for (i, c) in dst.coordinates(&image)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Outcome of the truncated regularity test, with the first kernel found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedRegularity {
    pub regular: bool,
    pub kernel_degree: Option<u32>,
    pub kernel_element: Option<Polynomial>,
}

/// `b` is regular in degrees `0..=n_max` when every multiplication matrix
/// there has trivial kernel.
pub fn truncated_regularity(g: &GradedQuotientPresentation, b: &GradedElement, n_max: u32) -> Result<TruncatedRegularity> {
    for n in 0..=n_max {
        let m = multiplication_matrix(g, b, n)?;
        if let Some(v) = m.kernel().into_iter().next() {
            let basis = component_basis(g, n)?;
            let p = Polynomial::from_terms(
                g.ring(),
                basis.monomials.into_iter().zip(v).filter(|(_, c)| !c.is_zero()),
            );
            return Ok(TruncatedRegularity {
                regular: false,
                kernel_degree: Some(n),
                kernel_element: Some(p),
            });
        }
    }
    Ok(TruncatedRegularity {
        regular: true,
        kernel_degree: None,
        kernel_element: None,
    })
}

fn count_standard(gb: &GroebnerBasis, nvars: usize) -> Result<u64> {
    if gb.is_unit() {
        return Ok(0);
    }
    let lms = gb.leading_monomials();
    let mut bound = vec![0u32; nvars];
    for (i, b) in bound.iter_mut().enumerate() {
        *b = lms
            .iter()
            .filter(|m| m.degree() == m.exponent(i) && m.exponent(i) > 0)
            .map(|m| m.exponent(i))
            .min()
            .ok_or_else(|| Error::Precondition("quotient is not of finite length".into()))?;
    }
    let mut count = 0u64;
    let mut e = vec![0u32; nvars];
    loop {
        let m = Monomial::new(e.iter().copied());
        if !lms.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return Ok(count);
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// `dim_k q^n M / q^(n+1) M` for `n = 0..=upto`, as differences of the
/// lengths of `P / (q^n + I_M)`. Needs `M / qM` of finite length.
pub fn hilbert_via_lengths(ctx: &FiltrationContext, upto: u32) -> Result<Vec<u64>> {
    let n = ctx.ring().nvars();
    let mut lengths = Vec::new();
    for k in 0..=upto + 1 {
        lengths.push(count_standard(ctx.power_m(k)?.gb()?, n)?);
    }
    Ok(lengths.windows(2).map(|w| w[1] - w[0]).collect())
}

/// Truncated `Ľ⁰` at a fixed chain index `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedLzero {
    pub vanishing: bool,
    /// Dimension of the space of `f` of degree at most the cap, modulo
    /// `I_M`, with `f a_i^l ∈ q^(n + l c_i) + I_M` for every `i`.
    pub colon_dimension: usize,
    pub witness: Option<Polynomial>,
}

/// Brute force over polynomials of total degree at most `degree_cap`:
/// the intersection of the colons is the kernel of the stacked linear maps
/// `f ↦ NF(f a_i^l)`, and the verdict asks whether that kernel lies in
/// `q^n + I_M`.
pub fn truncated_lzero(ctx: &FiltrationContext, n: u32, l: u32, degree_cap: u32) -> Result<TruncatedLzero> {
    let ring = ctx.ring();
    let field = ring.field();
    let base = ctx.module_ideal().gb();
    let lms = base.leading_monomials();
    let mut space: Vec<Monomial> = Vec::new();
    for d in 0..=degree_cap {
        monomials_of_degree(ring.nvars(), d, &mut |m| {
            if !lms.iter().any(|l| l.divides(&m)) {
                space.push(m);
            }
        });
    }
    let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, Coeff)> = Vec::new();
    for (i, s) in ctx.system().iter().enumerate() {
        let target = ctx.power_m(n + l * s.degree)?;
        let al = s.element.pow(l);
        for (j, m) in space.iter().enumerate() {
            let p = Polynomial::monomial(ring, m.clone(), field.one());
            let image = target.reduce(&(&p * &al))?;
            for (mono, c) in image.terms() {
                let next = rows.len();
                let r = *rows.entry((i, mono.clone())).or_insert(next);
                entries.push((r, j, c.clone()));
            }
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), space.len());
    for (r, c, v) in entries {
        mat.set(r, c, v);
    }
    let kernel = mat.kernel();
    let target = ctx.power_m(n)?;
    let mut witness = None;
    for v in &kernel {
        let f = Polynomial::from_terms(
            ring,
            space.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()),
        );
        let r = target.reduce(&f)?;
        if !r.is_zero() {
            witness = Some(r);
            break;
        }
    }
    Ok(TruncatedLzero {
        vanishing: witness.is_none(),
        colon_dimension: kernel.len(),
        witness,
    })
}

/// Checks a record against [`truncated_lzero`] at the record's chain index:
/// the brute force finds a nonzero class of degree at most the cap exactly
/// when some Groebner basis element of `U` of that degree lies outside
/// `q^n + I_M`.
pub fn lzero_agreement(ctx: &FiltrationContext, record: &LZeroRecord, degree_cap: u32) -> Result<bool> {
    let brute = truncated_lzero(ctx, record.n, record.last_l, degree_cap)?;
    let target = ctx.power_m(record.n)?;
    let mut low_witness = false;
    for g in record.u.gb()?.generators() {
        if g.total_degree().unwrap_or(0) <= degree_cap && !target.contains(g)? {
            low_witness = true;
        }
    }
    Ok(brute.vanishing != low_witness)
}

/// Whether `f`, homogeneous of total degree `d`, lies in the span of the
/// products `m g` of total degree `d`, for homogeneous `gens`. For
/// homogeneous ideals this is membership in the ideal.
pub fn span_membership(gens: &[Polynomial], f: &Polynomial, d: u32) -> Result<bool> {
    let ring = f.ring();
    let field = ring.field();
    let mut columns: Vec<Polynomial> = Vec::new();
    for g in gens {
        let Some(e) = g.total_degree() else { continue };
        if e > d {
            continue;
        }
        monomials_of_degree(ring.nvars(), d - e, &mut |m| {
            columns.push(&Polynomial::monomial(ring, m, field.one()) * g);
        });
    }
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in columns.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let fill = |cols: &[&Polynomial]| {
        let mut mat = Matrix::zeros(field, index.len(), cols.len());
        for (j, p) in cols.iter().enumerate() {
            for (m, c) in p.terms() {
                mat.set(index[m], j, c.clone());
            }
        }
        mat
    };
    let mut refs: Vec<&Polynomial> = columns.iter().collect();
    let without = fill(&refs).rank();
    refs.push(f);
    Ok(fill(&refs).rank() == without)
}

/// A basis of the degree-`d` forms `g` with `g f ∈ I`, as the kernel of
/// `g ↦ NF_I(g f)` on all monomials of total degree `d`.
pub fn colon_kernel(ideal: &PresentedIdeal, f: &Polynomial, d: u32) -> Result<Vec<Polynomial>> {
    let ring = ideal.ring();
    let field = ring.field();
    let mut monos = Vec::new();
    monomials_of_degree(ring.nvars(), d, &mut |m| monos.push(m));
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let mut entries = Vec::new();
    for (j, m) in monos.iter().enumerate() {
        let image = ideal.reduce(&(&Polynomial::monomial(ring, m.clone(), field.one()) * f))?;
        for (t, c) in image.terms() {
            let next = rows.len();
            let r = *rows.entry(t.clone()).or_insert(next);
            entries.push((r, j, c.clone()));
        }
    }
    let mut mat = Matrix::zeros(field, rows.len(), monos.len());
    for (r, c, v) in entries {
        mat.set(r, c, v);
    }
    Ok(mat
        .kernel()
        .into_iter()
        .map(|v| {
            Polynomial::from_terms(
                ring,
                monos.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect())
}

fn monomials_of_degree(nvars: usize, d: u32, f: &mut impl FnMut(Monomial)) {
    fn go(i: usize, left: u32, e: &mut Vec<u32>, f: &mut impl FnMut(Monomial)) {
        if i + 1 == e.len() {
            e[i] = left;
            f(Monomial::new(e.iter().copied()));
            return;
        }
        for x in (0..=left).rev() {
            e[i] = x;
            go(i + 1, left - x, e, f);
        }
        e[i] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            f(Monomial::one(0));
        }
        return;
    }
    go(0, d, &mut vec![0; nvars], f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use crate::lzero::{lzero_at, LzeroParams};

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
    fn linear_algebra() {
        let f = Field::Rationals;
        let mut m = Matrix::zeros(f, 2, 3);
        m.set(0, 0, f.from_i64(1));
        m.set(0, 1, f.from_i64(2));
        m.set(1, 0, f.from_i64(2));
        m.set(1, 1, f.from_i64(4));
        m.set(1, 2, f.from_i64(1));
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let mut col = Matrix::zeros(f, 3, 1);
        for (i, c) in v.iter().enumerate() {
            col.set(i, 0, c.clone());
        }
        assert!(m.mul(&col).unwrap().is_zero());
        assert!(Matrix::identity(f, 2).mul(&m).unwrap() == m);

        let p = Field::prime(5).unwrap();
        let mut m = Matrix::zeros(p, 2, 2);
        m.set(0, 0, p.from_i64(2));
        m.set(0, 1, p.from_i64(1));
        m.set(1, 0, p.from_i64(4));
        m.set(1, 1, p.from_i64(2));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn components() {
        let g = pres(&["X", "Y"], "0");
        let b = component_basis(&g, 2).unwrap();
        assert_eq!(b.dimension, 3);
        assert_eq!(component_basis(&cone(), 3).unwrap().dimension, 4);
        let dims: Vec<usize> = (0..6).map(|n| component_basis(&cone(), n).unwrap().dimension).collect();
        assert_eq!(dims, vec![1, 3, 3, 4, 4, 4]);
        assert_eq!(component_basis(&pres(&["x"], "x^2"), 3).unwrap().dimension, 0);
    }

    #[test]
    fn multiplication_matrices() {
        let g = pres(&["X"], "0");
        let m = multiplication_matrix(&g, &el(&g, "X"), 1).unwrap();
        assert_eq!(m, Matrix::identity(Field::Rationals, 1));

        let c = cone();
        let m = multiplication_matrix(&c, &el(&c, "X"), 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 3));
        assert_eq!(m.rank(), 2);
        let zero = GradedElement::new(Polynomial::zero(c.ring()), 1);
        assert!(multiplication_matrix(&c, &zero, 2).unwrap().is_zero());

        // composition matches the product
        let (x, y) = (el(&c, "X"), el(&c, "Y"));
        let xy = el(&c, "X*Y");
        let composed = multiplication_matrix(&c, &y, 2)
            .unwrap()
            .mul(&multiplication_matrix(&c, &x, 1).unwrap())
            .unwrap();
        assert_eq!(composed, multiplication_matrix(&c, &xy, 1).unwrap());
    }

    #[test]
    fn truncated_regularity_examples() {
        let g = pres(&["X", "Y"], "0");
        assert!(truncated_regularity(&g, &el(&g, "X"), 5).unwrap().regular);
        let c = cone();
        let r = truncated_regularity(&c, &el(&c, "X"), 5).unwrap();
        assert!(!r.regular);
        assert_eq!(r.kernel_degree, Some(1));
        assert_eq!(r.kernel_element.unwrap().to_string(), "Z");
        let r = truncated_regularity(&c, &el(&c, "Z"), 5).unwrap();
        assert_eq!(r.kernel_degree, Some(1));
    }

    #[test]
    fn hilbert_from_lengths() {
        let ctx = FiltrationContext::parse(
            Field::Rationals,
            &["X", "Y", "Z"],
            "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2",
            "0",
            "X, Y, Z",
            &["X"],
        )
        .unwrap();
        assert_eq!(hilbert_via_lengths(&ctx, 6).unwrap(), vec![1, 3, 3, 4, 4, 4, 4]);
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "0", "0", "x", &["x"]).unwrap();
        assert!(hilbert_via_lengths(&ctx, 2).is_err());
    }

    #[test]
    fn span_membership_and_colon_kernel() {
        let ring = crate::algebra::Ring::degrevlex(Field::Rationals, &["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(&ring, s).unwrap();
        let gens = [p("x^2"), p("x*y")];
        assert!(span_membership(&gens, &p("x^3 + 2*x^2*y"), 3).unwrap());
        assert!(!span_membership(&gens, &p("y^3"), 3).unwrap());
        let ideal = PresentedIdeal::new(&crate::ideal::Base::zero(&ring), gens.to_vec()).unwrap();
        // (x^2, xy) : y is (x), so in degree 2 the kernel is spanned by x^2, xy
        let k = colon_kernel(&ideal, &p("y"), 2).unwrap();
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn truncated_lzero_agrees() {
        let p = LzeroParams::default();
        let ctx = FiltrationContext::parse(
            Field::Rationals,
            &["X", "Y", "Z"],
            "X^4 - Y*Z, Y^3 - X*Z, Z^2 - X^3*Y^2",
            "0",
            "X",
            &["X"],
        )
        .unwrap();
        for n in 0..=4 {
            let r = lzero_at(&ctx, n, &p).unwrap();
            assert!(truncated_lzero(&ctx, n, r.last_l, 8).unwrap().vanishing);
            assert!(lzero_agreement(&ctx, &r, 8).unwrap());
        }
        let ctx = FiltrationContext::parse(Field::Rationals, &["x", "y"], "x^2, x*y", "0", "x, y", &["y"]).unwrap();
        let r = lzero_at(&ctx, 2, &p).unwrap();
        let t = truncated_lzero(&ctx, 2, r.last_l, 8).unwrap();
        assert!(!t.vanishing);
        assert_eq!(t.witness.unwrap().to_string(), "x");
        assert!(lzero_agreement(&ctx, &r, 8).unwrap());
        assert!(truncated_lzero(&ctx, 0, 1, 8).unwrap().vanishing);
    }
}
