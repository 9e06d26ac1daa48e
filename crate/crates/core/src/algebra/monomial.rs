use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 8]>;

/// A power product `x_1^e_1 * ... * x_n^e_n`; the total degree is cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[index] = exp;
        m.degree = exp;
        m
    }

    pub fn new(exps: impl IntoIterator<Item = u32>) -> Monomial {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Bit `i` is set when variable `i` (for `i < 64`) occurs.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(i, &e)| e > 0 && *i < 64)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), o.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + o.degree,
        }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * n).collect(),
            degree: self.degree * n,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.degree <= o.degree && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self` when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        Some(Monomial {
            exps: o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: o.degree - self.degree,
        })
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&o.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.exps.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.exps.len(),
            });
        }
        Ok(())
    }
}

/// Monomial orders. Every order here is a multiplicative well-order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// The first `k` variables form a block compared (by degrevlex) before
    /// the remaining ones; eliminates the first block.
    BlockElimination(usize),
    /// Weighted degree first, degrevlex to break ties. Zero weights are
    /// allowed since the tie-break is itself a well-order.
    WeightedDegRevLex(Vec<u32>),
}

impl MonomialOrder {
    /// Checked comparison; fails on monomials of different length.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        b.check_len(a.nvars())?;
        if let MonomialOrder::WeightedDegRevLex(w) = self {
            a.check_len(w.len())?;
        }
        Ok(self.compare(a, b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => a
                .degree
                .cmp(&b.degree)
                .then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Lex => lex(&a.exps, &b.exps),
            MonomialOrder::BlockElimination(k) => {
                let k = (*k).min(a.exps.len());
                degrevlex_slice(&a.exps[..k], &b.exps[..k])
                    .then_with(|| degrevlex_slice(&a.exps[k..], &b.exps[k..]))
            }
            MonomialOrder::WeightedDegRevLex(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| a.degree.cmp(&b.degree))
                .then_with(|| revlex(&a.exps, &b.exps)),
        }
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            MonomialOrder::BlockElimination(k) if *k > nvars => Err(Error::InvalidRing(format!(
                "elimination block of size {k} exceeds {nvars} variables"
            ))),
            MonomialOrder::WeightedDegRevLex(w) if w.len() != nvars => Err(Error::LengthMismatch {
                expected: nvars,
                actual: w.len(),
            }),
            _ => Ok(()),
        }
    }

    /// True when total degree is the primary key (so normal forms never
    /// raise degree).
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::DegRevLex => true,
            MonomialOrder::WeightedDegRevLex(w) => w.iter().all(|&x| x == w[0]) && w[0] > 0,
            _ => false,
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent
/// in the last differing variable is larger.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

fn degrevlex_slice(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[4, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        // x*z < y^2 in degrevlex(x, y, z)
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[0, 3]), &m(&[1, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn block_dominance() {
        let o = MonomialOrder::BlockElimination(1);
        assert_eq!(o.compare(&m(&[1, 0]), &m(&[0, 100])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_reported() {
        assert!(MonomialOrder::DegRevLex
            .try_compare(&m(&[1, 0]), &m(&[1]))
            .is_err());
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::DegRevLex),
            Just(MonomialOrder::Lex),
            (0usize..=3).prop_map(MonomialOrder::BlockElimination),
            proptest::collection::vec(0u32..4, 3).prop_map(MonomialOrder::WeightedDegRevLex),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn total_transitive_multiplicative(o in orders(), a in mono(), b in mono(), c in mono(), u in mono()) {
            let ab = o.compare(&a, &b);
            prop_assert_eq!(ab, o.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && o.compare(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.compare(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(o.compare(&a.mul(&u), &b.mul(&u)), ab);
            // well-order: 1 is the minimum
            prop_assert_ne!(o.compare(&a, &Monomial::one(3)), Ordering::Less);
        }
    }
}
