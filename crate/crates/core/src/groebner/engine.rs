//! Buchberger's algorithm over a free module `P^r` with position-over-term
//! order; polynomials are the rank-one case.

use std::cmp::Ordering;

use crate::algebra::{Coeff, Monomial, MonomialOrder};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Terms sorted descending in the module order.
pub(crate) type Vector = Vec<VTerm>;

#[derive(Clone, Debug)]
struct Lead {
    comp: u32,
    mono: Monomial,
    mask: u64,
}

impl Lead {
    fn of(v: &[VTerm]) -> Lead {
        let t = &v[0];
        Lead {
            comp: t.comp,
            mono: t.mono.clone(),
            mask: t.mono.support_mask(),
        }
    }

    fn divides(&self, comp: u32, mono: &Monomial, mask: u64) -> bool {
        self.comp == comp && self.mask & !mask == 0 && self.mono.divides(mono)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
}

pub(crate) struct Engine<'a> {
    order: &'a MonomialOrder,
    /// Disables the coprime-leading-term criterion, which is only valid
    /// for ideals.
    module: bool,
    budget: u64,
}

impl<'a> Engine<'a> {
    pub fn new(order: &'a MonomialOrder, module: bool, budget: u64) -> Self {
        Engine {
            order,
            module,
            budget,
        }
    }

    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.order.compare(a.1, b.1))
    }

    /// `f - c * m * g`.
    fn sub_scaled(&self, f: &[VTerm], c: &Coeff, m: &Monomial, g: &[VTerm]) -> Vector {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let mut scaled = |t: &VTerm| VTerm {
            comp: t.comp,
            mono: t.mono.mul(m),
            coeff: -&(&t.coeff * c),
        };
        let mut gj = g.first().map(&mut scaled);
        while i < f.len() {
            let Some(gt) = gj.take() else { break };
            match self.cmp((f[i].comp, &f[i].mono), (gt.comp, &gt.mono)) {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                    gj = Some(gt);
                }
                Ordering::Less => {
                    out.push(gt);
                    j += 1;
                    gj = g.get(j).map(&mut scaled);
                }
                Ordering::Equal => {
                    let s = &f[i].coeff + &gt.coeff;
                    if !s.is_zero() {
                        out.push(VTerm {
                            comp: gt.comp,
                            mono: gt.mono,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(&mut scaled);
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        if let Some(gt) = gj {
            out.push(gt);
            out.extend(g[j + 1..].iter().map(&mut scaled));
        }
        out
    }

    /// Division by `basis` (which need not be monic). With `full` every
    /// term is reduced, otherwise only the leading one.
    fn reduce_with(&self, f: Vector, basis: &[Vector], leads: &[Lead], full: bool) -> Vector {
        let mut f = f;
        let mut off = 0;
        let mut rem: Vector = Vec::new();
        while off < f.len() {
            let t = &f[off];
            let mask = t.mono.support_mask();
            let hit = leads
                .iter()
                .position(|l| l.divides(t.comp, &t.mono, mask));
            match hit {
                Some(k) => {
                    let g = &basis[k];
                    let q = leads[k].mono.quotient_of(&t.mono).expect("divides");
                    let c = t.coeff.div(&g[0].coeff).expect("nonzero lead");
                    f = self.sub_scaled(&f[off..], &c, &q, g);
                    off = 0;
                }
                None => {
                    if !full {
                        rem.extend(f.drain(off..));
                        return rem;
                    }
                    rem.push(f[off].clone());
                    off += 1;
                }
            }
        }
        rem
    }

    pub fn normal_form(&self, f: Vector, basis: &[Vector]) -> Vector {
        let leads: Vec<Lead> = basis.iter().filter(|g| !g.is_empty()).map(|g| Lead::of(g)).collect();
        let basis: Vec<&Vector> = basis.iter().filter(|g| !g.is_empty()).collect();
        let owned: Vec<Vector> = basis.into_iter().cloned().collect();
        self.reduce_with(f, &owned, &leads, true)
    }

    fn spoly(&self, f: &[VTerm], g: &[VTerm], lcm: &Monomial) -> Vector {
        let uf = f[0].mono.quotient_of(lcm).expect("lcm");
        let ug = g[0].mono.quotient_of(lcm).expect("lcm");
        let cf = f[0].coeff.inv().expect("nonzero");
        let cg = g[0].coeff.inv().expect("nonzero");
        let a: Vector = f
            .iter()
            .skip(1)
            .map(|t| VTerm {
                comp: t.comp,
                mono: t.mono.mul(&uf),
                coeff: &t.coeff * &cf,
            })
            .collect();
        self.sub_scaled(&a, &cg, &ug, &g[1..])
    }

    fn monic(v: Vector) -> Vector {
        if v.is_empty() || v[0].coeff.is_one() {
            return v;
        }
        let inv = v[0].coeff.inv().expect("nonzero");
        v.into_iter()
            .map(|t| VTerm {
                coeff: &t.coeff * &inv,
                ..t
            })
            .collect()
    }

    fn pair_key_cmp(&self, a: &Pair, b: &Pair) -> Ordering {
        a.lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| self.cmp((a.comp, &a.lcm), (b.comp, &b.lcm)))
            .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
    }

    /// Reduced Groebner basis, sorted ascending by leading term.
    pub fn groebner(&self, gens: Vec<Vector>) -> Result<Vec<Vector>> {
        let mut state = State {
            basis: Vec::new(),
            leads: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        for g in gens {
            if g.is_empty() {
                continue;
            }
            let g = Self::monic(g);
            self.insert(&mut state, g);
        }
        let mut steps: u64 = 0;
        while let Some(p) = state.pairs.pop() {
            steps += 1;
            if steps > self.budget {
                return Err(Error::Budget(format!(
                    "Buchberger exceeded {} pair reductions",
                    self.budget
                )));
            }
            let s = self.spoly(&state.basis[p.i], &state.basis[p.j], &p.lcm);
            let r = self.reduce_with(s, &state.basis, &state.leads, true);
            if !r.is_empty() {
                self.insert(&mut state, Self::monic(r));
            }
        }
        Ok(self.interreduce(state.basis, &state.leads))
    }

    fn insert(&self, st: &mut State, h: Vector) {
        let hl = Lead::of(&h);
        let hi = st.basis.len();
        // candidate pairs (g, h) with Gebauer-Moeller pruning
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, l) in st.leads.iter().enumerate() {
            if !st.active[g] || l.comp != hl.comp {
                continue;
            }
            let coprime = !self.module && l.mono.is_coprime(&hl.mono);
            cands.push((g, l.mono.lcm(&hl.mono), coprime));
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for k in 0..cands.len() {
            let (_, ref lcm, coprime) = cands[k];
            let dominated = cands[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|(_, other, _)| other.divides(lcm));
            if coprime || !dominated {
                kept.push(cands[k].clone());
            }
        }
        let new_pairs = kept.into_iter().filter(|(_, _, coprime)| !coprime).map(|(g, lcm, _)| Pair {
            i: g,
            j: hi,
            comp: hl.comp,
            lcm,
        });
        // chain criterion on the old pairs
        let leads = &st.leads;
        st.pairs.retain(|p| {
            if p.comp != hl.comp || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = leads[p.i].mono.lcm(&hl.mono);
            let lj = leads[p.j].mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });
        st.pairs.extend(new_pairs);
        for (g, l) in st.leads.iter().enumerate() {
            if st.active[g] && l.comp == hl.comp && hl.mono.divides(&l.mono) {
                st.active[g] = false;
            }
        }
        st.basis.push(h);
        st.leads.push(hl);
        st.active.push(true);
        st.pairs.sort_by(|a, b| self.pair_key_cmp(b, a));
    }

    fn interreduce(&self, basis: Vec<Vector>, leads: &[Lead]) -> Vec<Vector> {
        let n = basis.len();
        let mut keep = Vec::new();
        for i in 0..n {
            let li = &leads[i];
            let redundant = (0..n).any(|j| {
                j != i
                    && leads[j].comp == li.comp
                    && leads[j].mono.divides(&li.mono)
                    && (leads[j].mono != li.mono || j < i)
            });
            if !redundant {
                keep.push(i);
            }
        }
        let min_basis: Vec<Vector> = keep.iter().map(|&i| basis[i].clone()).collect();
        let min_leads: Vec<Lead> = keep.iter().map(|&i| leads[i].clone()).collect();
        let mut out: Vec<Vector> = Vec::with_capacity(keep.len());
        for k in 0..min_basis.len() {
            let g = &min_basis[k];
            let others: Vec<Vector> = min_basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| v.clone())
                .collect();
            let other_leads: Vec<Lead> = min_leads
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, l)| l.clone())
                .collect();
            let tail = self.reduce_with(g[1..].to_vec(), &others, &other_leads, true);
            let mut r = vec![g[0].clone()];
            r.extend(tail);
            out.push(Self::monic(r));
        }
        out.sort_by(|a, b| self.cmp((a[0].comp, &a[0].mono), (b[0].comp, &b[0].mono)));
        out
    }

    /// True iff every S-vector of `gens` reduces to zero modulo `gens`.
    pub fn is_groebner(&self, gens: &[Vector]) -> bool {
        let gens: Vec<Vector> = gens.iter().filter(|g| !g.is_empty()).cloned().collect();
        let leads: Vec<Lead> = gens.iter().map(|g| Lead::of(g)).collect();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if leads[i].comp != leads[j].comp {
                    continue;
                }
                let lcm = leads[i].mono.lcm(&leads[j].mono);
                let s = self.spoly(&gens[i], &gens[j], &lcm);
                if !self.reduce_with(s, &gens, &leads, true).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

struct State {
    basis: Vec<Vector>,
    leads: Vec<Lead>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}
