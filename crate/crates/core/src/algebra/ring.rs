use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::algebra::coeff::Field;
use crate::algebra::monomial::MonomialOrder;
use crate::error::{Error, Result};

/// Default cap on S-pair reductions per Buchberger run.
pub const DEFAULT_PAIR_BUDGET: u64 = 1_000_000;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
///
/// Every ring gets a fresh identifier; polynomials from different rings
/// never mix, even when the variable lists agree. Changing the order gives
/// a new ring, and [`crate::algebra::Polynomial::map_into`] moves elements
/// across by variable name.
#[derive(Debug)]
pub struct Ring {
    id: u64,
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
    pair_budget: u64,
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        Self::with_budget(field, vars, order, DEFAULT_PAIR_BUDGET)
    }

    pub fn with_budget(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
        pair_budget: u64,
    ) -> Result<Arc<Ring>> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        order.validate(vars.len())?;
        Ok(Arc::new(Ring {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            field,
            vars,
            order,
            pair_budget,
        }))
    }

    /// Shorthand for a degrevlex ring over `field`.
    pub fn degrevlex(field: Field, vars: &[&str]) -> Result<Arc<Ring>> {
        Ring::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::DegRevLex,
        )
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn pair_budget(&self) -> u64 {
        self.pair_budget
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::with_budget(self.field, self.vars.clone(), order, self.pair_budget)
    }

    /// A ring over the same field (and budget) with other variables.
    pub fn sibling(&self, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::with_budget(self.field, vars, order, self.pair_budget)
    }

    /// A variable name not yet used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str, taken: &[String]) -> String {
        let mut name = stem.to_string();
        while self.vars.contains(&name) || taken.contains(&name) {
            name.push('_');
        }
        name
    }

    pub fn same(a: &Ring, b: &Ring) -> bool {
        a.id == b.id
    }

    pub fn ensure_same(a: &Ring, b: &Ring) -> Result<()> {
        if a.id != b.id {
            return Err(Error::RingMismatch(format!("{a} vs {b}")));
        }
        Ok(())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.field {
            Field::Rationals => "QQ".to_string(),
            Field::Prime(p) => format!("FP{p}"),
        };
        write!(f, "{k}[{}]#{}", self.vars.join(","), self.id)
    }
}
