use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use super::{specialize, MultiPoly, Rational, Var, DEFAULT_EXPONENT_LIMIT};
use crate::{Error, Result};

/// A triangularized system of linear relations.
///
/// Each relation is solved for its largest variable (in the fixed
/// numbering), and every stored substitution is expressed in surviving
/// variables only, so a single substitution pass yields the canonical
/// representative.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearElim {
    subs: BTreeMap<Var, MultiPoly>,
    relations: Vec<MultiPoly>,
}

impl LinearElim {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_relations(rels: &[MultiPoly]) -> Result<Self> {
        let mut e = Self::new();
        for r in rels {
            e.add_relation(r)?;
        }
        Ok(e)
    }

    /// Adds `r = 0`. Dependent relations are accepted and ignored.
    pub fn add_relation(&mut self, r: &MultiPoly) -> Result<()> {
        if r.total_degree().unwrap_or(0) > 1 {
            return Err(Error::InconsistentRelations(format!("relation {r} is not linear")));
        }
        self.relations.push(r.clone());
        let red = self.reduce(r);
        if red.is_zero() {
            return Ok(());
        }
        if red.is_constant() {
            return Err(Error::InconsistentRelations(format!("relation {r} reduces to {red}")));
        }
        let pivot = *red.vars().iter().next_back().expect("nonconstant");
        let c = red.coeff(&super::Monomial::var(pivot));
        let rest = &red - &MultiPoly::var(pivot).scale(&c);
        let sol = rest.scale(&(-Rational::one() / c));
        let mut one = BTreeMap::new();
        one.insert(pivot, sol.clone());
        for v in self.subs.values_mut() {
            *v = specialize(v, &one, DEFAULT_EXPONENT_LIMIT)?;
        }
        self.subs.insert(pivot, sol);
        Ok(())
    }

    /// Canonical representative of `f` in the quotient ring.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        if self.subs.is_empty() || !f.vars().iter().any(|v| self.subs.contains_key(v)) {
            return f.clone();
        }
        specialize(f, &self.subs, u32::MAX).expect("substitution of linear forms")
    }

    pub fn is_eliminated(&self, v: Var) -> bool {
        self.subs.contains_key(&v)
    }

    pub fn eliminated(&self) -> impl Iterator<Item = Var> + '_ {
        self.subs.keys().copied()
    }

    pub fn substitution(&self, v: Var) -> Option<&MultiPoly> {
        self.subs.get(&v)
    }

    /// Relations as supplied, including dependent ones.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    /// Number of independent relations.
    pub fn rank(&self) -> usize {
        self.subs.len()
    }

    /// Variables of `all` that survive elimination.
    pub fn surviving(&self, all: &BTreeSet<Var>) -> BTreeSet<Var> {
        all.iter().copied().filter(|v| !self.subs.contains_key(v)).collect()
    }
}

/// Reduces `f` modulo the linear `relations`.
pub fn eliminate_linear(relations: &[MultiPoly], f: &MultiPoly) -> Result<MultiPoly> {
    Ok(LinearElim::from_relations(relations)?.reduce(f))
}
