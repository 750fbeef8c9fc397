//! Knot Floer side: master complexes over `Q[U_i, V_i]`, the `CFK_n`
//! quotients and their homology.
//!
//! A master complex carries Maslov and Alexander gradings `(M, A)`. An
//! entry `c·U^α V^β` from `x` to `y` must satisfy
//! `M(x) - M(y) = 1 - 2α` and `A(x) - A(y) = β - α`, which in terms of
//! weights means `U ~ (-2, -1)`, `V ~ (0, 1)` and `∂ ~ (-1, 0)`.

mod homology;
pub mod library;
mod ops;
mod staircase;

pub use homology::{
    e1_module, e1_page, hfk_n, hfk_n_route_a, hfk_n_route_b, paired_difference, reduced_hfk_n, w_filtered_page,
    HFKnResult, Route,
};
pub use ops::{disjoint_union, puncture, stabilize};
pub use staircase::{staircase, torus_alexander_exponents, StaircaseSpec};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;


use crate::complex::{curvature, CurvedComplex, GradingRule, RingSpec};
use crate::ring::{exact_div, rat, specialize, MultiPoly, Rational, Var, DEFAULT_EXPONENT_LIMIT};
use crate::{Error, Result};

/// The `(M, A)` grading rule shared by every master complex.
pub fn master_rule() -> GradingRule {
    GradingRule {
        u_weight: alloc::vec![rat(-2), rat(-1)],
        v_weight: alloc::vec![rat(0), rat(1)],
        degrees: alloc::vec![alloc::vec![rat(-1), rat(0)]],
    }
}

/// The functional `gr_n = -n·M + 2(n-1)·A`.
pub fn gr_n_functional(n: u32) -> Vec<Rational> {
    let n = n as i64;
    alloc::vec![rat(-n), rat(2 * (n - 1))]
}

/// A knot Floer master complex with its basepoint bookkeeping.
///
/// Basepoints are numbered `1..=k`; `a_match[i-1]` is `a(i)`, the index of
/// the `w` basepoint joined to `z_i` on the alpha side, and likewise
/// `b_match` on the beta side. `components[i-1]` names the link component
/// carrying `w_i` and `z_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterComplex {
    pub complex: CurvedComplex,
    pub a_match: Vec<u32>,
    pub b_match: Vec<u32>,
    pub components: Vec<u32>,
    pub punctured: bool,
}

impl MasterComplex {
    /// An empty complex on `k` basepoint pairs with identity matchings,
    /// all on component 1.
    pub fn new(k: u32, punctured: bool) -> Self {
        let vars = (1..=k).flat_map(|i| [Var::U(i), Var::V(i)]);
        let complex = CurvedComplex::new(RingSpec::polynomial(vars), master_rule());
        MasterComplex {
            complex,
            a_match: (1..=k).collect(),
            b_match: (1..=k).collect(),
            components: alloc::vec![1; k as usize],
            punctured,
        }
    }

    /// Number of basepoint pairs.
    pub fn k(&self) -> u32 {
        self.a_match.len() as u32
    }

    pub fn add_gen(&mut self, name: &str, m: Rational, a: Rational) -> usize {
        let h = hdeg_of(&m);
        self.complex.add_gen(name, alloc::vec![m, a], h)
    }

    pub fn add_arrow(&mut self, x: usize, y: usize, f: &MultiPoly) {
        self.complex.add_arrow(x, y, f);
    }

    pub fn maslov(&self, x: usize) -> &Rational {
        &self.complex.gens[x].grading[0]
    }

    pub fn alexander(&self, x: usize) -> &Rational {
        &self.complex.gens[x].grading[1]
    }

    /// `Σ_i (U_{a(i)} - U_{b(i)}) V_i`.
    pub fn expected_curvature(&self) -> MultiPoly {
        let mut w = MultiPoly::zero();
        for i in 1..=self.k() {
            let a = self.a_match[(i - 1) as usize];
            let b = self.b_match[(i - 1) as usize];
            if a != b {
                let d = &MultiPoly::var(Var::U(a)) - &MultiPoly::var(Var::U(b));
                w += &(&d * &MultiPoly::var(Var::V(i)));
            }
        }
        w
    }

    /// Sets the declared curvature to the value forced by the matchings.
    pub fn with_matching_curvature(mut self) -> Self {
        let w = self.expected_curvature();
        self.complex = self.complex.with_curvature(w);
        self
    }

    /// Distinct component labels in increasing order.
    pub fn component_labels(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.components.iter().copied().collect();
        s.into_iter().collect()
    }

    /// The first basepoint on each component.
    pub fn first_basepoints(&self) -> Vec<u32> {
        self.component_labels()
            .into_iter()
            .map(|c| self.components.iter().position(|x| *x == c).expect("label present") as u32 + 1)
            .collect()
    }
}

/// Homological degree used for Koszul signs: the Maslov grading rounded
/// down (Maslov gradings of one complex differ by integers).
fn hdeg_of(m: &Rational) -> i64 {
    m.floor().to_integer().try_into().unwrap_or(0)
}

fn is_permutation(p: &[u32]) -> bool {
    let k = p.len() as u32;
    let s: BTreeSet<u32> = p.iter().copied().collect();
    s.len() == p.len() && p.iter().all(|&x| (1..=k).contains(&x))
}

/// Checks matchings, variables, grading homogeneity and the curvature
/// identity; reports the first violation.
pub fn validate_master(m: &MasterComplex) -> Result<()> {
    let k = m.k();
    if m.b_match.len() as u32 != k || m.components.len() as u32 != k {
        return Err(Error::InvalidMaster(format!(
            "matching lengths {} / {} and component list {} disagree",
            m.a_match.len(),
            m.b_match.len(),
            m.components.len()
        )));
    }
    if !is_permutation(&m.a_match) {
        return Err(Error::InvalidMaster(format!("a-matching {:?} is not a permutation", m.a_match)));
    }
    if !is_permutation(&m.b_match) {
        return Err(Error::InvalidMaster(format!("b-matching {:?} is not a permutation", m.b_match)));
    }
    for i in 0..k as usize {
        if m.components[m.a_match[i] as usize - 1] != m.components[i]
            || m.components[m.b_match[i] as usize - 1] != m.components[i]
        {
            return Err(Error::InvalidMaster(format!("z{} is matched across link components", i + 1)));
        }
    }
    if m.complex.rule != master_rule() {
        return Err(Error::InvalidMaster("grading rule is not the (M, A) rule".to_string()));
    }
    for v in m.complex.ring.vars() {
        let ok = matches!(v, Var::U(i) | Var::V(i) if (1..=k).contains(i));
        if !ok {
            return Err(Error::InvalidMaster(format!("variable {v} is not a basepoint variable")));
        }
    }
    m.complex.check_gradings().map_err(|e| Error::InvalidMaster(e.to_string()))?;
    let w = curvature(&m.complex).map_err(|e| Error::InvalidMaster(e.to_string()))?;
    let expected = m.complex.ring.reduce(&m.expected_curvature());
    if w != expected {
        return Err(Error::InvalidMaster(format!("∂² is {w} but the matchings force {expected}")));
    }
    if m.complex.curvature != expected {
        return Err(Error::InvalidMaster(format!(
            "declared curvature {} differs from the matching value {expected}",
            m.complex.curvature
        )));
    }
    Ok(())
}

/// `(U_a^n - U_b^n) / (U_a - U_b)`, or `n·U_a^{n-1}` when `a = b`.
pub fn v_substitute(a: u32, b: u32, n: u32) -> Result<MultiPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".to_string()));
    }
    let ua = MultiPoly::var(Var::U(a));
    if a == b {
        return Ok(ua.pow(n - 1, DEFAULT_EXPONENT_LIMIT)?.scale(&rat(n as i64)));
    }
    let ub = MultiPoly::var(Var::U(b));
    let num = &ua.pow(n, DEFAULT_EXPONENT_LIMIT)? - &ub.pow(n, DEFAULT_EXPONENT_LIMIT)?;
    exact_div(&num, &(&ua - &ub))
}

/// `CFK_n`: substitutes every `V_i` and collapses `(M, A)` to `gr_n`.
///
/// The result lives over `Q[U_1..U_k]` with `U` of weight 2 and a
/// differential of degree `n`; its curvature vanishes.
pub fn cfk_n(m: &MasterComplex, n: u32) -> Result<CurvedComplex> {
    let mut subs = BTreeMap::new();
    for i in 1..=m.k() {
        let (a, b) = (m.a_match[(i - 1) as usize], m.b_match[(i - 1) as usize]);
        subs.insert(Var::V(i), v_substitute(a, b, n)?);
    }
    let proj = [gr_n_functional(n)];
    let projected = m.complex.projected(&proj);
    let ring = RingSpec::polynomial((1..=m.k()).map(Var::U));
    let mut out = CurvedComplex::new(ring, projected.rule.clone());
    out.gens = projected.gens.clone();
    out.diff = alloc::vec![BTreeMap::new(); out.gens.len()];
    for (x, y, f) in m.complex.arrows() {
        let g = specialize(f, &subs, DEFAULT_EXPONENT_LIMIT)?;
        out.add_arrow(x, y, &g);
    }
    let w = curvature(&out)?;
    if !w.is_zero() {
        return Err(Error::NotCurved(format!("CFK_{n} has ∂² = {w}")));
    }
    Ok(out)
}

/// Sets every variable in `vars` to zero in the ring of `c`.
pub fn kill_vars(c: &CurvedComplex, vars: &[Var]) -> Result<CurvedComplex> {
    let mut ring = c.ring.clone();
    for v in vars {
        ring = ring.with_monomial(crate::ring::Monomial::var(*v))?;
    }
    Ok(c.over_ring(ring))
}
