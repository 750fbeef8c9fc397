//! Graded curved chain complexes over polynomial rings and their homology.
//!
//! A [`CurvedComplex`] is a free module on named generators with a
//! differential whose square is `ω·Id` for a scalar `ω`. Homology is
//! available through three engines:
//!
//! * [`snf_homology`] decomposes a complex over `Q[U]` into free and
//!   `U`-torsion summands;
//! * [`graded_homology`] computes dimensions degree by degree over `Q`;
//! * [`two_step_homology`] takes homology of one part of the differential
//!   and then of the map induced by the rest.

mod cancel;
mod dims;
mod engine;
mod snf;

pub use cancel::{gaussian_cancel, gaussian_cancel_where};
pub use dims::GradedDims;
pub use engine::{
    graded_homology, induced_map_rank, two_step_homology, two_step_pages, DegreewiseEngine, Split, TwoStepPages,
};
pub use snf::{snf_homology, ModuleDecomp, Summand};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::ring::{LinearElim, Monomial, MultiPoly, Rational, Var};
use crate::{Error, Result};

/// Ground ring: polynomials in `vars` modulo linear relations and a
/// monomial ideal (in the surviving variables).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RingSpec {
    vars: BTreeSet<Var>,
    linear: LinearElim,
    monomial: Vec<Monomial>,
}

impl RingSpec {
    pub fn polynomial<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        RingSpec { vars: vars.into_iter().collect(), ..Default::default() }
    }

    pub fn with_linear(mut self, rels: &[MultiPoly]) -> Result<Self> {
        for r in rels {
            self.linear.add_relation(r)?;
        }
        Ok(self)
    }

    /// Adds the relation `m = 0`; `m` must live in surviving variables.
    pub fn with_monomial(mut self, m: Monomial) -> Result<Self> {
        if m.vars().any(|v| self.linear.is_eliminated(v)) {
            return Err(Error::InconsistentRelations(format!("monomial relation {m} uses an eliminated variable")));
        }
        if !self.monomial.iter().any(|k| k.divides(&m)) {
            self.monomial.retain(|k| !m.divides(k));
            self.monomial.push(m);
            self.monomial.sort();
        }
        Ok(self)
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn surviving_vars(&self) -> Vec<Var> {
        self.linear.surviving(&self.vars).into_iter().collect()
    }

    pub fn linear(&self) -> &LinearElim {
        &self.linear
    }

    pub fn monomial_relations(&self) -> &[Monomial] {
        &self.monomial
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.monomial.iter().any(|k| k.divides(m))
    }

    /// Normal form in the ring.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let g = self.linear.reduce(f);
        if self.monomial.is_empty() {
            g
        } else {
            g.filter_terms(|m| self.is_standard(m))
        }
    }

    /// All relations as polynomials (linear ones as supplied, then the
    /// monomial generators).
    pub fn relations(&self) -> Vec<MultiPoly> {
        let mut out: Vec<MultiPoly> = self.linear.relations().to_vec();
        out.extend(self.monomial.iter().map(|m| MultiPoly::term(m.clone(), Rational::one())));
        out
    }

    /// Rebuilds a ring from variables and relations; linear relations and
    /// single-term relations are accepted.
    pub fn from_relations(vars: BTreeSet<Var>, rels: &[MultiPoly]) -> Result<Self> {
        let mut r = RingSpec { vars, ..Default::default() };
        let (lin, mono): (Vec<&MultiPoly>, Vec<&MultiPoly>) =
            rels.iter().partition(|p| p.total_degree().unwrap_or(0) <= 1);
        for p in lin {
            r.linear.add_relation(p)?;
        }
        for p in mono {
            if p.nterms() != 1 {
                return Err(Error::InconsistentRelations(format!("unsupported relation {p}")));
            }
            let (m, _) = p.leading_term().expect("one term");
            r = r.with_monomial(m.clone())?;
        }
        Ok(r)
    }

    /// Ring generated by both variable sets, subject to both relation sets.
    pub fn union(&self, other: &RingSpec) -> Result<RingSpec> {
        let vars: BTreeSet<Var> = self.vars.union(&other.vars).copied().collect();
        let mut rels = self.linear.relations().to_vec();
        rels.extend_from_slice(other.linear.relations());
        let mut r = RingSpec { vars, ..Default::default() }.with_linear(&rels)?;
        for m in self.monomial.iter().chain(other.monomial.iter()) {
            r = r.with_monomial(m.clone())?;
        }
        Ok(r)
    }
}

/// Multi-degrees of variables and the allowed degrees of differential
/// entries. An entry `c·m` from `x` to `y` is homogeneous when
/// `gr(y) + wt(m) = gr(x) + d` for one of the allowed degrees `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingRule {
    pub u_weight: Vec<Rational>,
    pub v_weight: Vec<Rational>,
    pub degrees: Vec<Vec<Rational>>,
}

impl GradingRule {
    pub fn rank(&self) -> usize {
        self.u_weight.len()
    }

    pub fn weight(&self, v: Var) -> Vec<Rational> {
        match v {
            Var::U(_) => self.u_weight.clone(),
            Var::V(_) => self.v_weight.clone(),
            _ => alloc::vec![Rational::zero(); self.rank()],
        }
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Vec<Rational> {
        let mut w = alloc::vec![Rational::zero(); self.rank()];
        for &(v, e) in m.pairs() {
            let e = Rational::from_integer(e.into());
            for (k, x) in self.weight(v).iter().enumerate() {
                w[k] += x * &e;
            }
        }
        w
    }

    /// Applies the linear map `proj` (rows are functionals) to every
    /// weight and degree.
    pub fn project(&self, proj: &[Vec<Rational>]) -> GradingRule {
        GradingRule {
            u_weight: apply(proj, &self.u_weight),
            v_weight: apply(proj, &self.v_weight),
            degrees: dedup(self.degrees.iter().map(|d| apply(proj, d)).collect()),
        }
    }
}

fn dedup(mut v: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    v.sort();
    v.dedup();
    v
}

/// Applies a matrix (list of row functionals) to a vector.
pub fn apply(proj: &[Vec<Rational>], g: &[Rational]) -> Vec<Rational> {
    proj.iter().map(|row| row.iter().zip(g).fold(Rational::zero(), |a, (r, x)| a + r * x)).collect()
}

pub(crate) fn vadd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vsub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// A basis element: name, multi-grading and an integer homological degree
/// whose parity drives the Koszul sign rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub grading: Vec<Rational>,
    pub hdeg: i64,
}

/// A finitely generated free graded module with a curved differential.
///
/// `diff[x]` maps targets `y` to the coefficient of `y` in `∂x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedComplex {
    pub ring: RingSpec,
    pub rule: GradingRule,
    pub gens: Vec<Generator>,
    pub diff: Vec<BTreeMap<usize, MultiPoly>>,
    pub curvature: MultiPoly,
}

impl CurvedComplex {
    pub fn new(ring: RingSpec, rule: GradingRule) -> Self {
        CurvedComplex { ring, rule, gens: Vec::new(), diff: Vec::new(), curvature: MultiPoly::zero() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add_gen(&mut self, name: impl Into<String>, grading: Vec<Rational>, hdeg: i64) -> usize {
        self.gens.push(Generator { name: name.into(), grading, hdeg });
        self.diff.push(BTreeMap::new());
        self.gens.len() - 1
    }

    /// Adds `f` to the coefficient of `y` in `∂x`, reducing in the ring.
    pub fn add_arrow(&mut self, x: usize, y: usize, f: &MultiPoly) {
        let cur = self.diff[x].remove(&y).unwrap_or_default();
        let next = self.ring.reduce(&(&cur + f));
        if !next.is_zero() {
            self.diff[x].insert(y, next);
        }
    }

    pub fn with_curvature(mut self, w: MultiPoly) -> Self {
        self.curvature = self.ring.reduce(&w);
        self
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, &MultiPoly)> {
        self.diff.iter().enumerate().flat_map(|(x, m)| m.iter().map(move |(y, f)| (x, *y, f)))
    }

    pub fn arrow(&self, x: usize, y: usize) -> Option<&MultiPoly> {
        self.diff[x].get(&y)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    /// The degree of an entry, `gr(y) + wt(m) - gr(x)` for each term.
    pub fn entry_degree(&self, x: usize, y: usize, f: &MultiPoly) -> Option<Vec<Rational>> {
        let base = vsub(&self.gens[y].grading, &self.gens[x].grading);
        f.weighted_degree(|m| vadd(&base, &self.rule.monomial_weight(m)))
    }

    /// Checks names, grading lengths, homogeneity and the Koszul parity of
    /// every entry.
    pub fn check_gradings(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.gens {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::GradingViolation(format!("duplicate generator name {}", g.name)));
            }
            if g.grading.len() != self.rule.rank() {
                return Err(Error::GradingViolation(format!("generator {} has the wrong grading length", g.name)));
            }
        }
        for (x, y, f) in self.arrows() {
            let d = self.entry_degree(x, y, f);
            let ok = d.as_ref().is_some_and(|d| self.rule.degrees.contains(d));
            if !ok {
                return Err(Error::GradingViolation(format!(
                    "entry {} -> {} with coefficient {} is not homogeneous of an allowed degree",
                    self.gens[x].name, self.gens[y].name, f
                )));
            }
            if (self.gens[x].hdeg - self.gens[y].hdeg).rem_euclid(2) != 1 {
                return Err(Error::GradingViolation(format!(
                    "entry {} -> {} preserves homological parity",
                    self.gens[x].name, self.gens[y].name
                )));
            }
        }
        Ok(())
    }

    /// `∂²` as a map `x -> (y -> coefficient)`.
    pub fn square(&self) -> Vec<BTreeMap<usize, MultiPoly>> {
        compose(self, &self.diff, &self.diff)
    }

    /// Full validation: gradings plus the declared curvature.
    pub fn validate(&self) -> Result<()> {
        self.check_gradings()?;
        let w = curvature(self)?;
        if w != self.curvature {
            return Err(Error::CurvatureMismatch { declared: self.curvature.to_string(), computed: w.to_string() });
        }
        Ok(())
    }

    /// Copy with every grading shifted by `by`.
    pub fn shifted(&self, by: &[Rational], hshift: i64) -> CurvedComplex {
        let mut c = self.clone();
        for g in &mut c.gens {
            g.grading = vadd(&g.grading, by);
            g.hdeg += hshift;
        }
        c
    }

    /// Copy with gradings mapped through `proj`.
    pub fn projected(&self, proj: &[Vec<Rational>]) -> CurvedComplex {
        let mut c = self.clone();
        c.rule = self.rule.project(proj);
        for g in &mut c.gens {
            g.grading = apply(proj, &g.grading);
        }
        c
    }

    /// Copy over a different ring; entries and curvature are re-reduced.
    pub fn over_ring(&self, ring: RingSpec) -> CurvedComplex {
        let mut c = CurvedComplex::new(ring, self.rule.clone());
        c.gens = self.gens.clone();
        c.diff = alloc::vec![BTreeMap::new(); self.gens.len()];
        for (x, y, f) in self.arrows() {
            c.add_arrow(x, y, f);
        }
        c.curvature = c.ring.reduce(&self.curvature);
        c
    }

    /// Copy keeping only the entries accepted by `keep`.
    pub fn filter_arrows<F: Fn(usize, usize, &MultiPoly) -> bool>(&self, keep: F) -> CurvedComplex {
        let mut c = self.clone();
        for (x, m) in c.diff.iter_mut().enumerate() {
            m.retain(|y, f| keep(x, *y, f));
        }
        c
    }

    /// Copy with every entry rewritten by `f` (and re-reduced).
    pub fn map_entries<F: Fn(&MultiPoly) -> MultiPoly>(&self, f: F) -> CurvedComplex {
        let mut c = self.clone();
        c.diff = alloc::vec![BTreeMap::new(); self.gens.len()];
        for (x, y, e) in self.arrows() {
            c.add_arrow(x, y, &f(e));
        }
        c
    }

    /// Total number of nonzero entries.
    pub fn n_arrows(&self) -> usize {
        self.diff.iter().map(|m| m.len()).sum()
    }
}

/// Composite `second ∘ first` of two generator-level maps over the ring
/// of `c`: the coefficient of `z` in `second(first(x))`.
pub fn compose(
    c: &CurvedComplex,
    first: &[BTreeMap<usize, MultiPoly>],
    second: &[BTreeMap<usize, MultiPoly>],
) -> Vec<BTreeMap<usize, MultiPoly>> {
    let mut out = alloc::vec![BTreeMap::new(); first.len()];
    for (x, row) in first.iter().enumerate() {
        let mut acc: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (y, f) in row {
            for (z, g) in &second[*y] {
                *acc.entry(*z).or_default() += &(f * g);
            }
        }
        for (z, p) in acc {
            let p = c.ring.reduce(&p);
            if !p.is_zero() {
                out[x].insert(z, p);
            }
        }
    }
    out
}

/// Computes `ω` with `∂² = ω·Id`; fails when `∂²` is not scalar.
pub fn curvature(c: &CurvedComplex) -> Result<MultiPoly> {
    let sq = c.square();
    let mut w: Option<MultiPoly> = None;
    for (x, row) in sq.iter().enumerate() {
        for (y, f) in row {
            if *y != x {
                return Err(Error::NotCurved(format!(
                    "∂² has entry {} from {} to {}",
                    f, c.gens[x].name, c.gens[*y].name
                )));
            }
        }
        let d = row.get(&x).cloned().unwrap_or_default();
        match &w {
            None => w = Some(d),
            Some(w0) if *w0 != d => {
                return Err(Error::NotCurved(format!(
                    "∂² is {} on {} but {} on {}",
                    w0, c.gens[0].name, d, c.gens[x].name
                )))
            }
            _ => {}
        }
    }
    Ok(w.unwrap_or_default())
}

/// Tensor product over the union ring; generator `x|y` has grading
/// `gr(x) + gr(y)` and the second factor's differential carries the sign
/// `(-1)^hdeg(x)`.
pub fn tensor(c1: &CurvedComplex, c2: &CurvedComplex) -> Result<CurvedComplex> {
    if c1.rule != c2.rule {
        return Err(Error::RingMismatch(String::from("grading rules differ")));
    }
    let ring = c1.ring.union(&c2.ring)?;
    let mut t = CurvedComplex::new(ring, c1.rule.clone());
    let n2 = c2.len();
    for g1 in &c1.gens {
        for g2 in &c2.gens {
            t.add_gen(format!("{}|{}", g1.name, g2.name), vadd(&g1.grading, &g2.grading), g1.hdeg + g2.hdeg);
        }
    }
    for (x1, y1, f) in c1.arrows() {
        for j in 0..n2 {
            t.add_arrow(x1 * n2 + j, y1 * n2 + j, f);
        }
    }
    for (i, g1) in c1.gens.iter().enumerate() {
        let sign = if g1.hdeg.rem_euclid(2) == 0 { Rational::one() } else { -Rational::one() };
        for (x2, y2, f) in c2.arrows() {
            t.add_arrow(i * n2 + x2, i * n2 + y2, &f.scale(&sign));
        }
    }
    t.curvature = t.ring.reduce(&(&c1.curvature + &c2.curvature));
    Ok(t)
}

/// Tensor product that insists on disjoint variable sets.
pub fn tensor_disjoint(c1: &CurvedComplex, c2: &CurvedComplex) -> Result<CurvedComplex> {
    if let Some(v) = c1.ring.vars().intersection(c2.ring.vars()).next() {
        return Err(Error::RingMismatch(format!("variable {v} occurs in both factors")));
    }
    tensor(c1, c2)
}

/// Mapping cone of the scalar `f` acting on `c`: two copies, the first
/// mapping to the second by `f`, with the second copy's differential
/// negated. `shift` is added to the gradings of the second copy so that
/// `f` becomes homogeneous.
pub fn scalar_cone(c: &CurvedComplex, f: &MultiPoly, shift: &[Rational]) -> CurvedComplex {
    let n = c.len();
    let mut t = CurvedComplex::new(c.ring.clone(), c.rule.clone());
    for g in &c.gens {
        t.add_gen(format!("{}|top", g.name), g.grading.clone(), g.hdeg);
    }
    for g in &c.gens {
        t.add_gen(format!("{}|bot", g.name), vadd(&g.grading, shift), g.hdeg + 1);
    }
    for (x, y, e) in c.arrows() {
        t.add_arrow(x, y, e);
        t.add_arrow(n + x, n + y, &-e);
    }
    for x in 0..n {
        t.add_arrow(x, n + x, f);
    }
    t.curvature = c.curvature.clone();
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, Var};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn rule_ma() -> GradingRule {
        GradingRule {
            u_weight: alloc::vec![rat(-2), rat(-1)],
            v_weight: alloc::vec![rat(0), rat(1)],
            degrees: alloc::vec![alloc::vec![rat(-1), rat(0)]],
        }
    }

    #[test]
    fn curvature_of_two_component_master_data() {
        // a(1)=1, b(1)=2, a(2)=2, b(2)=1: one generator pair with
        // differential chosen so that ∂² is the scalar of the matchings.
        let ring = RingSpec::polynomial([Var::U(1), Var::U(2), Var::V(1), Var::V(2)]);
        let mut c = CurvedComplex::new(ring, rule_ma());
        let x = c.add_gen("x", alloc::vec![rat(0), rat(0)], 0);
        let y = c.add_gen("y", alloc::vec![rat(-1), rat(0)], -1);
        c.add_arrow(x, y, &p("U1 - U2"));
        c.add_arrow(y, x, &p("V1 - V2"));
        let w = curvature(&c).unwrap();
        assert_eq!(w, p("U1*V1 - U2*V1 - U1*V2 + U2*V2"));
        assert_eq!(w, &(&p("U1 - U2") * &p("V1")) + &(&p("U2 - U1") * &p("V2")));
    }

    #[test]
    fn stray_entry_is_not_curved() {
        let ring = RingSpec::polynomial([Var::U(1), Var::V(1)]);
        let mut c = CurvedComplex::new(ring, rule_ma());
        let x = c.add_gen("x", alloc::vec![rat(0), rat(0)], 0);
        let y = c.add_gen("y", alloc::vec![rat(-1), rat(0)], 1);
        let z = c.add_gen("z", alloc::vec![rat(-2), rat(0)], 2);
        c.add_arrow(x, y, &p("1"));
        c.add_arrow(y, z, &p("1"));
        assert!(matches!(curvature(&c), Err(Error::NotCurved(_))));
    }

    #[test]
    fn tensor_unit() {
        let ring = RingSpec::polynomial([Var::U(1), Var::V(1)]);
        let mut c = CurvedComplex::new(ring.clone(), rule_ma());
        let x = c.add_gen("x", alloc::vec![rat(-1), rat(0)], -1);
        let y = c.add_gen("y", alloc::vec![rat(0), rat(0)], 0);
        c.add_arrow(x, y, &p("U1*V1"));
        let mut unit = CurvedComplex::new(RingSpec::polynomial([]), rule_ma());
        unit.add_gen("e", alloc::vec![rat(2), rat(1)], 0);
        let t = tensor(&c, &unit).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.gens[0].grading, alloc::vec![rat(1), rat(1)]);
        assert_eq!(t.arrow(0, 1), Some(&p("U1*V1")));
        t.validate().unwrap();
    }
}
