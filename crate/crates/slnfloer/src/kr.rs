//! Khovanov-Rozansky complexes of braid closures.
//!
//! A closed braid is read as an oriented graph whose 4-valent vertices are
//! the crossings. Each crossing contributes a square of free modules over
//! the edge ring (polynomials in one variable per edge, modulo the linear
//! vertex relations), and the complex of the diagram is their tensor
//! product, shifted and tensored with a small flavor factor.
//!
//! Gradings are triples `(q, h, v)`; every `U_i` has degree `(2, 0, 0)`.
//! The vertex maps `d_+` have degree `(2, 2, 0)`, the edge maps `d_v`
//! degree `(0, 0, 2)`, and the sl(n) back-arrows `d_-` degree
//! `(2n, -2, 0)`, so that `d_+ + d_-` is homogeneous of degree `n + 1` for
//! `gr_n = q + (n-1)/2 · h`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::complex::{
    tensor, two_step_pages, CurvedComplex, GradedDims, GradingRule, RingSpec, Split, TwoStepPages,
};
use crate::ring::{exact_div, frac, rat, LExp, LaurentPoly, Monomial, MultiPoly, Rational, Var};
use crate::{Error, Result};

/// A crossing of the closed braid: incoming edges `b1, b2` and outgoing
/// edges `a1, a2`, where `b1 -> a1` is the strand staying in the left
/// position under the oriented smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub a1: u32,
    pub a2: u32,
    pub b1: u32,
    pub b2: u32,
    /// `+1` for `σ_i`, `-1` for `σ_i^{-1}`.
    pub sign: i8,
}

/// The closure of a braid word as an oriented 4-valent graph with one
/// marked edge (the bivalent decoration sits on it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidDiagram {
    strands: u32,
    word: Vec<i32>,
    edges: u32,
    vertices: Vec<Vertex>,
    marked: u32,
    perm: Vec<u32>,
}

impl BraidDiagram {
    /// Closure of `word` on `strands` strands; `k` stands for `σ_k` and
    /// `-k` for its inverse. Edges are numbered from 1 in order of first
    /// appearance, starting with the strands at the top of the braid.
    pub fn new(strands: u32, word: &[i32]) -> Result<Self> {
        if strands == 0 {
            return Err(Error::BadWord("a braid needs at least one strand".to_string()));
        }
        for &g in word {
            if g == 0 || g.unsigned_abs() >= strands {
                return Err(Error::BadWord(format!("generator {g} is out of range for {strands} strands")));
            }
        }
        // Provisional ids: 0..strands for the top ends, then two per crossing.
        let mut at: Vec<u32> = (0..strands).collect();
        let mut next = strands;
        let mut raw: Vec<(u32, u32, u32, u32, i8)> = Vec::with_capacity(word.len());
        for &g in word {
            let i = (g.unsigned_abs() - 1) as usize;
            let (b1, b2) = (at[i], at[i + 1]);
            let (a1, a2) = (next, next + 1);
            next += 2;
            at[i] = a1;
            at[i + 1] = a2;
            raw.push((a1, a2, b1, b2, if g > 0 { 1 } else { -1 }));
        }
        // Closing up identifies the bottom end of each position with its top.
        let mut merge: BTreeMap<u32, u32> = BTreeMap::new();
        for (p, &e) in at.iter().enumerate() {
            if e != p as u32 {
                merge.insert(e, p as u32);
            }
        }
        let mut number: BTreeMap<u32, u32> = BTreeMap::new();
        let mut label = |e: u32| -> u32 {
            let e = *merge.get(&e).unwrap_or(&e);
            let n = number.len() as u32 + 1;
            *number.entry(e).or_insert(n)
        };
        for p in 0..strands {
            label(p);
        }
        let vertices: Vec<Vertex> = raw
            .iter()
            .map(|&(a1, a2, b1, b2, sign)| Vertex { a1: label(a1), a2: label(a2), b1: label(b1), b2: label(b2), sign })
            .collect();
        let edges = number.len() as u32;
        // Permutation of positions induced by the braid.
        let mut perm: Vec<u32> = (0..strands).collect();
        for &g in word {
            let i = (g.unsigned_abs() - 1) as usize;
            perm.swap(i, i + 1);
        }
        Ok(BraidDiagram { strands, word: word.to_vec(), edges, vertices, marked: 1, perm })
    }

    /// Parses `strands=2 word=1,1,1 [mark=1]`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut strands = None;
        let mut word: Option<Vec<i32>> = None;
        let mut mark = None;
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::BadWord(format!("expected key=value, found '{tok}'")))?;
            let bad = |_| Error::BadWord(format!("cannot read '{tok}'"));
            match k {
                "strands" => strands = Some(v.parse::<u32>().map_err(bad)?),
                "word" => {
                    word = Some(if v.is_empty() {
                        Vec::new()
                    } else {
                        v.split(',').map(|x| x.trim().parse::<i32>().map_err(bad)).collect::<Result<_>>()?
                    })
                }
                "mark" => mark = Some(v.parse::<u32>().map_err(bad)?),
                _ => return Err(Error::BadWord(format!("unknown key '{k}'"))),
            }
        }
        let strands = strands.ok_or_else(|| Error::BadWord("missing strands=".to_string()))?;
        let d = BraidDiagram::new(strands, &word.unwrap_or_default())?;
        match mark {
            Some(m) => d.with_mark(m),
            None => Ok(d),
        }
    }

    /// Moves the decoration to edge `e`.
    pub fn with_mark(mut self, e: u32) -> Result<Self> {
        if e == 0 || e > self.edges {
            return Err(Error::BadWord(format!("marked edge {e} out of range 1..={}", self.edges)));
        }
        self.marked = e;
        Ok(self)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn word(&self) -> &[i32] {
        &self.word
    }

    pub fn edges(&self) -> u32 {
        self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn marked(&self) -> u32 {
        self.marked
    }

    pub fn writhe(&self) -> i64 {
        self.vertices.iter().map(|v| v.sign as i64).sum()
    }

    /// Number of components of the closure (cycles of the permutation).
    pub fn components(&self) -> usize {
        let n = self.strands as usize;
        let mut seen = alloc::vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if !seen[s] {
                count += 1;
                let mut p = s;
                while !seen[p] {
                    seen[p] = true;
                    p = self.perm[p] as usize;
                }
            }
        }
        count
    }
}

/// Polynomials in the edge variables modulo `L(v) = 0` at every crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRing {
    ring: RingSpec,
}

fn u(i: u32) -> MultiPoly {
    MultiPoly::var(Var::U(i))
}

/// `L(v) = U_{a1} + U_{a2} - U_{b1} - U_{b2}`.
pub fn linear_term(v: &Vertex) -> MultiPoly {
    &(&u(v.a1) + &u(v.a2)) - &(&u(v.b1) + &u(v.b2))
}

/// `Q(v) = U_{a1} U_{a2} - U_{b1} U_{b2}`.
pub fn quadratic_term(v: &Vertex) -> MultiPoly {
    &(&u(v.a1) * &u(v.a2)) - &(&u(v.b1) * &u(v.b2))
}

/// `w = U_{a1}^m + U_{a2}^m - U_{b1}^m - U_{b2}^m`.
pub fn potential(v: &Vertex, m: u32) -> MultiPoly {
    let p = |i: u32| MultiPoly::var_pow(Var::U(i), m);
    &(&p(v.a1) + &p(v.a2)) - &(&p(v.b1) + &p(v.b2))
}

impl EdgeRing {
    /// The ring with only the relations of the given vertices.
    pub fn for_vertices(edges: u32, vertices: &[Vertex]) -> Result<Self> {
        let rels: Vec<MultiPoly> = vertices.iter().map(linear_term).collect();
        let ring = RingSpec::polynomial((1..=edges).map(Var::U)).with_linear(&rels)?;
        Ok(EdgeRing { ring })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        self.ring.reduce(f)
    }

    pub fn surviving(&self) -> Vec<Var> {
        self.ring.surviving_vars()
    }

    /// Number of independent linear relations.
    pub fn relation_rank(&self) -> usize {
        self.ring.linear().rank()
    }
}

/// The edge ring of a diagram.
pub fn edge_ring(d: &BraidDiagram) -> Result<EdgeRing> {
    EdgeRing::for_vertices(d.edges, &d.vertices)
}

/// The pair `(p_1, p_2)` with `(U_{a1} - U_{b1}) p_1 = Q(v) p_2 = w` in the
/// edge ring, `w` the degree-`m` potential of `v`. Division is exact in the
/// surviving variables, where the ring is a polynomial ring.
pub fn p_pair(v: &Vertex, m: u32, r: &EdgeRing) -> Result<(MultiPoly, MultiPoly)> {
    if m == 0 {
        return Err(Error::InvalidArgument("potential exponent must be at least 1".to_string()));
    }
    let w = r.reduce(&potential(v, m));
    if w.is_zero() {
        return Ok((MultiPoly::zero(), MultiPoly::zero()));
    }
    let p1 = exact_div(&w, &r.reduce(&(&u(v.a1) - &u(v.b1))))?;
    let p2 = exact_div(&w, &r.reduce(&quadratic_term(v)))?;
    Ok((p1, p2))
}

/// Which differentials are present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Homfly,
    /// sl(n), with potential exponent `n + 1`.
    Sln(u32),
}

impl Mode {
    fn n(&self) -> Option<u32> {
        match self {
            Mode::Homfly => None,
            Mode::Sln(n) => Some(*n),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Middle,
    Reduced,
    Unreduced,
}

fn triple(q: i64, h: i64, v: i64) -> Vec<Rational> {
    alloc::vec![rat(q), rat(h), rat(v)]
}

fn kr_rule(mode: Mode) -> GradingRule {
    let mut degrees = alloc::vec![triple(2, 2, 0), triple(0, 0, 2)];
    if let Some(n) = mode.n() {
        degrees.push(triple(2 * n as i64, -2, 0));
    }
    GradingRule { u_weight: triple(2, 0, 0), v_weight: triple(0, 0, 0), degrees }
}

fn add_triple(c: &mut CurvedComplex, name: String, g: Vec<Rational>) -> usize {
    let h = crate::ring::to_i64(&(&g[1] + &g[2])).expect("integral") / 2;
    c.add_gen(name, g, h)
}

/// The square of one crossing. Generators `xy` sit at cube position
/// `(x, y)`: `d_+` runs along rows, `d_v` down columns, and in sl(n) mode
/// the back-arrows `p_1`, `p_2` make each row a matrix factorization of
/// the potential `w_{n+1}(v)`.
pub fn crossing_complex(v: &Vertex, label: &str, mode: Mode, r: &EdgeRing) -> Result<CurvedComplex> {
    let mut c = CurvedComplex::new(r.ring().clone(), kr_rule(mode));
    let q = r.reduce(&quadratic_term(v));
    let s1 = r.reduce(&(&u(v.a1) - &u(v.b1)));
    let s2 = r.reduce(&(&u(v.a1) - &u(v.b2)));
    let one = MultiPoly::one();
    let back = match mode.n() {
        Some(n) => Some(p_pair(v, n + 1, r)?),
        None => None,
    };
    let name = |s: &str| format!("{label}:{s}");
    if v.sign > 0 {
        let g00 = add_triple(&mut c, name("00"), triple(2, -2, -2));
        let g01 = add_triple(&mut c, name("01"), triple(0, 0, -2));
        let g10 = add_triple(&mut c, name("10"), triple(0, -2, 0));
        let g11 = add_triple(&mut c, name("11"), triple(0, 0, 0));
        c.add_arrow(g00, g01, &q);
        c.add_arrow(g10, g11, &s1);
        c.add_arrow(g00, g10, &s2);
        c.add_arrow(g01, g11, &one);
        if let Some((p1, p2)) = back {
            c.add_arrow(g01, g00, &p2);
            c.add_arrow(g11, g10, &p1);
        }
    } else {
        let h00 = add_triple(&mut c, name("00"), triple(0, -2, 0));
        let h01 = add_triple(&mut c, name("01"), triple(0, 0, 0));
        let h10 = add_triple(&mut c, name("10"), triple(0, -2, 2));
        let h11 = add_triple(&mut c, name("11"), triple(-2, 0, 2));
        c.add_arrow(h00, h01, &s1);
        c.add_arrow(h10, h11, &q);
        c.add_arrow(h00, h10, &one);
        c.add_arrow(h01, h11, &s2);
        if let Some((p1, p2)) = back {
            c.add_arrow(h01, h00, &p1);
            c.add_arrow(h11, h10, &p2);
        }
    }
    if let Some(n) = mode.n() {
        c.curvature = r.reduce(&potential(v, n + 1));
    }
    Ok(c)
}

/// A Khovanov-Rozansky complex with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRComplex {
    pub complex: CurvedComplex,
    pub mode: Mode,
    pub flavor: Flavor,
    pub writhe: i64,
    pub strands: u32,
    /// The marked edge.
    pub marked: u32,
}

/// Tensor product of the crossing complexes, shifted by
/// `{-w + b, w + b - 1, w - b + 1}` and tensored with the flavor factor.
pub fn kr_complex(d: &BraidDiagram, flavor: Flavor, mode: Mode) -> Result<KRComplex> {
    let r = edge_ring(d)?;
    let rule = kr_rule(mode);
    let mut acc = CurvedComplex::new(r.ring().clone(), rule.clone());
    let (w, b) = (d.writhe(), d.strands as i64);
    add_triple(&mut acc, "s".to_string(), triple(-w + b, w + b - 1, w - b + 1));
    for (i, v) in d.vertices.iter().enumerate() {
        let cv = crossing_complex(v, &format!("c{}", i + 1), mode, &r)?;
        acc = tensor(&acc, &cv)?;
    }
    let mark = r.reduce(&u(d.marked));
    let mut f = CurvedComplex::new(r.ring().clone(), rule);
    match (flavor, mode) {
        (Flavor::Middle, _) => {
            add_triple(&mut f, "m".to_string(), triple(0, 0, 0));
        }
        (Flavor::Reduced, _) => {
            let x = add_triple(&mut f, "r0".to_string(), triple(1, 0, -2));
            let y = add_triple(&mut f, "r1".to_string(), triple(-1, 0, 0));
            f.add_arrow(x, y, &mark);
        }
        (Flavor::Unreduced, Mode::Homfly) => {
            add_triple(&mut f, "u-".to_string(), triple(0, -1, -1));
            add_triple(&mut f, "u+".to_string(), triple(0, 1, -1));
        }
        (Flavor::Unreduced, Mode::Sln(n)) => {
            let y = add_triple(&mut f, "u-".to_string(), triple(0, -1, -1));
            let x = add_triple(&mut f, "u+".to_string(), triple(0, 1, -1));
            let coeff = r.reduce(&MultiPoly::var_pow(Var::U(d.marked), n)).scale(&rat(n as i64 + 1));
            f.add_arrow(x, y, &coeff);
            let _ = mark;
        }
    }
    let mut complex = tensor(&acc, &f)?;
    complex.curvature = complex.ring.reduce(&complex.curvature);
    Ok(KRComplex { complex, mode, flavor, writhe: w, strands: d.strands, marked: d.marked })
}

/// Both pages of `H(H(C, d_+ + d_-), d_v*)`.
///
/// HOMFLY-PT results are graded by `(q, h, v)`; sl(n) results by
/// `(gr_n, gr_v)` with `gr_n = q + (n-1)/2 · h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KRHomology {
    pub mode: Mode,
    pub flavor: Flavor,
    pub pages: TwoStepPages,
}

impl KRHomology {
    pub fn dims(&self) -> &GradedDims {
        &self.pages.second
    }

    /// sl(n) dimensions in the single grading `gr_n + (n/2) · gr_v`.
    pub fn conjecture_grading(&self) -> Option<GradedDims> {
        let n = self.mode.n()?;
        Some(self.pages.second.regrade(&[alloc::vec![rat(1), frac(n as i64, 2)]]))
    }
}

/// For the unreduced sl(n) flavor: the `u-` half of the complex over
/// `R / (U_mark^n)`.
///
/// The flavor factor is the cone of `(n+1) U_mark^n`, a non-zero-divisor on
/// the free module underneath, and it lies in the filtration-preserving
/// part of the differential. Projecting onto the quotient is therefore a
/// filtered quasi-isomorphism, so both pages agree with those of the full
/// complex while every graded piece becomes much smaller. Returns `None`
/// when `U_mark` is not one of the surviving edge variables.
fn unreduced_quotient(k: &KRComplex, n: u32) -> Option<CurvedComplex> {
    let mark = Var::U(k.marked);
    if !k.complex.ring.surviving_vars().contains(&mark) {
        return None;
    }
    let ring = k.complex.ring.clone().with_monomial(Monomial::var_pow(mark, n)).ok()?;
    let keep: Vec<usize> = (0..k.complex.len()).filter(|i| k.complex.gens[*i].name.ends_with("|u-")).collect();
    let mut index = alloc::vec![usize::MAX; k.complex.len()];
    let mut c = CurvedComplex::new(ring, k.complex.rule.clone());
    for &i in &keep {
        let g = &k.complex.gens[i];
        index[i] = c.add_gen(g.name.clone(), g.grading.clone(), g.hdeg);
    }
    for (x, y, f) in k.complex.arrows() {
        if index[x] != usize::MAX && index[y] != usize::MAX {
            c.add_arrow(index[x], index[y], f);
        }
    }
    Some(c)
}

/// The grading in which the first differential is homogeneous, and the split.
fn homology_setup(k: &KRComplex) -> (CurvedComplex, Split) {
    setup_with(k, true)
}

fn setup_with(k: &KRComplex, quotient: bool) -> (CurvedComplex, Split) {
    match k.mode {
        Mode::Homfly => (
            k.complex.clone(),
            Split { first: triple(2, 2, 0), second: triple(0, 0, 2), axis: 2 },
        ),
        Mode::Sln(n) => {
            let proj = alloc::vec![
                alloc::vec![rat(1), frac(n as i64 - 1, 2), rat(0)],
                alloc::vec![rat(0), rat(0), rat(1)],
            ];
            let base = match k.flavor {
                Flavor::Unreduced if quotient => unreduced_quotient(k, n).unwrap_or_else(|| k.complex.clone()),
                _ => k.complex.clone(),
            };
            (
                base.projected(&proj),
                Split { first: alloc::vec![rat(n as i64 + 1), rat(0)], second: alloc::vec![rat(0), rat(2)], axis: 1 },
            )
        }
    }
}

/// Two-step homology, exact in every degree whose first coordinate is at
/// most `cutoff`.
pub fn kr_homology(k: &KRComplex, cutoff: &Rational) -> Result<KRHomology> {
    let (c, split) = homology_setup(k);
    let pages = two_step_pages(&c, &split, cutoff)?;
    Ok(KRHomology { mode: k.mode, flavor: k.flavor, pages })
}

/// Two-step homology of a theory known to be finite dimensional, with the
/// cutoff raised until a window of width `window` below it carries no
/// homology. The result is marked untruncated once that holds.
pub fn kr_homology_finite(k: &KRComplex, start: &Rational, window: &Rational, rounds: usize) -> Result<KRHomology> {
    let mut cutoff = start.clone();
    let mut last = None;
    for _ in 0..rounds.max(1) {
        let mut h = kr_homology(k, &cutoff)?;
        let floor = &cutoff - window;
        if !h.pages.second.is_truncated() || h.pages.second.dims.keys().all(|g| g[0] <= floor) {
            h.pages.second.cutoff = None;
            return Ok(h);
        }
        last = Some(h);
        cutoff = &cutoff + window;
    }
    Ok(last.expect("at least one round"))
}

/// The highest first-coordinate degree of a generator in the grading used
/// by [`kr_homology`].
pub fn top_generator_degree(k: &KRComplex) -> Rational {
    let (c, _) = homology_setup(k);
    c.gens.iter().map(|g| g.grading[0].clone()).max().unwrap_or_else(Rational::zero)
}

/// Signed generating function of the homology.
///
/// HOMFLY-PT: `sum (-1)^{(v-h)/2} a^h q^q`. sl(n): `sum (-1)^{floor((J -
/// J_0)/2)} q^{2I}` over `(I, J) = (gr_n, gr_v)`, where `J_0` is the `gr_v`
/// shift of the flavor factor (`-1` unreduced, `0` otherwise); the floor
/// only matters for links, whose `gr_v` values are all odd. The sl(n) result is
/// written in `q^{1/2}`, i.e. the exponent of `q` is twice `gr_n`, because
/// `gr_n` can be a half-integer.
pub fn euler_char(h: &KRHomology) -> Result<LaurentPoly> {
    let dims = h.dims();
    if dims.is_truncated() {
        return Err(Error::InfiniteDegreePiece("homology was truncated at the cutoff".to_string()));
    }
    let int = |r: &Rational| -> Result<i32> {
        crate::ring::to_i64(r)
            .and_then(|x| i32::try_from(x).ok())
            .ok_or_else(|| Error::InvalidArgument(format!("degree {r} is not an integer")))
    };
    let mut p = LaurentPoly::zero();
    for (g, d) in &dims.dims {
        let (e, s) = match h.mode {
            Mode::Homfly => (LExp::aq(int(&g[1])?, int(&g[0])?), int(&((&g[2] - &g[1]) / rat(2)))?),
            Mode::Sln(_) => {
                let j0 = if h.flavor == Flavor::Unreduced { -1 } else { 0 };
                // `gr_v` has the parity of the number of components plus one,
                // so only differences of it are meaningful for the sign.
                let j = int(&g[1])? - j0;
                (LExp::q(int(&(&g[0] * rat(2)))?), j.div_euclid(2))
            }
        };
        let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
        p.add_term(e, Rational::from_integer((sign * *d as i64).into()));
    }
    Ok(p)
}

/// Compares an sl(n) Euler characteristic from [`euler_char`] (written in
/// `q^{1/2}`) with an sl(n) polynomial `P(q)`.
///
/// The crossing squares grade the mirror image relative to the skein
/// relation `a P(D_+) - a^{-1} P(D_-) = (q - q^{-1}) P(D_0)` with
/// `a = q^n`, so the comparison is with `P(q^{-1})`. The global shift and
/// homological normalization are fixed only up to a unit, which is
/// returned as `(sign, s)` with `chi = sign * q^{s/2} * P(q^{-1})`.
pub fn chi_matches_sln(chi: &LaurentPoly, p: &LaurentPoly) -> Option<(Rational, i32)> {
    let target = p.substitute_monomials([LExp::aq(1, 0), LExp::q(-2), LExp { a: 0, q: 0, t: 1 }]);
    let (c, e) = chi.unit_ratio(&target)?;
    (c == rat(1) || c == rat(-1)).then_some((c, e.q))
}
