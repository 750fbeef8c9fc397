//! Degreewise homology over `Q`.
//!
//! A graded piece of a free module over `Q[x_1..x_k]/(monomials)` is
//! spanned by products `m·g` of a standard monomial and a generator with
//! `gr(g) + wt(m)` equal to the piece's degree. Differentials become sparse
//! rational matrices between pieces and homology follows from ranks.
//!
//! Induced maps on homology are handled without choosing cycle
//! representatives: for `A: P -> P'`, `B: P -> Q` and `C: Q'' -> Q`, the
//! rank of the map `ker A -> Q / im C` induced by `B` equals
//! `rank [[A, 0], [B, C]] - rank A - rank C`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{compose, vadd, vsub, CurvedComplex, GradedDims};
use crate::linalg::{rank, SparseVec};
use crate::ring::{MultiPoly, Rational, Var};
use crate::{Error, Result};

type Exps = Vec<u16>;
type Cell = (usize, Exps);

/// A generator-level map translated to exponent vectors, with its degree.
#[derive(Clone, Debug)]
pub struct EngineMap {
    entries: Vec<Vec<(usize, Vec<(Exps, Rational)>)>>,
    degree: Vec<Rational>,
}

impl EngineMap {
    pub fn degree(&self) -> &[Rational] {
        &self.degree
    }
}

/// Enumerates graded pieces of a complex and ranks of maps between them.
pub struct DegreewiseEngine<'a> {
    c: &'a CurvedComplex,
    vars: Vec<Var>,
    var_w: Vec<Vec<Rational>>,
    nil: Vec<Option<u16>>,
    rels: Vec<Exps>,
    cutoff: Rational,
    pieces: BTreeMap<Vec<Rational>, Vec<Cell>>,
    truncated: bool,
}

fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    #[cfg(feature = "std")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "std"))]
    {
        items.iter().map(f).collect()
    }
}

impl<'a> DegreewiseEngine<'a> {
    /// Prepares every piece whose first degree coordinate is at most
    /// `cutoff`.
    pub fn new(c: &'a CurvedComplex, cutoff: Rational) -> Result<Self> {
        let vars = c.ring.surviving_vars();
        let var_w: Vec<Vec<Rational>> = vars.iter().map(|v| c.rule.weight(*v)).collect();
        let rels: Vec<Exps> = c
            .ring
            .monomial_relations()
            .iter()
            .map(|m| vars.iter().map(|v| m.exp(*v) as u16).collect())
            .collect();
        let nil: Vec<Option<u16>> = (0..vars.len())
            .map(|i| {
                rels.iter()
                    .filter(|r| r.iter().enumerate().all(|(j, e)| (j == i) == (*e > 0)))
                    .map(|r| r[i])
                    .min()
            })
            .collect();
        for (i, v) in vars.iter().enumerate() {
            if !var_w[i][0].is_positive() && nil[i].is_none() {
                return Err(Error::InfiniteDegreePiece(format!(
                    "variable {v} has non-positive weight on the cutoff axis"
                )));
            }
        }
        let mut e = DegreewiseEngine {
            c,
            vars,
            var_w,
            nil,
            rels,
            cutoff,
            pieces: BTreeMap::new(),
            truncated: false,
        };
        e.build_pieces();
        Ok(e)
    }

    fn is_standard(&self, m: &[u16]) -> bool {
        !self.rels.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b))
    }

    fn weight(&self, m: &[u16]) -> Vec<Rational> {
        let mut w = alloc::vec![Rational::zero(); self.c.rule.rank()];
        for (i, e) in m.iter().enumerate() {
            if *e > 0 {
                let e = Rational::from_integer((*e as i64).into());
                for (k, x) in self.var_w[i].iter().enumerate() {
                    w[k] += x * &e;
                }
            }
        }
        w
    }

    /// Standard monomials with first weight coordinate at most `budget`;
    /// also reports whether the budget cut anything off.
    fn monomials_upto(&self, budget: &Rational) -> (Vec<Exps>, bool) {
        let mut out = Vec::new();
        let mut cut = false;
        let mut cur = alloc::vec![0u16; self.vars.len()];
        self.dfs(0, budget.clone(), &mut cur, &mut out, &mut cut);
        (out, cut)
    }

    fn dfs(&self, i: usize, budget: Rational, cur: &mut Exps, out: &mut Vec<Exps>, cut: &mut bool) {
        if budget.is_negative() {
            return;
        }
        if i == self.vars.len() {
            if self.is_standard(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let w = &self.var_w[i][0];
        let mut e: u16 = 0;
        loop {
            if let Some(k) = self.nil[i] {
                if e >= k {
                    break;
                }
            }
            let used = w * Rational::from_integer((e as i64).into());
            let rest = &budget - &used;
            if rest.is_negative() {
                *cut = true;
                break;
            }
            cur[i] = e;
            self.dfs(i + 1, rest, cur, out, cut);
            if !self.is_standard(cur) {
                break;
            }
            e += 1;
        }
        cur[i] = 0;
    }

    fn build_pieces(&mut self) {
        let min_gr = self.c.gens.iter().map(|g| g.grading[0].clone()).min();
        let Some(min_gr) = min_gr else { return };
        let budget = &self.cutoff - &min_gr;
        let (mons, cut) = self.monomials_upto(&budget);
        let with_w: Vec<(Exps, Vec<Rational>)> = mons.into_iter().map(|m| {
            let w = self.weight(&m);
            (m, w)
        }).collect();
        let mut truncated = cut;
        for (x, g) in self.c.gens.iter().enumerate() {
            let b = &self.cutoff - &g.grading[0];
            for (m, w) in &with_w {
                if w[0] <= b {
                    self.pieces.entry(vadd(&g.grading, w)).or_default().push((x, m.clone()));
                } else {
                    truncated = true;
                }
            }
        }
        self.truncated = truncated;
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    /// Whether some basis element above the cutoff was left out.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Degrees of the nonempty pieces at or below the cutoff.
    pub fn degrees(&self) -> Vec<Vec<Rational>> {
        self.pieces.keys().cloned().collect()
    }

    /// Basis of the piece of degree `g` (enumerated on demand above the
    /// cutoff).
    pub fn piece(&self, g: &[Rational]) -> Vec<Cell> {
        if g[0] <= self.cutoff {
            return self.pieces.get(g).cloned().unwrap_or_default();
        }
        let mut out = Vec::new();
        for (x, gen) in self.c.gens.iter().enumerate() {
            let t = vsub(g, &gen.grading);
            let (mons, _) = self.monomials_upto(&t[0]);
            for m in mons {
                if self.weight(&m) == t {
                    out.push((x, m));
                }
            }
        }
        out
    }

    pub fn piece_dim(&self, g: &[Rational]) -> usize {
        self.piece(g).len()
    }

    fn to_exps(&self, m: &crate::ring::Monomial) -> Result<Exps> {
        let mut e = alloc::vec![0u16; self.vars.len()];
        for &(v, k) in m.pairs() {
            let i = self.vars.iter().position(|w| *w == v).ok_or_else(|| {
                Error::InvalidArgument(format!("entry uses {v}, which is not a surviving variable"))
            })?;
            e[i] = u16::try_from(k).map_err(|_| Error::ExponentOutOfRange { exponent: k as u64, limit: u16::MAX as u32 })?;
        }
        Ok(e)
    }

    /// Translates a generator-level map of the given degree.
    pub fn map_from(&self, m: &[BTreeMap<usize, MultiPoly>], degree: &[Rational]) -> Result<EngineMap> {
        let mut entries = Vec::with_capacity(m.len());
        for row in m {
            let mut r = Vec::with_capacity(row.len());
            for (y, f) in row {
                let terms = f
                    .terms()
                    .map(|(mono, c)| Ok((self.to_exps(mono)?, c.clone())))
                    .collect::<Result<Vec<_>>>()?;
                r.push((*y, terms));
            }
            entries.push(r);
        }
        Ok(EngineMap { entries, degree: degree.to_vec() })
    }

    /// The part of the differential of degree `degree`.
    pub fn diff_part(&self, degree: &[Rational]) -> Result<EngineMap> {
        let rows: Vec<BTreeMap<usize, MultiPoly>> = (0..self.c.len())
            .map(|x| {
                self.c.diff[x]
                    .iter()
                    .filter(|(y, f)| self.c.entry_degree(x, **y, f).as_deref() == Some(degree))
                    .map(|(y, f)| (*y, f.clone()))
                    .collect()
            })
            .collect();
        self.map_from(&rows, degree)
    }

    /// Multiplication by a monomial on every generator.
    pub fn mult_map(&self, m: &crate::ring::Monomial) -> Result<EngineMap> {
        let f = MultiPoly::term(m.clone(), Rational::one());
        let rows: Vec<BTreeMap<usize, MultiPoly>> =
            (0..self.c.len()).map(|x| core::iter::once((x, f.clone())).collect()).collect();
        let deg = self.c.rule.monomial_weight(m);
        self.map_from(&rows, &deg)
    }

    fn image(&self, map: &EngineMap, cell: &Cell) -> Vec<(Cell, Rational)> {
        let (x, m) = cell;
        let mut out = Vec::new();
        for (y, terms) in &map.entries[*x] {
            for (e, c) in terms {
                let prod: Exps = m.iter().zip(e).map(|(a, b)| a + b).collect();
                if self.is_standard(&prod) {
                    out.push(((*y, prod), c.clone()));
                }
            }
        }
        out
    }

    /// Rows `[map_1(b) | map_2(b) | ...]` for the cells `b`, with columns of
    /// different blocks kept apart.
    fn rows_into(
        &self,
        blocks: &[Option<&EngineMap>],
        cells: &[Cell],
        cols: &mut BTreeMap<(usize, Cell), usize>,
        out: &mut Vec<SparseVec>,
    ) {
        for cell in cells {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (bi, map) in blocks.iter().enumerate() {
                let Some(map) = map else { continue };
                for (tgt, c) in self.image(map, cell) {
                    let n = cols.len();
                    let col = *cols.entry((bi, tgt)).or_insert(n);
                    let e = acc.entry(col).or_insert_with(Rational::zero);
                    *e += c;
                }
            }
            let row: SparseVec = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            if !row.is_empty() {
                out.push(row);
            }
        }
    }

    /// Rank of `map` restricted to the piece of degree `g`.
    pub fn rank_on(&self, map: &EngineMap, g: &[Rational]) -> usize {
        let cells = self.piece(g);
        if cells.is_empty() {
            return 0;
        }
        let mut cols = BTreeMap::new();
        let mut rows = Vec::new();
        self.rows_into(&[Some(map)], &cells, &mut cols, &mut rows);
        rank(&rows)
    }

    /// Rank of the map from `ker a` at degree `g` to the cokernel of `a` at
    /// degree `g + deg(b)` induced by `b`.
    pub fn induced_rank(&self, a: &EngineMap, b: &EngineMap, g: &[Rational]) -> usize {
        let src = self.piece(g);
        if src.is_empty() {
            return 0;
        }
        let g_in = vsub(&vadd(g, &b.degree), &a.degree);
        let other = self.piece(&g_in);
        let mut cols = BTreeMap::new();
        let mut rows = Vec::new();
        self.rows_into(&[Some(a), Some(b)], &src, &mut cols, &mut rows);
        // Second block columns must match those of `b`'s targets, so `a`
        // applied to `other` is filed under block index 1.
        self.rows_into(&[None, Some(a)], &other, &mut cols, &mut rows);
        let m = rank(&rows);
        m - self.rank_on(a, g) - self.rank_on(a, &g_in)
    }

    /// Homology of `map` (assumed to square to zero) in every piece at or
    /// below the cutoff.
    pub fn homology(&self, map: &EngineMap) -> GradedDims {
        let degs = self.degrees();
        let mut needed: BTreeSet<Vec<Rational>> = degs.iter().cloned().collect();
        for g in &degs {
            needed.insert(vsub(g, &map.degree));
        }
        let needed: Vec<Vec<Rational>> = needed.into_iter().collect();
        let ranks: BTreeMap<Vec<Rational>, usize> =
            needed.iter().cloned().zip(par_map(&needed, |g| self.rank_on(map, g))).collect();
        let mut out = GradedDims { dims: BTreeMap::new(), cutoff: self.truncated.then(|| self.cutoff.clone()) };
        for g in &degs {
            let d = self.pieces[g].len();
            let h = d - ranks[g] - ranks[&vsub(g, &map.degree)];
            out.add(g.clone(), h);
        }
        out
    }
}

/// Homology of a complex with a single differential degree, degree by
/// degree up to `cutoff` on the first grading coordinate.
pub fn graded_homology(c: &CurvedComplex, cutoff: &Rational) -> Result<GradedDims> {
    if !c.curvature.is_zero() {
        return Err(Error::NotCurved(format!("homology needs zero curvature, found {}", c.curvature)));
    }
    let engine = DegreewiseEngine::new(c, cutoff.clone())?;
    let degs: BTreeSet<Vec<Rational>> =
        c.arrows().map(|(x, y, f)| c.entry_degree(x, y, f)).collect::<Option<BTreeSet<_>>>().ok_or_else(|| {
            Error::GradingViolation(alloc::string::String::from("inhomogeneous differential entry"))
        })?;
    if degs.len() > 1 {
        return Err(Error::GradingViolation(format!("differential has {} distinct degrees", degs.len())));
    }
    let deg = match degs.into_iter().next() {
        Some(d) => d,
        None => c.rule.degrees.first().cloned().unwrap_or_else(|| alloc::vec![Rational::zero(); c.rule.rank()]),
    };
    let map = engine.diff_part(&deg)?;
    Ok(engine.homology(&map))
}

/// The rank of the map induced on homology of `c` at degree `g` by
/// multiplication with `m`.
pub fn induced_map_rank(c: &CurvedComplex, cutoff: &Rational, m: &crate::ring::Monomial, g: &[Rational]) -> Result<usize> {
    let engine = DegreewiseEngine::new(c, cutoff.clone())?;
    let deg = c
        .arrows()
        .next()
        .and_then(|(x, y, f)| c.entry_degree(x, y, f))
        .unwrap_or_else(|| c.rule.degrees[0].clone());
    let a = engine.diff_part(&deg)?;
    let b = engine.mult_map(m)?;
    Ok(engine.induced_rank(&a, &b, g))
}

/// How the differential splits for [`two_step_homology`]: the first part
/// has degree `first` and preserves the filtration coordinate `axis`; the
/// second part has degree `second`. Entries raising `axis` further than
/// `second` are higher filtration terms and do not affect the result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub first: Vec<Rational>,
    pub second: Vec<Rational>,
    pub axis: usize,
}

/// Both pages of the two-step computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepPages {
    pub first: GradedDims,
    pub second: GradedDims,
}

fn split_parts(c: &CurvedComplex, split: &Split) -> Result<(Vec<BTreeMap<usize, MultiPoly>>, Vec<BTreeMap<usize, MultiPoly>>)> {
    let n = c.len();
    let mut d1 = alloc::vec![BTreeMap::new(); n];
    let mut d2 = alloc::vec![BTreeMap::new(); n];
    for (x, y, f) in c.arrows() {
        let deg = c
            .entry_degree(x, y, f)
            .ok_or_else(|| Error::GradingViolation(format!("inhomogeneous entry {f}")))?;
        if deg == split.first {
            d1[x].insert(y, f.clone());
        } else if deg == split.second {
            d2[x].insert(y, f.clone());
        } else if deg[split.axis] > split.second[split.axis] {
            continue;
        } else {
            return Err(Error::SplitInvalid(format!(
                "entry {} -> {} has degree outside the split",
                c.gens[x].name, c.gens[y].name
            )));
        }
    }
    Ok((d1, d2))
}

/// Homology of the first part of the differential, then homology of the
/// map induced on it by the second part.
pub fn two_step_pages(c: &CurvedComplex, split: &Split, cutoff: &Rational) -> Result<TwoStepPages> {
    let (d1, d2) = split_parts(c, split)?;
    let sq = compose(c, &d1, &d1);
    if sq.iter().any(|r| !r.is_empty()) {
        return Err(Error::SplitInvalid(alloc::string::String::from("first differential does not square to zero")));
    }
    let a = compose(c, &d1, &d2);
    let b = compose(c, &d2, &d1);
    for x in 0..c.len() {
        let mut keys: BTreeSet<usize> = a[x].keys().copied().collect();
        keys.extend(b[x].keys().copied());
        for y in keys {
            let s = c.ring.reduce(&(&a[x].get(&y).cloned().unwrap_or_default() + &b[x].get(&y).cloned().unwrap_or_default()));
            if !s.is_zero() {
                return Err(Error::SplitInvalid(format!(
                    "second differential does not commute with the first at {}",
                    c.gens[x].name
                )));
            }
        }
    }
    let engine = DegreewiseEngine::new(c, cutoff.clone())?;
    let m1 = engine.map_from(&d1, &split.first)?;
    let m2 = engine.map_from(&d2, &split.second)?;
    let degs = engine.degrees();

    let mut need_a: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for g in &degs {
        need_a.insert(g.clone());
        need_a.insert(vsub(g, &split.first));
        need_a.insert(vsub(&vadd(g, &split.second), &split.first));
        let h = vsub(g, &split.second);
        need_a.insert(vsub(&vadd(&h, &split.second), &split.first));
    }
    let need_a: Vec<Vec<Rational>> = need_a.into_iter().collect();
    let ra: BTreeMap<Vec<Rational>, usize> =
        need_a.iter().cloned().zip(par_map(&need_a, |g| engine.rank_on(&m1, g))).collect();

    let mut need_i: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for g in &degs {
        need_i.insert(g.clone());
        need_i.insert(vsub(g, &split.second));
    }
    let need_i: Vec<Vec<Rational>> = need_i.into_iter().collect();
    let ri: BTreeMap<Vec<Rational>, usize> = need_i
        .iter()
        .cloned()
        .zip(par_map(&need_i, |g| {
            let src = engine.piece(g);
            if src.is_empty() {
                return 0;
            }
            let g_in = vsub(&vadd(g, &split.second), &split.first);
            let other = engine.piece(&g_in);
            let mut cols = BTreeMap::new();
            let mut rows = Vec::new();
            engine.rows_into(&[Some(&m1), Some(&m2)], &src, &mut cols, &mut rows);
            engine.rows_into(&[None, Some(&m1)], &other, &mut cols, &mut rows);
            rank(&rows) - ra[g] - ra[&g_in]
        }))
        .collect();

    let trunc = engine.is_truncated().then(|| cutoff.clone());
    let mut e1 = GradedDims { dims: BTreeMap::new(), cutoff: trunc.clone() };
    let mut e2 = GradedDims { dims: BTreeMap::new(), cutoff: trunc };
    for g in &degs {
        let d = engine.piece_dim(g);
        let h1 = d - ra[g] - ra[&vsub(g, &split.first)];
        e1.add(g.clone(), h1);
        let h2 = h1 - ri[g] - ri[&vsub(g, &split.second)];
        e2.add(g.clone(), h2);
    }
    Ok(TwoStepPages { first: e1, second: e2 })
}

/// `H(H(C, d_first), d_second*)`, degree by degree up to `cutoff`.
pub fn two_step_homology(c: &CurvedComplex, split: &Split, cutoff: &Rational) -> Result<GradedDims> {
    Ok(two_step_pages(c, split, cutoff)?.second)
}
