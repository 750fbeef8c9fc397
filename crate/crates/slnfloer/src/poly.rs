//! HOMFLY-PT polynomials by skein recursion.
//!
//! Conventions: `a P(D_+) - a^{-1} P(D_-) = (q - q^{-1}) P(D_0)` with
//! `P(unknot) = (a - a^{-1}) / (q - q^{-1})` unreduced and `1` reduced.
//! Substituting `a = q^n` gives the sl(n) polynomial, and the reduced
//! polynomial at `n = 0` is the Alexander polynomial in `t = q^2`.
//!
//! Values are kept as `N(a, q) / (q - q^{-1})^k` with `k` as small as
//! possible, which is canonical and avoids Laurent division until a
//! specialization is requested.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::ring::LaurentPoly;
use crate::{Error, Result};

/// One oriented crossing of a planar diagram.
///
/// `ccw` lists the four edge labels counterclockwise. The under strand
/// enters at position `under_in` and leaves at `under_in + 2`; likewise
/// for the over strand. The crossing is positive when the over strand
/// enters just clockwise of the incoming under strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub ccw: [u32; 4],
    pub under_in: u8,
    pub over_in: u8,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.over_in == (self.under_in + 3) % 4 {
            1
        } else {
            -1
        }
    }

    fn ins(&self) -> [usize; 2] {
        [self.under_in as usize, self.over_in as usize]
    }

    fn is_valid(&self) -> bool {
        self.under_in < 4 && self.over_in < 4 && (self.under_in + self.over_in) % 2 == 1
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        Crossing { ccw: self.ccw, under_in: self.over_in, over_in: self.under_in }
    }

    /// The two `(incoming, outgoing)` label pairs joined by the oriented
    /// smoothing: each incoming edge continues into its adjacent outgoing
    /// edge.
    pub fn smoothing_pairs(&self) -> [(u32, u32); 2] {
        let ins = self.ins();
        ins.map(|p| {
            let left = (p + 1) % 4;
            let out = if ins.contains(&left) { (p + 3) % 4 } else { left };
            (self.ccw[p], self.ccw[out])
        })
    }
}

/// An oriented link diagram: crossings plus crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    free_loops: u32,
}

impl PDCode {
    /// Checks that every label is the incoming edge of exactly one
    /// crossing and the outgoing edge of exactly one crossing.
    pub fn new(crossings: Vec<Crossing>, free_loops: u32) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(format!("invalid PD code: {m}"));
        let mut ins: BTreeMap<u32, usize> = BTreeMap::new();
        let mut outs: BTreeMap<u32, usize> = BTreeMap::new();
        for c in &crossings {
            if !c.is_valid() {
                return Err(bad("under and over strands must alternate around a crossing"));
            }
            for p in c.ins() {
                *ins.entry(c.ccw[p]).or_default() += 1;
                *outs.entry(c.ccw[(p + 2) % 4]).or_default() += 1;
            }
        }
        if ins.values().any(|k| *k != 1) || outs.values().any(|k| *k != 1) {
            return Err(bad("a label is used more than once in the same direction"));
        }
        if ins.keys().ne(outs.keys()) {
            return Err(bad("every label must appear once incoming and once outgoing"));
        }
        Ok(PDCode { crossings, free_loops })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    /// Where each label ends: `(crossing, position)` of its incoming slot.
    fn heads(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut m = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for p in c.ins() {
                m.insert(c.ccw[p], (i, p));
            }
        }
        m
    }

    /// Walks every component starting from its smallest label, recording
    /// each label and the crossing slots passed through.
    fn traverse(&self) -> Vec<Vec<(u32, usize, usize)>> {
        let heads = self.heads();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in heads.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            while seen.insert(e) {
                let (c, p) = heads[&e];
                comp.push((e, c, p));
                e = self.crossings[c].ccw[(p + 2) % 4];
            }
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> usize {
        self.traverse().len() + self.free_loops as usize
    }

    /// The first crossing, in traversal order, that is reached along its
    /// under strand before its over strand. `None` for a descending
    /// diagram, which is an unlink.
    pub fn first_non_descending(&self) -> Option<usize> {
        let mut met = alloc::vec![false; self.crossings.len()];
        for comp in self.traverse() {
            for (_, c, p) in comp {
                if !met[c] {
                    met[c] = true;
                    if p == self.crossings[c].under_in as usize {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// The diagram with crossing `i` switched.
    pub fn switch(&self, i: usize) -> PDCode {
        let mut d = self.clone();
        d.crossings[i] = d.crossings[i].switched();
        d
    }

    /// The diagram with crossing `i` replaced by its oriented smoothing.
    pub fn smooth(&self, i: usize) -> PDCode {
        let c = self.crossings[i];
        let mut rest: Vec<Crossing> = self.crossings.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, c)| *c).collect();
        // Labels joined by the smoothing are merged; a class that meets no
        // remaining crossing is a closed circle.
        let pairs = c.smoothing_pairs();
        let mut root: BTreeMap<u32, u32> = BTreeMap::new();
        let find = |root: &BTreeMap<u32, u32>, mut e: u32| {
            while let Some(&r) = root.get(&e) {
                e = r;
            }
            e
        };
        for (from, to) in pairs {
            let (a, b) = (find(&root, from), find(&root, to));
            if a != b {
                root.insert(a.max(b), a.min(b));
            }
        }
        for x in &mut rest {
            for e in &mut x.ccw {
                *e = find(&root, *e);
            }
        }
        let used: BTreeSet<u32> = rest.iter().flat_map(|x| x.ccw).collect();
        let classes: BTreeSet<u32> = pairs.iter().map(|(from, _)| find(&root, *from)).collect();
        let loops = classes.iter().filter(|e| !used.contains(e)).count() as u32;
        PDCode { crossings: rest, free_loops: self.free_loops + loops }
    }

    /// Relabels edges in traversal order and sorts the crossings, so that
    /// diagrams differing only in naming share a memo entry.
    fn canonical(&self) -> PDCode {
        let mut map = BTreeMap::new();
        for comp in self.traverse() {
            for (e, _, _) in comp {
                let k = map.len() as u32 + 1;
                map.insert(e, k);
            }
        }
        let mut crossings: Vec<Crossing> = self
            .crossings
            .iter()
            .map(|c| Crossing { ccw: c.ccw.map(|e| map[&e]), ..*c })
            .collect();
        crossings.sort();
        PDCode { crossings, free_loops: self.free_loops }
    }
}

/// The closure of a braid on `strands` strands. Letter `k` crosses strands
/// `k` and `k + 1` (counted from 1); `-k` is its inverse. Positive letters
/// give positive crossings.
pub fn braid_closure(word: &[i32], strands: u32) -> Result<PDCode> {
    if strands == 0 {
        return Err(Error::BadWord("a braid needs at least one strand".to_string()));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() >= strands {
            return Err(Error::BadWord(format!("generator {g} out of range for {strands} strands")));
        }
    }
    let b = strands as usize;
    let mut next = strands + 1;
    let mut cur: Vec<u32> = (1..=strands).collect();
    let mut raw = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (l_in, r_in) = (cur[i], cur[i + 1]);
        let (l_out, r_out) = (next, next + 1);
        next += 2;
        // Counterclockwise from the bottom left: the strand from the bottom
        // left leaves at the top right and the other one crosses it.
        let ccw = [l_in, r_in, r_out, l_out];
        let c = if g > 0 { Crossing { ccw, under_in: 1, over_in: 0 } } else { Crossing { ccw, under_in: 0, over_in: 1 } };
        raw.push(c);
        cur[i] = l_out;
        cur[i + 1] = r_out;
    }
    // Close up: the label on top of position k is identified with k.
    let top: BTreeMap<u32, u32> = cur.iter().enumerate().filter(|(k, e)| **e != *k as u32 + 1).map(|(k, e)| (*e, k as u32 + 1)).collect();
    let crossings = raw.into_iter().map(|c| Crossing { ccw: c.ccw.map(|e| *top.get(&e).unwrap_or(&e)), ..c }).collect();
    let free = (0..b).filter(|k| cur[*k] == *k as u32 + 1).count() as u32;
    PDCode::new(crossings, free)
}

/// `N / (q - q^{-1})^k` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomflyValue {
    num: LaurentPoly,
    den: u32,
}

fn z() -> LaurentPoly {
    LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1)
}

fn a_term(k: i32) -> LaurentPoly {
    LaurentPoly::a_pow(k)
}

impl HomflyValue {
    pub fn new(num: LaurentPoly, den: u32) -> Self {
        let mut v = HomflyValue { num, den };
        v.normalize();
        v
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        HomflyValue::new(p, 0)
    }

    /// `((a - a^{-1}) / (q - q^{-1}))^c`, the value of the `c`-component
    /// unlink.
    pub fn unlink(c: u32) -> Self {
        HomflyValue::new((a_term(1) - a_term(-1)).pow(c), c)
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// The power of `q - q^{-1}` in the denominator.
    pub fn denominator_power(&self) -> u32 {
        self.den
    }

    /// The value as a Laurent polynomial, when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        (self.den == 0).then_some(&self.num)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = 0;
            return;
        }
        let z = z();
        while self.den > 0 {
            match self.num.exact_div(&z) {
                Ok(n) => {
                    self.num = n;
                    self.den -= 1;
                }
                Err(_) => break,
            }
        }
    }

    fn lift(&self, den: u32) -> LaurentPoly {
        &self.num * &z().pow(den - self.den)
    }

    pub fn add(&self, o: &HomflyValue) -> HomflyValue {
        let d = self.den.max(o.den);
        HomflyValue::new(&self.lift(d) + &o.lift(d), d)
    }

    pub fn mul(&self, o: &HomflyValue) -> HomflyValue {
        HomflyValue::new(&self.num * &o.num, self.den + o.den)
    }

    pub fn mul_laurent(&self, p: &LaurentPoly) -> HomflyValue {
        HomflyValue::new(&self.num * p, self.den)
    }

    /// Divides by `(a - a^{-1}) / (q - q^{-1})`.
    pub fn reduce_by_unknot(&self) -> Result<HomflyValue> {
        let num = (&self.num * &z()).exact_div(&(a_term(1) - a_term(-1)))?;
        Ok(HomflyValue::new(num, self.den))
    }
}

impl fmt::Display for HomflyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/({})", self.num, z()),
            k => write!(f, "({})/({})^{k}", self.num, z()),
        }
    }
}

/// Default number of skein steps before giving up.
pub const DEFAULT_SKEIN_BUDGET: usize = 1 << 20;

/// Skein evaluator with a memo table keyed on canonical diagrams.
#[derive(Clone, Debug)]
pub struct SkeinEngine {
    budget: usize,
    steps: usize,
    memo: BTreeMap<Vec<Crossing>, HomflyValue>,
}

impl Default for SkeinEngine {
    fn default() -> Self {
        SkeinEngine::new(DEFAULT_SKEIN_BUDGET)
    }
}

impl SkeinEngine {
    pub fn new(budget: usize) -> Self {
        SkeinEngine { budget, steps: 0, memo: BTreeMap::new() }
    }

    /// Number of skein steps taken so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Unreduced HOMFLY-PT polynomial.
    pub fn unreduced(&mut self, d: &PDCode) -> Result<HomflyValue> {
        let c = d.canonical();
        let core = self.crossings_only(&c.crossings)?;
        Ok(core.mul(&HomflyValue::unlink(c.free_loops)))
    }

    /// Value of the diagram made of `crossings` alone (no free loops).
    fn crossings_only(&mut self, crossings: &[Crossing]) -> Result<HomflyValue> {
        if let Some(v) = self.memo.get(crossings) {
            return Ok(v.clone());
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::RecursionBudgetExceeded(self.budget));
        }
        let d = PDCode { crossings: crossings.to_vec(), free_loops: 0 };
        let v = match d.first_non_descending() {
            None => HomflyValue::unlink(d.components() as u32),
            Some(i) => {
                let other = self.unreduced(&d.switch(i))?;
                let smooth = self.unreduced(&d.smooth(i))?;
                let zs = smooth.mul_laurent(&z());
                if d.crossings[i].sign() > 0 {
                    // P(D+) = a^-2 P(D-) + a^-1 z P(D0)
                    other.mul_laurent(&a_term(-2)).add(&zs.mul_laurent(&a_term(-1)))
                } else {
                    // P(D-) = a^2 P(D+) - a z P(D0)
                    other.mul_laurent(&a_term(2)).add(&zs.mul_laurent(&-a_term(1)))
                }
            }
        };
        self.memo.insert(crossings.to_vec(), v.clone());
        Ok(v)
    }
}

/// HOMFLY-PT polynomial of `d`, reduced (unknot `= 1`) or unreduced.
pub fn homfly(d: &PDCode, reduced: bool) -> Result<HomflyValue> {
    homfly_with(&mut SkeinEngine::default(), d, reduced)
}

/// [`homfly`] with a caller-supplied engine (budget and memo).
pub fn homfly_with(engine: &mut SkeinEngine, d: &PDCode, reduced: bool) -> Result<HomflyValue> {
    let p = engine.unreduced(d)?;
    if reduced {
        p.reduce_by_unknot()
    } else {
        Ok(p)
    }
}

/// Substitutes `a = q^n` and clears the denominator.
///
/// Fails with `PoleAtSpecialization` when the specialized numerator is
/// not divisible by the remaining power of `q - q^{-1}` (for instance the
/// unreduced polynomial at `n = 0` of a link with nonzero reduced value is
/// fine, but a reduced value with a genuine `1/(q - q^{-1})` is not).
pub fn sln_specialize(p: &HomflyValue, n: i32) -> Result<LaurentPoly> {
    let num = p.num.a_to_q_pow(n);
    if p.den == 0 || num.is_zero() {
        return Ok(num);
    }
    num.exact_div(&z().pow(p.den))
        .map_err(|_| Error::PoleAtSpecialization(format!("(q - q^-1)^{} does not divide the value at a = q^{n}", p.den)))
}

/// `[n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn quantum_int(n: u32) -> LaurentPoly {
    let n = n as i32;
    LaurentPoly::from_q_coeffs((0..n).map(|i| (n - 1 - 2 * i, 1)))
}

/// Braid presentations of small knots and links, by name.
pub fn builtin_braids() -> Vec<(&'static str, u32, Vec<i32>)> {
    alloc::vec![
        ("0_1", 1, alloc::vec![]),
        ("0_1-kinked", 2, alloc::vec![1]),
        ("unlink2", 2, alloc::vec![]),
        ("hopf", 2, alloc::vec![1, 1]),
        ("3_1", 2, alloc::vec![1, 1, 1]),
        ("3_1-mirror", 2, alloc::vec![-1, -1, -1]),
        ("4_1", 3, alloc::vec![1, -2, 1, -2]),
        ("T2,4", 2, alloc::vec![1, 1, 1, 1]),
        ("5_1", 2, alloc::vec![1, 1, 1, 1, 1]),
        ("5_2", 3, alloc::vec![1, 1, 1, 2, -1, 2]),
        ("6_1", 4, alloc::vec![1, 1, 2, -1, -3, 2, -3]),
        ("6_2", 3, alloc::vec![1, 1, 1, -2, 1, -2]),
        ("6_3", 3, alloc::vec![1, 1, -2, 1, -2, -2]),
    ]
}

/// Looks up a diagram from [`builtin_braids`].
pub fn builtin(name: &str) -> Result<PDCode> {
    let (_, s, w) = builtin_braids()
        .into_iter()
        .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::InvalidArgument(format!("unknown diagram '{name}'")))?;
    braid_closure(&w, s)
}

/// `a P(D_+) - a^{-1} P(D_-) - (q - q^{-1}) P(D_0)` at crossing `i`,
/// each term evaluated with a fresh engine. Zero whenever the skein
/// relation holds there.
pub fn skein_defect(d: &PDCode, i: usize) -> Result<HomflyValue> {
    let (plus, minus) = if d.crossings[i].sign() > 0 { (d.clone(), d.switch(i)) } else { (d.switch(i), d.clone()) };
    let p = homfly(&plus, false)?;
    let m = homfly(&minus, false)?;
    let s = homfly(&d.smooth(i), false)?;
    Ok(p.mul_laurent(&a_term(1)).add(&m.mul_laurent(&-a_term(-1))).add(&s.mul_laurent(&-z())))
}

/// The same value regardless of which presentation or memo state is used;
/// convenient for callers who only need `P` at `a = q^n`.
pub fn sln_polynomial(d: &PDCode, n: i32, reduced: bool) -> Result<LaurentPoly> {
    sln_specialize(&homfly(d, reduced)?, n)
}
