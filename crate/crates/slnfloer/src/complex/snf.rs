//! Graded Smith normal form over `Q[U]`.
//!
//! Every homogeneous entry over a single variable is a monomial `c·U^e`, so
//! the reduction works with `(exponent, coefficient)` pairs. Picking the
//! globally smallest exponent as pivot guarantees that every other entry in
//! its row and column is divisible by it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{vadd, CurvedComplex};
use crate::ring::{Rational, Var};
use crate::{Error, Result};

/// An indecomposable graded `Q[U]`-module.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Summand {
    /// `Q[U]` with generator in degree `shift`.
    Free { shift: Vec<Rational> },
    /// `Q[U]/U^k` with generator in degree `bottom`.
    Torsion { k: u32, bottom: Vec<Rational> },
}

/// Homology as a sorted list of summands, together with the weight of `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecomp {
    pub summands: Vec<Summand>,
    pub u_weight: Vec<Rational>,
}

impl ModuleDecomp {
    pub fn free_rank(&self) -> usize {
        self.summands.iter().filter(|s| matches!(s, Summand::Free { .. })).count()
    }

    pub fn torsion(&self) -> impl Iterator<Item = (u32, &[Rational])> {
        self.summands.iter().filter_map(|s| match s {
            Summand::Torsion { k, bottom } => Some((*k, bottom.as_slice())),
            Summand::Free { .. } => None,
        })
    }

    /// Total dimension over `Q` of the torsion part.
    pub fn torsion_dim(&self) -> u64 {
        self.torsion().map(|(k, _)| k as u64).sum()
    }

    /// Degreewise dimensions of the torsion part.
    pub fn torsion_dims(&self) -> super::GradedDims {
        let mut g = super::GradedDims::new();
        for (k, b) in self.torsion() {
            let mut d = b.to_vec();
            for _ in 0..k {
                g.add(d.clone(), 1);
                d = vadd(&d, &self.u_weight);
            }
        }
        g
    }
}

impl fmt::Display for ModuleDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        let deg = |d: &[Rational]| -> String {
            let parts: Vec<String> = d.iter().map(|x| format!("{x}")).collect();
            parts.join(",")
        };
        for (i, s) in self.summands.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match s {
                Summand::Free { shift } => write!(f, "Q[U]{{{}}}", deg(shift))?,
                Summand::Torsion { k, bottom } => write!(f, "Q[U]/(U^{k}){{{}}}", deg(bottom))?,
            }
        }
        Ok(())
    }
}

type Entry = (u32, Rational);

/// Decomposes the homology of a complex over a univariate polynomial ring.
pub fn snf_homology(c: &CurvedComplex) -> Result<ModuleDecomp> {
    let vars = c.ring.surviving_vars();
    if vars.len() > 1 || !c.ring.monomial_relations().is_empty() {
        return Err(Error::NotPid(format!("{} surviving variables", vars.len())));
    }
    if !c.curvature.is_zero() {
        return Err(Error::NotCurved(format!("homology needs zero curvature, found {}", c.curvature)));
    }
    let var: Option<Var> = vars.first().copied();
    let u_weight = var.map(|v| c.rule.weight(v)).unwrap_or_else(|| alloc::vec![Rational::zero(); c.rule.rank()]);
    if c.square().iter().any(|r| !r.is_empty()) {
        return Err(Error::NotCurved(String::from("differential does not square to zero")));
    }

    let n = c.len();
    let mut rows: Vec<BTreeMap<usize, Entry>> = alloc::vec![BTreeMap::new(); n];
    let mut cols: Vec<BTreeMap<usize, ()>> = alloc::vec![BTreeMap::new(); n];
    for (x, y, f) in c.arrows() {
        if f.nterms() != 1 {
            return Err(Error::GradingViolation(format!("entry {f} is not a monomial")));
        }
        let (m, k) = f.leading_term().expect("nonzero");
        let e = var.map(|v| m.exp(v)).unwrap_or(0);
        rows[x].insert(y, (e, k.clone()));
        cols[y].insert(x, ());
    }

    let mut alive = alloc::vec![true; n];
    let mut summands = Vec::new();
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (x, row) in rows.iter().enumerate() {
            for (y, (e, _)) in row {
                if best.map_or(true, |b| *e < b.0) {
                    best = Some((*e, x, *y));
                }
            }
        }
        let Some((k, x, y)) = best else { break };
        let cxy = rows[x][&y].1.clone();

        // Clear row x by changing the basis of targets.
        let others: Vec<(usize, Entry)> =
            rows[x].iter().filter(|(w, _)| **w != y).map(|(w, e)| (*w, e.clone())).collect();
        for (w, (ew, cw)) in others {
            let mu: Entry = (ew - k, &cw / &cxy);
            let col_y: Vec<usize> = cols[y].keys().copied().collect();
            for z in col_y {
                let (ez, cz) = rows[z][&y].clone();
                add_entry(&mut rows, &mut cols, z, w, (ez + mu.0, -(&cz * &mu.1)));
            }
            let row_w: Vec<(usize, Entry)> = rows[w].iter().map(|(t, e)| (*t, e.clone())).collect();
            for (t, (et, ct)) in row_w {
                add_entry(&mut rows, &mut cols, y, t, (et + mu.0, &ct * &mu.1));
            }
        }
        // Clear column y by changing the basis of sources.
        let srcs: Vec<usize> = cols[y].keys().copied().filter(|z| *z != x).collect();
        for z in srcs {
            let Some((ez, cz)) = rows[z].get(&y).cloned() else { continue };
            let lam: Entry = (ez - k, &cz / &cxy);
            let row_x: Vec<(usize, Entry)> = rows[x].iter().map(|(t, e)| (*t, e.clone())).collect();
            for (t, (et, ct)) in row_x {
                add_entry(&mut rows, &mut cols, z, t, (et + lam.0, -(&ct * &lam.1)));
            }
            let col_z: Vec<usize> = cols[z].keys().copied().collect();
            for v in col_z {
                let (ev, cv) = rows[v][&z].clone();
                add_entry(&mut rows, &mut cols, v, x, (ev + lam.0, &cv * &lam.1));
            }
        }
        debug_assert!(rows[x].len() == 1 && cols[y].len() == 1);
        debug_assert!(rows[y].is_empty() && cols[x].is_empty());
        for g in [x, y] {
            let targets: Vec<usize> = rows[g].keys().copied().collect();
            for t in targets {
                cols[t].remove(&g);
            }
            rows[g].clear();
            let sources: Vec<usize> = cols[g].keys().copied().collect();
            for s in sources {
                rows[s].remove(&g);
            }
            cols[g].clear();
            alive[g] = false;
        }
        if k > 0 {
            summands.push(Summand::Torsion { k, bottom: c.gens[y].grading.clone() });
        }
    }
    for (i, a) in alive.iter().enumerate() {
        if *a {
            summands.push(Summand::Free { shift: c.gens[i].grading.clone() });
        }
    }
    summands.sort();
    Ok(ModuleDecomp { summands, u_weight })
}

fn add_entry(rows: &mut [BTreeMap<usize, Entry>], cols: &mut [BTreeMap<usize, ()>], x: usize, y: usize, e: Entry) {
    if e.1.is_zero() {
        return;
    }
    match rows[x].get_mut(&y) {
        Some(cur) => {
            debug_assert_eq!(cur.0, e.0, "inhomogeneous update");
            cur.1 += &e.1;
            if cur.1.is_zero() {
                rows[x].remove(&y);
                cols[y].remove(&x);
            }
        }
        None => {
            rows[x].insert(y, e);
            cols[y].insert(x, ());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{GradingRule, RingSpec};
    use crate::ring::{rat, MultiPoly};

    fn rule() -> GradingRule {
        GradingRule {
            u_weight: alloc::vec![rat(2)],
            v_weight: alloc::vec![rat(0)],
            degrees: alloc::vec![alloc::vec![rat(1)]],
        }
    }

    #[test]
    fn torsion_and_free() {
        // a -> U^2 b, a -> U c, d -> U^3 b, e free.
        let mut c = CurvedComplex::new(RingSpec::polynomial([Var::U(1)]), rule());
        let a = c.add_gen("a", alloc::vec![rat(0)], 0);
        let b = c.add_gen("b", alloc::vec![rat(-3)], 1);
        let cc = c.add_gen("c", alloc::vec![rat(-1)], 1);
        let d = c.add_gen("d", alloc::vec![rat(2)], 0);
        c.add_gen("e", alloc::vec![rat(5)], 0);
        c.add_arrow(a, b, &MultiPoly::var_pow(Var::U(1), 2));
        c.add_arrow(a, cc, &MultiPoly::var(Var::U(1)));
        c.add_arrow(d, b, &MultiPoly::var_pow(Var::U(1), 3));
        let h = snf_homology(&c).unwrap();
        assert_eq!(h.free_rank(), 1);
        let t: Vec<(u32, Vec<Rational>)> = h.torsion().map(|(k, b)| (k, b.to_vec())).collect();
        assert_eq!(t, alloc::vec![(1, alloc::vec![rat(-1)]), (3, alloc::vec![rat(-3)])]);
        assert_eq!(h.torsion_dim(), 4);
    }

    #[test]
    fn rejects_two_variables() {
        let c = CurvedComplex::new(RingSpec::polynomial([Var::U(1), Var::U(2)]), rule());
        assert!(matches!(snf_homology(&c), Err(Error::NotPid(_))));
    }
}
