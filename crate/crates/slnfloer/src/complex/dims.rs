use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::ring::{to_i64, LExp, LaurentPoly, Rational};

/// Dimensions of a graded vector space, indexed by multi-degree.
///
/// When `cutoff` is set, only degrees whose first coordinate is at most
/// the cutoff were computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDims {
    pub dims: BTreeMap<Vec<Rational>, usize>,
    pub cutoff: Option<Rational>,
}

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, deg: Vec<Rational>, d: usize) {
        if d > 0 {
            *self.dims.entry(deg).or_insert(0) += d;
        }
    }

    pub fn get(&self, deg: &[Rational]) -> usize {
        self.dims.get(deg).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.cutoff.is_some()
    }

    /// Largest first coordinate carrying a nonzero dimension.
    pub fn max_degree(&self) -> Option<Rational> {
        self.dims.keys().map(|k| k[0].clone()).max()
    }

    pub fn min_degree(&self) -> Option<Rational> {
        self.dims.keys().map(|k| k[0].clone()).min()
    }

    /// Sums out every coordinate except those listed.
    pub fn marginal(&self, axes: &[usize]) -> GradedDims {
        let mut out = GradedDims { dims: BTreeMap::new(), cutoff: self.cutoff.clone() };
        for (k, d) in &self.dims {
            out.add(axes.iter().map(|&a| k[a].clone()).collect(), *d);
        }
        out
    }

    /// Maps every degree through the linear functionals `rows`.
    pub fn regrade(&self, rows: &[Vec<Rational>]) -> GradedDims {
        let mut out = GradedDims { dims: BTreeMap::new(), cutoff: None };
        for (k, d) in &self.dims {
            out.add(super::apply(rows, k), *d);
        }
        out
    }

    /// Shifts every degree by `by`.
    pub fn shifted(&self, by: &[Rational]) -> GradedDims {
        let mut out = GradedDims { dims: BTreeMap::new(), cutoff: self.cutoff.clone() };
        for (k, d) in &self.dims {
            out.add(super::vadd(k, by), *d);
        }
        if let Some(c) = &mut out.cutoff {
            *c += &by[0];
        }
        out
    }

    /// Poincare polynomial in `q` of the first coordinate times `scale`;
    /// `None` if some scaled degree is not an integer.
    pub fn poincare_scaled(&self, scale: &Rational) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for (k, d) in &self.dims {
            let e = to_i64(&(&k[0] * scale))?;
            p.add_term(LExp::q(i32::try_from(e).ok()?), Rational::from_integer((*d as i64).into()));
        }
        Some(p)
    }

    /// Poincare polynomial in `q` of the first coordinate.
    pub fn poincare(&self) -> Option<LaurentPoly> {
        self.poincare_scaled(&Rational::one())
    }

    /// Euler characteristic `sum (-1)^{s(k)} q^{k[0]} dim`, with the sign
    /// exponent computed by `sign` (which must return an integer).
    pub fn signed_poincare<F: Fn(&[Rational]) -> i64>(&self, sign: F) -> Option<LaurentPoly> {
        let mut p = LaurentPoly::zero();
        for (k, d) in &self.dims {
            let e = i32::try_from(to_i64(&k[0])?).ok()?;
            let s = if sign(k).rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(LExp::q(e), Rational::from_integer((s * *d as i64).into()));
        }
        Some(p)
    }
}

fn fmt_degree(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "({})", r)
    }
}

impl fmt::Display for GradedDims {
    /// One-dimensional tables print as a polynomial `d*q^k` in ascending
    /// degree (fractional degrees in parentheses); others as a table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            f.write_str("0")?;
        } else if self.dims.keys().all(|k| k.len() == 1) {
            for (i, (k, d)) in self.dims.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                if k[0].is_zero() {
                    write!(f, "{d}")?;
                } else {
                    if *d != 1 {
                        write!(f, "{d}*")?;
                    }
                    f.write_str("q^")?;
                    fmt_degree(f, &k[0])?;
                }
            }
        } else {
            for (i, (k, d)) in self.dims.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                f.write_str("(")?;
                for (j, x) in k.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "):{d}")?;
            }
        }
        if let Some(c) = &self.cutoff {
            write!(f, " [degrees <= {c}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, rat};

    #[test]
    fn poincare_and_display() {
        let mut g = GradedDims::new();
        g.add(alloc::vec![rat(-2)], 1);
        g.add(alloc::vec![rat(0)], 2);
        g.add(alloc::vec![frac(1, 2)], 1);
        assert_eq!(g.total(), 4);
        assert_eq!(g.to_string(), "q^-2 + 2 + q^(1/2)");
        assert!(g.poincare().is_none());
        let p = g.poincare_scaled(&rat(2)).unwrap();
        assert_eq!(p.to_string(), "q^-4 + 2 + q");
    }
}
