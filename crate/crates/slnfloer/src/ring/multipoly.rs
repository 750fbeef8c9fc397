use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::{rat, Monomial, Rational, Var};
use crate::{Error, Result};

/// A polynomial with rational coefficients in any set of [`Var`]s.
///
/// Terms are stored in graded lexicographic order with no zero
/// coefficients, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Rational::one())
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        Self::term(Monomial::var_pow(v, e), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().map(|m| m.max_exponent()).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Weighted degree of a homogeneous polynomial, `None` if the terms
    /// disagree or the polynomial is zero.
    pub fn weighted_degree<W, F>(&self, weight: F) -> Option<W>
    where
        W: PartialEq + Clone,
        F: Fn(&Monomial) -> W,
    {
        let mut it = self.terms.keys().map(&weight);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Raises to the `k`-th power, rejecting exponents above `limit`.
    pub fn pow(&self, k: u32, limit: u32) -> Result<Self> {
        let top = self.max_exponent() as u64 * k as u64;
        if top > limit as u64 {
            return Err(Error::ExponentOutOfRange { exponent: top, limit });
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Keeps only the terms for which `keep` holds.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates every variable, all of which must be assigned.
    pub fn eval(&self, at: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let x = at.get(&v)?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            s += t;
        }
        Some(s)
    }

    /// Renames variables through `f` (which must be injective on the
    /// variables present).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        MultiPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e))), c.clone())),
        )
    }
}

/// Exact quotient `f / g` by multivariate division in graded lexicographic
/// order; fails unless the remainder vanishes.
pub fn exact_div(f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly> {
    let (lm, lc) = match g.leading_term() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return Err(Error::NotDivisible(String::from("division by zero"))),
    };
    let mut r = f.clone();
    let mut q = MultiPoly::zero();
    while let Some((m, c)) = r.leading_term() {
        let Some(qm) = lm.quotient_of(m) else {
            return Err(Error::NotDivisible(format!("({f}) / ({g})")));
        };
        let qc = c / &lc;
        r -= &g.mul_monomial(&qm, &qc);
        q.add_term(qm, qc);
    }
    Ok(q)
}

/// Substitutes polynomials for variables; unassigned variables stay.
pub fn specialize(f: &MultiPoly, assign: &BTreeMap<Var, MultiPoly>, limit: u32) -> Result<MultiPoly> {
    let mut cache: BTreeMap<(Var, u32), MultiPoly> = BTreeMap::new();
    let mut out = MultiPoly::zero();
    for (m, c) in f.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for &(v, e) in m.pairs() {
            match assign.get(&v) {
                Some(p) => {
                    let pe = match cache.get(&(v, e)) {
                        Some(x) => x.clone(),
                        None => {
                            let x = p.pow(e, limit)?;
                            cache.insert((v, e), x.clone());
                            x
                        }
                    };
                    t = &t * &pe;
                }
                None => {
                    if e > limit {
                        return Err(Error::ExponentOutOfRange { exponent: e as u64, limit });
                    }
                    t = t.mul_monomial(&Monomial::var_pow(v, e), &Rational::one());
                }
            }
        }
        out += &t;
    }
    if out.max_exponent() > limit {
        return Err(Error::ExponentOutOfRange { exponent: out.max_exponent() as u64, limit });
    }
    Ok(out)
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

/// Writes `c*m` terms with signs folded into the separators.
pub(crate) fn write_terms<'a, M: fmt::Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a M, &'a Rational, bool)>,
) -> fmt::Result {
    let mut first = true;
    for (m, c, is_one) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if is_one {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{a}*{m}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(m, c)| (m, c, m.is_one())))
    }
}

impl FromStr for MultiPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let terms = super::parse::parse_terms(s)?;
        let mut p = MultiPoly::zero();
        for (c, factors) in terms {
            let mut pairs: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
            for (pos, v, e) in factors {
                if e < 0 {
                    return Err(Error::Parse {
                        pos,
                        msg: String::from("negative exponent in a polynomial"),
                    });
                }
                pairs.push((v, e as u32));
            }
            p.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, DEFAULT_EXPONENT_LIMIT};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn exact_div_examples() {
        let x = Var::U(1);
        let y = Var::U(2);
        let f = &MultiPoly::var_pow(x, 2) - &MultiPoly::var_pow(y, 2);
        let g = &MultiPoly::var(x) - &MultiPoly::var(y);
        assert_eq!(exact_div(&f, &g).unwrap(), &MultiPoly::var(x) + &MultiPoly::var(y));

        let f3 = p("U1^3 - U2^3");
        assert_eq!(exact_div(&f3, &g).unwrap(), p("U1^2 + U1*U2 + U2^2"));

        let h = p("U1^2 + U2^2");
        assert!(matches!(exact_div(&h, &g), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn specialize_unknot_arrow() {
        let f = p("U1*V1");
        let mut a = BTreeMap::new();
        a.insert(Var::V(1), p("3*U1^2"));
        assert_eq!(specialize(&f, &a, DEFAULT_EXPONENT_LIMIT).unwrap(), p("3*U1^3"));
        let c = p("7/2");
        assert_eq!(specialize(&c, &a, DEFAULT_EXPONENT_LIMIT).unwrap(), c);
    }

    #[test]
    fn exponent_limit_is_enforced() {
        let f = p("U1^300");
        let mut a = BTreeMap::new();
        a.insert(Var::U(1), p("U2^2"));
        assert!(matches!(
            specialize(&f, &a, DEFAULT_EXPONENT_LIMIT),
            Err(Error::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn printing_round_trips() {
        let f = p("3*U1^2*V1 - 1/2*U2");
        assert_eq!(f.to_string(), "3*U1^2*V1 - 1/2*U2");
        let g = p(" -U1 +  2 - W1_2*q^2*t ");
        assert_eq!(g.to_string().parse::<MultiPoly>().unwrap(), g);
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("U1*U1").to_string(), "U1^2");
        assert_eq!(p("1/2*a").coeff(&Monomial::var(Var::A)), frac(1, 2));
    }
}
