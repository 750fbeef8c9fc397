use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_traits::{One, Zero};

use super::multipoly::write_terms;
use super::{exact_div, rat, Monomial, MultiPoly, Rational, Var};
use crate::{Error, Result};

/// Exponents of `a`, `q` and `t` in a Laurent monomial.
///
/// The derived order (by `a`, then `q`, then `t`) is the printing order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LExp {
    pub a: i32,
    pub q: i32,
    pub t: i32,
}

impl LExp {
    pub const ONE: LExp = LExp { a: 0, q: 0, t: 0 };

    pub fn q(q: i32) -> Self {
        LExp { a: 0, q, t: 0 }
    }

    pub fn aq(a: i32, q: i32) -> Self {
        LExp { a, q, t: 0 }
    }

    fn add(self, o: LExp) -> LExp {
        LExp { a: self.a + o.a, q: self.q + o.q, t: self.t + o.t }
    }

    fn get(&self, v: Var) -> i32 {
        match v {
            Var::A => self.a,
            Var::Q => self.q,
            Var::T => self.t,
            _ => 0,
        }
    }
}

impl fmt::Display for LExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, e) in [("a", self.a), ("q", self.q), ("t", self.t)] {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A Laurent polynomial in `a`, `q`, `t` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<LExp, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(LExp::ONE, Rational::one())
    }

    pub fn term(e: LExp, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn int(c: i64) -> Self {
        Self::term(LExp::ONE, rat(c))
    }

    /// The monomial `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::term(LExp::q(k), Rational::one())
    }

    pub fn a_pow(k: i32) -> Self {
        Self::term(LExp::aq(k, 0), Rational::one())
    }

    pub fn t_pow(k: i32) -> Self {
        Self::term(LExp { a: 0, q: 0, t: k }, Rational::one())
    }

    /// Builds `sum c_k q^k` from `(k, c_k)` pairs.
    pub fn from_q_coeffs<I: IntoIterator<Item = (i32, i64)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(LExp::q(k), rat(c));
        }
        p
    }

    pub fn add_term(&mut self, e: LExp, c: Rational) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&LExp, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: LExp) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `q^k` in a polynomial in `q` alone.
    pub fn q_coeff(&self, k: i32) -> Rational {
        self.coeff(LExp::q(k))
    }

    pub fn uses_only_q(&self) -> bool {
        self.terms.keys().all(|e| e.a == 0 && e.t == 0)
    }

    pub fn min_q(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.q).min()
    }

    pub fn max_q(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.q).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn shift(&self, by: LExp) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (e.add(by), x.clone())).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift_q(&self, k: i32) -> Self {
        self.shift(LExp::q(k))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces each of `a`, `q`, `t` by the Laurent monomial given in
    /// `images` (in that order).
    pub fn substitute_monomials(&self, images: [LExp; 3]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let img = LExp {
                a: e.a * images[0].a + e.q * images[1].a + e.t * images[2].a,
                q: e.a * images[0].q + e.q * images[1].q + e.t * images[2].q,
                t: e.a * images[0].t + e.q * images[1].t + e.t * images[2].t,
            };
            out.add_term(img, c.clone());
        }
        out
    }

    /// Substitutes `a = q^n`.
    pub fn a_to_q_pow(&self, n: i32) -> Self {
        self.substitute_monomials([LExp::q(n), LExp::q(1), LExp { a: 0, q: 0, t: 1 }])
    }

    /// Substitutes `t = q^n`.
    pub fn t_to_q_pow(&self, n: i32) -> Self {
        self.substitute_monomials([LExp::aq(1, 0), LExp::q(1), LExp::q(n)])
    }

    /// Substitutes `q -> q^-1`.
    pub fn reflect_q(&self) -> Self {
        self.substitute_monomials([LExp::aq(1, 0), LExp::q(-1), LExp { a: 0, q: 0, t: 1 }])
    }

    /// Evaluates one variable at a rational value; negative powers of zero
    /// are rejected.
    pub fn eval_var(&self, v: Var, x: &Rational) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.get(v);
            if x.is_zero() && k < 0 {
                return Err(Error::PoleAtSpecialization(alloc::format!("{v} = 0")));
            }
            let val = if k >= 0 {
                num_traits::pow(x.clone(), k as usize)
            } else {
                num_traits::pow(x.recip(), (-k) as usize)
            };
            let mut rest = *e;
            match v {
                Var::A => rest.a = 0,
                Var::Q => rest.q = 0,
                Var::T => rest.t = 0,
                _ => {}
            }
            out.add_term(rest, c * val);
        }
        Ok(out)
    }

    /// Value at `q = x` of a polynomial in `q` alone.
    pub fn eval_q(&self, x: &Rational) -> Result<Rational> {
        let v = self.eval_var(Var::Q, x)?;
        Ok(v.coeff(LExp::ONE))
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// `true` when every coefficient is a nonnegative integer.
    pub fn is_nonneg_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && *c >= Rational::zero())
    }

    fn min_exps(&self) -> LExp {
        let mut m = LExp::ONE;
        let mut first = true;
        for e in self.terms.keys() {
            if first {
                m = *e;
                first = false;
            } else {
                m = LExp { a: m.a.min(e.a), q: m.q.min(e.q), t: m.t.min(e.t) };
            }
        }
        m
    }

    fn to_poly(&self) -> (LExp, MultiPoly) {
        let m = self.min_exps();
        let p = MultiPoly::from_terms(self.terms.iter().map(|(e, c)| {
            let pairs = [
                (Var::A, (e.a - m.a) as u32),
                (Var::Q, (e.q - m.q) as u32),
                (Var::T, (e.t - m.t) as u32),
            ];
            (Monomial::from_pairs(pairs), c.clone())
        }));
        (m, p)
    }

    fn from_poly(shift: LExp, p: &MultiPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in p.terms() {
            let e = LExp {
                a: m.exp(Var::A) as i32 + shift.a,
                q: m.exp(Var::Q) as i32 + shift.q,
                t: m.exp(Var::T) as i32 + shift.t,
            };
            out.add_term(e, c.clone());
        }
        out
    }

    /// `Some((c, e))` when `self = c * X^e * other` for a nonzero scalar
    /// `c` and a Laurent monomial `X^e`; both polynomials must be nonzero.
    pub fn unit_ratio(&self, other: &LaurentPoly) -> Option<(Rational, LExp)> {
        let (e1, c1) = self.terms.iter().next()?;
        let (e2, c2) = other.terms.iter().next()?;
        let e = LExp { a: e1.a - e2.a, q: e1.q - e2.q, t: e1.t - e2.t };
        let c = c1 / c2;
        (other.shift(e).scale(&c) == *self).then_some((c, e))
    }

    /// Exact quotient up to Laurent monomials; fails when the polynomial
    /// parts do not divide.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        if g.is_zero() {
            return Err(Error::NotDivisible(String::from("division by zero")));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (sf, pf) = self.to_poly();
        let (sg, pg) = g.to_poly();
        let h = exact_div(&pf, &pg)?;
        Ok(Self::from_poly(LExp { a: sf.a - sg.a, q: sf.q - sg.q, t: sf.t - sg.t }, &h))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut o = self.clone();
        o += rhs;
        o
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut o = self.clone();
        o -= rhs;
        o
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut o = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                o.add_term(ea.add(*eb), ca * cb);
            }
        }
        o
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().map(|(e, c)| (e, c, *e == LExp::ONE)))
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = LaurentPoly::zero();
        for (c, factors) in super::parse::parse_terms(s)? {
            let mut e = LExp::ONE;
            for (pos, v, k) in factors {
                let k = i32::try_from(k).map_err(|_| Error::Parse {
                    pos,
                    msg: String::from("exponent out of range"),
                })?;
                match v {
                    Var::A => e.a += k,
                    Var::Q => e.q += k,
                    Var::T => e.t += k,
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: String::from("Laurent polynomials use only a, q, t"),
                        })
                    }
                }
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn unit_ratio_finds_monomial_factors() {
        let p = lp("q + q^3");
        assert_eq!(lp("-2*a*q^4 - 2*a*q^6").unit_ratio(&p), Some((rat(-2), LExp::aq(1, 3))));
        assert_eq!(lp("q + 2*q^3").unit_ratio(&p), None);
        assert_eq!(LaurentPoly::zero().unit_ratio(&p), None);
    }

    #[test]
    fn ascending_print_and_round_trip() {
        let p = lp("q^2 + 1 + q^-2");
        assert_eq!(p.to_string(), "q^-2 + 1 + q^2");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        let h = lp("2*a^-2 - a^-4 + a^-2*q^2 - 2*a^-2 + a^-2*q^-2");
        assert_eq!(h.to_string().parse::<LaurentPoly>().unwrap(), h);
    }

    #[test]
    fn evaluations() {
        let p = lp("q + q^-1");
        assert_eq!(p.eval_q(&rat(1)).unwrap(), rat(2));
        assert_eq!(p.eval_q(&rat(-1)).unwrap(), rat(-2));
        assert!(p.eval_q(&rat(0)).is_err());
    }

    #[test]
    fn laurent_division() {
        let num = lp("q^2 - q^-2");
        let den = lp("q - q^-1");
        assert_eq!(num.exact_div(&den).unwrap(), lp("q + q^-1"));
        assert!(lp("q^2 + 1").exact_div(&lp("q - 1")).is_err());
    }

    #[test]
    fn substitutions() {
        let p = lp("a*q + t^2");
        assert_eq!(p.a_to_q_pow(3), lp("q^4 + t^2"));
        assert_eq!(p.t_to_q_pow(2), lp("a*q + q^4"));
        assert_eq!(lp("q^3").reflect_q(), lp("q^-3"));
    }
}
