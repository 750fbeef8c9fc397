//! Staircase master complexes of L-space knots.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::MasterComplex;
use crate::ring::{MultiPoly, Rational, Var};
use crate::{Error, Result};

/// Exponents `a_0 > a_1 > ... > a_{2m}` of an Alexander polynomial whose
/// coefficients alternate in sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseSpec {
    exponents: Vec<i64>,
}

impl StaircaseSpec {
    pub fn new(exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() % 2 == 0 {
            return Err(Error::SpecInvalid(format!("{} exponents; need an odd count", exponents.len())));
        }
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::SpecInvalid("exponents must be strictly decreasing".to_string()));
        }
        let l = exponents.len();
        if (0..l).any(|i| exponents[i] != -exponents[l - 1 - i]) {
            return Err(Error::SpecInvalid("exponents must be symmetric about 0".to_string()));
        }
        Ok(StaircaseSpec { exponents })
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Consecutive gaps `a_{i-1} - a_i`.
    pub fn gaps(&self) -> Vec<u32> {
        self.exponents.windows(2).map(|w| (w[0] - w[1]) as u32).collect()
    }
}

/// The staircase `x_0 <-U^{g_1}- x_1 -V^{g_2}-> x_2 <-U^{g_3}- x_3 ...`.
///
/// Odd-indexed generators are sources and `x_i` sits in Alexander grading
/// `a_i`. The zigzag is often drawn with the arrows pointing the other
/// way; with the gradings `A(x_i) = a_i` only this orientation is
/// homogeneous, and it is the one whose `U = 0, V = 1` specialization has
/// its surviving generator in Maslov grading 0. Maslov gradings follow
/// from the arrows and are normalized so that `x_0`, the generator of top
/// Alexander grading, has `M = 0`.
pub fn staircase(spec: &StaircaseSpec) -> Result<MasterComplex> {
    let a = spec.exponents();
    let gaps = spec.gaps();
    let mut maslov: Vec<i64> = alloc::vec![0; a.len()];
    for (i, g) in gaps.iter().enumerate() {
        let g = *g as i64;
        maslov[i + 1] = if i % 2 == 0 { maslov[i] + 1 - 2 * g } else { maslov[i] - 1 };
    }
    let mut m = MasterComplex::new(1, false);
    for i in 0..a.len() {
        m.add_gen(&format!("x{i}"), Rational::from_integer(maslov[i].into()), Rational::from_integer(a[i].into()));
    }
    for (i, g) in gaps.iter().enumerate() {
        if i % 2 == 0 {
            m.add_arrow(i + 1, i, &MultiPoly::var_pow(Var::U(1), *g));
        } else {
            m.add_arrow(i, i + 1, &MultiPoly::var_pow(Var::V(1), *g));
        }
    }
    Ok(m)
}

/// Exponents of the symmetrized Alexander polynomial of the torus knot
/// `T(p, q)`, computed as `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`.
pub fn torus_alexander_exponents(p: u32, q: u32) -> Result<StaircaseSpec> {
    if p < 2 || q < 2 || num_integer::gcd(p, q) != 1 {
        return Err(Error::SpecInvalid(format!("T({p},{q}) is not a nontrivial torus knot")));
    }
    let (p, q) = (p as usize, q as usize);
    let mut num = alloc::vec![0i64; p * q + 2];
    // (t^{pq} - 1)(t - 1) = t^{pq+1} - t^{pq} - t + 1
    num[p * q + 1] += 1;
    num[p * q] -= 1;
    num[1] -= 1;
    num[0] += 1;
    let mut den = alloc::vec![0i64; p + q + 1];
    den[p + q] += 1;
    den[p] -= 1;
    den[q] -= 1;
    den[0] += 1;
    let quot = poly_div_exact(&num, &den)
        .ok_or_else(|| Error::SpecInvalid("Alexander polynomial division failed".to_string()))?;
    let deg = quot.len() as i64 - 1;
    let mut exps: Vec<i64> = quot
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, _)| 2 * i as i64 - deg)
        .map(|e| e / 2)
        .collect();
    exps.reverse();
    StaircaseSpec::new(exps)
}

/// Exact division of integer polynomials (coefficients by ascending
/// degree) with a monic divisor; `None` if the remainder is nonzero.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let dn = den.len() - 1;
    if num.len() <= dn || den[dn] != 1 {
        return None;
    }
    let mut r = num.to_vec();
    let mut q = alloc::vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = r[i + dn];
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= c * d;
        }
    }
    r.iter().all(|c| *c == 0).then_some(q)
}
