//! Exact rank of sparse rational matrices.
//!
//! Rows are cleared of denominators and reduced fraction-free: a row is
//! replaced by `p_c * r - r_c * p` and then divided by the gcd of its
//! entries. Elimination first runs on `i128` with checked arithmetic and
//! restarts on arbitrary-precision integers if anything overflows, so the
//! result is always exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::Rational;

/// A sparse vector: strictly increasing column indices with nonzero values.
pub type SparseVec = Vec<(usize, Rational)>;

trait Int: Clone + PartialEq + core::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Int for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

type IRow<T> = Vec<(usize, T)>;

fn make_primitive<T: Int>(row: &mut IRow<T>) {
    let mut g: Option<T> = None;
    for (_, v) in row.iter() {
        g = Some(match g {
            None => v.clone(),
            Some(g) => g.gcd(v),
        });
        if g.as_ref().is_some_and(|g| g.is_unit()) {
            return;
        }
    }
    if let Some(g) = g {
        if !g.is_zero() && !g.is_unit() {
            for (_, v) in row.iter_mut() {
                *v = v.div_exact(&g);
            }
        }
    }
}

/// `p_c * r - r_c * p` where `c` is the pivot column of `p`.
fn eliminate<T: Int>(r: &IRow<T>, rc: &T, p: &IRow<T>, pc: &T) -> Option<IRow<T>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            let z = T::zero();
            let v = T::mul_sub(pc, &r[i].1, rc, &z)?;
            out.push((ci, v));
            i += 1;
        } else if cj < ci {
            let z = T::zero();
            let v = T::mul_sub(pc, &z, rc, &p[j].1)?;
            out.push((cj, v));
            j += 1;
        } else {
            let v = T::mul_sub(pc, &r[i].1, rc, &p[j].1)?;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    Some(out)
}

/// Incremental echelon form: pivot column -> primitive row whose first
/// entry sits in that column.
struct Echelon<T> {
    pivots: BTreeMap<usize, IRow<T>>,
}

impl<T: Int> Echelon<T> {
    fn new() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }

    /// Reduces `row` against the pivots; inserts it if independent.
    /// Returns `None` on overflow, otherwise whether the row was new.
    fn insert(&mut self, mut row: IRow<T>) -> Option<bool> {
        loop {
            let Some((c, rc)) = row.first().cloned() else {
                return Some(false);
            };
            match self.pivots.get(&c) {
                Some(p) => {
                    let pc = p[0].1.clone();
                    row = eliminate(&row, &rc, p, &pc)?;
                    // The leading entry is gone; later columns may still
                    // carry pivots, so keep reducing from the new front.
                    debug_assert!(row.first().map_or(true, |e| e.0 > c));
                }
                None => {
                    self.pivots.insert(c, row);
                    return Some(true);
                }
            }
        }
    }
}

fn to_integer_rows(rows: &[SparseVec]) -> Vec<IRow<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            let mut out: IRow<BigInt> =
                r.iter().map(|(c, v)| (*c, (v * Rational::from_integer(l.clone())).to_integer())).collect();
            out.retain(|e| !Zero::is_zero(&e.1));
            make_primitive(&mut out);
            out
        })
        .filter(|r| !r.is_empty())
        .collect()
}

fn rank_generic<T: Int>(mut rows: Vec<IRow<T>>) -> Option<usize> {
    // Sparse rows first keeps fill-in down.
    rows.sort_by_key(|r| (r.len(), r.first().map(|e| e.0)));
    let mut ech = Echelon::<T>::new();
    let mut rank = 0;
    for r in rows {
        if ech.insert(r)? {
            rank += 1;
        }
    }
    Some(rank)
}

/// Exact rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[SparseVec]) -> usize {
    let big = to_integer_rows(rows);
    let small: Option<Vec<IRow<i128>>> = big
        .iter()
        .map(|r| r.iter().map(|(c, v)| v.to_i128().map(|x| (*c, x))).collect::<Option<IRow<i128>>>())
        .collect();
    if let Some(small) = small {
        if let Some(r) = rank_generic(small) {
            return r;
        }
    }
    rank_generic(big).expect("big integers never overflow")
}

/// Adds `c * v` into the accumulator `acc`, dropping cancelled entries.
pub fn axpy(acc: &mut BTreeMap<usize, Rational>, c: &Rational, v: &[(usize, Rational)]) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Converts an accumulator to a sparse vector.
pub fn to_sparse(acc: BTreeMap<usize, Rational>) -> SparseVec {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, rat};

    fn row(e: &[(usize, i64)]) -> SparseVec {
        e.iter().map(|&(c, v)| (c, rat(v))).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)])]), 1);
        assert_eq!(rank(&[row(&[(0, 1)]), row(&[(1, 1)]), row(&[(0, 1), (1, 1)])]), 2);
        let r = alloc::vec![(0, frac(1, 2)), (2, frac(1, 3))];
        assert_eq!(rank(&[r, row(&[(0, 3), (2, 2)])]), 1);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 1i64 << 62;
        let rows = alloc::vec![
            row(&[(0, big), (1, big - 1), (2, 3)]),
            row(&[(0, big - 1), (1, big), (2, 5)]),
            row(&[(0, 7), (1, big - 3), (2, big)]),
        ];
        assert_eq!(rank(&rows), 3);
    }
}
