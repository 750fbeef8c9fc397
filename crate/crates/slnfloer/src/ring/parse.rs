//! Shared reader for the polynomial text syntax.
//!
//! A polynomial is a signed sum of products; each product mixes rational
//! constants (`3`, `1/2`) and powers of variables (`U1^2`, `W1_2`, `a`,
//! `q^-3`, `t`). Whitespace is ignored and `*` between factors is optional.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Rational, Var};
use crate::{Error, Result};

/// One parsed factor: byte offset, variable, signed exponent.
pub(crate) type Factor = (usize, Var, i64);

struct Reader<'a> {
    s: &'a [u8],
    pos: usize,
}

fn err<T>(pos: usize, msg: &str) -> Result<T> {
    Err(Error::Parse { pos, msg: String::from(msg) })
}

impl<'a> Reader<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected digits");
        }
        let txt = core::str::from_utf8(&self.s[start..self.pos]).map_err(|_| Error::Parse {
            pos: start,
            msg: String::from("invalid utf-8"),
        })?;
        txt.parse::<BigInt>().map_err(|_| Error::Parse { pos: start, msg: String::from("bad integer") })
    }

    fn small_int(&mut self) -> Result<u32> {
        let start = self.pos;
        let d = self.digits()?;
        u32::try_from(d).or_else(|_| err(start, "index too large"))
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let d = self.digits()?;
        let e = i64::try_from(d).or_else(|_| err(start, "exponent too large"))?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self, coeff: &mut Rational, factors: &mut Vec<Factor>) -> Result<()> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?;
                let mut r = Rational::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return err(start, "zero denominator");
                    }
                    r /= Rational::from_integer(d);
                }
                *coeff *= r;
            }
            Some(b'U') | Some(b'V') => {
                let c = self.s[self.pos];
                self.pos += 1;
                let i = self.small_int()?;
                let v = if c == b'U' { Var::U(i) } else { Var::V(i) };
                let e = self.exponent()?;
                factors.push((start, v, e));
            }
            Some(b'W') => {
                self.pos += 1;
                let i = self.small_int()?;
                if self.peek() != Some(b'_') {
                    return err(self.pos, "expected '_' in W<i>_<j>");
                }
                self.pos += 1;
                let j = self.small_int()?;
                let e = self.exponent()?;
                factors.push((start, Var::W(i, j), e));
            }
            Some(b'a') | Some(b'q') | Some(b't') => {
                let v = match self.s[self.pos] {
                    b'a' => Var::A,
                    b'q' => Var::Q,
                    _ => Var::T,
                };
                self.pos += 1;
                let e = self.exponent()?;
                factors.push((start, v, e));
            }
            _ => return err(start, "expected a number or a variable"),
        }
        Ok(())
    }

    fn product(&mut self) -> Result<(Rational, Vec<Factor>)> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        self.factor(&mut coeff, &mut factors)?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut factors)?;
                }
                Some(c) if c.is_ascii_digit() || matches!(c, b'U' | b'V' | b'W' | b'a' | b'q' | b't') => {
                    self.factor(&mut coeff, &mut factors)?;
                }
                _ => break,
            }
        }
        Ok((coeff, factors))
    }
}

/// Parses a signed sum of products into `(coefficient, factors)` pairs.
pub(crate) fn parse_terms(s: &str) -> Result<Vec<(Rational, Vec<Factor>)>> {
    let mut r = Reader { s: s.as_bytes(), pos: 0 };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let sign = match r.peek() {
            None if first => return err(r.pos, "empty polynomial"),
            None => break,
            Some(b'+') => {
                r.pos += 1;
                1
            }
            Some(b'-') => {
                r.pos += 1;
                -1
            }
            Some(_) if first => 1,
            Some(_) => return err(r.pos, "expected '+' or '-'"),
        };
        first = false;
        let (mut c, f) = r.product()?;
        if sign < 0 {
            c = -c;
        }
        out.push((c, f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_all_variable_kinds() {
        let t = parse_terms("3*U1^2*V1 - 1/2*W2_3 + a^-1 q t").unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[1].1[0].1, Var::W(2, 3));
        assert_eq!(t[2].1.len(), 3);
        assert_eq!(t[2].1[0].2, -1);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("3 +").is_err());
        assert!(parse_terms("x").is_err());
        assert!(parse_terms("1/0").is_err());
    }
}
