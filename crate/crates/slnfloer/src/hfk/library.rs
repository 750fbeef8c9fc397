//! Built-in master complexes.

use alloc::string::String;
use alloc::vec::Vec;

use super::{staircase, torus_alexander_exponents, MasterComplex, StaircaseSpec};
use crate::ring::{frac, rat, MultiPoly, Var};
use crate::{Error, Result};

fn u() -> MultiPoly {
    MultiPoly::var(Var::U(1))
}

fn v() -> MultiPoly {
    MultiPoly::var(Var::V(1))
}

/// Unknot from a genus-zero diagram with one basepoint pair: a single
/// generator in bigrading `(0, 0)`.
pub fn unknot() -> MasterComplex {
    let mut m = MasterComplex::new(1, false);
    m.add_gen("x", rat(0), rat(0));
    m
}

/// Unknot from the punctured sphere: `{-1,-1/2} --UV--> {0,-1/2}`.
pub fn unknot_punctured() -> MasterComplex {
    let mut m = MasterComplex::new(1, true);
    let x = m.add_gen("x", rat(-1), frac(-1, 2));
    let y = m.add_gen("y", rat(0), frac(-1, 2));
    m.add_arrow(x, y, &(&u() * &v()));
    m
}

/// The punctured empty link: one generator and no basepoints. It is the
/// unit for [`super::disjoint_union`].
pub fn empty_link() -> MasterComplex {
    let mut m = MasterComplex::new(0, true);
    m.add_gen("e", rat(0), rat(0));
    m
}

/// Right-handed trefoil, unpunctured: `x0 <--U-- x1 --V--> x2`.
pub fn trefoil_zigzag() -> MasterComplex {
    staircase(&StaircaseSpec::new(alloc::vec![1, 0, -1]).expect("valid")).expect("valid")
}

/// Right-handed trefoil from a punctured diagram: six generators in two
/// rows, vertical arrows `UV`, top row `T1 <-U- T2 -V-> T3`, bottom row
/// `B1 <-(-U)- B2 -(-V)-> B3`.
pub fn trefoil_punctured() -> MasterComplex {
    let mut m = MasterComplex::new(1, true);
    let t1 = m.add_gen("T1", rat(-1), frac(1, 2));
    let t2 = m.add_gen("T2", rat(-2), frac(-1, 2));
    let t3 = m.add_gen("T3", rat(-3), frac(-3, 2));
    let b1 = m.add_gen("B1", rat(0), frac(1, 2));
    let b2 = m.add_gen("B2", rat(-1), frac(-1, 2));
    let b3 = m.add_gen("B3", rat(-2), frac(-3, 2));
    let uv = &u() * &v();
    m.add_arrow(t1, b1, &uv);
    m.add_arrow(t2, b2, &uv);
    m.add_arrow(t3, b3, &uv);
    m.add_arrow(t2, t1, &u());
    m.add_arrow(t2, t3, &v());
    m.add_arrow(b2, b1, &-u());
    m.add_arrow(b2, b3, &-v());
    m
}

/// `T(2, 2k+1)` as a staircase.
pub fn torus_2(k: u32) -> Result<MasterComplex> {
    staircase(&torus_alexander_exponents(2, 2 * k + 1)?)
}

/// `T(3, 3k+1)` or `T(3, 3k+2)` as a staircase.
pub fn torus_3(k: u32, plus_two: bool) -> Result<MasterComplex> {
    staircase(&torus_alexander_exponents(3, 3 * k + if plus_two { 2 } else { 1 })?)
}

/// Figure-eight knot: an isolated generator plus a square
/// `a -U-> b`, `a -V-> c`, `b -V-> d`, `c -(-U)-> d`.
///
/// Not a staircase; this is the standard complex of a thin knot with
/// `τ = 0` and is included as literature data for optional checks.
pub fn figure_eight() -> MasterComplex {
    let mut m = MasterComplex::new(1, false);
    let a = m.add_gen("a", rat(0), rat(0));
    let b = m.add_gen("b", rat(1), rat(1));
    let c = m.add_gen("c", rat(-1), rat(-1));
    let d = m.add_gen("d", rat(0), rat(0));
    m.add_gen("e", rat(0), rat(0));
    m.add_arrow(a, b, &u());
    m.add_arrow(a, c, &v());
    m.add_arrow(b, d, &v());
    m.add_arrow(c, d, &-u());
    m
}

/// Names accepted by [`by_name`].
pub fn names() -> Vec<&'static str> {
    alloc::vec![
        "unknot",
        "unknot-punctured",
        "T2,3",
        "T2,3-punctured",
        "T2,2k+1 (k>=1, e.g. T2,5)",
        "T3,m (gcd(3,m)=1, e.g. T3,4, T3,5)",
        "Tp,q",
        "4_1",
    ]
}

/// Looks up a built-in knot: `unknot`, `unknot-punctured`, `T2,3`,
/// `T2,3-punctured`, `4_1`, or any torus knot `Tp,q`.
pub fn by_name(name: &str) -> Result<MasterComplex> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    match key.as_str() {
        "unknot" | "0_1" => return Ok(unknot()),
        "unknot-punctured" => return Ok(unknot_punctured()),
        "t2,3-punctured" | "trefoil-punctured" => return Ok(trefoil_punctured()),
        "trefoil" | "3_1" => return Ok(trefoil_zigzag()),
        "4_1" | "figure-eight" | "figure8" => return Ok(figure_eight()),
        _ => {}
    }
    let bad = || Error::InvalidArgument(alloc::format!("unknown knot '{name}'"));
    let rest = key.strip_prefix('t').ok_or_else(bad)?;
    let (p, q) = rest.split_once(',').ok_or_else(bad)?;
    let p: u32 = p.parse().map_err(|_| bad())?;
    let q: u32 = q.parse().map_err(|_| bad())?;
    staircase(&torus_alexander_exponents(p, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfk::validate_master;

    #[test]
    fn built_ins_are_valid() {
        let mut all = alloc::vec![unknot(), unknot_punctured(), empty_link(), trefoil_zigzag(), trefoil_punctured(), figure_eight()];
        for k in 1..=4 {
            all.push(torus_2(k).unwrap());
            all.push(torus_3(k, false).unwrap());
            all.push(torus_3(k, true).unwrap());
        }
        for m in &all {
            validate_master(m).unwrap();
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("T2,3").unwrap(), trefoil_zigzag());
        assert_eq!(by_name("T3,4").unwrap().complex.len(), 5);
        assert!(by_name("T3,6").is_err());
        assert!(by_name("granny").is_err());
    }
}
