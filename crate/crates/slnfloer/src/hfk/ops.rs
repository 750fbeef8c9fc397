//! Structural operations on master complexes.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::MasterComplex;
use crate::complex::{scalar_cone, tensor_disjoint, vadd, CurvedComplex, RingSpec};
use crate::ring::{frac, rat, MultiPoly, Var};
use crate::{Error, Result};

/// Adds a puncture next to `w_i`: two copies of the complex shifted by
/// `{-1, -1/2}` and `{0, -1/2}`, joined by `U_i V_i`.
///
/// With these shifts the homology of the result is the homology of the
/// original tensored with `Q{-1,-1/2} ⊕ Q{0,-1/2}`.
pub fn puncture(m: &MasterComplex, i: u32) -> Result<MasterComplex> {
    if m.punctured {
        return Err(Error::InvalidMaster("complex is already punctured".to_string()));
    }
    if i == 0 || i > m.k() {
        return Err(Error::InvalidArgument(format!("basepoint {i} out of range 1..={}", m.k())));
    }
    let top = m.complex.shifted(&[rat(-1), frac(-1, 2)], -1);
    let f = &MultiPoly::var(Var::U(i)) * &MultiPoly::var(Var::V(i));
    let cone = scalar_cone(&top, &f, &[rat(1), rat(0)]);
    Ok(MasterComplex { complex: cone, punctured: true, ..m.clone() })
}

/// `(0,3)`-stabilization at basepoint `i`: a new pair `w_{k+1}, z_{k+1}`
/// and two copies of the complex joined by `U_{a(i)} - U_{k+1}` and
/// `V_{k+1} - V_i`.
///
/// The matchings are re-threaded so that `z_i` meets `w_{k+1}` on the
/// alpha side and `z_{k+1}` meets `w_{a(i)}`; the curvature identity then
/// holds for the new matchings.
pub fn stabilize(m: &MasterComplex, i: u32) -> Result<MasterComplex> {
    let k = m.k();
    if i == 0 || i > k {
        return Err(Error::InvalidArgument(format!("basepoint {i} out of range 1..={k}")));
    }
    let new = k + 1;
    let ai = m.a_match[(i - 1) as usize];
    let mut vars: Vec<Var> = m.complex.ring.vars().iter().copied().collect();
    vars.extend([Var::U(new), Var::V(new)]);
    let ring = RingSpec::polynomial(vars).with_linear(m.complex.ring.linear().relations())?;
    let mut c = CurvedComplex::new(ring, m.complex.rule.clone());
    let n = m.complex.len();
    let lift = [rat(-1), rat(-1)];
    for g in &m.complex.gens {
        c.add_gen(format!("{}|a", g.name), vadd(&g.grading, &lift), g.hdeg - 1);
    }
    for g in &m.complex.gens {
        c.add_gen(format!("{}|b", g.name), g.grading.clone(), g.hdeg);
    }
    for (x, y, f) in m.complex.arrows() {
        c.add_arrow(x, y, f);
        c.add_arrow(n + x, n + y, &-f);
    }
    let down = &MultiPoly::var(Var::U(ai)) - &MultiPoly::var(Var::U(new));
    let up = &MultiPoly::var(Var::V(new)) - &MultiPoly::var(Var::V(i));
    for x in 0..n {
        c.add_arrow(x, n + x, &down);
        c.add_arrow(n + x, x, &up);
    }
    let mut a_match = m.a_match.clone();
    a_match[(i - 1) as usize] = new;
    a_match.push(ai);
    let mut b_match = m.b_match.clone();
    b_match.push(new);
    let mut components = m.components.clone();
    components.push(m.components[(i - 1) as usize]);
    let out = MasterComplex { complex: c, a_match, b_match, components, punctured: m.punctured };
    Ok(out.with_matching_curvature())
}

/// Renumbers basepoint `j` as `j + offset` throughout.
fn offset_basepoints(m: &MasterComplex, offset: u32) -> Result<MasterComplex> {
    let ren = |v: Var| match v {
        Var::U(j) => Var::U(j + offset),
        Var::V(j) => Var::V(j + offset),
        other => other,
    };
    if m.complex.ring.linear().rank() > 0 || !m.complex.ring.monomial_relations().is_empty() {
        return Err(Error::RingMismatch("master complexes with relations cannot be renumbered".to_string()));
    }
    let ring = RingSpec::polynomial(m.complex.ring.vars().iter().map(|v| ren(*v)));
    let mut c = CurvedComplex::new(ring, m.complex.rule.clone());
    c.gens = m.complex.gens.clone();
    c.diff = m.complex.diff.iter().map(|row| row.iter().map(|(y, f)| (*y, f.rename(ren))).collect()).collect();
    c.curvature = m.complex.curvature.rename(ren);
    Ok(MasterComplex {
        complex: c,
        a_match: m.a_match.iter().map(|a| a + offset).collect(),
        b_match: m.b_match.iter().map(|b| b + offset).collect(),
        components: m.components.clone(),
        punctured: m.punctured,
    })
}

/// Disjoint union of two punctured complexes: connected sum at the
/// punctures, which is the tensor product over disjoint variable sets.
pub fn disjoint_union(m1: &MasterComplex, m2: &MasterComplex) -> Result<MasterComplex> {
    if !m1.punctured || !m2.punctured {
        return Err(Error::RingMismatch("disjoint union needs two punctured complexes".to_string()));
    }
    let shifted = offset_basepoints(m2, m1.k())?;
    let label_offset = m1.components.iter().copied().max().unwrap_or(0);
    let complex = tensor_disjoint(&m1.complex, &shifted.complex)?;
    let mut a_match = m1.a_match.clone();
    a_match.extend_from_slice(&shifted.a_match);
    let mut b_match = m1.b_match.clone();
    b_match.extend_from_slice(&shifted.b_match);
    let mut components = m1.components.clone();
    components.extend(m2.components.iter().map(|c| c + label_offset));
    Ok(MasterComplex { complex, a_match, b_match, components, punctured: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfk::library::*;
    use crate::hfk::validate_master;

    #[test]
    fn puncturing_the_zigzag_gives_the_six_generator_trefoil_gradings() {
        let p = puncture(&trefoil_zigzag(), 1).unwrap();
        validate_master(&p).unwrap();
        let six = trefoil_punctured();
        let mut a: Vec<_> = p.complex.gens.iter().map(|g| g.grading.clone()).collect();
        let mut b: Vec<_> = six.complex.gens.iter().map(|g| g.grading.clone()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(p.complex.n_arrows(), six.complex.n_arrows());
    }

    #[test]
    fn stabilization_keeps_curvature_identity() {
        for m in [unknot(), trefoil_zigzag(), unknot_punctured()] {
            let s = stabilize(&m, 1).unwrap();
            validate_master(&s).unwrap();
            let t = stabilize(&s, 2).unwrap();
            validate_master(&t).unwrap();
            assert_eq!(t.complex.len(), 4 * m.complex.len());
        }
    }

    #[test]
    fn disjoint_union_renumbers() {
        let u = disjoint_union(&unknot_punctured(), &unknot_punctured()).unwrap();
        validate_master(&u).unwrap();
        assert_eq!(u.k(), 2);
        assert_eq!(u.components, alloc::vec![1, 2]);
        assert!(disjoint_union(&unknot(), &unknot_punctured()).is_err());
    }
}
