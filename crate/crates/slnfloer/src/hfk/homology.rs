//! `HFK_n`, its reduced version and the first page of the algebraic
//! filtration.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::{cfk_n, kill_vars, puncture, validate_master, MasterComplex};
use crate::complex::{graded_homology, induced_map_rank, snf_homology, CurvedComplex, GradedDims, ModuleDecomp};
use crate::ring::{frac, rat, LaurentPoly, Monomial, Rational, Var};
use crate::{Error, Result};

/// How a result was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Smith normal form of `CFK_n` of a punctured complex over `Q[U]`.
    PuncturedCone,
    /// Degreewise homology of the unpunctured complex modulo
    /// `UV = 0, V = n·U^{n-1}`, i.e. over `Q[U]/(U^n)`.
    Quotient,
    /// Degreewise homology of `CFK_n` over all `U_i`.
    Direct,
}

/// `HFK_n` of a master complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HFKnResult {
    pub n: u32,
    pub route: Route,
    /// Module structure over `Q[U]`, when the route provides it.
    pub decomp: Option<ModuleDecomp>,
    /// Dimensions by `gr_n`.
    pub dims: GradedDims,
    pub convention: &'static str,
}

pub const GR_N_CONVENTION: &str = "gr_n = -n*M + 2(n-1)*A";

impl HFKnResult {
    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    /// Poincare polynomial in `q^{gr_n}`.
    pub fn poincare(&self) -> Option<LaurentPoly> {
        self.dims.poincare()
    }

    pub fn max_torsion_exponent(&self) -> Option<u32> {
        self.decomp.as_ref().and_then(|d| d.torsion().map(|(k, _)| k).max())
    }
}

fn require_single_pair(m: &MasterComplex) -> Result<()> {
    if m.k() != 1 {
        return Err(Error::InvalidArgument(format!("route needs one basepoint pair, found {}", m.k())));
    }
    Ok(())
}

/// `HFK_n` through the punctured complex and Smith normal form.
pub fn hfk_n_route_a(m: &MasterComplex, n: u32) -> Result<HFKnResult> {
    require_single_pair(m)?;
    let p = if m.punctured { m.clone() } else { puncture(m, 1)? };
    let c = cfk_n(&p, n)?;
    let decomp = snf_homology(&c)?;
    if decomp.free_rank() > 0 {
        return Err(Error::InfiniteDegreePiece(format!("HFK_{n} has {} free summands", decomp.free_rank())));
    }
    let dims = decomp.torsion_dims();
    Ok(HFKnResult { n, route: Route::PuncturedCone, decomp: Some(decomp), dims, convention: GR_N_CONVENTION })
}

/// `HFK_n` of an unpunctured knot complex modulo `UV = 0, V = n·U^{n-1}`.
///
/// Gradings are shifted by `{0, -1/2}` so that they agree with the
/// punctured route.
pub fn hfk_n_route_b(m: &MasterComplex, n: u32) -> Result<HFKnResult> {
    require_single_pair(m)?;
    if m.punctured {
        return Err(Error::InvalidArgument("the quotient route needs an unpunctured complex".to_string()));
    }
    let c = quotient_complex(m, n)?;
    let dims = graded_homology(&c, &top_degree(&c))?;
    Ok(HFKnResult { n, route: Route::Quotient, decomp: None, dims, convention: GR_N_CONVENTION })
}

/// `CFK_n` of the shifted unpunctured complex over `Q[U]/(U^n)`.
fn quotient_complex(m: &MasterComplex, n: u32) -> Result<CurvedComplex> {
    let mut shifted = m.clone();
    shifted.complex = m.complex.shifted(&[rat(0), frac(-1, 2)], 0);
    let c = cfk_n(&shifted, n)?;
    let ring = c.ring.clone().with_monomial(Monomial::var_pow(Var::U(1), n))?;
    Ok(c.over_ring(ring))
}

fn top_degree(c: &CurvedComplex) -> Rational {
    let max_gen = c.gens.iter().map(|g| g.grading[0].clone()).max().unwrap_or_else(Rational::zero);
    let nil: u32 = c.ring.monomial_relations().iter().map(|m| m.max_exponent()).max().unwrap_or(0);
    max_gen + rat(2 * nil as i64)
}

/// `HFK_n` by the most direct route available.
///
/// Knot complexes with one basepoint pair use the punctured cone; an
/// unpunctured one is also run through the quotient route and both must
/// agree. Other complexes are punctured if needed and their homology is
/// computed degree by degree, after which `U_i^n` is checked to vanish on
/// homology for one basepoint of every component.
pub fn hfk_n(m: &MasterComplex, n: u32) -> Result<HFKnResult> {
    validate_master(m)?;
    if m.k() == 1 {
        let a = hfk_n_route_a(m, n)?;
        if !m.punctured {
            let b = hfk_n_route_b(m, n)?;
            if a.dims != b.dims {
                return Err(Error::InvalidMaster(format!("routes disagree: {} versus {}", a.dims, b.dims)));
            }
        }
        return Ok(a);
    }
    let p = if m.punctured || m.k() == 0 { m.clone() } else { puncture(m, 1)? };
    let c = cfk_n(&p, n)?;
    let (dims, cutoff) = stable_homology(&c, n)?;
    for i in p.first_basepoints() {
        let un = Monomial::var_pow(Var::U(i), n);
        for g in dims.dims.keys() {
            if induced_map_rank(&c, &cutoff, &un, g)? != 0 {
                return Err(Error::InvalidMaster(format!("U{i}^{n} acts nontrivially on homology")));
            }
        }
    }
    Ok(HFKnResult { n, route: Route::Direct, decomp: None, dims, convention: GR_N_CONVENTION })
}

/// Degreewise homology of a complex whose homology is known to be finite:
/// the cutoff grows until a window of width `2(n + 2)` below it is empty.
fn stable_homology(c: &CurvedComplex, n: u32) -> Result<(GradedDims, Rational)> {
    let max_gen = c.gens.iter().map(|g| g.grading[0].clone()).max().unwrap_or_else(Rational::zero);
    let nvars = c.ring.surviving_vars().len() as i64;
    let window = rat(2 * (n as i64 + 2));
    let mut margin = rat(2 * n as i64 * nvars.max(1)) + &window;
    for _ in 0..4 {
        let cutoff = &max_gen + &margin;
        let mut dims = graded_homology(c, &cutoff)?;
        if !dims.is_truncated() {
            return Ok((dims, cutoff));
        }
        let floor = &cutoff - &window;
        if dims.dims.keys().all(|k| k[0] <= floor) {
            dims.cutoff = None;
            return Ok((dims, cutoff));
        }
        margin = margin * rat(2);
    }
    let cutoff = &max_gen + &margin;
    Ok((graded_homology(c, &cutoff)?, cutoff))
}

/// Reduced `HFK_n`: `CFK_n` of an unpunctured complex with `U_i = 0` for
/// the first basepoint on the marked component.
pub fn reduced_hfk_n(m: &MasterComplex, n: u32, component: u32) -> Result<GradedDims> {
    validate_master(m)?;
    if m.punctured {
        return Err(Error::InvalidArgument("reduced theory needs an unpunctured complex".to_string()));
    }
    let i = m
        .components
        .iter()
        .position(|c| *c == component)
        .ok_or_else(|| Error::InvalidArgument(format!("no basepoint on component {component}")))?
        as u32
        + 1;
    let c = kill_vars(&cfk_n(m, n)?, &[Var::U(i)])?;
    Ok(stable_homology(&c, n)?.0)
}

/// `CFK_n` of the part of the differential without `V`.
fn v_free_complex(m: &MasterComplex, n: u32) -> Result<CurvedComplex> {
    let mut z = m.clone();
    z.complex = m.complex.map_entries(|f| f.filter_terms(|mono| !mono.vars().any(|v| v.is_v())));
    z.complex.curvature = crate::ring::MultiPoly::zero();
    z.a_match = (1..=m.k()).collect();
    z.b_match = (1..=m.k()).collect();
    cfk_n(&z, n)
}

/// The complex whose filtration is meant: the punctured one, which is also
/// what [`hfk_n`] works with when there is a single basepoint pair.
fn filtration_base(m: &MasterComplex) -> Result<MasterComplex> {
    validate_master(m)?;
    if m.punctured {
        Ok(m.clone())
    } else {
        puncture(m, 1)
    }
}

/// First page of the algebraic filtration: homology of the `V`-free part
/// of the differential, graded by `gr_n`, up to `cutoff` (a default bound
/// is used when `None`). Unpunctured inputs are punctured at basepoint 1
/// first, so the page converges to [`hfk_n`] in the same grading.
///
/// Over `Q[U]` this page is usually infinite, so the result is truncated.
pub fn e1_page(m: &MasterComplex, n: u32, cutoff: Option<Rational>) -> Result<GradedDims> {
    let c = v_free_complex(&filtration_base(m)?, n)?;
    let cutoff = cutoff.unwrap_or_else(|| {
        let max_gen = c.gens.iter().map(|g| g.grading[0].clone()).max().unwrap_or_else(Rational::zero);
        max_gen + rat(4 * n as i64 + 4)
    });
    graded_homology(&c, &cutoff)
}

/// The first page as a module over `Q[U]` (one basepoint pair only),
/// punctured as in [`e1_page`].
pub fn e1_module(m: &MasterComplex, n: u32) -> Result<ModuleDecomp> {
    require_single_pair(m)?;
    snf_homology(&v_free_complex(&filtration_base(m)?, n)?)
}

/// Homology of the quotient complex with every entry through `w` dropped:
/// only terms without `U` survive, so arrows become powers of
/// `n·U^{n-1}`.
pub fn w_filtered_page(m: &MasterComplex, n: u32) -> Result<GradedDims> {
    require_single_pair(m)?;
    validate_master(m)?;
    if m.punctured {
        return Err(Error::InvalidArgument("the filtered page needs an unpunctured complex".to_string()));
    }
    let mut z = m.clone();
    z.complex = m.complex.map_entries(|f| f.filter_terms(|mono| mono.exp(Var::U(1)) == 0));
    let c = quotient_complex(&z, n)?;
    graded_homology(&c, &top_degree(&c))
}

/// Checks that `source - target` splits into pairs in degrees
/// `(d, d + step)`; returns the lower degrees of the pairs.
///
/// Degrees above `upto` are treated as unknown: pairs may leave the known
/// range, but every known degree must be balanced.
pub fn paired_difference(
    source: &GradedDims,
    target: &GradedDims,
    step: &Rational,
    upto: Option<&Rational>,
) -> Option<GradedDims> {
    let mut diff: BTreeMap<Rational, i64> = BTreeMap::new();
    for (k, d) in &source.dims {
        *diff.entry(k[0].clone()).or_insert(0) += *d as i64;
    }
    for (k, d) in &target.dims {
        *diff.entry(k[0].clone()).or_insert(0) -= *d as i64;
    }
    let mut pending: BTreeMap<Rational, i64> = BTreeMap::new();
    let mut witness = GradedDims::new();
    let mut degrees: Vec<Rational> = diff.keys().cloned().collect();
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i].clone();
        i += 1;
        if upto.is_some_and(|u| d > *u) {
            break;
        }
        let incoming = pending.remove(&d).unwrap_or(0);
        let w = diff.get(&d).copied().unwrap_or(0) - incoming;
        if w < 0 {
            return None;
        }
        if w > 0 {
            let up = &d + step;
            *pending.entry(up.clone()).or_insert(0) += w;
            if !degrees.contains(&up) {
                degrees.push(up);
                degrees.sort();
            }
            witness.add(alloc::vec![d], w.to_usize()?);
        }
    }
    Some(witness)
}
