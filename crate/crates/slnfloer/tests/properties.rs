//! Randomized invariants across the ring, complex, HFK and skein layers.

use std::collections::BTreeSet;

use proptest::prelude::*;
use slnfloer::complex::curvature;
use slnfloer::hfk::library::{by_name, torus_2};
use slnfloer::hfk::{disjoint_union, hfk_n, puncture, validate_master};
use slnfloer::poly::{braid_closure, homfly, skein_defect};
use slnfloer::ring::{eliminate_linear, exact_div, rat, LExp, LaurentPoly, LinearElim, Monomial, MultiPoly, Var};

fn multipoly() -> impl Strategy<Value = MultiPoly> {
    let term = (-3i64..4, 0u32..3, 0u32..3, 0u32..2);
    proptest::collection::vec(term, 0..5).prop_map(|ts| {
        MultiPoly::from_terms(ts.into_iter().map(|(c, a, b, d)| {
            (Monomial::from_pairs([(Var::U(1), a), (Var::U(2), b), (Var::V(1), d)]), rat(c))
        }))
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    let term = (-3i64..4, -2i32..3, -3i32..4);
    proptest::collection::vec(term, 0..5).prop_map(|ts| {
        let mut p = LaurentPoly::zero();
        for (c, a, q) in ts {
            p.add_term(LExp::aq(a, q), rat(c));
        }
        p
    })
}

fn braid_word(strands: u32, len: usize) -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::vec((1..strands as i32, proptest::bool::ANY), 0..=len)
        .prop_map(|w| w.into_iter().map(|(g, pos)| if pos { g } else { -g }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multipoly_ring_axioms(f in multipoly(), g in multipoly(), h in multipoly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &MultiPoly::one(), f.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(f in multipoly(), g in multipoly()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(exact_div(&(&f * &g), &g).unwrap(), f);
    }

    #[test]
    fn exact_division_rejects_remainders(g in multipoly()) {
        prop_assume!(g.total_degree().is_some_and(|d| d > 0));
        // A nonzero constant is never a multiple of a nonconstant polynomial.
        prop_assert!(exact_div(&MultiPoly::one(), &g).is_err());
    }

    #[test]
    fn linear_elimination_is_a_ring_map(f in multipoly(), g in multipoly(), c in 1i64..4) {
        let rel: MultiPoly = format!("U1 - {c}*U2").parse().unwrap();
        let elim = LinearElim::from_relations(core::slice::from_ref(&rel)).unwrap();
        let (rf, rg) = (elim.reduce(&f), elim.reduce(&g));
        prop_assert_eq!(elim.reduce(&rf), rf.clone());
        let gone: Vec<Var> = elim.eliminated().collect();
        prop_assert_eq!(gone.len(), 1);
        prop_assert!(!rf.vars().contains(&gone[0]));
        prop_assert!(elim.reduce(&rel).is_zero());
        prop_assert_eq!(elim.reduce(&(&f * &g)), elim.reduce(&(&rf * &rg)));
        prop_assert_eq!(elim.reduce(&(&f + &g)), &rf + &rg);
        prop_assert_eq!(eliminate_linear(&[rel], &f).unwrap(), rf);
    }

    #[test]
    fn laurent_display_round_trips(p in laurent()) {
        let back: LaurentPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn laurent_unit_ratio_recovers_shifts(p in laurent(), a in -2i32..3, q in -3i32..4, c in 1i64..3) {
        prop_assume!(!p.is_zero());
        let shifted = p.shift(LExp::aq(a, q)).scale(&rat(-c));
        let (k, e) = shifted.unit_ratio(&p).unwrap();
        prop_assert_eq!(k, rat(-c));
        prop_assert_eq!((e.a, e.q), (a, q));
    }

    #[test]
    fn skein_relation_holds_at_every_crossing(w in braid_word(3, 5), pick in 0usize..5) {
        let d = braid_closure(&w, 3).unwrap();
        prop_assume!(!d.crossings().is_empty());
        let i = pick % d.crossings().len();
        prop_assert!(skein_defect(&d, i).unwrap().numerator().is_zero());
    }

    #[test]
    fn homfly_is_a_conjugacy_invariant(w in braid_word(3, 5), r in 0usize..5) {
        prop_assume!(!w.is_empty());
        let mut v = w.clone();
        v.rotate_left(r % w.len());
        let a = homfly(&braid_closure(&w, 3).unwrap(), false).unwrap();
        let b = homfly(&braid_closure(&v, 3).unwrap(), false).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn homfly_survives_markov_stabilization(w in braid_word(3, 4), positive in proptest::bool::ANY) {
        let mut v = w.clone();
        v.push(if positive { 3 } else { -3 });
        let a = homfly(&braid_closure(&w, 3).unwrap(), false).unwrap();
        let b = homfly(&braid_closure(&v, 4).unwrap(), false).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn curvature_adds_under_disjoint_union() {
    let pieces = ["unknot", "T2,3", "T2,5", "T3,4", "4_1"];
    for a in pieces {
        for b in pieces {
            let ma = puncture(&by_name(a).unwrap(), 1).unwrap();
            let mb = puncture(&by_name(b).unwrap(), 1).unwrap();
            let u = disjoint_union(&ma, &mb).unwrap();
            validate_master(&u).unwrap();
            let w = curvature(&u.complex).unwrap();
            assert_eq!(w, u.expected_curvature(), "{a} + {b}");
            let wa = curvature(&ma.complex).unwrap();
            let wb: BTreeSet<Var> = curvature(&mb.complex).unwrap().vars();
            // The second summand's terms are the first's pattern moved to
            // fresh basepoints, so the union has strictly more variables.
            assert!(w.vars().is_superset(&wa.vars()));
            assert_eq!(w.vars().len(), wa.vars().len() + wb.len());
        }
    }
}

#[test]
fn hfk_dimension_is_congruent_to_n() {
    for k in 1..=4 {
        let m = torus_2(k).unwrap();
        for n in 1..=5 {
            let d = hfk_n(&m, n).unwrap().total_dim();
            assert_eq!((d as i64 - n as i64).rem_euclid(2), 0, "T2,{} at n = {n}", 2 * k + 1);
        }
    }
}
