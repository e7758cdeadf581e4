//! Property bodies shared by the property suite and the acceptance run.

use std::sync::Arc;

use noulrich_core::graded::{component_basis, hilbert_series};
use noulrich_core::groebner::{buchberger, is_reduced, satisfies_buchberger_criterion};
use noulrich_core::polytope::{brute_force_decompose, integrally_indecomposable, Decomposability, LatticePolygon, Point};
use noulrich_core::*;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{macaulay_dimension, ring_of};

pub type Terms = Vec<(Vec<u32>, i64)>;

pub fn field_strategy() -> impl Strategy<Value = CoefficientField> {
    prop_oneof![
        Just(CoefficientField::Rationals),
        Just(CoefficientField::PrimeField(7)),
        Just(CoefficientField::PrimeField(32003)),
    ]
}

pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -5i64..=5), 1..=max_terms)
}

/// Up to three generators; rational coefficients grow fast, so those get
/// lower exponents.
pub fn ideal_strategy() -> impl Strategy<Value = (CoefficientField, Vec<Terms>)> {
    field_strategy().prop_flat_map(|f| {
        let e = if f == CoefficientField::Rationals { 2 } else { 3 };
        (Just(f), prop::collection::vec(terms(3, e, 4), 1..=3))
    })
}

pub type HilbertCase = (Vec<u32>, Vec<(u32, Vec<i64>)>);

/// Weights for up to three variables and up to three homogeneous generators,
/// each a degree and coefficients for that degree's monomials.
pub fn hilbert_strategy() -> impl Strategy<Value = HilbertCase> {
    (
        prop::collection::vec(1u32..=2, 1..=3),
        prop::collection::vec((1u32..=4, prop::collection::vec(-3i64..=3, 1..=12)), 0..=3),
    )
}

pub fn triangle_strategy() -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec((0i64..=5, 0i64..=5), 3)
}

pub type SumCase = (Vec<Point>, Vec<Point>, Point);

pub fn sum_strategy() -> impl Strategy<Value = SumCase> {
    (
        prop::collection::vec((0i64..=3, 0i64..=3), 1..=4),
        prop::collection::vec((0i64..=3, 0i64..=3), 1..=4),
        (-4i64..=4, -4i64..=4),
    )
}

pub fn build(ring: &Arc<PolyRing>, ts: &Terms) -> Polynomial {
    let f = ring.field();
    Polynomial::from_terms(ring, ts.iter().map(|(e, c)| (Monomial::new(e.clone()), f.from_int(*c))))
}

fn xyz(field: CoefficientField) -> Arc<PolyRing> {
    ring_of(&[("x", 1), ("y", 1), ("z", 1)], field)
}

fn ideal_of(field: CoefficientField, gens: &[Terms]) -> (Arc<PolyRing>, IdealPresentation) {
    let r = xyz(field);
    let ideal = IdealPresentation::new(&r, gens.iter().map(|t| build(&r, t))).unwrap();
    (r, ideal)
}

pub fn buchberger_criterion_holds((field, gens): (CoefficientField, Vec<Terms>)) -> Result<(), TestCaseError> {
    let (r, ideal) = ideal_of(field, &gens);
    let gb = buchberger(&ideal, r.order(), &Budget::default()).unwrap();
    prop_assert!(satisfies_buchberger_criterion(&gb));
    prop_assert!(is_reduced(&gb));
    for g in ideal.generators() {
        prop_assert!(gb.contains(g).unwrap());
    }
    Ok(())
}

pub fn normal_form_idempotent(
    ((field, gens), p): ((CoefficientField, Vec<Terms>), Terms),
) -> Result<(), TestCaseError> {
    let (r, ideal) = ideal_of(field, &gens);
    let gb = buchberger(&ideal, r.order(), &Budget::default()).unwrap();
    let p = build(&r, &p);
    let nf = gb.normal_form(&p).unwrap();
    prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
    prop_assert!(gb.contains(&(&p - &nf)).unwrap());
    Ok(())
}

pub fn parser_round_trip((field, p): (CoefficientField, Terms)) -> Result<(), TestCaseError> {
    let r = xyz(field);
    let p = build(&r, &p);
    prop_assert_eq!(parse_polynomial(&p.to_string(), &r).unwrap(), p);
    Ok(())
}

pub fn hilbert_matches_components((weights, raw): HilbertCase) -> Result<(), TestCaseError> {
    let spec: Vec<(&str, u32)> = ["x", "y", "z"].into_iter().zip(weights.iter().copied()).collect();
    let r = ring_of(&spec, CoefficientField::Rationals);
    let gens: Vec<Polynomial> = raw
        .iter()
        .map(|(d, cs)| {
            let ms = r.monomials_of_degree(*d);
            Polynomial::from_terms(&r, ms.into_iter().zip(cs.iter()).map(|(m, c)| (m, r.field().from_int(*c))))
        })
        .filter(|p| !p.is_zero())
        .collect();
    let s = RingPresentation::new(&r, gens.clone()).unwrap();
    let coeffs = hilbert_series(&s).unwrap().coefficients(12);
    for d in 0..=12u32 {
        let count = component_basis(&s, d).unwrap().len();
        prop_assert_eq!(coeffs[d as usize].clone(), count.into());
        if d <= 8 {
            prop_assert_eq!(count, macaulay_dimension(&r, &gens, d));
        }
    }
    Ok(())
}

/// The gcd test is sufficient for indecomposability, so the search must
/// never find a decomposition of a polygon it certified.
pub fn gcd_never_contradicted(pts: Vec<Point>) -> Result<(), TestCaseError> {
    let t = LatticePolygon::from_points(pts).unwrap();
    if let Decomposability::Indecomposable(_) = integrally_indecomposable(&t) {
        prop_assert_eq!(brute_force_decompose(&t, 5).unwrap(), None);
    }
    Ok(())
}

fn kind(d: &Decomposability) -> u8 {
    match d {
        Decomposability::Indecomposable(_) => 0,
        Decomposability::Decomposable(..) => 1,
        Decomposability::Unknown(_) => 2,
    }
}

pub fn decompositions_sum_back((a, b, shift): SumCase) -> Result<(), TestCaseError> {
    let pa = LatticePolygon::from_points(a).unwrap();
    let pb = LatticePolygon::from_points(b).unwrap();
    let sum = pa.minkowski_sum(&pb);
    match brute_force_decompose(&sum, 12).unwrap() {
        Some((x, y)) => {
            let back = x.minkowski_sum(&y);
            prop_assert_eq!(back.vertices(), sum.vertices());
        }
        None => prop_assert!(pa.is_point() || pb.is_point()),
    }
    let moved = sum.translate(shift);
    prop_assert_eq!(kind(&integrally_indecomposable(&sum)), kind(&integrally_indecomposable(&moved)));
    Ok(())
}
