use super::*;
use crate::field::CoefficientField;
use crate::poly::VariableTable;
use alloc::string::ToString;
use alloc::vec;
use num_bigint::BigInt;

fn ring(spec: &[(&str, u32)], rels: &[&str]) -> RingPresentation {
    let r = PolyRing::new(VariableTable::new(spec.iter().copied()).unwrap(), CoefficientField::Rationals)
        .unwrap();
    RingPresentation::parse(&r, rels).unwrap()
}

fn th_ci(f: &str) -> RingPresentation {
    let t2 = "t^2 - z^3";
    let st = alloc::format!("s*t - ({f})");
    ring(
        &[("s", 3), ("t", 3), ("x", 2), ("y", 2), ("z", 2)],
        &["s^2 - x^3", &st, t2],
    )
}

fn polys(r: &RingPresentation, xs: &[&str]) -> Vec<Polynomial> {
    xs.iter().map(|x| r.parse_element(x).unwrap()).collect()
}

#[test]
fn rejects_inhomogeneous_and_constant_relations() {
    let r = PolyRing::new(VariableTable::standard(["x", "y"]).unwrap(), CoefficientField::Rationals).unwrap();
    match RingPresentation::parse(&r, &["x^2 - y"]) {
        Err(AlgebraError::NotHomogeneous { degrees, .. }) => assert_eq!(degrees, vec![1, 2]),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        RingPresentation::parse(&r, &["3"]),
        Err(AlgebraError::ConstantRelation(_))
    ));
}

#[test]
fn components_of_th_ci() {
    let s = th_ci("y^3");
    assert_eq!(component_basis(&s, 0).unwrap().len(), 1);
    assert!(component_basis(&s, 1).unwrap().is_empty());
    let names: Vec<_> = component_basis(&s, 2)
        .unwrap()
        .iter()
        .map(|m| m.display(s.ring().vars()).to_string())
        .collect();
    assert_eq!(names, ["x", "y", "z"]);
}

#[test]
fn hilbert_series_matches_koszul_and_components() {
    let s = th_ci("x*y*z");
    let hs = hilbert_series(&s).unwrap();
    let koszul = HilbertSeries::new(
        IntPoly::one_minus_power(6).mul(&IntPoly::one_minus_power(6)).mul(&IntPoly::one_minus_power(6)),
        vec![3, 3, 2, 2, 2],
    );
    assert!(hs.same_function(&koszul));
    let coeffs = hs.coefficients(20);
    for d in 0..=20u32 {
        assert_eq!(coeffs[d as usize], BigInt::from(component_basis(&s, d).unwrap().len()));
    }
    let w = is_complete_intersection(&s).unwrap();
    assert!(w.is_complete_intersection && w.koszul_identity);
    assert_eq!(krull_dim(&s).unwrap(), 2);
}

#[test]
fn small_rings() {
    let p = ring(&[("x", 1), ("y", 1)], &[]);
    assert_eq!(krull_dim(&p).unwrap(), 2);
    assert!(is_complete_intersection(&p).unwrap().is_complete_intersection);
    assert_eq!(hilbert_series(&p).unwrap().to_string(), "(1) / ((1 - t)^2)");

    let axes = ring(&[("x", 1), ("y", 1)], &["x*y"]);
    assert_eq!(krull_dim(&axes).unwrap(), 1);

    let fat = ring(&[("x", 1), ("y", 1)], &["x^2", "x*y"]);
    assert!(!is_complete_intersection(&fat).unwrap().is_complete_intersection);

    let trunc = ring(&[("x", 1)], &["x^3"]);
    assert_eq!(hilbert_series(&trunc).unwrap().coefficients(4), [1, 1, 1, 0, 0].map(BigInt::from));
}

#[test]
fn lengths() {
    let p = ring(&[("x", 1), ("y", 1)], &[]);
    assert_eq!(quotient_length(&p, &polys(&p, &["x", "y"])).unwrap(), QuotientLength::Finite(1));
    assert_eq!(quotient_length(&p, &polys(&p, &["x"])).unwrap(), QuotientLength::Infinite);
    assert_eq!(multiplicity_via_reduction(&p, &polys(&p, &["x", "y"])).unwrap(), 1);
    assert!(multiplicity_via_reduction(&p, &polys(&p, &["x"])).is_err());

    let s = th_ci("y^3");
    assert_eq!(quotient_length(&s, &polys(&s, &["x", "z"])).unwrap(), QuotientLength::Finite(12));
    for n in 1..=10 {
        let t = ring(&[("x", 1)], &[&alloc::format!("x^{n}")]);
        assert_eq!(quotient_length(&t, &[]).unwrap(), QuotientLength::Finite(n));
    }
}

#[test]
fn surjectivity() {
    let s = th_ci("x*y*z");
    assert!(multiplication_surjective(&s, 2, 2).unwrap().surjective());
    let w = ring(&[("x", 2), ("y", 3)], &[]);
    let c = multiplication_surjective(&w, 2, 4).unwrap();
    assert!(!c.surjective());
    assert_eq!(c.missing.len(), 1);
    assert_eq!(c.missing[0].display(w.ring().vars()).to_string(), "y^2");
    assert!(multiplication_surjective(&w, 0, 1).is_err());
    let line = ring(&[("x", 1)], &[]);
    assert!(multiplication_surjective(&line, 1, 1).unwrap().surjective());
}

#[test]
fn truncations() {
    let s = th_ci("y^3");
    assert!(truncation_power_check(&s, 2, 3).unwrap().holds());
    let line = ring(&[("x", 1)], &[]);
    assert!(truncation_power_check(&line, 1, 5).unwrap().holds());
    let w = ring(&[("x", 2), ("y", 3)], &[]);
    assert_eq!(truncation_power_check(&w, 2, 3).unwrap().first_failure, Some((3, 6)));
    assert!(truncation_power_check(&s, 3, 1).is_err());
}

#[test]
fn module_generation() {
    let s = th_ci("y^3");
    let gens = polys(&s, &["1", "s", "t"]);
    for d in 0..12 {
        assert!(module_span_is_full(&s, 2, &gens, d).unwrap(), "degree {d}");
    }
    let only_one = polys(&s, &["1"]);
    assert!(!module_span_is_full(&s, 2, &only_one, 3).unwrap());
}
