mod common;

use common::*;
use noulrich_core::checker::*;
use noulrich_core::graded::{component_basis, hilbert_series};
use noulrich_core::rees::{associated_graded, rees_presentation};
use noulrich_core::*;

const CERT_TEXT: [&str; 6] = ["x", "z", "s", "s", "t", "t"];

fn cert_from(s: &RingPresentation, texts: &[String]) -> Result<SectionRingCertificate, AlgebraError> {
    let p = |i: usize| s.parse_element(&texts[i]);
    Ok(SectionRingCertificate {
        params: vec![p(0)?, p(1)?],
        unit_certs: vec![
            UnitCertificate { numerator: p(2)?, denominator_power: 1, inverse_numerator: p(3)?, inverse_power: 2 },
            UnitCertificate { numerator: p(4)?, denominator_power: 1, inverse_numerator: p(5)?, inverse_power: 2 },
        ],
    })
}

#[test]
fn corrupting_a_certificate_byte_breaks_it() {
    let s = th_ci("y^3 + x^2*z");
    let good: Vec<String> = CERT_TEXT.iter().map(|t| t.to_string()).collect();
    assert!(verify_section_ring_certificate(&s, &cert_from(&s, &good).unwrap()).unwrap().passed());
    let mut mutations = 0;
    for field in 0..good.len() {
        for pos in 0..good[field].len() {
            for b in b"0123xyzst+-*^() ".iter() {
                let mut bytes = good[field].clone().into_bytes();
                if bytes[pos] == *b {
                    continue;
                }
                bytes[pos] = *b;
                let mut texts = good.clone();
                texts[field] = String::from_utf8(bytes).unwrap();
                mutations += 1;
                if let Ok(c) = cert_from(&s, &texts) {
                    let rep = verify_section_ring_certificate(&s, &c).unwrap();
                    assert!(!rep.passed(), "mutation {texts:?} still passes");
                }
            }
        }
    }
    assert!(mutations > 50);
}

fn full_config(s: &RingPresentation) -> VerdictConfig {
    let mut cfg = VerdictConfig::new(2);
    cfg.module_gens = Some(polys(s, &["1", "s", "t"]));
    let good: Vec<String> = CERT_TEXT.iter().map(|t| t.to_string()).collect();
    cfg.section_cert = Some(cert_from(s, &good).unwrap());
    cfg
}

#[test]
fn verdicts_are_deterministic() {
    let s = th_ci("y^3");
    let a = format!("{:?}", ulrich_verdict(&s, &full_config(&s)).unwrap());
    let b = format!("{:?}", ulrich_verdict(&th_ci("y^3"), &full_config(&s)).unwrap());
    assert_eq!(a, b);
}

#[test]
fn no_ulrich_verdict_is_never_empty_or_low_dimensional() {
    let rings = [
        presentation(&[("x", 1), ("y", 1)], &[]),
        presentation(&[("x", 2), ("y", 3)], &[]),
        presentation(&[("x", 2), ("y", 2)], &["x*y"]),
        presentation(&[("x", 2)], &[]),
        presentation(&[("x", 2), ("y", 3), ("z", 3)], &["y*z - x^3"]),
        th_ci("y^3"),
    ];
    for s in &rings {
        for ack in [false, true] {
            let mut cfg = VerdictConfig::new(2);
            cfg.acknowledge_assumptions = ack;
            cfg.j_max = Some(6);
            let v = ulrich_verdict(s, &cfg).unwrap();
            if v.conclusion == Conclusion::NoUlrichModules {
                assert!(!v.verified().is_empty() && v.dimension >= 2);
                assert!(ack || v.assumed().is_empty());
            }
        }
    }
}

#[test]
fn surjectivity_reports_are_prefix_monotone() {
    for s in [th_ci("y^3 + x^2*z"), presentation(&[("x", 2), ("y", 3)], &[])] {
        let long = check_surjectivity_condition(&s, 2, 10, None).unwrap();
        for j in 2..10 {
            let short = check_surjectivity_condition(&s, 2, j, None).unwrap();
            assert_eq!(short.surjectivity[..], long.surjectivity[..short.surjectivity.len()]);
        }
    }
}

#[test]
fn gr_preserves_hilbert_series_of_standard_graded_rings() {
    for (spec, rels) in [
        (&[("x", 1), ("y", 1)][..], &[][..]),
        (&[("x", 1), ("y", 1), ("z", 1)][..], &["x*z - y^2"][..]),
        (&[("x", 1), ("y", 1), ("z", 1)][..], &["x^2", "y*z"][..]),
    ] {
        let s = presentation(spec, rels);
        let names: Vec<&str> = spec.iter().map(|v| v.0).collect();
        let gr = associated_graded(&s, &polys(&s, &names)).unwrap();
        assert_eq!(hilbert_series(&gr.ring).unwrap(), hilbert_series(&s).unwrap());
        assert_eq!(gr.agrees_with_base, Some(true));
    }
}

#[test]
fn rees_relations_vanish() {
    let cases: [(&[(&str, u32)], &[&str], &[&str]); 4] = [
        (&[("x", 1), ("y", 1)], &[], &["x^2", "x*y", "y^2"]),
        (&[("x", 2), ("y", 3)], &["y^2 - x^3"], &["x", "y"]),
        (&[("x", 1), ("y", 1), ("z", 1)], &["x*z - y^2"], &["x", "y"]),
        (&TH_CI_VARS, &["s^2 - x^3", "s*t - y^3", "t^2 - z^3"], &["x", "z"]),
    ];
    for (spec, rels, gens) in cases {
        let s = presentation(spec, rels);
        let rees = rees_presentation(&s, &polys(&s, gens)).unwrap();
        assert!(rees.relations_vanish().unwrap());
    }
}

#[test]
fn component_examples() {
    let s = th_ci("y^3 + x^2*z");
    assert_eq!(component_basis(&s, 0).unwrap(), vec![mono(&[0, 0, 0, 0, 0])]);
    assert!(component_basis(&s, 1).unwrap().is_empty());
    assert_eq!(component_basis(&s, 2).unwrap().len(), 3);
    assert!(check_gap_condition(&s, 2).unwrap());
    assert!(!check_gap_condition(&s, 3).unwrap());
}
