//! Acceptance run: one line per criterion with its verdict, timing and
//! tolerance. All comparisons are exact.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::props::*;
use common::*;
use noulrich_core::checker::*;
use noulrich_core::graded::*;
use noulrich_core::groebner::{ideal_contains, ideal_equal, kernel_of_ring_map};
use noulrich_core::polytope::*;
use noulrich_core::rees::{associated_graded, rees_presentation, relations_hold};
use noulrich_core::*;
use proptest::test_runner::{Config, TestRunner};

const F_MAIN: &str = "y^3 + x^2*z";
const F_CUSP: &str = "y^3";

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn run(id: u32, title: &'static str, budget_s: u64, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let (mut passed, mut detail) = match res {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("{detail}; over time budget");
    }
    Outcome { id, title, passed, detail, elapsed, budget }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn section_cert(s: &RingPresentation) -> SectionRingCertificate {
    let p = |x: &str| s.parse_element(x).unwrap();
    let unit = |a: &str| UnitCertificate {
        numerator: p(a),
        denominator_power: 1,
        inverse_numerator: p(a),
        inverse_power: 2,
    };
    SectionRingCertificate {
        params: vec![p("x"), p("z")],
        unit_certs: vec![unit("s"), unit("t")],
    }
}

fn criterion_1() -> Result<String, String> {
    let mut notes = Vec::new();
    for f in [F_MAIN, F_CUSP] {
        let s = th_ci(f);
        ensure!(e(krull_dim(&s))? == 2, "f = {f}: dimension");
        let ci = e(is_complete_intersection(&s))?;
        ensure!(ci.is_complete_intersection && ci.koszul_identity, "f = {f}: not a complete intersection");
        let hs = e(hilbert_series(&s))?;
        let koszul = HilbertSeries::new(
            (0..3).fold(IntPoly::one(), |acc, _| acc.mul(&IntPoly::one_minus_power(6))),
            vec![3, 3, 2, 2, 2],
        );
        ensure!(hs == koszul, "f = {f}: Hilbert series {hs}");
        ensure!(e(check_gap_condition(&s, 2))?, "f = {f}: gap condition");
        let gens = polys(&s, &["1", "s", "t"]);
        let rep = e(check_surjectivity_condition(&s, 2, 20, Some(&gens)))?;
        ensure!(rep.surjectivity.len() == 19 && rep.surjectivity.iter().all(|(_, ok)| *ok), "f = {f}: surjectivity");
        ensure!(rep.status == SurjectivityStatus::CertifiedForAllJ, "f = {f}: status {:?}", rep.status);
        let sec = e(verify_section_ring_certificate(&s, &section_cert(&s)))?;
        ensure!(sec.passed(), "f = {f}: section-ring certificate");
        let mut cfg = VerdictConfig::new(2);
        cfg.j_max = Some(20);
        cfg.module_gens = Some(gens);
        cfg.section_cert = Some(section_cert(&s));
        let v = e(ulrich_verdict(&s, &cfg))?;
        ensure!(v.conclusion == Conclusion::NoUlrichModules, "f = {f}: verdict {:?}", v.conclusion);
        ensure!(v.assumed().is_empty(), "f = {f}: assumed {:?}", v.assumed());
        notes.push(format!("f = {f}: HS = {hs}, verdict NoUlrichModules, verified {:?}", v.verified()));
    }
    Ok(notes.join("; "))
}

fn criterion_2() -> Result<String, String> {
    let mut got = Vec::new();
    for (n, expected) in [(2usize, 12u64), (3, 216)] {
        let s = family(n);
        let params: Vec<String> = (1..=n).map(|i| format!("x{i}{i}")).collect();
        let params: Vec<&str> = params.iter().map(String::as_str).collect();
        let m = e(multiplicity_via_reduction(&s, &polys(&s, &params)))?;
        let formula = 2u64.pow(n as u32) * 3u64.pow((n * (n - 1) / 2) as u32);
        ensure!(m == expected && m == formula, "n = {n}: length {m}, expected {expected}");
        got.push(format!("n = {n}: {m}"));
    }
    Ok(got.join(", "))
}

/// `sum_d dim (k[x]/(gens))_d` by Macaulay matrices, stopping after a run of
/// zero components as long as the largest weight.
fn oracle_length(ring: &std::sync::Arc<PolyRing>, gens: &[Polynomial]) -> usize {
    let maxw = *ring.weights().iter().max().unwrap();
    let (mut total, mut zeros, mut d) = (0, 0, 0);
    while zeros < maxw {
        let dim = macaulay_dimension(ring, gens, d);
        total += dim;
        zeros = if dim == 0 { zeros + 1 } else { 0 };
        d += 1;
    }
    total
}

fn criterion_3() -> Result<String, String> {
    let expected_basis = ["1", "s", "t", "y", "y*s", "y*t", "y^2", "y^2*s", "y^2*t", "y^3", "y^4", "y^5"];
    let mut notes = Vec::new();
    for f in [F_MAIN, F_CUSP] {
        let s = th_ci(f);
        let extra = polys(&s, &["x", "z"]);
        let len = e(quotient_length(&s, &extra))?;
        let mut all: Vec<Polynomial> = s.relations().to_vec();
        all.extend(extra.iter().cloned());
        let oracle = oracle_length(s.ring(), &all);
        ensure!(len == QuotientLength::Finite(12) && oracle == 12, "f = {f}: length {len}, oracle {oracle}");
        let q = e(quotient_by(&s, &extra))?;
        let basis = e(q.initial_ideal())?.standard_monomials().unwrap();
        let mut shown: Vec<Polynomial> = basis
            .iter()
            .map(|m| Polynomial::monomial(s.ring(), m.clone(), one()))
            .collect();
        let mut want = polys(&s, &expected_basis);
        shown.sort_by_key(|p| p.to_string());
        want.sort_by_key(|p| p.to_string());
        ensure!(shown == want, "f = {f}: residue basis differs");
        notes.push(format!("f = {f}: 12 (oracle 12)"));
    }
    Ok(notes.join(", "))
}

fn criterion_4() -> Result<String, String> {
    let r = ring_of(&[("x", 1), ("y", 1), ("z", 1)], CoefficientField::Rationals);
    for f in ["x^4*z^2 - x^3*z^3 - 2*x^2*z + 1", "x^4*z^2 - x^3*z^3 + 2*x^2*z + 1"] {
        let p = e(parse_polynomial(f, &r))?;
        let np = e(newton_polygon(&p, (0, 2)))?;
        let mut vs = np.vertices().to_vec();
        vs.sort_unstable();
        ensure!(vs == [(0, 0), (3, 3), (4, 2)], "{f}: vertices {vs:?}");
        match integrally_indecomposable(&np) {
            Decomposability::Indecomposable(c) => ensure!(
                c.path == IndecomposabilityPath::GcdCriterion && c.gcd == Some(1),
                "{f}: certificate {c:?}"
            ),
            other => return Err(format!("{f}: {other:?}")),
        }
        ensure!(e(irreducibility_verdict(&p, (0, 2)))?.is_irreducible(), "{f}: not certified");
    }
    Ok("both sign variants: triangle (0,0),(4,2),(3,3), gcd 1, irreducible".into())
}

fn criterion_5() -> Result<String, String> {
    let src = ring_of(&TH_CI_VARS, CoefficientField::Rationals);
    let tgt = ring_of(&[("u", 1), ("v", 1)], CoefficientField::Rationals);
    let mut images = BTreeMap::new();
    for (k, v) in [("s", "u^3"), ("t", "v^3"), ("x", "u^2"), ("y", "u*v"), ("z", "v^2")] {
        images.insert(k.to_string(), e(parse_polynomial(v, &tgt))?);
    }
    let budget = Budget::default();
    let kernel = e(kernel_of_ring_map(&src, &tgt, &images, &budget))?;
    let p_gens = ["s^2 - x^3", "s*t - x*y*z", "z^3 - t^2", "y^2 - x*z", "s*z^2 - x*y*t", "y*z*s - x^2*t"];
    let prime = e(IdealPresentation::new(
        &src,
        p_gens.iter().map(|g| parse_polynomial(g, &src).unwrap()),
    ))?;
    ensure!(e(ideal_equal(&kernel, &prime, &budget))?, "kernel differs from the six-generator ideal");
    let i = th_ci(F_CUSP).ideal();
    ensure!(e(ideal_contains(&prime, &i, &budget))?, "relations not contained in the kernel");
    Ok(format!("kernel has {} generators and equals the given ideal; relations contained", kernel.generators().len()))
}

fn criterion_6() -> Result<String, String> {
    let g3 = IntPoly::from_i64(&[1, -2, 4, -2, 1]);
    let g1 = IntPoly::from_i64(&[1, -2, 2, -2, 1]);
    let v3 = e(cyclotomic_product_test(&g3))?;
    ensure!(!v3.is_product(), "{g3}: {v3:?}");
    let v1 = e(cyclotomic_product_test(&g1))?;
    ensure!(
        v1 == CyclotomicVerdict::Product { sign: 1, factors: vec![(1, 2), (4, 1)] },
        "{g1}: {v1:?}"
    );
    Ok(format!("{g3}: not a product; {g1} = Phi_1^2*Phi_4"))
}

fn criterion_7() -> Result<String, String> {
    let w = presentation(&[("x", 2), ("y", 3)], &[]);
    let c = e(multiplication_surjective(&w, 2, 4))?;
    let missing: Vec<String> = c.missing.iter().map(|m| m.display(w.ring().vars()).to_string()).collect();
    ensure!(!c.surjective() && missing == ["y^2"], "rank {} of {}, missing {missing:?}", c.rank, c.target_dim);
    let v = e(ulrich_verdict(&w, &VerdictConfig::new(2)))?;
    ensure!(v.conclusion == Conclusion::Inconclusive, "verdict {:?}", v.conclusion);
    Ok("S_2*S_4 misses y^2; verdict Inconclusive".into())
}

fn suite<S, F>(name: &str, cases: u32, strategy: S, check: F) -> Result<String, String>
where
    S: proptest::strategy::Strategy,
    F: Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
{
    let mut runner = TestRunner::new(Config::with_cases(cases));
    runner.run(&strategy, check).map_err(|err| format!("{name}: {err}"))?;
    Ok(format!("{name} x{cases}"))
}

fn criterion_8() -> Result<String, String> {
    const CASES: u32 = 256;
    let done = [
        suite("buchberger-criterion", CASES, ideal_strategy(), buchberger_criterion_holds)?,
        suite("hilbert-vs-components", CASES, hilbert_strategy(), hilbert_matches_components)?,
        suite("gcd-vs-search", CASES, triangle_strategy(), gcd_never_contradicted)?,
        suite("normal-form-idempotence", CASES, (ideal_strategy(), terms(3, 4, 6)), normal_form_idempotent)?,
        suite("parser-round-trip", CASES, (field_strategy(), terms(3, 5, 6)), parser_round_trip)?,
    ];
    Ok(done.join(", "))
}

fn criterion_9() -> Result<String, String> {
    let plane = presentation(&[("x", 1), ("y", 1)], &[]);
    let rees = e(rees_presentation(&plane, &polys(&plane, &["x", "y"])))?;
    let want = e(parse_polynomial("x*T2 - y*T1", rees.result.ring()))?;
    ensure!(
        rees.result.relations().len() == 1 && rees.result.relations()[0].monic() == want.monic(),
        "Rees relations {:?}",
        rees.result.relations().iter().map(|r| r.to_string()).collect::<Vec<_>>()
    );
    ensure!(e(rees.relations_vanish())?, "Rees relations do not vanish");

    let cusp = presentation(&[("x", 2), ("y", 3)], &["y^2 - x^3"]);
    let gr = e(associated_graded(&cusp, &polys(&cusp, &["x", "y"])))?;
    let double_line = e(IdealPresentation::new(gr.ring.ring(), [e(parse_polynomial("y^2", gr.ring.ring()))?]))?;
    ensure!(e(ideal_equal(&gr.ring.ideal(), &double_line, &Budget::default()))?, "gr of the cusp");

    for f in [F_MAIN, F_CUSP] {
        let s = th_ci(f);
        let gr = e(associated_graded(&s, &polys(&s, &["s", "t", "x", "y", "z"])))?;
        let f2 = format!("x^3*z^3 - ({f})^2");
        let listed = polys(&s, &["s^2", "s*t", "t^2", &f2]);
        let hold = e(relations_hold(&gr.ring, &listed))?;
        ensure!(hold.iter().all(|h| *h), "f = {f}: gr relations {hold:?}");
    }
    Ok("Rees of (x,y): x*T2 - y*T1; gr of cusp = k[x,y]/(y^2); gr of both rings kills s^2, st, t^2, x^3z^3 - f^2".into())
}

#[test]
fn acceptance() {
    let outcomes = vec![
        run(1, "complete-intersection rings: invariants and verdict", 60, criterion_1),
        run(2, "multiplicity family n = 2, 3", 120, criterion_2),
        run(3, "reduction length of S modulo (x, z)", 60, criterion_3),
        run(4, "Newton polygon irreducibility certificate", 1, criterion_4),
        run(5, "kernel of the monomial parametrization", 30, criterion_5),
        run(6, "cyclotomic numerators", 1, criterion_6),
        run(7, "weighted plane negative control", 60, criterion_7),
        run(8, "property suites", 600, criterion_8),
        run(9, "Rees algebra and associated graded sanity", 60, criterion_9),
    ];
    println!();
    for o in &outcomes {
        println!(
            "criterion {} {}: {} [{:.2?} of {}s budget, tolerance: exact] {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.title,
            o.elapsed,
            o.budget.as_secs(),
            o.detail
        );
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
