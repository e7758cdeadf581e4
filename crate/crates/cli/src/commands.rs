//! One function per subcommand. Each returns its results tree and whether the
//! check it performs passed; errors become exit code 2 upstream.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use noulrich_core::checker::{
    check_surjectivity_condition, default_j_max, ulrich_verdict, verify_section_ring_certificate, Conclusion,
    HypothesisStatus, ModuleGenerationCertificate, SectionRingReport, SurjectivityStatus, VerdictConfig,
};
use noulrich_core::graded::{
    cyclotomic_polynomial, cyclotomic_product_test, hilbert_series, is_complete_intersection, krull_dim,
    multiplication_surjective, multiplicity_via_reduction, quotient_length, truncation_power_check,
    CyclotomicVerdict, QuotientLength,
};
use noulrich_core::groebner::{ideal_contains, ideal_equal, kernel_of_ring_map};
use noulrich_core::polytope::{Decomposability, IndecomposabilityCertificate, IrreducibilityVerdict};
use noulrich_core::rees::{associated_graded, rees_presentation, relations_hold};
use noulrich_core::{
    parse_polynomial, Budget, CoefficientField, HilbertSeries, IdealPresentation, IntPoly, PolyRing, Polynomial,
    RingPresentation, VariableTable,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{self, Loaded};

pub struct Outcome {
    pub results: Value,
    pub passed: bool,
    /// Bytes of every file read, for the report digest.
    pub inputs: Vec<Vec<u8>>,
}

impl Outcome {
    fn new(results: Value, passed: bool, inputs: Vec<Vec<u8>>) -> Self {
        Outcome { results, passed, inputs }
    }
}

/// Budget from `NOULRICH_MAX_STEPS` / `NOULRICH_MAX_BASIS`, else the default.
pub fn budget_from_env() -> Result<Budget, CliError> {
    let mut b = Budget::default();
    let read = |name: &str| -> Result<Option<u64>, CliError> {
        match std::env::var(name) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("{name} must be a non-negative integer, got `{v}`"))),
            Err(_) => Ok(None),
        }
    };
    if let Some(s) = read("NOULRICH_MAX_STEPS")? {
        b.max_steps = s;
    }
    if let Some(n) = read("NOULRICH_MAX_BASIS")? {
        b.max_basis = usize::try_from(n).unwrap_or(usize::MAX);
    }
    Ok(b)
}

fn load(path: &Path, budget: Budget) -> Result<(Loaded, Vec<u8>), CliError> {
    let text = format::read_text(path)?;
    let mut loaded = format::parse_presentation(path, &text)?;
    loaded.presentation = loaded.presentation.with_budget(budget);
    Ok((loaded, text.into_bytes()))
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// Comma-separated polynomials in the presentation's ring.
fn parse_list(ring: &RingPresentation, list: &str) -> Result<Vec<Polynomial>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| ring.parse_element(s).map_err(CliError::from))
        .collect()
}

fn big(v: impl ToString) -> Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(n) => json!(n),
        Err(_) => json!(s),
    }
}

fn series_json(h: &HilbertSeries) -> Value {
    json!({
        "series": h.to_string(),
        "numerator": h.numerator.coeffs().iter().map(big).collect::<Vec<_>>(),
        "denominator_weights": h.denominator_weights,
    })
}

pub fn hilbert(path: &Path, terms: usize, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let h = hilbert_series(&l.presentation)?;
    let mut r = series_json(&h);
    r["coefficients"] = json!(h.coefficients(terms).iter().map(big).collect::<Vec<_>>());
    Ok(Outcome::new(r, true, vec![bytes]))
}

pub fn dim(path: &Path, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let d = krull_dim(&l.presentation)?;
    Ok(Outcome::new(json!({ "dimension": d }), true, vec![bytes]))
}

pub fn ci_check(path: &Path, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let w = is_complete_intersection(&l.presentation)?;
    let r = json!({
        "complete_intersection": w.is_complete_intersection,
        "nvars": w.nvars,
        "dimension": w.dimension,
        "relation_count": w.relation_count,
        "relation_degrees": w.relation_degrees,
        "hilbert": w.hilbert.to_string(),
        "koszul": w.koszul.to_string(),
        "koszul_identity": w.koszul_identity,
    });
    Ok(Outcome::new(r, w.is_complete_intersection, vec![bytes]))
}

fn params_or(l: &Loaded, list: Option<&str>, what: &str) -> Result<Vec<Polynomial>, CliError> {
    match list {
        Some(s) => parse_list(&l.presentation, s),
        None if !l.params.is_empty() => Ok(l.params.clone()),
        None => Err(CliError::Usage(format!("no {what} given and the file declares no `params`"))),
    }
}

pub fn length(path: &Path, by: Option<&str>, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let extra = params_or(&l, by, "ideal")?;
    let len = quotient_length(&l.presentation, &extra)?;
    let value = match len {
        QuotientLength::Finite(n) => json!(n),
        QuotientLength::Infinite => json!("infinite"),
    };
    Ok(Outcome::new(json!({ "ideal": strings(&extra), "length": value }), true, vec![bytes]))
}

pub fn multiplicity(path: &Path, params: Option<&str>, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let ps = params_or(&l, params, "parameters")?;
    let m = multiplicity_via_reduction(&l.presentation, &ps)?;
    Ok(Outcome::new(json!({ "params": strings(&ps), "multiplicity": m }), true, vec![bytes]))
}

fn module_cert_json(c: &ModuleGenerationCertificate) -> Value {
    json!({
        "valid": c.valid(),
        "generators": c.generators,
        "generator_degrees": c.generator_degrees,
        "contains_one": c.contains_one,
        "closure_failures": c.closure_failures.iter().map(|(v, g)| format!("{v}*({g})")).collect::<Vec<_>>(),
        "span_checked_up_to": c.span_checked_up_to,
        "span_failures": c.span_failures,
        "covers_from": c.covers_from,
    })
}

fn status_text(s: SurjectivityStatus) -> String {
    match s {
        SurjectivityStatus::CertifiedForAllJ => "certified for all j".into(),
        SurjectivityStatus::VerifiedUpTo(j) => format!("verified up to j = {j}"),
        SurjectivityStatus::Failed(j) => format!("failed at j = {j}"),
    }
}

pub fn surjectivity(
    path: &Path,
    a: u32,
    j: Option<u32>,
    jmax: Option<u32>,
    budget: Budget,
) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let s = &l.presentation;
    if let Some(j) = j {
        let c = multiplication_surjective(s, a, j)?;
        let missing: Vec<String> = c.missing.iter().map(|m| m.display(s.ring().vars()).to_string()).collect();
        let r = json!({
            "a": c.a,
            "j": c.j,
            "target_dim": c.target_dim,
            "rank": c.rank,
            "surjective": c.surjective(),
            "missing": missing,
        });
        return Ok(Outcome::new(r, c.surjective(), vec![bytes]));
    }
    let jmax = jmax.unwrap_or_else(|| default_j_max(s, a));
    let gens = l.module_gens();
    let rep = check_surjectivity_condition(s, a, jmax, gens.as_deref())?;
    let passed = rep.gap_ok && !matches!(rep.status, SurjectivityStatus::Failed(_));
    let r = json!({
        "a": rep.a,
        "j_max": rep.j_max,
        "gap_ok": rep.gap_ok,
        "checked": rep.surjectivity.iter().map(|(j, ok)| json!({"j": j, "surjective": ok})).collect::<Vec<_>>(),
        "status": status_text(rep.status),
        "stability": rep.stability.as_ref().map(module_cert_json),
    });
    Ok(Outcome::new(r, passed, vec![bytes]))
}

pub fn truncation(path: &Path, a: u32, jmax: u32, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let t = truncation_power_check(&l.presentation, a, jmax)?;
    let r = json!({
        "a": t.a,
        "j_max": t.j_max,
        "holds": t.holds(),
        "checked": t.checked.len(),
        "first_failure": t.first_failure.map(|(j, d)| json!({"j": j, "degree": d})),
    });
    Ok(Outcome::new(r, t.holds(), vec![bytes]))
}

fn section_json(r: &SectionRingReport) -> Value {
    json!({
        "passed": r.passed(),
        "params_ok": r.params_ok,
        "count_ok": r.count_ok,
        "radical": r.radical.iter().map(|(v, ok)| json!({"variable": v, "in_radical": ok})).collect::<Vec<_>>(),
        "units": r.units.iter().map(|u| json!({
            "param": u.param,
            "homogeneous": u.homogeneous,
            "degree_ok": u.degree_ok,
            "identity_ok": u.identity_ok,
        })).collect::<Vec<_>>(),
    })
}

pub fn section_cert(path: &Path, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let cert = l
        .section_certificate()
        .ok_or_else(|| CliError::Usage("the file carries no `params` / `unit` certificate".into()))?;
    let rep = verify_section_ring_certificate(&l.presentation, &cert)?;
    Ok(Outcome::new(section_json(&rep), rep.passed(), vec![bytes]))
}

fn identifiers(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i + c.len_utf8();
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            let name = &text[i..end];
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        } else if c.is_ascii_digit() {
            while chars.peek().is_some_and(|&(_, d)| d.is_ascii_alphanumeric() || d == '_') {
                chars.next();
            }
        }
    }
    out
}

fn standard_ring(names: &[String]) -> Result<Arc<PolyRing>, CliError> {
    let vars = VariableTable::standard(names.iter().cloned())?;
    Ok(PolyRing::new(vars, CoefficientField::Rationals)?)
}

fn certificate_json(c: &IndecomposabilityCertificate) -> Value {
    json!({
        "path": format!("{:?}", c.path),
        "edge_vectors": c.edge_vectors.iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>(),
        "gcd": c.gcd,
    })
}

pub fn newton(poly: &str, vars: &str, set: &[String]) -> Result<Outcome, CliError> {
    let pair: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if pair.len() != 2 {
        return Err(CliError::Usage(format!("--vars needs two names, got `{vars}`")));
    }
    let mut names = identifiers(poly);
    for p in &pair {
        if !names.iter().any(|n| n == p) {
            names.push(p.to_string());
        }
    }
    let ring = standard_ring(&names)?;
    let p = parse_polynomial(poly, &ring)?;
    let mut assignment = BTreeMap::new();
    for s in set {
        let (k, v) = s
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects `name=value`, got `{s}`")))?;
        let k = k.trim().to_string();
        if pair.contains(&k.as_str()) {
            return Err(CliError::Usage(format!("cannot --set the polygon variable `{k}`")));
        }
        assignment.insert(k, v.trim().to_string());
    }
    let kept: Vec<String> = names.iter().filter(|n| !assignment.contains_key(*n)).cloned().collect();
    let target = standard_ring(&kept)?;
    let mut images = BTreeMap::new();
    for (k, v) in &assignment {
        if ring.vars().index_of(k).is_none() {
            return Err(CliError::Usage(format!("--set names `{k}`, which does not occur")));
        }
        images.insert(k.clone(), parse_polynomial(v, &target)?);
    }
    let q = p.substitute(&images, &target)?;
    let idx = |n: &str| target.vars().index_of(n).unwrap();
    let verdict = noulrich_core::polytope::irreducibility_verdict(&q, (idx(pair[0]), idx(pair[1])))?;
    let (polygon, mut r) = match &verdict {
        IrreducibilityVerdict::Irreducible { polygon, certificate, .. } => (
            polygon,
            json!({ "irreducible": true, "certificate": certificate_json(certificate) }),
        ),
        IrreducibilityVerdict::Unknown { polygon, reason, .. } => {
            let mut r = json!({ "irreducible": false, "reason": reason });
            if let Decomposability::Decomposable(a, b) = noulrich_core::polytope::integrally_indecomposable(polygon) {
                r["summands"] = json!([a.vertices(), b.vertices()]);
            }
            (polygon, r)
        }
    };
    let content = verdict.content();
    r["polynomial"] = json!(q.to_string());
    r["vars"] = json!(pair);
    r["content"] = json!([content.0, content.1]);
    r["vertices"] = json!(polygon.vertices().iter().map(|p| json!([p.0, p.1])).collect::<Vec<_>>());
    r["support_size"] = json!(polygon.points().len());
    Ok(Outcome::new(r, verdict.is_irreducible(), Vec::new()))
}

pub fn kernel_verify(path: &Path, budget: Budget) -> Result<Outcome, CliError> {
    let text = format::read_text(path)?;
    let map = format::parse_map(path, &text)?;
    let kernel = kernel_of_ring_map(&map.source, &map.target, &map.images, &budget)?;
    let mut passed = true;
    let mut r = json!({
        "source": map.source.vars().iter().map(|v| v.name.clone()).collect::<Vec<_>>(),
        "target": map.target.vars().iter().map(|v| v.name.clone()).collect::<Vec<_>>(),
        "kernel": strings(kernel.generators()),
    });
    if !map.expect.is_empty() {
        let expected = IdealPresentation::new(&map.source, map.expect.iter().cloned())?;
        let eq = ideal_equal(&kernel, &expected, &budget)?;
        passed &= eq;
        r["equals_expected"] = json!(eq);
    }
    if !map.contains.is_empty() {
        let inner = IdealPresentation::new(&map.source, map.contains.iter().cloned())?;
        let c = ideal_contains(&kernel, &inner, &budget)?;
        passed &= c;
        r["contains_listed"] = json!(c);
    }
    Ok(Outcome::new(r, passed, vec![text.into_bytes()]))
}

fn int_poly(text: &str, var: &str) -> Result<IntPoly, CliError> {
    let names = identifiers(text);
    if let Some(other) = names.iter().find(|n| *n != var) {
        return Err(CliError::Usage(format!(
            "`{other}` is not the series variable `{var}` (use --var)"
        )));
    }
    let ring = standard_ring(&[var.to_string()])?;
    let p = parse_polynomial(text, &ring)?;
    let mut coeffs = Vec::new();
    for t in p.terms() {
        if !t.coeff.is_integer() {
            return Err(CliError::Usage(format!("coefficient {} is not an integer", t.coeff)));
        }
        let k = t.monomial.exponent(0) as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, None);
        }
        coeffs[k] = Some(t.coeff.numer().clone());
    }
    Ok(IntPoly::new(coeffs.into_iter().map(Option::unwrap_or_default).collect()))
}

pub fn cyclotomic(poly: &str, var: &str) -> Result<Outcome, CliError> {
    let p = int_poly(poly, var)?;
    let v = cyclotomic_product_test(&p)?;
    let factors = |fs: &[(u64, u32)]| {
        fs.iter()
            .map(|(n, m)| json!({"n": n, "multiplicity": m, "phi": cyclotomic_polynomial(*n).to_string()}))
            .collect::<Vec<_>>()
    };
    let r = match &v {
        CyclotomicVerdict::Product { sign, factors: fs } => json!({
            "polynomial": p.to_string(),
            "product": true,
            "sign": sign,
            "factors": factors(fs),
        }),
        CyclotomicVerdict::NotProduct { extracted, cofactor } => json!({
            "polynomial": p.to_string(),
            "product": false,
            "factors": factors(extracted),
            "cofactor": cofactor.to_string(),
        }),
    };
    Ok(Outcome::new(r, v.is_product(), Vec::new()))
}

fn status_name(s: HypothesisStatus) -> &'static str {
    match s {
        HypothesisStatus::Verified => "verified",
        HypothesisStatus::Assumed => "assumed",
        HypothesisStatus::Unestablished => "unestablished",
        HypothesisStatus::Failed => "failed",
    }
}

pub fn verdict(path: &Path, a: u32, jmax: Option<u32>, ack: bool, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let mut cfg = VerdictConfig::new(a);
    cfg.j_max = jmax;
    cfg.module_gens = l.module_gens();
    cfg.section_cert = l.section_certificate();
    cfg.acknowledge_assumptions = ack;
    let v = ulrich_verdict(&l.presentation, &cfg)?;
    let no_ulrich = v.conclusion == Conclusion::NoUlrichModules;
    let mut r = json!({
        "conclusion": format!("{:?}", v.conclusion),
        "dimension": v.dimension,
        "verified": v.verified(),
        "assumed": v.assumed(),
        "hypotheses": v.hypotheses.iter().map(|h| json!({
            "tag": h.tag,
            "statement": h.statement,
            "status": status_name(h.status),
            "detail": h.detail,
        })).collect::<Vec<_>>(),
        "caveats": v.caveats,
        "complete_intersection": v.complete_intersection.is_complete_intersection,
        "hilbert": v.complete_intersection.hilbert.to_string(),
    });
    if let Some(c) = &v.conditions {
        r["surjectivity"] = json!({
            "a": c.a,
            "j_max": c.j_max,
            "status": status_text(c.status),
            "stability": c.stability.as_ref().map(module_cert_json),
        });
    }
    if let Some(s) = &v.section {
        r["section_ring"] = section_json(s);
    }
    Ok(Outcome::new(r, no_ulrich, vec![bytes]))
}

fn ideal_or_vars(l: &Loaded, ideal: Option<&str>) -> Result<Vec<Polynomial>, CliError> {
    match ideal {
        Some(s) => parse_list(&l.presentation, s),
        None => {
            let r = l.presentation.ring();
            Ok((0..r.nvars()).map(|i| Polynomial::var(r, i)).collect())
        }
    }
}

pub fn rees(path: &Path, ideal: Option<&str>, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let gens = ideal_or_vars(&l, ideal)?;
    let p = rees_presentation(&l.presentation, &gens)?;
    let vanish = p.relations_vanish()?;
    let r = json!({
        "ideal": strings(&gens),
        "variables": p.result.ring().vars().iter().map(|v| format!("{}:{}", v.name, v.weight)).collect::<Vec<_>>(),
        "relations": strings(p.result.relations()),
        "relations_vanish": vanish,
    });
    Ok(Outcome::new(r, vanish, vec![bytes]))
}

pub fn gr(path: &Path, ideal: Option<&str>, vanish: Option<&str>, budget: Budget) -> Result<Outcome, CliError> {
    let (l, bytes) = load(path, budget)?;
    let gens = ideal_or_vars(&l, ideal)?;
    let g = associated_graded(&l.presentation, &gens)?;
    let agrees = g.agrees_with_base;
    let mut passed = agrees != Some(false);
    let mut r = json!({
        "ideal": strings(&gens),
        "maximal_ideal": g.maximal_ideal,
        "variables": g.ring.ring().vars().iter().map(|v| format!("{}:{}", v.name, v.weight)).collect::<Vec<_>>(),
        "internal_degrees": g.internal_degrees,
        "relations": strings(g.ring.relations()),
        "hilbert": hilbert_series(&g.ring)?.to_string(),
        "agrees_with_base": agrees,
    });
    if let Some(list) = vanish {
        let polys = parse_list(&g.ring, list)?;
        let hold = relations_hold(&g.ring, &polys)?;
        passed &= hold.iter().all(|h| *h);
        r["vanish"] = json!(strings(&polys).into_iter().zip(hold).map(|(p, h)| json!({"element": p, "zero": h})).collect::<Vec<_>>());
    }
    Ok(Outcome::new(r, passed, vec![bytes]))
}
