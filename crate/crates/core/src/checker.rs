//! Certificates for the non-existence of Ulrich modules over `S_m`, where
//! `S` is a positively graded ring with `S_0 = k` and `m` its irrelevant ideal.
//!
//! The criterion needs: `dim S >= 2`; `S_0 = k` and `S_j = 0` for
//! `0 < j < a`; `S_a S_j = S_{a+j}` for all `j >= a`; `S` is the section ring
//! of an ample line bundle, which holds when some homogeneous elements
//! `x_i` have radical `S_{>=1}` and each `S_{x_i}` has a unit of degree one,
//! provided `depth S >= 2`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::field::CoefficientField;
use crate::graded::{
    component_basis, is_complete_intersection, krull_dim, module_contains, module_span_is_full,
    multiplication_surjective, CompleteIntersectionWitness, RingPresentation,
};
use crate::groebner::{radical_membership, IdealPresentation};
use crate::poly::Polynomial;

/// `S_0 = k` and `S_j = 0` for `1 <= j <= a - 1`.
pub fn check_gap_condition(ring: &RingPresentation, a: u32) -> Result<bool, AlgebraError> {
    if a < 2 {
        return Err(AlgebraError::Precondition("the gap condition needs a >= 2".into()));
    }
    crate::graded::low_degrees_vanish(ring, a)
}

/// Finite certificate that `S_a S_j = S_{a+j}` for every `j >= covers_from`:
/// the `k[S_a]`-module `M` generated by `generators` contains 1 and is closed
/// under multiplication by every variable, so `M = S`. Then each element of
/// `S_{a+j}` is a sum of `r g` with `r` of positive degree in `k[S_a]` once
/// `j >= deg g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleGenerationCertificate {
    pub generators: Vec<String>,
    pub generator_degrees: Vec<u32>,
    pub contains_one: bool,
    /// Variable-generator products that fell outside `M`, as `(variable, generator)`.
    pub closure_failures: Vec<(String, String)>,
    /// Degrees `0..=span_checked_up_to` where `M_d = S_d` was checked directly.
    pub span_checked_up_to: u32,
    pub span_failures: Vec<u32>,
    pub covers_from: u32,
}

impl ModuleGenerationCertificate {
    pub fn valid(&self) -> bool {
        self.contains_one && self.closure_failures.is_empty() && self.span_failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurjectivityStatus {
    CertifiedForAllJ,
    VerifiedUpTo(u32),
    /// First `j` with `S_a S_j != S_{a+j}`.
    Failed(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub a: u32,
    pub j_max: u32,
    /// `S_0 = k` and `S_j = 0` for `1 <= j <= a - 1`.
    pub gap_ok: bool,
    pub surjectivity: Vec<(u32, bool)>,
    pub stability: Option<ModuleGenerationCertificate>,
    pub status: SurjectivityStatus,
}

fn build_module_certificate(
    ring: &RingPresentation,
    a: u32,
    gens: &[Polynomial],
    span_up_to: u32,
) -> Result<ModuleGenerationCertificate, AlgebraError> {
    let r = ring.ring();
    let mut degrees = Vec::new();
    for g in gens {
        if !g.ring().same_ambient(r) {
            return Err(AlgebraError::AmbientMismatch);
        }
        match g.weighted_degree() {
            Some(d) if g.is_homogeneous() => degrees.push(d),
            _ => {
                return Err(AlgebraError::Precondition(alloc::format!(
                    "module generator `{g}` must be nonzero and homogeneous"
                )))
            }
        }
    }
    let contains_one = gens.iter().any(|g| g.is_constant());
    let mut closure_failures = Vec::new();
    for g in gens {
        for v in 0..r.nvars() {
            let p = &Polynomial::var(r, v) * g;
            if !module_contains(ring, a, gens, &p)? {
                closure_failures.push((r.vars().name(v).to_string(), g.to_string()));
            }
        }
    }
    let mut span_failures = Vec::new();
    for d in 0..=span_up_to {
        if !module_span_is_full(ring, a, gens, d)? {
            span_failures.push(d);
        }
    }
    Ok(ModuleGenerationCertificate {
        generators: gens.iter().map(|g| g.to_string()).collect(),
        covers_from: degrees.iter().copied().max().unwrap_or(0),
        generator_degrees: degrees,
        contains_one,
        closure_failures,
        span_checked_up_to: span_up_to,
        span_failures,
    })
}

/// Check `S_a S_j = S_{a+j}` for `a <= j <= j_max`, and, given module
/// generators, try to certify it for every `j >= a`.
pub fn check_surjectivity_condition(
    ring: &RingPresentation,
    a: u32,
    j_max: u32,
    module_gens: Option<&[Polynomial]>,
) -> Result<ConditionReport, AlgebraError> {
    if a < 2 || j_max < a {
        return Err(AlgebraError::Precondition(alloc::format!(
            "need a >= 2 and j_max >= a, got a = {a}, j_max = {j_max}"
        )));
    }
    let gap_ok = check_gap_condition(ring, a)?;
    let mut surjectivity = Vec::new();
    for j in a..=j_max {
        surjectivity.push((j, multiplication_surjective(ring, a, j)?.surjective()));
    }
    let stability = match module_gens {
        Some(gens) => Some(build_module_certificate(ring, a, gens, j_max + 2 * a)?),
        None => None,
    };
    let status = if let Some(&(j, _)) = surjectivity.iter().find(|(_, ok)| !ok) {
        SurjectivityStatus::Failed(j)
    } else if stability
        .as_ref()
        .is_some_and(|c| c.valid() && c.covers_from <= j_max + 1)
    {
        SurjectivityStatus::CertifiedForAllJ
    } else {
        SurjectivityStatus::VerifiedUpTo(j_max)
    };
    Ok(ConditionReport {
        a,
        j_max,
        gap_ok,
        surjectivity,
        stability,
        status,
    })
}

/// `a / x^m` is a unit of degree one in `S_x`, with inverse `b / x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    pub numerator: Polynomial,
    pub denominator_power: u32,
    pub inverse_numerator: Polynomial,
    pub inverse_power: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRingCertificate {
    pub params: Vec<Polynomial>,
    pub unit_certs: Vec<UnitCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCheck {
    pub param: String,
    pub homogeneous: bool,
    /// `deg a - m deg x = 1` and `deg b - n deg x = -1`.
    pub degree_ok: bool,
    /// `a b - x^(m+n)` lies in the relation ideal.
    pub identity_ok: bool,
}

impl UnitCheck {
    pub fn passed(&self) -> bool {
        self.homogeneous && self.degree_ok && self.identity_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionRingReport {
    /// Whether each parameter is homogeneous of positive degree.
    pub params_ok: bool,
    /// Each variable with whether it lies in the radical of `(params) + I`.
    pub radical: Vec<(String, bool)>,
    pub count_ok: bool,
    pub units: Vec<UnitCheck>,
}

impl SectionRingReport {
    pub fn passed(&self) -> bool {
        self.params_ok
            && self.count_ok
            && self.radical.iter().all(|(_, ok)| *ok)
            && self.units.iter().all(UnitCheck::passed)
    }
}

pub fn verify_section_ring_certificate(
    ring: &RingPresentation,
    cert: &SectionRingCertificate,
) -> Result<SectionRingReport, AlgebraError> {
    let r = ring.ring();
    let params_ok = !cert.params.is_empty()
        && cert
            .params
            .iter()
            .all(|x| x.is_homogeneous() && x.weighted_degree().is_some_and(|d| d > 0));
    let ideal = IdealPresentation::new(
        r,
        ring.relations().iter().cloned().chain(cert.params.iter().cloned()),
    )?;
    let mut radical = Vec::new();
    for v in 0..r.nvars() {
        let ok = radical_membership(&Polynomial::var(r, v), &ideal, ring.budget())?;
        radical.push((r.vars().name(v).to_string(), ok));
    }
    let gb = ring.groebner()?;
    let mut units = Vec::new();
    for (x, u) in cert.params.iter().zip(&cert.unit_certs) {
        let homogeneous = [x, &u.numerator, &u.inverse_numerator]
            .iter()
            .all(|p| p.is_homogeneous() && !p.is_zero());
        let degree_ok = homogeneous && {
            let dx = x.weighted_degree().unwrap() as i64;
            let da = u.numerator.weighted_degree().unwrap() as i64;
            let db = u.inverse_numerator.weighted_degree().unwrap() as i64;
            da - u.denominator_power as i64 * dx == 1 && db - u.inverse_power as i64 * dx == -1
        };
        let diff = &(&u.numerator * &u.inverse_numerator) - &x.pow(u.denominator_power + u.inverse_power);
        units.push(UnitCheck {
            param: x.to_string(),
            homogeneous,
            degree_ok,
            identity_ok: gb.contains(&diff)?,
        });
    }
    Ok(SectionRingReport {
        params_ok,
        radical,
        count_ok: cert.params.len() == cert.unit_certs.len(),
        units,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    NoUlrichModules,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisStatus {
    Verified,
    /// Not proved; accepted because the caller acknowledged assumptions.
    Assumed,
    /// Not proved and not acknowledged.
    Unestablished,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub tag: &'static str,
    pub statement: &'static str,
    pub status: HypothesisStatus,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerdictConfig {
    pub a: u32,
    /// Defaults to `4a` plus the largest relation degree.
    pub j_max: Option<u32>,
    pub module_gens: Option<Vec<Polynomial>>,
    pub section_cert: Option<SectionRingCertificate>,
    pub acknowledge_assumptions: bool,
}

impl VerdictConfig {
    pub fn new(a: u32) -> Self {
        VerdictConfig {
            a,
            j_max: None,
            module_gens: None,
            section_cert: None,
            acknowledge_assumptions: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct UlrichVerdict {
    pub conclusion: Conclusion,
    pub hypotheses: Vec<Hypothesis>,
    pub caveats: Vec<String>,
    pub dimension: usize,
    pub conditions: Option<ConditionReport>,
    pub section: Option<SectionRingReport>,
    pub complete_intersection: CompleteIntersectionWitness,
}

impl UlrichVerdict {
    fn tags(&self, status: HypothesisStatus) -> Vec<&'static str> {
        self.hypotheses
            .iter()
            .filter(|h| h.status == status)
            .map(|h| h.tag)
            .collect()
    }

    pub fn verified(&self) -> Vec<&'static str> {
        self.tags(HypothesisStatus::Verified)
    }

    pub fn assumed(&self) -> Vec<&'static str> {
        self.tags(HypothesisStatus::Assumed)
    }
}

pub fn default_j_max(ring: &RingPresentation, a: u32) -> u32 {
    4 * a + ring.relation_degrees().into_iter().max().unwrap_or(0)
}

pub fn ulrich_verdict(ring: &RingPresentation, config: &VerdictConfig) -> Result<UlrichVerdict, AlgebraError> {
    let a = config.a;
    let j_max = config.j_max.unwrap_or_else(|| default_j_max(ring, a)).max(a);
    let ack = config.acknowledge_assumptions;
    let assumable = |detail: String| Hypothesis {
        tag: "",
        statement: "",
        status: if ack {
            HypothesisStatus::Assumed
        } else {
            HypothesisStatus::Unestablished
        },
        detail,
    };
    let mut hypotheses = Vec::new();
    let mut caveats = Vec::new();

    let dimension = krull_dim(ring)?;
    hypotheses.push(Hypothesis {
        tag: "dimension",
        statement: "dim S >= 2",
        status: if dimension >= 2 {
            HypothesisStatus::Verified
        } else {
            HypothesisStatus::Failed
        },
        detail: alloc::format!("Krull dimension {dimension}"),
    });

    let conditions = if a >= 2 {
        Some(check_surjectivity_condition(
            ring,
            a,
            j_max,
            config.module_gens.as_deref(),
        )?)
    } else {
        None
    };
    let gap_ok = conditions.as_ref().is_some_and(|c| c.gap_ok);
    hypotheses.push(Hypothesis {
        tag: "gap",
        statement: "S_0 = k and S_j = 0 for 1 <= j <= a - 1",
        status: if gap_ok {
            HypothesisStatus::Verified
        } else {
            HypothesisStatus::Failed
        },
        detail: if a < 2 {
            alloc::format!("a = {a} is below 2")
        } else {
            alloc::format!("degrees 0..{} inspected", a - 1)
        },
    });

    let surj = match conditions.as_ref().map(|c| c.status) {
        Some(SurjectivityStatus::CertifiedForAllJ) => Hypothesis {
            tag: "",
            statement: "",
            status: HypothesisStatus::Verified,
            detail: alloc::format!(
                "checked for {a} <= j <= {j_max}; module generation certifies all j"
            ),
        },
        Some(SurjectivityStatus::VerifiedUpTo(j)) => assumable(alloc::format!(
            "checked only for {a} <= j <= {j}; larger j not certified"
        )),
        Some(SurjectivityStatus::Failed(j)) => Hypothesis {
            tag: "",
            statement: "",
            status: HypothesisStatus::Failed,
            detail: alloc::format!("S_a S_j != S_(a+j) at j = {j}"),
        },
        None => Hypothesis {
            tag: "",
            statement: "",
            status: HypothesisStatus::Failed,
            detail: alloc::format!("a = {a} is below 2"),
        },
    };
    hypotheses.push(Hypothesis {
        tag: "surjectivity",
        statement: "S_a S_j = S_(a+j) for all j >= a",
        ..surj
    });

    let section = match &config.section_cert {
        Some(cert) => Some(verify_section_ring_certificate(ring, cert)?),
        None => None,
    };
    hypotheses.push(Hypothesis {
        tag: "section-ring",
        statement: "radical of the parameters is S_(>=1) and each S_(x_i) has a unit of degree 1",
        status: match &section {
            Some(r) if r.passed() => HypothesisStatus::Verified,
            Some(_) => HypothesisStatus::Failed,
            None => HypothesisStatus::Unestablished,
        },
        detail: match &section {
            Some(r) => alloc::format!("{} parameter(s) checked", r.units.len()),
            None => "no certificate supplied".to_string(),
        },
    });

    let ci = is_complete_intersection(ring)?;
    let depth = if ci.is_complete_intersection && dimension >= 2 {
        Hypothesis {
            tag: "",
            statement: "",
            status: HypothesisStatus::Verified,
            detail: "complete intersection, so Cohen-Macaulay with depth = dim".to_string(),
        }
    } else {
        assumable("not a complete intersection; depth is not computed".to_string())
    };
    hypotheses.push(Hypothesis {
        tag: "depth",
        statement: "depth S >= 2",
        ..depth
    });

    if let CoefficientField::PrimeField(p) = ring.ring().field() {
        caveats.push(alloc::format!(
            "computed over GF({p}); the conclusion concerns this characteristic only"
        ));
        if p < 5 {
            caveats.push(alloc::format!("characteristic {p} is below 5"));
        }
    }
    if component_basis(ring, 0)?.len() != 1 {
        caveats.push("degree-zero part is not the base field".to_string());
    }

    let sound = hypotheses.iter().all(|h| {
        matches!(h.status, HypothesisStatus::Verified | HypothesisStatus::Assumed)
    });
    let any_verified = hypotheses.iter().any(|h| h.status == HypothesisStatus::Verified);
    let conclusion = if sound && any_verified && dimension >= 2 {
        Conclusion::NoUlrichModules
    } else {
        Conclusion::Inconclusive
    };
    if conclusion == Conclusion::NoUlrichModules {
        caveats.push("the conclusion covers the local ring at the irrelevant ideal and its completion".to_string());
    }
    Ok(UlrichVerdict {
        conclusion,
        hypotheses,
        caveats,
        dimension,
        conditions,
        section,
        complete_intersection: ci,
    })
}
