//! Graded numerics on quotients `k[x]/I` by weighted-homogeneous ideals.
//!
//! Everything here is read off a Groebner basis of the relations under the
//! ring's order (weighted grevlex by default): standard monomials give
//! k-bases of the graded pieces, and the initial ideal gives the Hilbert
//! series and the Krull dimension.

mod cyclotomic;
mod hilbert;
mod span;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use once_cell::race::OnceBox;

use crate::error::AlgebraError;
use crate::field::Scalar;
use crate::groebner::{buchberger, Budget, GroebnerBasis, IdealPresentation};
use crate::intpoly::IntPoly;
use crate::poly::{parse_polynomial, Monomial, PolyRing, Polynomial};

pub use cyclotomic::{
    cyclotomic_polynomial, cyclotomic_product_test, euler_phi, CyclotomicVerdict,
};
pub use hilbert::{HilbertSeries, MonomialIdeal};
pub(crate) use span::RowSpace;

/// A graded ring `k[x]/(relations)` with weighted-homogeneous relations of
/// positive degree, so that the degree-zero piece is exactly `k`.
///
/// The Groebner basis of the relations is computed once on first use and
/// shared by all queries; the cache is safe to read from several threads.
pub struct RingPresentation {
    ring: Arc<PolyRing>,
    relations: Vec<Polynomial>,
    budget: Budget,
    gb: OnceBox<GroebnerBasis>,
}

impl Clone for RingPresentation {
    fn clone(&self) -> Self {
        let gb = OnceBox::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(Box::new(b.clone()));
        }
        RingPresentation {
            ring: self.ring.clone(),
            relations: self.relations.clone(),
            budget: self.budget,
            gb,
        }
    }
}

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingPresentation")
            .field("ring", &self.ring)
            .field("relations", &self.relations)
            .finish()
    }
}

impl RingPresentation {
    pub fn new(
        ring: &Arc<PolyRing>,
        relations: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self, AlgebraError> {
        let mut rels = Vec::new();
        for r in relations {
            if !r.ring().same_ambient(ring) {
                return Err(AlgebraError::AmbientMismatch);
            }
            if r.is_zero() {
                continue;
            }
            let degrees = r.degrees();
            if degrees.len() > 1 {
                return Err(AlgebraError::NotHomogeneous {
                    relation: r.to_string(),
                    degrees,
                });
            }
            if degrees == [0] {
                return Err(AlgebraError::ConstantRelation(r.to_string()));
            }
            rels.push(r.in_ring(ring)?);
        }
        Ok(RingPresentation {
            ring: ring.clone(),
            relations: rels,
            budget: Budget::default(),
            gb: OnceBox::new(),
        })
    }

    /// Parse each relation in `ring`.
    pub fn parse(ring: &Arc<PolyRing>, relations: &[&str]) -> Result<Self, AlgebraError> {
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, ring))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ring, rels)
    }

    pub fn polynomial_ring(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, core::iter::empty()).expect("no relations")
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self.gb = OnceBox::new();
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial, AlgebraError> {
        parse_polynomial(text, &self.ring)
    }

    pub fn ideal(&self) -> IdealPresentation {
        IdealPresentation::new(&self.ring, self.relations.iter().cloned()).expect("same ring")
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis, AlgebraError> {
        self.gb.get_or_try_init(|| {
            buchberger(&self.ideal(), self.ring.order(), &self.budget).map(Box::new)
        })
    }

    pub fn initial_ideal(&self) -> Result<MonomialIdeal, AlgebraError> {
        Ok(MonomialIdeal::new(
            self.nvars(),
            self.groebner()?.leading_monomials(),
        ))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.groebner()?.normal_form(p)
    }

    /// Relation degrees, in presentation order.
    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations
            .iter()
            .map(|r| r.weighted_degree().unwrap())
            .collect()
    }

    fn check_homogeneous(&self, p: &Polynomial, what: &str) -> Result<(), AlgebraError> {
        if !p.ring().same_ambient(&self.ring) {
            return Err(AlgebraError::AmbientMismatch);
        }
        if !p.is_homogeneous() {
            return Err(AlgebraError::Precondition(alloc::format!(
                "{what} `{p}` is not homogeneous"
            )));
        }
        Ok(())
    }
}

/// Standard monomials of weighted degree `d`: a k-basis of `S_d`, descending.
pub fn component_basis(ring: &RingPresentation, d: u32) -> Result<Vec<Monomial>, AlgebraError> {
    let initial = ring.initial_ideal()?;
    Ok(ring
        .ring
        .monomials_of_degree(d)
        .into_iter()
        .filter(|m| !initial.contains(m))
        .collect())
}

pub fn hilbert_series(ring: &RingPresentation) -> Result<HilbertSeries, AlgebraError> {
    let initial = ring.initial_ideal()?;
    Ok(HilbertSeries::new(
        initial.hilbert_numerator(ring.ring.weights()),
        ring.ring.weights().to_vec(),
    ))
}

pub fn krull_dim(ring: &RingPresentation) -> Result<usize, AlgebraError> {
    ring.initial_ideal()?
        .dimension()
        .ok_or_else(|| AlgebraError::Precondition("the quotient is the zero ring".into()))
}

/// Outcome of the complete-intersection test with its supporting data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersectionWitness {
    pub is_complete_intersection: bool,
    pub nvars: usize,
    pub dimension: usize,
    pub relation_count: usize,
    pub relation_degrees: Vec<u32>,
    pub hilbert: HilbertSeries,
    /// The Koszul form `prod (1 - t^{deg r}) / prod (1 - t^w)`.
    pub koszul: HilbertSeries,
    /// Whether the Hilbert series equals the Koszul form.
    pub koszul_identity: bool,
}

/// Codimension equals the number of relations, witnessed by the Koszul
/// identity of Hilbert series. Redundant relations make this report false.
pub fn is_complete_intersection(
    ring: &RingPresentation,
) -> Result<CompleteIntersectionWitness, AlgebraError> {
    let dimension = krull_dim(ring)?;
    let hilbert = hilbert_series(ring)?;
    let relation_degrees = ring.relation_degrees();
    let koszul = HilbertSeries::new(
        relation_degrees
            .iter()
            .fold(IntPoly::one(), |acc, &d| acc.mul(&IntPoly::one_minus_power(d))),
        ring.ring.weights().to_vec(),
    );
    let counts_match = ring.nvars() - dimension == relation_degrees.len();
    let koszul_identity = hilbert.same_function(&koszul);
    Ok(CompleteIntersectionWitness {
        is_complete_intersection: counts_match && koszul_identity,
        nvars: ring.nvars(),
        dimension,
        relation_count: relation_degrees.len(),
        relation_degrees,
        hilbert,
        koszul,
        koszul_identity,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientLength {
    Finite(u64),
    Infinite,
}

impl fmt::Display for QuotientLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientLength::Finite(n) => write!(f, "{n}"),
            QuotientLength::Infinite => f.write_str("infinite"),
        }
    }
}

/// The ring `S/(extra)` as a presentation over the same variables.
pub fn quotient_by(
    ring: &RingPresentation,
    extra: &[Polynomial],
) -> Result<RingPresentation, AlgebraError> {
    for p in extra {
        ring.check_homogeneous(p, "generator")?;
    }
    Ok(RingPresentation::new(
        &ring.ring,
        ring.relations.iter().cloned().chain(extra.iter().cloned()),
    )?
    .with_budget(ring.budget))
}

/// `dim_k S/(extra)`, or `Infinite` when some variable has no pure power in
/// the initial ideal.
pub fn quotient_length(
    ring: &RingPresentation,
    extra: &[Polynomial],
) -> Result<QuotientLength, AlgebraError> {
    for p in extra {
        ring.check_homogeneous(p, "generator")?;
    }
    // A nonzero constant makes the quotient zero; the homogeneous presentation
    // type rejects constants, so handle it up front.
    if extra.iter().any(|p| !p.is_zero() && p.is_constant()) {
        return Ok(QuotientLength::Finite(0));
    }
    let q = quotient_by(ring, extra)?;
    let initial = q.initial_ideal()?;
    Ok(match initial.standard_monomials() {
        Some(ms) => QuotientLength::Finite(ms.len() as u64),
        None => QuotientLength::Infinite,
    })
}

/// Length of `S/(params)` for a homogeneous system of parameters.
///
/// This equals the multiplicity of `S` at the irrelevant ideal when the
/// parameters generate a reduction of it and `S` is Cohen-Macaulay; neither
/// hypothesis is checked here.
pub fn multiplicity_via_reduction(
    ring: &RingPresentation,
    params: &[Polynomial],
) -> Result<u64, AlgebraError> {
    let dim = krull_dim(ring)?;
    if params.len() != dim {
        return Err(AlgebraError::Precondition(alloc::format!(
            "expected {dim} parameters (the Krull dimension), got {}",
            params.len()
        )));
    }
    match quotient_length(ring, params)? {
        QuotientLength::Finite(n) => Ok(n),
        QuotientLength::Infinite => Err(AlgebraError::Precondition(
            "the parameters do not form a system of parameters (infinite colength)".into(),
        )),
    }
}

fn coordinates(
    p: &Polynomial,
    index: &BTreeMap<Monomial, usize>,
) -> Result<Vec<Scalar>, AlgebraError> {
    let mut v = alloc::vec![Scalar::zero(); index.len()];
    for t in p.terms() {
        let col = index.get(&t.monomial).ok_or_else(|| {
            AlgebraError::Precondition("normal form left its graded piece".into())
        })?;
        v[*col] = t.coeff.clone();
    }
    Ok(v)
}

/// Rank data for the multiplication map `S_a ⊗ S_j → S_{a+j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityCheck {
    pub a: u32,
    pub j: u32,
    pub target_dim: usize,
    pub rank: usize,
    /// Standard monomials of degree `a + j` completing the image to a basis.
    pub missing: Vec<Monomial>,
}

impl SurjectivityCheck {
    pub fn surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

/// Span of normal forms of `generators` inside `S_d`, as a [`RowSpace`].
fn span_in_degree(
    ring: &RingPresentation,
    d: u32,
    generators: impl IntoIterator<Item = Polynomial>,
) -> Result<(Vec<Monomial>, RowSpace), AlgebraError> {
    let basis = component_basis(ring, d)?;
    let index: BTreeMap<Monomial, usize> =
        basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut space = RowSpace::new(ring.ring.field(), basis.len());
    for g in generators {
        if space.is_full() {
            break;
        }
        let nf = ring.normal_form(&g)?;
        if !nf.is_zero() {
            space.insert(coordinates(&nf, &index)?);
        }
    }
    Ok((basis, space))
}

pub fn multiplication_surjective(
    ring: &RingPresentation,
    a: u32,
    j: u32,
) -> Result<SurjectivityCheck, AlgebraError> {
    if a == 0 || j == 0 {
        return Err(AlgebraError::Precondition(
            "multiplication map needs a >= 1 and j >= 1".into(),
        ));
    }
    let left = component_basis(ring, a)?;
    let right = component_basis(ring, j)?;
    let r = &ring.ring;
    let one = Scalar::from_integer(1.into());
    let one = &one;
    let products = left.iter().flat_map(|m| {
        right
            .iter()
            .map(move |n| Polynomial::monomial(r, m.mul(n), one.clone()))
    });
    let (basis, space) = span_in_degree(ring, a + j, products)?;
    Ok(SurjectivityCheck {
        a,
        j,
        target_dim: basis.len(),
        rank: space.rank(),
        missing: space
            .non_pivot_columns()
            .into_iter()
            .map(|c| basis[c].clone())
            .collect(),
    })
}

/// `S_0 = k` and `S_e = 0` for `1 <= e < a`.
pub fn low_degrees_vanish(ring: &RingPresentation, a: u32) -> Result<bool, AlgebraError> {
    if component_basis(ring, 0)?.len() != 1 {
        return Ok(false);
    }
    for e in 1..a {
        if !component_basis(ring, e)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing powers of the irrelevant ideal with truncations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationCheck {
    pub a: u32,
    pub j_max: u32,
    /// `(j, d)` pairs checked, in order.
    pub checked: Vec<(u32, u32)>,
    /// First `(j, d)` with `(m^j)_d != S_d`.
    pub first_failure: Option<(u32, u32)>,
}

impl TruncationCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// For `1 <= j <= j_max` and `ja <= d <= ja + 2a`, check `(m^j)_d = S_d`,
/// where `m` is generated by the variables, so `(m^j)_d` is spanned by the
/// monomials of weighted degree `d` with at least `j` factors.
pub fn truncation_power_check(
    ring: &RingPresentation,
    a: u32,
    j_max: u32,
) -> Result<TruncationCheck, AlgebraError> {
    if a == 0 {
        return Err(AlgebraError::Precondition("a must be positive".into()));
    }
    if !low_degrees_vanish(ring, a)? {
        return Err(AlgebraError::Precondition(alloc::format!(
            "S_0 = k and S_e = 0 for 1 <= e < {a} must hold first"
        )));
    }
    let r = &ring.ring;
    let one = Scalar::from_integer(1.into());
    let mut checked = Vec::new();
    for j in 1..=j_max {
        for d in j * a..=j * a + 2 * a {
            checked.push((j, d));
            let gens = r
                .monomials_of_degree(d)
                .into_iter()
                .filter(|m| m.total_degree() >= j)
                .map(|m| Polynomial::monomial(r, m, one.clone()));
            let (_, space) = span_in_degree(ring, d, gens)?;
            if !space.is_full() {
                return Ok(TruncationCheck {
                    a,
                    j_max,
                    checked,
                    first_failure: Some((j, d)),
                });
            }
        }
    }
    Ok(TruncationCheck {
        a,
        j_max,
        checked,
        first_failure: None,
    })
}

/// Whether each element of `gens` (homogeneous, possibly of mixed degrees)
/// together spans `S_d` after multiplying by `S_e` pieces: the degree-`d`
/// part of the `R`-module generated by `gens`, where `R = k[S_a]`.
pub(crate) fn module_span_is_full(
    ring: &RingPresentation,
    a: u32,
    gens: &[Polynomial],
    d: u32,
) -> Result<bool, AlgebraError> {
    let elements = module_elements_in_degree(ring, a, gens, d)?;
    let (_, space) = span_in_degree(ring, d, elements)?;
    Ok(space.is_full())
}

/// Spanning set of `R_e` where `R = k[S_a]`, as products of `e / a` basis
/// elements of `S_a` (empty unless `a | e`).
fn veronese_piece(ring: &RingPresentation, a: u32, e: u32) -> Result<Vec<Polynomial>, AlgebraError> {
    let r = &ring.ring;
    if e % a != 0 {
        return Ok(Vec::new());
    }
    let one = Scalar::from_integer(1.into());
    let sa: Vec<Polynomial> = component_basis(ring, a)?
        .into_iter()
        .map(|m| Polynomial::monomial(r, m, one.clone()))
        .collect();
    let mut cur = alloc::vec![Polynomial::one(r)];
    for k in 1..=e / a {
        let (basis, space) = span_in_degree(
            ring,
            k * a,
            cur.iter().flat_map(|c| sa.iter().map(move |s| c * s)),
        )?;
        // Keep only echelon rows so the list stays the size of R_{ka}.
        cur = space_rows(ring, &basis, &space);
        if cur.is_empty() {
            break;
        }
    }
    Ok(cur)
}

fn space_rows(ring: &RingPresentation, basis: &[Monomial], space: &RowSpace) -> Vec<Polynomial> {
    space
        .rows()
        .map(|row| {
            Polynomial::from_terms(
                &ring.ring,
                row.iter()
                    .zip(basis)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, m)| (m.clone(), c.clone())),
            )
        })
        .collect()
}

pub(crate) fn module_elements_in_degree(
    ring: &RingPresentation,
    a: u32,
    gens: &[Polynomial],
    d: u32,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let mut out = Vec::new();
    for g in gens {
        let Some(dg) = g.weighted_degree() else {
            continue;
        };
        if dg > d {
            continue;
        }
        for r in veronese_piece(ring, a, d - dg)? {
            out.push(&r * g);
        }
    }
    Ok(out)
}

/// Whether the homogeneous `p` lies in the `R`-module generated by `gens`,
/// with `R = k[S_a]`.
pub(crate) fn module_contains(
    ring: &RingPresentation,
    a: u32,
    gens: &[Polynomial],
    p: &Polynomial,
) -> Result<bool, AlgebraError> {
    let nf = ring.normal_form(p)?;
    let Some(d) = nf.weighted_degree() else {
        return Ok(true);
    };
    let elements = module_elements_in_degree(ring, a, gens, d)?;
    let (basis, mut space) = span_in_degree(ring, d, elements)?;
    let index: BTreeMap<Monomial, usize> =
        basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(!space.insert(coordinates(&nf, &index)?))
}

#[cfg(test)]
mod tests;
