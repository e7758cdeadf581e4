//! Sparse multivariate polynomials with exact coefficients over a weighted
//! variable table.

mod order;
mod parse;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::field::{is_negative, CoefficientField, Scalar};

pub use order::MonomialOrder;
pub use parse::parse_polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

/// Ordered list of named variables, each with a positive weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VariableTable {
    entries: Vec<Variable>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VariableTable {
    pub fn new<S: Into<String>>(
        entries: impl IntoIterator<Item = (S, u32)>,
    ) -> Result<Self, AlgebraError> {
        let mut table = VariableTable::default();
        for (name, weight) in entries {
            table.push(name.into(), weight)?;
        }
        Ok(table)
    }

    /// All variables of weight one.
    pub fn standard<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, AlgebraError> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    fn push(&mut self, name: String, weight: u32) -> Result<(), AlgebraError> {
        if !is_identifier(&name) {
            return Err(AlgebraError::InvalidVariables(alloc::format!(
                "`{name}` is not an identifier"
            )));
        }
        if weight == 0 {
            return Err(AlgebraError::InvalidVariables(alloc::format!(
                "variable `{name}` has weight 0"
            )));
        }
        if self.index_of(&name).is_some() {
            return Err(AlgebraError::InvalidVariables(alloc::format!(
                "variable `{name}` declared twice"
            )));
        }
        self.entries.push(Variable { name, weight });
        Ok(())
    }

    /// This table followed by `other`; names must stay distinct.
    pub fn concat(&self, other: &VariableTable) -> Result<Self, AlgebraError> {
        let mut out = self.clone();
        for v in &other.entries {
            out.push(v.name.clone(), v.weight)?;
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Variable> {
        self.entries.iter()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.entries[i].name
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.entries[i].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.entries.iter().map(|v| v.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|v| v.name == name)
    }

    /// Same names, new weights.
    pub fn reweighted(&self, weights: &[u32]) -> Result<Self, AlgebraError> {
        Self::new(
            self.entries
                .iter()
                .zip(weights)
                .map(|(v, &w)| (v.name.clone(), w)),
        )
    }
}

/// Exponent vector, one entry per variable of the ambient table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(&e, &w)| e * w).sum()
    }

    /// Number of variable factors counted with multiplicity.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn display<'a>(&'a self, vars: &'a VariableTable) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, vars }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a VariableTable,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial ring: variables, coefficient field and the active monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: VariableTable,
    field: CoefficientField,
    order: MonomialOrder,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(vars: VariableTable, field: CoefficientField) -> Result<Arc<Self>, AlgebraError> {
        Self::with_order(vars, field, MonomialOrder::WeightedGrevlex)
    }

    pub fn with_order(
        vars: VariableTable,
        field: CoefficientField,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, AlgebraError> {
        field.validate()?;
        if let Some(i) = order.max_index() {
            if i >= vars.len() {
                return Err(AlgebraError::InvalidVariables(alloc::format!(
                    "monomial order refers to variable index {i}"
                )));
            }
        }
        let weights = vars.weights();
        Ok(Arc::new(PolyRing {
            vars,
            field,
            order,
            weights,
        }))
    }

    /// Same variables and field under another order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Self>, AlgebraError> {
        Self::with_order(self.vars.clone(), self.field, order)
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.compare(a, b, &self.weights)
    }

    /// Same variables and field, ignoring the order.
    pub fn same_ambient(&self, other: &PolyRing) -> bool {
        self.vars == other.vars && self.field == other.field
    }

    /// Enumerate all monomials of a given weighted degree, descending in the
    /// ring's order.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        enumerate_degree(&self.weights, 0, degree, &mut cur, &mut |m| {
            out.push(Monomial(m.to_vec()));
            true
        });
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

/// Depth-first walk over exponent vectors of exactly `remaining` weighted
/// degree. The visitor returns `false` to prune the branch it was handed.
pub(crate) fn enumerate_degree(
    weights: &[u32],
    i: usize,
    remaining: u32,
    cur: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) {
    if i == weights.len() {
        if remaining == 0 {
            visit(cur);
        }
        return;
    }
    let w = weights[i];
    let max_e = remaining / w;
    for e in 0..=max_e {
        cur[i] = e;
        enumerate_degree(weights, i + 1, remaining - e * w, cur, visit);
    }
    cur[i] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub monomial: Monomial,
    pub coeff: Scalar,
}

/// Sparse polynomial. Terms are kept strictly descending in the ring's order
/// with no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        let c = ring.field.embed(c);
        Self::from_sorted(ring, vec![Term {
            monomial: Monomial::one(ring.nvars()),
            coeff: c,
        }])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), Scalar::one())
    }

    pub fn var_named(ring: &Arc<PolyRing>, name: &str) -> Result<Self, AlgebraError> {
        ring.vars
            .index_of(name)
            .map(|i| Self::var(ring, i))
            .ok_or_else(|| AlgebraError::UndeclaredVariable(name.to_string()))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.len(), ring.nvars());
        let c = ring.field.embed(c);
        Self::from_sorted(ring, vec![Term { monomial: m, coeff: c }])
    }

    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        terms.retain(|t| !t.coeff.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: duplicates are combined, zeros dropped.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let field = ring.field;
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(monomial, coeff)| {
                assert_eq!(monomial.len(), ring.nvars());
                Term {
                    monomial,
                    coeff: field.embed(coeff),
                }
            })
            .collect();
        terms.sort_by(|a, b| ring.cmp(&b.monomial, &a.monomial));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        Self::from_sorted(ring, out)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.coeff)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(AlgebraError::AmbientMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &Scalar::one(), None))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let minus_one = self.ring.field.neg(&Scalar::one());
        Ok(self.add_scaled(other, &minus_one, None))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * m * other`, merging two sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: &Scalar, m: Option<&Monomial>) -> Polynomial {
        let field = self.ring.field;
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|t| Term {
            monomial: match m {
                Some(m) => t.monomial.mul(m),
                None => t.monomial.clone(),
            },
            coeff: field.mul(&t.coeff, c),
        });
        let mut next_b = b.next();
        loop {
            match (a.peek(), next_b.as_ref()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(next_b.take().unwrap());
                    next_b = b.next();
                }
                (Some(ta), Some(tb)) => match ring.cmp(&ta.monomial, &tb.monomial) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        out.push(next_b.take().unwrap());
                        next_b = b.next();
                    }
                    Ordering::Equal => {
                        let s = field.add(&ta.coeff, &tb.coeff);
                        if !s.is_zero() {
                            out.push(Term {
                                monomial: ta.monomial.clone(),
                                coeff: s,
                            });
                        }
                        a.next();
                        next_b = b.next();
                    }
                },
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // Multiply the shorter polynomial term by term and merge.
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &short.terms {
            acc = acc.add_scaled(long, &t.coeff, Some(&t.monomial));
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = self.ring.field;
        let c = field.embed(c.clone());
        Self::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.clone(),
                    coeff: field.mul(&t.coeff, &c),
                })
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let field = self.ring.field;
        Self::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.mul(m),
                    coeff: field.mul(&t.coeff, c),
                })
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = self.ring.field.inv(lc);
                self.scale(&inv)
            }
        }
    }

    /// Highest weighted degree of any term; `None` for zero.
    pub fn weighted_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.iter().map(|t| t.monomial.weighted_degree(w)).max()
    }

    /// Distinct weighted degrees occurring, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let w = self.ring.weights();
        let mut d: Vec<u32> = self.terms.iter().map(|t| t.monomial.weighted_degree(w)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let w = self.ring.weights();
        let mut parts: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            parts
                .entry(t.monomial.weighted_degree(w))
                .or_default()
                .push(t.clone());
        }
        parts
            .into_iter()
            .map(|(d, terms)| (d, Self::from_sorted(&self.ring, terms)))
            .collect()
    }

    /// Whether variable `i` occurs in some term.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.iter().any(|t| t.monomial.exponent(i) > 0)
    }

    /// Re-express in a ring with the same variables and field but possibly a
    /// different order.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial, AlgebraError> {
        if Arc::ptr_eq(&self.ring, ring) {
            return Ok(self.clone());
        }
        if !self.ring.same_ambient(ring) {
            return Err(AlgebraError::AmbientMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.monomial, &a.monomial));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Move into a ring over a (possibly different) table by variable name.
    /// Every variable occurring in `self` must exist in `ring`.
    pub fn rename_into(&self, ring: &Arc<PolyRing>) -> Result<Polynomial, AlgebraError> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars
            .iter()
            .map(|v| ring.vars.index_of(&v.name))
            .collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut m = Monomial::one(ring.nvars());
            for i in t.monomial.support() {
                match map[i] {
                    Some(j) => m.0[j] = t.monomial.0[i],
                    None => {
                        return Err(AlgebraError::UndeclaredVariable(
                            self.ring.vars.name(i).to_string(),
                        ))
                    }
                }
            }
            out.push((m, t.coeff.clone()));
        }
        if ring.field != self.ring.field {
            return Err(AlgebraError::AmbientMismatch);
        }
        Ok(Polynomial::from_terms(ring, out))
    }

    /// Ring-homomorphism image under `assignment` (variable name to image in
    /// `target`). Unassigned variables map to the same-named variable of
    /// `target` when one exists.
    pub fn substitute(
        &self,
        assignment: &BTreeMap<String, Polynomial>,
        target: &Arc<PolyRing>,
    ) -> Result<Polynomial, AlgebraError> {
        if target.field != self.ring.field {
            return Err(AlgebraError::AmbientMismatch);
        }
        let mut images = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars.iter() {
            let img = match assignment.get(&v.name) {
                Some(p) => {
                    if !(Arc::ptr_eq(p.ring(), target) || **p.ring() == **target) {
                        return Err(AlgebraError::AmbientMismatch);
                    }
                    p.clone()
                }
                None => Polynomial::var_named(target, &v.name)
                    .map_err(|_| AlgebraError::UnassignedVariable(v.name.clone()))?,
            };
            images.push(img);
        }
        Ok(self.evaluate(&images, target))
    }

    /// Image under the homomorphism sending variable `i` to `images[i]`.
    pub fn evaluate(&self, images: &[Polynomial], target: &Arc<PolyRing>) -> Polynomial {
        let mut cache: Vec<Vec<Polynomial>> = vec![Vec::new(); images.len()];
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for i in t.monomial.support() {
                let e = t.monomial.0[i] as usize;
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Polynomial::one(target));
                }
                while powers.len() <= e {
                    let next = powers.last().unwrap() * &images[i];
                    powers.push(next);
                }
                prod = &prod * &powers[e];
            }
            acc = &acc + &prod;
        }
        acc
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics if the operands live in different rings; see [`Polynomial::try_add`].
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    monomial: t.monomial.clone(),
                    coeff: field.neg(&t.coeff),
                })
                .collect(),
        }
    }
}

/// Canonical printing: terms in descending order, `*` between factors,
/// coefficients as integers or `a/b`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = is_negative(&t.coeff);
            let abs = if neg { -t.coeff.clone() } else { t.coeff.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = t.monomial.display(&self.ring.vars);
            if t.monomial.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: &[(&str, u32)]) -> Arc<PolyRing> {
        PolyRing::new(
            VariableTable::new(spec.iter().copied()).unwrap(),
            CoefficientField::Rationals,
        )
        .unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(&[("x", 1), ("y", 1)]);
        assert_eq!(&p(&r, "x + y") * &p(&r, "x - y"), p(&r, "x^2 - y^2"));
        assert_eq!(&p(&r, "x + y") * &Polynomial::one(&r), p(&r, "x + y"));
    }

    #[test]
    fn square_of_ci_binomial() {
        let r = ring(&[("x", 2), ("y", 2), ("z", 2)]);
        let f = p(&r, "y^3 + x^2*z");
        let sq = &f * &f;
        assert_eq!(sq.to_string(), "y^6 + 2*x^2*y^3*z + x^4*z^2");
        assert_eq!(sq.weighted_degree(), Some(12));
        assert!(sq.is_homogeneous());
    }

    #[test]
    fn components_split_by_weight() {
        let r = ring(&[("x", 2), ("s", 3)]);
        let comps = p(&r, "x^2 + s").homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&4], p(&r, "x^2"));
        assert_eq!(comps[&3], p(&r, "s"));
        assert!(Polynomial::zero(&r).homogeneous_components().is_empty());
        let single = p(&r, "s^2 - x^3").homogeneous_components();
        assert_eq!(single.keys().copied().collect::<Vec<_>>(), vec![6]);
    }

    #[test]
    fn substitution_specializes_and_maps() {
        let r = ring(&[("x", 2), ("y", 2), ("z", 2)]);
        let target = ring(&[("x", 2), ("z", 2)]);
        let g = p(&r, "(y^3 + x^2*z)^2 - x^3*z^3");
        let mut a = BTreeMap::new();
        a.insert("y".to_string(), Polynomial::one(&target));
        let spec = g.substitute(&a, &target).unwrap();
        assert_eq!(spec, p(&target, "x^4*z^2 - x^3*z^3 + 2*x^2*z + 1"));

        let src = ring(&[("s", 3), ("x", 2)]);
        let uv = ring(&[("u", 1)]);
        let mut a = BTreeMap::new();
        a.insert("s".to_string(), p(&uv, "u^3"));
        a.insert("x".to_string(), p(&uv, "u^2"));
        assert!(p(&src, "s^2 - x^3").substitute(&a, &uv).unwrap().is_zero());
    }

    #[test]
    fn identity_substitution() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let f = p(&r, "x^2*y - 3*y + 1/2");
        assert_eq!(f.substitute(&BTreeMap::new(), &r).unwrap(), f);
    }

    #[test]
    fn missing_image_is_an_error() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let t = ring(&[("u", 1)]);
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), Polynomial::var(&t, 0));
        assert_eq!(
            p(&r, "x + y").substitute(&a, &t),
            Err(AlgebraError::UnassignedVariable("y".into()))
        );
    }

    #[test]
    fn mismatched_rings_rejected() {
        let r = ring(&[("x", 1)]);
        let s = ring(&[("y", 1)]);
        assert_eq!(
            Polynomial::var(&r, 0).try_mul(&Polynomial::var(&s, 0)),
            Err(AlgebraError::AmbientMismatch)
        );
    }

    #[test]
    fn table_invariants() {
        assert!(VariableTable::new([("x", 0)]).is_err());
        assert!(VariableTable::new([("x", 1), ("x", 2)]).is_err());
        assert!(VariableTable::new([("1x", 1)]).is_err());
        assert!(VariableTable::new([("x_11", 2)]).is_ok());
    }

    #[test]
    fn degree_enumeration_is_complete() {
        let r = ring(&[("s", 3), ("t", 3), ("x", 2), ("y", 2), ("z", 2)]);
        assert!(r.monomials_of_degree(1).is_empty());
        assert_eq!(r.monomials_of_degree(2).len(), 3);
        assert_eq!(r.monomials_of_degree(0), vec![Monomial::one(5)]);
        // degree 6: s^2, st, t^2 and the 10 cubics in x,y,z
        assert_eq!(r.monomials_of_degree(6).len(), 13);
    }
}
