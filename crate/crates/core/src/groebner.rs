//! Buchberger's algorithm and the ideal-theoretic operations built on it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{AlgebraError, BudgetKind};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term, VariableTable};

/// Caps on a single Groebner computation. Exceeding either is reported as
/// [`AlgebraError::BudgetExceeded`], never as a wrong answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_basis: usize,
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_basis: 20_000,
            max_steps: 200_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_basis: usize::MAX,
            max_steps: u64::MAX,
        }
    }
}

struct StepCounter {
    steps: u64,
    limit: u64,
}

impl StepCounter {
    fn new(limit: u64) -> Self {
        StepCounter { steps: 0, limit }
    }

    fn tick(&mut self) -> Result<(), AlgebraError> {
        self.steps += 1;
        if self.steps > self.limit {
            Err(AlgebraError::BudgetExceeded {
                kind: BudgetKind::ReductionSteps,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Generators of an ideal in a polynomial ring. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(
        ring: &Arc<PolyRing>,
        generators: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self, AlgebraError> {
        let mut gens = Vec::new();
        for g in generators {
            if !g.ring().same_ambient(ring) {
                return Err(AlgebraError::AmbientMismatch);
            }
            if !g.is_zero() {
                gens.push(g.in_ring(ring)?);
            }
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: gens,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// This ideal plus more generators from the same ring.
    pub fn extended(
        &self,
        more: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self, AlgebraError> {
        IdealPresentation::new(
            &self.ring,
            self.generators.iter().cloned().chain(more),
        )
    }
}

/// Reduced Groebner basis, sorted ascending by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    source: IdealPresentation,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn source(&self) -> &IdealPresentation {
        &self.source
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// The basis of the unit ideal is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        normal_form(p, self)
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, AlgebraError> {
        Ok(normal_form(p, self)?.is_zero())
    }
}

/// Full reduction of `p` by `basis` (all monic, same ring as `p`).
fn reduce(
    p: Polynomial,
    basis: &[Polynomial],
    counter: &mut StepCounter,
) -> Result<Polynomial, AlgebraError> {
    let ring = p.ring().clone();
    let field = ring.field();
    let mut remainder: Vec<Term> = Vec::new();
    let mut cur = p;
    while let Some(lt) = cur.leading_term() {
        let divisor = basis.iter().find_map(|g| {
            let lm = g.leading_monomial().unwrap();
            lt.monomial.div(lm).map(|q| (g, q))
        });
        match divisor {
            Some((g, q)) => {
                counter.tick()?;
                let c = field.neg(&field.div(&lt.coeff, g.leading_coeff().unwrap()));
                cur = cur.add_scaled(g, &c, Some(&q));
            }
            None => remainder.push(cur.pop_leading().unwrap()),
        }
    }
    // Heads are popped in strictly descending order.
    Ok(Polynomial::from_sorted(&ring, remainder))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let one = crate::field::Scalar::one();
    let a = f.mul_monomial(&l.div(lf).unwrap(), &one);
    let minus_one = f.ring().field().neg(&one);
    a.add_scaled(g, &minus_one, Some(&l.div(lg).unwrap()))
}

/// Reduced Groebner basis of `ideal` under `order`.
///
/// Pairs are processed by smallest sugar degree (the weighted degree of the
/// lcm for homogeneous input), then lcm degree, then pair index, with the coprime-leading-monomial and chain criteria. The
/// output is deterministic for a fixed input.
pub fn buchberger(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    let ring = if ideal.ring.order() == order {
        ideal.ring.clone()
    } else {
        ideal.ring.reordered(order.clone())?
    };
    let mut counter = StepCounter::new(budget.max_steps);
    let weights: Vec<u32> = ring.weights().to_vec();

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    // Sugar of each element: a degree bound that equals the true degree for
    // homogeneous input and keeps inhomogeneous input from swelling.
    let mut sugar: Vec<u32> = Vec::new();
    let mut queue: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let insert = |h: Polynomial,
                  s: u32,
                  basis: &mut Vec<Polynomial>,
                  lms: &mut Vec<Monomial>,
                  sugar: &mut Vec<u32>,
                  queue: &mut BTreeSet<(u32, u32, usize, usize)>,
                  pending: &mut BTreeSet<(usize, usize)>|
     -> Result<(), AlgebraError> {
        if basis.len() >= budget.max_basis {
            return Err(AlgebraError::BudgetExceeded {
                kind: BudgetKind::BasisSize,
                limit: budget.max_basis as u64,
            });
        }
        let h = h.monic();
        let lm = h.leading_monomial().unwrap().clone();
        let dlm = lm.weighted_degree(&weights);
        let idx = basis.len();
        for (i, lmi) in lms.iter().enumerate() {
            let l = lmi.lcm(&lm);
            let deg = l.weighted_degree(&weights);
            let pair_sugar = (sugar[i] + deg - lmi.weighted_degree(&weights)).max(s + deg - dlm);
            queue.insert((pair_sugar, deg, i, idx));
            pending.insert((i, idx));
        }
        basis.push(h);
        lms.push(lm);
        sugar.push(s);
        Ok(())
    };
    let top_degree = |p: &Polynomial| p.degrees().last().copied().unwrap_or(0);

    for g in ideal.generators() {
        let g = g.in_ring(&ring)?;
        let s = top_degree(&g);
        let h = reduce(g, &basis, &mut counter)?;
        if !h.is_zero() {
            let s = s.max(top_degree(&h));
            insert(h, s, &mut basis, &mut lms, &mut sugar, &mut queue, &mut pending)?;
        }
    }

    while let Some(key) = queue.pop_first() {
        let (pair_sugar, _, i, j) = key;
        pending.remove(&(i, j));
        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        let l = lms[i].lcm(&lms[j]);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lms[k].divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = reduce(s, &basis, &mut counter)?;
        if !h.is_zero() {
            let s = pair_sugar.max(top_degree(&h));
            insert(h, s, &mut basis, &mut lms, &mut sugar, &mut queue, &mut pending)?;
        }
    }

    let elements = interreduce(basis, &mut counter)?;
    Ok(GroebnerBasis {
        ring,
        elements,
        source: ideal.clone(),
    })
}

fn interreduce(
    basis: Vec<Polynomial>,
    counter: &mut StepCounter,
) -> Result<Vec<Polynomial>, AlgebraError> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let lh = h.leading_monomial().unwrap();
            k != i && lh.divides(lm) && (lh != lm || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = reduce(minimal[i].clone(), &others, counter)?;
        reduced.push(r.monic());
    }
    if let Some(first) = reduced.first() {
        let ring = first.ring().clone();
        reduced.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    }
    Ok(reduced)
}

/// Remainder of `p` modulo `gb`, expressed in `p`'s ring.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, AlgebraError> {
    if !p.ring().same_ambient(&gb.ring) {
        return Err(AlgebraError::AmbientMismatch);
    }
    let mut counter = StepCounter::new(u64::MAX);
    let r = reduce(p.in_ring(&gb.ring)?, &gb.elements, &mut counter)?;
    r.in_ring(p.ring())
}

pub fn ideal_membership(
    p: &Polynomial,
    ideal: &IdealPresentation,
    budget: &Budget,
) -> Result<bool, AlgebraError> {
    if p.is_zero() {
        return Ok(true);
    }
    let gb = buchberger(ideal, ideal.ring.order(), budget)?;
    gb.contains(p)
}

/// A variable name not present in `table`, derived from `base`.
pub(crate) fn fresh_name(table: &VariableTable, base: &str) -> String {
    let mut name = base.to_string();
    while table.index_of(&name).is_some() {
        name.push('_');
    }
    name
}

/// Copy `p` into `ring`, shifting variable `i` to `i + offset`.
pub(crate) fn shift_into(p: &Polynomial, ring: &Arc<PolyRing>, offset: usize) -> Polynomial {
    Polynomial::from_terms(
        ring,
        p.terms().iter().map(|t| {
            let mut m = Monomial::one(ring.nvars());
            for i in t.monomial.support() {
                m.exponents_mut()[i + offset] = t.monomial.exponent(i);
            }
            (m, t.coeff.clone())
        }),
    )
}

/// Whether some power of `p` lies in `ideal`: adjoin a fresh `w` and test
/// whether `ideal + (1 - w p)` is the unit ideal.
pub fn radical_membership(
    p: &Polynomial,
    ideal: &IdealPresentation,
    budget: &Budget,
) -> Result<bool, AlgebraError> {
    let base = ideal.ring();
    if !p.ring().same_ambient(base) {
        return Err(AlgebraError::AmbientMismatch);
    }
    if p.is_zero() {
        return Ok(true);
    }
    let w = fresh_name(base.vars(), "w");
    let table = base.vars().concat(&VariableTable::new([(w, 1)])?)?;
    let ring = PolyRing::new(table, base.field())?;
    let wvar = Polynomial::var(&ring, base.nvars());
    let lifted = shift_into(p, &ring, 0);
    let aux = &Polynomial::one(&ring) - &(&wvar * &lifted);
    let gens = ideal
        .generators()
        .iter()
        .map(|g| shift_into(g, &ring, 0))
        .chain(core::iter::once(aux));
    let extended = IdealPresentation::new(&ring, gens)?;
    let gb = buchberger(&extended, ring.order(), budget)?;
    Ok(gb.is_unit())
}

/// Generators of `ideal ∩ k[remaining variables]`, living in the subring on
/// the variables not in `drop` (weights preserved, grevlex order).
pub fn eliminate(
    ideal: &IdealPresentation,
    drop: &[usize],
    budget: &Budget,
) -> Result<IdealPresentation, AlgebraError> {
    let ring = ideal.ring();
    if let Some(&bad) = drop.iter().find(|&&i| i >= ring.nvars()) {
        return Err(AlgebraError::Precondition(alloc::format!(
            "cannot eliminate variable index {bad}"
        )));
    }
    let order = MonomialOrder::eliminating(drop.iter().copied());
    let gb = buchberger(ideal, &order, budget)?;
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !drop.contains(i)).collect();
    let sub_table = VariableTable::new(
        keep.iter()
            .map(|&i| (ring.vars().name(i).to_string(), ring.vars().weight(i))),
    )?;
    let sub = PolyRing::new(sub_table, ring.field())?;
    let mut gens = Vec::new();
    for g in gb.elements() {
        if drop.iter().any(|&i| g.involves(i)) {
            continue;
        }
        gens.push(g.rename_into(&sub)?);
    }
    IdealPresentation::new(&sub, gens)
}

/// Kernel of the map `source -> target` sending each source variable to its
/// image (by name; unmapped variables go to the same-named target variable).
/// Computed by eliminating the target variables from the graph ideal.
pub fn kernel_of_ring_map(
    source: &Arc<PolyRing>,
    target: &Arc<PolyRing>,
    images: &BTreeMap<String, Polynomial>,
    budget: &Budget,
) -> Result<IdealPresentation, AlgebraError> {
    if source.field() != target.field() {
        return Err(AlgebraError::AmbientMismatch);
    }
    let mut renamed = Vec::with_capacity(target.nvars());
    let mut scratch = source.vars().clone();
    for v in target.vars().iter() {
        let name = fresh_name(&scratch, &v.name);
        scratch = scratch.concat(&VariableTable::new([(name.clone(), v.weight)])?)?;
        renamed.push((name, v.weight));
    }
    let combined = PolyRing::new(
        source.vars().concat(&VariableTable::new(renamed)?)?,
        source.field(),
    )?;
    let ns = source.nvars();
    let mut graph = Vec::with_capacity(ns);
    for (i, v) in source.vars().iter().enumerate() {
        let image = match images.get(&v.name) {
            Some(p) => {
                if !p.ring().same_ambient(target) {
                    return Err(AlgebraError::AmbientMismatch);
                }
                p.clone()
            }
            None => Polynomial::var_named(target, &v.name)
                .map_err(|_| AlgebraError::UnassignedVariable(v.name.clone()))?,
        };
        let lhs = Polynomial::var(&combined, i);
        graph.push(&lhs - &shift_into(&image, &combined, ns));
    }
    let ideal = IdealPresentation::new(&combined, graph)?;
    let drop: Vec<usize> = (ns..combined.nvars()).collect();
    let elim = eliminate(&ideal, &drop, budget)?;
    let gens = elim
        .generators()
        .iter()
        .map(|g| g.rename_into(source))
        .collect::<Result<Vec<_>, _>>()?;
    IdealPresentation::new(source, gens)
}

/// Equality of ideals: each generating set reduces to zero modulo a
/// Groebner basis of the other.
pub fn ideal_equal(
    a: &IdealPresentation,
    b: &IdealPresentation,
    budget: &Budget,
) -> Result<bool, AlgebraError> {
    if !a.ring().same_ambient(b.ring()) {
        return Err(AlgebraError::AmbientMismatch);
    }
    Ok(ideal_contains(b, a, budget)? && ideal_contains(a, b, budget)?)
}

/// Whether every generator of `inner` lies in `outer`.
pub fn ideal_contains(
    outer: &IdealPresentation,
    inner: &IdealPresentation,
    budget: &Budget,
) -> Result<bool, AlgebraError> {
    let gb = buchberger(outer, outer.ring().order(), budget)?;
    for g in inner.generators() {
        if !gb.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every S-polynomial of basis pairs reduces to zero. Pairs with coprime
/// leading monomials are skipped, as they always reduce to zero.
pub fn satisfies_buchberger_criterion(gb: &GroebnerBasis) -> bool {
    let els = gb.elements();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            if els[i].leading_monomial().unwrap().is_coprime(els[j].leading_monomial().unwrap()) {
                continue;
            }
            let s = s_polynomial(&els[i], &els[j]);
            match normal_form(&s, gb) {
                Ok(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// Reducedness: monic, and no term of any element divisible by another
/// element's leading monomial.
pub fn is_reduced(gb: &GroebnerBasis) -> bool {
    let els = gb.elements();
    let lms = gb.leading_monomials();
    els.iter().enumerate().all(|(i, g)| {
        g.leading_coeff().map(|c| c.is_one()).unwrap_or(false)
            && g.terms().iter().all(|t| {
                lms.iter()
                    .enumerate()
                    .all(|(k, lm)| k == i || !lm.divides(&t.monomial))
            })
    })
}
