//! Rees algebras and associated graded rings of homogeneous ideals.
//!
//! The Rees algebra `R[I tau]` is presented as `R[T1..Tr]` modulo the kernel
//! of `Ti -> gi tau`, found by eliminating `tau` from the graph ideal. The
//! associated graded ring is then `Rees / I Rees`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::AlgebraError;
use crate::graded::RingPresentation;
use crate::groebner::{buchberger, eliminate, fresh_name, ideal_equal, Budget, IdealPresentation};
use crate::poly::{PolyRing, Polynomial, VariableTable};

/// Name of the `i`-th Rees variable, counting from one.
pub fn rees_variable(i: usize) -> String {
    alloc::format!("T{}", i + 1)
}

#[derive(Clone, Debug)]
pub struct ReesPresentation {
    pub base: RingPresentation,
    pub ideal_gens: Vec<Polynomial>,
    /// Ring on the base variables followed by `T1..Tr`, with `Ti` of weight
    /// `deg gi`.
    pub result: RingPresentation,
}

impl ReesPresentation {
    /// Whether every relation of the result maps to zero under `Ti -> gi tau`
    /// modulo the base relations.
    pub fn relations_vanish(&self) -> Result<bool, AlgebraError> {
        let base = self.base.ring();
        let (ring, tau) = with_tau(base)?;
        let n = base.nvars();
        let mut images: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(&ring, i)).collect();
        let tau_poly = Polynomial::var(&ring, tau);
        for g in &self.ideal_gens {
            images.push(&g.rename_into(&ring)? * &tau_poly);
        }
        let rels = self
            .base
            .relations()
            .iter()
            .map(|r| r.rename_into(&ring))
            .collect::<Result<Vec<_>, _>>()?;
        let gb = buchberger(
            &IdealPresentation::new(&ring, rels)?,
            ring.order(),
            self.base.budget(),
        )?;
        for r in self.result.relations() {
            if !gb.contains(&r.evaluate(&images, &ring))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The base variables plus a fresh weight-one `tau`, and its index.
fn with_tau(base: &Arc<PolyRing>) -> Result<(Arc<PolyRing>, usize), AlgebraError> {
    let tau = fresh_name(base.vars(), "tau");
    let table = base.vars().concat(&VariableTable::new([(tau, 1)])?)?;
    Ok((PolyRing::new(table, base.field())?, base.nvars()))
}

fn check_gens(base: &RingPresentation, gens: &[Polynomial]) -> Result<(), AlgebraError> {
    if gens.is_empty() {
        return Err(AlgebraError::Precondition("the ideal needs at least one generator".into()));
    }
    for g in gens {
        if !g.ring().same_ambient(base.ring()) {
            return Err(AlgebraError::AmbientMismatch);
        }
        if g.is_zero() || !g.is_homogeneous() || g.weighted_degree() == Some(0) {
            return Err(AlgebraError::Precondition(alloc::format!(
                "ideal generator `{g}` must be homogeneous of positive degree"
            )));
        }
    }
    for i in 0..gens.len() {
        let name = rees_variable(i);
        if base.ring().vars().index_of(&name).is_some() {
            return Err(AlgebraError::InvalidVariables(alloc::format!(
                "`{name}` is reserved for Rees variables"
            )));
        }
    }
    Ok(())
}

/// Drop generators already in the ideal of the earlier ones, processing by
/// ascending degree. For homogeneous input this leaves a minimal set.
fn prune(ring: &Arc<PolyRing>, mut gens: Vec<Polynomial>, budget: &Budget) -> Result<Vec<Polynomial>, AlgebraError> {
    gens.sort_by(|a, b| {
        a.weighted_degree()
            .cmp(&b.weighted_degree())
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for g in gens {
        let ideal = IdealPresentation::new(ring, kept.iter().cloned())?;
        if !buchberger(&ideal, ring.order(), budget)?.contains(&g)? {
            kept.push(g.monic());
        }
    }
    Ok(kept)
}

pub fn rees_presentation(
    base: &RingPresentation,
    ideal_gens: &[Polynomial],
) -> Result<ReesPresentation, AlgebraError> {
    check_gens(base, ideal_gens)?;
    let budget = *base.budget();
    let b = base.ring();
    let n = b.nvars();
    let degs: Vec<u32> = ideal_gens.iter().map(|g| g.weighted_degree().unwrap()).collect();

    // Graph ideal in base[T, tau] with Ti of weight deg gi + 1 so that
    // Ti - gi tau is homogeneous.
    let (tau_ring, _) = with_tau(b)?;
    let tau_name = tau_ring.vars().name(n).to_string();
    let mut table = b.vars().clone();
    table = table.concat(&VariableTable::new(
        degs.iter().enumerate().map(|(i, &d)| (rees_variable(i), d + 1)),
    )?)?;
    table = table.concat(&VariableTable::new([(tau_name, 1)])?)?;
    let graph_ring = PolyRing::new(table, b.field())?;
    let tau = n + ideal_gens.len();
    let tau_poly = Polynomial::var(&graph_ring, tau);
    let mut graph = Vec::new();
    for r in base.relations() {
        graph.push(r.rename_into(&graph_ring)?);
    }
    for (i, g) in ideal_gens.iter().enumerate() {
        let t = Polynomial::var(&graph_ring, n + i);
        graph.push(&t - &(&g.rename_into(&graph_ring)? * &tau_poly));
    }
    let elim = eliminate(&IdealPresentation::new(&graph_ring, graph)?, &[tau], &budget)?;

    let result_table = b.vars().concat(&VariableTable::new(
        degs.iter().enumerate().map(|(i, &d)| (rees_variable(i), d)),
    )?)?;
    let result_ring = PolyRing::new(result_table, b.field())?;
    let rels = elim
        .generators()
        .iter()
        .map(|g| g.rename_into(&result_ring))
        .collect::<Result<Vec<_>, _>>()?;
    let rels = prune(&result_ring, rels, &budget)?;
    Ok(ReesPresentation {
        base: base.clone(),
        ideal_gens: ideal_gens.to_vec(),
        result: RingPresentation::new(&result_ring, rels)?.with_budget(budget),
    })
}

#[derive(Clone, Debug)]
pub struct AssociatedGraded {
    pub ring: RingPresentation,
    /// Internal (weighted) degree of each variable of `ring`.
    pub internal_degrees: Vec<u32>,
    /// Whether the ideal was the one generated by all variables, in which case
    /// `ring` uses the base variable names with the adic grading (weight 1).
    pub maximal_ideal: bool,
    /// For the maximal ideal of a ring generated in degree one, whether the
    /// result equals the base ring; `None` when the comparison does not apply.
    pub agrees_with_base: Option<bool>,
}

/// Position of each base variable among `gens`, if `gens` are exactly the
/// variables up to order and nonzero scalars.
fn variable_generators(base: &RingPresentation, gens: &[Polynomial]) -> Option<Vec<usize>> {
    let n = base.nvars();
    if gens.len() != n {
        return None;
    }
    let mut which = Vec::with_capacity(n);
    for g in gens {
        if g.len() != 1 {
            return None;
        }
        let m = g.leading_monomial()?;
        if m.total_degree() != 1 {
            return None;
        }
        let i = m.support().next()?;
        if which.contains(&i) {
            return None;
        }
        which.push(i);
    }
    Some(which)
}

pub fn associated_graded(
    base: &RingPresentation,
    ideal_gens: &[Polynomial],
) -> Result<AssociatedGraded, AlgebraError> {
    let rees = rees_presentation(base, ideal_gens)?;
    let budget = *base.budget();
    let b = base.ring();
    let n = b.nvars();
    let rr = rees.result.ring();

    if let Some(which) = variable_generators(base, ideal_gens) {
        // gr = k[T] / (Rees relations with the base variables set to zero);
        // Ti is the initial form of the variable gi, so it takes that name.
        let gr_table = VariableTable::new(which.iter().map(|&i| (b.vars().name(i).to_string(), 1)))?;
        let gr_ring = PolyRing::new(gr_table, b.field())?;
        let mut images: Vec<Polynomial> = (0..n).map(|_| Polynomial::zero(&gr_ring)).collect();
        images.extend((0..ideal_gens.len()).map(|k| Polynomial::var(&gr_ring, k)));
        let rels: Vec<Polynomial> = rees
            .result
            .relations()
            .iter()
            .map(|r| r.evaluate(&images, &gr_ring))
            .filter(|r| !r.is_zero())
            .collect();
        let rels = prune(&gr_ring, rels, &budget)?;
        let ring = RingPresentation::new(&gr_ring, rels)?.with_budget(budget);
        let standard = b.weights().iter().all(|&w| w == 1);
        let agrees_with_base = if standard {
            let same = &gr_ring;
            let base_in = IdealPresentation::new(
                same,
                base.relations().iter().map(|r| r.rename_into(same)).collect::<Result<Vec<_>, _>>()?,
            )?;
            let gr_in = IdealPresentation::new(
                same,
                ring.relations().iter().map(|r| r.rename_into(same)).collect::<Result<Vec<_>, _>>()?,
            )?;
            Some(ideal_equal(&base_in, &gr_in, &budget)?)
        } else {
            None
        };
        return Ok(AssociatedGraded {
            internal_degrees: which.iter().map(|&i| b.vars().weight(i)).collect(),
            ring,
            maximal_ideal: true,
            agrees_with_base,
        });
    }

    let rels = rees
        .result
        .relations()
        .iter()
        .cloned()
        .chain(ideal_gens.iter().map(|g| g.rename_into(rr)).collect::<Result<Vec<_>, _>>()?)
        .collect();
    let rels = prune(rr, rels, &budget)?;
    Ok(AssociatedGraded {
        internal_degrees: rr.weights().to_vec(),
        ring: RingPresentation::new(rr, rels)?.with_budget(budget),
        maximal_ideal: false,
        agrees_with_base: None,
    })
}

/// For each polynomial (over the variables of `ring`), whether it is zero in
/// `ring`. Names are matched, so the input may live in another ring with the
/// same variable names.
pub fn relations_hold(ring: &RingPresentation, polys: &[Polynomial]) -> Result<Vec<bool>, AlgebraError> {
    let gb = ring.groebner()?;
    polys
        .iter()
        .map(|p| gb.contains(&p.rename_into(ring.ring())?))
        .collect()
}
