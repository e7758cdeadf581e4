use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::Monomial;

/// Monomial orders used by the Groebner engine.
///
/// `WeightedGrevlex` compares weighted degree, then breaks ties reverse
/// lexicographically (the monomial with the smaller exponent in the last
/// differing variable is larger). `Block` first compares the part of the
/// monomial in the eliminated variables (by weighted grevlex on those
/// variables) and falls back to `inner` on ties, so any monomial touching an
/// eliminated variable sits above every monomial free of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    WeightedGrevlex,
    Block {
        eliminated: Vec<usize>,
        inner: Box<MonomialOrder>,
    },
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::WeightedGrevlex
    }
}

impl MonomialOrder {
    /// Elimination order for the given variable indices on top of weighted grevlex.
    pub fn eliminating(vars: impl IntoIterator<Item = usize>) -> Self {
        let mut eliminated: Vec<usize> = vars.into_iter().collect();
        eliminated.sort_unstable();
        eliminated.dedup();
        if eliminated.is_empty() {
            return MonomialOrder::WeightedGrevlex;
        }
        MonomialOrder::Block {
            eliminated,
            inner: Box::new(MonomialOrder::WeightedGrevlex),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match self {
            MonomialOrder::WeightedGrevlex => grevlex(a.exponents(), b.exponents(), weights, None),
            MonomialOrder::Block { eliminated, inner } => {
                grevlex(a.exponents(), b.exponents(), weights, Some(eliminated))
                    .then_with(|| inner.compare(a, b, weights))
            }
        }
    }

    /// Largest variable index the order refers to, if any.
    pub(crate) fn max_index(&self) -> Option<usize> {
        match self {
            MonomialOrder::WeightedGrevlex => None,
            MonomialOrder::Block { eliminated, inner } => {
                eliminated.iter().copied().chain(inner.max_index()).max()
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32], weights: &[u32], only: Option<&[usize]>) -> Ordering {
    let deg = |m: &[u32]| -> u64 {
        match only {
            None => m
                .iter()
                .zip(weights)
                .map(|(&e, &w)| e as u64 * w as u64)
                .sum(),
            Some(idx) => idx.iter().map(|&i| m[i] as u64 * weights[i] as u64).sum(),
        }
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    let rev = |i: usize| -> Ordering { b[i].cmp(&a[i]) };
    match only {
        None => (0..a.len())
            .rev()
            .map(rev)
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal),
        Some(idx) => idx
            .iter()
            .rev()
            .map(|&i| rev(i))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal),
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::WeightedGrevlex => f.write_str("grevlex"),
            MonomialOrder::Block { eliminated, inner } => {
                write!(f, "block({eliminated:?}; {inner})")
            }
        }
    }
}
