//! Monomial ideals and Hilbert series of weighted graded quotients.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::intpoly::IntPoly;
use crate::poly::Monomial;

/// Monomial ideal given by its minimal generators (an antichain under divisibility).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens.into_iter().collect()),
        }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    /// Krull dimension of the quotient: `n` minus the size of a smallest set
    /// of variables meeting the support of every generator. `None` for the
    /// unit ideal (empty quotient).
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let supports: Vec<Vec<usize>> = self.gens.iter().map(|g| g.support().collect()).collect();
        let mut best = self.nvars;
        let mut chosen = alloc::vec![false; self.nvars];
        min_hitting_set(&supports, &mut chosen, 0, &mut best);
        Some(self.nvars - best)
    }

    /// Numerator `N(t)` with `HS = N(t) / prod (1 - t^{w_i})`, by pivoting on
    /// a variable: `N(I) = N(I + (x^e)) + t^{e w} N(I : x^e)`.
    pub fn hilbert_numerator(&self, weights: &[u32]) -> IntPoly {
        numerator(self.gens.clone(), weights)
    }

    /// For each variable, the exponent of a pure power among the generators.
    pub fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        (0..self.nvars)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.support().all(|k| k == i) && !g.is_one())
                    .map(|g| g.exponent(i))
                    .min()
            })
            .collect()
    }

    /// Monomials outside the ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        let bounds = self.pure_power_bounds()?;
        let mut out = Vec::new();
        let mut cur = Monomial::one(self.nvars);
        self.walk(0, &bounds, &mut cur, &mut out);
        Some(out)
    }

    fn walk(&self, i: usize, bounds: &[u32], cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.nvars {
            out.push(cur.clone());
            return;
        }
        for e in 0..bounds[i] {
            cur.exponents_mut()[i] = e;
            // Raising exponents only keeps a monomial inside the ideal.
            if self.contains(cur) {
                break;
            }
            self.walk(i + 1, bounds, cur, out);
        }
        cur.exponents_mut()[i] = 0;
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|g| g.total_degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

fn min_hitting_set(supports: &[Vec<usize>], chosen: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let unhit = supports
        .iter()
        .filter(|s| !s.iter().any(|&i| chosen[i]))
        .min_by_key(|s| s.len());
    match unhit {
        None => *best = size,
        Some(s) => {
            for &i in s {
                chosen[i] = true;
                min_hitting_set(supports, chosen, size + 1, best);
                chosen[i] = false;
            }
        }
    }
}

fn numerator(gens: Vec<Monomial>, weights: &[u32]) -> IntPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return IntPoly::one();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, g)| gens[i + 1..].iter().all(|h| g.is_coprime(h)));
    if pairwise_coprime {
        return gens.iter().fold(IntPoly::one(), |acc, g| {
            acc.mul(&IntPoly::one_minus_power(g.weighted_degree(weights)))
        });
    }
    // Pivot on the variable shared by the most generators.
    let n = weights.len();
    let pivot = (0..n)
        .max_by_key(|&i| {
            let count = gens.iter().filter(|g| g.exponent(i) > 0).count();
            (count, core::cmp::Reverse(i))
        })
        .unwrap();
    let e = gens
        .iter()
        .map(|g| g.exponent(pivot))
        .filter(|&e| e > 0)
        .min()
        .unwrap();
    let p = Monomial::var(n, pivot, e);

    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !p.divides(g)).cloned().collect();
    plus.push(p.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut m = g.clone();
            let ex = m.exponent(pivot);
            m.exponents_mut()[pivot] = ex.saturating_sub(e);
            m
        })
        .collect();
    let shift = p.weighted_degree(weights) as usize;
    numerator(plus, weights).add(&numerator(colon, weights).shift(shift))
}

/// `numerator / prod (1 - t^w)` over the denominator weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    pub numerator: IntPoly,
    pub denominator_weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(numerator: IntPoly, mut denominator_weights: Vec<u32>) -> Self {
        denominator_weights.sort_unstable();
        HilbertSeries {
            numerator,
            denominator_weights,
        }
    }

    /// Coefficients of `t^0 .. t^n` of the power-series expansion.
    pub fn coefficients(&self, n: usize) -> Vec<BigInt> {
        self.numerator.series_over(&self.denominator_weights, n)
    }

    fn denominator(&self) -> IntPoly {
        self.denominator_weights
            .iter()
            .fold(IntPoly::one(), |acc, &w| acc.mul(&IntPoly::one_minus_power(w)))
    }

    /// Equality as rational functions.
    pub fn same_function(&self, other: &HilbertSeries) -> bool {
        self.numerator.mul(&other.denominator()) == other.numerator.mul(&self.denominator())
    }
}

impl fmt::Display for HilbertSeries {
    /// `(num) / ((1 - t^w1)^k1*(1 - t^w2)^k2)`, exponents ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / (", self.numerator)?;
        if self.denominator_weights.is_empty() {
            f.write_str("1")?;
        }
        let mut i = 0;
        let ws = &self.denominator_weights;
        let mut first = true;
        while i < ws.len() {
            let w = ws[i];
            let k = ws[i..].iter().take_while(|&&x| x == w).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if w == 1 {
                f.write_str("(1 - t)")?;
            } else {
                write!(f, "(1 - t^{w})")?;
            }
            if k > 1 {
                write!(f, "^{k}")?;
            }
            i += k;
        }
        f.write_str(")")
    }
}
