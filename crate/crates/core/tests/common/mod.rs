#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use noulrich_core::field::Scalar;
use noulrich_core::{CoefficientField, Monomial, PolyRing, Polynomial, RingPresentation, VariableTable};
use num_traits::{One, Zero};

pub fn ring_of(spec: &[(&str, u32)], field: CoefficientField) -> Arc<PolyRing> {
    PolyRing::new(VariableTable::new(spec.iter().copied()).unwrap(), field).unwrap()
}

pub fn presentation(spec: &[(&str, u32)], rels: &[&str]) -> RingPresentation {
    RingPresentation::parse(&ring_of(spec, CoefficientField::Rationals), rels).unwrap()
}

pub const TH_CI_VARS: [(&str, u32); 5] = [("s", 3), ("t", 3), ("x", 2), ("y", 2), ("z", 2)];

pub fn th_ci(f: &str) -> RingPresentation {
    let st = format!("s*t - ({f})");
    presentation(&TH_CI_VARS, &["s^2 - x^3", &st, "t^2 - z^3"])
}

/// Variables `s1..sn` of weight 3 and `xij` (i <= j) of weight 2 with
/// relations `si*sj - xij^3`.
pub fn family(n: usize) -> RingPresentation {
    let mut vars: Vec<(String, u32)> = (1..=n).map(|i| (format!("s{i}"), 3)).collect();
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            vars.push((format!("x{i}{j}"), 2));
            rels.push(format!("s{i}*s{j} - x{i}{j}^3"));
        }
    }
    let ring = PolyRing::new(VariableTable::new(vars).unwrap(), CoefficientField::Rationals).unwrap();
    let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
    RingPresentation::parse(&ring, &rels).unwrap()
}

pub fn polys(r: &RingPresentation, xs: &[&str]) -> Vec<Polynomial> {
    xs.iter().map(|x| r.parse_element(x).unwrap()).collect()
}

/// Monomials of weighted degree `d`, by brute-force recursion.
pub fn monomials(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(w: &[u32], d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == w.len() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wi = w[cur.len()];
        for e in 0..=d / wi {
            cur.push(e);
            go(w, d - e * wi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<Scalar>>, field: CoefficientField) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| field.mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    rows[i][k] = field.sub(&rows[i][k], &field.mul(&f, &pivot[k]));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// `dim_k (k[x]/(gens))_d` by row-reducing the degree-`d` Macaulay matrix:
/// rows are `m * g` for monomials `m` and homogeneous generators `g`.
pub fn macaulay_dimension(ring: &Arc<PolyRing>, gens: &[Polynomial], d: u32) -> usize {
    let weights = ring.weights().to_vec();
    let cols = monomials(&weights, d);
    let index: BTreeMap<Vec<u32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(dg) = g.weighted_degree() else { continue };
        if dg > d {
            continue;
        }
        for m in monomials(&weights, d - dg) {
            let mut row = vec![Scalar::zero(); cols.len()];
            for t in g.terms() {
                let e: Vec<u32> = t.monomial.exponents().iter().zip(&m).map(|(a, b)| a + b).collect();
                row[index[&e]] = t.coeff.clone();
            }
            rows.push(row);
        }
    }
    cols.len() - rank(rows, ring.field())
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}
pub mod props;
