//! Recognising products of cyclotomic polynomials.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::AlgebraError;
use crate::intpoly::IntPoly;

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// `Phi_n`, built from `t^n - 1 = prod_{d | n} Phi_d`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1);
    let mut p = IntPoly::monomial(n as usize).sub(&IntPoly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.exact_div(&cyclotomic_polynomial(d)).expect("Phi_d divides t^n - 1");
        }
    }
    p
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CyclotomicVerdict {
    /// `p = sign * prod Phi_n^mult`, factors ascending in `n`.
    Product { sign: i8, factors: Vec<(u64, u32)> },
    /// Dividing out every cyclotomic factor leaves a non-unit cofactor.
    NotProduct {
        extracted: Vec<(u64, u32)>,
        cofactor: IntPoly,
    },
}

impl CyclotomicVerdict {
    pub fn is_product(&self) -> bool {
        matches!(self, CyclotomicVerdict::Product { .. })
    }
}

/// Trial division by every `Phi_n` with `phi(n) <= deg p`. Since
/// `phi(n) >= sqrt(n/2)`, only `n <= 2 deg^2` can qualify.
pub fn cyclotomic_product_test(p: &IntPoly) -> Result<CyclotomicVerdict, AlgebraError> {
    let Some(deg) = p.degree() else {
        return Err(AlgebraError::Precondition(
            "the zero polynomial has no factorization".into(),
        ));
    };
    let lc = p.leading_coeff().unwrap();
    if !lc.abs().is_one() {
        // Cyclotomic polynomials are monic.
        return Ok(CyclotomicVerdict::NotProduct {
            extracted: Vec::new(),
            cofactor: p.clone(),
        });
    }
    let mut rest = p.clone();
    let mut factors = Vec::new();
    let bound = 2 * (deg as u64) * (deg as u64);
    for n in 1..=bound {
        let remaining = rest.degree().unwrap() as u64;
        if remaining == 0 {
            break;
        }
        if euler_phi(n) > remaining {
            continue;
        }
        let phi = cyclotomic_polynomial(n);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    if rest.degree() == Some(0) {
        let c = &rest.coeffs()[0];
        let sign = if *c == BigInt::one() { 1 } else { -1 };
        Ok(CyclotomicVerdict::Product { sign, factors })
    } else {
        Ok(CyclotomicVerdict::NotProduct {
            extracted: factors,
            cofactor: rest,
        })
    }
}
