//! Dense univariate polynomials with integer coefficients, written in `t`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    /// `1 - t^k`
    pub fn one_minus_power(k: u32) -> Self {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[0] += 1;
        c[k as usize] -= 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    /// Quotient and remainder by a divisor with leading coefficient `±1`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        let lc = divisor.leading_coeff().expect("division by zero polynomial");
        assert!(lc.abs().is_one(), "divisor must have unit leading coefficient");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = &rem[k] * lc; // lc = ±1 is its own inverse
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &c * d;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient by a unit-leading divisor, if it divides.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Power-series coefficients of `self / prod (1 - t^w)` up to `t^n`.
    pub fn series_over(&self, weights: &[u32], n: usize) -> Vec<BigInt> {
        let mut s: Vec<BigInt> = (0..=n).map(|k| self.coeff(k)).collect();
        for &w in weights {
            let w = w as usize;
            for k in w..=n {
                let prev = s[k - w].clone();
                s[k] += prev;
            }
        }
        s
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers of `t`, e.g. `1 - 2*t + 4*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{abs}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn division_by_monic() {
        // (1 - t)^2 (1 + t^2)
        let p = IntPoly::from_i64(&[1, -2, 2, -2, 1]);
        let phi1 = IntPoly::from_i64(&[-1, 1]);
        let q = p.exact_div(&phi1).unwrap();
        let q = q.exact_div(&phi1).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, 0, 1]));
        assert!(IntPoly::from_i64(&[1, 1, 1]).exact_div(&phi1).is_none());
    }

    #[test]
    fn series_expansion() {
        // 1 / (1 - t)^2 = 1 + 2t + 3t^2 + ...
        let s = IntPoly::one().series_over(&[1, 1], 4);
        assert_eq!(s, (1..=5).map(BigInt::from).collect::<Vec<_>>());
        // (1 - t^3) / (1 - t) = 1 + t + t^2
        let s = IntPoly::one_minus_power(3).series_over(&[1], 5);
        assert_eq!(s, [1, 1, 1, 0, 0, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn printing() {
        assert_eq!(IntPoly::from_i64(&[1, -2, 4, -2, 1]).to_string(), "1 - 2*t + 4*t^2 - 2*t^3 + t^4");
        assert_eq!(IntPoly::from_i64(&[0, -1]).to_string(), "-t");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}
