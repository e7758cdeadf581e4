//! Coefficient fields: the rationals and prime fields.
//!
//! Every coefficient is carried as a [`Scalar`] (an exact rational). Over a
//! prime field the scalar is always an integer residue in `[0, p)`.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;

pub use num_rational::BigRational as Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

impl CoefficientField {
    /// Prime field `GF(p)`, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if is_prime(p) {
            Ok(CoefficientField::PrimeField(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        match *self {
            CoefficientField::Rationals => Ok(()),
            CoefficientField::PrimeField(p) if is_prime(p) => Ok(()),
            CoefficientField::PrimeField(p) => Err(AlgebraError::NotPrime(p)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => p,
        }
    }

    fn modulus(&self) -> Option<BigInt> {
        match *self {
            CoefficientField::Rationals => None,
            CoefficientField::PrimeField(p) => Some(BigInt::from(p)),
        }
    }

    /// Bring an arbitrary rational into canonical form for this field.
    ///
    /// Over `GF(p)` a denominator divisible by `p` has no image; callers that
    /// parse user input should go through [`CoefficientField::try_embed`].
    pub fn embed(&self, value: Scalar) -> Scalar {
        self.try_embed(value)
            .expect("denominator divisible by the characteristic")
    }

    pub fn try_embed(&self, value: Scalar) -> Result<Scalar, AlgebraError> {
        match self.modulus() {
            None => Ok(value),
            Some(p) => {
                let num = value.numer().mod_floor(&p);
                let den = value.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(AlgebraError::NonInvertibleLiteral(self.characteristic()));
                }
                let inv = mod_inverse(&den, &p);
                Ok(Scalar::from_integer((num * inv).mod_floor(&p)))
            }
        }
    }

    pub fn from_int(&self, value: i64) -> Scalar {
        self.embed(Scalar::from_integer(BigInt::from(value)))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self.modulus() {
            None => a + b,
            Some(p) => Scalar::from_integer((a.numer() + b.numer()).mod_floor(&p)),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self.modulus() {
            None => a - b,
            Some(p) => Scalar::from_integer((a.numer() - b.numer()).mod_floor(&p)),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self.modulus() {
            None => -a,
            Some(p) => Scalar::from_integer((-a.numer()).mod_floor(&p)),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self.modulus() {
            None => a * b,
            Some(p) => Scalar::from_integer((a.numer() * b.numer()).mod_floor(&p)),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match self.modulus() {
            None => a.recip(),
            Some(p) => Scalar::from_integer(mod_inverse(a.numer(), &p)),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => f.write_str("QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.mod_floor(p).extended_gcd(p);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(p)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Integer value of a scalar if it has denominator one and fits an `i64`.
pub fn as_small_integer(s: &Scalar) -> Option<i64> {
    if s.is_integer() {
        s.numer().to_i64()
    } else {
        None
    }
}

pub(crate) fn is_negative(s: &Scalar) -> bool {
    s.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic_stays_reduced() {
        let f = CoefficientField::prime(7).unwrap();
        let a = f.from_int(-1);
        assert_eq!(a, Scalar::from_integer(6.into()));
        let b = f.from_int(3);
        assert_eq!(f.mul(&a, &b), Scalar::from_integer(4.into()));
        assert_eq!(f.mul(&b, &f.inv(&b)), f.one());
        let half = f.embed(Scalar::new(1.into(), 2.into()));
        assert_eq!(half, Scalar::from_integer(4.into()));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(CoefficientField::prime(9).is_err());
        assert!(CoefficientField::prime(1).is_err());
        assert!(CoefficientField::prime(2).is_ok());
    }

    #[test]
    fn rational_values_reduced() {
        let q = CoefficientField::Rationals;
        let a = Scalar::new(2.into(), 4.into());
        assert_eq!(*a.numer(), 1.into());
        assert_eq!(q.inv(&a), q.from_int(2));
    }

    #[test]
    fn literal_with_characteristic_denominator() {
        let f = CoefficientField::prime(5).unwrap();
        assert!(f.try_embed(Scalar::new(1.into(), 5.into())).is_err());
    }
}
