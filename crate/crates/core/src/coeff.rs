//! Coefficient rings: prime fields `F_p` and the p-local integers `Z_(p)`.
//!
//! Both are handled as discrete valuation rings. A field is the degenerate
//! case in which every nonzero element has valuation zero, so the Gröbner and
//! Smith-normal-form code never needs to distinguish the two beyond asking
//! for valuations and exact quotients.
//!
//! Scalars are exact rationals. Over `F_p` they are kept reduced to an integer
//! in `0..p`; over `Z_(p)` every denominator is coprime to `p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

pub type Scalar = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "p")]
pub enum CoefficientRing {
    PrimeField(u64),
    PLocalIntegers(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `x = unit * p^exponent` with `unit` a p-local unit. Zero has no normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub unit: BigRational,
    pub exponent: u32,
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn p_local(p: u64) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(CoefficientRing::PLocalIntegers(p))
    }

    pub fn p(&self) -> u64 {
        match *self {
            CoefficientRing::PrimeField(p) | CoefficientRing::PLocalIntegers(p) => p,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoefficientRing::PrimeField(_))
    }

    /// Gorenstein shift of the ungraded base: 0 for a field, -1 for `Z_(p)`.
    pub fn base_shift(&self) -> i64 {
        match self {
            CoefficientRing::PrimeField(_) => 0,
            CoefficientRing::PLocalIntegers(_) => -1,
        }
    }

    /// Krull dimension of the base.
    pub fn krull_dimension(&self) -> usize {
        match self {
            CoefficientRing::PrimeField(_) => 0,
            CoefficientRing::PLocalIntegers(_) => 1,
        }
    }

    fn p_big(&self) -> BigInt {
        BigInt::from(self.p())
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(&self, n: BigInt) -> Scalar {
        self.reduce(Scalar::from_integer(n))
    }

    /// `p^k` as a ring element (zero in `F_p` for `k > 0`).
    pub fn p_power(&self, k: u32) -> Scalar {
        self.reduce(Scalar::from_integer(num_traits::pow(self.p_big(), k as usize)))
    }

    /// Converts an arbitrary rational into the ring, if it lives there.
    pub fn element(&self, x: &BigRational) -> Option<Scalar> {
        if (x.denom() % self.p_big()).is_zero() {
            return None;
        }
        Some(self.reduce(x.clone()))
    }

    fn reduce(&self, x: Scalar) -> Scalar {
        match *self {
            CoefficientRing::PLocalIntegers(_) => x,
            CoefficientRing::PrimeField(p) => {
                let p = BigInt::from(p);
                let den_inv = mod_inverse(&x.denom().mod_floor(&p), &p)
                    .expect("denominator coprime to p");
                let v = (x.numer() * den_inv).mod_floor(&p);
                Scalar::from_integer(v)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.reduce(-a)
    }

    /// p-adic valuation; every nonzero field element has valuation 0.
    pub fn valuation(&self, a: &Scalar) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientRing::PrimeField(_) => Some(0),
            CoefficientRing::PLocalIntegers(_) => Some(p_adic_valuation(a.numer(), self.p())),
        }
    }

    pub fn is_unit(&self, a: &Scalar) -> bool {
        self.valuation(a) == Some(0)
    }

    /// Does `a` divide `b` in the ring?
    pub fn divides(&self, a: &Scalar, b: &Scalar) -> bool {
        match (self.valuation(a), self.valuation(b)) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(va), Some(vb)) => va <= vb,
        }
    }

    /// Exact quotient `b / a`; caller guarantees `a | b`.
    pub fn div_exact(&self, b: &Scalar, a: &Scalar) -> Scalar {
        debug_assert!(self.divides(a, b));
        self.reduce(b / a)
    }

    pub fn normalize(&self, a: &Scalar) -> Option<Normalized> {
        let k = self.valuation(a)?;
        let unit = self.reduce(a / Scalar::from_integer(num_traits::pow(self.p_big(), k as usize)));
        Some(Normalized { unit, exponent: k })
    }

    pub fn from_normalized(&self, n: &Normalized) -> Scalar {
        self.mul(&n.unit, &self.p_power(n.exponent))
    }

    /// Canonical representative of `a` modulo `p^k`, as an integer in `0..p^k`.
    pub fn residue_mod_pk(&self, a: &Scalar, k: u32) -> BigInt {
        let m = num_traits::pow(self.p_big(), k as usize);
        if k == 0 {
            return BigInt::zero();
        }
        let den_inv = mod_inverse(&a.denom().mod_floor(&m), &m).expect("p-local denominator");
        (a.numer() * den_inv).mod_floor(&m)
    }

    pub fn residue_u64(&self, a: &Scalar, k: u32) -> u64 {
        self.residue_mod_pk(a, k).to_u64().expect("residue fits in u64")
    }

    pub fn name(&self) -> String {
        match self {
            CoefficientRing::PrimeField(p) => format!("F_{p}"),
            CoefficientRing::PLocalIntegers(p) => format!("Z_({p})"),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn p_adic_valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        k += 1;
    }
    k
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rejects_composite_primes() {
        assert!(CoefficientRing::prime_field(4).is_err());
        assert!(CoefficientRing::p_local(1).is_err());
        assert!(CoefficientRing::p_local(7).is_ok());
    }

    #[test]
    fn base_shifts() {
        assert_eq!(CoefficientRing::PrimeField(2).base_shift(), 0);
        assert_eq!(CoefficientRing::PLocalIntegers(2).base_shift(), -1);
    }

    #[test]
    fn field_reduction() {
        let f = CoefficientRing::PrimeField(5);
        assert_eq!(f.from_int(7), q(2, 1));
        assert_eq!(f.element(&q(1, 2)).unwrap(), q(3, 1));
        assert_eq!(f.p_power(1), q(0, 1));
        assert!(f.element(&q(1, 5)).is_none());
    }

    #[test]
    fn local_valuations_and_division() {
        let z = CoefficientRing::PLocalIntegers(2);
        assert_eq!(z.valuation(&q(24, 5)), Some(3));
        assert!(z.divides(&q(4, 3), &q(8, 1)));
        assert!(!z.divides(&q(8, 1), &q(4, 1)));
        assert_eq!(z.div_exact(&q(8, 1), &q(4, 3)), q(6, 1));
        assert!(z.element(&q(1, 6)).is_none());
        assert_eq!(z.residue_mod_pk(&q(1, 3), 2), BigInt::from(3));
    }

    proptest! {
        #[test]
        fn normalization_is_compatible_with_rational_arithmetic(
            a in -200i64..200, b in 1i64..50, c in -200i64..200, d in 1i64..50,
        ) {
            let z = CoefficientRing::PLocalIntegers(3);
            let (b, d) = (if b % 3 == 0 { b + 1 } else { b }, if d % 3 == 0 { d + 1 } else { d });
            let x = q(a, b);
            let y = q(c, d);
            if let (Some(nx), Some(ny)) = (z.normalize(&x), z.normalize(&y)) {
                // normal form is unique and reproduces the value
                prop_assert_eq!(z.from_normalized(&nx), x.clone());
                prop_assert!(z.is_unit(&nx.unit));
                let prod = Normalized { unit: &nx.unit * &ny.unit, exponent: nx.exponent + ny.exponent };
                prop_assert_eq!(z.normalize(&z.mul(&x, &y)).unwrap(), prod);
                let sum = z.add(&z.from_normalized(&nx), &z.from_normalized(&ny));
                prop_assert_eq!(sum, &x + &y);
            }
        }
    }
}
