use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;

/// Arithmetic context for elimination. Prime fields carry their modulus at
/// runtime, so operations go through `&self`.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `None` when the denominator is not invertible.
    fn from_rational(&self, q: &Rational) -> Option<Self::Elem>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
    fn sub(&self, x: &Rational, y: &Rational) -> Rational {
        x - y
    }
    fn mul(&self, x: &Rational, y: &Rational) -> Rational {
        x * y
    }
    fn neg(&self, x: &Rational) -> Rational {
        -x
    }
    fn inv(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero(), "inverting zero");
        x.recip()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Rational) -> Option<Rational> {
        Some(q.clone())
    }
}

/// `Z/pZ` for a prime `p < 2^32`, so products fit in `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 32), "modulus out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_bigint(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        x.mod_floor(&m).to_u64().expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            x as i64 - self.p as i64
        } else {
            x as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.p
    }
    fn sub(&self, x: &u64, y: &u64) -> u64 {
        (x + self.p - y) % self.p
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x) % self.p
    }
    fn inv(&self, x: &u64) -> u64 {
        assert!(*x != 0, "inverting zero");
        self.pow(*x, self.p - 2)
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Rational) -> Option<u64> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return None;
        }
        let num = if q.numer().is_negative() {
            self.neg(&self.reduce_bigint(&-q.numer()))
        } else {
            self.reduce_bigint(q.numer())
        };
        Some(self.mul(&num, &self.inv(&den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(1_000_000_007);
        let x = f.from_i64(-3);
        assert_eq!(f.add(&x, &3), 0);
        assert_eq!(f.mul(&f.inv(&x), &x), 1);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let h = f.from_rational(&half).unwrap();
        assert_eq!(f.mul(&h, &2), 1);
        assert_eq!(f.lift(f.from_i64(-5)), -5);
        let bad = Rational::new(BigInt::from(1), BigInt::from(1_000_000_007u64));
        assert!(f.from_rational(&bad).is_none());
    }
}
