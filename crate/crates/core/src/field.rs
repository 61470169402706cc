//! Exact scalar fields: the rationals and prime fields of odd characteristic below 2^31.

use std::fmt::Debug;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default 31-bit prime. It is congruent to 1 mod 4, so -1 is a square.
pub const DEFAULT_PRIME: u64 = 2_147_483_629;

/// Arithmetic over an exact field. Implementors are cheap to clone.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// `None` when the denominator is not invertible in this field.
    fn from_rational(&self, v: &BigRational) -> Option<Self::Elem>;
    /// Rationals map to themselves; residues map to their representative in `[0, p)`.
    fn to_rational(&self, a: &Self::Elem) -> BigRational;
    fn modulus(&self) -> Option<u64>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `a -= f * b`
    #[inline]
    fn sub_mul_assign(&self, a: &mut Self::Elem, f: &Self::Elem, b: &Self::Elem) {
        *a = self.sub(a, &self.mul(f, b));
    }

    /// `a += f * b`
    #[inline]
    fn add_mul_assign(&self, a: &mut Self::Elem, f: &Self::Elem, b: &Self::Elem) {
        *a = self.add(a, &self.mul(f, b));
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The field of rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn from_rational(&self, v: &BigRational) -> Option<BigRational> {
        Some(v.clone())
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn modulus(&self) -> Option<u64> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-1000..=1000))
    }
    fn sub_mul_assign(&self, a: &mut BigRational, f: &BigRational, b: &BigRational) {
        *a -= f * b;
    }
    fn add_mul_assign(&self, a: &mut BigRational, f: &BigRational, b: &BigRational) {
        *a += f * b;
    }
}

/// The prime field F_p for an odd prime p < 2^31, with Barrett reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    mu: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        let mu = u64::MAX / p;
        Ok(Self { p, mu })
    }

    pub fn default_prime() -> Self {
        Self::new(DEFAULT_PRIME).expect("default prime is prime")
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduce `x < p^2`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.mu as u128) >> 64) as u64;
        let mut r = x.wrapping_sub(q.wrapping_mul(self.p));
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(acc * b);
            }
            b = self.reduce(b * b);
            e >>= 1;
        }
        acc
    }

    /// A square root of -1, when p = 1 mod 4.
    pub fn sqrt_minus_one(&self) -> Option<u64> {
        if self.p % 4 != 1 {
            return None;
        }
        (2..self.p).find_map(|g| {
            let r = self.pow(g, (self.p - 1) / 4);
            (self.reduce(r * r) == self.p - 1).then_some(r)
        })
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline(always)]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline(always)]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn from_rational(&self, v: &BigRational) -> Option<u64> {
        let d = self.from_bigint(v.denom());
        self.inv(&d).map(|di| self.mul(&self.from_bigint(v.numer()), &di))
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn modulus(&self) -> Option<u64> {
        Some(self.p)
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    #[inline(always)]
    fn sub_mul_assign(&self, a: &mut u64, f: &u64, b: &u64) {
        let t = self.reduce(f * b);
        *a = if *a >= t { *a - t } else { *a + self.p - t };
    }
    #[inline(always)]
    fn add_mul_assign(&self, a: &mut u64, f: &u64, b: &u64) {
        let s = *a + self.reduce(f * b);
        *a = if s >= self.p { s - self.p } else { s };
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Least common multiple of denominators, used to clear a rational vector to integers.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Gcd of the absolute values of numerators (zero if all vanish).
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_prime_properties() {
        assert!(is_prime(DEFAULT_PRIME));
        assert_eq!(DEFAULT_PRIME % 4, 1);
        let f = PrimeField::default_prime();
        let i = f.sqrt_minus_one().unwrap();
        assert_eq!(f.mul(&i, &i), f.p() - 1);
    }

    #[test]
    fn barrett_matches_remainder() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let p = f.p();
        for &(a, b) in &[(p - 1, p - 1), (123456789, 987654321), (0, 5), (p - 2, 2)] {
            assert_eq!(f.mul(&a, &b), ((a as u128 * b as u128) % p as u128) as u64);
        }
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(15).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(13).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.mul(&f.from_rational(&half).unwrap(), &2), 1);
        let third = BigRational::new(1.into(), 13.into());
        assert!(f.from_rational(&third).is_none());
    }
}
