use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring for polynomials and matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientRing {
    /// The prime field of order `p`.
    PrimeField(u32),
    /// The integers; only used for identity checks, never for elimination.
    Integers,
    /// The rationals, used for elimination in characteristic zero.
    Rationals,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = u32::try_from(p).map_err(|_| Error::invalid(format!("prime {p} too large")))?;
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Characteristic of the ring (0 for Z and Q).
    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            CoefficientRing::PrimeField(_) => Scalar::Mod(0),
            CoefficientRing::Integers => Scalar::Int(BigInt::zero()),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u32),
            CoefficientRing::Integers => Scalar::Int(BigInt::from(v)),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => {
                let r = v.mod_floor_u32(*p);
                Scalar::Mod(r)
            }
            CoefficientRing::Integers => Scalar::Int(v.clone()),
            CoefficientRing::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
        }
    }

    /// Builds `num/den`; the denominator must be invertible in the ring.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoefficientRing::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            CoefficientRing::Integers => {
                if num % den != 0 {
                    return Err(Error::NotAField("Integers".into()));
                }
                Ok(Scalar::Int(BigInt::from(num / den)))
            }
            CoefficientRing::PrimeField(_) => {
                let d = self.inv(&self.from_i64(den))?;
                Ok(self.mul(&self.from_i64(num), &d))
            }
        }
    }

    pub fn check(&self, s: &Scalar) -> Result<()> {
        let ok = match (self, s) {
            (CoefficientRing::PrimeField(p), Scalar::Mod(v)) => v < p,
            (CoefficientRing::Integers, Scalar::Int(_)) => true,
            (CoefficientRing::Rationals, Scalar::Rat(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.to_string(),
                right: format!("{s:?}"),
            })
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientRing::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (_, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("scalar kinds do not match ring {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (CoefficientRing::PrimeField(p), Scalar::Mod(x)) => {
                Scalar::Mod(if *x == 0 { 0 } else { p - x })
            }
            (_, Scalar::Int(x)) => Scalar::Int(-x),
            (_, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => panic!("scalar kinds do not match ring {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (CoefficientRing::PrimeField(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (_, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (_, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("scalar kinds do not match ring {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, a) {
            (CoefficientRing::PrimeField(p), Scalar::Mod(x)) => Ok(Scalar::Mod(inv_mod(*x, *p))),
            (CoefficientRing::Integers, _) => Err(Error::NotAField("Integers".into())),
            (CoefficientRing::Rationals, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            _ => Err(Error::RingMismatch {
                left: self.to_string(),
                right: format!("{a:?}"),
            }),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
        }
    }
}

/// Modular inverse of a nonzero residue via Fermat.
pub(crate) fn inv_mod(x: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (x as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// A ring element in canonical form: residues in `0..p`, integers, or
/// fractions in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u32),
    Int(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
        }
    }

    /// Small-integer view, when the value is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod(v) => Some(*v as i64),
            Scalar::Int(v) => v.to_i64(),
            Scalar::Rat(v) if v.is_integer() => v.to_integer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }

    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Int(v) => v.is_negative(),
            Scalar::Rat(v) => v.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
        }
    }
}

trait ModFloorU32 {
    fn mod_floor_u32(&self, p: u32) -> u32;
}

impl ModFloorU32 for BigInt {
    fn mod_floor_u32(&self, p: u32) -> u32 {
        let m = BigInt::from(p);
        let r = ((self % &m) + &m) % &m;
        r.to_u32().expect("residue fits")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_mod_five() {
        let f5 = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f5.inv(&f5.from_i64(2)).unwrap(), Scalar::Mod(3));
    }

    #[test]
    fn one_plus_one_in_f2() {
        let f2 = CoefficientRing::prime_field(2).unwrap();
        assert_eq!(f2.add(&f2.one(), &f2.one()), Scalar::Mod(0));
    }

    #[test]
    fn rational_product_is_reduced() {
        let q = CoefficientRing::Rationals;
        let a = q.from_fraction(2, 3).unwrap();
        let b = q.from_fraction(3, 4).unwrap();
        assert_eq!(q.mul(&a, &b), q.from_fraction(1, 2).unwrap());
        assert_eq!(q.from_fraction(2, 4).unwrap(), q.from_fraction(-1, -2).unwrap());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(matches!(CoefficientRing::prime_field(6), Err(Error::NotPrime(6))));
        assert!(CoefficientRing::prime_field(1).is_err());
    }

    #[test]
    fn inversion_errors() {
        let f7 = CoefficientRing::prime_field(7).unwrap();
        assert!(matches!(f7.inv(&f7.zero()), Err(Error::DivisionByZero)));
        let z = CoefficientRing::Integers;
        assert!(matches!(z.inv(&z.from_i64(3)), Err(Error::NotAField(_))));
        let q = CoefficientRing::Rationals;
        assert!(matches!(q.inv(&q.zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn negative_integers_reduce_canonically() {
        let f5 = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f5.from_i64(-1), Scalar::Mod(4));
        assert_eq!(f5.from_bigint(&BigInt::from(-7)), Scalar::Mod(3));
    }

    #[test]
    fn every_nonzero_residue_inverts() {
        for p in [2u32, 3, 5, 7, 11, 251] {
            for x in 1..p {
                assert_eq!((x as u64 * inv_mod(x, p) as u64) % p as u64, 1);
            }
        }
    }
}
