//! Row storage and elementary row operations for the supported fields.
//!
//! Three layouts: bit-packed `u64` words for GF(2), one byte per entry for
//! odd primes up to 251, and dense arbitrary-precision fractions for Q.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{inv_mod, CoefficientRing, Scalar};
use crate::error::{Error, Result};

pub trait Backend: Clone + Send + Sync + Debug + 'static {
    type Elem: Clone + PartialEq + Send + Sync + Debug;
    type Row: Clone + PartialEq + Send + Sync + Debug;

    fn ring(&self) -> CoefficientRing;
    fn zero_row(&self, ncols: usize) -> Self::Row;
    fn elem_from_i64(&self, v: i64) -> Self::Elem;
    fn elem_from_scalar(&self, s: &Scalar) -> Result<Self::Elem>;
    fn elem_to_scalar(&self, e: &Self::Elem) -> Scalar;
    fn elem_is_zero(&self, e: &Self::Elem) -> bool;

    /// `row[col] += e`.
    fn add_entry(&self, row: &mut Self::Row, col: usize, e: &Self::Elem);
    fn entry(&self, row: &Self::Row, col: usize) -> Self::Elem;
    /// First column `>= from` holding a nonzero entry.
    fn first_nonzero(&self, row: &Self::Row, from: usize) -> Option<usize>;
    fn for_each_nonzero(&self, row: &Self::Row, f: impl FnMut(usize, &Self::Elem));
    /// `row -= row[col] * pivot`, where `pivot[col] == 1` and `pivot` vanishes
    /// left of `col`.
    fn eliminate(&self, row: &mut Self::Row, col: usize, pivot: &Self::Row);
    /// Scales `row` so that `row[col] == 1`.
    fn normalize(&self, row: &mut Self::Row, col: usize);
    fn row_bytes(&self, ncols: usize) -> usize;

    fn is_zero_row(&self, row: &Self::Row) -> bool {
        self.first_nonzero(row, 0).is_none()
    }
}

/// GF(2) with 64 columns per word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Gf2;

impl Backend for Gf2 {
    type Elem = u8;
    type Row = Vec<u64>;

    fn ring(&self) -> CoefficientRing {
        CoefficientRing::PrimeField(2)
    }

    fn zero_row(&self, ncols: usize) -> Vec<u64> {
        vec![0; ncols.div_ceil(64)]
    }

    fn elem_from_i64(&self, v: i64) -> u8 {
        (v & 1) as u8
    }

    fn elem_from_scalar(&self, s: &Scalar) -> Result<u8> {
        self.ring().check(s)?;
        Ok(s.to_i64().unwrap_or(0) as u8 & 1)
    }

    fn elem_to_scalar(&self, e: &u8) -> Scalar {
        Scalar::Mod(*e as u32)
    }

    fn elem_is_zero(&self, e: &u8) -> bool {
        *e == 0
    }

    #[inline]
    fn add_entry(&self, row: &mut Vec<u64>, col: usize, e: &u8) {
        if *e & 1 == 1 {
            row[col >> 6] ^= 1u64 << (col & 63);
        }
    }

    #[inline]
    fn entry(&self, row: &Vec<u64>, col: usize) -> u8 {
        ((row[col >> 6] >> (col & 63)) & 1) as u8
    }

    #[inline]
    fn first_nonzero(&self, row: &Vec<u64>, from: usize) -> Option<usize> {
        let mut w = from >> 6;
        if w >= row.len() {
            return None;
        }
        let masked = row[w] & (!0u64 << (from & 63));
        if masked != 0 {
            return Some((w << 6) | masked.trailing_zeros() as usize);
        }
        w += 1;
        while w < row.len() {
            if row[w] != 0 {
                return Some((w << 6) | row[w].trailing_zeros() as usize);
            }
            w += 1;
        }
        None
    }

    fn for_each_nonzero(&self, row: &Vec<u64>, mut f: impl FnMut(usize, &u8)) {
        for (w, &word) in row.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                f((w << 6) | b, &1);
                bits &= bits - 1;
            }
        }
    }

    #[inline]
    fn eliminate(&self, row: &mut Vec<u64>, col: usize, pivot: &Vec<u64>) {
        let start = col >> 6;
        for (a, b) in row[start..].iter_mut().zip(&pivot[start..]) {
            *a ^= *b;
        }
    }

    fn normalize(&self, _row: &mut Vec<u64>, _col: usize) {}

    fn row_bytes(&self, ncols: usize) -> usize {
        ncols.div_ceil(64) * 8
    }
}

/// GF(p) for a prime `p <= 251`, one byte per entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gfp {
    p: u8,
    inverses: Vec<u8>,
}

impl Gfp {
    pub fn new(p: u64) -> Result<Self> {
        if !super::scalar::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > 251 {
            return Err(Error::PrimeTooLarge(p));
        }
        let p32 = p as u32;
        let mut inverses = vec![0u8; p as usize];
        for (x, slot) in inverses.iter_mut().enumerate().skip(1) {
            *slot = inv_mod(x as u32, p32) as u8;
        }
        Ok(Gfp { p: p as u8, inverses })
    }

    pub fn modulus(&self) -> u8 {
        self.p
    }

    #[inline]
    fn reduce_i64(&self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }
}

impl Backend for Gfp {
    type Elem = u8;
    type Row = Vec<u8>;

    fn ring(&self) -> CoefficientRing {
        CoefficientRing::PrimeField(self.p as u32)
    }

    fn zero_row(&self, ncols: usize) -> Vec<u8> {
        vec![0; ncols]
    }

    fn elem_from_i64(&self, v: i64) -> u8 {
        self.reduce_i64(v)
    }

    fn elem_from_scalar(&self, s: &Scalar) -> Result<u8> {
        self.ring().check(s)?;
        Ok(s.to_i64().unwrap_or(0) as u8)
    }

    fn elem_to_scalar(&self, e: &u8) -> Scalar {
        Scalar::Mod(*e as u32)
    }

    fn elem_is_zero(&self, e: &u8) -> bool {
        *e == 0
    }

    #[inline]
    fn add_entry(&self, row: &mut Vec<u8>, col: usize, e: &u8) {
        let s = row[col] as u16 + *e as u16;
        row[col] = (s % self.p as u16) as u8;
    }

    #[inline]
    fn entry(&self, row: &Vec<u8>, col: usize) -> u8 {
        row[col]
    }

    #[inline]
    fn first_nonzero(&self, row: &Vec<u8>, from: usize) -> Option<usize> {
        row.get(from..)?.iter().position(|&x| x != 0).map(|i| i + from)
    }

    fn for_each_nonzero(&self, row: &Vec<u8>, mut f: impl FnMut(usize, &u8)) {
        for (i, x) in row.iter().enumerate() {
            if *x != 0 {
                f(i, x);
            }
        }
    }

    fn eliminate(&self, row: &mut Vec<u8>, col: usize, pivot: &Vec<u8>) {
        let p = self.p as u16;
        let factor = (p - row[col] as u16) % p;
        if factor == 0 {
            return;
        }
        let mut table = [0u8; 256];
        for (x, slot) in table.iter_mut().enumerate().take(p as usize) {
            *slot = ((x as u16 * factor) % p) as u8;
        }
        for (a, &b) in row[col..].iter_mut().zip(&pivot[col..]) {
            if b != 0 {
                let s = *a as u16 + table[b as usize] as u16;
                *a = if s >= p { (s - p) as u8 } else { s as u8 };
            }
        }
    }

    fn normalize(&self, row: &mut Vec<u8>, col: usize) {
        let lead = row[col];
        if lead == 1 || lead == 0 {
            return;
        }
        let inv = self.inverses[lead as usize] as u16;
        let p = self.p as u16;
        for x in row[col..].iter_mut() {
            *x = ((*x as u16 * inv) % p) as u8;
        }
    }

    fn row_bytes(&self, ncols: usize) -> usize {
        ncols
    }
}

/// The rationals, dense rows of reduced fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rat;

impl Backend for Rat {
    type Elem = BigRational;
    type Row = Vec<BigRational>;

    fn ring(&self) -> CoefficientRing {
        CoefficientRing::Rationals
    }

    fn zero_row(&self, ncols: usize) -> Vec<BigRational> {
        vec![BigRational::zero(); ncols]
    }

    fn elem_from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn elem_from_scalar(&self, s: &Scalar) -> Result<BigRational> {
        match s {
            Scalar::Rat(v) => Ok(v.clone()),
            Scalar::Int(v) => Ok(BigRational::from_integer(v.clone())),
            Scalar::Mod(_) => Err(Error::RingMismatch {
                left: "Q".into(),
                right: format!("{s:?}"),
            }),
        }
    }

    fn elem_to_scalar(&self, e: &BigRational) -> Scalar {
        Scalar::Rat(e.clone())
    }

    fn elem_is_zero(&self, e: &BigRational) -> bool {
        e.is_zero()
    }

    fn add_entry(&self, row: &mut Vec<BigRational>, col: usize, e: &BigRational) {
        row[col] += e;
    }

    fn entry(&self, row: &Vec<BigRational>, col: usize) -> BigRational {
        row[col].clone()
    }

    fn first_nonzero(&self, row: &Vec<BigRational>, from: usize) -> Option<usize> {
        row.get(from..)?.iter().position(|x| !x.is_zero()).map(|i| i + from)
    }

    fn for_each_nonzero(&self, row: &Vec<BigRational>, mut f: impl FnMut(usize, &BigRational)) {
        for (i, x) in row.iter().enumerate() {
            if !x.is_zero() {
                f(i, x);
            }
        }
    }

    fn eliminate(&self, row: &mut Vec<BigRational>, col: usize, pivot: &Vec<BigRational>) {
        let factor = row[col].clone();
        if factor.is_zero() {
            return;
        }
        for (a, b) in row[col..].iter_mut().zip(&pivot[col..]) {
            if !b.is_zero() {
                *a -= &factor * b;
            }
        }
    }

    fn normalize(&self, row: &mut Vec<BigRational>, col: usize) {
        let lead = row[col].clone();
        if lead.is_zero() || lead.is_one() {
            return;
        }
        for x in row[col..].iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
    }

    fn row_bytes(&self, ncols: usize) -> usize {
        ncols * 32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_first_nonzero_crosses_words() {
        let b = Gf2;
        let mut row = b.zero_row(200);
        b.add_entry(&mut row, 3, &1);
        b.add_entry(&mut row, 130, &1);
        assert_eq!(b.first_nonzero(&row, 0), Some(3));
        assert_eq!(b.first_nonzero(&row, 4), Some(130));
        assert_eq!(b.first_nonzero(&row, 131), None);
        let mut seen = vec![];
        b.for_each_nonzero(&row, |c, _| seen.push(c));
        assert_eq!(seen, vec![3, 130]);
    }

    #[test]
    fn gfp_eliminate_and_normalize() {
        let b = Gfp::new(5).unwrap();
        let mut pivot = vec![0, 2, 4, 1];
        b.normalize(&mut pivot, 1);
        assert_eq!(pivot, vec![0, 1, 2, 3]);
        let mut row = vec![0, 3, 1, 1];
        b.eliminate(&mut row, 1, &pivot);
        // row - 3 * pivot = (0, 0, 1 - 6, 1 - 9) = (0, 0, 0, 2) mod 5
        assert_eq!(row, vec![0, 0, 0, 2]);
    }

    #[test]
    fn gfp_rejects_bad_moduli() {
        assert!(matches!(Gfp::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(Gfp::new(257), Err(Error::PrimeTooLarge(257))));
    }
}
