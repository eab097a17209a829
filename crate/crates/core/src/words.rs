//! Words of the free semigroup on `d` letters, multidegrees, and finitely
//! supported polynomials in noncommuting letters.
//!
//! Letters are stored 0-based (`0` is `x1`); text rendering and parsing use
//! the 1-based `x<i>` spelling. Words are ordered degree-lexicographically
//! with `x1 < x2 < ... < xd`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{CoefficientRing, Scalar};

/// A word in the letters `x1..xd`. The empty word is the unit marker `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 0-based letter indices.
    pub fn from_letters(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    /// The single-letter word `x<i+1>`.
    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// The inversion anti-automorphism on words: letters in reverse order.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Largest letter index plus one (0 for the unit).
    pub fn alphabet_size(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{}", *l as usize + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `x1*x2*x1`, `x1 x2 x1`, `x1x2x1`, or `1` for the unit.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::unit());
        }
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'*' | b'\t' => i += 1,
                b'x' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    let idx: usize = s[start..j]
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad letter in word {s:?}")))?;
                    if idx == 0 || idx > 256 {
                        return Err(Error::invalid(format!("letter index {idx} out of range")));
                    }
                    letters.push((idx - 1) as u8);
                    i = j;
                }
                _ => return Err(Error::invalid(format!("unexpected character in word {s:?}"))),
            }
        }
        if letters.is_empty() {
            return Err(Error::invalid("empty word"));
        }
        Ok(Word(letters))
    }
}

/// Per-letter occurrence counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zero(d: usize) -> Self {
        MultiDegree(vec![0; d])
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }
}

impl Add for &MultiDegree {
    type Output = MultiDegree;

    fn add(self, rhs: &MultiDegree) -> MultiDegree {
        let n = self.0.len().max(rhs.0.len());
        MultiDegree(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) + rhs.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

/// Multidegree of `w` over `d` letters. The unit word gives all zeros.
pub fn mdeg(w: &Word, d: usize) -> Result<MultiDegree> {
    let mut m = vec![0u32; d];
    for &l in w.letters() {
        let slot = m.get_mut(l as usize).ok_or(Error::OutOfRange {
            index: l as u64 + 1,
            limit: d as u64,
        })?;
        *slot += 1;
    }
    Ok(MultiDegree(m))
}

/// All words of multidegree `m`, in lexicographic order.
pub fn enumerate_words(m: &MultiDegree) -> Vec<Word> {
    let mut letters: Vec<u8> = Vec::with_capacity(m.total());
    for (i, &e) in m.0.iter().enumerate() {
        letters.extend(std::iter::repeat_n(i as u8, e as usize));
    }
    if letters.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Word(letters.clone())];
    while next_permutation(&mut letters) {
        out.push(Word(letters.clone()));
    }
    out
}

/// Advances to the next lexicographic permutation; false after the last one.
pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Base-`d` index of `w` among words of its degree (first letter most
/// significant), so ranks increase with the lexicographic order.
pub fn rank_word(w: &Word, d: usize) -> Result<u64> {
    let mut r: u64 = 0;
    for &l in w.letters() {
        if l as usize >= d {
            return Err(Error::OutOfRange {
                index: l as u64 + 1,
                limit: d as u64,
            });
        }
        r = r
            .checked_mul(d as u64)
            .and_then(|r| r.checked_add(l as u64))
            .ok_or_else(|| Error::invalid("word rank overflows u64"))?;
    }
    Ok(r)
}

pub fn unrank_word(degree: usize, d: usize, index: u64) -> Result<Word> {
    let limit = (d as u64)
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::invalid("word space too large"))?;
    if index >= limit || d == 0 {
        return Err(Error::OutOfRange { index, limit });
    }
    let mut letters = vec![0u8; degree];
    let mut x = index;
    for slot in letters.iter_mut().rev() {
        *slot = (x % d as u64) as u8;
        x /= d as u64;
    }
    Ok(Word(letters))
}

/// An element of the free algebra: a finite map from words to nonzero
/// coefficients, kept in degree-lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct FreePoly {
    ring: CoefficientRing,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(ring: CoefficientRing) -> Self {
        FreePoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(ring: CoefficientRing, w: Word) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(w, ring.one());
        p
    }

    pub fn from_terms(ring: CoefficientRing, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Sum of words, each with coefficient one.
    pub fn sum_of_words(ring: CoefficientRing, words: impl IntoIterator<Item = Word>) -> Self {
        let mut p = Self::zero(ring);
        for w in words {
            p.add_term(w, ring.one());
        }
        p
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Maximum degree of a word in the support (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::degree)
    }

    pub fn min_degree(&self) -> usize {
        self.terms.keys().next().map_or(0, Word::degree)
    }

    /// Adds `c * w`. The unit word never enters a support.
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        assert!(!w.is_unit(), "the unit word is not an element of the free algebra");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.ring.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn same_ring(&self, other: &FreePoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), self.ring.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<FreePoly> {
        self.ring.check(c)?;
        if c.is_zero() {
            return Ok(FreePoly::zero(self.ring));
        }
        let mut out = FreePoly::zero(self.ring);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), self.ring.mul(a, c));
        }
        Ok(out)
    }

    pub fn scale_int(&self, k: i64) -> FreePoly {
        self.scale(&self.ring.from_i64(k)).expect("scalar built in own ring")
    }

    /// Product in the free algebra: concatenation extended bilinearly.
    pub fn mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.same_ring(other)?;
        let mut out = FreePoly::zero(self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// Product, discarding words of degree above `max_degree`.
    pub fn mul_truncated(&self, other: &FreePoly, max_degree: usize) -> Result<FreePoly> {
        self.same_ring(other)?;
        let mut out = FreePoly::zero(self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if u.degree() + v.degree() <= max_degree {
                    out.add_term(u.concat(v), self.ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> FreePoly {
        assert!(k >= 1, "the free algebra has no unit; exponent must be positive");
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// `x * f` for a word `x` (the unit leaves `f` unchanged).
    pub fn concat_left(&self, x: &Word) -> FreePoly {
        FreePoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(w, c)| (x.concat(w), c.clone())).collect(),
        }
    }

    /// `f * x` for a word `x`.
    pub fn concat_right(&self, x: &Word) -> FreePoly {
        FreePoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(w, c)| (w.concat(x), c.clone())).collect(),
        }
    }

    /// The inversion: every word reversed, coefficients unchanged.
    pub fn star(&self) -> FreePoly {
        let mut out = FreePoly::zero(self.ring);
        for (w, c) in &self.terms {
            out.add_term(w.reversed(), c.clone());
        }
        out
    }

    /// Drops every word of degree above `max_degree`.
    pub fn truncate(&self, max_degree: usize) -> FreePoly {
        FreePoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.degree() <= max_degree)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The multihomogeneous component of multidegree `m` (over `d` letters).
    pub fn component(&self, m: &MultiDegree, d: usize) -> Result<FreePoly> {
        let mut out = FreePoly::zero(self.ring);
        for (w, c) in &self.terms {
            if &mdeg(w, d)? == m {
                out.add_term(w.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// All nonzero multihomogeneous components, keyed by multidegree.
    pub fn components(&self, d: usize) -> Result<BTreeMap<MultiDegree, FreePoly>> {
        let mut out: BTreeMap<MultiDegree, FreePoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(mdeg(w, d)?)
                .or_insert_with(|| FreePoly::zero(self.ring))
                .add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Reinterprets the coefficients in another ring (integers reduce mod p).
    pub fn map_ring(&self, ring: CoefficientRing) -> Result<FreePoly> {
        let mut out = FreePoly::zero(ring);
        for (w, c) in &self.terms {
            let mapped = match c {
                Scalar::Int(v) => ring.from_bigint(v),
                Scalar::Mod(v) => ring.from_i64(*v as i64),
                Scalar::Rat(_) if ring == CoefficientRing::Rationals => c.clone(),
                Scalar::Rat(_) => {
                    return Err(Error::RingMismatch {
                        left: self.ring.to_string(),
                        right: ring.to_string(),
                    })
                }
            };
            out.add_term(w.clone(), mapped);
        }
        Ok(out)
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let mag = if neg { self.ring.neg(c) } else { c.clone() };
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePoly[{}]({self})", self.ring)
    }
}

/// Multinomial coefficient `(sum m)! / prod(m_i!)`.
pub fn multinomial(m: &[u32]) -> u128 {
    let mut acc: u128 = 1;
    let mut n: u128 = 0;
    for &k in m {
        for j in 1..=k as u128 {
            n += 1;
            acc = acc * n / j;
        }
    }
    acc
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn word(d: u8, max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0..d, 1..=max).prop_map(Word::from_letters)
    }

    fn poly(d: u8) -> impl Strategy<Value = FreePoly> {
        proptest::collection::vec((word(d, 4), -3i64..=3), 0..6).prop_map(|terms| {
            let ring = CoefficientRing::Integers;
            let mut p = FreePoly::zero(ring);
            for (w, c) in terms {
                p.add_term(w, ring.from_i64(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn words_of_a_multidegree_are_counted_by_multinomials(m in proptest::collection::vec(0u32..=4, 1..=3)) {
            prop_assume!(m.iter().sum::<u32>() >= 1 && m.iter().sum::<u32>() <= 12);
            let words = enumerate_words(&MultiDegree(m.clone()));
            prop_assert_eq!(words.len() as u128, multinomial(&m));
            let distinct: std::collections::BTreeSet<&Word> = words.iter().collect();
            prop_assert_eq!(distinct.len(), words.len());
            for w in &words {
                prop_assert_eq!(&mdeg(w, m.len()).unwrap().0, &m);
            }
        }

        #[test]
        fn star_reverses_products(a in poly(3), b in poly(3)) {
            let lhs = a.mul(&b).unwrap().star();
            let rhs = b.star().mul(&a.star()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.star().star(), a);
        }

        #[test]
        fn multidegree_is_additive(u in word(4, 6), v in word(4, 6)) {
            let sum = &mdeg(&u, 4).unwrap() + &mdeg(&v, 4).unwrap();
            prop_assert_eq!(mdeg(&u.concat(&v), 4).unwrap(), sum);
        }

        #[test]
        fn ranks_invert(u in word(3, 7)) {
            let r = rank_word(&u, 3).unwrap();
            prop_assert_eq!(unrank_word(u.degree(), 3, r).unwrap(), u);
        }
    }
}
