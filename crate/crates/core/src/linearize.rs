//! Partial linearizations of `x^n`, their Frobenius sums over small finite
//! fields, and the generating set of the relation ideal of the nil-algebra.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{is_prime, CoefficientRing, Scalar};
use crate::words::{enumerate_words, FreePoly, MultiDegree, Word};

/// A tuple of positive exponents; `theta` for `L_theta`, `delta` for `F_delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: impl Into<Vec<u32>>) -> Result<Self> {
        let entries = entries.into();
        if entries.is_empty() {
            return Err(Error::invalid("exponent vector must have at least one entry"));
        }
        if entries.contains(&0) {
            return Err(Error::invalid("exponent vector entries must be positive"));
        }
        Ok(ExponentVector(entries))
    }

    /// Drops zero entries, which correspond to unused slots.
    pub fn normalized(entries: &[u32]) -> Result<Self> {
        Self::new(entries.iter().copied().filter(|&e| e > 0).collect::<Vec<_>>())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Non-increasing entries.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The ground field: a finite field of order `q = p^l`, or an infinite field
/// of characteristic `p` (`p = 0` allowed).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Finite { q: u64, p: u32, l: u32 },
    InfiniteChar(u32),
}

/// Largest characteristic supported by the byte-per-entry row backend.
const MAX_CHARACTERISTIC: u64 = 251;

impl FieldSpec {
    pub fn finite(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::invalid(format!("field order {q} is not a prime power")));
        }
        let p = (2..=q).find(|k| q.is_multiple_of(*k)).expect("q >= 2 has a prime factor");
        let mut rest = q;
        let mut l = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            l += 1;
        }
        if rest != 1 {
            return Err(Error::invalid(format!("field order {q} is not a prime power")));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(FieldSpec::Finite { q, p: p as u32, l })
    }

    pub fn infinite(p: u64) -> Result<Self> {
        if p != 0 && !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_CHARACTERISTIC {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(FieldSpec::InfiniteChar(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match *self {
            FieldSpec::Finite { p, .. } => p,
            FieldSpec::InfiniteChar(p) => p,
        }
    }

    /// Field order for finite fields.
    pub fn order(&self) -> Option<u64> {
        match *self {
            FieldSpec::Finite { q, .. } => Some(q),
            FieldSpec::InfiniteChar(_) => None,
        }
    }

    /// Ring in which all linear algebra runs: the prime subfield, or Q.
    pub fn coefficient_ring(&self) -> CoefficientRing {
        match self.characteristic() {
            0 => CoefficientRing::Rationals,
            p => CoefficientRing::PrimeField(p),
        }
    }

    /// The infinite field of the same characteristic.
    pub fn infinite_counterpart(&self) -> FieldSpec {
        FieldSpec::InfiniteChar(self.characteristic())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Finite { q, .. } => write!(f, "q{q}"),
            FieldSpec::InfiniteChar(p) => write!(f, "inf{p}"),
        }
    }
}

/// Parses `q<k>` (finite field of order `k`) or `inf<p>`.
impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |t: &str| -> Result<u64> {
            t.parse()
                .map_err(|_| Error::invalid(format!("bad field descriptor {s:?}; expected q<k> or inf<p>")))
        };
        if let Some(rest) = s.strip_prefix("inf") {
            FieldSpec::infinite(num(rest)?)
        } else if let Some(rest) = s.strip_prefix('q') {
            FieldSpec::finite(num(rest)?)
        } else {
            Err(Error::invalid(format!(
                "bad field descriptor {s:?}; expected q<k> or inf<p>"
            )))
        }
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

/// One member of the generating set of the relation ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeneratorSpec {
    /// `L_theta`.
    PartialLin { theta: ExponentVector },
    /// `F_delta` over a field of order `q`, with `delta` q-maximal.
    FrobeniusLin { delta: ExponentVector, q: u64 },
    /// `P_r`: the sum of all `L_theta` of arity `r` and total `n`.
    FullSum { r: usize, n: u32 },
}

impl GeneratorSpec {
    pub fn arity(&self) -> usize {
        match self {
            GeneratorSpec::PartialLin { theta } => theta.arity(),
            GeneratorSpec::FrobeniusLin { delta, .. } => delta.arity(),
            GeneratorSpec::FullSum { r, .. } => *r,
        }
    }

    /// The exponent `n` of the power being linearized.
    pub fn power(&self) -> u32 {
        match self {
            GeneratorSpec::PartialLin { theta } => theta.total(),
            GeneratorSpec::FrobeniusLin { delta, .. } => delta.total(),
            GeneratorSpec::FullSum { n, .. } => *n,
        }
    }

    /// The exponent vectors `theta` whose `L_theta` sum to this generator,
    /// in decreasing lexicographic order.
    pub fn constituents(&self) -> Vec<Vec<u32>> {
        match self {
            GeneratorSpec::PartialLin { theta } => vec![theta.entries().to_vec()],
            GeneratorSpec::FrobeniusLin { delta, q } => frobenius_class(delta.entries(), *q),
            GeneratorSpec::FullSum { r, n } => compositions(*n, *r),
        }
    }

    /// Slot labels: two slots with equal labels can be swapped without
    /// changing the generator, so arguments may be taken in sorted order there.
    pub fn slot_labels(&self) -> Vec<u32> {
        match self {
            GeneratorSpec::PartialLin { theta } => theta.entries().to_vec(),
            GeneratorSpec::FrobeniusLin { delta, q } => {
                let m = (*q - 1).max(1);
                delta.entries().iter().map(|&e| residue(e, m)).collect()
            }
            GeneratorSpec::FullSum { r, .. } => vec![0; *r],
        }
    }

    /// Evaluates the generator at polynomial arguments.
    pub fn apply(&self, args: &[FreePoly]) -> Result<FreePoly> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: args.len(),
            });
        }
        let ring = args[0].ring();
        let mut acc = FreePoly::zero(ring);
        for theta in self.constituents() {
            acc = acc.add(&expand_theta(&theta, args)?)?;
        }
        Ok(acc)
    }

    /// Structured record for reports.
    pub fn describe(&self) -> GeneratorRecord {
        let (kind, exponents, q) = match self {
            GeneratorSpec::PartialLin { theta } => ("partial", theta.entries().to_vec(), None),
            GeneratorSpec::FrobeniusLin { delta, q } => ("frobenius", delta.entries().to_vec(), Some(*q)),
            GeneratorSpec::FullSum { r, .. } => ("full_sum", vec![*r as u32], None),
        };
        GeneratorRecord {
            kind: kind.to_string(),
            arity: self.arity(),
            exponents,
            q,
            constituents: self.constituents(),
            text: self.to_string(),
        }
    }
}

fn theta_text(theta: &[u32]) -> String {
    let inner: Vec<String> = theta.iter().map(u32::to_string).collect();
    format!("L({})", inner.join(","))
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::FullSum { r, .. } => write!(f, "P{r}"),
            _ => {
                let parts: Vec<String> = self.constituents().iter().map(|t| theta_text(t)).collect();
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

/// Serializable description of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub kind: String,
    pub arity: usize,
    pub exponents: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    pub constituents: Vec<Vec<u32>>,
    pub text: String,
}

/// Representative of `e` modulo `m` in `1..=m`.
pub(crate) fn residue(e: u32, m: u64) -> u32 {
    ((e as u64 - 1) % m + 1) as u32
}

/// Compositions of `n` into `r` positive parts, lexicographically decreasing.
pub fn compositions(n: u32, r: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, r: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        let max_first = n.saturating_sub(r as u32 - 1);
        for first in (1..=max_first).rev() {
            prefix.push(first);
            rec(n - first, r - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && (r as u32) <= n {
        rec(n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// Non-increasing compositions (partitions) of `n`, by arity then
/// decreasing lexicographic order.
pub fn ordered_vectors(n: u32) -> Vec<Vec<u32>> {
    (1..=n as usize)
        .flat_map(|r| compositions(n, r).into_iter().filter(|c| c.windows(2).all(|w| w[0] >= w[1])))
        .collect()
}

/// All `theta` with `|theta| = |delta|` and `theta_i = delta_i mod (q-1)`.
fn frobenius_class(delta: &[u32], q: u64) -> Vec<Vec<u32>> {
    let m = (q - 1).max(1);
    let n: u32 = delta.iter().sum();
    compositions(n, delta.len())
        .into_iter()
        .filter(|t| t.iter().zip(delta).all(|(&a, &b)| residue(a, m) == residue(b, m)))
        .collect()
}

/// The lexicographically largest vector in the congruence class of `delta`
/// modulo `q-1` with the same total and positive entries.
pub fn q_maximal(delta: &ExponentVector, q: u64) -> ExponentVector {
    let m = (q - 1).max(1);
    let e = delta.entries();
    let mut nu: Vec<u32> = e.iter().map(|&x| residue(x, m)).collect();
    let tail: u32 = nu[1..].iter().sum();
    nu[0] = delta.total() - tail;
    ExponentVector(nu)
}

fn check_power(n: u32, theta: &[u32], args: usize) -> Result<()> {
    let total: u32 = theta.iter().sum();
    if total != n {
        return Err(Error::invalid(format!(
            "exponent vector {theta:?} has total {total}, expected {n}"
        )));
    }
    if theta.len() != args {
        return Err(Error::ArityMismatch {
            expected: theta.len(),
            got: args,
        });
    }
    Ok(())
}

/// Substitutes `args` into the sum of all words of multidegree `theta`.
fn expand_theta(theta: &[u32], args: &[FreePoly]) -> Result<FreePoly> {
    let ring = args[0].ring();
    let kept: Vec<usize> = (0..theta.len()).filter(|&i| theta[i] > 0).collect();
    let md = MultiDegree(kept.iter().map(|&i| theta[i]).collect());
    let mut acc = FreePoly::zero(ring);
    let monomials: Option<Vec<(&Word, &Scalar)>> = kept
        .iter()
        .map(|&i| (args[i].len() == 1).then(|| args[i].terms().next().expect("one term")))
        .collect();
    if let Some(mono) = monomials {
        for pattern in enumerate_words(&md) {
            let mut letters = Vec::new();
            let mut c = ring.one();
            for &slot in pattern.letters() {
                let (w, a) = mono[slot as usize];
                letters.extend_from_slice(w.letters());
                c = ring.mul(&c, a);
            }
            acc.add_term(Word::from_letters(letters), c);
        }
        return Ok(acc);
    }
    for pattern in enumerate_words(&md) {
        let mut term: Option<FreePoly> = None;
        for &slot in pattern.letters() {
            let a = &args[kept[slot as usize]];
            term = Some(match term {
                None => a.clone(),
                Some(t) => t.mul(a)?,
            });
        }
        if let Some(t) = term {
            acc = acc.add(&t)?;
        }
    }
    Ok(acc)
}

/// `L_theta(args)`. Zero entries of `theta` drop their slot.
pub fn partial_linearization(n: u32, theta: &[u32], args: &[FreePoly]) -> Result<FreePoly> {
    check_power(n, theta, args.len())?;
    if theta.iter().all(|&t| t == 0) || args.is_empty() {
        return Err(Error::invalid("partial linearization needs a positive exponent"));
    }
    expand_theta(theta, args)
}

/// `F_delta(args)` over a field of order `q`.
pub fn frobenius_linearization(n: u32, delta: &ExponentVector, q: u64, args: &[FreePoly]) -> Result<FreePoly> {
    check_power(n, delta.entries(), args.len())?;
    GeneratorSpec::FrobeniusLin {
        delta: delta.clone(),
        q,
    }
    .apply(args)
}

/// `P_r(args)`.
pub fn full_sum(r: usize, n: u32, args: &[FreePoly]) -> Result<FreePoly> {
    if r == 0 || r as u32 > n {
        return Err(Error::invalid(format!("P_{r} needs 1 <= r <= n = {n}")));
    }
    GeneratorSpec::FullSum { r, n }.apply(args)
}

/// The generating set: `L_theta` for ordered `theta` when the field is
/// infinite or has at least `n` elements, otherwise one `F_delta` per
/// congruence class of exponent vectors up to slot permutation.
pub fn generator_set(n: u32, field: &FieldSpec) -> Vec<GeneratorSpec> {
    let q = match field.order() {
        Some(q) if q < n as u64 => q,
        _ => {
            return ordered_vectors(n)
                .into_iter()
                .map(|t| GeneratorSpec::PartialLin {
                    theta: ExponentVector(t),
                })
                .collect()
        }
    };
    if q == 2 {
        return (1..=n as usize).map(|r| GeneratorSpec::FullSum { r, n }).collect();
    }
    let m = q - 1;
    let mut out = Vec::new();
    for r in 1..=n as usize {
        let mut seen: Vec<Vec<u32>> = Vec::new();
        for c in compositions(n, r) {
            let mut res: Vec<u32> = c.iter().map(|&e| residue(e, m)).collect();
            res.sort_unstable_by(|a, b| b.cmp(a));
            if seen.contains(&res) {
                continue;
            }
            seen.push(res.clone());
            let tail: u32 = res[1..].iter().sum();
            res[0] = n - tail;
            let nu = ExponentVector(res);
            let class = frobenius_class(nu.entries(), q);
            if class.len() == 1 {
                out.push(GeneratorSpec::PartialLin { theta: nu });
            } else {
                out.push(GeneratorSpec::FrobeniusLin { delta: nu, q });
            }
        }
        // within one arity, list representatives in decreasing lex order
        let start = out.len() - seen.len();
        out[start..].sort_by_key(|g| std::cmp::Reverse(generator_key(g)));
    }
    out
}

fn generator_key(g: &GeneratorSpec) -> Vec<u32> {
    match g {
        GeneratorSpec::PartialLin { theta } => theta.entries().to_vec(),
        GeneratorSpec::FrobeniusLin { delta, .. } => delta.entries().to_vec(),
        GeneratorSpec::FullSum { r, .. } => vec![*r as u32],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::multinomial;

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    fn letter(i: u8) -> FreePoly {
        FreePoly::from_word(z(), Word::letter(i))
    }

    fn words(list: &[&str]) -> FreePoly {
        FreePoly::sum_of_words(z(), list.iter().map(|s| s.parse::<Word>().unwrap()))
    }

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn l21_on_letters() {
        let got = partial_linearization(3, &[2, 1], &[letter(0), letter(1)]).unwrap();
        assert_eq!(got, words(&["x1x1x2", "x1x2x1", "x2x1x1"]));
    }

    #[test]
    fn l111_is_six_permutations() {
        let got = partial_linearization(3, &[1, 1, 1], &[letter(0), letter(1), letter(2)]).unwrap();
        assert_eq!(got.len(), 6);
        assert!(got.terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn single_slot_is_power() {
        let x = letter(0);
        assert_eq!(partial_linearization(4, &[4], std::slice::from_ref(&x)).unwrap(), x.pow(4));
    }

    #[test]
    fn l_n_minus_1_1_sums_positions() {
        for n in 2..6u32 {
            let (x, y) = (letter(0), letter(1));
            let got = partial_linearization(n, &[n - 1, 1], &[x.clone(), y.clone()]).unwrap();
            let mut expect = FreePoly::zero(z());
            for i in 0..n as usize {
                let w = Word::from_letters(
                    (0..n as usize).map(|k| if k == i { 1 } else { 0 }).collect::<Vec<u8>>(),
                );
                expect.add_term(w, z().one());
            }
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn zero_slots_are_dropped() {
        let got = partial_linearization(3, &[2, 0, 1], &[letter(0), letter(5), letter(1)]).unwrap();
        assert_eq!(got, words(&["x1x1x2", "x1x2x1", "x2x1x1"]));
    }

    #[test]
    fn wrong_total_is_rejected() {
        assert!(partial_linearization(4, &[2, 1], &[letter(0), letter(1)]).is_err());
    }

    #[test]
    fn q_maximal_examples() {
        assert_eq!(q_maximal(&ev(&[2, 3]), 3), ev(&[4, 1]));
        assert_eq!(q_maximal(&ev(&[1, 4]), 3), ev(&[3, 2]));
        assert_eq!(q_maximal(&ev(&[1, 2, 3]), 2), ev(&[4, 1, 1]));
        assert_eq!(q_maximal(&ev(&[2, 1]), 4), ev(&[2, 1]));
        assert_eq!(q_maximal(&ev(&[3, 2, 1]), 7), ev(&[3, 2, 1]));
    }

    #[test]
    fn frobenius_examples() {
        let args2 = [letter(0), letter(1)];
        let f41 = frobenius_linearization(5, &ev(&[4, 1]), 3, &args2).unwrap();
        let expect = partial_linearization(5, &[4, 1], &args2)
            .unwrap()
            .add(&partial_linearization(5, &[2, 3], &args2).unwrap())
            .unwrap();
        assert_eq!(f41, expect);

        let args3 = [letter(0), letter(1), letter(2)];
        let f311 = frobenius_linearization(5, &ev(&[3, 1, 1]), 3, &args3).unwrap();
        let mut expect = FreePoly::zero(z());
        for t in [[3, 1, 1], [1, 3, 1], [1, 1, 3]] {
            expect = expect.add(&partial_linearization(5, &t, &args3).unwrap()).unwrap();
        }
        assert_eq!(f311, expect);

        let f21 = frobenius_linearization(3, &ev(&[2, 1]), 4, &args2).unwrap();
        assert_eq!(f21, partial_linearization(3, &[2, 1], &args2).unwrap());
    }

    #[test]
    fn full_sum_examples() {
        let x = letter(0);
        assert_eq!(full_sum(1, 4, std::slice::from_ref(&x)).unwrap(), x.pow(4));
        let args: Vec<FreePoly> = (0..4).map(letter).collect();
        assert_eq!(
            full_sum(4, 4, &args).unwrap(),
            partial_linearization(4, &[1, 1, 1, 1], &args).unwrap()
        );
        let p2 = full_sum(2, 3, &[letter(0), letter(1)]).unwrap();
        // degree-3 words on two letters using both: 2^3 - 2
        assert_eq!(p2.len(), 6);
        assert!(full_sum(4, 3, &args).is_err());
    }

    fn texts(gs: &[GeneratorSpec]) -> Vec<String> {
        gs.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn generators_over_f2_are_full_sums() {
        for n in 3..8 {
            let gs = generator_set(n, &FieldSpec::finite(2).unwrap());
            let expect: Vec<GeneratorSpec> = (1..=n as usize).map(|r| GeneratorSpec::FullSum { r, n }).collect();
            assert_eq!(gs, expect);
        }
    }

    #[test]
    fn generators_n5_over_f3() {
        let gs = generator_set(5, &FieldSpec::finite(3).unwrap());
        assert_eq!(
            texts(&gs),
            vec![
                "L(5)",
                "L(4,1)+L(2,3)",
                "L(3,1,1)+L(1,3,1)+L(1,1,3)",
                "L(2,2,1)",
                "L(2,1,1,1)",
                "L(1,1,1,1,1)"
            ]
        );
    }

    #[test]
    fn generators_for_field_of_order_n_minus_1() {
        for (n, q) in [(4u32, 3u64), (5, 4), (6, 5), (8, 7)] {
            let gs = generator_set(n, &FieldSpec::finite(q).unwrap());
            let special = format!("L({},1)+L(1,{})", n - 1, n - 1);
            let mut expect = vec![special];
            for t in ordered_vectors(n) {
                if t != vec![n - 1, 1] {
                    expect.push(theta_text(&t));
                }
            }
            let mut got = texts(&gs);
            got.sort();
            expect.sort();
            assert_eq!(got, expect, "n={n} q={q}");
        }
    }

    #[test]
    fn large_fields_match_infinite_mode() {
        for n in 1..8u32 {
            let inf = generator_set(n, &FieldSpec::InfiniteChar(0));
            for q in [n as u64, n as u64 + 1, 16] {
                if let Ok(f) = FieldSpec::finite(q) {
                    if q >= n as u64 {
                        assert_eq!(generator_set(n, &f), inf);
                    }
                }
            }
        }
    }

    #[test]
    fn field_descriptors() {
        assert_eq!("q4".parse::<FieldSpec>().unwrap(), FieldSpec::Finite { q: 4, p: 2, l: 2 });
        assert_eq!("inf0".parse::<FieldSpec>().unwrap(), FieldSpec::InfiniteChar(0));
        assert_eq!("q9".parse::<FieldSpec>().unwrap().coefficient_ring(), CoefficientRing::PrimeField(3));
        assert!("q6".parse::<FieldSpec>().is_err());
        assert!("inf4".parse::<FieldSpec>().is_err());
        assert!("x2".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::finite(27).unwrap().to_string(), "q27");
    }

    #[test]
    fn multinomial_term_counts() {
        for n in 1..=8u32 {
            for r in 1..=4usize {
                for theta in compositions(n, r) {
                    let args: Vec<FreePoly> = (0..r as u8).map(letter).collect();
                    let l = partial_linearization(n, &theta, &args).unwrap();
                    assert_eq!(l.len() as u128, multinomial(&theta));
                }
            }
        }
    }

    #[test]
    fn arity_mismatch_on_apply() {
        let g = GeneratorSpec::FullSum { r: 2, n: 3 };
        assert!(matches!(g.apply(&[letter(0)]), Err(Error::ArityMismatch { expected: 2, got: 1 })));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::words::Word;
    use proptest::prelude::*;

    fn letters(r: usize, ring: CoefficientRing) -> Vec<FreePoly> {
        (0..r as u8).map(|i| FreePoly::from_word(ring, Word::letter(i))).collect()
    }

    proptest! {
        #[test]
        fn frobenius_sums_partition_full_sum(n in 2u32..7, r in 1usize..4, qi in 0usize..4) {
            prop_assume!(r as u32 <= n);
            let q = [2u64, 3, 4, 5][qi];
            let ring = CoefficientRing::Integers;
            let args = letters(r, ring);
            // distinct q-maximal classes of arity r, with slots kept in place
            let mut reps: Vec<Vec<u32>> = Vec::new();
            for c in compositions(n, r) {
                let nu = q_maximal(&ExponentVector(c), q);
                if !reps.contains(&nu.0) {
                    reps.push(nu.0);
                }
            }
            let mut sum = FreePoly::zero(ring);
            for d in &reps {
                let f = frobenius_linearization(n, &ExponentVector(d.clone()), q, &args).unwrap();
                sum = sum.add(&f).unwrap();
            }
            let p = full_sum(r, n, &args).unwrap();
            prop_assert_eq!(&sum, &p);
            prop_assert!(sum.terms().all(|(_, c)| c.is_one()));
        }

        #[test]
        fn q_maximal_is_idempotent(v in proptest::collection::vec(1u32..9, 1..5), q in 2u64..9) {
            let d = ExponentVector(v);
            let m = (q - 1).max(1);
            let nu = q_maximal(&d, q);
            prop_assert_eq!(q_maximal(&nu, q), nu.clone());
            prop_assert_eq!(nu.total(), d.total());
            for (a, b) in nu.entries().iter().zip(d.entries()) {
                prop_assert_eq!(residue(*a, m), residue(*b, m));
            }
            prop_assert!(nu >= d);
        }

        #[test]
        fn slot_permutation_symmetry(theta in proptest::collection::vec(1u32..4, 1..4), seed in any::<u64>()) {
            let r = theta.len();
            let n: u32 = theta.iter().sum();
            let mut perm: Vec<usize> = (0..r).collect();
            let mut s = seed;
            for i in (1..r).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let ring = CoefficientRing::Integers;
            let x = letters(r, ring);
            let lhs = partial_linearization(n, &theta, &x).unwrap();
            // L_{theta}(x) = L_{sigma theta}(x_sigma)
            let st: Vec<u32> = perm.iter().map(|&i| theta[i]).collect();
            let sx: Vec<FreePoly> = perm.iter().map(|&i| x[i].clone()).collect();
            prop_assert_eq!(lhs, partial_linearization(n, &st, &sx).unwrap());
        }
    }
}
