//! Free-algebra identities checked by full expansion over Z or F_p.
//!
//! Identities are data: each corpus entry builds, for a given `n`, an
//! expression that must expand to zero. Over Z nothing is ever divided.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::CoefficientRing;
use crate::linearize::{compositions, q_maximal, ExponentVector, GeneratorSpec};
use crate::words::{FreePoly, MultiDegree, Word};

/// A term of the free algebra with integer scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Word(Word),
    Scale(i64, Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Apply(GeneratorSpec, Vec<Expr>),
    Star(Box<Expr>),
    /// Homogeneous component of the given multidegree.
    Component(MultiDegree, Box<Expr>),
}

impl Expr {
    /// The letter `x_{i+1}`.
    pub fn x(i: u8) -> Expr {
        Expr::Word(Word::letter(i))
    }

    pub fn word(letters: &[u8]) -> Expr {
        Expr::Word(Word::from_letters(letters.to_vec()))
    }

    pub fn scale(k: i64, e: Expr) -> Expr {
        Expr::Scale(k, Box::new(e))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Expr {
        Expr::scale(-1, e)
    }

    pub fn sum(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Sum(parts.into_iter().collect())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sum(vec![a, Expr::neg(b)])
    }

    pub fn prod(parts: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Product(parts.into_iter().collect())
    }

    /// `L_theta(args)`.
    pub fn lin(theta: &[u32], args: Vec<Expr>) -> Result<Expr> {
        let theta = ExponentVector::new(theta.to_vec())?;
        Ok(Expr::Apply(GeneratorSpec::PartialLin { theta }, args))
    }

    /// `P_r(args)` for the power `n`.
    pub fn full_sum(n: u32, args: Vec<Expr>) -> Expr {
        Expr::Apply(GeneratorSpec::FullSum { r: args.len(), n }, args)
    }

    pub fn star(e: Expr) -> Expr {
        Expr::Star(Box::new(e))
    }

    /// Number of distinct letters the expression mentions, i.e. one more
    /// than the largest letter index.
    fn alphabet(&self) -> usize {
        match self {
            Expr::Word(w) => w.alphabet_size(),
            Expr::Scale(_, e) | Expr::Star(e) => e.alphabet(),
            Expr::Component(m, e) => m.entries().len().max(e.alphabet()),
            Expr::Sum(v) | Expr::Product(v) | Expr::Apply(_, v) => v.iter().map(Expr::alphabet).max().unwrap_or(0),
        }
    }
}

/// Fully expanded and collected value of `e` over `ring`.
pub fn expand(e: &Expr, ring: CoefficientRing) -> Result<FreePoly> {
    match e {
        Expr::Word(w) => {
            if w.is_unit() {
                return Err(Error::invalid("the free algebra has no unit"));
            }
            Ok(FreePoly::from_word(ring, w.clone()))
        }
        Expr::Scale(k, inner) => {
            let p = expand(inner, ring)?;
            p.scale(&ring.from_i64(*k))
        }
        Expr::Sum(parts) => {
            let mut acc = FreePoly::zero(ring);
            for part in parts {
                acc = acc.add(&expand(part, ring)?)?;
            }
            Ok(acc)
        }
        Expr::Product(parts) => {
            let mut it = parts.iter();
            let first = it.next().ok_or_else(|| Error::invalid("empty product"))?;
            let mut acc = expand(first, ring)?;
            for part in it {
                acc = acc.mul(&expand(part, ring)?)?;
            }
            Ok(acc)
        }
        Expr::Apply(g, args) => {
            let args = args.iter().map(|a| expand(a, ring)).collect::<Result<Vec<_>>>()?;
            g.apply(&args)
        }
        Expr::Star(inner) => Ok(expand(inner, ring)?.star()),
        Expr::Component(m, inner) => {
            let d = e.alphabet();
            let mut padded = m.entries().to_vec();
            padded.resize(d, 0);
            expand(inner, ring)?.component(&MultiDegree(padded), d)
        }
    }
}

/// A word with nonzero coefficient, when the expansion is not zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub word: String,
    pub coefficient: String,
}

/// `Ok(None)` when `e` expands to zero, otherwise its deglex-smallest term.
pub fn zero_or_witness(e: &Expr, ring: CoefficientRing) -> Result<Option<Witness>> {
    let p = expand(e, ring)?;
    let witness = p.terms().next().map(|(w, c)| Witness {
        word: w.to_string(),
        coefficient: c.to_string(),
    });
    Ok(witness)
}

pub fn verify_zero(e: &Expr, ring: CoefficientRing) -> Result<bool> {
    Ok(expand(e, ring)?.is_zero())
}

/// One identity of the corpus.
pub struct Identity {
    pub id: &'static str,
    pub summary: &'static str,
    /// Rings in which the expression vanishes (or, for a control, does not).
    pub rings: &'static [CoefficientRing],
    /// Powers `n` for which the identity is stated; `None` when it has none.
    pub powers: Option<(u32, u32)>,
    /// A deliberately broken identity that must not vanish.
    pub negative_control: bool,
    pub build: fn(u32) -> Result<Expr>,
}

const Z: CoefficientRing = CoefficientRing::Integers;
const F2: CoefficientRing = CoefficientRing::PrimeField(2);
const F3: CoefficientRing = CoefficientRing::PrimeField(3);

fn x() -> Expr {
    Expr::x(0)
}

fn y() -> Expr {
    Expr::x(1)
}

fn z() -> Expr {
    Expr::x(2)
}

/// `L_{n-1,1}(x, xy) - x L_{n-1,1}(x, y)`.
fn shift_absorption(n: u32) -> Result<Expr> {
    Ok(Expr::sub(
        Expr::lin(&[n - 1, 1], vec![x(), Expr::word(&[0, 1])])?,
        Expr::prod([x(), Expr::lin(&[n - 1, 1], vec![x(), y()])?]),
    ))
}

/// Multilinear form of the shift absorption: with letters `x_1..x_n` and
/// `y = x_{n+1}`,
/// `sum_i L_{1^n}(.., x_i y) - sum_i x_i L_{1^n}(.., y)`, where `..` is the
/// other `n - 1` letters.
fn shift_absorption_multilinear(n: u32) -> Result<Expr> {
    let ones = vec![1u32; n as usize];
    let y = Expr::x(n as u8);
    let mut parts = Vec::new();
    for i in 0..n as u8 {
        let others: Vec<Expr> = (0..n as u8).filter(|&j| j != i).map(Expr::x).collect();
        let mut a = others.clone();
        a.push(Expr::prod([Expr::x(i), y.clone()]));
        parts.push(Expr::lin(&ones, a)?);
        let mut b = others;
        b.push(y.clone());
        parts.push(Expr::neg(Expr::prod([Expr::x(i), Expr::lin(&ones, b)?])));
    }
    Ok(Expr::Sum(parts))
}

fn power_scaling_with_sign(n: u32, sign: i64) -> Result<Expr> {
    let k = n as i64;
    let mut parts = vec![
        Expr::scale(k, Expr::prod([x(), Expr::Word(Word::letter(1).pow(n as usize))])),
        Expr::neg(Expr::lin(&[n - 1, 1], vec![y(), Expr::word(&[0, 1])])?),
        Expr::scale(sign * (k - 1), Expr::lin(&[n - 1, 1], vec![y(), Expr::word(&[1, 0])])?),
    ];
    if n >= 3 {
        parts.push(Expr::neg(Expr::lin(&[n - 2, 1, 1], vec![y(), x(), Expr::word(&[1, 1])])?));
    }
    Ok(Expr::Sum(parts))
}

/// `n x y^n - L_{n-1,1}(y, xy) + (n-1) L_{n-1,1}(y, yx) - L_{n-2,1,1}(y, x, y^2)`.
fn power_scaling(n: u32) -> Result<Expr> {
    power_scaling_with_sign(n, 1)
}

/// [`power_scaling`] with the sign of the `L_{n-1,1}(y, yx)` term flipped.
fn power_scaling_flipped(n: u32) -> Result<Expr> {
    power_scaling_with_sign(n, -1)
}

fn subsets(r: usize, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize == k {
            out.push((0..r as u8).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    out
}

/// `(x + y + z)^n - P_3(x,y,z) - sum P_2 - sum P_1` over all argument subsets.
fn power_sum_decomposition(n: u32) -> Result<Expr> {
    let s = Expr::sum([x(), y(), z()]);
    let mut parts = vec![Expr::prod(std::iter::repeat_n(s, n as usize))];
    for k in 1..=3usize.min(n as usize) {
        for sub in subsets(3, k) {
            parts.push(Expr::neg(Expr::full_sum(n, sub.into_iter().map(Expr::x).collect())));
        }
    }
    Ok(Expr::Sum(parts))
}

/// `sum_r (P_r - sum_delta F_delta)` over q-maximal `delta` of length `r`.
fn frobenius_partition(n: u32, q: u64) -> Result<Expr> {
    let mut parts = Vec::new();
    for r in 1..=n as usize {
        let args: Vec<Expr> = (0..r as u8).map(Expr::x).collect();
        parts.push(Expr::full_sum(n, args.clone()));
        let deltas: BTreeSet<Vec<u32>> = compositions(n, r)
            .into_iter()
            .map(|t| Ok(q_maximal(&ExponentVector::new(t)?, q).entries().to_vec()))
            .collect::<Result<_>>()?;
        for delta in deltas {
            let delta = ExponentVector::new(delta)?;
            parts.push(Expr::neg(Expr::Apply(GeneratorSpec::FrobeniusLin { delta, q }, args.clone())));
        }
    }
    Ok(Expr::Sum(parts))
}

fn frobenius_partition_q2(n: u32) -> Result<Expr> {
    frobenius_partition(n, 2)
}

fn frobenius_partition_q3(n: u32) -> Result<Expr> {
    frobenius_partition(n, 3)
}

/// `x L_21(y,z) - L_21(y,xz) - L_111(x,y,yz) + y L_111(x,y,z)`.
fn cubic_left_shift(_: u32) -> Result<Expr> {
    Ok(Expr::sum([
        Expr::prod([x(), Expr::lin(&[2, 1], vec![y(), z()])?]),
        Expr::neg(Expr::lin(&[2, 1], vec![y(), Expr::word(&[0, 2])])?),
        Expr::neg(Expr::lin(&[1, 1, 1], vec![x(), y(), Expr::word(&[1, 2])])?),
        Expr::prod([y(), Expr::lin(&[1, 1, 1], vec![x(), y(), z()])?]),
    ]))
}

/// `yzx^2y - y^2zx^2 - zx^2y^2 - L_21(y, zx^2)`.
fn cubic_reordering(_: u32) -> Result<Expr> {
    Ok(Expr::sum([
        Expr::word(&[1, 2, 0, 0, 1]),
        Expr::neg(Expr::word(&[1, 1, 2, 0, 0])),
        Expr::neg(Expr::word(&[2, 0, 0, 1, 1])),
        Expr::neg(Expr::lin(&[2, 1], vec![y(), Expr::word(&[2, 0, 0])])?),
    ]))
}

/// The identity corpus.
pub fn corpus() -> Vec<Identity> {
    vec![
        Identity {
            id: "shift-absorption",
            summary: "L_{n-1,1}(x, xy) = x L_{n-1,1}(x, y)",
            rings: &[Z, F2, F3],
            powers: Some((2, 8)),
            negative_control: false,
            build: shift_absorption,
        },
        Identity {
            id: "shift-absorption-multilinear",
            summary: "sum_i L_{1^n}(.., x_i y) = sum_i x_i L_{1^n}(.., y)",
            rings: &[Z],
            powers: Some((2, 6)),
            negative_control: false,
            build: shift_absorption_multilinear,
        },
        Identity {
            id: "power-scaling",
            summary: "n x y^n = L_{n-1,1}(y, xy) - (n-1) L_{n-1,1}(y, yx) + L_{n-2,1,1}(y, x, y^2)",
            rings: &[Z, F2, F3],
            powers: Some((3, 8)),
            negative_control: false,
            build: power_scaling,
        },
        Identity {
            id: "power-sum-decomposition",
            summary: "(x + y + z)^n = P_3(x,y,z) + sum P_2 + sum P_1",
            rings: &[Z],
            powers: Some((1, 5)),
            negative_control: false,
            build: power_sum_decomposition,
        },
        Identity {
            id: "frobenius-partition-q2",
            summary: "P_r = sum of F_delta over 2-maximal delta",
            rings: &[F2],
            powers: Some((1, 6)),
            negative_control: false,
            build: frobenius_partition_q2,
        },
        Identity {
            id: "frobenius-partition-q3",
            summary: "P_r = sum of F_delta over 3-maximal delta",
            rings: &[F3],
            powers: Some((1, 6)),
            negative_control: false,
            build: frobenius_partition_q3,
        },
        Identity {
            id: "cubic-left-shift",
            summary: "x L_21(y,z) = L_21(y,xz) + L_111(x,y,yz) - y L_111(x,y,z)",
            rings: &[F2],
            powers: None,
            negative_control: false,
            build: cubic_left_shift,
        },
        Identity {
            id: "cubic-reordering",
            summary: "yzx^2y = y^2zx^2 + zx^2y^2 + L_21(y, zx^2)",
            rings: &[F2],
            powers: None,
            negative_control: false,
            build: cubic_reordering,
        },
        Identity {
            id: "power-scaling-sign-flipped",
            summary: "power-scaling with the sign of (n-1) L_{n-1,1}(y, yx) flipped",
            rings: &[Z],
            powers: Some((3, 8)),
            negative_control: true,
            build: power_scaling_flipped,
        },
    ]
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub identity_id: String,
    pub ring: String,
    /// The power the identity was instantiated at; absent for fixed identities.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    /// Whether the identity behaved as expected: vanished, or for a
    /// negative control, did not.
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub negative_control: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
}

/// Runs every identity of the corpus for each `n` in `lo..=hi` (clipped to
/// the identity's own range); fixed identities run once.
pub fn run_suite(lo: u32, hi: u32) -> Result<Vec<SuiteEntry>> {
    if hi > 8 {
        return Err(Error::invalid("identity suite is limited to n <= 8"));
    }
    let mut out = Vec::new();
    for id in corpus() {
        let ns: Vec<Option<u32>> = match id.powers {
            Some((a, b)) => (lo.max(a)..=hi.min(b)).map(Some).collect(),
            None => vec![None],
        };
        for n in ns {
            let e = (id.build)(n.unwrap_or(3))?;
            for &ring in id.rings {
                let witness = zero_or_witness(&e, ring)?;
                out.push(SuiteEntry {
                    identity_id: id.id.to_string(),
                    ring: ring.to_string(),
                    n,
                    pass: witness.is_some() == id.negative_control,
                    negative_control: id.negative_control,
                    witness,
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_bilinear_part() {
        let e = Expr::sub(
            Expr::lin(&[1, 1], vec![x(), y()]).unwrap(),
            Expr::sum([Expr::word(&[0, 1]), Expr::word(&[1, 0])]),
        );
        assert!(verify_zero(&e, Z).unwrap());
    }

    #[test]
    fn two_one_linearization_is_palindromic() {
        let l = Expr::lin(&[2, 1], vec![x(), y()]).unwrap();
        let e = Expr::sub(Expr::star(l.clone()), l);
        assert!(verify_zero(&e, Z).unwrap());
    }

    #[test]
    fn full_sum_of_two_for_squares() {
        let p = expand(&Expr::full_sum(2, vec![x(), y()]), F2).unwrap();
        let want = expand(&Expr::sum([Expr::word(&[0, 1]), Expr::word(&[1, 0])]), F2).unwrap();
        assert_eq!(p, want);
    }

    #[test]
    fn displayed_identities_vanish() {
        for n in 3..=6 {
            assert!(verify_zero(&shift_absorption(n).unwrap(), Z).unwrap());
            assert!(verify_zero(&power_scaling(n).unwrap(), Z).unwrap());
        }
        assert!(verify_zero(&cubic_left_shift(3).unwrap(), F2).unwrap());
        assert!(verify_zero(&cubic_reordering(3).unwrap(), F2).unwrap());
    }

    #[test]
    fn cubic_identities_need_characteristic_two() {
        assert!(!verify_zero(&cubic_reordering(3).unwrap(), Z).unwrap());
        assert!(!verify_zero(&cubic_reordering(3).unwrap(), F3).unwrap());
    }

    #[test]
    fn partition_for_q3_n5_pairs() {
        let args = vec![x(), y()];
        let p = expand(&Expr::full_sum(5, args.clone()), F3).unwrap();
        let mut acc = FreePoly::zero(F3);
        let deltas: BTreeSet<Vec<u32>> = compositions(5, 2)
            .into_iter()
            .map(|t| q_maximal(&ExponentVector::new(t).unwrap(), 3).entries().to_vec())
            .collect();
        assert_eq!(deltas.len(), 2);
        for delta in deltas {
            let g = GeneratorSpec::FrobeniusLin {
                delta: ExponentVector::new(delta).unwrap(),
                q: 3,
            };
            acc = acc.add(&expand(&Expr::Apply(g, args.clone()), F3).unwrap()).unwrap();
        }
        assert_eq!(acc, p);
    }

    #[test]
    fn flipped_sign_leaves_a_witness() {
        let w = zero_or_witness(&power_scaling_flipped(4).unwrap(), Z).unwrap();
        let w = w.expect("sign flip must not vanish");
        assert!(w.word.contains("x2"));
        assert_ne!(w.coefficient, "0");
    }

    #[test]
    fn multilinear_form_is_a_component_of_the_substitution() {
        // substitute x -> x1 + .. + xn in the shift absorption and take the
        // component of degree one in every letter
        let n = 4u32;
        let s = Expr::sum((0..n as u8).map(Expr::x));
        let y = Expr::x(n as u8);
        let whole = Expr::sub(
            Expr::lin(&[n - 1, 1], vec![s.clone(), Expr::prod([s.clone(), y.clone()])]).unwrap(),
            Expr::prod([s.clone(), Expr::lin(&[n - 1, 1], vec![s, y]).unwrap()]),
        );
        let lhs_only = match &whole {
            Expr::Sum(v) => v[0].clone(),
            _ => unreachable!(),
        };
        let ones = MultiDegree(vec![1; n as usize + 1]);
        let comp = expand(&Expr::Component(ones.clone(), Box::new(lhs_only.clone())), Z).unwrap();
        let lhs = expand(&lhs_only, Z).unwrap();
        assert!(!comp.is_zero());
        // summing all components gives back the whole
        let mut acc = FreePoly::zero(Z);
        for part in lhs.components(n as usize + 1).unwrap().values() {
            acc = acc.add(part).unwrap();
        }
        assert_eq!(acc, lhs);
        // and the multilinear identity is the component of the substituted one
        let ml = shift_absorption_multilinear(n).unwrap();
        assert!(verify_zero(&ml, Z).unwrap());
        assert!(expand(&Expr::Component(ones, Box::new(whole)), Z).unwrap().is_zero());
        let ml_lhs = match ml {
            Expr::Sum(v) => Expr::Sum(v.into_iter().step_by(2).collect()),
            _ => unreachable!(),
        };
        // each word is an arrangement of x_1..x_n with y right after one letter
        assert_eq!(expand(&ml_lhs, Z).unwrap(), comp);
    }

    #[test]
    fn full_suite_for_small_powers() {
        let report = run_suite(3, 5).unwrap();
        assert!(report.iter().all(|e| e.pass), "{report:?}");
        let controls: Vec<&SuiteEntry> = report.iter().filter(|e| e.negative_control).collect();
        assert!(!controls.is_empty());
        assert!(controls.iter().all(|e| e.witness.is_some()));
        let json = serde_json::to_string(&report).unwrap();
        let back: Vec<SuiteEntry> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
