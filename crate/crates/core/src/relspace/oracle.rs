//! Seeds `x^n` for every nonzero polynomial `x` over F_q supported on words
//! of degree at most `k`: the defining ideal of the nil-algebra taken
//! literally, used as ground truth at tiny scale.

use std::collections::HashMap;

use super::layout::Layout;
use super::seeds::{merge_terms, ExplicitSeed};
use crate::error::{Error, Result};

/// Most polynomials the oracle will enumerate.
pub const ORACLE_LIMIT: u64 = 2_000_000;

fn concat(layout: &Layout, a: usize, b: usize) -> Option<usize> {
    let (ka, kb) = (layout.degree_of(a), layout.degree_of(b));
    if ka + kb > layout.top {
        return None;
    }
    let ra = a - layout.offsets[ka];
    let rb = b - layout.offsets[kb];
    Some(layout.offsets[ka + kb] + ra * layout.pow[kb] + rb)
}

fn mul(layout: &Layout, f: &[(usize, i64)], g: &[(usize, i64)], q: i64) -> Vec<(usize, i64)> {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for &(a, x) in f {
        for &(b, y) in g {
            if let Some(c) = concat(layout, a, b) {
                let e = acc.entry(c).or_insert(0);
                *e = (*e + x * y) % q;
            }
        }
    }
    let terms: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
    merge_terms(terms)
}

pub(crate) fn power_seeds(layout: &Layout, n: u32, q: u64, k: usize) -> Result<Vec<ExplicitSeed>> {
    if k == 0 || k > layout.top {
        return Err(Error::invalid(format!("support degree bound {k} out of range")));
    }
    let support: Vec<usize> = (0..layout.offsets[k + 1]).collect();
    let count = (q as u128).checked_pow(support.len() as u32).map(|c| c - 1);
    match count {
        Some(c) if c <= ORACLE_LIMIT as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded {
                what: format!(
                    "oracle would enumerate {q}^{} - 1 polynomials (limit {ORACLE_LIMIT})",
                    support.len()
                ),
                checkpoint: None,
            })
        }
    }
    let qi = q as i64;
    let mut coeffs = vec![0i64; support.len()];
    let mut out = Vec::new();
    loop {
        // next coefficient vector in base q; stop after wrapping to zero
        let mut i = 0;
        while i < coeffs.len() {
            coeffs[i] += 1;
            if coeffs[i] == qi {
                coeffs[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if i == coeffs.len() {
            break;
        }
        let x: Vec<(usize, i64)> = support
            .iter()
            .zip(&coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(&g, &c)| (g, c))
            .collect();
        let mut p = x.clone();
        for _ in 1..n {
            p = mul(layout, &p, &x, qi);
        }
        if let Some(&(first, _)) = p.first() {
            out.push(ExplicitSeed {
                level: layout.degree_of(first),
                terms: p,
            });
        }
    }
    Ok(out)
}
