use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{rank_word, unrank_word, Word};

/// How coordinates are split into independent blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "modulus")]
pub enum BlockScheme {
    /// One block holding every word.
    Single,
    /// Words grouped by multidegree reduced componentwise modulo `m`.
    ResidueMod(u32),
    /// Words grouped by exact multidegree.
    FullMultidegree,
}

/// Global coordinates are words of degree `1..=top`, ordered by degree and
/// then lexicographically; each word also has a local index inside its block.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub d: usize,
    pub top: usize,
    pub scheme: BlockScheme,
    /// `offsets[k]` is the global index of the first word of degree `k`.
    pub offsets: Vec<usize>,
    pub pow: Vec<usize>,
    pub block_of: Vec<u32>,
    pub local_of: Vec<u32>,
    pub blocks: Vec<BlockInfo>,
}

#[derive(Clone, Debug)]
pub(crate) struct BlockInfo {
    #[cfg_attr(not(test), allow(dead_code))]
    pub label: Vec<u32>,
    /// Global columns of this block, ascending.
    pub cols: Vec<u32>,
    /// `deg_start[k]` is the first local column of degree `k` (`k` in `1..=top+1`).
    pub deg_start: Vec<usize>,
}

impl BlockInfo {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn degree_of_local(&self, c: usize) -> usize {
        self.deg_start.partition_point(|&s| s <= c) - 1
    }

    /// Number of local columns of degree `k`.
    pub fn cols_of_degree(&self, k: usize) -> usize {
        self.deg_start[k + 1] - self.deg_start[k]
    }
}

/// Number of words of degree `1..=top` over `d` letters, if it fits.
pub fn coordinate_count(d: usize, top: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut p: usize = 1;
    for _ in 0..top {
        p = p.checked_mul(d)?;
        total = total.checked_add(p)?;
    }
    Some(total)
}

impl Layout {
    pub fn new(d: usize, top: usize, scheme: BlockScheme, max_coordinates: Option<usize>) -> Result<Self> {
        if d == 0 || top == 0 {
            return Err(Error::invalid("need d >= 1 and truncation >= 1"));
        }
        let total = coordinate_count(d, top)
            .filter(|&t| t <= u32::MAX as usize)
            .ok_or_else(|| Error::BudgetExceeded {
                what: format!("coordinate space for d={d}, truncation {top} overflows"),
                checkpoint: None,
            })?;
        if let Some(limit) = max_coordinates {
            if total > limit {
                return Err(Error::BudgetExceeded {
                    what: format!("{total} coordinates exceed the limit of {limit}"),
                    checkpoint: None,
                });
            }
        }
        let mut pow = vec![1usize; top + 2];
        for k in 1..top + 2 {
            pow[k] = pow[k - 1].saturating_mul(d);
        }
        let mut offsets = vec![0usize; top + 2];
        for k in 2..top + 2 {
            offsets[k] = offsets[k - 1] + pow[k - 1];
        }
        let mut block_of = vec![0u32; total];
        let mut local_of = vec![0u32; total];
        let mut blocks: Vec<BlockInfo> = Vec::new();
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut mdeg = vec![0u32; d];
        let mut letters: Vec<usize> = Vec::with_capacity(top);
        for k in 1..=top {
            letters.clear();
            letters.resize(k, 0);
            mdeg.iter_mut().for_each(|e| *e = 0);
            mdeg[0] = k as u32;
            for r in 0..pow[k] {
                if r > 0 {
                    // increment the base-d counter, keeping mdeg in step
                    let mut i = k - 1;
                    loop {
                        mdeg[letters[i]] -= 1;
                        letters[i] += 1;
                        if letters[i] == d {
                            letters[i] = 0;
                            mdeg[0] += 1;
                            i -= 1;
                        } else {
                            mdeg[letters[i]] += 1;
                            break;
                        }
                    }
                }
                let label: Vec<u32> = match scheme {
                    BlockScheme::Single => Vec::new(),
                    BlockScheme::ResidueMod(m) => mdeg.iter().map(|&e| e % m.max(1)).collect(),
                    BlockScheme::FullMultidegree => mdeg.clone(),
                };
                let id = *ids.entry(label.clone()).or_insert_with(|| {
                    blocks.push(BlockInfo {
                        label,
                        cols: Vec::new(),
                        deg_start: Vec::new(),
                    });
                    (blocks.len() - 1) as u32
                });
                let g = offsets[k] + r;
                let b = &mut blocks[id as usize];
                block_of[g] = id;
                local_of[g] = b.cols.len() as u32;
                b.cols.push(g as u32);
            }
        }
        for b in &mut blocks {
            let mut starts = vec![0usize; top + 2];
            for (k, slot) in starts.iter_mut().enumerate().skip(1) {
                *slot = b.cols.partition_point(|&g| (g as usize) < offsets[k]);
            }
            starts[top + 1] = b.cols.len();
            b.deg_start = starts;
        }
        Ok(Layout {
            d,
            top,
            scheme,
            offsets,
            pow,
            block_of,
            local_of,
            blocks,
        })
    }

    pub fn total(&self) -> usize {
        self.block_of.len()
    }

    pub fn degree_of(&self, g: usize) -> usize {
        self.offsets.partition_point(|&o| o <= g) - 1
    }

    /// Global index of `x * w` or `w * x`, or `None` when it exceeds the top degree.
    pub fn times_letter(&self, g: usize, x: usize, left: bool) -> Option<usize> {
        let k = self.degree_of(g);
        if k + 1 > self.top {
            return None;
        }
        let rank = g - self.offsets[k];
        let r = if left { x * self.pow[k] + rank } else { rank * self.d + x };
        Some(self.offsets[k + 1] + r)
    }

    pub fn index_of(&self, w: &Word) -> Result<Option<usize>> {
        if w.is_unit() {
            return Err(Error::invalid("the unit word has no coordinate"));
        }
        let k = w.degree();
        let r = rank_word(w, self.d)? as usize;
        Ok((k <= self.top).then(|| self.offsets[k] + r))
    }

    pub fn word_of(&self, g: usize) -> Word {
        let k = self.degree_of(g);
        unrank_word(k, self.d, (g - self.offsets[k]) as u64).expect("index in range")
    }

    pub fn locate(&self, g: usize) -> (usize, usize) {
        (self.block_of[g] as usize, self.local_of[g] as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_indices_follow_deglex() {
        let l = Layout::new(2, 3, BlockScheme::Single, None).unwrap();
        assert_eq!(l.total(), 14);
        let mut prev: Option<Word> = None;
        for g in 0..l.total() {
            let w = l.word_of(g);
            assert_eq!(l.index_of(&w).unwrap(), Some(g));
            if let Some(p) = prev {
                assert!(p < w);
            }
            prev = Some(w);
        }
    }

    #[test]
    fn letter_products() {
        let l = Layout::new(3, 4, BlockScheme::Single, None).unwrap();
        for g in 0..l.offsets[4] {
            let w = l.word_of(g);
            for x in 0..3u8 {
                let left = l.times_letter(g, x as usize, true).unwrap();
                let right = l.times_letter(g, x as usize, false).unwrap();
                assert_eq!(l.word_of(left), Word::letter(x).concat(&w));
                assert_eq!(l.word_of(right), w.concat(&Word::letter(x)));
            }
        }
        assert_eq!(l.times_letter(l.total() - 1, 0, true), None);
    }

    #[test]
    fn residue_blocks_group_multidegrees() {
        let l = Layout::new(2, 4, BlockScheme::ResidueMod(2), None).unwrap();
        assert_eq!(l.blocks.len(), 4);
        for g in 0..l.total() {
            let w = l.word_of(g);
            let (b, local) = l.locate(g);
            let m = crate::words::mdeg(&w, 2).unwrap();
            let label: Vec<u32> = m.entries().iter().map(|e| e % 2).collect();
            assert_eq!(l.blocks[b].label, label);
            assert_eq!(l.blocks[b].cols[local] as usize, g);
            assert_eq!(l.blocks[b].degree_of_local(local), w.degree());
        }
    }

    #[test]
    fn full_multidegree_blocks() {
        let l = Layout::new(2, 10, BlockScheme::FullMultidegree, None).unwrap();
        let largest = l.blocks.iter().map(BlockInfo::ncols).max().unwrap();
        assert_eq!(largest, 252);
    }

    #[test]
    fn coordinate_budget() {
        assert!(matches!(
            Layout::new(4, 7, BlockScheme::Single, Some(1000)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(coordinate_count(4, 7), Some(21844));
    }
}
