//! Level-ordered closure of the truncated relation span.
//!
//! Rows live in per-block echelons whose pivot is the first nonzero local
//! column, i.e. the deglex-smallest word, so a row's pivot degree is its
//! lowest degree. Multiplying by a letter raises the lowest degree by one.
//! Level `m` therefore consumes the seeds of lowest degree `m` plus the letter
//! products of rows with pivot degree `m - 1`, and once it has run no later
//! level can add a row of pivot degree below `m`. The candidate list of a
//! level is a function of the state at its start, which makes a checkpoint
//! taken anywhere inside a level resumable by replaying that level.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::layout::Layout;
use super::seeds::{SeedItem, SeedOrder, SeedSource};
use crate::error::{Error, Result};
use crate::exactla::{Backend, Echelon};

/// Candidates handed to one parallel pre-reduction round. Fixed, so results
/// do not depend on the number of worker threads.
const BATCH: usize = 128;

#[derive(Clone, Debug)]
enum Candidate {
    Seed(usize),
    Product { block: u32, row: u32, letter: u8, left: bool },
}

/// Limits for one closure run.
pub(crate) struct Control {
    pub jobs: usize,
    pub budget_bytes: Option<usize>,
    pub max_rows: Option<usize>,
    pub deadline: Option<Instant>,
    pub cancel: Option<Arc<AtomicBool>>,
    pub seed_order: SeedOrder,
}

/// Why a run stopped before finishing.
#[derive(Debug)]
pub(crate) enum Stop {
    Budget(String),
    Cancelled,
}

#[derive(Clone, Debug)]
pub(crate) struct Engine<B: Backend> {
    pub backend: B,
    pub layout: Layout,
    pub echelons: Vec<Echelon<B>>,
    top_pivots: Vec<usize>,
    /// Last level whose candidates were all processed.
    pub completed_level: usize,
}

impl<B: Backend> Engine<B> {
    pub fn new(backend: B, layout: Layout) -> Self {
        let echelons = layout
            .blocks
            .iter()
            .map(|b| Echelon::new(backend.clone(), b.ncols()))
            .collect();
        let top_pivots = vec![0; layout.blocks.len()];
        Engine {
            backend,
            layout,
            echelons,
            top_pivots,
            completed_level: 0,
        }
    }

    pub fn from_state(backend: B, layout: Layout, echelons: Vec<Echelon<B>>, completed_level: usize) -> Self {
        let mut e = Engine {
            backend,
            layout,
            echelons,
            top_pivots: Vec::new(),
            completed_level,
        };
        e.top_pivots = (0..e.echelons.len())
            .map(|b| {
                let info = &e.layout.blocks[b];
                e.echelons[b]
                    .pivots()
                    .iter()
                    .filter(|&&c| info.degree_of_local(c) == e.layout.top)
                    .count()
            })
            .collect();
        e
    }

    pub fn rank(&self) -> usize {
        self.echelons.iter().map(Echelon::rank).sum()
    }

    pub fn storage_bytes(&self) -> usize {
        self.echelons.iter().map(Echelon::storage_bytes).sum()
    }

    /// Every word of the top degree lies in the span.
    pub fn saturated(&self) -> bool {
        let top = self.layout.top;
        self.layout
            .blocks
            .iter()
            .zip(&self.top_pivots)
            .all(|(b, &n)| n == b.cols_of_degree(top))
    }

    /// Builds a block row from global (column, value) terms; `None` if zero.
    pub fn row_from_terms(&self, terms: &[(usize, B::Elem)]) -> Result<Option<(usize, B::Row)>> {
        let Some(&(first, _)) = terms.first() else {
            return Ok(None);
        };
        let block = self.layout.block_of[first] as usize;
        let mut row = self.echelons[block].zero_row();
        for (g, v) in terms {
            let (b, local) = self.layout.locate(*g);
            if b != block {
                return Err(Error::invalid("relation instance straddles coordinate blocks"));
            }
            self.backend.add_entry(&mut row, local, v);
        }
        if self.backend.is_zero_row(&row) {
            return Ok(None);
        }
        Ok(Some((block, row)))
    }

    fn product(&self, block: usize, row: usize, letter: usize, left: bool) -> Option<(usize, B::Row)> {
        let info = &self.layout.blocks[block];
        let src = &self.echelons[block].rows()[row];
        let mut target: Option<(usize, B::Row)> = None;
        self.backend.for_each_nonzero(src, |c, v| {
            let g = info.cols[c] as usize;
            if let Some(h) = self.layout.times_letter(g, letter, left) {
                let (b, local) = self.layout.locate(h);
                let (_, r) = target.get_or_insert_with(|| (b, self.echelons[b].zero_row()));
                self.backend.add_entry(r, local, v);
            }
        });
        target
    }

    fn materialize(&self, source: &SeedSource, seeds: &[SeedItem], c: &Candidate) -> Result<Option<(usize, B::Row)>> {
        match c {
            Candidate::Seed(i) => {
                let terms: Vec<(usize, B::Elem)> = source
                    .terms(&self.layout, &seeds[*i])
                    .into_iter()
                    .map(|(g, k)| (g, self.backend.elem_from_i64(k)))
                    .filter(|(_, v)| !self.backend.elem_is_zero(v))
                    .collect();
                self.row_from_terms(&terms)
            }
            Candidate::Product { block, row, letter, left } => {
                Ok(self.product(*block as usize, *row as usize, *letter as usize, *left))
            }
        }
    }

    fn insert(&mut self, block: usize, row: B::Row) {
        if let Some(idx) = self.echelons[block].insert(row) {
            let c = self.echelons[block].pivots()[idx];
            if self.layout.blocks[block].degree_of_local(c) == self.layout.top {
                self.top_pivots[block] += 1;
            }
        }
    }

    fn level_candidates(&self, m: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        if m < 2 {
            return out;
        }
        for (b, e) in self.echelons.iter().enumerate() {
            let info = &self.layout.blocks[b];
            for (i, &c) in e.pivots().iter().enumerate() {
                if info.degree_of_local(c) != m - 1 {
                    continue;
                }
                for x in 0..self.layout.d {
                    for left in [true, false] {
                        out.push(Candidate::Product {
                            block: b as u32,
                            row: i as u32,
                            letter: x as u8,
                            left,
                        });
                    }
                }
            }
        }
        out
    }

    fn check_limits(&self, ctl: &Control) -> Option<Stop> {
        if let Some(flag) = &ctl.cancel {
            if flag.load(Ordering::Relaxed) {
                return Some(Stop::Cancelled);
            }
        }
        if let Some(limit) = ctl.budget_bytes {
            let used = self.storage_bytes();
            if used > limit {
                return Some(Stop::Budget(format!("row storage {used} bytes exceeds {limit}")));
            }
        }
        if let Some(limit) = ctl.max_rows {
            if self.rank() > limit {
                return Some(Stop::Budget(format!("row count exceeds {limit}")));
            }
        }
        if let Some(deadline) = ctl.deadline {
            if Instant::now() > deadline {
                return Some(Stop::Budget("wall-clock limit reached".into()));
            }
        }
        None
    }

    /// Runs levels `completed_level + 1 ..= top`, calling `on_level` after
    /// each completed level.
    pub fn run(
        &mut self,
        source: &SeedSource,
        ctl: &Control,
        on_level: &mut dyn FnMut(&Self) -> Result<()>,
    ) -> Result<Option<Stop>> {
        let pool = if ctl.jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(ctl.jobs)
                    .build()
                    .map_err(|e| Error::invalid(format!("thread pool: {e}")))?,
            )
        } else {
            None
        };
        let top = self.layout.top;
        for m in self.completed_level + 1..=top {
            let seeds = source.level_items(&self.layout, m, ctl.seed_order);
            let mut cands = self.level_candidates(m);
            cands.extend((0..seeds.len()).map(Candidate::Seed));
            for batch in cands.chunks(BATCH) {
                if m == top && self.saturated() {
                    break;
                }
                let reduce = |c: &Candidate| -> Result<Option<(usize, B::Row)>> {
                    let Some((b, mut row)) = self.materialize(source, &seeds, c)? else {
                        return Ok(None);
                    };
                    Ok(self.echelons[b].reduce_leading(&mut row).map(|_| (b, row)))
                };
                let reduced: Vec<Option<(usize, B::Row)>> = match &pool {
                    Some(p) => p.install(|| batch.par_iter().map(reduce).collect::<Result<_>>())?,
                    None => batch.iter().map(reduce).collect::<Result<_>>()?,
                };
                for (b, row) in reduced.into_iter().flatten() {
                    self.insert(b, row);
                }
                if let Some(stop) = self.check_limits(ctl) {
                    return Ok(Some(stop));
                }
            }
            self.completed_level = m;
            on_level(self)?;
        }
        Ok(None)
    }

    /// True when every block component of the terms reduces to zero.
    pub fn contains_terms(&self, terms: &[(usize, B::Elem)]) -> Result<bool> {
        #[allow(clippy::type_complexity)]
        let mut by_block: Vec<(usize, Vec<(usize, B::Elem)>)> = Vec::new();
        for (g, v) in terms {
            let b = self.layout.block_of[*g] as usize;
            match by_block.iter_mut().find(|(x, _)| *x == b) {
                Some((_, list)) => list.push((*g, v.clone())),
                None => by_block.push((b, vec![(*g, v.clone())])),
            }
        }
        for (_, list) in by_block {
            if let Some((b, mut row)) = self.row_from_terms(&list)? {
                if self.echelons[b].reduce_leading(&mut row).is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Echelon of a block with reversed columns, so that pivots are the
    /// deglex-largest words. When the space is saturated, the top-degree
    /// columns are all pivots and only the lower part is reduced; the
    /// returned column count is then that of the lower part.
    pub fn reversed_block(&self, b: usize, use_saturation: bool) -> (Echelon<B>, usize) {
        let info = &self.layout.blocks[b];
        let ncols = if use_saturation {
            info.deg_start[self.layout.top]
        } else {
            info.ncols()
        };
        let mut rev = Echelon::new(self.backend.clone(), ncols);
        for row in self.echelons[b].rows() {
            let mut r = rev.zero_row();
            let mut any = false;
            self.backend.for_each_nonzero(row, |c, v| {
                if c < ncols {
                    self.backend.add_entry(&mut r, ncols - 1 - c, v);
                    any = true;
                }
            });
            if any {
                rev.insert(r);
            }
        }
        (rev, ncols)
    }
}
