//! Enumeration of relation seeds `f(a_1, ..., a_r)` level by level, where the
//! level of a seed is the lowest degree of a word it contains.

use serde::{Deserialize, Serialize};

use super::layout::Layout;
use crate::linearize::GeneratorSpec;
use crate::words::{enumerate_words, MultiDegree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SeedOrder {
    #[default]
    Natural,
    Reversed,
}

struct Constituent {
    theta: Vec<u32>,
    /// Slot sequences of every word of multidegree `theta`.
    patterns: Vec<Vec<u8>>,
}

struct GenPlan {
    labels: Vec<u32>,
    constituents: Vec<Constituent>,
}

/// Seeds from a generating set with word arguments.
pub(crate) struct GeneratorSeeds {
    gens: Vec<GenPlan>,
    max_arg_degree: Option<usize>,
}

/// A seed given directly by its (global column, integer coefficient) terms.
#[derive(Clone, Debug)]
pub(crate) struct ExplicitSeed {
    pub level: usize,
    pub terms: Vec<(usize, i64)>,
}

pub(crate) enum SeedSource {
    Generators(GeneratorSeeds),
    Explicit(Vec<ExplicitSeed>),
}

#[derive(Clone, Debug)]
pub(crate) enum SeedItem {
    Instance { gen: u16, args: Vec<u32> },
    Explicit(usize),
}

impl GeneratorSeeds {
    pub fn new(gens: &[GeneratorSpec], max_arg_degree: Option<usize>) -> Self {
        let gens = gens
            .iter()
            .map(|g| GenPlan {
                labels: g.slot_labels(),
                constituents: g
                    .constituents()
                    .into_iter()
                    .map(|theta| {
                        let patterns = enumerate_words(&MultiDegree(theta.clone()))
                            .into_iter()
                            .map(|w| w.letters().to_vec())
                            .collect();
                        Constituent { theta, patterns }
                    })
                    .collect(),
            })
            .collect();
        GeneratorSeeds { gens, max_arg_degree }
    }

    fn lowest_degree(plan: &GenPlan, e: &[usize]) -> usize {
        plan.constituents
            .iter()
            .map(|c| c.theta.iter().zip(e).map(|(&t, &x)| t as usize * x).sum::<usize>())
            .min()
            .unwrap_or(usize::MAX)
    }

    /// Degree tuples whose lowest instance degree is exactly `level`, with
    /// degrees non-decreasing across interchangeable slots.
    fn degree_tuples(&self, plan: &GenPlan, level: usize) -> Vec<Vec<usize>> {
        let r = plan.labels.len();
        let cap = self.max_arg_degree.unwrap_or(level).min(level);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(r);
        fn rec(
            plan: &GenPlan,
            cap: usize,
            budget: usize,
            level: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let i = cur.len();
            if i == plan.labels.len() {
                if GeneratorSeeds::lowest_degree(plan, cur) == level {
                    out.push(cur.clone());
                }
                return;
            }
            let floor = (0..i)
                .rev()
                .find(|&j| plan.labels[j] == plan.labels[i])
                .map_or(1, |j| cur[j]);
            let remaining_slots = plan.labels.len() - i - 1;
            for e in floor..=cap {
                if e + remaining_slots > budget {
                    break;
                }
                cur.push(e);
                rec(plan, cap, budget - e, level, cur, out);
                cur.pop();
            }
        }
        if r <= level {
            rec(plan, cap, level, level, &mut cur, &mut out);
        }
        out
    }

    pub fn level_items(&self, layout: &Layout, level: usize, out: &mut Vec<SeedItem>) {
        for (gi, plan) in self.gens.iter().enumerate() {
            for e in self.degree_tuples(plan, level) {
                let r = e.len();
                let mut ranks = vec![0usize; r];
                // ranks[i] runs over 0..d^e_i; equal-label slots of equal
                // degree carry non-decreasing ranks
                let floor_slot: Vec<Option<usize>> = (0..r)
                    .map(|i| {
                        (0..i)
                            .rev()
                            .find(|&j| plan.labels[j] == plan.labels[i])
                            .filter(|&j| e[j] == e[i])
                    })
                    .collect();
                fn rec(
                    i: usize,
                    e: &[usize],
                    floor_slot: &[Option<usize>],
                    ranks: &mut Vec<usize>,
                    layout: &Layout,
                    gi: usize,
                    out: &mut Vec<SeedItem>,
                ) {
                    if i == e.len() {
                        let args = ranks
                            .iter()
                            .zip(e)
                            .map(|(&rk, &k)| (layout.offsets[k] + rk) as u32)
                            .collect();
                        out.push(SeedItem::Instance { gen: gi as u16, args });
                        return;
                    }
                    let lo = floor_slot[i].map_or(0, |j| ranks[j]);
                    for rk in lo..layout.pow[e[i]] {
                        ranks[i] = rk;
                        rec(i + 1, e, floor_slot, ranks, layout, gi, out);
                    }
                }
                rec(0, &e, &floor_slot, &mut ranks, layout, gi, out);
            }
        }
    }

    /// Terms of `trunc(f(args))` as (global column, multiplicity).
    pub fn expand(&self, layout: &Layout, gen: u16, args: &[u32]) -> Vec<(usize, i64)> {
        let plan = &self.gens[gen as usize];
        let degs: Vec<usize> = args.iter().map(|&a| layout.degree_of(a as usize)).collect();
        let ranks: Vec<usize> = args
            .iter()
            .zip(&degs)
            .map(|(&a, &k)| a as usize - layout.offsets[k])
            .collect();
        let mut terms: Vec<(usize, i64)> = Vec::new();
        for c in &plan.constituents {
            let w: usize = c.theta.iter().zip(&degs).map(|(&t, &k)| t as usize * k).sum();
            if w > layout.top {
                continue;
            }
            for p in &c.patterns {
                let mut rank = 0usize;
                for &slot in p {
                    let s = slot as usize;
                    rank = rank * layout.pow[degs[s]] + ranks[s];
                }
                terms.push((layout.offsets[w] + rank, 1));
            }
        }
        merge_terms(terms)
    }
}

/// Sorts by column and adds multiplicities of repeated columns.
pub(crate) fn merge_terms(mut terms: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
    for (c, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

impl SeedSource {
    pub fn level_items(&self, layout: &Layout, level: usize, order: SeedOrder) -> Vec<SeedItem> {
        let mut out = Vec::new();
        match self {
            SeedSource::Generators(g) => g.level_items(layout, level, &mut out),
            SeedSource::Explicit(list) => {
                out.extend(
                    list.iter()
                        .enumerate()
                        .filter(|(_, s)| s.level == level)
                        .map(|(i, _)| SeedItem::Explicit(i)),
                );
            }
        }
        if order == SeedOrder::Reversed {
            out.reverse();
        }
        out
    }

    pub fn terms(&self, layout: &Layout, item: &SeedItem) -> Vec<(usize, i64)> {
        match (self, item) {
            (SeedSource::Generators(g), SeedItem::Instance { gen, args }) => g.expand(layout, *gen, args),
            (SeedSource::Explicit(list), SeedItem::Explicit(i)) => list[*i].terms.clone(),
            _ => unreachable!("seed item from another source"),
        }
    }
}
