//! The relation ideal of `N_{n,d} = F<X>_d / <x^n>` truncated at degree `D`,
//! kept as a block-decomposed row space over the prime field (or Q).
//!
//! The ideal is the plain linear span of the instances `u f(a) v` for `f` in
//! the generating set, so truncating every instance at degree `D` maps the
//! ideal exactly onto the truncated span `J_D`. The space is built by closing
//! the truncated seeds `f(a)` under multiplication by letters on either side.
//!
//! Nilpotency: call `J_D` saturated when it contains every word of degree
//! `D`. If the ideal contains all words of degree `>= D`, each of them
//! truncates to itself, so `J_D` is saturated. Conversely, if `J_D` is
//! saturated, each word `w` of degree `D` equals an ideal element up to
//! words of degree `> D`; applying this to those words repeatedly pushes the
//! remainder above any degree, and since the nil-algebra is nilpotent the
//! remainder eventually lies in the ideal, so `w` does too. The nilpotency
//! degree is therefore the least saturated `D`, and saturation is monotone.

mod checkpoint;
mod engine;
mod layout;
mod oracle;
mod seeds;

use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use checkpoint::{read_checkpoint_header, CheckpointHeader, SpaceSource, CHECKPOINT_FORMAT, CHECKPOINT_VERSION};
pub use layout::{coordinate_count, BlockScheme};
pub use oracle::ORACLE_LIMIT;
pub use seeds::SeedOrder;

use checkpoint::RowCodec;
use engine::{Control, Engine, Stop};
use layout::Layout;
use seeds::{GeneratorSeeds, SeedSource};

use crate::error::{Error, Result};
use crate::exactla::{Backend, CoefficientRing, Gf2, Gfp, Rat, Scalar};
use crate::linearize::{generator_set, FieldSpec, GeneratorSpec};
use crate::words::{FreePoly, Word};

impl BlockScheme {
    /// Finest decomposition valid for the generating set of `field`:
    /// residues mod `q - 1` for the Frobenius sums of a small field, exact
    /// multidegrees when every generator is a single `L_theta`.
    pub fn for_field(n: u32, field: &FieldSpec) -> Self {
        match field.order() {
            Some(2) if n > 2 => BlockScheme::Single,
            Some(q) if q < n as u64 => BlockScheme::ResidueMod((q - 1) as u32),
            _ => BlockScheme::FullMultidegree,
        }
    }
}

/// Knobs for building a relation space.
#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Worker threads for candidate pre-reduction; results do not depend on it.
    pub jobs: usize,
    /// Restrict generator arguments to words of at most this degree.
    pub max_arg_degree: Option<usize>,
    pub budget_bytes: Option<usize>,
    pub max_coordinates: Option<usize>,
    pub max_rows: Option<usize>,
    pub deadline: Option<Instant>,
    pub cancel: Option<Arc<AtomicBool>>,
    /// Checkpoint written when a build stops early, and after every level
    /// when `checkpoint_each_level` is set.
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_each_level: bool,
    /// Stored verbatim in the checkpoint header.
    pub checkpoint_context: serde_json::Value,
    pub seed_order: SeedOrder,
    /// Overrides [`BlockScheme::for_field`].
    pub block_scheme: Option<BlockScheme>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            jobs: 1,
            max_arg_degree: None,
            budget_bytes: None,
            max_coordinates: None,
            max_rows: None,
            deadline: None,
            cancel: None,
            checkpoint: None,
            checkpoint_each_level: false,
            checkpoint_context: serde_json::Value::Null,
            seed_order: SeedOrder::Natural,
            block_scheme: None,
        }
    }
}

impl BuildOptions {
    fn control(&self) -> Control {
        Control {
            jobs: self.jobs.max(1),
            budget_bytes: self.budget_bytes,
            max_rows: self.max_rows,
            deadline: self.deadline,
            cancel: self.cancel.clone(),
            seed_order: self.seed_order,
        }
    }
}

#[derive(Clone, Debug)]
enum AnyEngine {
    Gf2(Engine<Gf2>),
    Gfp(Engine<Gfp>),
    Rat(Engine<Rat>),
}

macro_rules! with_engine {
    ($inner:expr, $e:ident => $body:expr) => {
        match $inner {
            AnyEngine::Gf2($e) => $body,
            AnyEngine::Gfp($e) => $body,
            AnyEngine::Rat($e) => $body,
        }
    };
}

/// One row of a canonical form, in global coordinates (words of degree
/// `1..=D` in deglex order). The pivot is the largest column in the row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRow {
    pub pivot: usize,
    pub entries: Vec<(usize, Scalar)>,
}

/// The reduced row echelon form of a relation space with deglex-largest
/// pivots, rows sorted by pivot. Equal spaces have equal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub ncols: usize,
    pub rows: Vec<CanonicalRow>,
}

/// A truncated relation space.
#[derive(Clone, Debug)]
pub struct RelationSpace {
    n: u32,
    d: usize,
    field: FieldSpec,
    source: SpaceSource,
    inner: AnyEngine,
}

fn new_engine(field: &FieldSpec, layout: Layout) -> Result<AnyEngine> {
    Ok(match field.coefficient_ring() {
        CoefficientRing::PrimeField(2) => AnyEngine::Gf2(Engine::new(Gf2, layout)),
        CoefficientRing::PrimeField(p) => AnyEngine::Gfp(Engine::new(Gfp::new(p as u64)?, layout)),
        _ => AnyEngine::Rat(Engine::new(Rat, layout)),
    })
}

fn check_shape(n: u32, d: usize, truncation: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if d == 0 || d > 255 {
        return Err(Error::invalid("d must be between 1 and 255"));
    }
    if truncation == 0 {
        return Err(Error::invalid("truncation must be at least 1"));
    }
    Ok(())
}

impl RelationSpace {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source(&self) -> &SpaceSource {
        &self.source
    }

    fn layout(&self) -> &Layout {
        with_engine!(&self.inner, e => &e.layout)
    }

    /// The truncation degree `D`.
    pub fn truncation(&self) -> usize {
        self.layout().top
    }

    pub fn block_scheme(&self) -> BlockScheme {
        self.layout().scheme
    }

    pub fn block_count(&self) -> usize {
        self.layout().blocks.len()
    }

    pub fn largest_block(&self) -> usize {
        self.layout().blocks.iter().map(|b| b.ncols()).max().unwrap_or(0)
    }

    pub fn coordinate_count(&self) -> usize {
        self.layout().total()
    }

    pub fn ring(&self) -> CoefficientRing {
        self.field.coefficient_ring()
    }

    pub fn rank(&self) -> usize {
        with_engine!(&self.inner, e => e.rank())
    }

    /// Level up to which the closure has run; equals the truncation once built.
    pub fn completed_level(&self) -> usize {
        with_engine!(&self.inner, e => e.completed_level)
    }

    pub fn is_complete(&self) -> bool {
        self.completed_level() == self.truncation()
    }

    /// Every word of degree `D` lies in the space.
    pub fn is_saturated(&self) -> bool {
        with_engine!(&self.inner, e => e.saturated())
    }

    fn seed_source(&self) -> Result<SeedSource> {
        Ok(match &self.source {
            SpaceSource::Generators { max_arg_degree } => SeedSource::Generators(GeneratorSeeds::new(
                &generator_set(self.n, &self.field),
                *max_arg_degree,
            )),
            SpaceSource::Powers { q, k } => SeedSource::Explicit(oracle::power_seeds(self.layout(), self.n, *q, *k)?),
        })
    }

    fn header(&self, context: &serde_json::Value) -> CheckpointHeader {
        CheckpointHeader {
            format: CHECKPOINT_FORMAT.to_string(),
            version: CHECKPOINT_VERSION,
            n: self.n,
            d: self.d,
            field: self.field,
            truncation: self.truncation(),
            completed_level: self.completed_level(),
            block_scheme: self.block_scheme(),
            block_count: self.block_count(),
            ring: self.ring().to_string(),
            source: self.source.clone(),
            context: context.clone(),
        }
    }

    pub fn save_checkpoint(&self, path: &Path, context: &serde_json::Value) -> Result<()> {
        let header = self.header(context);
        let body = with_engine!(&self.inner, e => checkpoint::encode_body(&e.echelons));
        checkpoint::write_file(path, &header, &body)
    }

    /// Loads a checkpoint; call [`RelationSpace::continue_build`] to finish it.
    pub fn load_checkpoint(path: &Path) -> Result<(RelationSpace, CheckpointHeader)> {
        let (h, body) = checkpoint::read_file(path)?;
        check_shape(h.n, h.d, h.truncation)?;
        if h.completed_level > h.truncation {
            return Err(Error::Checkpoint("completed level beyond truncation".into()));
        }
        let layout = Layout::new(h.d, h.truncation, h.block_scheme, None)?;
        if layout.blocks.len() != h.block_count {
            return Err(Error::Checkpoint("block count does not match the layout".into()));
        }
        if h.ring != h.field.coefficient_ring().to_string() {
            return Err(Error::Checkpoint("ring does not match the field".into()));
        }
        let ncols: Vec<usize> = layout.blocks.iter().map(|b| b.ncols()).collect();
        fn load<B: RowCodec>(b: B, layout: Layout, ncols: &[usize], body: &[u8], level: usize) -> Result<Engine<B>> {
            let echelons = checkpoint::decode_body(&b, ncols, body)?;
            Ok(Engine::from_state(b, layout, echelons, level))
        }
        let lvl = h.completed_level;
        let inner = match h.field.coefficient_ring() {
            CoefficientRing::PrimeField(2) => AnyEngine::Gf2(load(Gf2, layout, &ncols, &body, lvl)?),
            CoefficientRing::PrimeField(p) => AnyEngine::Gfp(load(Gfp::new(p as u64)?, layout, &ncols, &body, lvl)?),
            _ => AnyEngine::Rat(load(Rat, layout, &ncols, &body, lvl)?),
        };
        let space = RelationSpace {
            n: h.n,
            d: h.d,
            field: h.field,
            source: h.source.clone(),
            inner,
        };
        Ok((space, h))
    }

    /// Runs the closure from the last completed level to the truncation.
    pub fn continue_build(&mut self, opts: &BuildOptions) -> Result<()> {
        if self.is_complete() {
            return Ok(());
        }
        let source = self.seed_source()?;
        let ctl = opts.control();
        let header = self.header(&opts.checkpoint_context);
        let level_path = opts.checkpoint.as_ref().filter(|_| opts.checkpoint_each_level);
        let stop = with_engine!(&mut self.inner, e => {
            let mut hook = |eng: &Engine<_>| -> Result<()> {
                if let Some(p) = level_path {
                    let mut h = header.clone();
                    h.completed_level = level_of(eng);
                    checkpoint::write_file(p, &h, &checkpoint::encode_body(echelons_of(eng)))?;
                }
                Ok(())
            };
            e.run(&source, &ctl, &mut hook)?
        });
        match stop {
            None => Ok(()),
            Some(stop) => {
                let saved = match &opts.checkpoint {
                    Some(p) => {
                        self.save_checkpoint(p, &opts.checkpoint_context)?;
                        Some(p.clone())
                    }
                    None => None,
                };
                Err(match stop {
                    Stop::Budget(what) => Error::BudgetExceeded { what, checkpoint: saved },
                    Stop::Cancelled => Error::Cancelled { checkpoint: saved },
                })
            }
        }
    }

    fn mapped_terms(&self, f: &FreePoly) -> Result<Vec<(usize, Scalar)>> {
        let ring = self.ring();
        let f = if f.ring() == ring { f.clone() } else { f.map_ring(ring)? };
        let layout = self.layout();
        let mut out = Vec::new();
        for (w, c) in f.terms() {
            if let Some(g) = layout.index_of(w)? {
                out.push((g, c.clone()));
            }
        }
        Ok(out)
    }

    /// Whether the truncation of `f` at degree `D` lies in the space.
    pub fn contains_truncated(&self, f: &FreePoly) -> Result<bool> {
        let terms = self.mapped_terms(f)?;
        with_engine!(&self.inner, e => {
            let elems = terms
                .iter()
                .map(|(g, s)| Ok((*g, e.backend.elem_from_scalar(s)?)))
                .collect::<Result<Vec<_>>>()?;
            e.contains_terms(&elems)
        })
    }

    /// Whether `f` is a relation. Requires a saturated space: then every word
    /// of degree `>= D` is a relation and membership of the truncation decides.
    pub fn is_relation(&self, f: &FreePoly) -> Result<bool> {
        if !self.is_complete() || !self.is_saturated() {
            return Err(Error::NotCertified {
                truncation: self.truncation(),
            });
        }
        self.contains_truncated(f)
    }

    /// Rows of the space as polynomials (the internal spanning set).
    pub fn rows_as_polys(&self) -> Vec<FreePoly> {
        let ring = self.ring();
        with_engine!(&self.inner, e => {
            let mut out = Vec::new();
            for (b, ech) in e.echelons.iter().enumerate() {
                let info = &e.layout.blocks[b];
                for row in ech.rows() {
                    let mut p = FreePoly::zero(ring);
                    e.backend.for_each_nonzero(row, |c, v| {
                        p.add_term(e.layout.word_of(info.cols[c] as usize), e.backend.elem_to_scalar(v));
                    });
                    out.push(p);
                }
            }
            out
        })
    }

    /// Canonical reduced form with deglex-largest pivots.
    pub fn canonical_form(&self) -> CanonicalForm {
        with_engine!(&self.inner, e => {
            let mut rows = Vec::new();
            for b in 0..e.echelons.len() {
                let info = &e.layout.blocks[b];
                let (mut rev, nc) = e.reversed_block(b, false);
                rev.reduce_fully();
                for (row, &p) in rev.rows().iter().zip(rev.pivots()) {
                    let mut entries = Vec::new();
                    e.backend.for_each_nonzero(row, |c, v| {
                        entries.push((info.cols[nc - 1 - c] as usize, e.backend.elem_to_scalar(v)));
                    });
                    entries.sort_by_key(|t| t.0);
                    rows.push(CanonicalRow {
                        pivot: info.cols[nc - 1 - p] as usize,
                        entries,
                    });
                }
            }
            rows.sort_by_key(|r| r.pivot);
            CanonicalForm {
                ncols: e.layout.total(),
                rows,
            }
        })
    }

    /// Quotient dimensions per degree `1..=D` and the non-pivot words, under
    /// deglex-largest pivots (so basis words are deglex-minimal).
    fn quotient_parts(&self, with_basis: bool) -> (Vec<usize>, Vec<Word>) {
        with_engine!(&self.inner, e => {
            let top = e.layout.top;
            let sat = e.saturated();
            let mut pivots_by_degree = vec![0usize; top + 1];
            let mut basis: Vec<usize> = Vec::new();
            for b in 0..e.echelons.len() {
                let info = &e.layout.blocks[b];
                let (rev, nc) = e.reversed_block(b, sat);
                let mut is_pivot = vec![false; info.ncols()];
                for &p in rev.pivots() {
                    is_pivot[nc - 1 - p] = true;
                }
                if sat {
                    is_pivot[nc..].iter_mut().for_each(|x| *x = true);
                }
                for (local, &piv) in is_pivot.iter().enumerate() {
                    if piv {
                        pivots_by_degree[info.degree_of_local(local)] += 1;
                    } else if with_basis {
                        basis.push(info.cols[local] as usize);
                    }
                }
            }
            let dims = (1..=top).map(|k| e.layout.pow[k] - pivots_by_degree[k]).collect();
            basis.sort_unstable();
            (dims, basis.into_iter().map(|g| e.layout.word_of(g)).collect())
        })
    }

    /// `dim` of degree-`k` part of `V_{<=D} / J_D` for `k = 1..=D`.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.quotient_parts(false).0
    }

    /// Deglex-minimal monomial basis of `V_{<=D} / J_D`.
    pub fn quotient_basis(&self) -> Vec<Word> {
        self.quotient_parts(true).1
    }
}

#[inline]
fn level_of<B: Backend>(e: &Engine<B>) -> usize {
    e.completed_level
}

#[inline]
fn echelons_of<B: Backend>(e: &Engine<B>) -> &[crate::exactla::Echelon<B>] {
    &e.echelons
}

fn start_space(n: u32, d: usize, field: FieldSpec, truncation: usize, source: SpaceSource, opts: &BuildOptions) -> Result<RelationSpace> {
    check_shape(n, d, truncation)?;
    let scheme = opts.block_scheme.unwrap_or_else(|| BlockScheme::for_field(n, &field));
    let layout = Layout::new(d, truncation, scheme, opts.max_coordinates)?;
    Ok(RelationSpace {
        n,
        d,
        field,
        source,
        inner: new_engine(&field, layout)?,
    })
}

/// The span of all truncated instances `u f(a) v`, `f` in the generating set.
pub fn build_relation_space(n: u32, d: usize, field: FieldSpec, truncation: usize, opts: &BuildOptions) -> Result<RelationSpace> {
    let source = SpaceSource::Generators {
        max_arg_degree: opts.max_arg_degree,
    };
    let mut space = start_space(n, d, field, truncation, source, opts)?;
    space.continue_build(opts)?;
    Ok(space)
}

/// The span of all truncated `u x^n v` with `x` a nonzero polynomial over
/// the prime field F_q supported on words of degree at most `k`.
pub fn oracle_relation_space(n: u32, d: usize, q: u64, truncation: usize, k: usize, opts: &BuildOptions) -> Result<RelationSpace> {
    if !crate::exactla::is_prime(q) {
        return Err(Error::invalid(format!("oracle needs a prime field order, got {q}")));
    }
    let field = FieldSpec::finite(q)?;
    let mut o = opts.clone();
    o.block_scheme = Some(BlockScheme::Single);
    let mut space = start_space(n, d, field, truncation, SpaceSource::Powers { q, k }, &o)?;
    space.continue_build(&o)?;
    Ok(space)
}

/// `g(a_1, ..., a_r)` expanded over `ring`.
pub fn substitute(g: &GeneratorSpec, args: &[Word], ring: CoefficientRing) -> Result<FreePoly> {
    let polys: Vec<FreePoly> = args
        .iter()
        .map(|w| {
            if w.is_unit() {
                Err(Error::invalid("generator arguments must be non-unit words"))
            } else {
                Ok(FreePoly::from_word(ring, w.clone()))
            }
        })
        .collect::<Result<_>>()?;
    g.apply(&polys)
}

/// Best known lower bound for the nilpotency degree: `n(n+1)/2` in
/// characteristic 0 or above `n`, `3d+1` for `n = 3` in characteristic 3,
/// `n` otherwise. Used only as a starting point; the search certifies it.
pub fn lower_bound(n: u32, d: usize, field: &FieldSpec) -> usize {
    let n_ = n as usize;
    if d < 2 || n < 2 {
        return n_;
    }
    let p = field.characteristic();
    if p == 0 || p > n {
        n_ * (n_ + 1) / 2
    } else if p == 3 && n == 3 {
        3 * d + 1
    } else {
        n_
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Nilpotency {
    /// Saturated at `c` and not below.
    Reached { c: usize },
    /// Not saturated at `dmax`, hence the degree is at least `lower_bound`.
    NotReached { dmax: usize, lower_bound: usize },
}

#[derive(Clone, Debug)]
pub struct NilpotencyResult {
    pub outcome: Nilpotency,
    /// The space at `D = c` when one was built.
    pub space: Option<RelationSpace>,
    /// Truncations that were built, in order.
    pub probed: Vec<usize>,
}

/// Least `D <= dmax` at which the truncated space is saturated.
pub fn nilpotency_degree(n: u32, d: usize, field: FieldSpec, dmax: usize, opts: &BuildOptions) -> Result<NilpotencyResult> {
    nilpotency_search(n, d, field, dmax, opts, None)
}

/// As [`nilpotency_degree`], continuing from a partially built space
/// (typically loaded from a checkpoint) at some truncation of the search.
pub fn nilpotency_search(
    n: u32,
    d: usize,
    field: FieldSpec,
    dmax: usize,
    opts: &BuildOptions,
    mut resumed: Option<RelationSpace>,
) -> Result<NilpotencyResult> {
    check_shape(n, d, dmax)?;
    let n_ = n as usize;
    if n == 1 || d == 1 {
        // x1^(n-1) survives and x1^n is a relation; with one letter there are no others
        let c = if n == 1 { 1 } else { n_ };
        let outcome = if c <= dmax {
            Nilpotency::Reached { c }
        } else {
            Nilpotency::NotReached {
                dmax,
                lower_bound: c,
            }
        };
        return Ok(NilpotencyResult {
            outcome,
            space: None,
            probed: Vec::new(),
        });
    }
    if dmax < n_ {
        return Err(Error::invalid(format!("dmax {dmax} is below n = {n}")));
    }
    let lb = lower_bound(n, d, &field);
    let mut probing = lb > n_;
    let mut next = match &resumed {
        Some(s) => {
            probing = probing && s.truncation() == (lb - 1).min(dmax);
            s.truncation()
        }
        None if probing => (lb - 1).min(dmax),
        None => n_,
    };
    let mut probed = Vec::new();
    let mut last_unsaturated = n_ - 1;
    loop {
        if next > dmax {
            return Ok(NilpotencyResult {
                outcome: Nilpotency::NotReached {
                    dmax,
                    lower_bound: last_unsaturated + 1,
                },
                space: None,
                probed,
            });
        }
        let space = match resumed.take() {
            Some(mut s) => {
                s.continue_build(opts)?;
                s
            }
            None => build_relation_space(n, d, field, next, opts)?,
        };
        probed.push(next);
        if space.is_saturated() {
            if probing {
                // the starting bound was too optimistic: scan from n instead
                probing = false;
                next = n_;
                continue;
            }
            return Ok(NilpotencyResult {
                outcome: Nilpotency::Reached { c: next },
                space: Some(space),
                probed,
            });
        }
        probing = false;
        last_unsaturated = last_unsaturated.max(next);
        next += 1;
    }
}

/// Graded dimensions (and optionally a monomial basis) of `N_{n,d}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub n: u32,
    pub d: usize,
    pub field: FieldSpec,
    pub c: usize,
    /// `dims[k-1]` is the dimension of the degree-`k` part, `k = 1..=c`.
    pub dims: Vec<usize>,
    pub total_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<String>>,
}

/// Report from a space built at `D = C`.
pub fn report_from_space(space: &RelationSpace, with_basis: bool) -> Result<QuotientReport> {
    let c = space.truncation();
    if !space.is_complete() || !space.is_saturated() {
        return Err(Error::NotCertified { truncation: c });
    }
    let (dims, basis) = space.quotient_parts(with_basis);
    if c >= 2 && dims[c - 2] == 0 {
        return Err(Error::invalid(format!(
            "degree {} already vanishes, so {c} is not the nilpotency degree",
            c - 1
        )));
    }
    Ok(QuotientReport {
        n: space.n(),
        d: space.d(),
        field: space.field(),
        c,
        total_dim: dims.iter().sum(),
        dims,
        basis: with_basis.then(|| basis.iter().map(Word::to_string).collect()),
    })
}

/// Builds the space at `D = c` and reports the quotient; fails unless `c`
/// is the nilpotency degree.
pub fn quotient_report(n: u32, d: usize, field: FieldSpec, c: usize, with_basis: bool, opts: &BuildOptions) -> Result<QuotientReport> {
    let space = build_relation_space(n, d, field, c, opts)?;
    report_from_space(&space, with_basis)
}

/// Whether `f` is a relation of `N_{n,d}`, using the space at truncation `D`,
/// which must be at least the nilpotency degree.
pub fn is_relation(f: &FreePoly, n: u32, d: usize, field: FieldSpec, truncation: usize, opts: &BuildOptions) -> Result<bool> {
    build_relation_space(n, d, field, truncation, opts)?.is_relation(f)
}

#[cfg(test)]
mod tests;
