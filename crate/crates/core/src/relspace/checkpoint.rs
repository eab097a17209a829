//! Checkpoint files: one JSON header line, then a binary body with the rows
//! of every block.
//!
//! Body layout per block, little endian: `u32` row count, `u32` column count,
//! one `u32` pivot per row, then the rows. GF(2) rows are packed `u64` words,
//! GF(p) rows one byte per column, rational rows a `u32` entry count followed
//! by (`u32` column, `u32` length, `num/den` text) triples.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::layout::BlockScheme;
use crate::error::{Error, Result};
use crate::exactla::{Backend, Echelon, Gf2, Gfp, Rat};
use crate::linearize::FieldSpec;

pub const CHECKPOINT_FORMAT: &str = "nilcrunch-checkpoint";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Where the seeds of a relation space come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSource {
    /// Generator instances with word arguments, optionally of bounded degree.
    Generators { max_arg_degree: Option<usize> },
    /// Powers `x^n` of every nonzero polynomial over F_q supported on words
    /// of degree at most `k`.
    Powers { q: u64, k: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointHeader {
    pub format: String,
    pub version: u32,
    pub n: u32,
    pub d: usize,
    pub field: FieldSpec,
    pub truncation: usize,
    pub completed_level: usize,
    pub block_scheme: BlockScheme,
    pub block_count: usize,
    pub ring: String,
    pub source: SpaceSource,
    /// Caller data needed to continue the surrounding computation.
    #[serde(default)]
    pub context: serde_json::Value,
}

pub(crate) trait RowCodec: Backend {
    fn encode(&self, row: &Self::Row, out: &mut Vec<u8>);
    fn decode(&self, ncols: usize, input: &mut &[u8]) -> Result<Self::Row>;
}

fn take<'a>(input: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if input.len() < n {
        return Err(Error::Checkpoint("truncated body".into()));
    }
    let (head, rest) = input.split_at(n);
    *input = rest;
    Ok(head)
}

fn read_u32(input: &mut &[u8]) -> Result<u32> {
    Ok(u32::from_le_bytes(take(input, 4)?.try_into().expect("4 bytes")))
}

impl RowCodec for Gf2 {
    fn encode(&self, row: &Vec<u64>, out: &mut Vec<u8>) {
        for w in row {
            out.extend_from_slice(&w.to_le_bytes());
        }
    }

    fn decode(&self, ncols: usize, input: &mut &[u8]) -> Result<Vec<u64>> {
        let words = ncols.div_ceil(64);
        let bytes = take(input, words * 8)?;
        Ok(bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect())
    }
}

impl RowCodec for Gfp {
    fn encode(&self, row: &Vec<u8>, out: &mut Vec<u8>) {
        out.extend_from_slice(row);
    }

    fn decode(&self, ncols: usize, input: &mut &[u8]) -> Result<Vec<u8>> {
        let row = take(input, ncols)?.to_vec();
        if row.iter().any(|&x| x >= self.modulus()) {
            return Err(Error::Checkpoint("entry out of range for the field".into()));
        }
        Ok(row)
    }
}

impl RowCodec for Rat {
    fn encode(&self, row: &Vec<BigRational>, out: &mut Vec<u8>) {
        let nz: Vec<(usize, &BigRational)> = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        out.extend_from_slice(&(nz.len() as u32).to_le_bytes());
        for (c, v) in nz {
            let text = v.to_string();
            out.extend_from_slice(&(c as u32).to_le_bytes());
            out.extend_from_slice(&(text.len() as u32).to_le_bytes());
            out.extend_from_slice(text.as_bytes());
        }
    }

    fn decode(&self, ncols: usize, input: &mut &[u8]) -> Result<Vec<BigRational>> {
        let mut row = self.zero_row(ncols);
        let count = read_u32(input)?;
        for _ in 0..count {
            let c = read_u32(input)? as usize;
            let len = read_u32(input)? as usize;
            let text = std::str::from_utf8(take(input, len)?)
                .map_err(|_| Error::Checkpoint("bad rational text".into()))?;
            let v: BigRational = text
                .parse()
                .map_err(|_| Error::Checkpoint(format!("bad rational {text:?}")))?;
            *row.get_mut(c).ok_or_else(|| Error::Checkpoint("column out of range".into()))? = v;
        }
        Ok(row)
    }
}

pub(crate) fn encode_body<B: RowCodec>(echelons: &[Echelon<B>]) -> Vec<u8> {
    let mut out = Vec::new();
    for e in echelons {
        out.extend_from_slice(&(e.rank() as u32).to_le_bytes());
        out.extend_from_slice(&(e.ncols() as u32).to_le_bytes());
        for &p in e.pivots() {
            out.extend_from_slice(&(p as u32).to_le_bytes());
        }
        for r in e.rows() {
            e.backend().encode(r, &mut out);
        }
    }
    out
}

pub(crate) fn decode_body<B: RowCodec>(backend: &B, ncols: &[usize], mut input: &[u8]) -> Result<Vec<Echelon<B>>> {
    let mut out = Vec::with_capacity(ncols.len());
    for &expect in ncols {
        let rank = read_u32(&mut input)? as usize;
        let nc = read_u32(&mut input)? as usize;
        if nc != expect {
            return Err(Error::Checkpoint(format!("block has {nc} columns, expected {expect}")));
        }
        let pivots: Vec<usize> = (0..rank)
            .map(|_| read_u32(&mut input).map(|p| p as usize))
            .collect::<Result<_>>()?;
        let rows: Vec<B::Row> = (0..rank).map(|_| backend.decode(nc, &mut input)).collect::<Result<_>>()?;
        let e = Echelon::from_parts(backend.clone(), nc, rows, pivots)
            .ok_or_else(|| Error::Checkpoint("rows are not in echelon form".into()))?;
        out.push(e);
    }
    if !input.is_empty() {
        return Err(Error::Checkpoint("trailing bytes after last block".into()));
    }
    Ok(out)
}

/// Writes header and body atomically (temporary file, then rename).
pub(crate) fn write_file(path: &Path, header: &CheckpointHeader, body: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut tmp = PathBuf::from(path);
    tmp.as_mut_os_string().push(".partial");
    {
        let mut f = fs::File::create(&tmp)?;
        let line = serde_json::to_string(header).map_err(|e| Error::Checkpoint(e.to_string()))?;
        f.write_all(line.as_bytes())?;
        f.write_all(b"\n")?;
        f.write_all(body)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub(crate) fn read_file(path: &Path) -> Result<(CheckpointHeader, Vec<u8>)> {
    let data = fs::read(path)?;
    let nl = data
        .iter()
        .position(|&b| b == b'\n')
        .ok_or_else(|| Error::Checkpoint("missing header line".into()))?;
    let header: CheckpointHeader =
        serde_json::from_slice(&data[..nl]).map_err(|e| Error::Checkpoint(format!("bad header: {e}")))?;
    if header.format != CHECKPOINT_FORMAT {
        return Err(Error::Checkpoint(format!("unknown format {:?}", header.format)));
    }
    if header.version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {}", header.version)));
    }
    Ok((header, data[nl + 1..].to_vec()))
}

/// Reads only the header of a checkpoint file.
pub fn read_checkpoint_header(path: &Path) -> Result<CheckpointHeader> {
    read_file(path).map(|(h, _)| h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip<B: RowCodec>(b: B, rows: Vec<B::Row>, ncols: usize) {
        let mut e = Echelon::new(b.clone(), ncols);
        for r in rows {
            e.insert(r);
        }
        let body = encode_body(std::slice::from_ref(&e));
        let back = decode_body(&b, &[ncols], &body).unwrap();
        assert_eq!(back[0].rows(), e.rows());
        assert_eq!(back[0].pivots(), e.pivots());
    }

    #[test]
    fn rows_survive_encoding() {
        let g = Gf2;
        let mut r1 = g.zero_row(130);
        g.add_entry(&mut r1, 3, &1);
        g.add_entry(&mut r1, 129, &1);
        let mut r2 = g.zero_row(130);
        g.add_entry(&mut r2, 70, &1);
        roundtrip(g, vec![r1, r2], 130);
        roundtrip(Gfp::new(5).unwrap(), vec![vec![0, 2, 3], vec![1, 1, 4]], 3);
        let q = Rat;
        let half = BigRational::new(1.into(), 2.into());
        roundtrip(q, vec![vec![BigRational::zero(), half.clone(), -half]], 3);
    }

    #[test]
    fn damaged_body_is_rejected() {
        let b = Gfp::new(3).unwrap();
        let mut e = Echelon::new(b.clone(), 4);
        e.insert(vec![0, 1, 2, 0]);
        let body = encode_body(std::slice::from_ref(&e));
        assert!(decode_body(&b, &[4], &body[..body.len() - 1]).is_err());
        assert!(decode_body(&b, &[5], &body).is_err());
        let mut bad = body.clone();
        let last = bad.len() - 3;
        bad[last] = 0; // leading entry cleared: pivot no longer first nonzero
        assert!(decode_body(&b, &[4], &bad).is_err());
    }
}
