use super::backend::{Backend, Gf2, Gfp, Rat};
use super::echelon::Echelon;
use super::scalar::{CoefficientRing, Scalar};
use crate::error::{Error, Result};

/// Storage layout for a [`RowMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLayout {
    /// Bit-packed for GF(2), bytes for odd primes, fractions for Q.
    Auto,
    /// One byte per entry even for GF(2); the dense reference path.
    Bytes,
}

#[derive(Clone, Debug)]
enum Storage {
    Gf2(Vec<Vec<u64>>),
    Bytes(Gfp, Vec<Vec<u8>>),
    Rat(Vec<<Rat as Backend>::Row>),
    Integers(Vec<Vec<Scalar>>),
}

/// A matrix stored row by row over a coefficient ring.
#[derive(Clone, Debug)]
pub struct RowMatrix {
    ring: CoefficientRing,
    ncols: usize,
    storage: Storage,
}

fn fill<B: Backend>(b: &B, ncols: usize, rows: &[Vec<Scalar>]) -> Result<Vec<B::Row>> {
    rows.iter()
        .map(|r| {
            if r.len() != ncols {
                return Err(Error::ColumnMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            let mut row = b.zero_row(ncols);
            for (c, s) in r.iter().enumerate() {
                let e = b.elem_from_scalar(s)?;
                b.add_entry(&mut row, c, &e);
            }
            Ok(row)
        })
        .collect()
}

fn to_scalars<B: Backend>(b: &B, ncols: usize, row: &B::Row) -> Vec<Scalar> {
    (0..ncols).map(|c| b.elem_to_scalar(&b.entry(row, c))).collect()
}

struct Reduced<B: Backend> {
    rows: Vec<B::Row>,
    pivots: Vec<usize>,
}

fn rref_rows<B: Backend>(b: &B, ncols: usize, rows: &[B::Row]) -> Reduced<B> {
    let mut e = Echelon::new(b.clone(), ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.reduce_fully();
    let (_, _, rows, pivots) = e.into_parts();
    Reduced { rows, pivots }
}

fn residual<B: Backend>(b: &B, ncols: usize, basis: &[B::Row], v: B::Row) -> B::Row {
    let mut e = Echelon::new(b.clone(), ncols);
    for r in basis {
        let lead = b.first_nonzero(r, 0).expect("basis rows are nonzero");
        e.push_reduced(r.clone(), lead);
    }
    let mut v = v;
    e.reduce_all(&mut v);
    v
}

impl RowMatrix {
    pub fn new(ring: CoefficientRing, ncols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        Self::with_layout(ring, ncols, rows, RowLayout::Auto)
    }

    pub fn with_layout(
        ring: CoefficientRing,
        ncols: usize,
        rows: &[Vec<Scalar>],
        layout: RowLayout,
    ) -> Result<Self> {
        let storage = match (ring, layout) {
            (CoefficientRing::PrimeField(2), RowLayout::Auto) => Storage::Gf2(fill(&Gf2, ncols, rows)?),
            (CoefficientRing::PrimeField(p), _) => {
                let b = Gfp::new(p as u64)?;
                let data = fill(&b, ncols, rows)?;
                Storage::Bytes(b, data)
            }
            (CoefficientRing::Rationals, _) => Storage::Rat(fill(&Rat, ncols, rows)?),
            (CoefficientRing::Integers, _) => {
                for r in rows {
                    if r.len() != ncols {
                        return Err(Error::ColumnMismatch {
                            expected: ncols,
                            got: r.len(),
                        });
                    }
                    for s in r {
                        ring.check(s)?;
                    }
                }
                Storage::Integers(rows.to_vec())
            }
        };
        Ok(RowMatrix { ring, ncols, storage })
    }

    /// Convenience constructor from small integers reduced into `ring`.
    pub fn from_ints(ring: CoefficientRing, ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Self::new(ring, ncols, &rows)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        match &self.storage {
            Storage::Gf2(r) => r.len(),
            Storage::Bytes(_, r) => r.len(),
            Storage::Rat(r) => r.len(),
            Storage::Integers(r) => r.len(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        match &self.storage {
            Storage::Gf2(r) => r.iter().map(|x| to_scalars(&Gf2, self.ncols, x)).collect(),
            Storage::Bytes(b, r) => r.iter().map(|x| to_scalars(b, self.ncols, x)).collect(),
            Storage::Rat(r) => r.iter().map(|x| to_scalars(&Rat, self.ncols, x)).collect(),
            Storage::Integers(r) => r.clone(),
        }
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct RrefResult {
    pub rank: usize,
    pub reduced: RowMatrix,
    pub pivot_columns: Vec<usize>,
}

/// Canonical reduced row echelon form: pivots strictly increasing, equal to
/// one, and the only nonzero entry in their column.
pub fn rref(m: &RowMatrix) -> Result<RrefResult> {
    let (storage, pivots) = match &m.storage {
        Storage::Gf2(rows) => {
            let r = rref_rows(&Gf2, m.ncols, rows);
            (Storage::Gf2(r.rows), r.pivots)
        }
        Storage::Bytes(b, rows) => {
            let r = rref_rows(b, m.ncols, rows);
            (Storage::Bytes(b.clone(), r.rows), r.pivots)
        }
        Storage::Rat(rows) => {
            let r = rref_rows(&Rat, m.ncols, rows);
            (Storage::Rat(r.rows), r.pivots)
        }
        Storage::Integers(_) => return Err(Error::NotAField("Integers".into())),
    };
    Ok(RrefResult {
        rank: pivots.len(),
        reduced: RowMatrix {
            ring: m.ring,
            ncols: m.ncols,
            storage,
        },
        pivot_columns: pivots,
    })
}

/// Tests whether `v` lies in the row span of `reduced` (which must be in
/// reduced row echelon form) and returns the residual after reduction.
pub fn member(v: &[Scalar], reduced: &RowMatrix) -> Result<(bool, Vec<Scalar>)> {
    if v.len() != reduced.ncols {
        return Err(Error::ColumnMismatch {
            expected: reduced.ncols,
            got: v.len(),
        });
    }
    let one = [v.to_vec()];
    let res = match &reduced.storage {
        Storage::Gf2(rows) => {
            let vr = fill(&Gf2, reduced.ncols, &one)?.remove(0);
            to_scalars(&Gf2, reduced.ncols, &residual(&Gf2, reduced.ncols, rows, vr))
        }
        Storage::Bytes(b, rows) => {
            let vr = fill(b, reduced.ncols, &one)?.remove(0);
            to_scalars(b, reduced.ncols, &residual(b, reduced.ncols, rows, vr))
        }
        Storage::Rat(rows) => {
            let vr = fill(&Rat, reduced.ncols, &one)?.remove(0);
            to_scalars(&Rat, reduced.ncols, &residual(&Rat, reduced.ncols, rows, vr))
        }
        Storage::Integers(_) => return Err(Error::NotAField("Integers".into())),
    };
    Ok((res.iter().all(Scalar::is_zero), res))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> CoefficientRing {
        CoefficientRing::prime_field(p).unwrap()
    }

    #[test]
    fn repeated_row_has_rank_one_over_f2() {
        let m = RowMatrix::from_ints(f(2), 2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rref(&m).unwrap().rank, 1);
    }

    #[test]
    fn vandermonde_is_invertible_over_f5() {
        let rows: Vec<Vec<i64>> = [1i64, 2, 3].iter().map(|&x| vec![1, x, x * x]).collect();
        let m = RowMatrix::from_ints(f(5), 3, &rows).unwrap();
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn proportional_rational_rows() {
        let m = RowMatrix::from_ints(CoefficientRing::Rationals, 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 1);
        let q = CoefficientRing::Rationals;
        assert_eq!(r.reduced.rows(), vec![vec![q.from_i64(1), q.from_i64(2)]]);
    }

    #[test]
    fn integer_elimination_is_refused() {
        let m = RowMatrix::from_ints(CoefficientRing::Integers, 1, &[vec![2]]).unwrap();
        assert!(matches!(rref(&m), Err(Error::NotAField(_))));
    }

    #[test]
    fn membership_examples() {
        let ring = f(3);
        let m = RowMatrix::from_ints(ring, 4, &[vec![1, 2, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        let r = rref(&m).unwrap().reduced;
        let sum: Vec<Scalar> = [1i64, 3, 1, 0].iter().map(|&v| ring.from_i64(v)).collect();
        assert!(member(&sum, &r).unwrap().0);
        let zero = vec![ring.zero(); 4];
        let (ok, res) = member(&zero, &r).unwrap();
        assert!(ok && res.iter().all(Scalar::is_zero));
        let outside: Vec<Scalar> = [0i64, 0, 0, 1].iter().map(|&v| ring.from_i64(v)).collect();
        let (ok, res) = member(&outside, &r).unwrap();
        assert!(!ok);
        assert_eq!(res, outside);
    }

    #[test]
    fn column_mismatch_is_an_error() {
        let ring = f(2);
        let r = rref(&RowMatrix::from_ints(ring, 3, &[vec![1, 0, 1]]).unwrap()).unwrap().reduced;
        assert!(matches!(
            member(&[ring.one()], &r),
            Err(Error::ColumnMismatch { expected: 3, got: 1 })
        ));
        assert!(RowMatrix::from_ints(ring, 3, &[vec![1]]).is_err());
    }
}
