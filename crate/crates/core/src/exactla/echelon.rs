use super::backend::Backend;

const NO_ROW: u32 = u32::MAX;

/// Row space kept in echelon form with the pivot of each row at its first
/// nonzero column. Rows are normalized (pivot entry 1) and never modified
/// after insertion unless [`Echelon::reduce_fully`] is called.
#[derive(Clone, Debug)]
pub struct Echelon<B: Backend> {
    backend: B,
    ncols: usize,
    rows: Vec<B::Row>,
    pivots: Vec<usize>,
    row_of_col: Vec<u32>,
}

impl<B: Backend> Echelon<B> {
    pub fn new(backend: B, ncols: usize) -> Self {
        Echelon {
            backend,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NO_ROW; ncols],
        }
    }

    /// Rebuilds an echelon from rows previously produced by one, e.g. a
    /// checkpoint. Each row must be normalized with its first nonzero at the
    /// matching pivot, and pivots must be distinct.
    pub fn from_parts(backend: B, ncols: usize, rows: Vec<B::Row>, pivots: Vec<usize>) -> Option<Self> {
        if rows.len() != pivots.len() {
            return None;
        }
        let mut row_of_col = vec![NO_ROW; ncols];
        for (i, (&c, r)) in pivots.iter().zip(&rows).enumerate() {
            if c >= ncols || row_of_col[c] != NO_ROW || backend.first_nonzero(r, 0) != Some(c) {
                return None;
            }
            row_of_col[c] = i as u32;
        }
        Some(Echelon {
            backend,
            ncols,
            rows,
            pivots,
            row_of_col,
        })
    }

    pub fn backend(&self) -> &B {
        &self.backend
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[B::Row] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NO_ROW
    }

    pub fn row_for_pivot(&self, col: usize) -> Option<&B::Row> {
        match self.row_of_col[col] {
            NO_ROW => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    pub fn zero_row(&self) -> B::Row {
        self.backend.zero_row(self.ncols)
    }

    /// Eliminates pivot columns from the front of `row` until the first
    /// nonzero column is not a pivot; returns that column.
    pub fn reduce_leading(&self, row: &mut B::Row) -> Option<usize> {
        let mut from = 0;
        loop {
            let c = self.backend.first_nonzero(row, from)?;
            match self.row_of_col[c] {
                NO_ROW => return Some(c),
                r => {
                    self.backend.eliminate(row, c, &self.rows[r as usize]);
                    from = c + 1;
                }
            }
        }
    }

    /// Eliminates every pivot column from `row`; the result is the canonical
    /// residual only once the echelon has been fully reduced.
    pub fn reduce_all(&self, row: &mut B::Row) {
        let mut from = 0;
        while let Some(c) = self.backend.first_nonzero(row, from) {
            if let Some(pivot) = self.row_for_pivot(c) {
                self.backend.eliminate(row, c, pivot);
            }
            from = c + 1;
        }
    }

    /// Appends a row whose first nonzero column `lead` is not yet a pivot.
    pub fn push_reduced(&mut self, mut row: B::Row, lead: usize) -> usize {
        debug_assert!(!self.is_pivot(lead));
        debug_assert_eq!(self.backend.first_nonzero(&row, 0), Some(lead));
        self.backend.normalize(&mut row, lead);
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivots.push(lead);
        self.row_of_col[lead] = idx as u32;
        idx
    }

    /// Inserts `row`, returning its index if it enlarged the span.
    pub fn insert(&mut self, mut row: B::Row) -> Option<usize> {
        let lead = self.reduce_leading(&mut row)?;
        Some(self.push_reduced(row, lead))
    }

    pub fn contains(&self, row: &B::Row) -> bool {
        let mut r = row.clone();
        self.reduce_leading(&mut r).is_none()
    }

    /// Back-substitutes so that every pivot column is zero outside its own
    /// row, then orders rows by increasing pivot. The result is the unique
    /// reduced row echelon form of the span.
    pub fn reduce_fully(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.pivots[i]));
        let mut rows: Vec<Option<B::Row>> = std::mem::take(&mut self.rows).into_iter().map(Some).collect();
        let mut done: Vec<(usize, B::Row)> = Vec::with_capacity(rows.len());
        let mut reduced_row_of_col = vec![NO_ROW; self.ncols];
        for &i in &order {
            let mut row = rows[i].take().expect("row visited once");
            let lead = self.pivots[i];
            let mut from = lead + 1;
            while let Some(c) = self.backend.first_nonzero(&row, from) {
                if reduced_row_of_col[c] != NO_ROW {
                    let pivot = &done[reduced_row_of_col[c] as usize].1;
                    self.backend.eliminate(&mut row, c, pivot);
                }
                from = c + 1;
            }
            reduced_row_of_col[lead] = done.len() as u32;
            done.push((lead, row));
        }
        done.reverse();
        self.pivots = done.iter().map(|(c, _)| *c).collect();
        self.rows = done.into_iter().map(|(_, r)| r).collect();
        self.row_of_col = vec![NO_ROW; self.ncols];
        for (i, &c) in self.pivots.iter().enumerate() {
            self.row_of_col[c] = i as u32;
        }
    }

    pub fn storage_bytes(&self) -> usize {
        self.rows.len() * self.backend.row_bytes(self.ncols)
    }

    pub fn into_parts(self) -> (B, usize, Vec<B::Row>, Vec<usize>) {
        (self.backend, self.ncols, self.rows, self.pivots)
    }
}
