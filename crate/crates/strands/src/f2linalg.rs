//! Linear algebra over the two-element field.
//!
//! Matrices are exchanged as sparse position sets and eliminated as dense
//! bit-packed rows. Vectors are dense `Vec<bool>`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, entries: BTreeSet::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zeros(n, n);
        for i in 0..n {
            m.toggle(i, i);
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = F2Matrix::zeros(rows, cols);
        for (r, c) in entries {
            m.toggle(r, c);
        }
        m
    }

    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = F2Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                if v & 1 == 1 {
                    m.toggle(r, c);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    /// Flip the entry at `(r, c)`; repeated toggles cancel.
    pub fn toggle(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        if !self.entries.remove(&(r, c)) {
            self.entries.insert((r, c));
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries.contains(&(r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        F2Matrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::Consistency(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row = vec![Vec::new(); other.rows];
        for &(r, c) in &other.entries {
            by_row[r].push(c);
        }
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        for &(r, k) in &self.entries {
            for &c in &by_row[k] {
                out.toggle(r, c);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![false; self.rows];
        for &(r, c) in &self.entries {
            out[r] ^= v[c];
        }
        out
    }

    fn dense_rows(&self) -> Vec<BitRow> {
        let mut rows = vec![BitRow::new(self.cols); self.rows];
        for &(r, c) in &self.entries {
            rows[r].flip(c);
        }
        rows
    }

    fn dense_cols(&self) -> Vec<BitRow> {
        self.transpose().dense_rows()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    fn new(len: usize) -> Self {
        BitRow { len, words: vec![0; len.div_ceil(64)] }
    }

    fn from_bools(v: &[bool]) -> Self {
        let mut row = BitRow::new(v.len());
        for (i, &b) in v.iter().enumerate() {
            if b {
                row.flip(i);
            }
        }
        row
    }

    fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Incrementally maintained echelon basis of a subspace of `F2^len`, with
/// pivots at the lowest set bit of each basis row.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    pivots: Vec<Option<BitRow>>,
    rank: usize,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon { len, pivots: vec![None; len], rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn reduce(&self, mut row: BitRow) -> BitRow {
        while let Some(p) = row.lowest() {
            match &self.pivots[p] {
                Some(b) => row.xor(b),
                None => break,
            }
        }
        row
    }

    fn insert_row(&mut self, row: BitRow) -> bool {
        let row = self.reduce(row);
        match row.lowest() {
            Some(p) => {
                self.pivots[p] = Some(row);
                self.rank += 1;
                true
            }
            None => false,
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[bool]) -> bool {
        assert_eq!(v.len(), self.len);
        self.insert_row(BitRow::from_bools(v))
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        assert_eq!(v.len(), self.len);
        self.reduce(BitRow::from_bools(v)).lowest().is_none()
    }
}

/// Rank over F2.
pub fn rank(m: &F2Matrix) -> usize {
    let mut e = Echelon::new(m.cols);
    m.dense_rows().into_iter().filter(|r| e.insert_row(r.clone())).count()
}

/// A basis of the null space `{v : m v = 0}`, of size `cols - rank`.
pub fn kernel_basis(m: &F2Matrix) -> Vec<Vec<bool>> {
    // Column elimination with tracking: reduce the columns of m while
    // recording which original columns were combined. Columns that reduce
    // to zero give kernel vectors.
    let cols = m.dense_cols();
    let mut pivots: Vec<Option<(BitRow, BitRow)>> = vec![None; m.rows];
    let mut kernel = Vec::new();
    for (j, col) in cols.into_iter().enumerate() {
        let mut col = col;
        let mut track = BitRow::new(m.cols);
        track.flip(j);
        loop {
            match col.lowest() {
                None => {
                    kernel.push(track.to_bools());
                    break;
                }
                Some(p) => match &pivots[p] {
                    Some((c, t)) => {
                        col.xor(c);
                        track.xor(t);
                    }
                    None => {
                        pivots[p] = Some((col, track));
                        break;
                    }
                },
            }
        }
    }
    kernel
}

fn check_composable(d_out: &F2Matrix, d_in: &F2Matrix) -> Result<()> {
    if d_out.cols != d_in.rows {
        return Err(Error::Consistency(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols, d_in.rows
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::Consistency("d_out * d_in is nonzero".into()));
    }
    Ok(())
}

/// `dim ker(d_out) - rank(d_in)` at the space between the two maps.
pub fn homology_dim(d_out: &F2Matrix, d_in: &F2Matrix) -> Result<usize> {
    check_composable(d_out, d_in)?;
    Ok(d_out.cols - rank(d_out) - rank(d_in))
}

/// Cycles of `d_out` whose classes form a basis of `ker d_out / im d_in`.
pub fn homology_reps(d_out: &F2Matrix, d_in: &F2Matrix) -> Result<Vec<Vec<bool>>> {
    check_composable(d_out, d_in)?;
    let mut span = Echelon::new(d_out.cols);
    for col in d_in.dense_cols() {
        span.insert_row(col);
    }
    Ok(kernel_basis(d_out)
        .into_iter()
        .filter(|z| span.insert(z))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&F2Matrix::from_dense(&[vec![1, 1], vec![1, 1]])), 1);
        assert_eq!(rank(&F2Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&F2Matrix::identity(3)), 3);
    }

    #[test]
    fn kernels() {
        let ones = F2Matrix::from_dense(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(kernel_basis(&ones), vec![vec![true, true]]);
        assert!(kernel_basis(&F2Matrix::identity(4)).is_empty());
        assert_eq!(kernel_basis(&F2Matrix::from_dense(&[vec![1, 1]])), vec![vec![true, true]]);
    }

    #[test]
    fn homology_dims() {
        let z = F2Matrix::zeros(1, 1);
        assert_eq!(homology_dim(&z, &z).unwrap(), 1);
        let id = F2Matrix::identity(2);
        assert_eq!(homology_dim(&F2Matrix::zeros(0, 2), &id).unwrap(), 0);
        assert!(homology_dim(&id, &id).is_err());
        assert!(homology_dim(&F2Matrix::zeros(1, 2), &F2Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 130;
        let m = F2Matrix::from_entries(n, n, (0..n).map(|i| (i, (i + 1) % n)));
        assert_eq!(rank(&m), n);
        let sum = F2Matrix::from_entries(1, n, (0..n).map(|i| (0, i)));
        assert_eq!(kernel_basis(&sum).len(), n - 1);
    }
}
