//! Compressed-row sparse matrices built from coordinate triplets.

use std::io::Write;

use crate::error::{Error, Result};

/// Coordinate buffer; duplicates are summed in insertion order on compression.
#[derive(Debug, Clone, Default)]
pub struct TripletBuilder {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl TripletBuilder {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, entries: Vec::new() }
    }

    pub fn with_capacity(nrows: usize, ncols: usize, cap: usize) -> Self {
        Self { nrows, ncols, entries: Vec::with_capacity(cap) }
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.nrows && j < self.ncols);
        self.entries.push((i, j, v));
    }

    /// Add `scale * m` with its (0, 0) entry placed at `(row0, col0)`.
    pub fn add_matrix(&mut self, m: &SparseMatrix, scale: f64, row0: usize, col0: usize) {
        if scale == 0.0 {
            return;
        }
        for i in 0..m.nrows {
            for (j, v) in m.row(i) {
                self.add(row0 + i, col0 + j, scale * v);
            }
        }
    }

    pub fn build(self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.nrows, self.ncols, self.entries)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
    symmetric: bool,
}

impl SparseMatrix {
    pub fn from_triplets(nrows: usize, ncols: usize, mut entries: Vec<(usize, usize, f64)>) -> Self {
        // stable: equal keys keep insertion order, so sums are reproducible
        entries.sort_by_key(|&(i, j, _)| (i, j));
        let mut row_ptr = vec![0; nrows + 1];
        let mut col_idx = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in entries {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_idx.push(j);
                values.push(v);
                row_ptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { nrows, ncols, row_ptr, col_idx, values, symmetric: false }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1.0)).collect())
    }

    pub fn from_dense(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut t = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if v != 0.0 {
                    t.push((i, j, v));
                }
            }
        }
        Self::from_triplets(nrows, ncols, t)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_ptr(&self) -> &[usize] {
        &self.row_ptr
    }

    pub fn col_idx(&self) -> &[usize] {
        &self.col_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.col_idx[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.col_idx[r.clone()].binary_search(&j) {
            Ok(p) => self.values[r.start + p],
            Err(_) => 0.0,
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.nrows];
        self.mul_vec_add(1.0, x, &mut y);
        y
    }

    /// `y += scale * A x`
    pub fn mul_vec_add(&self, scale: f64, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        assert_eq!(y.len(), self.nrows, "matvec dimension mismatch");
        for (i, yi) in y.iter_mut().enumerate() {
            let mut s = 0.0;
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                s += self.values[p] * x[self.col_idx[p]];
            }
            *yi += scale * s;
        }
    }

    /// `b - A x`, each row summed in compensated (double-double) arithmetic.
    pub fn residual(&self, x: &[f64], b: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.ncols, "matvec dimension mismatch");
        assert_eq!(b.len(), self.nrows, "matvec dimension mismatch");
        (0..self.nrows)
            .map(|i| {
                let (mut hi, mut lo) = (b[i], 0.0);
                for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                    let prod = -self.values[p] * x[self.col_idx[p]];
                    let prod_err = (-self.values[p]).mul_add(x[self.col_idx[p]], -prod);
                    let s = hi + prod;
                    let t = s - hi;
                    lo += (hi - (s - t)) + (prod - t) + prod_err;
                    hi = s;
                }
                hi + lo
            })
            .collect()
    }

    /// `y += scale * A^T x`
    pub fn mul_transpose_vec_add(&self, scale: f64, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.nrows, "matvec dimension mismatch");
        assert_eq!(y.len(), self.ncols, "matvec dimension mismatch");
        for (i, &xi) in x.iter().enumerate() {
            for p in self.row_ptr[i]..self.row_ptr[i + 1] {
                y[self.col_idx[p]] += scale * self.values[p] * xi;
            }
        }
    }

    /// `x^T A y`
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let ay = self.mul_vec(y);
        x.iter().zip(&ay).map(|(a, b)| a * b).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                t.push((j, i, v));
            }
        }
        let mut m = Self::from_triplets(self.ncols, self.nrows, t);
        m.symmetric = self.symmetric;
        m
    }

    /// Submatrix on the rows/columns with `Some` index in the maps.
    pub fn restrict(&self, row_map: &[Option<usize>], n_rows: usize, col_map: &[Option<usize>], n_cols: usize) -> Self {
        let mut t = Vec::with_capacity(self.nnz());
        for i in 0..self.nrows {
            if let Some(ri) = row_map[i] {
                for (j, v) in self.row(i) {
                    if let Some(cj) = col_map[j] {
                        t.push((ri, cj, v));
                    }
                }
            }
        }
        let mut m = Self::from_triplets(n_rows, n_cols, t);
        m.symmetric = self.symmetric && row_map == col_map;
        m
    }

    /// Largest |A_ij - A_ji|.
    pub fn max_asymmetry(&self) -> f64 {
        assert_eq!(self.nrows, self.ncols);
        let mut worst: f64 = 0.0;
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Set the symmetry flag after checking `max |A - A^T| < tol`.
    pub fn mark_symmetric(&mut self, tol: f64) -> Result<()> {
        if self.nrows != self.ncols {
            return Err(Error::InvalidArgument("rectangular matrix cannot be symmetric".into()));
        }
        let a = self.max_asymmetry();
        if a >= tol {
            return Err(Error::InvalidArgument(format!("matrix asymmetry {a:.3e} exceeds {tol:.1e}")));
        }
        self.symmetric = true;
        Ok(())
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut d = vec![vec![0.0; self.ncols]; self.nrows];
        for (i, row) in d.iter_mut().enumerate() {
            for (j, v) in self.row(i) {
                row[j] = v;
            }
        }
        d
    }

    /// Coordinate text export: one `row col value` line per stored entry.
    pub fn write_coo<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "% {} {} {}", self.nrows, self.ncols, self.nnz())?;
        for i in 0..self.nrows {
            for (j, v) in self.row(i) {
                writeln!(w, "{i} {j} {v:.17e}")?;
            }
        }
        Ok(())
    }
}
