//! Sparse LU (fill-reducing ordering, via faer) with a residual gate, a
//! restarted GMRES + ILU(0) fallback, and the 3x3 block layout used by the
//! time stepper.

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::Lu;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Col, Par};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::{SparseMatrix, TripletBuilder};

pub const RESIDUAL_TOL: f64 = 1e-10;

/// Normwise backward error `|r| / (|A| |x| + |b|)` (max norms) accepted when
/// the relative residual is held above [`RESIDUAL_TOL`] by the conditioning
/// of `A` alone.
pub const BACKWARD_ERROR_TOL: f64 = 1e-14;

const REFINEMENT_SWEEPS: usize = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SolverKind {
    /// Sparse LU.
    #[default]
    Direct,
    /// Restarted GMRES right-preconditioned with ILU(0).
    Gmres { restart: usize, max_iter: usize },
}

enum Backend {
    /// LU of `S A S` with the symmetric diagonal scaling `S`.
    Lu { lu: Lu<usize, f64>, scale: Vec<f64> },
    Gmres { ilu: Ilu0, restart: usize, max_iter: usize },
}

/// Reusable factorization of a square sparse matrix.
pub struct Factorization {
    matrix: SparseMatrix,
    norm_inf: f64,
    backend: Backend,
}

impl std::fmt::Debug for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let kind = match self.backend {
            Backend::Lu { .. } => "lu",
            Backend::Gmres { .. } => "gmres",
        };
        f.debug_struct("Factorization").field("n", &self.matrix.nrows()).field("kind", &kind).finish()
    }
}

pub fn factor(matrix: &SparseMatrix) -> Result<Factorization> {
    factor_with(matrix, SolverKind::Direct)
}

pub fn factor_with(matrix: &SparseMatrix, kind: SolverKind) -> Result<Factorization> {
    let n = matrix.nrows();
    if n != matrix.ncols() {
        return Err(Error::InvalidArgument(format!("cannot factor a {}x{} matrix", n, matrix.ncols())));
    }
    let backend = match kind {
        SolverKind::Direct => {
            faer::set_global_parallelism(Par::Seq);
            let scale = equilibration(matrix);
            let mut trip = Vec::with_capacity(matrix.nnz());
            for i in 0..n {
                for (j, v) in matrix.row(i) {
                    trip.push(Triplet::new(i, j, scale[i] * v * scale[j]));
                }
            }
            let a = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trip)
                .map_err(|e| Error::Factorization(format!("{e:?}")))?;
            let lu = a.sp_lu().map_err(|e| Error::Factorization(format!("{e:?}")))?;
            Backend::Lu { lu, scale }
        }
        SolverKind::Gmres { restart, max_iter } => {
            if restart == 0 || max_iter == 0 {
                return Err(Error::InvalidArgument("GMRES needs positive restart and iteration limits".into()));
            }
            Backend::Gmres { ilu: Ilu0::new(matrix)?, restart, max_iter }
        }
    };
    let norm_inf = (0..n).map(|i| matrix.row(i).map(|(_, v)| v.abs()).sum::<f64>()).fold(0.0, f64::max);
    let f = Factorization { matrix: matrix.clone(), norm_inf, backend };
    if n > 0 {
        // a numerically singular pivot shows up as a non-finite solution
        let probe = matrix.mul_vec(&vec![1.0; n]);
        if !f.raw_solve(&probe).iter().all(|x| x.is_finite()) {
            return Err(Error::Factorization("matrix is singular".into()));
        }
    }
    Ok(f)
}

impl Factorization {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    fn raw_solve(&self, rhs: &[f64]) -> Vec<f64> {
        match &self.backend {
            Backend::Lu { lu, scale } => {
                let b = Col::<f64>::from_fn(rhs.len(), |i| scale[i] * rhs[i]);
                let y = lu.solve(&b);
                (0..rhs.len()).map(|i| scale[i] * y[i]).collect()
            }
            Backend::Gmres { ilu, restart, max_iter } => gmres(&self.matrix, ilu, rhs, *restart, *max_iter, 1e-13),
        }
    }

    /// Solve `A x = rhs`, refining iteratively against a compensated
    /// residual until the relative residual passes [`RESIDUAL_TOL`]. If it
    /// stalls above that, the solve is still accepted when the backward
    /// error is below [`BACKWARD_ERROR_TOL`].
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if rhs.len() != n {
            return Err(Error::InvalidArgument(format!("rhs length {} does not match dimension {n}", rhs.len())));
        }
        let bnorm = norm(rhs);
        if bnorm == 0.0 {
            return Ok(vec![0.0; n]);
        }
        let mut x = self.raw_solve(rhs);
        let mut r = Vec::new();
        let mut rel = f64::INFINITY;
        for sweep in 0..=REFINEMENT_SWEEPS {
            r = self.matrix.residual(&x, rhs);
            let before = rel;
            rel = norm(&r) / bnorm;
            if !rel.is_finite() {
                return Err(Error::Residual { residual: rel, tolerance: RESIDUAL_TOL });
            }
            if rel < RESIDUAL_TOL {
                return Ok(x);
            }
            // stalled at the rounding floor
            if sweep == REFINEMENT_SWEEPS || rel > 0.5 * before {
                break;
            }
            let dx = self.raw_solve(&r);
            for (xi, di) in x.iter_mut().zip(&dx) {
                *xi += di;
            }
        }
        if backward_error(self.norm_inf, &x, rhs, &r) < BACKWARD_ERROR_TOL {
            return Ok(x);
        }
        Err(Error::Residual { residual: rel, tolerance: RESIDUAL_TOL })
    }
}

/// `|a_ii|^(-1/2)`, or the inverse row max-norm where the diagonal vanishes.
fn equilibration(a: &SparseMatrix) -> Vec<f64> {
    (0..a.nrows())
        .map(|i| {
            let d = a.get(i, i).abs();
            if d > 0.0 {
                return 1.0 / d.sqrt();
            }
            let m = a.row(i).fold(0.0f64, |m, (_, v)| m.max(v.abs()));
            if m > 0.0 { 1.0 / m.sqrt() } else { 1.0 }
        })
        .collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn backward_error(a_norm: f64, x: &[f64], b: &[f64], r: &[f64]) -> f64 {
    max_abs(r) / (a_norm * max_abs(x) + max_abs(b))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Incomplete LU with the sparsity pattern of `A`.
struct Ilu0 {
    lu: SparseMatrix,
    diag: Vec<usize>,
}

impl Ilu0 {
    fn new(a: &SparseMatrix) -> Result<Self> {
        let n = a.nrows();
        let rp = a.row_ptr().to_vec();
        let ci = a.col_idx().to_vec();
        let mut v = a.values().to_vec();
        let mut diag = vec![usize::MAX; n];
        for i in 0..n {
            for p in rp[i]..rp[i + 1] {
                if ci[p] == i {
                    diag[i] = p;
                }
            }
            if diag[i] == usize::MAX {
                return Err(Error::Factorization(format!("ILU(0): missing diagonal in row {i}")));
            }
        }
        for i in 1..n {
            for p in rp[i]..rp[i + 1] {
                let k = ci[p];
                if k >= i {
                    break;
                }
                let pivot = v[diag[k]];
                if pivot == 0.0 {
                    return Err(Error::Factorization(format!("ILU(0): zero pivot in row {k}")));
                }
                v[p] /= pivot;
                let lik = v[p];
                // row_i -= l_ik * row_k on the pattern of row i
                let mut q = p + 1;
                for r in diag[k] + 1..rp[k + 1] {
                    let j = ci[r];
                    while q < rp[i + 1] && ci[q] < j {
                        q += 1;
                    }
                    if q < rp[i + 1] && ci[q] == j {
                        v[q] -= lik * v[r];
                    }
                }
            }
        }
        let mut t = TripletBuilder::with_capacity(n, n, v.len());
        for i in 0..n {
            for p in rp[i]..rp[i + 1] {
                t.add(i, ci[p], v[p]);
            }
        }
        Ok(Self { lu: t.build(), diag })
    }

    fn apply(&self, r: &[f64]) -> Vec<f64> {
        let (rp, ci, v) = (self.lu.row_ptr(), self.lu.col_idx(), self.lu.values());
        let n = r.len();
        let mut y = r.to_vec();
        for i in 0..n {
            for p in rp[i]..self.diag[i] {
                y[i] -= v[p] * y[ci[p]];
            }
        }
        for i in (0..n).rev() {
            for p in self.diag[i] + 1..rp[i + 1] {
                y[i] -= v[p] * y[ci[p]];
            }
            y[i] /= v[self.diag[i]];
        }
        y
    }
}

fn gmres(a: &SparseMatrix, m: &Ilu0, b: &[f64], restart: usize, max_iter: usize, tol: f64) -> Vec<f64> {
    let n = b.len();
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    if bnorm == 0.0 {
        return x;
    }
    let mut iters = 0;
    while iters < max_iter {
        let mut r = b.to_vec();
        a.mul_vec_add(-1.0, &x, &mut r);
        let beta = norm(&r);
        if beta / bnorm < tol {
            break;
        }
        let mut basis = vec![r.iter().map(|v| v / beta).collect::<Vec<_>>()];
        let mut hess = vec![vec![0.0; restart]; restart + 1];
        let (mut cs, mut sn) = (vec![0.0; restart], vec![0.0; restart]);
        let mut g = vec![0.0; restart + 1];
        g[0] = beta;
        let mut k = 0;
        while k < restart && iters < max_iter {
            iters += 1;
            let z = m.apply(&basis[k]);
            let mut w = a.mul_vec(&z);
            for (j, vj) in basis.iter().enumerate() {
                let h: f64 = w.iter().zip(vj).map(|(a, b)| a * b).sum();
                hess[j][k] = h;
                for (wi, vi) in w.iter_mut().zip(vj) {
                    *wi -= h * vi;
                }
            }
            let wn = norm(&w);
            hess[k + 1][k] = wn;
            for j in 0..k {
                let t = cs[j] * hess[j][k] + sn[j] * hess[j + 1][k];
                hess[j + 1][k] = -sn[j] * hess[j][k] + cs[j] * hess[j + 1][k];
                hess[j][k] = t;
            }
            let d = hess[k][k].hypot(hess[k + 1][k]);
            cs[k] = hess[k][k] / d;
            sn[k] = hess[k + 1][k] / d;
            hess[k][k] = d;
            hess[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            k += 1;
            if g[k].abs() / bnorm < tol || wn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / wn).collect());
        }
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for j in i + 1..k {
                s -= hess[i][j] * y[j];
            }
            y[i] = s / hess[i][i];
        }
        let mut update = vec![0.0; n];
        for (yi, vi) in y.iter().zip(&basis) {
            for (u, v) in update.iter_mut().zip(vi) {
                *u += yi * v;
            }
        }
        for (xi, zi) in x.iter_mut().zip(m.apply(&update)) {
            *xi += zi;
        }
    }
    x
}

/// One scaled operator placed in block `(row, col)` of a 3x3 block matrix.
#[derive(Debug, Clone, Copy)]
pub struct BlockTerm<'a> {
    pub row: usize,
    pub col: usize,
    pub scale: f64,
    pub matrix: &'a SparseMatrix,
}

/// Monolithic 3x3 block system over the free DOFs of (U, Theta, P).
#[derive(Debug)]
pub struct BlockSystem {
    /// Start of each block; `offsets[3]` is the total dimension.
    pub offsets: [usize; 4],
    factorization: Factorization,
}

impl BlockSystem {
    /// Sum the terms into one matrix and factor it.
    pub fn new(sizes: [usize; 3], terms: &[BlockTerm<'_>], solver: SolverKind) -> Result<Self> {
        let offsets = [0, sizes[0], sizes[0] + sizes[1], sizes[0] + sizes[1] + sizes[2]];
        let n = offsets[3];
        let mut t = TripletBuilder::new(n, n);
        for term in terms {
            let (r, c) = (term.row, term.col);
            if r > 2 || c > 2 || term.matrix.nrows() != sizes[r] || term.matrix.ncols() != sizes[c] {
                return Err(Error::InvalidArgument(format!("block ({r}, {c}) has the wrong shape")));
            }
            t.add_matrix(term.matrix, term.scale, offsets[r], offsets[c]);
        }
        let factorization = factor_with(&t.build(), solver)?;
        Ok(Self { offsets, factorization })
    }

    pub fn dim(&self) -> usize {
        self.offsets[3]
    }

    pub fn matrix(&self) -> &SparseMatrix {
        self.factorization.matrix()
    }

    fn stack(&self, parts: [&[f64]; 3], what: &str) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.dim());
        for (k, part) in parts.iter().enumerate() {
            if part.len() != self.offsets[k + 1] - self.offsets[k] {
                return Err(Error::InvalidArgument(format!("{what} block {k} has the wrong length")));
            }
            out.extend_from_slice(part);
        }
        Ok(out)
    }

    fn split(&self, x: Vec<f64>) -> [Vec<f64>; 3] {
        let o = self.offsets;
        [x[o[0]..o[1]].to_vec(), x[o[1]..o[2]].to_vec(), x[o[2]..o[3]].to_vec()]
    }

    pub fn solve(&self, rhs: [&[f64]; 3]) -> Result<[Vec<f64>; 3]> {
        let b = self.stack(rhs, "rhs")?;
        Ok(self.split(self.factorization.solve(&b)?))
    }
}
