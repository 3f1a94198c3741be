//! Dense exact linear algebra over Q(zeta_n).

use crate::exactfield::{FieldCtx, FieldElem};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("inconsistent linear system")]
    NoSolution,
}

/// A dense row-major matrix over the exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixF {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElem>,
}

impl MatrixF {
    pub fn zero(ctx: &FieldCtx, rows: usize, cols: usize) -> MatrixF {
        MatrixF {
            rows,
            cols,
            data: vec![ctx.zero(); rows * cols],
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> MatrixF {
        let mut m = MatrixF::zero(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ctx.one();
        }
        m
    }

    pub fn from_fn(ctx: &FieldCtx, rows: usize, cols: usize, f: impl Fn(usize, usize) -> FieldElem) -> MatrixF {
        let _ = ctx;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        MatrixF { rows, cols, data }
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut FieldElem {
        &mut self.data[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    pub fn transpose(&self) -> MatrixF {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        MatrixF {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, other: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatrixF {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        MatrixF {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> MatrixF {
        MatrixF {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(FieldElem::neg).collect(),
        }
    }

    pub fn scale(&self, ctx: &FieldCtx, s: &FieldElem) -> MatrixF {
        MatrixF {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| ctx.mul(x, s)).collect(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &MatrixF) -> MatrixF {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = MatrixF::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let bkj = other.at(k, j);
                    if bkj.is_zero() {
                        continue;
                    }
                    let prod = ctx.mul(aik, bkj);
                    let cell = out.at_mut(i, j);
                    *cell = cell.add(&prod);
                }
            }
        }
        out
    }

    /// Kronecker product with the second index fastest: entry
    /// ((i1,i2),(j1,j2)) = self[i1,j1] * other[i2,j2].
    pub fn kron(&self, ctx: &FieldCtx, other: &MatrixF) -> MatrixF {
        let mut out = MatrixF::zero(ctx, self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.at(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.at(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        *out.at_mut(i1 * other.rows + i2, j1 * other.cols + j2) = ctx.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn matrix_power(&self, ctx: &FieldCtx, mut e: usize) -> MatrixF {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = MatrixF::identity(ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc
    }

    pub fn trace(&self) -> FieldElem {
        assert_eq!(self.rows, self.cols);
        let mut t = self.at(0, 0).clone();
        for i in 1..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    pub fn hstack(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.rows, other.rows);
        let mut data = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for r in 0..self.rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
            data.extend_from_slice(&other.data[r * other.cols..(r + 1) * other.cols]);
        }
        MatrixF {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn vstack(&self, other: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        MatrixF {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn column(&self, j: usize) -> MatrixF {
        let mut out = MatrixF {
            rows: self.rows,
            cols: 1,
            data: Vec::with_capacity(self.rows),
        };
        for r in 0..self.rows {
            out.data.push(self.at(r, j).clone());
        }
        out
    }

    /// Columns of `self` selected by index, in order.
    pub fn select_columns(&self, idx: &[usize]) -> MatrixF {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for r in 0..self.rows {
            for &j in idx {
                data.push(self.at(r, j).clone());
            }
        }
        MatrixF {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Reduced row-echelon form with first-nonzero pivoting, plus pivot
    /// columns and rank. Deterministic, so downstream bases are reproducible.
    pub fn rref(&self, ctx: &FieldCtx) -> (MatrixF, Vec<usize>, usize) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(p, j).clone();
                    *m.at_mut(row, j) = b;
                    *m.at_mut(p, j) = a;
                }
            }
            let inv = ctx.inv(m.at(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                if !m.at(row, j).is_zero() {
                    *m.at_mut(row, j) = ctx.mul(m.at(row, j), &inv);
                }
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in col..m.cols {
                    if m.at(row, j).is_zero() {
                        continue;
                    }
                    let delta = ctx.mul(&factor, m.at(row, j));
                    let cell = m.at_mut(r, j);
                    *cell = cell.sub(&delta);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        (m, pivots, rank)
    }

    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        self.rref(ctx).2
    }

    /// Columns spanning the null space { x : self * x = 0 }.
    pub fn kernel_basis(&self, ctx: &FieldCtx) -> MatrixF {
        let (r, pivots, rank) = self.rref(ctx);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatrixF::zero(ctx, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, k) = ctx.one();
            for (i, &pc) in pivots.iter().enumerate().take(rank) {
                let v = r.at(i, fc);
                if !v.is_zero() {
                    *out.at_mut(pc, k) = v.neg();
                }
            }
        }
        out
    }

    /// Columns of `self` forming a basis of the column space.
    pub fn image_basis(&self, ctx: &FieldCtx) -> MatrixF {
        let (_, pivots, _) = self.rref(ctx);
        self.select_columns(&pivots)
    }

    /// One solution of `self * x = b`, or None when inconsistent.
    pub fn solve(&self, ctx: &FieldCtx, b: &MatrixF) -> Option<MatrixF> {
        self.solve_many(ctx, b)
    }

    /// Solves `self * X = B` column-wise; None when any column is
    /// inconsistent. Free variables are set to zero.
    pub fn solve_many(&self, ctx: &FieldCtx, b: &MatrixF) -> Option<MatrixF> {
        assert_eq!(self.rows, b.rows, "solve rhs row mismatch");
        let aug = self.hstack(b);
        let (r, pivots, _) = aug.rref(ctx);
        // Any pivot in the appended block means an inconsistent column.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = MatrixF::zero(ctx, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                let v = r.at(i, self.cols + j);
                if !v.is_zero() {
                    *x.at_mut(pc, j) = v.clone();
                }
            }
        }
        Some(x)
    }

    /// Basis of ker(M^d) for square M with d = dimension. Together with the
    /// image of M^d this realizes the Fitting decomposition.
    pub fn generalized_kernel(&self, ctx: &FieldCtx) -> MatrixF {
        assert_eq!(self.rows, self.cols);
        let p = self.matrix_power(ctx, self.rows.max(1));
        p.kernel_basis(ctx)
    }

    /// Least-degree monic annihilating polynomial, low degree first.
    pub fn min_poly(&self, ctx: &FieldCtx) -> Vec<FieldElem> {
        assert_eq!(self.rows, self.cols);
        let d = self.rows;
        // Flatten successive powers and look for the first linear dependency.
        let mut powers: Vec<MatrixF> = vec![MatrixF::identity(ctx, d)];
        loop {
            let k = powers.len();
            let next = powers.last().unwrap().mul(ctx, self);
            // Stack flattened powers as columns: d^2 x (k+1).
            let mut sys = MatrixF::zero(ctx, d * d, k + 1);
            for (j, p) in powers.iter().chain(std::iter::once(&next)).enumerate() {
                for r in 0..d {
                    for c in 0..d {
                        *sys.at_mut(r * d + c, j) = p.at(r, c).clone();
                    }
                }
            }
            let ker = sys.kernel_basis(ctx);
            if ker.cols > 0 {
                // First kernel vector has a nonzero top coefficient at
                // position k (the new power), by minimality of k.
                let lead = ker.at(k, 0).clone();
                let inv = ctx.inv(&lead).expect("leading coefficient nonzero");
                let mut coeffs = Vec::with_capacity(k + 1);
                for i in 0..=k {
                    coeffs.push(ctx.mul(ker.at(i, 0), &inv));
                }
                return coeffs;
            }
            powers.push(next);
            assert!(powers.len() <= d + 1, "minimal polynomial search overran");
        }
    }

    /// Evaluates a polynomial (low degree first) at this matrix.
    pub fn eval_poly(&self, ctx: &FieldCtx, coeffs: &[FieldElem]) -> MatrixF {
        assert_eq!(self.rows, self.cols);
        let mut acc = MatrixF::zero(ctx, self.rows, self.cols);
        for c in coeffs.iter().rev() {
            acc = acc.mul(ctx, self);
            for i in 0..self.rows {
                let cell = acc.at_mut(i, i);
                *cell = cell.add(c);
            }
        }
        acc
    }
}
