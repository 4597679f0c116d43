//! Exact Gaussian elimination over the Gaussian rationals.
//!
//! Pivots are chosen first-fit in column order, so ranks and witnesses are
//! deterministic for a fixed entry order.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = ExactMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    got: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces in place to reduced row echelon form, returning pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for j in col..self.cols {
                let x = self.get(row, j) * &inv;
                self.set(row, j, x);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let sub = self.get(row, j) * &factor;
                    if sub.is_zero() {
                        continue;
                    }
                    let x = self.get(r, j) - &sub;
                    self.set(r, j, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self · x = target`, returning one solution with free variables
    /// set to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: target.len(),
            });
        }
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, target[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }
}

/// Solves `m · x = target`; see [`ExactMatrix::solve`].
pub fn exact_solve(m: &ExactMatrix, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    m.solve(target)
}

/// Returns coefficients `c` with `Σ c_k generators[k] = v` when `v` lies in
/// the span of the generators.
pub fn subspace_membership(v: &[Scalar], generators: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>> {
    let m = ExactMatrix::from_columns(v.len(), generators)?;
    m.solve(v)
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> Result<usize> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    Ok(ExactMatrix::from_columns(first.len(), vectors)?.rank())
}
