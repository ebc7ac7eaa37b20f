//! Dense Gauss-Jordan elimination over a [`Field`].
//!
//! Pivoting picks the first not-yet-used row, in the original row order, with
//! a nonzero entry in the pivot column, so with exact scalars every result is
//! exact. Rows are never swapped and pivot rows are applied sparsely; for the
//! 0/1 basis matrices this reduction produces no fill-in.

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> DenseMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Dimension {
                expected: cols,
                got: bad.len(),
            });
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<T: Field> DenseMatrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                let a = self.get(r, k);
                if a.is_zero() {
                    acc
                } else {
                    acc + a.clone() * other.get(k, c).clone()
                }
            })
        }))
    }
}

/// Result of reducing `[A | B]` to `[I | A⁻¹B]`.
#[derive(Debug, Clone)]
pub struct Reduction<T> {
    /// `A⁻¹B`, one row per row of `A`.
    pub solution: DenseMatrix<T>,
    pub determinant: T,
}

/// Reduce the square system `a · X = b` where `b` holds one right-hand side
/// per column.
pub fn gauss_jordan<T: Field>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> Result<Reduction<T>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::Dimension {
            expected: n,
            got: a.cols(),
        });
    }
    if b.rows() != n {
        return Err(Error::Dimension {
            expected: n,
            got: b.rows(),
        });
    }
    let width = n + b.cols();
    let mut rows: Vec<Vec<T>> = (0..n)
        .map(|r| a.row(r).iter().chain(b.row(r)).cloned().collect())
        .collect();

    // Rows stay in place; `pivot_of[col]` records which row reduced `col`.
    let mut used = vec![false; n];
    let mut pivot_of = Vec::with_capacity(n);
    let mut det = T::one();
    for col in 0..n {
        let pivot = (0..n)
            .find(|&r| !used[r] && !rows[r][col].is_zero())
            .ok_or(Error::Singular)?;
        used[pivot] = true;
        pivot_of.push(pivot);

        let scale = rows[pivot][col].clone();
        det = det * scale.clone();
        if !scale.is_one() {
            for v in rows[pivot].iter_mut().filter(|v| !v.is_zero()) {
                *v = v.clone() / scale.clone();
            }
        }

        let support: Vec<usize> = (0..width).filter(|&c| !rows[pivot][c].is_zero()).collect();
        let pivot_row = std::mem::take(&mut rows[pivot]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for &c in &support {
                row[c] = row[c].clone() - factor.clone() * pivot_row[c].clone();
            }
        }
        rows[pivot] = pivot_row;
    }
    if permutation_is_odd(&pivot_of) {
        det = -det;
    }

    let solution = DenseMatrix::from_fn(n, b.cols(), |r, c| rows[pivot_of[r]][n + c].clone());
    Ok(Reduction {
        solution,
        determinant: det,
    })
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

pub fn solve<T: Field>(a: &DenseMatrix<T>, rhs: &[T]) -> Result<Vec<T>> {
    if rhs.len() != a.rows() {
        return Err(Error::Dimension {
            expected: a.rows(),
            got: rhs.len(),
        });
    }
    let b = DenseMatrix::from_fn(rhs.len(), 1, |r, _| rhs[r].clone());
    let red = gauss_jordan(a, &b)?;
    Ok((0..rhs.len()).map(|r| red.solution.get(r, 0).clone()).collect())
}

pub fn determinant<T: Field>(a: &DenseMatrix<T>) -> Result<T> {
    match gauss_jordan(a, &DenseMatrix::from_fn(a.rows(), 0, |_, _| T::zero())) {
        Ok(red) => Ok(red.determinant),
        Err(Error::Singular) => Ok(T::zero()),
        Err(e) => Err(e),
    }
}

pub fn invert<T: Field>(a: &DenseMatrix<T>) -> Result<Reduction<T>> {
    gauss_jordan(a, &DenseMatrix::identity(a.rows()))
}
