use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Rref<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis read off the reduced form; see [`Matrix::nullspace`].
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let cols = self.matrix.cols;
        let mut is_pivot = vec![false; cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); cols];
                v[free] = F::one();
                for (row, &p) in self.pivots.iter().enumerate() {
                    v[p] = self.matrix[(row, free)].neg_ref();
                }
                v
            })
            .collect()
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale_row(&mut self, i: usize, s: &F) {
        for x in &mut self.entries[i * self.cols..(i + 1) * self.cols] {
            *x = x.mul_ref(s);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for l in 0..self.cols {
                acc = acc.add_ref(&self[(i, l)].mul_ref(&other[(l, j)]));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(F::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect())
    }

    /// Determinant as the signed product of pivots of forward elimination,
    /// pivoting on the first nonzero entry of each column. Over the
    /// rationals every intermediate entry stays in lowest terms, which keeps
    /// it far smaller than fraction-free elimination would.
    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Ok(F::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = det.neg_ref();
            }
            let pivot = a[(k, k)].clone();
            det = det.mul_ref(&pivot);
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].div_ref(&pivot);
                for j in k + 1..n {
                    let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(k, j)]));
                    a[(i, j)] = v;
                }
                a[(i, k)] = F::zero();
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan reduction with first-nonzero pivoting in column order.
    pub fn rref(&self) -> Rref<F> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = F::one().div_ref(&a[(r, c)]);
            a.scale_row(r, &inv);
            for i in 0..self.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..self.cols {
                    let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(r, j)]));
                    a[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel. One vector per free column, in column
    /// order, with that free variable set to 1 and the other free
    /// variables set to 0.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.rref().nullspace()
    }

    /// Solves `self · x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[F]) -> Result<Vec<F>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = Matrix { rows: b.len(), cols: 1, entries: b.to_vec() };
        Ok(self.solve_many(&rhs)?.entries)
    }

    /// Solves `self · X = B` column by column for square nonsingular `self`.
    pub fn solve_many(&self, b: &Matrix<F>) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "solve with a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if b.rows != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side with {} rows for {} rows",
                b.rows, self.rows
            )));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, n + b.cols, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[(i, j - n)].clone()
            }
        });
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return Err(Error::Singular(format!("{n}x{n} system has zero determinant")));
        }
        Ok(Matrix::from_fn(n, b.cols, |i, j| red.matrix[(i, n + j)].clone()))
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        self.solve_many(&Matrix::identity(self.rows))
    }

    /// Coordinates of `b` in the column span of `self`, if it lies there.
    /// Requires linearly independent columns for the answer to be unique.
    pub fn solve_in_span(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let aug = Matrix::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let red = aug.rref();
        if red.pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); n];
        for (row, &p) in red.pivots.iter().enumerate() {
            x[p] = red.matrix[(row, n)].clone();
        }
        Ok(Some(x))
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.entries[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.entries[i * self.cols + j]
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
