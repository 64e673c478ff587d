use super::{AlgebraError, Field};

/// Dense matrix over a field, entries in row-major order.
///
/// Matrices act on column vectors: an `r × c` matrix maps `K^c` to `K^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape { expected: rows * cols, found: data.len() });
        }
        for e in &data {
            field.validate(e)?;
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, AlgebraError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(AlgebraError::Shape { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Self::new(field, n, cols, data)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&v| field.from_i64(v)).collect()
            })
            .collect();
        Self::from_rows(field, cols, rows).expect("integer rows are valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::DimensionMismatch { left: self.rows * self.cols, right: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch { left: self.cols, right: v.len() });
        }
        let f = &self.field;
        Ok(self
            .row_iter()
            .map(|row| dot(f, row, v))
            .collect())
    }

    /// Row-reduces in place to reduced row-echelon form and drops zero rows.
    /// Returns the pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(&self.data[idx], &inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    let sub = f.mul(&factor, &self.data[r * cols + j]);
                    let idx = i * cols + j;
                    self.data[idx] = f.sub(&self.data[idx], &sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * cols);
        self.rows = r;
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>, AlgebraError> {
        if self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch { left: self.cols, right: other.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<F> {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }
}

pub(crate) fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}
