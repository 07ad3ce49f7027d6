use std::fmt;

use super::Ring;

/// Dense row-major matrix. Arithmetic goes through a [`Ring`] context, so the
/// same storage serves residues mod p and arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Builds a matrix from row vectors. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut E {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Self {
        Matrix::from_fn(self.rows, end - start, |i, j| {
            self.get(i, start + j).clone()
        })
    }

    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Matrix::from_fn(end - start, self.cols, |i, j| {
            self.get(start + i, j).clone()
        })
    }

    pub fn select_columns(&self, columns: &[usize]) -> Self {
        Matrix::from_fn(self.rows, columns.len(), |i, j| {
            self.get(i, columns[j]).clone()
        })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, ring.zero())
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    let slot = out.get_mut(i, j);
                    *slot = ring.add(slot, &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = ring.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !ring.is_zero(a) && !ring.is_zero(x) {
                        acc = ring.add(&acc, &ring.mul(a, x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.data.iter().all(|x| ring.is_zero(x))
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple<R: Ring<Elem = E>>(
        &mut self,
        ring: &R,
        target: usize,
        source: usize,
        factor: &E,
    ) {
        if ring.is_zero(factor) {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(source, j);
            if ring.is_zero(s) {
                continue;
            }
            let delta = ring.mul(factor, s);
            let slot = self.get_mut(target, j);
            *slot = ring.add(slot, &delta);
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple<R: Ring<Elem = E>>(
        &mut self,
        ring: &R,
        target: usize,
        source: usize,
        factor: &E,
    ) {
        if ring.is_zero(factor) {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, source);
            if ring.is_zero(s) {
                continue;
            }
            let delta = ring.mul(factor, s);
            let slot = self.get_mut(i, target);
            *slot = ring.add(slot, &delta);
        }
    }

    pub fn scale_row<R: Ring<Elem = E>>(&mut self, ring: &R, row: usize, factor: &E) {
        for j in 0..self.cols {
            let v = ring.mul(self.get(row, j), factor);
            self.set(row, j, v);
        }
    }

    pub fn scale_col<R: Ring<Elem = E>>(&mut self, ring: &R, col: usize, factor: &E) {
        for i in 0..self.rows {
            let v = ring.mul(self.get(i, col), factor);
            self.set(i, col, v);
        }
    }
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
