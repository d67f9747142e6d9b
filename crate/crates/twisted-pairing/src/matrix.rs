//! Dense column-major matrices over a [`Field`] with Gaussian elimination.

use std::fmt;

use crate::field::{dot, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: &[Vec<Scalar>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds from integer rows, reducing into `field`.
    pub fn from_ints(field: Field, rows: &[Vec<i64>]) -> Matrix {
        let rows: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.int(v)).collect())
            .collect();
        Matrix::from_rows(field, &rows)
    }

    /// Builds a `rows x cols` matrix from column vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        let mut data = Vec::with_capacity(rows * columns.len());
        for c in columns {
            assert_eq!(c.len(), rows, "column length mismatch");
            data.extend(c.iter().cloned());
        }
        Matrix {
            field,
            rows,
            cols: columns.len(),
            data,
        }
    }

    /// Entries drawn with [`Field::random`].
    pub fn random<R: rand::Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let columns: Vec<Vec<Scalar>> = (0..cols).map(|_| field.random_vec(rng, rows)).collect();
        Matrix::from_columns(field, rows, &columns)
    }

    /// A random invertible square matrix, by rejection sampling.
    pub fn random_invertible<R: rand::Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Block-diagonal matrix with `a` above `b`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        m.paste(0, 0, a);
        m.paste(a.rows, a.cols, b);
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[c * self.rows + r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[c * self.rows + r] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let i = c * self.rows + r;
        self.data[i] += v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        self.data[c * self.rows..(c + 1) * self.rows].to_vec()
    }

    pub fn column_slice(&self, c: usize) -> &[Scalar] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for c in 0..self.cols {
            for r in 0..self.rows {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for j in 0..other.cols {
            for k in 0..self.cols {
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                for i in 0..self.rows {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector length mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Bilinear evaluation `xᵀ M y`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(self.field, x, &self.mul_vec(y))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        self.with_data(data)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        self.with_data(data)
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.int(-1))
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Matrix::zeros(self.field, self.rows + other.rows, self.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, 0, other);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for c in 0..block.cols {
            for r in 0..block.rows {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (j, c) in cols.clone().enumerate() {
            for (i, r) in rows.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let columns: Vec<Vec<Scalar>> = cols.iter().map(|&c| self.column(c)).collect();
        Matrix::from_columns(self.field, self.rows, &columns)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), self.cols);
        for c in 0..self.cols {
            for (i, &r) in rows.iter().enumerate() {
                out.set(i, c, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r)).collect();
        let pivots = reduce_rows(&mut rows, self.cols);
        let rref = if self.rows == 0 {
            Matrix::zeros(self.field, 0, self.cols)
        } else {
            Matrix::from_rows(self.field, &rows)
        };
        Echelon { rref, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            return self.transpose().rank();
        }
        self.echelon().pivots.len()
    }

    /// Basis of the null space, as columns.
    pub fn kernel(&self) -> Matrix {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.get(i, f);
            }
            columns.push(v);
        }
        Matrix::from_columns(self.field, self.cols, &columns)
    }

    /// Indices of a maximal set of linearly independent columns (greedy, left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// A basis of the column space, chosen among the original columns.
    pub fn column_space(&self) -> Matrix {
        self.select_columns(&self.independent_columns())
    }

    /// Some solution of `self · x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r);
                row.push(b[r].clone());
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[i][self.cols].clone();
        }
        Some(x)
    }

    /// Solves `self · X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        let mut cols = Vec::with_capacity(b.cols());
        for c in 0..b.cols() {
            cols.push(self.solve(b.column_slice(c))?);
        }
        Some(Matrix::from_columns(self.field, self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r);
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows, 2 * n);
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        let inv: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(self.field, &inv))
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r)).collect();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv().unwrap();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                let (upper, lower) = a.split_at_mut(r);
                for (x, y) in lower[0][c..n].iter_mut().zip(&upper[c][c..n]) {
                    *x -= &f * y;
                }
            }
        }
        det
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }

    /// Extends the independent columns of `self` to a basis of the ambient space using
    /// standard basis vectors; returns the indices of the standard vectors added.
    pub fn complement_indices(&self) -> Vec<usize> {
        let n = self.rows;
        let joined = self.hstack(&Matrix::identity(self.field, n));
        joined
            .independent_columns()
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect()
    }
}

/// In-place reduction to reduced row echelon form over the first `ncols` columns.
fn reduce_rows(rows: &mut [Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        if !inv.is_one() {
            for v in rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (k, pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    let t = &f * pv;
                    row[k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r)).collect();
        serde::Serialize::serialize(&rows, s)
    }
}
