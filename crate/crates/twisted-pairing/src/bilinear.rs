//! Sparse bilinear maps `K^a × K^b → K^c`.

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// `out[k] += c · x[i] · y[j]` for every entry `(i, j, k, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearMap {
    pub field: Field,
    pub left_dim: usize,
    pub right_dim: usize,
    pub out_dim: usize,
    pub entries: Vec<(usize, usize, usize, Scalar)>,
}

impl BilinearMap {
    pub fn zero(field: Field, left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        BilinearMap {
            field,
            left_dim,
            right_dim,
            out_dim,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        debug_assert!(i < self.left_dim && j < self.right_dim && k < self.out_dim);
        if !c.is_zero() {
            self.entries.push((i, j, k, c));
        }
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.left_dim, "bilinear: left length");
        assert_eq!(y.len(), self.right_dim, "bilinear: right length");
        let mut out = vec![self.field.zero(); self.out_dim];
        for (i, j, k, c) in &self.entries {
            if x[*i].is_zero() || y[*j].is_zero() {
                continue;
            }
            out[*k] += &(c * &x[*i]) * &y[*j];
        }
        out
    }

    /// The matrix of `y ↦ m(x, y)`.
    pub fn left_action(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.out_dim, self.right_dim);
        for (i, j, k, c) in &self.entries {
            if !x[*i].is_zero() {
                m.add_at(*k, *j, &(c * &x[*i]));
            }
        }
        m
    }

    /// The matrix of `x ↦ m(x, y)`.
    pub fn right_action(&self, y: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.out_dim, self.left_dim);
        for (i, j, k, c) in &self.entries {
            if !y[*j].is_zero() {
                m.add_at(*k, *i, &(c * &y[*j]));
            }
        }
        m
    }

    /// Gram matrix of `(x, y) ↦ ⟨w, m(x, y)⟩` for the linear functional `w` on the output.
    pub fn contract(&self, w: &[Scalar]) -> Matrix {
        assert_eq!(w.len(), self.out_dim);
        let mut m = Matrix::zeros(self.field, self.left_dim, self.right_dim);
        for (i, j, k, c) in &self.entries {
            if !w[*k].is_zero() {
                m.add_at(*i, *j, &(c * &w[*k]));
            }
        }
        m
    }

    /// Dense value `m(e_i, e_j)`.
    pub fn value(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.out_dim];
        for (a, b, k, c) in &self.entries {
            if *a == i && *b == j {
                out[*k] += c;
            }
        }
        out
    }

    /// Merges repeated `(i, j, k)` entries and drops zeros.
    pub fn normalize(&mut self) {
        let mut map: std::collections::BTreeMap<(usize, usize, usize), Scalar> = Default::default();
        for (i, j, k, c) in self.entries.drain(..) {
            let e = map.entry((i, j, k)).or_insert_with(|| self.field.zero());
            *e += c;
        }
        self.entries = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j, k), c)| (i, j, k, c))
            .collect();
    }

    /// Adds `u ⊗ v ↦ w` style rank-one term: `m(x, y) += ⟨a, x⟩⟨b, y⟩ w`.
    pub fn add_rank_one(&mut self, a: &[Scalar], b: &[Scalar], w: &[Scalar]) {
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (k, wk) in w.iter().enumerate() {
                    if !wk.is_zero() {
                        self.entries.push((i, j, k, &ab * wk));
                    }
                }
            }
        }
        self.normalize();
    }

    /// Conjugates by changes of basis: returns `m'(x, y) = C m(A x, B y)`.
    pub fn transform(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> BilinearMap {
        let mut out = BilinearMap::zero(self.field, a.cols(), b.cols(), c.rows());
        for i in 0..a.cols() {
            let x = a.column(i);
            let act = self.left_action(&x);
            let m = c.mul(&act).mul(b);
            for j in 0..m.cols() {
                for k in 0..m.rows() {
                    out.push(i, j, k, m.get(k, j).clone());
                }
            }
        }
        out
    }
}
