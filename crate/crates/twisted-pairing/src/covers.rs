//! Cyclic p-fold covers of a simplicial complex classified by a mod-p 1-cocycle, the
//! quotient complex by `(q−1)²`, and the covering pairing `ι`.

use std::collections::HashMap;

use crate::complex::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::simplicial::{Cochain, SimplicialComplex};

/// The cover `M̃ → M` with deck generator `q`.
///
/// The lift of a base simplex `σ = (v0 < … < vk)` to sheet `j` has vertices
/// `(v_i, j + β(v0 → v_i))`, where `β(v0 → v_i)` is the value of β on the edge from `v0`
/// to `v_i`. Cover vertex `(v, s)` gets id `v·p + s`, so lifts keep the base vertex order.
#[derive(Clone, Debug)]
pub struct CyclicCover {
    base: SimplicialComplex,
    field: Field,
    p: u64,
    beta: Cochain,
    total: SimplicialComplex,
    /// `to_base[k][i] = (base index, sheet)` of the `i`-th `k`-simplex upstairs.
    to_base: Vec<Vec<(usize, usize)>>,
    /// `lifts[k][σ·p + j]` is the index upstairs of `σ` on sheet `j`.
    lifts: Vec<Vec<usize>>,
}

impl CyclicCover {
    /// Builds the cover from a 1-cocycle over GF(p).
    pub fn new(base: &SimplicialComplex, beta: &Cochain) -> Result<Self> {
        let field = beta.field();
        let p = match field {
            Field::Prime(p) => p,
            Field::Rationals => return Err(Error::FieldMismatch(Field::Rationals, Field::Prime(0))),
        };
        if beta.degree != 1 || beta.values.len() != base.count(1) {
            return Err(Error::Dimension("β must be a 1-cochain on the base".into()));
        }
        if !base.coboundary(beta).is_zero() {
            return Err(Error::NotCocycle("β is not closed".into()));
        }
        let pu = p as usize;
        let residue = |a: usize, b: usize| -> usize {
            base.edge_value(beta, a, b).unwrap().residue().unwrap() as usize
        };
        let lift_vertices = |s: &[usize], j: usize| -> Vec<usize> {
            s.iter().map(|&v| v * pu + (j + residue(s[0], v)) % pu).collect()
        };
        let top = base.dim();
        let facets: Vec<Vec<usize>> = base
            .simplices(top)
            .iter()
            .flat_map(|s| (0..pu).map(move |j| (s, j)))
            .map(|(s, j)| lift_vertices(s, j))
            .collect();
        let mut total = SimplicialComplex::from_facets(&facets)?;
        let mut to_base = Vec::new();
        let mut lifts = Vec::new();
        for k in 0..=top {
            if total.count(k) != pu * base.count(k) {
                return Err(Error::Malformed("lifted simplices collide; the base is too coarse for this cover".into()));
            }
            let mut tb = vec![(0, 0); total.count(k)];
            let mut lf = vec![0; total.count(k)];
            for (i, s) in base.simplices(k).iter().enumerate() {
                for j in 0..pu {
                    let up = total
                        .index_of(&lift_vertices(s, j))
                        .ok_or_else(|| Error::Malformed("lift is missing a face".into()))?;
                    tb[up] = (i, j);
                    lf[i * pu + j] = up;
                }
            }
            to_base.push(tb);
            lifts.push(lf);
        }
        if let Some(fc) = base.fundamental_cycle() {
            let signs = to_base[top].iter().map(|&(i, _)| fc[i]).collect();
            total = total.with_fundamental_cycle(signs)?;
        }
        Ok(CyclicCover {
            base: base.clone(),
            field,
            p,
            beta: beta.clone(),
            total,
            to_base,
            lifts,
        })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn total(&self) -> &SimplicialComplex {
        &self.total
    }

    pub fn beta(&self) -> &Cochain {
        &self.beta
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Index upstairs of base simplex `i` (degree `k`) on sheet `j` (taken mod p).
    pub fn lift_index(&self, k: usize, i: usize, j: i64) -> usize {
        let pu = self.p as usize;
        self.lifts[k][i * pu + j.rem_euclid(self.p as i64) as usize]
    }

    /// `(base index, sheet)` of an upstairs simplex; the sheet is read at its minimal vertex.
    pub fn to_base(&self, k: usize, i: usize) -> (usize, usize) {
        self.to_base[k][i]
    }

    pub fn total_complex(&self) -> GradedComplex {
        self.total.cochain_complex(self.field)
    }

    /// `(q^m x)(σ, j) = x(σ, j + m)`.
    pub fn q_power(&self, x: &Cochain, m: i64) -> Cochain {
        let k = x.degree;
        let values = (0..x.values.len())
            .map(|i| {
                let (b, j) = self.to_base[k][i];
                x.values[self.lift_index(k, b, j as i64 + m)].clone()
            })
            .collect();
        Cochain::new(k, values)
    }

    /// The matrix of `q^m` on `C^k(M̃)`.
    pub fn q_matrix(&self, k: usize, m: i64) -> Matrix {
        let n = self.total.count(k);
        let mut q = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            let (b, j) = self.to_base[k][i];
            q.set(i, self.lift_index(k, b, j as i64 + m), self.field.one());
        }
        q
    }

    /// `q` as a degree-0 chain automorphism of the total cochain complex.
    pub fn q_action(&self) -> Result<ChainMap> {
        let c = self.total_complex();
        ChainMap::from_fn(c.clone(), c, 0, |k| self.q_matrix(k as usize, 1))
    }

    /// Sum over sheets.
    pub fn pushdown(&self, x: &Cochain) -> Cochain {
        let k = x.degree;
        let mut out = vec![self.field.zero(); self.base.count(k)];
        for (i, v) in x.values.iter().enumerate() {
            out[self.to_base[k][i].0] += v;
        }
        Cochain::new(k, out)
    }

    /// Pullback along the covering map: the same value on every sheet.
    pub fn lift(&self, x: &Cochain) -> Cochain {
        let k = x.degree;
        let values = (0..self.total.count(k))
            .map(|i| x.values[self.to_base[k][i].0].clone())
            .collect();
        Cochain::new(k, values)
    }

    /// `ι(x̃0, x̃1) = Σ_j j ∫_{M̃} (q^{−j} x̃0) ⌣ x̃1`, with `j ∈ {0, …, p−1}`.
    pub fn iota(&self, x0: &Cochain, x1: &Cochain) -> Result<Scalar> {
        let mut acc = self.field.zero();
        for j in 1..self.p as i64 {
            let shifted = self.q_power(x0, -j);
            let v = self.total.integrate(&self.total.cup(&shifted, x1))?;
            acc += &self.field.int(j) * &v;
        }
        Ok(acc)
    }

    /// Gram matrix of `ι` on `C^k(M̃) × C^{dim−k}(M̃)`.
    pub fn iota_gram(&self, k: usize) -> Result<Matrix> {
        let pairing = self.total.cup_pairing(self.field, k)?;
        let mut g = Matrix::zeros(self.field, pairing.rows(), pairing.cols());
        for j in 1..self.p as i64 {
            let q = self.q_matrix(k, -j);
            g = g.add(&q.transpose().mul(&pairing).scale(&self.field.int(j)));
        }
        Ok(g)
    }

    /// Coordinates `(a, c)` of the image of `x̃` in the quotient by `(q−1)²`, in the basis
    /// `{1, q−1}`: `a = Σ_j x̃(·, j)` and `c = −Σ_j j·x̃(·, j)`.
    pub fn quotient(&self, x: &Cochain) -> (Cochain, Cochain) {
        let k = x.degree;
        let n = self.base.count(k);
        let mut a = vec![self.field.zero(); n];
        let mut c = vec![self.field.zero(); n];
        for (i, v) in x.values.iter().enumerate() {
            let (b, j) = self.to_base[k][i];
            a[b] += v;
            c[b] -= &self.field.int(j as i64) * v;
        }
        (Cochain::new(k, a), Cochain::new(k, c))
    }

    /// A section of [`quotient`](Self::quotient): `a − c` on sheet 0 and `c` on sheet `p−1`.
    pub fn section(&self, a: &Cochain, c: &Cochain) -> Cochain {
        let k = a.degree;
        let mut out = vec![self.field.zero(); self.total.count(k)];
        let top = self.p as i64 - 1;
        for i in 0..self.base.count(k) {
            out[self.lift_index(k, i, 0)] += &a.values[i] - &c.values[i];
            out[self.lift_index(k, i, top)] += &c.values[i];
        }
        Cochain::new(k, out)
    }

    fn quotient_matrix(&self, k: usize) -> Matrix {
        let n = self.base.count(k);
        let mut m = Matrix::zeros(self.field, 2 * n, self.total.count(k));
        for i in 0..self.total.count(k) {
            let (b, j) = self.to_base[k][i];
            m.set(b, i, self.field.one());
            m.set(n + b, i, self.field.int(-(j as i64)));
        }
        m
    }

    fn section_matrix(&self, k: usize) -> Matrix {
        let n = self.base.count(k);
        let mut m = Matrix::zeros(self.field, self.total.count(k), 2 * n);
        let top = self.p as i64 - 1;
        for i in 0..n {
            m.set(self.lift_index(k, i, 0), i, self.field.one());
            m.add_at(self.lift_index(k, i, 0), n + i, &self.field.int(-1));
            m.add_at(self.lift_index(k, i, top), n + i, &self.field.one());
        }
        m
    }

    /// `C*(M̃) ⊗_{K[q]/(q^p−1)} K[q]/(q−1)²`, with differential induced from `M̃`.
    pub fn twisted_complex(&self) -> Result<TwistedComplex> {
        let top = self.base.dim();
        let dims = (0..=top).map(|k| 2 * self.base.count(k)).collect();
        let d = (0..top)
            .map(|k| {
                self.quotient_matrix(k + 1)
                    .mul(&self.total.coboundary_matrix(self.field, k))
                    .mul(&self.section_matrix(k))
            })
            .collect();
        let complex = GradedComplex::new(self.field, 0, dims, d)?;
        Ok(TwistedComplex {
            base_dims: (0..=top).map(|k| self.base.count(k)).collect(),
            complex,
            base: self.base.cochain_complex(self.field),
        })
    }

    /// Gram matrix of the induced pairing on the quotient in degree `k`, in `(a, c)` coordinates.
    pub fn quotient_gram(&self, k: usize) -> Result<Matrix> {
        let l = self.base.dim() - k;
        let g = self.iota_gram(k)?;
        Ok(self.section_matrix(k).transpose().mul(&g).mul(&self.section_matrix(l)))
    }

    /// `I` on quotient cocycles `(a0, c0)`, `(a1, c1)`; rejects non-cocycles.
    pub fn pairing_on_classes(&self, tw: &TwistedComplex, x0: &(Cochain, Cochain), x1: &(Cochain, Cochain)) -> Result<Scalar> {
        for x in [x0, x1] {
            if !tw.is_cocycle(&x.0, &x.1) {
                return Err(Error::NotCocycle(format!("quotient element in degree {}", x.0.degree)));
            }
        }
        self.iota(&self.section(&x0.0, &x0.1), &self.section(&x1.0, &x1.1))
    }

    /// Per-degree dimension of the `q`-invariant part of `H*(M̃)`.
    pub fn invariant_cohomology_dims(&self) -> Vec<usize> {
        let c = self.total_complex();
        let h = c.cohomology();
        let q = self.q_action().expect("q commutes with δ");
        c.degrees()
            .map(|k| {
                let hq = q.on_cohomology(k, &h, &h);
                let n = hq.rows();
                hq.sub(&Matrix::identity(self.field, n)).kernel().cols()
            })
            .collect()
    }
}

/// The quotient `C̃ = C*(M̃)/(q−1)²` in coordinates `(a, c)`, `C̃^k = C^k(M) ⊕ C^k(M)`.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    pub complex: GradedComplex,
    pub base: GradedComplex,
    base_dims: Vec<usize>,
}

impl TwistedComplex {
    pub fn join(&self, a: &Cochain, c: &Cochain) -> Vec<Scalar> {
        let mut v = a.values.clone();
        v.extend(c.values.iter().cloned());
        v
    }

    pub fn split(&self, k: usize, v: &[Scalar]) -> (Cochain, Cochain) {
        let n = self.base_dims[k];
        (Cochain::new(k, v[..n].to_vec()), Cochain::new(k, v[n..].to_vec()))
    }

    pub fn is_cocycle(&self, a: &Cochain, c: &Cochain) -> bool {
        self.complex.is_cocycle(a.degree as i64, &self.join(a, c))
    }

    /// `c ↦ (0, c)`: multiples of `(q−1)`.
    pub fn inclusion(&self) -> Result<ChainMap> {
        let f = self.complex.field();
        ChainMap::from_fn(self.base.clone(), self.complex.clone(), 0, |k| {
            let n = self.base.dim(k);
            let mut m = Matrix::zeros(f, 2 * n, n);
            m.paste(n, 0, &Matrix::identity(f, n));
            m
        })
    }

    /// `(a, c) ↦ a`: reduction mod `(q−1)`.
    pub fn projection(&self) -> Result<ChainMap> {
        let f = self.complex.field();
        ChainMap::from_fn(self.complex.clone(), self.base.clone(), 0, |k| {
            let n = self.base.dim(k);
            let mut m = Matrix::zeros(f, n, 2 * n);
            m.paste(0, 0, &Matrix::identity(f, n));
            m
        })
    }
}

/// Connected components of the 1-skeleton.
pub fn component_count(k: &SimplicialComplex) -> usize {
    let verts = k.vertices();
    let mut parent: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut HashMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    for e in k.simplices(1) {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a != b {
            parent.insert(a, b);
        }
    }
    verts.iter().filter(|&&v| find(&mut parent, v) == v).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn trivial_cover_is_disjoint_copies() {
        let t = surfaces::torus();
        let f = gf(3);
        let beta = Cochain::zero(f, &t.complex, 1);
        let cover = CyclicCover::new(&t.complex, &beta).unwrap();
        assert_eq!(component_count(cover.total()), 3);
        assert_eq!(cover.total_complex().cohomology().dim(0), 3);
    }

    #[test]
    fn circle_winding_one_is_connected() {
        let c = surfaces::circle(4);
        let f = gf(3);
        // Value 1 on the edge {0,1}: total winding 1.
        let mut beta = Cochain::zero(f, &c, 1);
        beta.values[c.index_of(&[0, 1]).unwrap()] = f.one();
        let cover = CyclicCover::new(&c, &beta).unwrap();
        assert_eq!(component_count(cover.total()), 1);
        assert_eq!(cover.total_complex().cohomology().dim(0), 1);
        assert_eq!(cover.total().euler_characteristic(), 3 * c.euler_characteristic());
    }

    #[test]
    fn q_has_order_p_and_commutes_with_pushdown() {
        let t = surfaces::torus();
        let f = gf(5);
        let mut rng = crate::rng(1);
        let beta = t.beta_with_windings(f, &[1, 2], &mut rng).unwrap();
        let cover = CyclicCover::new(&t.complex, &beta).unwrap();
        let q = cover.q_matrix(1, 1);
        let mut acc = Matrix::identity(f, q.rows());
        for _ in 0..5 {
            acc = acc.mul(&q);
        }
        assert_eq!(acc, Matrix::identity(f, q.rows()));
        let x = Cochain::new(1, f.random_vec(&mut rng, cover.total().count(1)));
        let lhs = cover.pushdown(&cover.total().coboundary(&x));
        let rhs = t.complex.coboundary(&cover.pushdown(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_section_round_trip() {
        let t = surfaces::torus();
        let f = gf(3);
        let mut rng = crate::rng(2);
        let beta = t.beta_with_windings(f, &[1, 0], &mut rng).unwrap();
        let cover = CyclicCover::new(&t.complex, &beta).unwrap();
        let a = Cochain::new(1, f.random_vec(&mut rng, 21));
        let c = Cochain::new(1, f.random_vec(&mut rng, 21));
        assert_eq!(cover.quotient(&cover.section(&a, &c)), (a, c));
    }
}
