//! Ordered simplicial complexes with cochains, Alexander–Whitney cup, Steenrod cup-1
//! and integration against a fundamental cycle.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::bilinear::BilinearMap;
use crate::complex::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A finite simplicial complex whose simplices are sorted vertex lists.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    fundamental: Option<Vec<i64>>,
}

/// Sign of the permutation sorting `seq` (entries distinct).
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                s = -s;
            }
        }
    }
    s
}

impl SimplicialComplex {
    /// The downward closure of the given simplices.
    pub fn from_facets(facets: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len || s.is_empty() {
                return Err(Error::Malformed(format!("bad simplex {f:?}")));
            }
            let n = s.len();
            // All nonempty subsets.
            for mask in 1u64..(1u64 << n) {
                let face: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(SimplicialComplex {
            simplices,
            index,
            fundamental: None,
        })
    }

    /// Attaches a fundamental cycle (one sign per top simplex), checking that it is a cycle.
    pub fn with_fundamental_cycle(mut self, signs: Vec<i64>) -> Result<Self> {
        let top = self.dim();
        if signs.len() != self.count(top) {
            return Err(Error::Dimension("one sign per top simplex".into()));
        }
        if top > 0 {
            let mut boundary = vec![0i64; self.count(top - 1)];
            for (i, s) in self.simplices[top].iter().enumerate() {
                for j in 0..s.len() {
                    let face = face_without(s, j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    boundary[self.index[top - 1][&face]] += sign * signs[i];
                }
            }
            if boundary.iter().any(|&b| b != 0) {
                return Err(Error::Malformed("fundamental cycle has nonzero boundary".into()));
            }
        }
        self.fundamental = Some(signs);
        Ok(self)
    }

    /// Orients a closed pseudomanifold by propagating signs across codimension-one faces.
    pub fn oriented(self) -> Result<Self> {
        let top = self.dim();
        let n = self.count(top);
        if top == 0 {
            return self.with_fundamental_cycle(vec![1; n]);
        }
        let mut cofaces: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (t, s) in self.simplices[top].iter().enumerate() {
            for j in 0..s.len() {
                let f = self.index[top - 1][&face_without(s, j)];
                cofaces.entry(f).or_default().push((t, j));
            }
        }
        if cofaces.values().any(|c| c.len() != 2) || cofaces.len() != self.count(top - 1) {
            return Err(Error::Malformed("not a closed pseudomanifold".into()));
        }
        let mut sign = vec![0i64; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                let s = &self.simplices[top][t];
                for j in 0..s.len() {
                    let f = self.index[top - 1][&face_without(s, j)];
                    for &(u, i) in &cofaces[&f] {
                        if u == t {
                            continue;
                        }
                        let parity = if (i + j) % 2 == 0 { 1 } else { -1 };
                        let want = -sign[t] * parity;
                        if sign[u] == 0 {
                            sign[u] = want;
                            queue.push_back(u);
                        } else if sign[u] != want {
                            return Err(Error::Malformed("not orientable".into()));
                        }
                    }
                }
            }
        }
        self.with_fundamental_cycle(sign)
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices(0).iter().map(|s| s[0]).collect()
    }

    pub fn fundamental_cycle(&self) -> Option<&[i64]> {
        self.fundamental.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|k| if k % 2 == 0 { 1 } else { -1 } * self.count(k) as i64)
            .sum()
    }

    /// The coboundary `C^k → C^{k+1}`, `(δx)(σ) = Σ_i (−1)^i x(∂_i σ)`.
    pub fn coboundary_matrix(&self, field: Field, k: usize) -> Matrix {
        let mut m = Matrix::zeros(field, self.count(k + 1), self.count(k));
        for (r, s) in self.simplices(k + 1).iter().enumerate() {
            for j in 0..s.len() {
                let c = self.index[k][&face_without(s, j)];
                m.set(r, c, field.sign(j as i64));
            }
        }
        m
    }

    pub fn cochain_complex(&self, field: Field) -> GradedComplex {
        let dims: Vec<usize> = (0..=self.dim()).map(|k| self.count(k)).collect();
        let d = (0..self.dim()).map(|k| self.coboundary_matrix(field, k)).collect();
        GradedComplex::new(field, 0, dims, d).expect("simplicial coboundary squares to zero")
    }

    pub fn coboundary(&self, x: &Cochain) -> Cochain {
        let field = x.field();
        let k = x.degree;
        let mut out = vec![field.zero(); self.count(k + 1)];
        for (r, s) in self.simplices(k + 1).iter().enumerate() {
            let mut v = field.zero();
            for j in 0..s.len() {
                let c = self.index[k][&face_without(s, j)];
                if j % 2 == 0 {
                    v += &x.values[c];
                } else {
                    v -= &x.values[c];
                }
            }
            out[r] = v;
        }
        Cochain::new(k + 1, out)
    }

    /// Alexander–Whitney cup product: `(x⌣y)(v0..v_{p+q}) = x(v0..vp) · y(vp..v_{p+q})`.
    pub fn cup(&self, x: &Cochain, y: &Cochain) -> Cochain {
        let tensor = self.cup_tensor(x.field(), x.degree, y.degree);
        Cochain::new(x.degree + y.degree, tensor.apply(&x.values, &y.values))
    }

    /// Structure constants of the cup product `C^p × C^q → C^{p+q}`.
    pub fn cup_tensor(&self, field: Field, p: usize, q: usize) -> BilinearMap {
        let mut m = BilinearMap::zero(field, self.count(p), self.count(q), self.count(p + q));
        for (r, s) in self.simplices(p + q).iter().enumerate() {
            let i = self.index[p][&s[..=p]];
            let j = self.index[q][&s[p..]];
            m.push(i, j, r, field.one());
        }
        m
    }

    /// Steenrod cup-1 product with the sign normalization
    /// `d(x∗y) + dx∗y + (−1)^{|x|} x∗dy = x⌣y − (−1)^{|x||y|} y⌣x`.
    pub fn cup1(&self, x: &Cochain, y: &Cochain) -> Cochain {
        let tensor = self.cup1_tensor(x.field(), x.degree, y.degree);
        Cochain::new(tensor_out_degree(x.degree, y.degree), tensor.apply(&x.values, &y.values))
    }

    /// Structure constants of cup-1 `C^p × C^q → C^{p+q−1}`.
    ///
    /// On an `n`-simplex (n = p+q−1) the value is
    /// `(−1)^{p+q−1} Σ_i (−1)^{(p−i)(q+1)} x(v0..vi, v_{i+q}..vn) · y(vi..v_{i+q})`.
    pub fn cup1_tensor(&self, field: Field, p: usize, q: usize) -> BilinearMap {
        let out_deg = tensor_out_degree(p, q);
        let mut m = BilinearMap::zero(field, self.count(p), self.count(q), if p + q == 0 { 0 } else { self.count(out_deg) });
        if p + q == 0 || q == 0 {
            return m;
        }
        let n = out_deg;
        let global = (p + q - 1) as i64;
        for (r, s) in self.simplices(n).iter().enumerate() {
            for i in 0..=n {
                let j = i + q;
                if j > n {
                    break;
                }
                let mut xf: Vec<usize> = s[..=i].to_vec();
                xf.extend_from_slice(&s[j..]);
                if xf.len() != p + 1 {
                    continue;
                }
                let yf = &s[i..=j];
                let e = ((p as i64 - i as i64) * (q as i64 + 1)) + global;
                m.push(self.index[p][&xf], self.index[q][yf], r, field.sign(e));
            }
        }
        m.normalize();
        m
    }

    /// The chain map `x ↦ β⌣x` of degree `|β|` on the cochain complex.
    pub fn left_multiplication(&self, beta: &Cochain) -> Result<ChainMap> {
        let field = beta.field();
        let c = self.cochain_complex(field);
        let p = beta.degree;
        ChainMap::from_fn(c.clone(), c, p as i64, |k| {
            let k = k as usize;
            if k + p > self.dim() {
                Matrix::zeros(field, 0, self.count(k))
            } else {
                self.cup_tensor(field, p, k).left_action(&beta.values)
            }
        })
    }

    /// `∫ x = Σ sign(σ) x(σ)` over the fundamental cycle.
    pub fn integrate(&self, x: &Cochain) -> Result<Scalar> {
        let fc = self
            .fundamental
            .as_ref()
            .ok_or_else(|| Error::Missing("fundamental cycle".into()))?;
        if x.degree != self.dim() {
            return Err(Error::Dimension(format!("integrating a {}-cochain over a {}-cycle", x.degree, self.dim())));
        }
        let field = x.field();
        let mut acc = field.zero();
        for (s, v) in fc.iter().zip(&x.values) {
            if *s != 0 && !v.is_zero() {
                acc += &field.int(*s) * v;
            }
        }
        Ok(acc)
    }

    /// The fundamental cycle as a linear functional on top cochains.
    pub fn integration_vector(&self, field: Field) -> Result<Vec<Scalar>> {
        let fc = self
            .fundamental
            .as_ref()
            .ok_or_else(|| Error::Missing("fundamental cycle".into()))?;
        Ok(fc.iter().map(|&s| field.int(s)).collect())
    }

    /// Gram matrix of `(x, y) ↦ ∫ x⌣y` on `C^p × C^{dim−p}`.
    pub fn cup_pairing(&self, field: Field, p: usize) -> Result<Matrix> {
        let top = self.dim();
        if p > top {
            return Ok(Matrix::zeros(field, self.count(p), 0));
        }
        let w = self.integration_vector(field)?;
        Ok(self.cup_tensor(field, p, top - p).contract(&w))
    }

    /// Restriction of a cochain to a subcomplex.
    pub fn restrict(&self, x: &Cochain, sub: &Subcomplex) -> Cochain {
        let values = sub.inclusion[x.degree].iter().map(|&i| x.values[i].clone()).collect();
        Cochain::new(x.degree, values)
    }

    /// Sum of a 1-cochain along a closed vertex path (consecutive vertices span edges).
    pub fn loop_sum(&self, x: &Cochain, path: &[usize]) -> Result<Scalar> {
        assert_eq!(x.degree, 1);
        let field = x.field();
        let mut acc = field.zero();
        for i in 0..path.len() {
            acc += self.edge_value(x, path[i], path[(i + 1) % path.len()])?;
        }
        Ok(acc)
    }

    /// `x(a → b)`: the value on edge `{a, b}` oriented from `a` to `b` (zero when `a = b`).
    pub fn edge_value(&self, x: &Cochain, a: usize, b: usize) -> Result<Scalar> {
        let field = x.field();
        if a == b {
            return Ok(field.zero());
        }
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let i = self
            .index_of(&[lo, hi])
            .ok_or_else(|| Error::Malformed(format!("no edge {{{a}, {b}}}")))?;
        Ok(&field.int(s) * &x.values[i])
    }
}

fn tensor_out_degree(p: usize, q: usize) -> usize {
    (p + q).saturating_sub(1)
}

pub(crate) fn face_without(s: &[usize], j: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &v)| v).collect()
}

/// A cochain of degree `degree`, one value per `degree`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<Scalar>,
}

impl Cochain {
    pub fn new(degree: usize, values: Vec<Scalar>) -> Self {
        Cochain { degree, values }
    }

    pub fn zero(field: Field, k: &SimplicialComplex, degree: usize) -> Self {
        Cochain::new(degree, vec![field.zero(); k.count(degree)])
    }

    pub fn from_ints(field: Field, degree: usize, values: &[i64]) -> Self {
        Cochain::new(degree, values.iter().map(|&v| field.int(v)).collect())
    }

    /// Indicator of the simplex with index `i`.
    pub fn basis(field: Field, k: &SimplicialComplex, degree: usize, i: usize) -> Self {
        let mut c = Cochain::zero(field, k, degree);
        c.values[i] = field.one();
        c
    }

    pub fn field(&self) -> Field {
        self.values.first().map_or(Field::Rationals, Scalar::field)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain::new(self.degree, crate::matrix::vec_add(&self.values, &other.values))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain::new(self.degree, crate::matrix::vec_sub(&self.values, &other.values))
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain::new(self.degree, crate::matrix::vec_scale(&self.values, s))
    }
}

/// A subcomplex together with its inclusion into the ambient complex.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: SimplicialComplex,
    /// `inclusion[k][i]` is the ambient index of the `i`-th `k`-simplex of the subcomplex.
    pub inclusion: Vec<Vec<usize>>,
}

impl Subcomplex {
    /// The subcomplex spanned by `simplices`, which must already be closed under faces.
    pub fn new(ambient: &SimplicialComplex, simplices: &[Vec<usize>]) -> Result<Self> {
        let given: BTreeSet<Vec<usize>> = simplices
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s
            })
            .collect();
        for s in &given {
            if ambient.index_of(s).is_none() {
                return Err(Error::Malformed(format!("{s:?} is not a simplex of the ambient complex")));
            }
            if s.len() > 1 {
                for j in 0..s.len() {
                    if !given.contains(&face_without(s, j)) {
                        return Err(Error::Malformed(format!("{s:?} has a face missing from the subcomplex")));
                    }
                }
            }
        }
        Subcomplex::closure(ambient, &given.into_iter().collect::<Vec<_>>())
    }

    /// The smallest subcomplex containing `simplices`.
    pub fn closure(ambient: &SimplicialComplex, simplices: &[Vec<usize>]) -> Result<Self> {
        for s in simplices {
            let mut t = s.clone();
            t.sort_unstable();
            if ambient.index_of(&t).is_none() {
                return Err(Error::Malformed(format!("{s:?} is not a simplex of the ambient complex")));
            }
        }
        let complex = SimplicialComplex::from_facets(simplices)?;
        let inclusion = (0..=complex.dim())
            .map(|k| {
                complex
                    .simplices(k)
                    .iter()
                    .map(|s| ambient.index_of(s).expect("face of an ambient simplex"))
                    .collect()
            })
            .collect();
        Ok(Subcomplex { complex, inclusion })
    }

    /// The edges of a closed vertex path, as a one-dimensional subcomplex.
    pub fn edge_loop(ambient: &SimplicialComplex, path: &[usize]) -> Result<Self> {
        let edges: Vec<Vec<usize>> = (0..path.len())
            .map(|i| vec![path[i], path[(i + 1) % path.len()]])
            .collect();
        Subcomplex::closure(ambient, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces;

    #[test]
    fn tetrahedron_boundary_is_sphere() {
        let s = surfaces::sphere();
        assert_eq!(s.euler_characteristic(), 2);
        let b: Vec<usize> = s.cochain_complex(Field::Rationals).betti().into_iter().map(|(_, b)| b).collect();
        assert_eq!(b, vec![1, 0, 1]);
    }

    #[test]
    fn integrate_indicator() {
        let t = surfaces::torus();
        let f = Field::Rationals;
        let fc = t.complex.fundamental_cycle().unwrap().to_vec();
        let x = Cochain::basis(f, &t.complex, 2, 0);
        assert_eq!(t.complex.integrate(&x).unwrap(), f.int(fc[0]));
    }

    #[test]
    fn cup1_vanishes_against_zero_cochains() {
        let t = surfaces::torus();
        let f = Field::prime(3).unwrap();
        let x = Cochain::from_ints(f, 1, &vec![1; t.complex.count(1)]);
        let y = Cochain::from_ints(f, 0, &vec![1; t.complex.count(0)]);
        assert!(t.complex.cup1(&x, &y).is_zero());
        assert!(t.complex.cup1(&y, &x).is_zero());
    }

    #[test]
    fn subcomplex_rejects_missing_faces() {
        let t = surfaces::torus();
        assert!(Subcomplex::new(&t.complex, &[vec![0, 1]]).is_err());
        assert!(Subcomplex::new(&t.complex, &[vec![0, 1], vec![0], vec![1]]).is_ok());
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
    }
}
