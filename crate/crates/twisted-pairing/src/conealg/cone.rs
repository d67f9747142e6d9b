//! The cone of multiplication by `β` and its pairing `ι`.

use serde::{Deserialize, Serialize};

use super::model::{FloerModel, Slope};
use crate::complex::{mapping_cone, ChainMap, GradedComplex, GradedPairing};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{vec_is_zero, Matrix};

/// An element `(ξ, x) ∈ C^k(−μ) ⊕ C^k(μ)` of the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeElement {
    pub degree: i64,
    pub xi: Vec<Scalar>,
    pub x: Vec<Scalar>,
}

impl ConeElement {
    pub fn new(degree: i64, xi: Vec<Scalar>, x: Vec<Scalar>) -> Self {
        ConeElement { degree, xi, x }
    }

    /// Coordinates in the cone complex: the `ξ` block first.
    pub fn join(&self) -> Vec<Scalar> {
        let mut v = self.xi.clone();
        v.extend(self.x.iter().cloned());
        v
    }

    pub fn add(&self, other: &ConeElement) -> ConeElement {
        assert_eq!(self.degree, other.degree);
        ConeElement {
            degree: self.degree,
            xi: crate::matrix::vec_add(&self.xi, &other.xi),
            x: crate::matrix::vec_add(&self.x, &other.x),
        }
    }
}

/// Rank of `I` on `H̃^k × H̃^{2n−k}` against the dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyRow {
    pub degree: i64,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NondegeneracyReport {
    /// Whether `⟨·,·⟩: C(μ) ⊗ C(−μ)` is nondegenerate on cohomology.
    pub pairing_nondegenerate: bool,
    pub rows: Vec<NondegeneracyRow>,
}

impl NondegeneracyReport {
    pub fn full_rank(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.left_dim == r.right_dim && r.rank == r.left_dim)
    }

    pub fn middle(&self, n: i64) -> Option<&NondegeneracyRow> {
        self.rows.iter().find(|r| r.degree == n)
    }
}

/// The symmetrized pairing against the dilation form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DilationReport {
    /// `I(a, b) + (−1)^{|a|} I(b, a)`.
    pub symmetrized: Scalar,
    /// `⟨β, δ(ξ0⌣ξ1)⟩ − ⟨β, (δξ0)⌣ξ1 + (−1)^{|ξ0|} ξ0⌣δξ1⟩`.
    pub dilation_form: Scalar,
    /// `symmetrized − intersection`.
    pub defect: Scalar,
}

impl FloerModel {
    /// The degree-one chain map `ξ ↦ β⌣ξ` from `C(−μ)` to `C(μ)`.
    pub fn beta_map(&self) -> Result<ChainMap> {
        let src = self.complex(Slope::NegOne)?.clone();
        let tgt = self.complex(Slope::One)?.clone();
        let prod = self.cup_product(Slope::Two, Slope::NegOne)?;
        let f = self.field;
        let blocks = src
            .degrees()
            .map(|k| prod.left_action(f, 1, &self.beta, k, src.dim(k), tgt.dim(k + 1)))
            .collect();
        ChainMap::new(src, tgt, 1, blocks).map_err(|e| Error::Axiom(format!("β⌣ is not a chain map ({e}); check A3 and A5")))
    }

    /// `C̃^k = C^k(−μ) ⊕ C^k(μ)` with `d̃(ξ, x) = (dξ, dx − β⌣ξ)`.
    pub fn cone_complex(&self) -> Result<GradedComplex> {
        mapping_cone(&self.beta_map()?)
    }

    pub fn cone_differential(&self, a: &ConeElement) -> Result<ConeElement> {
        let cm = self.complex(Slope::NegOne)?;
        let cp = self.complex(Slope::One)?;
        let k = a.degree;
        let dxi = cm.apply_d(k, &a.xi);
        let bx = self.cup_apply(Slope::Two, 1, &self.beta, Slope::NegOne, k, &a.xi)?;
        let dx = crate::matrix::vec_sub(&cp.apply_d(k, &a.x), &bx);
        Ok(ConeElement::new(k + 1, dxi, dx))
    }

    pub fn is_cone_cocycle(&self, a: &ConeElement) -> Result<bool> {
        let d = self.cone_differential(a)?;
        Ok(vec_is_zero(&d.xi) && vec_is_zero(&d.x))
    }

    /// Splits cone coordinates in degree `k`.
    pub fn cone_element(&self, k: i64, v: &[Scalar]) -> Result<ConeElement> {
        let a = self.complex(Slope::NegOne)?.dim(k);
        if v.len() != a + self.complex(Slope::One)?.dim(k) {
            return Err(Error::Dimension(format!("cone vector of length {} in degree {k}", v.len())));
        }
        Ok(ConeElement::new(k, v[..a].to_vec(), v[a..].to_vec()))
    }

    /// `ι((ξ0, x0), (ξ1, x1)) = ⟨x0, ξ1⟩ − (−1)^{|ξ0|}⟨x1, ξ0⟩ + ⟨β, ξ0∗ξ1⟩`.
    pub fn iota(&self, a: &ConeElement, b: &ConeElement) -> Result<Scalar> {
        let n2 = 2 * self.n;
        if a.degree + b.degree != n2 {
            return Err(Error::Dimension(format!(
                "ι needs degrees summing to {n2}, got {} and {}",
                a.degree, b.degree
            )));
        }
        let f = self.field;
        let k = a.degree;
        let t1 = self.pair(Slope::One, k, &a.x, &b.xi)?;
        let t2 = self.pair(Slope::One, n2 - k, &b.x, &a.xi)?;
        let s = self.star_apply(Slope::NegOne, k, &a.xi, Slope::NegOne, n2 - k, &b.xi)?;
        let t3 = self.pair(Slope::Two, 1, &self.beta, &s)?;
        Ok(t1 - &f.sign(k) * &t2 + t3)
    }

    /// Gram matrix of `ι` on cone degree `k` against cone degree `2n − k`.
    pub fn iota_gram(&self, k: i64) -> Result<Matrix> {
        let f = self.field;
        let l = 2 * self.n - k;
        let cm = self.complex(Slope::NegOne)?;
        let cp = self.complex(Slope::One)?;
        let pm = self.pairing(Slope::One)?;
        let w = self.pairing(Slope::Two)?.block(1).transpose().mul_vec(&self.beta);
        let star = self.star_product(Slope::NegOne, Slope::NegOne)?;
        let (a0, a1) = (cm.dim(k), cp.dim(k));
        let (b0, b1) = (cm.dim(l), cp.dim(l));
        let mut g = Matrix::zeros(f, a0 + a1, b0 + b1);
        g.paste(0, 0, &star.contract(f, k, a0, l, b0, &w));
        g.paste(0, b0, &pm.block(l).transpose().scale(&-f.sign(k)));
        g.paste(a0, 0, &pm.block(k));
        Ok(g)
    }

    /// `ι` as a pairing of the cone with itself.
    pub fn iota_pairing(&self) -> Result<GradedPairing> {
        let cone = self.cone_complex()?;
        let blocks = cone.degrees().map(|k| self.iota_gram(k)).collect::<Result<Vec<_>>>()?;
        GradedPairing::new(cone.clone(), cone, self.n, blocks)
    }

    /// The first basis pair violating `ι(d̃a, b) + (−1)^{|a|} ι(a, d̃b) = 0`, as
    /// `(degree of a, i, j)`.
    pub fn iota_chain_map_defect(&self) -> Result<Option<(i64, usize, usize)>> {
        Ok(self.iota_pairing()?.check_adjoint())
    }

    /// `I` on cohomology classes, represented by cone cocycles.
    pub fn i_cone(&self, a: &ConeElement, b: &ConeElement) -> Result<Scalar> {
        for (name, e) in [("first", a), ("second", b)] {
            if !self.is_cone_cocycle(e)? {
                return Err(Error::NotCocycle(format!("{name} argument of I is not a cone cocycle")));
            }
        }
        self.iota(a, b)
    }

    /// Gram matrix of `I` on bases of `H̃^k` and `H̃^{2n−k}`.
    pub fn i_cone_gram(&self, k: i64) -> Result<Matrix> {
        let cone = self.cone_complex()?;
        let h = cone.cohomology();
        let l = 2 * self.n - k;
        let a = h.reps(k, cone.dim(k));
        let b = h.reps(l, cone.dim(l));
        Ok(a.transpose().mul(&self.iota_gram(k)?).mul(&b))
    }

    pub fn nondegeneracy_report(&self) -> Result<NondegeneracyReport> {
        let cone = self.cone_complex()?;
        let h = cone.cohomology();
        let pairing_nondegenerate = self.pairing(Slope::One)?.nondegenerate_on_cohomology();
        let mut rows = Vec::new();
        for k in cone.degrees() {
            let l = 2 * self.n - k;
            let a = h.reps(k, cone.dim(k));
            let b = h.reps(l, cone.dim(l));
            let gram = a.transpose().mul(&self.iota_gram(k)?).mul(&b);
            rows.push(NondegeneracyRow {
                degree: k,
                left_dim: h.dim(k),
                right_dim: h.dim(l),
                rank: gram.rank(),
            });
        }
        Ok(NondegeneracyReport {
            pairing_nondegenerate,
            rows,
        })
    }

    /// `I(a, b) + (−1)^{|a|} I(b, a) − ⟨β, [ξ0, ξ1]⟩`.
    pub fn symmetry_defect(&self, a: &ConeElement, b: &ConeElement) -> Result<Scalar> {
        let f = self.field;
        let k = a.degree;
        let sym = self.iota(a, b)? + &f.sign(k) * &self.iota(b, a)?;
        let br = self.bracket_apply(Slope::NegOne, k, &a.xi, Slope::NegOne, b.degree, &b.xi)?;
        Ok(sym - self.pair(Slope::Two, 1, &self.beta, &br)?)
    }

    /// Compares the symmetrized pairing with a supplied intersection number through the
    /// dilation form; needs a BV operator on `C(±μ)` and `C(−2μ)`.
    pub fn dilation_defect(&self, a: &ConeElement, b: &ConeElement, intersection: &Scalar) -> Result<DilationReport> {
        let f = self.field;
        let bv = self.bv.as_ref().ok_or_else(|| Error::Missing("BV operator".into()))?;
        let get = |s: Slope| {
            bv.delta
                .get(&s)
                .ok_or_else(|| Error::Missing(format!("δ at slope {s}")))
        };
        let (dm, dm2) = (get(Slope::NegOne)?, get(Slope::NegTwo)?);
        let (p, q) = (a.degree, b.degree);
        let prod = self.cup_apply(Slope::NegOne, p, &a.xi, Slope::NegOne, q, &b.xi)?;
        let first = self.pair(Slope::Two, 1, &self.beta, &dm2.apply(p + q, &prod))?;
        let u = self.cup_apply(Slope::NegOne, p - 1, &dm.apply(p, &a.xi), Slope::NegOne, q, &b.xi)?;
        let v = self.cup_apply(Slope::NegOne, p, &a.xi, Slope::NegOne, q - 1, &dm.apply(q, &b.xi))?;
        let sv: Vec<Scalar> = u.iter().zip(&v).map(|(x, y)| x + &(&f.sign(p) * y)).collect();
        let second = self.pair(Slope::Two, 1, &self.beta, &sv)?;
        let symmetrized = self.iota(a, b)? + &f.sign(p) * &self.iota(b, a)?;
        Ok(DilationReport {
            defect: &symmetrized - intersection,
            symmetrized,
            dilation_form: first - second,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::les_dimension_check;
    use crate::field::Field;
    use crate::surfaces;

    fn model(windings: [i64; 2], field: Field, seed: u64) -> FloerModel {
        let s = surfaces::torus();
        let mut rng = crate::rng(seed);
        let beta = s.beta_with_windings(field, &windings, &mut rng).unwrap();
        FloerModel::from_simplicial(&s.complex, &beta).unwrap()
    }

    #[test]
    fn iota_is_a_chain_map_on_the_torus() {
        for f in [Field::prime(3).unwrap(), Field::Rationals] {
            let m = model([1, 1], f, 5);
            assert_eq!(m.iota_chain_map_defect().unwrap(), None);
        }
    }

    #[test]
    fn gram_agrees_with_direct_formula() {
        let f = Field::prime(5).unwrap();
        let m = model([1, 0], f, 2);
        let cone = m.cone_complex().unwrap();
        let mut rng = crate::rng(9);
        for k in 0..=2 {
            let g = m.iota_gram(k).unwrap();
            for _ in 0..5 {
                let u = f.random_vec(&mut rng, cone.dim(k));
                let v = f.random_vec(&mut rng, cone.dim(2 - k));
                let a = m.cone_element(k, &u).unwrap();
                let b = m.cone_element(2 - k, &v).unwrap();
                assert_eq!(m.iota(&a, &b).unwrap(), g.bilinear(&u, &v));
            }
        }
    }

    #[test]
    fn cone_les_and_nondegeneracy() {
        let f = Field::prime(3).unwrap();
        for w in [[0, 0], [1, 0], [1, 1]] {
            let m = model(w, f, 4);
            let cone = m.cone_complex().unwrap();
            assert!(les_dimension_check(&cone, &m.beta_map().unwrap()).holds());
            let r = m.nondegeneracy_report().unwrap();
            assert!(r.pairing_nondegenerate);
            assert!(r.full_rank(), "{r:?}");
        }
    }

    #[test]
    fn zero_beta_gives_direct_sum() {
        let f = Field::Rationals;
        let m = model([0, 0], f, 1);
        let mut z = m.clone();
        z.beta = vec![f.zero(); m.beta.len()];
        let b: Vec<usize> = z.cone_complex().unwrap().betti().into_iter().map(|(_, b)| b).collect();
        assert_eq!(b, vec![2, 4, 2]);
    }
}
