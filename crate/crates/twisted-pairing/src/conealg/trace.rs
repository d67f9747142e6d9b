//! Supertraces of graded endomorphisms and their eigenvalue-refined Euler characteristics.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::{char_poly, factor, Poly};

/// `Σ_k (−1)^k Tr(Φ^k)` over the supplied `(degree, block)` pairs.
pub fn supertrace(field: Field, blocks: &[(i64, Matrix)]) -> Scalar {
    let mut acc = field.zero();
    for (k, m) in blocks {
        acc += &(&field.sign(*k) * &m.trace());
    }
    acc
}

/// Supertrace with validation that every block is square.
pub fn bullet_supertrace(field: Field, blocks: &[(i64, Matrix)]) -> Result<Scalar> {
    for (k, m) in blocks {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "block in degree {k} is {}×{}, not square",
                m.rows(),
                m.cols()
            )));
        }
        if m.field() != field {
            return Err(Error::FieldMismatch(field, m.field()));
        }
    }
    Ok(supertrace(field, blocks))
}

/// One irreducible factor `g` of the characteristic polynomials, with the dimension of the
/// generalized `g`-eigenspace in each degree and its Euler characteristic counted per root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenFactor {
    pub factor: Poly,
    pub dims: Vec<(i64, usize)>,
    /// `Σ_k (−1)^k dim_k / deg g`: the Euler characteristic of each root's eigenspace.
    pub chi: i64,
}

impl EigenFactor {
    /// The sum of the roots of `g`, i.e. minus its subleading coefficient.
    pub fn root_sum(&self) -> Scalar {
        let d = self.factor.degree().unwrap_or(0);
        if d == 0 {
            return self.factor.field().zero();
        }
        -self.factor.coeff(d - 1)
    }

    pub fn degree(&self) -> usize {
        self.factor.degree().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRefined {
    pub factors: Vec<EigenFactor>,
    /// `Σ_k (−1)^k dim_k`.
    pub euler: i64,
    pub supertrace: Scalar,
    /// `Σ_g deg(g)·χ_g = χ`.
    pub euler_consistent: bool,
    /// `Σ_g (Σ roots of g)·χ_g = Str`.
    pub derivative_consistent: bool,
}

impl QRefined {
    pub fn factor(&self, g: &Poly) -> Option<&EigenFactor> {
        self.factors.iter().find(|f| &f.factor == g)
    }

    /// Euler characteristic of the generalized eigenspace of a root `σ ∈ 𝕂`.
    pub fn chi_at(&self, sigma: &Scalar) -> i64 {
        let f = sigma.field();
        let g = Poly::new(f, vec![-sigma.clone(), f.one()]);
        self.factor(&g).map_or(0, |e| e.chi)
    }
}

/// Splits `Φ` into generalized eigenspaces, one per irreducible factor of the
/// characteristic polynomials of its blocks.
pub fn q_refined(field: Field, blocks: &[(i64, Matrix)]) -> Result<QRefined> {
    let str = bullet_supertrace(field, blocks)?;
    let mut polys: Vec<Poly> = Vec::new();
    for (_, m) in blocks {
        if m.rows() == 0 {
            continue;
        }
        for fac in factor(&char_poly(m))? {
            if !polys.contains(&fac.poly) {
                polys.push(fac.poly);
            }
        }
    }
    polys.sort_by(|a, b| a.canonical_cmp(b));
    let mut factors = Vec::new();
    for g in polys {
        let deg = g.degree().unwrap_or(1);
        let mut dims = Vec::new();
        let mut signed = 0i64;
        for (k, m) in blocks {
            if m.rows() == 0 {
                continue;
            }
            let gen = g.pow(m.rows()).eval_matrix(m);
            let dim = m.rows() - gen.rank();
            if dim % deg != 0 {
                return Err(Error::Defect(format!(
                    "generalized eigenspace of {g} in degree {k} has dimension {dim}, not a multiple of {deg}"
                )));
            }
            if dim > 0 {
                dims.push((*k, dim));
            }
            signed += if k.rem_euclid(2) == 0 { dim as i64 } else { -(dim as i64) };
        }
        factors.push(EigenFactor {
            factor: g,
            dims,
            chi: signed / deg as i64,
        });
    }
    let euler: i64 = blocks
        .iter()
        .map(|(k, m)| if k.rem_euclid(2) == 0 { m.rows() as i64 } else { -(m.rows() as i64) })
        .sum();
    let euler_consistent = factors.iter().map(|e| e.degree() as i64 * e.chi).sum::<i64>() == euler;
    let mut weighted = field.zero();
    for e in &factors {
        weighted += &(&e.root_sum() * &field.int(e.chi));
    }
    Ok(QRefined {
        factors,
        euler,
        derivative_consistent: weighted == str,
        supertrace: str,
        euler_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn sphere(f: Field, n: i64) -> Vec<(i64, Matrix)> {
        (0..=n)
            .map(|k| {
                let m = if k == 0 {
                    Matrix::zeros(f, 1, 1)
                } else if k == n {
                    Matrix::identity(f, 1)
                } else {
                    Matrix::zeros(f, 0, 0)
                };
                (k, m)
            })
            .collect()
    }

    #[test]
    fn sphere_shaped_endomorphism_has_signed_unit_trace() {
        for p in [2, 3, 5] {
            let f = Field::prime(p).unwrap();
            for n in 1..6 {
                assert_eq!(bullet_supertrace(f, &sphere(f, n)).unwrap(), f.sign(n));
            }
        }
    }

    #[test]
    fn zero_map_has_zero_trace() {
        let f = Field::Rationals;
        let blocks = vec![(0, Matrix::zeros(f, 3, 3)), (1, Matrix::zeros(f, 2, 2))];
        assert!(bullet_supertrace(f, &blocks).unwrap().is_zero());
        let q = q_refined(f, &blocks).unwrap();
        assert_eq!(q.factors.len(), 1);
        assert_eq!(q.factors[0].factor, Poly::x(f));
        assert_eq!(q.factors[0].chi, 1);
    }

    #[test]
    fn non_square_block_is_rejected() {
        let f = Field::Rationals;
        assert!(bullet_supertrace(f, &[(0, Matrix::zeros(f, 2, 3))]).is_err());
    }

    #[test]
    fn refined_euler_data_recovers_trace_and_euler_characteristic() {
        let mut rng = crate::rng(4);
        for f in [Field::prime(3).unwrap(), Field::prime(7).unwrap(), Field::Rationals] {
            for _ in 0..20 {
                let blocks: Vec<(i64, Matrix)> = (0..3)
                    .map(|k| {
                        let d = 1 + (k as usize + 1) % 3;
                        let rows: Vec<Vec<Scalar>> = (0..d)
                            .map(|_| {
                                f.random_vec(&mut rng, d)
                                    .into_iter()
                                    .map(|s| match f {
                                        Field::Rationals => f.int(s.to_i64().unwrap_or(0) % 4),
                                        _ => s,
                                    })
                                    .collect()
                            })
                            .collect();
                        (k, Matrix::from_rows(f, &rows))
                    })
                    .collect();
                let q = q_refined(f, &blocks).unwrap();
                assert!(q.euler_consistent);
                assert!(q.derivative_consistent);
                let direct: Scalar = {
                    let mut acc = f.zero();
                    for (k, m) in &blocks {
                        let cp = char_poly(m);
                        let d = m.rows();
                        acc += &(&f.sign(*k) * &(-cp.coeff(d - 1)));
                    }
                    acc
                };
                assert_eq!(q.supertrace, direct);
            }
        }
    }

    #[test]
    fn nilpotent_map_has_single_zero_factor() {
        let f = Field::prime(5).unwrap();
        let m = Matrix::from_ints(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let q = q_refined(f, &[(0, m), (1, Matrix::zeros(f, 1, 1))]).unwrap();
        assert_eq!(q.factors.len(), 1);
        assert_eq!(q.chi_at(&f.zero()), 2);
    }
}
