//! Linear-algebra decision procedures for independence and rank bounds on families of
//! classes, semicharacteristics, duality identities for supertraces, the `A_m` lattice
//! bound and weighted Euler data.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::conealg::{q_refined, supertrace};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::poly::Poly;

/// `(−1)^{n(n+1)/2}·χ`: the self-intersection of a closed `n`-dimensional class with Euler
/// characteristic `χ`.
pub fn self_intersection_euler(n: i64, chi: i64) -> i64 {
    if (n * (n + 1) / 2).rem_euclid(2) == 0 {
        chi
    } else {
        -chi
    }
}

/// A `(−1)^n`-symmetric bilinear form on `𝕂^N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    pub field: Field,
    pub n: i64,
    pub matrix: Matrix,
}

impl IntersectionForm {
    pub fn new(n: i64, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "intersection form is {}×{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let f = matrix.field();
        if matrix.transpose().scale(&f.sign(n)) != matrix {
            return Err(Error::Malformed(format!(
                "intersection form is not {}-symmetric",
                if n % 2 == 0 { "" } else { "anti" }
            )));
        }
        Ok(IntersectionForm { field: f, n, matrix })
    }

    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn pair(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        self.matrix.bilinear(a, b)
    }

    /// Gram matrix of the columns of `classes`.
    pub fn gram(&self, classes: &Matrix) -> Result<Matrix> {
        if classes.rows() != self.dimension() {
            return Err(Error::Dimension(format!(
                "classes live in dimension {}, form in {}",
                classes.rows(),
                self.dimension()
            )));
        }
        Ok(classes.transpose().mul(&self.matrix).mul(classes))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FolkVerdict {
    Independent,
    Inconclusive { failing: Vec<usize>, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FolkReport {
    pub verdict: FolkVerdict,
    pub gram: Matrix,
    /// Diagonal of the Gram matrix: `a_i·g_ii = 0` forces `a_i = 0` when `g_ii ≠ 0`.
    pub certificate: Vec<Scalar>,
}

/// Independence of pairwise orthogonal classes whose self-intersections are `±χ_i ≠ 0`.
pub fn folk_independent(classes: &Matrix, chis: &[i64], form: &IntersectionForm) -> Result<FolkReport> {
    if classes.cols() != chis.len() {
        return Err(Error::Dimension(format!(
            "{} classes but {} Euler characteristics",
            classes.cols(),
            chis.len()
        )));
    }
    let f = form.field;
    let gram = form.gram(classes)?;
    let r = chis.len();
    let certificate: Vec<Scalar> = (0..r).map(|i| gram.get(i, i).clone()).collect();
    let mut verdict = FolkVerdict::Independent;
    let mut overlapping = Vec::new();
    for i in 0..r {
        for j in 0..r {
            if i != j && !gram.get(i, j).is_zero() && !overlapping.contains(&i) {
                overlapping.push(i);
            }
        }
    }
    let vanishing: Vec<usize> = (0..r).filter(|&i| f.int(chis[i]).is_zero()).collect();
    let mismatched: Vec<usize> = (0..r)
        .filter(|&i| certificate[i] != f.int(self_intersection_euler(form.n, chis[i])))
        .collect();
    if !overlapping.is_empty() {
        verdict = FolkVerdict::Inconclusive {
            reason: format!("classes {overlapping:?} are not pairwise orthogonal"),
            failing: overlapping,
        };
    } else if !vanishing.is_empty() {
        let names: Vec<String> = vanishing.iter().map(|&i| format!("χ_{i} = {}", chis[i])).collect();
        verdict = FolkVerdict::Inconclusive {
            reason: format!("{} vanish in {f}", names.join(", ")),
            failing: vanishing,
        };
    } else if !mismatched.is_empty() {
        verdict = FolkVerdict::Inconclusive {
            reason: format!("self-intersections of {mismatched:?} differ from ±χ"),
            failing: mismatched,
        };
    }
    Ok(FolkReport {
        verdict,
        gram,
        certificate,
    })
}

/// Independence of the columns by enumerating every coefficient vector over GF(p);
/// `None` over ℚ or when the search space exceeds a million vectors.
pub fn brute_force_independent(classes: &Matrix) -> Option<bool> {
    let f = classes.field();
    let elements = f.elements()?;
    let p = elements.len();
    let r = classes.cols();
    if (p as f64).powi(r as i32) > 1e6 {
        return None;
    }
    let mut coeffs = vec![0usize; r];
    loop {
        let mut i = 0;
        while i < r && coeffs[i] == p - 1 {
            coeffs[i] = 0;
            i += 1;
        }
        if i == r {
            return Some(true);
        }
        coeffs[i] += 1;
        let v: Vec<Scalar> = coeffs.iter().map(|&c| elements[c].clone()).collect();
        if classes.mul_vec(&v).iter().all(Scalar::is_zero) {
            return Some(false);
        }
    }
}

/// `Σ_{i ≤ (n−1)/2} b_i mod 2` for odd `n`.
pub fn semicharacteristic(betti_mod2: &[u64], n: i64) -> Result<u8> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::Dimension(format!("semicharacteristic needs odd n, got {n}")));
    }
    let half = ((n + 1) / 2) as usize;
    if betti_mod2.len() < half {
        return Err(Error::Dimension(format!(
            "need {half} Betti numbers, got {}",
            betti_mod2.len()
        )));
    }
    Ok((betti_mod2[..half].iter().sum::<u64>() % 2) as u8)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub label: String,
    pub chi: i64,
    /// The self-pairing of the object, when computed.
    pub bullet: Option<Scalar>,
}

/// A family of objects with their pairing matrix and, optionally, their classes in an
/// ambient space with an intersection form and an isotropic subspace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInput {
    /// Dimension of the objects, fixing the sign of the expected self-pairings.
    pub n: i64,
    pub members: Vec<FamilyMember>,
    pub gram: Matrix,
    /// Classes as columns, in the coordinates of `form`.
    pub classes: Option<Matrix>,
    pub form: Option<IntersectionForm>,
    /// Basis of an isotropic subspace as columns.
    pub isotropic: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicCheck {
    pub dim_span: usize,
    pub dim_w: usize,
    pub dim_intersection: usize,
    /// `⌊r/2⌋`, asserted only for a nondegenerate Gram matrix.
    pub bound: Option<usize>,
    pub satisfied: Option<bool>,
    /// Whether the Gram matrix is definite over ℚ; then the intersection must vanish.
    pub definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub members: Vec<FamilyMember>,
    pub gram: Matrix,
    pub rank: usize,
    pub nondegenerate: bool,
    pub expected_diagonal: Vec<Scalar>,
    pub diagonal_matches: bool,
    /// The classes reproduce the Gram matrix under the form.
    pub gram_consistent: Option<bool>,
    /// `Some(true)` when forced by nondegeneracy; otherwise the rank of the classes decides.
    pub independent: Option<bool>,
    /// `dim span ≥ rank(Gram)`.
    pub rank_lower_bound: usize,
    pub ambient_dim: Option<usize>,
    /// `r ≤ N` for a nondegenerate family.
    pub ambient_bound: Option<bool>,
    pub isotropic: Option<IsotropicCheck>,
}

impl FamilyReport {
    /// Every asserted verdict holds.
    pub fn ok(&self) -> bool {
        self.gram_consistent != Some(false)
            && self.ambient_bound != Some(false)
            && self.isotropic.as_ref().is_none_or(|c| c.satisfied != Some(false))
    }
}

/// Sign of definiteness of a symmetric rational matrix by leading principal minors.
fn definite_sign(m: &Matrix) -> Option<bool> {
    if m.field() != Field::Rationals || m.rows() == 0 || m.transpose() != *m {
        return None;
    }
    let mut pos = true;
    let mut neg = true;
    for k in 1..=m.rows() {
        let d = m.submatrix(0..k, 0..k).determinant();
        let s = d.is_positive()?;
        if d.is_zero() {
            return None;
        }
        pos &= s;
        neg &= s == (k % 2 == 0);
    }
    (pos || neg).then_some(pos)
}

pub fn gram_bound(input: &FamilyInput) -> Result<FamilyReport> {
    let g = &input.gram;
    let f = g.field();
    if !g.is_square() || g.rows() != input.members.len() {
        return Err(Error::Dimension(format!(
            "Gram matrix is {}×{} for {} members",
            g.rows(),
            g.cols(),
            input.members.len()
        )));
    }
    let r = g.rows();
    let rank = g.rank();
    let nondegenerate = rank == r;
    let n = input.n;
    if input.form.as_ref().is_some_and(|q| q.n != n) {
        return Err(Error::Dimension("family and form disagree on n".into()));
    }
    let expected_diagonal: Vec<Scalar> = input
        .members
        .iter()
        .map(|m| m.bullet.clone().unwrap_or_else(|| f.int(self_intersection_euler(n, m.chi))))
        .collect();
    let diagonal_matches = (0..r).all(|i| g.get(i, i) == &expected_diagonal[i]);

    let gram_consistent = match (&input.classes, &input.form) {
        (Some(c), Some(q)) => {
            if c.cols() != r {
                return Err(Error::Dimension(format!("{} classes for {r} members", c.cols())));
            }
            Some(q.gram(c)? == *g)
        }
        _ => None,
    };
    let independent = if nondegenerate {
        Some(true)
    } else {
        input.classes.as_ref().map(|c| c.rank() == r)
    };
    let ambient_dim = input
        .form
        .as_ref()
        .map(|q| q.dimension())
        .or(input.classes.as_ref().map(|c| c.rows()));
    let ambient_bound = match ambient_dim {
        Some(dim) if nondegenerate => Some(r <= dim),
        _ => None,
    };

    let isotropic = match (&input.isotropic, &input.classes, &input.form) {
        (Some(w), Some(c), Some(q)) => {
            if w.rows() != q.dimension() {
                return Err(Error::Dimension("isotropic subspace in the wrong ambient space".into()));
            }
            if !w.transpose().mul(&q.matrix).mul(w).is_zero() {
                return Err(Error::Defect("subspace is not isotropic".into()));
            }
            let dim_span = c.rank();
            let dim_w = w.rank();
            let dim_intersection = dim_span + dim_w - c.hstack(w).rank();
            let definite = definite_sign(g).is_some();
            let bound = nondegenerate.then_some(r / 2);
            let satisfied = bound.map(|b| dim_intersection <= b && (!definite || dim_intersection == 0));
            Some(IsotropicCheck {
                dim_span,
                dim_w,
                dim_intersection,
                bound,
                satisfied,
                definite,
            })
        }
        (Some(_), _, _) => return Err(Error::Missing("isotropic check needs classes and a form".into())),
        _ => None,
    };

    Ok(FamilyReport {
        members: input.members.clone(),
        gram: g.clone(),
        rank,
        nondegenerate,
        expected_diagonal,
        diagonal_matches,
        gram_consistent,
        independent,
        rank_lower_bound: rank,
        ambient_dim,
        ambient_bound,
        isotropic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum IdentityStatus {
    Holds,
    Fails(String),
    NotApplicable,
}

impl IdentityStatus {
    fn check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            IdentityStatus::Holds
        } else {
            IdentityStatus::Fails(detail())
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self, IdentityStatus::Fails(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: i64,
    pub field: Field,
    pub euler: i64,
    pub supertrace: Scalar,
    /// `(−1)^{n(n+1)/2}·χ`.
    pub intersection_number: i64,
    pub identities: Vec<(String, IdentityStatus)>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(|(_, s)| s.holds())
    }

    pub fn status(&self, name: &str) -> Option<&IdentityStatus> {
        self.identities.iter().find(|(k, _)| k == name).map(|(_, s)| s)
    }
}

/// Checks the trace identities forced by the duality `Tr(Φ'^{n−k}) = dim_k − Tr(Φ^k)`.
///
/// `traces[k]` is `Tr(Φ^k)` on a space of dimension `dims[k]`; `dual_traces[j]` is the
/// trace of `Φ'` in degree `j` on the dual side, defaulting to `Φ' = Φ`.
pub fn duality_supertrace_identities(
    field: Field,
    n: i64,
    dims: &[usize],
    traces: &[Scalar],
    dual_traces: Option<&[Scalar]>,
) -> Result<DualityReport> {
    let len = (n + 1) as usize;
    if n < 0 || dims.len() != len || traces.len() != len || dual_traces.is_some_and(|d| d.len() != len) {
        return Err(Error::Dimension(format!("need {len} degrees of dimensions and traces")));
    }
    let dual = dual_traces.unwrap_or(traces);
    let violated: Vec<usize> = (0..len)
        .filter(|&k| &traces[k] + &dual[len - 1 - k] != field.int(dims[k] as i64))
        .collect();
    if !violated.is_empty() {
        return Err(Error::Defect(format!(
            "duality Tr(Φ^k) + Tr(Φ'^(n−k)) = dim_k fails in degrees {violated:?}"
        )));
    }
    let euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    let signed = |t: &[Scalar]| {
        let mut acc = field.zero();
        for (k, v) in t.iter().enumerate() {
            acc += &(&field.sign(k as i64) * v);
        }
        acc
    };
    let str = signed(traces);
    let str_dual = signed(dual);
    let intersection_number = self_intersection_euler(n, euler);
    let mut identities = Vec::new();

    let rhs = &(&field.sign(n + 1) * &str) + &(&field.sign(n * (n - 1) / 2) * &field.int(intersection_number));
    identities.push((
        "transport".to_string(),
        IdentityStatus::check(str_dual == rhs, || format!("Str(Φ') = {str_dual}, expected {rhs}")),
    ));

    let char2 = field.characteristic() == 2;
    let even = if n % 2 == 0 {
        let twice = &str + &str;
        let mut status = IdentityStatus::check(twice == field.int(euler), || format!("2·Str = {twice}, χ = {euler}"));
        if char2 && status.holds() {
            let total: usize = dims.iter().sum();
            status = if !total.is_multiple_of(2) {
                IdentityStatus::Fails(format!("total dimension {total} is odd"))
            } else {
                IdentityStatus::check(str == field.int(euler / 2), || format!("Str = {str}, χ/2 = {}", euler / 2))
            };
        }
        status
    } else {
        IdentityStatus::NotApplicable
    };
    identities.push(("even".to_string(), even));

    let odd = if n % 2 == 1 && char2 {
        let half = dims[..len / 2].iter().sum::<usize>() as i64;
        IdentityStatus::check(str == field.int(half), || format!("Str = {str}, χ_1/2 = {}", half % 2))
    } else {
        IdentityStatus::NotApplicable
    };
    identities.push(("semicharacteristic".to_string(), odd));

    let sphere = dims[0] == 1 && dims[len - 1] == 1 && dims[1..len - 1].iter().all(|&d| d == 0) && len > 1;
    // Needs Φ to kill the unit in degree 0.
    let sphere_status = if sphere && traces[0].is_zero() {
        IdentityStatus::check(str == field.sign(n), || format!("Str = {str}, expected (−1)^{n}"))
    } else {
        IdentityStatus::NotApplicable
    };
    identities.push(("sphere".to_string(), sphere_status));

    Ok(DualityReport {
        n,
        field,
        euler,
        supertrace: str,
        intersection_number,
        identities,
    })
}

/// A graded endomorphism with nondegenerate pairings `B_k : H^k × H^{n−k} → 𝕂` such that
/// `Φ^{n−k}` is the adjoint of `1 − Φ^k`: `B_k Φ^{n−k} = (1 − Φ^k)ᵀ B_k` for `k ≤ n − k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualInstance {
    pub n: i64,
    pub blocks: Vec<(i64, Matrix)>,
    /// `pairings[k]` for `k ≤ n/2`.
    pub pairings: Vec<Matrix>,
}

impl DualInstance {
    /// A random instance with the given (palindromic) dimensions. The middle pairing of an
    /// even `n` is `(−1)^{n/2}`-symmetric, and alternating in characteristic 2.
    pub fn random<R: Rng + ?Sized>(field: Field, n: i64, dims: &[usize], rng: &mut R) -> Result<Self> {
        let len = (n + 1) as usize;
        if n < 0 || dims.len() != len || (0..len).any(|k| dims[k] != dims[len - 1 - k]) {
            return Err(Error::Dimension(format!("dimensions {dims:?} are not palindromic of length {len}")));
        }
        let mut blocks: Vec<Option<Matrix>> = vec![None; len];
        let mut pairings = Vec::new();
        for k in 0..len.div_ceil(2) {
            let d = dims[k];
            let j = len - 1 - k;
            if k < j {
                let phi = Matrix::random(field, d, d, rng);
                let b = Matrix::random_invertible(field, d, rng);
                let binv = b.inverse().expect("invertible");
                let dual = binv.mul(&Matrix::identity(field, d).sub(&phi).transpose()).mul(&b);
                blocks[k] = Some(phi);
                blocks[j] = Some(dual);
                pairings.push(b);
            } else {
                let (b, phi) = middle_block(field, (k % 2) as i64, d, rng)?;
                blocks[k] = Some(phi);
                pairings.push(b);
            }
        }
        Ok(DualInstance {
            n,
            blocks: blocks
                .into_iter()
                .enumerate()
                .map(|(k, m)| (k as i64, m.expect("every degree filled")))
                .collect(),
            pairings,
        })
    }

    /// `Φ⁰ = 0` and `Φⁿ = 1` on one-dimensional ends.
    pub fn sphere(field: Field, n: i64) -> Self {
        let blocks = (0..=n)
            .map(|k| {
                let m = if k == 0 {
                    Matrix::zeros(field, 1, 1)
                } else if k == n {
                    Matrix::identity(field, 1)
                } else {
                    Matrix::zeros(field, 0, 0)
                };
                (k, m)
            })
            .collect();
        let pairings = (0..=n / 2)
            .map(|k| {
                let d = if k == 0 { 1 } else { 0 };
                Matrix::identity(field, d)
            })
            .collect();
        DualInstance { n, blocks, pairings }
    }

    pub fn field(&self) -> Field {
        self.blocks[0].1.field()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, m)| m.rows()).collect()
    }

    pub fn traces(&self) -> Vec<Scalar> {
        self.blocks.iter().map(|(_, m)| m.trace()).collect()
    }

    pub fn supertrace(&self) -> Scalar {
        supertrace(self.field(), &self.blocks)
    }

    /// Whether every adjointness relation holds.
    pub fn is_dual(&self) -> bool {
        let f = self.field();
        let len = self.blocks.len();
        self.pairings.iter().enumerate().all(|(k, b)| {
            let phi = &self.blocks[k].1;
            let dual = &self.blocks[len - 1 - k].1;
            let one = Matrix::identity(f, phi.rows());
            b.mul(dual) == one.sub(phi).transpose().mul(b)
        })
    }

    pub fn identities(&self) -> Result<DualityReport> {
        duality_supertrace_identities(self.field(), self.n, &self.dims(), &self.traces(), None)
    }
}

/// An `ε`-symmetric nondegenerate `B` and `Φ` with `BΦ + ΦᵀB = B`.
fn middle_block<R: Rng + ?Sized>(field: Field, parity: i64, d: usize, rng: &mut R) -> Result<(Matrix, Matrix)> {
    let char2 = field.characteristic() == 2;
    let skew = char2 || parity == 1;
    if skew && d % 2 == 1 {
        return Err(Error::Dimension(format!("odd middle dimension {d} needs a skew pairing")));
    }
    let p = Matrix::random_invertible(field, d, rng);
    let mut core = Matrix::zeros(field, d, d);
    if skew {
        for i in 0..d / 2 {
            core.set(2 * i, 2 * i + 1, field.one());
            core.set(2 * i + 1, 2 * i, -field.one());
        }
    } else {
        for i in 0..d {
            let mut v = field.random(rng);
            while v.is_zero() {
                v = field.random(rng);
            }
            core.set(i, i, v);
        }
    }
    let b = p.transpose().mul(&core).mul(&p);
    let eps = if parity == 1 { -field.one() } else { field.one() };
    let x0 = if char2 {
        let mut u = Matrix::zeros(field, d, d);
        for i in 0..d {
            for j in i + 1..d {
                u.set(i, j, b.get(i, j).clone());
            }
        }
        u
    } else {
        b.scale(&field.ratio(1, 2))
    };
    let r = Matrix::random(field, d, d, rng);
    let mut a = r.sub(&r.transpose().scale(&eps));
    if char2 {
        for i in 0..d {
            a.add_at(i, i, &field.random(rng));
        }
    }
    let phi = b.inverse().expect("nondegenerate").mul(&x0.add(&a));
    Ok((b, phi))
}

/// `g(1 − x)` made monic.
fn reflect(g: &Poly) -> Poly {
    let f = g.field();
    let y = Poly::from_ints(f, &[1, -1]);
    let mut acc = Poly::zero(f);
    for c in g.coeffs().iter().rev() {
        acc = acc.mul(&y).add(&Poly::constant(c.clone()));
    }
    acc.monic()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenPairing {
    /// `(degree, factor, dim)` whose partner `(n − degree, g(1 − x), dim)` is missing.
    pub unmatched: Vec<(i64, Poly, usize)>,
}

impl EigenPairing {
    pub fn holds(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// Compares the generalized `σ`-eigenspace of `Φ^k` with the `(1 − σ)`-eigenspace of `Φ^{n−k}`.
pub fn eigenvalue_pairing(field: Field, n: i64, blocks: &[(i64, Matrix)]) -> Result<EigenPairing> {
    let mut table: BTreeMap<i64, Vec<(Poly, usize)>> = BTreeMap::new();
    for (k, m) in blocks {
        let q = q_refined(field, &[(*k, m.clone())])?;
        let entries = q
            .factors
            .into_iter()
            .filter_map(|e| e.dims.first().map(|&(_, d)| (e.factor, d)))
            .collect();
        table.insert(*k, entries);
    }
    let mut unmatched = Vec::new();
    for (k, entries) in &table {
        let partner = table.get(&(n - k)).cloned().unwrap_or_default();
        for (g, d) in entries {
            let h = reflect(g);
            if !partner.iter().any(|(p, e)| p == &h && e == d) {
                unmatched.push((*k, g.clone(), *d));
            }
        }
    }
    Ok(EigenPairing { unmatched })
}

/// `⌊(m + 1)/2⌋`.
pub fn a_m_bound(m: usize) -> usize {
    m.div_ceil(2)
}

/// The skew `A_m` chain form with the alternating vanishing cycles `v_1, v_3, …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmWitness {
    pub m: usize,
    pub form: IntersectionForm,
    /// Witness classes as columns.
    pub classes: Matrix,
    pub form_rank: usize,
    pub classes_rank: usize,
    pub isotropic: bool,
    /// `m − rank/2`: the largest isotropic dimension of the form.
    pub max_isotropic: usize,
}

impl AmWitness {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Dimension("A_m needs m ≥ 1".into()));
        }
        let f = Field::Rationals;
        let mut q = Matrix::zeros(f, m, m);
        for i in 0..m - 1 {
            q.set(i, i + 1, f.one());
            q.set(i + 1, i, -f.one());
        }
        let form = IntersectionForm::new(1, q)?;
        let cols: Vec<Vec<Scalar>> = (0..m)
            .step_by(2)
            .map(|i| {
                let mut v = vec![f.zero(); m];
                v[i] = f.one();
                v
            })
            .collect();
        let classes = Matrix::from_columns(f, m, &cols);
        let form_rank = form.matrix.rank();
        Ok(AmWitness {
            m,
            isotropic: form.gram(&classes)?.is_zero(),
            classes_rank: classes.rank(),
            max_isotropic: m - form_rank / 2,
            form_rank,
            form,
            classes,
        })
    }

    /// The family is isotropic, independent and of the size of the bound, which is the
    /// largest isotropic dimension.
    pub fn verified(&self) -> bool {
        let b = a_m_bound(self.m);
        self.isotropic && self.classes_rank == b && self.classes.cols() == b && self.max_isotropic == b
    }
}

/// Euler characteristics `χ_σ` of the weight-`σ` parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEulerData {
    pub weights: BTreeMap<i64, i64>,
}

impl WeightedEulerData {
    pub fn new(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut weights = BTreeMap::new();
        for (s, c) in pairs {
            *weights.entry(s).or_insert(0) += c;
        }
        WeightedEulerData { weights }
    }

    pub fn euler(&self) -> i64 {
        self.weights.values().sum()
    }

    /// Every weight moved by `by`.
    pub fn shifted(&self, by: i64) -> Self {
        WeightedEulerData::new(self.weights.iter().map(|(s, c)| (s + by, *c)))
    }

    /// `Σ_σ q^σ χ_σ` at a nonzero `q`.
    pub fn evaluate(&self, q: &Scalar) -> Result<Scalar> {
        let f = q.field();
        let inv = q.inv().ok_or_else(|| Error::Dimension("evaluation at q = 0".into()))?;
        let mut acc = f.zero();
        for (s, c) in &self.weights {
            let base = if *s >= 0 { q } else { &inv };
            acc += &(&base.pow(s.unsigned_abs()) * &f.int(*c));
        }
        Ok(acc)
    }
}

/// `Σ_σ σ·χ_σ`, the derivative at `q = 1`.
pub fn mukai_derivative(data: &WeightedEulerData) -> i64 {
    data.weights.iter().map(|(s, c)| s * c).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub derivative: i64,
    pub shifted_derivative: i64,
    pub chi_total: i64,
    /// `Σ χ_σ = χ_total`.
    pub euler_consistent: bool,
    /// `Σ (σ − 1)χ_σ = Σ σχ_σ − χ_total`.
    pub holds: bool,
}

pub fn shift_identity_check(data: &WeightedEulerData, chi_total: i64) -> ShiftReport {
    let derivative = mukai_derivative(data);
    let shifted_derivative = mukai_derivative(&data.shifted(-1));
    ShiftReport {
        derivative,
        shifted_derivative,
        chi_total,
        euler_consistent: data.euler() == chi_total,
        holds: shifted_derivative == derivative - chi_total,
    }
}
