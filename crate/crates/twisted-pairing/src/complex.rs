//! Finite cochain complexes, cohomology, chain maps, mapping cones and pairings.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A cochain complex concentrated in degrees `min_degree .. min_degree + dims.len()`.
///
/// `d[i]` maps degree `min_degree + i` to degree `min_degree + i + 1`; the differential
/// out of the top degree is zero and is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    field: Field,
    min_degree: i64,
    dims: Vec<usize>,
    d: Vec<Matrix>,
}

impl GradedComplex {
    /// Validates shapes and `d² = 0`.
    pub fn new(field: Field, min_degree: i64, dims: Vec<usize>, d: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            if !d.is_empty() {
                return Err(Error::Malformed("differentials without degrees".into()));
            }
        } else if d.len() != dims.len() - 1 {
            return Err(Error::Malformed(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                d.len()
            )));
        }
        for (i, m) in d.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field(), field));
            }
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return Err(Error::Malformed(format!(
                    "d in degree {} has shape {}x{}, expected {}x{}",
                    min_degree + i as i64,
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..d.len() {
            if !d[i].mul(&d[i - 1]).is_zero() {
                return Err(Error::Malformed(format!(
                    "d∘d ≠ 0 out of degree {}",
                    min_degree + i as i64 - 1
                )));
            }
        }
        Ok(GradedComplex {
            field,
            min_degree,
            dims,
            d,
        })
    }

    /// A complex with all differentials zero.
    pub fn zero_differential(field: Field, min_degree: i64, dims: Vec<usize>) -> Self {
        let d = dims
            .windows(2)
            .map(|w| Matrix::zeros(field, w[1], w[0]))
            .collect();
        GradedComplex {
            field,
            min_degree,
            dims,
            d,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    /// One past the top degree.
    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64
    }

    pub fn degrees(&self) -> std::ops::Range<i64> {
        self.min_degree..self.max_degree()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn index(&self, k: i64) -> Option<usize> {
        if k >= self.min_degree && k < self.max_degree() {
            Some((k - self.min_degree) as usize)
        } else {
            None
        }
    }

    /// The differential out of degree `k` as a `dim(k+1) × dim(k)` matrix.
    pub fn d(&self, k: i64) -> Matrix {
        match self.index(k) {
            Some(i) if i < self.d.len() => self.d[i].clone(),
            _ => Matrix::zeros(self.field, self.dim(k + 1), self.dim(k)),
        }
    }

    pub fn apply_d(&self, k: i64, x: &[Scalar]) -> Vec<Scalar> {
        match self.index(k) {
            Some(i) if i < self.d.len() => self.d[i].mul_vec(x),
            _ => vec![self.field.zero(); self.dim(k + 1)],
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(k) as i64)
            .sum()
    }

    /// Cohomology with representatives and projections.
    pub fn cohomology(&self) -> Cohomology {
        let mut degrees = Vec::new();
        for k in self.degrees() {
            let n = self.dim(k);
            let incoming = self.d(k - 1);
            let outgoing = self.d(k);
            let boundaries = incoming.column_space();
            let cycles = outgoing.kernel();
            // Extend the boundary basis to a basis of the cycles.
            let joined = boundaries.hstack(&cycles);
            let picked: Vec<usize> = joined
                .independent_columns()
                .into_iter()
                .filter(|&c| c >= boundaries.cols())
                .collect();
            let reps = joined.select_columns(&picked);
            let partial = boundaries.hstack(&reps);
            let comp = partial.complement_indices();
            let mut basis = partial.clone();
            for c in comp {
                basis = basis.hstack(&Matrix::identity(self.field, n).select_columns(&[c]));
            }
            let inv = basis.inverse().expect("extended basis is invertible");
            let b = boundaries.cols();
            let h = reps.cols();
            let proj = inv.submatrix(b..b + h, 0..n);
            degrees.push(CohomologyDegree {
                degree: k,
                reps,
                proj,
            });
        }
        Cohomology {
            field: self.field,
            degrees,
        }
    }

    /// Betti numbers `(degree, dim H^k)`.
    pub fn betti(&self) -> Vec<(i64, usize)> {
        self.degrees()
            .map(|k| {
                let r_out = self.d(k).rank();
                let r_in = self.d(k - 1).rank();
                (k, self.dim(k) - r_out - r_in)
            })
            .collect()
    }

    pub fn is_cocycle(&self, k: i64, x: &[Scalar]) -> bool {
        self.apply_d(k, x).iter().all(Scalar::is_zero)
    }

    /// Direct sum of two complexes over the same field.
    pub fn direct_sum(&self, other: &GradedComplex) -> GradedComplex {
        assert_eq!(self.field, other.field);
        let lo = self.min_degree.min(other.min_degree);
        let hi = self.max_degree().max(other.max_degree());
        let dims: Vec<usize> = (lo..hi).map(|k| self.dim(k) + other.dim(k)).collect();
        let d = (lo..hi - 1)
            .map(|k| {
                let mut m = Matrix::zeros(self.field, dims[(k + 1 - lo) as usize], dims[(k - lo) as usize]);
                m.paste(0, 0, &self.d(k));
                m.paste(self.dim(k + 1), self.dim(k), &other.d(k));
                m
            })
            .collect();
        GradedComplex {
            field: self.field,
            min_degree: lo,
            dims,
            d,
        }
    }

    /// The same complex regarded on a larger degree window.
    pub fn widen(&self, lo: i64, hi: i64) -> GradedComplex {
        let lo = lo.min(self.min_degree);
        let hi = hi.max(self.max_degree());
        let dims: Vec<usize> = (lo..hi).map(|k| self.dim(k)).collect();
        let d = (lo..hi - 1).map(|k| self.d(k)).collect();
        GradedComplex {
            field: self.field,
            min_degree: lo,
            dims,
            d,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub degree: i64,
    /// Representative cocycles as columns (`dim C^k × dim H^k`).
    pub reps: Matrix,
    /// Coordinates on cohomology (`dim H^k × dim C^k`); kills coboundaries.
    pub proj: Matrix,
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub field: Field,
    pub degrees: Vec<CohomologyDegree>,
}

impl Cohomology {
    pub fn degree(&self, k: i64) -> Option<&CohomologyDegree> {
        self.degrees.iter().find(|d| d.degree == k)
    }

    pub fn dim(&self, k: i64) -> usize {
        self.degree(k).map_or(0, |d| d.reps.cols())
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.degrees.iter().map(|d| (d.degree, d.reps.cols())).collect()
    }

    /// Cohomology coordinates of a cocycle of degree `k`.
    pub fn coordinates(&self, k: i64, x: &[Scalar]) -> Vec<Scalar> {
        match self.degree(k) {
            Some(d) => d.proj.mul_vec(x),
            None => Vec::new(),
        }
    }

    pub fn reps(&self, k: i64, n: usize) -> Matrix {
        match self.degree(k) {
            Some(d) => d.reps.clone(),
            None => Matrix::zeros(self.field, n, 0),
        }
    }

    pub fn proj(&self, k: i64, n: usize) -> Matrix {
        match self.degree(k) {
            Some(d) => d.proj.clone(),
            None => Matrix::zeros(self.field, 0, n),
        }
    }
}

/// A graded linear map `source^k → target^{k+shift}`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: GradedComplex,
    pub target: GradedComplex,
    pub shift: i64,
    blocks: Vec<Matrix>,
}

impl ChainMap {
    /// `blocks[i]` is the block on source degree `source.min_degree() + i`.
    /// Checks `d_T f = (−1)^shift f d_S`.
    pub fn new(source: GradedComplex, target: GradedComplex, shift: i64, blocks: Vec<Matrix>) -> Result<Self> {
        let map = ChainMap::unchecked(source, target, shift, blocks)?;
        map.check()?;
        Ok(map)
    }

    /// Shape-checked but not checked for commuting with differentials.
    pub fn unchecked(source: GradedComplex, target: GradedComplex, shift: i64, blocks: Vec<Matrix>) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field(), target.field()));
        }
        if blocks.len() != source.dims().len() {
            return Err(Error::Dimension(format!(
                "{} blocks for {} source degrees",
                blocks.len(),
                source.dims().len()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            let k = source.min_degree() + i as i64;
            if b.rows() != target.dim(k + shift) || b.cols() != source.dim(k) {
                return Err(Error::Dimension(format!(
                    "block in degree {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    target.dim(k + shift),
                    source.dim(k)
                )));
            }
        }
        Ok(ChainMap {
            source,
            target,
            shift,
            blocks,
        })
    }

    /// Builds blocks from a function of the source degree.
    pub fn from_fn(
        source: GradedComplex,
        target: GradedComplex,
        shift: i64,
        f: impl Fn(i64) -> Matrix,
    ) -> Result<Self> {
        let blocks = source.degrees().map(&f).collect();
        ChainMap::new(source, target, shift, blocks)
    }

    pub fn zero(source: GradedComplex, target: GradedComplex, shift: i64) -> Self {
        let blocks = source
            .degrees()
            .map(|k| Matrix::zeros(source.field(), target.dim(k + shift), source.dim(k)))
            .collect();
        ChainMap {
            source,
            target,
            shift,
            blocks,
        }
    }

    pub fn block(&self, k: i64) -> Matrix {
        if k >= self.source.min_degree() && k < self.source.max_degree() {
            self.blocks[(k - self.source.min_degree()) as usize].clone()
        } else {
            Matrix::zeros(self.source.field(), self.target.dim(k + self.shift), self.source.dim(k))
        }
    }

    pub fn apply(&self, k: i64, x: &[Scalar]) -> Vec<Scalar> {
        self.block(k).mul_vec(x)
    }

    /// First degree where the chain-map identity fails, if any.
    pub fn check(&self) -> Result<()> {
        let f = self.source.field();
        let sign = f.sign(self.shift);
        for k in self.source.degrees().chain(std::iter::once(self.source.min_degree() - 1)) {
            let lhs = self.target.d(k + self.shift).mul(&self.block(k));
            let rhs = self.block(k + 1).mul(&self.source.d(k)).scale(&sign);
            if lhs != rhs {
                return Err(Error::NotChainMap(format!("fails out of source degree {k}")));
            }
        }
        Ok(())
    }

    /// The induced map `H^k(source) → H^{k+shift}(target)` in cohomology coordinates.
    pub fn on_cohomology(&self, k: i64, hs: &Cohomology, ht: &Cohomology) -> Matrix {
        let reps = hs.reps(k, self.source.dim(k));
        let proj = ht.proj(k + self.shift, self.target.dim(k + self.shift));
        proj.mul(&self.block(k)).mul(&reps)
    }
}

/// The cone of a degree-one chain map `f: A → B`: `C̃^k = A^k ⊕ B^k`,
/// `d̃(ξ, x) = (dξ, dx − f ξ)`.
pub fn mapping_cone(f: &ChainMap) -> Result<GradedComplex> {
    if f.shift != 1 {
        return Err(Error::Dimension(format!("cone needs a degree-1 map, got degree {}", f.shift)));
    }
    f.check()?;
    let a = &f.source;
    let b = &f.target;
    let field = a.field();
    let lo = a.min_degree().min(b.min_degree());
    let hi = a.max_degree().max(b.max_degree());
    let dims: Vec<usize> = (lo..hi).map(|k| a.dim(k) + b.dim(k)).collect();
    let d = (lo..hi - 1)
        .map(|k| {
            let mut m = Matrix::zeros(field, a.dim(k + 1) + b.dim(k + 1), a.dim(k) + b.dim(k));
            m.paste(0, 0, &a.d(k));
            m.paste(a.dim(k + 1), 0, &f.block(k).neg());
            m.paste(a.dim(k + 1), a.dim(k), &b.d(k));
            m
        })
        .collect();
    GradedComplex::new(field, lo, dims, d)
}

/// Per-degree numbers of the long exact sequence of a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesRow {
    pub degree: i64,
    pub cone_dim: usize,
    pub ker_dim: usize,
    pub coker_dim: usize,
}

#[derive(Clone, Debug)]
pub struct LesReport {
    pub rows: Vec<LesRow>,
}

impl LesReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.cone_dim == r.ker_dim + r.coker_dim)
    }
}

/// Compares `dim H^k(cone)` with `dim ker(Hf)_k + dim coker(Hf)_{k−1}`.
pub fn les_dimension_check(cone: &GradedComplex, f: &ChainMap) -> LesReport {
    let ha = f.source.cohomology();
    let hb = f.target.cohomology();
    let hc = cone.cohomology();
    let lo = cone.min_degree().min(f.source.min_degree()).min(f.target.min_degree() - 1);
    let hi = cone.max_degree().max(f.source.max_degree()).max(f.target.max_degree());
    let rows = (lo..hi)
        .map(|k| {
            let hf_k = f.on_cohomology(k, &ha, &hb);
            let hf_prev = f.on_cohomology(k - 1, &ha, &hb);
            LesRow {
                degree: k,
                cone_dim: hc.dim(k),
                ker_dim: ha.dim(k) - hf_k.rank(),
                coker_dim: hb.dim(k) - hf_prev.rank(),
            }
        })
        .collect();
    LesReport { rows }
}

/// A pairing `left^k ⊗ right^{2n−k} → K`, stored as one Gram block per left degree.
#[derive(Clone, Debug)]
pub struct GradedPairing {
    pub left: GradedComplex,
    pub right: GradedComplex,
    pub n: i64,
    blocks: Vec<Matrix>,
}

impl GradedPairing {
    /// `blocks[i]` pairs left degree `left.min_degree() + i` with right degree `2n − k`.
    pub fn new(left: GradedComplex, right: GradedComplex, n: i64, blocks: Vec<Matrix>) -> Result<Self> {
        if blocks.len() != left.dims().len() {
            return Err(Error::Dimension("one pairing block per left degree".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            let k = left.min_degree() + i as i64;
            if b.rows() != left.dim(k) || b.cols() != right.dim(2 * n - k) {
                return Err(Error::Dimension(format!(
                    "pairing block in degree {k} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    left.dim(k),
                    right.dim(2 * n - k)
                )));
            }
        }
        Ok(GradedPairing {
            left,
            right,
            n,
            blocks,
        })
    }

    pub fn from_fn(left: GradedComplex, right: GradedComplex, n: i64, f: impl Fn(i64) -> Matrix) -> Result<Self> {
        let blocks = left.degrees().map(f).collect();
        GradedPairing::new(left, right, n, blocks)
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    /// Gram block pairing left degree `k` with right degree `2n − k`.
    pub fn block(&self, k: i64) -> Matrix {
        if k >= self.left.min_degree() && k < self.left.max_degree() {
            self.blocks[(k - self.left.min_degree()) as usize].clone()
        } else {
            Matrix::zeros(self.field(), self.left.dim(k), self.right.dim(2 * self.n - k))
        }
    }

    pub fn eval(&self, k: i64, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.block(k).bilinear(x, y)
    }

    /// Adjointness `⟨dx, y⟩ + (−1)^{|x|}⟨x, dy⟩ = 0` on all basis pairs; returns the first
    /// failing `(degree of x, i, j)`.
    pub fn check_adjoint(&self) -> Option<(i64, usize, usize)> {
        let f = self.field();
        for k in self.left.min_degree() - 1..self.left.max_degree() {
            // x in degree k, y in degree 2n − k − 1.
            let l = 2 * self.n - k - 1;
            let lhs = self.left.d(k).transpose().mul(&self.block(k + 1));
            let rhs = self.block(k).mul(&self.right.d(l)).scale(&f.sign(k));
            let total = lhs.add(&rhs);
            for i in 0..total.rows() {
                for j in 0..total.cols() {
                    if !total.get(i, j).is_zero() {
                        return Some((k, i, j));
                    }
                }
            }
        }
        None
    }

    /// Rank of the induced pairing `H^k(left) × H^{2n−k}(right) → K`.
    pub fn cohomology_rank(&self, k: i64, hl: &Cohomology, hr: &Cohomology) -> usize {
        let a = hl.reps(k, self.left.dim(k));
        let b = hr.reps(2 * self.n - k, self.right.dim(2 * self.n - k));
        a.transpose().mul(&self.block(k)).mul(&b).rank()
    }

    /// True when every degree block is nondegenerate on cohomology.
    pub fn nondegenerate_on_cohomology(&self) -> bool {
        let hl = self.left.cohomology();
        let hr = self.right.cohomology();
        let lo = self.left.min_degree().min(2 * self.n - self.right.max_degree() + 1);
        let hi = self.left.max_degree().max(2 * self.n - self.right.min_degree() + 1);
        (lo..hi).all(|k| {
            let dl = hl.dim(k);
            let dr = hr.dim(2 * self.n - k);
            dl == dr && self.cohomology_rank(k, &hl, &hr) == dl
        })
    }
}
