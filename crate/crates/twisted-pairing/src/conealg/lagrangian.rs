//! Lagrangian data over a model: equivariant classes, the endomorphism `φ`, the hexagon map
//! and the Cardy-type comparison.

use serde::{Deserialize, Serialize};

use super::cone::ConeElement;
use super::model::{AxiomStatus, FloerModel, Product, Slope};
use super::trace::supertrace;
use crate::complex::{ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::field::{dot, Scalar};
use crate::matrix::{vec_is_zero, Matrix};

/// The data attached to one Lagrangian `L`.
///
/// `phi20` is a graded map of degree `n − 1`, not a chain map; it is stored as an
/// unchecked [`ChainMap`].
#[derive(Clone, Debug)]
pub struct LagrangianDatum {
    pub name: String,
    /// `CF(L, L)` with differential `μ¹`.
    pub endo: GradedComplex,
    /// `φ^{1,0} ∈ Cⁿ(−μ)`.
    pub phi10: Vec<Scalar>,
    /// `φ^{1,1}: C(2μ) → CF(L, L)`, degree 0.
    pub phi11: ChainMap,
    /// `φ̌^{1,1}: CF(L, L) → C(μ)`, degree `n`.
    pub phi_check11: ChainMap,
    /// `φ^{2,0}: C(2μ) → C(μ)`, degree `n − 1`.
    pub phi20: ChainMap,
    /// `γ_L ∈ CF⁰(L, L)`.
    pub gamma: Vec<Scalar>,
}

/// A model with two Lagrangians `L0, L1` and the mixed operations between them.
#[derive(Clone, Debug)]
pub struct ExtendedModel {
    pub model: FloerModel,
    pub l0: LagrangianDatum,
    pub l1: LagrangianDatum,
    /// `CF(L0, L1)`.
    pub cross: GradedComplex,
    /// `μ²: CF(L1, L1) ⊗ CF(L0, L1) → CF(L0, L1)`.
    pub mu2_left: Product,
    /// `μ²: CF(L0, L1) ⊗ CF(L0, L0) → CF(L0, L1)`.
    pub mu2_right: Product,
    /// `φ^{1,2}: C(2μ) ⊗ CF(L0, L1) → CF(L0, L1)`, degree −1.
    pub phi12: Product,
    /// `ψ: CF¹(L1, L1) → K`.
    pub psi: Option<Vec<Scalar>>,
    /// `ψ̌: CF¹(L0, L0) → K`.
    pub psi_check: Option<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub entries: Vec<(String, AxiomStatus)>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|(_, s)| s.passes())
    }

    pub fn status(&self, name: &str) -> Option<&AxiomStatus> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

/// The six terms of the hexagon map on one input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HexagonTerms {
    pub terms: [Scalar; 6],
}

impl HexagonTerms {
    pub fn total(&self) -> Scalar {
        let mut acc = self.terms[0].field().zero();
        for t in &self.terms {
            acc += t;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardyReport {
    /// `I(class(L0), class(L1))`.
    pub pairing: Scalar,
    /// `Str(φ)` on `CF(L0, L1)`.
    pub supertrace: Scalar,
    /// `I − (−1)^{n(n+1)/2} Str(φ)`.
    pub defect: Scalar,
}

fn status(failure: Option<String>) -> AxiomStatus {
    match failure {
        None => AxiomStatus::Pass,
        Some(w) => AxiomStatus::Fail(w),
    }
}

fn first_nonzero(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows()).find_map(|i| (0..m.cols()).find(|&j| !m.get(i, j).is_zero()).map(|j| (i, j)))
}

fn unit(f: crate::field::Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// `(−1)^{n(n−1)/2}`.
fn half_sign(n: i64) -> i64 {
    n * (n - 1) / 2
}

impl LagrangianDatum {
    /// Checks `dφ^{1,0} = 0`, the chain-map properties, the relation between `φ^{2,0}`,
    /// `φ̌^{1,1}∘φ^{1,1}` and `⌣φ^{1,0}`, and `μ¹γ = φ^{1,1}(β)`.
    pub fn check(&self, model: &FloerModel) -> Result<RelationReport> {
        let f = model.field;
        let n = model.n;
        let name = &self.name;
        let c2 = model.complex(Slope::Two)?;
        let cp = model.complex(Slope::One)?;
        let cm = model.complex(Slope::NegOne)?;
        let mut entries = Vec::new();
        let closed = cm.apply_d(n, &self.phi10);
        entries.push((
            format!("phi10-closed[{name}]"),
            status((!vec_is_zero(&closed)).then(|| "dφ¹⁰ ≠ 0".to_string())),
        ));
        entries.push((
            format!("phi11-chain[{name}]"),
            status(self.phi11.check().err().map(|e| e.to_string())),
        ));
        entries.push((
            format!("phi-check11-chain[{name}]"),
            status(self.phi_check11.check().err().map(|e| e.to_string())),
        ));
        // dφ²⁰(x) + (−1)ⁿ φ²⁰(dx) = φ̌¹¹(φ¹¹(x)) − (−1)^{n|x|} x⌣φ¹⁰.
        let cup = model.cup_product(Slope::Two, Slope::NegOne)?;
        let mut failure = None;
        for k in c2.degrees() {
            let lhs = cp
                .d(k + n - 1)
                .mul(&self.phi20.block(k))
                .add(&self.phi20.block(k + 1).mul(&c2.d(k)).scale(&f.sign(n)));
            let r = cup.right_action(f, k, c2.dim(k), n, &self.phi10, cp.dim(k + n));
            let rhs = self
                .phi_check11
                .block(k)
                .mul(&self.phi11.block(k))
                .sub(&r.scale(&f.sign(n * k)));
            if let Some((_, j)) = first_nonzero(&lhs.sub(&rhs)) {
                failure = Some(format!("x = e{j} in degree {k}"));
                break;
            }
        }
        entries.push((format!("phi-phi[{name}]"), status(failure)));
        let lhs = self.endo.apply_d(0, &self.gamma);
        let rhs = self.phi11.apply(1, &model.beta);
        entries.push((
            format!("gamma-cobounds[{name}]"),
            status((lhs != rhs).then(|| "μ¹γ ≠ φ¹¹(β)".to_string())),
        ));
        Ok(RelationReport { entries })
    }

    /// `(ξ, x) = (φ^{1,0}, (−1)^{n+1} φ^{2,0}(β) + φ̌^{1,1}(γ))`.
    pub fn raw_equivariant_class(&self, model: &FloerModel) -> ConeElement {
        let f = model.field;
        let n = model.n;
        let a = self.phi20.apply(1, &model.beta);
        let b = self.phi_check11.apply(0, &self.gamma);
        let x = a
            .iter()
            .zip(&b)
            .map(|(u, v)| &(&f.sign(n + 1) * u) + v)
            .collect();
        ConeElement::new(n, self.phi10.clone(), x)
    }

    /// The equivariant class, after checking the relations it depends on.
    pub fn equivariant_class(&self, model: &FloerModel) -> Result<ConeElement> {
        let report = self.check(model)?;
        for rel in ["phi10-closed", "phi-phi", "gamma-cobounds"] {
            let key = format!("{rel}[{}]", self.name);
            if !report.status(&key).is_some_and(AxiomStatus::passes) {
                return Err(Error::Axiom(format!("{key} does not hold")));
            }
        }
        let class = self.raw_equivariant_class(model);
        if !model.is_cone_cocycle(&class)? {
            return Err(Error::Defect(format!("equivariant class of {} is not closed", self.name)));
        }
        Ok(class)
    }
}

impl ExtendedModel {
    /// Checks every relation the hexagon and Cardy computations use.
    pub fn check_relations(&self) -> Result<RelationReport> {
        let m = &self.model;
        let f = m.field;
        let n = m.n;
        let mut entries = self.l0.check(m)?.entries;
        entries.extend(self.l1.check(m)?.entries);
        let c2 = m.complex(Slope::Two)?;
        let cr = &self.cross;
        // μ¹φ¹²(x,a) + φ¹²(dx,a) + (−1)^{|x|}φ¹²(x,μ¹a) = μ²(φ¹¹_{L1}x, a) − (−1)^{|a||x|}μ²(a, φ¹¹_{L0}x).
        let mut failure = None;
        'outer: for p in c2.degrees() {
            for q in cr.degrees() {
                for i in 0..c2.dim(p) {
                    let x = unit(f, c2.dim(p), i);
                    let dx = c2.apply_d(p, &x);
                    let out = cr.dim(p + q);
                    let lhs = cr
                        .d(p + q - 1)
                        .mul(&self.phi12.left_action(f, p, &x, q, cr.dim(q), cr.dim(p + q - 1)))
                        .add(&self.phi12.left_action(f, p + 1, &dx, q, cr.dim(q), out))
                        .add(
                            &self
                                .phi12
                                .left_action(f, p, &x, q + 1, cr.dim(q + 1), out)
                                .mul(&cr.d(q))
                                .scale(&f.sign(p)),
                        );
                    let y1 = self.l1.phi11.apply(p, &x);
                    let y0 = self.l0.phi11.apply(p, &x);
                    let rhs = self
                        .mu2_left
                        .left_action(f, p, &y1, q, cr.dim(q), out)
                        .sub(&self.mu2_right.right_action(f, q, cr.dim(q), p, &y0, out).scale(&f.sign(p * q)));
                    if let Some((_, j)) = first_nonzero(&lhs.sub(&rhs)) {
                        failure = Some(format!("x = e{i} (deg {p}), a = e{j} (deg {q})"));
                        break 'outer;
                    }
                }
            }
        }
        entries.push(("phi12".into(), status(failure)));
        let s = f.sign(half_sign(n));
        match &self.psi {
            None => entries.push(("phi-check-phi".into(), AxiomStatus::Skipped("ψ absent".into()))),
            Some(psi) => {
                let e = &self.l1.endo;
                let mut failure = None;
                for i in 0..e.dim(0) {
                    let a = unit(f, e.dim(0), i);
                    let lhs = dot(f, psi, &e.apply_d(0, &a));
                    let tr = self.str_mu2_left(&a);
                    let pairing = m.pair(Slope::NegOne, n, &self.l0.phi10, &self.l1.phi_check11.apply(0, &a))?;
                    let rhs = &s * &tr - &f.sign(n) * &pairing;
                    if lhs != rhs {
                        failure = Some(format!("a = e{i}"));
                        break;
                    }
                }
                entries.push(("phi-check-phi".into(), status(failure)));
            }
        }
        match &self.psi_check {
            None => entries.push(("phi-check-phi-dual".into(), AxiomStatus::Skipped("ψ̌ absent".into()))),
            Some(psi) => {
                let e = &self.l0.endo;
                let mut failure = None;
                for i in 0..e.dim(0) {
                    let a = unit(f, e.dim(0), i);
                    let lhs = dot(f, psi, &e.apply_d(0, &a));
                    let tr = self.str_mu2_right(&a);
                    let pairing = m.pair(Slope::NegOne, n, &self.l1.phi10, &self.l0.phi_check11.apply(0, &a))?;
                    if lhs != &s * &tr - pairing {
                        failure = Some(format!("a = e{i}"));
                        break;
                    }
                }
                entries.push(("phi-check-phi-dual".into(), status(failure)));
            }
        }
        let sym = m.check_axioms().status(super::model::Axiom::PairingSymmetry).clone();
        entries.push(("pairing-symmetry".into(), sym));
        Ok(RelationReport { entries })
    }

    fn endo_blocks(&self, g: impl Fn(i64) -> Matrix) -> Vec<(i64, Matrix)> {
        self.cross.degrees().map(|q| (q, g(q))).collect()
    }

    /// `Str(μ²(a, ·))` for `a ∈ CF⁰(L1, L1)`.
    fn str_mu2_left(&self, a: &[Scalar]) -> Scalar {
        let f = self.model.field;
        let cr = &self.cross;
        supertrace(f, &self.endo_blocks(|q| self.mu2_left.left_action(f, 0, a, q, cr.dim(q), cr.dim(q))))
    }

    /// `Str(μ²(·, a))` for `a ∈ CF⁰(L0, L0)`.
    fn str_mu2_right(&self, a: &[Scalar]) -> Scalar {
        let f = self.model.field;
        let cr = &self.cross;
        supertrace(f, &self.endo_blocks(|q| self.mu2_right.right_action(f, q, cr.dim(q), 0, a, cr.dim(q))))
    }

    /// `φ(a) = φ^{1,2}(β, a) − μ²(γ_{L1}, a) + μ²(a, γ_{L0})` on `CF(L0, L1)`.
    pub fn phi_endomorphism(&self) -> Result<ChainMap> {
        let f = self.model.field;
        let cr = &self.cross;
        let blocks = cr
            .degrees()
            .map(|q| {
                let d = cr.dim(q);
                self.phi12
                    .left_action(f, 1, &self.model.beta, q, d, d)
                    .sub(&self.mu2_left.left_action(f, 0, &self.l1.gamma, q, d, d))
                    .add(&self.mu2_right.right_action(f, q, d, 0, &self.l0.gamma, d))
            })
            .collect();
        ChainMap::new(cr.clone(), cr.clone(), 0, blocks)
    }

    /// The six terms of the hexagon map at `x ∈ C¹(2μ)`.
    pub fn hexagon_terms(&self, x: &[Scalar]) -> Result<HexagonTerms> {
        let m = &self.model;
        let f = m.field;
        let n = m.n;
        let psi = self.psi.as_ref().ok_or_else(|| Error::Missing("ψ".into()))?;
        let psi_check = self.psi_check.as_ref().ok_or_else(|| Error::Missing("ψ̌".into()))?;
        let cr = &self.cross;
        let t1 = m.pair(Slope::NegOne, n, &self.l0.phi10, &self.l1.phi20.apply(1, x))?;
        let t2 = dot(f, psi, &self.l1.phi11.apply(1, x));
        let blocks = self.endo_blocks(|q| self.phi12.left_action(f, 1, x, q, cr.dim(q), cr.dim(q)));
        let t3 = &f.sign(half_sign(n) + 1) * &supertrace(f, &blocks);
        let t4 = -dot(f, psi_check, &self.l0.phi11.apply(1, x));
        let t5 = &f.sign(n + 1) * &m.pair(Slope::NegOne, n, &self.l1.phi10, &self.l0.phi20.apply(1, x))?;
        let star = m.star_apply(Slope::NegOne, n, &self.l0.phi10, Slope::NegOne, n, &self.l1.phi10)?;
        let t6 = &f.sign(n) * &m.pair(Slope::Two, 1, x, &star)?;
        Ok(HexagonTerms {
            terms: [t1, t2, t3, t4, t5, t6],
        })
    }

    pub fn hexagon_map(&self, x: &[Scalar]) -> Result<Scalar> {
        Ok(self.hexagon_terms(x)?.total())
    }

    /// The hexagon map on the coboundary of every basis element of `C⁰(2μ)`.
    pub fn hexagon_on_coboundaries(&self) -> Result<Vec<HexagonTerms>> {
        let c2 = self.model.complex(Slope::Two)?;
        let f = self.model.field;
        (0..c2.dim(0))
            .map(|i| self.hexagon_terms(&c2.apply_d(0, &unit(f, c2.dim(0), i))))
            .collect()
    }

    /// `I(class(L0), class(L1)) − (−1)^{n(n+1)/2} Str(φ)`.
    pub fn cardy_check(&self) -> Result<CardyReport> {
        let m = &self.model;
        let f = m.field;
        let a = self.l0.equivariant_class(m)?;
        let b = self.l1.equivariant_class(m)?;
        let pairing = m.i_cone(&a, &b)?;
        let phi = self.phi_endomorphism()?;
        let blocks: Vec<(i64, Matrix)> = self.cross.degrees().map(|q| (q, phi.block(q))).collect();
        let str = supertrace(f, &blocks);
        let n = m.n;
        let defect = &pairing - &(&f.sign(n * (n + 1) / 2) * &str);
        Ok(CardyReport {
            pairing,
            supertrace: str,
            defect,
        })
    }

    /// `(−1)ⁿ h(β)`: what the Cardy defect reduces to when the annulus relations and the
    /// pairing symmetry hold but the hexagon map is not known to vanish.
    pub fn cardy_recombination(&self) -> Result<Scalar> {
        let f = self.model.field;
        Ok(&f.sign(self.model.n) * &self.hexagon_map(&self.model.beta)?)
    }
}
