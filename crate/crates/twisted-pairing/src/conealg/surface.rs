//! Lagrangian data of decorated dual loops in the simplicial model of a surface.

use super::lagrangian::LagrangianDatum;
use super::model::{AxiomStatus, FloerModel, Slope};
use crate::complex::{ChainMap, GradedComplex};
use crate::cycles::{crossing_sign, dual_steps, pd_cocycle, Carrier, DecoratedCycle};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::Matrix;
use crate::simplicial::SimplicialComplex;

/// Adds the coefficient of `y ↦ y(a → b)` to `row` of `m`.
fn add_edge(k: &SimplicialComplex, m: &mut Matrix, row: usize, a: usize, b: usize, c: &Scalar) -> Result<()> {
    if a == b {
        return Ok(());
    }
    let f = m.field();
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    let e = k
        .index_of(&[lo, hi])
        .ok_or_else(|| Error::Malformed(format!("no edge {{{a}, {b}}}")))?;
    m.add_at(row, e, &(&f.int(s) * c));
    Ok(())
}

impl LagrangianDatum {
    /// The datum of a decorated dual loop `T_0, …, T_{m−1}` in the model of a surface.
    ///
    /// `CF(L, L)` is the cochain complex of the loop as a circle (vertices are the
    /// triangles, edges the steps), `φ^{1,1}` restricts along the loop, `φ^{1,0}` is the
    /// Poincaré-dual cocycle, `φ̌^{1,1}` spreads a 0-cochain over the crossed edges with the
    /// crossing signs, and `φ^{2,0}` is the transport from a triangle to its crossed edge.
    /// The remaining blocks are solved for so that every relation holds.
    pub fn from_dual_loop(model: &FloerModel, k: &SimplicialComplex, cycle: &DecoratedCycle) -> Result<Self> {
        let f = model.field;
        if model.n != 1 || k.dim() != 2 {
            return Err(Error::Dimension("dual-loop data needs a surface model".into()));
        }
        let tris = match &cycle.carrier {
            Carrier::DualLoop(t) => t,
            Carrier::EdgeLoop(_) => return Err(Error::Malformed("expected a dual loop".into())),
        };
        let steps = dual_steps(k, tris)?;
        let m = tris.len();
        let (nv, ne, nf) = (k.count(0), k.count(1), k.count(2));
        let c = model.complex(Slope::Two)?;
        let cp = model.complex(Slope::One)?;

        let mut mu1 = Matrix::zeros(f, steps.len(), m);
        for i in 0..steps.len() {
            mu1.add_at(i, (i + 1) % m, &f.one());
            mu1.add_at(i, i, &-f.one());
        }
        let endo = GradedComplex::new(f, 0, vec![m, steps.len()], vec![mu1.clone()])?;

        let mut r0 = Matrix::zeros(f, m, nv);
        for (i, &t) in tris.iter().enumerate() {
            r0.set(i, k.simplex(2, t)[0], f.one());
        }
        let mut r1 = Matrix::zeros(f, steps.len(), ne);
        let mut check0 = Matrix::zeros(f, ne, m);
        let mut p1 = Matrix::zeros(f, ne, ne);
        for (i, s) in steps.iter().enumerate() {
            let (t0, e0, u0) = (k.simplex(2, s.from)[0], s.edge[0], k.simplex(2, s.to)[0]);
            add_edge(k, &mut r1, i, t0, e0, &f.one())?;
            add_edge(k, &mut r1, i, e0, u0, &f.one())?;
            let e = k.index_of(&s.edge).expect("edge of a triangle");
            let sign = f.int(crossing_sign(k, s.from, s.edge, s.opposite)?);
            check0.add_at(e, i, &sign);
            add_edge(k, &mut p1, e, t0, e0, &sign)?;
        }
        let phi11 = ChainMap::new(
            c.clone(),
            endo.clone(),
            0,
            vec![r0, r1.clone(), Matrix::zeros(f, 0, nf)],
        )?;
        let phi10 = pd_cocycle(k, f, tris)?.values;

        // Rows of φ̌¹¹ on CF¹ (X) and of φ²⁰ on C² (Y) from X μ¹ = −d φ̌¹¹ and
        // Y d + X φ¹¹ = d φ²⁰ − (·⌣φ¹⁰).
        let d1 = c.d(1);
        let cup = model.cup_product(Slope::Two, Slope::NegOne)?;
        let r_cup = cup.right_action(f, 1, ne, 1, &phi10, nf);
        let b = cp.d(1).mul(&check0).neg();
        let rhs_c = d1.mul(&p1).sub(&r_cup);
        let ns = steps.len();
        let mut system = Matrix::zeros(f, ns + nf, m + ne);
        system.paste(0, 0, &mu1);
        system.paste(0, m, &r1);
        system.paste(ns, m, &d1);
        let rhs = b.hstack(&rhs_c).transpose();
        let z = system
            .transpose()
            .solve_matrix(&rhs)
            .ok_or_else(|| Error::Defect("no solution for φ̌¹¹ and φ²⁰ on the loop".into()))?;
        let x = z.submatrix(0..ns, 0..nf).transpose();
        let y = z.submatrix(ns..ns + nf, 0..nf).transpose();
        let phi_check11 = ChainMap::new(endo.clone(), cp.clone(), 1, vec![check0, x])?;
        let phi20 = ChainMap::unchecked(c.clone(), cp.clone(), 0, vec![Matrix::zeros(f, nv, nv), p1, y])?;

        let datum = LagrangianDatum {
            name: format!("dual loop {tris:?}"),
            endo,
            phi10,
            phi11,
            phi_check11,
            phi20,
            gamma: cycle.gamma.clone(),
        };
        let report = datum.check(model)?;
        if let Some((name, status)) = report.entries.iter().find(|(_, s)| !s.passes()) {
            let detail = match status {
                AxiomStatus::Fail(w) => w.clone(),
                other => format!("{other:?}"),
            };
            return Err(Error::Axiom(format!("{name}: {detail}")));
        }
        Ok(datum)
    }
}

/// `I(class(L0), class(L1)) − (−1)^{n(n+1)/2}·bullet` for the Lagrangian data of two loops.
pub fn surface_cardy_defect(
    model: &FloerModel,
    l0: &LagrangianDatum,
    l1: &LagrangianDatum,
    bullet: &Scalar,
) -> Result<Scalar> {
    let f = model.field;
    let n = model.n;
    let a = l0.equivariant_class(model)?;
    let b = l1.equivariant_class(model)?;
    Ok(model.i_cone(&a, &b)? - &f.sign(n * (n + 1) / 2) * bullet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::{bullet_records, edge_loop_potential, equivariant_cocycle_surface, intersect, pushoff};
    use crate::field::Field;
    use crate::surfaces;

    #[test]
    fn dual_loop_datum_reproduces_the_surface_cocycle_and_the_bullet() {
        let mut rng = crate::rng(21);
        for s in [surfaces::torus(), surfaces::genus(2).unwrap()] {
            for f in [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::Rationals] {
                let beta = s.beta_with_windings(f, &[0, 0], &mut rng).unwrap();
                let model = FloerModel::from_simplicial(&s.complex, &beta).unwrap();
                let (a, b) = s.handles[0].clone();
                for (l0, l1) in [(a.clone(), b.clone()), (b.clone(), a.clone())] {
                    let d0 = edge_loop_potential(&s.complex, &beta, &l0, f.random(&mut rng)).unwrap();
                    let d1 = edge_loop_potential(&s.complex, &beta, &l1, f.random(&mut rng)).unwrap();
                    let p0 = pushoff(&s.complex, &beta, &d0).unwrap();
                    let p1 = pushoff(&s.complex, &beta, &d1).unwrap();
                    let dat0 = LagrangianDatum::from_dual_loop(&model, &s.complex, &p0).unwrap();
                    let dat1 = LagrangianDatum::from_dual_loop(&model, &s.complex, &p1).unwrap();
                    let class = dat1.equivariant_class(&model).unwrap();
                    let geo = equivariant_cocycle_surface(&s.complex, &beta, &p1).unwrap();
                    assert_eq!(class.xi, geo.xi.values);
                    assert_eq!(class.x, geo.x.values);
                    let bullet = bullet_records(f, &intersect(&s.complex, &beta, &d0, &p1).unwrap());
                    assert!(surface_cardy_defect(&model, &dat0, &dat1, &bullet).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn shifting_gamma_by_a_constant_adds_the_dual_class() {
        let s = surfaces::torus();
        let f = Field::prime(7).unwrap();
        let mut rng = crate::rng(22);
        let beta = s.beta_with_windings(f, &[0, 0], &mut rng).unwrap();
        let model = FloerModel::from_simplicial(&s.complex, &beta).unwrap();
        let d = edge_loop_potential(&s.complex, &beta, &s.handles[0].1, f.int(2)).unwrap();
        let p = pushoff(&s.complex, &beta, &d).unwrap();
        let mut shifted = p.clone();
        let c = f.int(3);
        for g in &mut shifted.gamma {
            *g += &c;
        }
        let a = LagrangianDatum::from_dual_loop(&model, &s.complex, &p).unwrap();
        let b = LagrangianDatum::from_dual_loop(&model, &s.complex, &shifted).unwrap();
        let ca = a.equivariant_class(&model).unwrap();
        let cb = b.equivariant_class(&model).unwrap();
        assert_eq!(ca.xi, cb.xi);
        for i in 0..ca.x.len() {
            assert_eq!(&cb.x[i] - &ca.x[i], &c * &a.phi10[i]);
        }
    }
}
