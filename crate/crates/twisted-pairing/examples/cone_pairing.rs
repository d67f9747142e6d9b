// The cone of multiplication by β on a torus model and its pairing.

use twisted_pairing::conealg::{ConeElement, FloerModel};
use twisted_pairing::cycles::{bullet_records, edge_loop_potential, equivariant_cocycle_surface, intersect, pushoff};
use twisted_pairing::{les_dimension_check, surfaces, Field};

pub fn run_example() -> twisted_pairing::Result<()> {
    let t = surfaces::torus();
    let f = Field::prime(3)?;
    let beta = t.beta_with_windings(f, &[1, 0], &mut twisted_pairing::rng(4))?;
    let model = FloerModel::from_simplicial(&t.complex, &beta)?;
    let axioms = model.check_axioms();
    assert!(axioms.chain_map_axioms_pass());
    let cone = model.cone_complex()?;
    assert!(les_dimension_check(&cone, &model.beta_map()?).holds());
    assert!(model.iota_chain_map_defect()?.is_none());
    println!("cone cohomology {:?}", cone.betti());
    println!("I nondegenerate: {}", model.nondegeneracy_report()?.full_rank());

    let f = Field::Rationals;
    let beta = t.beta_with_windings(f, &[0, 0], &mut twisted_pairing::rng(5))?;
    let model = FloerModel::from_simplicial(&t.complex, &beta)?;
    let (a, b) = &t.handles[0];
    let d0 = edge_loop_potential(&t.complex, &beta, a, f.int(2))?;
    let d1 = edge_loop_potential(&t.complex, &beta, b, f.zero())?;
    let (p0, p1) = (pushoff(&t.complex, &beta, &d0)?, pushoff(&t.complex, &beta, &d1)?);
    let bullet = bullet_records(f, &intersect(&t.complex, &beta, &d0, &p1)?);
    let e0 = equivariant_cocycle_surface(&t.complex, &beta, &p0)?;
    let e1 = equivariant_cocycle_surface(&t.complex, &beta, &p1)?;
    let i = model.i_cone(&ConeElement::new(1, e0.xi.values, e0.x.values), &ConeElement::new(1, e1.xi.values, e1.x.values))?;
    assert_eq!(i, -bullet.clone());
    println!("I = {i}, bullet = {bullet}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
