// Bullet pairings: the figure-eight records and decorated handle loops on a torus.

use twisted_pairing::cycles::{
    bullet_records, edge_loop_potential, figure_eight_records, intersect, intersection_number, pushoff,
    symmetry_defect,
};
use twisted_pairing::surfaces;
use twisted_pairing::Field;

pub fn run_example() -> twisted_pairing::Result<()> {
    for f in [Field::Rationals, Field::prime(2)?, Field::prime(3)?] {
        let recs = figure_eight_records(f);
        println!("figure eight over {f}: {}", bullet_records(f, &recs));
        assert!(symmetry_defect(f, &recs, 1, 1).is_zero());
    }
    let t = surfaces::torus();
    let f = Field::prime(5)?;
    let beta = t.beta_with_windings(f, &[0, 0], &mut twisted_pairing::rng(3))?;
    let (a, b) = &t.handles[0];
    let l0 = edge_loop_potential(&t.complex, &beta, a, f.int(3))?;
    let l1 = pushoff(&t.complex, &beta, &edge_loop_potential(&t.complex, &beta, b, f.int(1))?)?;
    let recs = intersect(&t.complex, &beta, &l0, &l1)?;
    println!("a • b: {} points, intersection number {}, bullet {}", recs.len(), intersection_number(&recs), bullet_records(f, &recs));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
