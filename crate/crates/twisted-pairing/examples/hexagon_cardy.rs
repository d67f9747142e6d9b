// A generated model with two Lagrangian data: the hexagon map and the Cardy relation.

use twisted_pairing::conealg::{synthetic_extended, SyntheticOptions};
use twisted_pairing::Field;

pub fn run_example() -> twisted_pairing::Result<()> {
    let f = Field::prime(5)?;
    let mut rng = twisted_pairing::rng(6);
    let ext = synthetic_extended(f, SyntheticOptions::default(), &mut rng)?;
    assert!(ext.check_relations()?.all_pass());
    for t in ext.hexagon_on_coboundaries()? {
        assert!(t.total().is_zero());
    }
    let cardy = ext.cardy_check()?;
    println!("I = {}, Str = {}, defect = {}", cardy.pairing, cardy.supertrace, cardy.defect);

    let raw = synthetic_extended(
        f,
        SyntheticOptions {
            hexagon_corrected: false,
            ..SyntheticOptions::default()
        },
        &mut rng,
    )?;
    let d = raw.cardy_check()?.defect;
    assert_eq!(d, raw.cardy_recombination()?);
    println!("without the correction the defect {d} equals the recombined hexagon value");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
