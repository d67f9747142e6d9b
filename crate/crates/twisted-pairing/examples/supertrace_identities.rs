// Supertraces of endomorphisms dual to `1 − Φ`, and their eigenvalue-refined Euler data.

use twisted_pairing::bounds::{eigenvalue_pairing, DualInstance};
use twisted_pairing::conealg::q_refined;
use twisted_pairing::Field;

pub fn run_example() -> twisted_pairing::Result<()> {
    let mut rng = twisted_pairing::rng(7);
    for (f, n, dims) in [
        (Field::prime(2)?, 3, vec![1, 2, 2, 1]),
        (Field::prime(2)?, 2, vec![1, 2, 1]),
        (Field::Rationals, 2, vec![1, 2, 1]),
    ] {
        let inst = DualInstance::random(f, n, &dims, &mut rng)?;
        let report = inst.identities()?;
        assert!(report.all_hold());
        assert!(eigenvalue_pairing(f, n, &inst.blocks)?.holds());
        let q = q_refined(f, &inst.blocks)?;
        println!("{f} n={n}: Str = {}, χ = {}, {} eigenvalue factors", report.supertrace, report.euler, q.factors.len());
    }
    let s = DualInstance::sphere(Field::prime(3)?, 3);
    println!("sphere: Str = {}", s.supertrace());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
