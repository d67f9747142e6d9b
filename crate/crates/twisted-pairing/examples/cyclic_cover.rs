// The triple cover of the torus unwrapping one handle, and descent of its pairing.

use twisted_pairing::covers::CyclicCover;
use twisted_pairing::surfaces;
use twisted_pairing::{Cochain, Field};

pub fn run_example() -> twisted_pairing::Result<()> {
    let t = surfaces::torus();
    let f = Field::prime(3)?;
    let mut rng = twisted_pairing::rng(2);
    let beta = t.beta_with_windings(f, &[1, 0], &mut rng)?;
    let cover = CyclicCover::new(&t.complex, &beta)?;
    println!("cells {:?} → {:?}", t.complex.cochain_complex(f).dims(), cover.total_complex().dims());
    println!("q-invariant cohomology {:?}", cover.invariant_cohomology_dims());
    let x = Cochain::new(1, f.random_vec(&mut rng, cover.total().count(1)));
    let y = Cochain::new(1, f.random_vec(&mut rng, cover.total().count(1)));
    // ι(qx̃, ỹ) − ι(x̃, ỹ) = ∫ x⌣y for the pushdowns x, y.
    let diff = cover.iota(&cover.q_power(&x, 1), &y)? - cover.iota(&x, &y)?;
    let (xb, yb) = (cover.pushdown(&x), cover.pushdown(&y));
    let direct = t.complex.integrate(&t.complex.cup(&xb, &yb))?;
    assert_eq!(diff, direct);
    println!("ι(qx, y) − ι(x, y) = {diff}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
