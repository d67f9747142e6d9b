// Cochains of a triangulated torus: Betti numbers, cup products and the cup-1 homotopy.

use twisted_pairing::surfaces;
use twisted_pairing::{Cochain, Field};

pub fn run_example() -> twisted_pairing::Result<()> {
    let t = surfaces::torus();
    let k = &t.complex;
    let f = Field::prime(5)?;
    println!("betti {:?}", k.cochain_complex(f).betti());
    let mut rng = twisted_pairing::rng(1);
    let a = t.beta_with_windings(f, &[1, 0], &mut rng)?;
    let b = t.beta_with_windings(f, &[0, 1], &mut rng)?;
    let ab = k.cup(&a, &b);
    println!("∫ a⌣b = {}", k.integrate(&ab)?);
    // d(x ∗ y) = −(x⌣y + y⌣x) up to the sign convention of the cup-1 product, on cocycles.
    let x = Cochain::new(1, f.random_vec(&mut rng, k.count(1)));
    let lhs = k.coboundary(&k.cup1(&a, &b));
    let sym = k.cup(&a, &b).add(&k.cup(&b, &a));
    assert!(lhs.add(&sym).is_zero() || lhs.sub(&sym).is_zero());
    println!("Leibniz defect on a random cochain: {}", !k.coboundary(&k.cup(&a, &x)).add(&k.cup(&a, &k.coboundary(&x))).is_zero());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
