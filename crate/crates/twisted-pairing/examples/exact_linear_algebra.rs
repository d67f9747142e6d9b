// Exact arithmetic over GF(p) and ℚ: elimination, kernels, solving and factoring.

use twisted_pairing::poly::{char_poly, factor};
use twisted_pairing::{Field, Matrix};

pub fn run_example() -> twisted_pairing::Result<()> {
    for f in [Field::prime(7)?, Field::Rationals] {
        let a = Matrix::from_ints(f, &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = a.inverse().expect("invertible");
        assert_eq!(a.mul(&inv), Matrix::identity(f, 3));
        let x = a.solve(&[f.one(), f.zero(), f.one()]).expect("solvable");
        println!("{f}: det = {}, x = {:?}", a.determinant(), x.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        let factors: Vec<String> = factor(&char_poly(&a))?.iter().map(|g| g.poly.to_string()).collect();
        println!("{f}: characteristic polynomial factors {factors:?}");
    }
    let f = Field::prime(2)?;
    let b = Matrix::from_ints(f, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
    println!("GF(2): rank {}, kernel dimension {}", b.rank(), b.kernel().cols());
    assert_eq!(b.rank() + b.kernel().cols(), 3);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
