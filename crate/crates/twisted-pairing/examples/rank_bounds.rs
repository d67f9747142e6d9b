// Independence of orthogonal families, isotropic bounds, the A_m lattice and weighted Euler data.

use twisted_pairing::bounds::{
    a_m_bound, brute_force_independent, folk_independent, semicharacteristic, shift_identity_check, AmWitness,
    IntersectionForm, WeightedEulerData,
};
use twisted_pairing::{Field, Matrix};

pub fn run_example() -> twisted_pairing::Result<()> {
    let f = Field::prime(3)?;
    let form = IntersectionForm::new(2, Matrix::from_ints(f, &[vec![-2, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]))?;
    let classes = Matrix::from_ints(f, &[vec![1, 0], vec![0, 1], vec![0, 0]]);
    let report = folk_independent(&classes, &[2, -1], &form)?;
    println!("verdict {:?}; brute force {:?}", report.verdict, brute_force_independent(&classes));

    for m in [1, 2, 5, 12] {
        let w = AmWitness::new(m)?;
        assert!(w.verified());
        println!("A_{m}: bound {}, form rank {}", a_m_bound(m), w.form_rank);
    }
    println!("χ_1/2(S¹×S²) = {}", semicharacteristic(&[1, 1, 1, 1], 3)?);
    let data = WeightedEulerData::new([(0, 1), (1, -2), (3, 4)]);
    let r = shift_identity_check(&data, data.euler());
    assert!(r.holds);
    println!("Σσχ_σ = {}, after shifting = {}", r.derivative, r.shifted_derivative);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
