use proptest::prelude::*;

use twisted_pairing::bounds::{
    a_m_bound, brute_force_independent, folk_independent, self_intersection_euler, shift_identity_check,
    DualInstance, FolkVerdict, IntersectionForm, WeightedEulerData,
};
use twisted_pairing::cycles::{bullet_records, intersection_number, symmetry_defect, IntersectionRecord};
use twisted_pairing::document::{Document, Payload, RecordsDoc};
use twisted_pairing::{Field, Matrix};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(3).unwrap()),
        Just(Field::prime(7).unwrap()),
        Just(Field::Rationals),
    ]
}

fn ints(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(f in field(), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let (x, y, z) = (f.int(a), f.int(b), f.int(c));
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        if !x.is_zero() {
            prop_assert!(( &x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rank_nullity(f in field(), rows in ints(4, 5)) {
        let m = Matrix::from_ints(f, &rows);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.cols(), 5);
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_returns_a_solution(f in field(), rows in ints(3, 4), v in prop::collection::vec(-3i64..=3, 4)) {
        let m = Matrix::from_ints(f, &rows);
        let x: Vec<_> = v.iter().map(|&c| f.int(c)).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn bullet_symmetry_and_shift(f in field(), recs in prop::collection::vec((prop::bool::ANY, -5i64..5, -5i64..5), 0..8), c in -3i64..3) {
        let records: Vec<IntersectionRecord> = recs
            .iter()
            .map(|&(s, g1, g0)| IntersectionRecord::new(if s { 1 } else { -1 }, f.int(g1), f.int(g0)))
            .collect();
        for (c0, c1) in [(1, 1), (1, 2), (2, 2)] {
            prop_assert!(symmetry_defect(f, &records, c0, c1).is_zero());
        }
        let shifted: Vec<_> = records
            .iter()
            .map(|r| IntersectionRecord::new(r.sign, &r.gamma1 + &f.int(c), r.gamma0.clone()))
            .collect();
        prop_assert_eq!(
            bullet_records(f, &shifted) - bullet_records(f, &records),
            f.int(c * intersection_number(&records))
        );
    }

    #[test]
    fn records_documents_round_trip(f in field(), recs in prop::collection::vec((prop::bool::ANY, -9i64..9, 1i64..5), 0..6)) {
        let records: Vec<IntersectionRecord> = recs
            .iter()
            .map(|&(s, g, d)| {
                let v = match f {
                    Field::Rationals => f.ratio(g, d),
                    _ => f.int(g),
                };
                IntersectionRecord::new(if s { 1 } else { -1 }, v, f.int(d))
            })
            .collect();
        let doc = Document::new(Some(f), Payload::Records(RecordsDoc::from_records(&records)));
        let text = doc.to_canonical();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(&back.to_canonical(), &text);
        match back.payload {
            Payload::Records(r) => prop_assert_eq!(r.build(f).unwrap(), records),
            _ => prop_assert!(false),
        }
    }

    #[test]
    fn weighted_shift_identity(pairs in prop::collection::vec((-6i64..6, -5i64..5), 0..8)) {
        let data = WeightedEulerData::new(pairs);
        let r = shift_identity_check(&data, data.euler());
        prop_assert!(r.holds && r.euler_consistent);
    }

    #[test]
    fn a_m_bound_steps(m in 2usize..200) {
        let step = a_m_bound(m) - a_m_bound(m - 1);
        prop_assert!(step <= 1);
    }

    #[test]
    fn self_intersection_period(n in 0i64..40, chi in -20i64..20) {
        prop_assert_eq!(self_intersection_euler(n, chi), self_intersection_euler(n + 4, chi));
        prop_assert_eq!(self_intersection_euler(n, chi).abs(), chi.abs());
    }

    #[test]
    fn dual_instances_satisfy_the_identities(seed in any::<u64>(), n in 1i64..5, p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = Field::prime(p).unwrap();
        let dims: Vec<usize> = (0..=n).map(|k| if 2 * k == n { 2 } else { 1 + (k.min(n - k) as usize) % 2 }).collect();
        let inst = DualInstance::random(f, n, &dims, &mut twisted_pairing::rng(seed)).unwrap();
        prop_assert!(inst.is_dual());
        prop_assert!(inst.identities().unwrap().all_hold());
    }

    #[test]
    fn folk_verdict_implies_brute_force_independence(p in prop::sample::select(vec![2u64, 3]), diag in prop::collection::vec(0i64..3, 1..5), seed in any::<u64>()) {
        let f = Field::prime(p).unwrap();
        let r = diag.len();
        let mut rng = twisted_pairing::rng(seed);
        let a = Matrix::random_invertible(f, r, &mut rng);
        let mut d = Matrix::zeros(f, r, r);
        for (i, &v) in diag.iter().enumerate() {
            d.set(i, i, f.int(v));
        }
        let form = IntersectionForm::new(2, a.transpose().mul(&d).mul(&a)).unwrap();
        let classes = a.inverse().unwrap();
        let chis: Vec<i64> = diag.iter().map(|&v| -v).collect();
        let report = folk_independent(&classes, &chis, &form).unwrap();
        let all_nonzero = diag.iter().all(|&v| v % p as i64 != 0);
        prop_assert_eq!(report.verdict == FolkVerdict::Independent, all_nonzero);
        if report.verdict == FolkVerdict::Independent {
            prop_assert_eq!(brute_force_independent(&classes), Some(true));
        }
    }
}
