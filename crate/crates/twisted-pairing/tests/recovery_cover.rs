use twisted_pairing::covers::CyclicCover;
use twisted_pairing::cycles::{bullet_records, edge_loop_potential, intersect, lift_class, pushoff};
use twisted_pairing::surfaces::{self, Surface};
use twisted_pairing::Field;

fn repeat(l: &[usize], n: usize) -> Vec<usize> {
    l.iter().copied().cycle().take(l.len() * n).collect()
}

fn then_reversed(a: &[usize], b: &[usize]) -> Vec<usize> {
    assert_eq!(a[0], b[0]);
    let mut out = a.to_vec();
    out.push(a[0]);
    out.extend(b.iter().rev().take(b.len() - 1));
    out
}

fn pairs(s: &Surface, w: [i64; 2], p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (a, b) = s.handles[0].clone();
    let mut out = match w {
        [0, 0] => vec![(a.clone(), b.clone()), (b.clone(), a.clone())],
        [1, 0] => vec![(b.clone(), repeat(&a, p)), (repeat(&a, p), b.clone())],
        _ => vec![(then_reversed(&a, &b), repeat(&b, p)), (repeat(&a, p), then_reversed(&a, &b))],
    };
    if s.genus() > 1 {
        let (a2, b2) = s.handles[1].clone();
        out.push((a2.clone(), b2.clone()));
        out.push((repeat(&b, p), a2));
    }
    out
}

#[test]
fn covering_pairing_recovers_bullet() {
    let mut rng = twisted_pairing::rng(11);
    for s in [surfaces::torus(), surfaces::genus(2).unwrap()] {
        for p in [3u64, 5] {
            let f = Field::prime(p).unwrap();
            for w in [[0i64, 0], [1, 0], [1, 1]] {
                let beta = s.beta_with_windings(f, &w, &mut rng).unwrap();
                let cover = CyclicCover::new(&s.complex, &beta).unwrap();
                for (l0, l1) in pairs(&s, w, p as usize) {
                    let d0 = edge_loop_potential(&s.complex, &beta, &l0, f.random(&mut rng)).unwrap();
                    let d1 = edge_loop_potential(&s.complex, &beta, &l1, f.random(&mut rng)).unwrap();
                    let p1 = pushoff(&s.complex, &beta, &d1).unwrap();
                    let p0 = pushoff(&s.complex, &beta, &d0).unwrap();
                    let b = bullet_records(f, &intersect(&s.complex, &beta, &d0, &p1).unwrap());
                    let x0 = lift_class(&cover, &p0).unwrap();
                    let x1 = lift_class(&cover, &p1).unwrap();
                    let i = cover.iota(&x0.cocycle, &x1.cocycle).unwrap();
                    println!("{} p={p} w={w:?} bullet={b} I={i}", s.name);
                    assert_eq!(i, b);
                }
            }
        }
    }
}
