use twisted_pairing::conealg::{ConeElement, FloerModel};
use twisted_pairing::cycles::{bullet_records, edge_loop_potential, equivariant_cocycle_surface, intersect, pushoff};
use twisted_pairing::surfaces::{self, Surface};
use twisted_pairing::Field;

fn repeat(l: &[usize], n: usize) -> Vec<usize> {
    l.iter().copied().cycle().take(l.len() * n).collect()
}

fn then_reversed(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    out.push(a[0]);
    out.extend(b.iter().rev().take(b.len() - 1));
    out
}

fn pairs(s: &Surface, w: [i64; 2], p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (a, b) = s.handles[0].clone();
    let mut out = match w {
        [0, 0] => vec![(a.clone(), b.clone()), (b.clone(), a.clone()), (a.clone(), a.clone())],
        [1, 0] => vec![(b.clone(), repeat(&a, p)), (repeat(&a, p), b.clone())],
        _ => vec![(then_reversed(&a, &b), repeat(&b, p)), (repeat(&a, p), then_reversed(&a, &b))],
    };
    if s.genus() > 1 {
        let (a2, b2) = s.handles[1].clone();
        out.push((a2.clone(), b2.clone()));
        out.push((b2, a2.clone()));
        out.push((repeat(&b, p), a2));
    }
    out
}

#[test]
fn cone_pairing_of_equivariant_cocycles_recovers_bullet() {
    let mut rng = twisted_pairing::rng(12);
    let mut checked = 0;
    let mut nonzero_twisted = 0;
    for s in [surfaces::torus(), surfaces::genus(2).unwrap()] {
        for f in [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::Rationals] {
            let windings: &[[i64; 2]] = match f {
                Field::Rationals => &[[0, 0]],
                _ => &[[0, 0], [1, 0], [1, 1]],
            };
            let p = f.characteristic().max(1) as usize;
            for &w in windings {
                let beta = s.beta_with_windings(f, &w, &mut rng).unwrap();
                let model = FloerModel::from_simplicial(&s.complex, &beta).unwrap();
                for (l0, l1) in pairs(&s, w, p) {
                    let d0 = edge_loop_potential(&s.complex, &beta, &l0, f.random(&mut rng)).unwrap();
                    let d1 = edge_loop_potential(&s.complex, &beta, &l1, f.random(&mut rng)).unwrap();
                    let p0 = pushoff(&s.complex, &beta, &d0).unwrap();
                    let p1 = pushoff(&s.complex, &beta, &d1).unwrap();
                    let b = bullet_records(f, &intersect(&s.complex, &beta, &d0, &p1).unwrap());
                    let e0 = equivariant_cocycle_surface(&s.complex, &beta, &p0).unwrap();
                    let e1 = equivariant_cocycle_surface(&s.complex, &beta, &p1).unwrap();
                    let a = ConeElement::new(1, e0.xi.values, e0.x.values);
                    let c = ConeElement::new(1, e1.xi.values, e1.x.values);
                    let i = model.i_cone(&a, &c).unwrap();
                    println!("{} {f} w={w:?} bullet={b} I={i}", s.name);
                    assert_eq!(i, -b.clone());
                    checked += 1;
                    if w != [0, 0] && !b.is_zero() {
                        nonzero_twisted += 1;
                    }
                }
            }
        }
    }
    assert!(checked >= 6);
    assert!(nonzero_twisted > 0);
}
