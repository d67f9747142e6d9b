//! Built-in triangulations: circles, the boundary of a tetrahedron, the 7-vertex torus,
//! genus-g surfaces and a twice-punctured disc.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::simplicial::{Cochain, SimplicialComplex};

/// A closed oriented surface with a symplectic basis of edge loops, one `(a, b)` pair per handle.
#[derive(Clone, Debug)]
pub struct Surface {
    pub name: String,
    pub complex: SimplicialComplex,
    pub handles: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Surface {
    pub fn genus(&self) -> usize {
        self.handles.len()
    }

    /// All basis loops in the order `a_1, b_1, a_2, b_2, …`.
    pub fn basis_loops(&self) -> Vec<Vec<usize>> {
        self.handles
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    /// A 1-cocycle whose windings along `a_1, b_1, a_2, b_2, …` are the given values
    /// (missing entries are zero), plus a random coboundary.
    pub fn beta_with_windings<R: Rng + ?Sized>(&self, field: Field, windings: &[i64], rng: &mut R) -> Result<Cochain> {
        let k = &self.complex;
        let loops = self.basis_loops();
        if windings.len() > loops.len() {
            return Err(Error::Dimension(format!("{} windings for {} basis loops", windings.len(), loops.len())));
        }
        let delta = k.coboundary_matrix(field, 1);
        let mut w = Matrix::zeros(field, loops.len(), k.count(1));
        for (r, l) in loops.iter().enumerate() {
            for (c, v) in loop_functional(k, field, l)?.into_iter().enumerate() {
                w.set(r, c, v);
            }
        }
        let system = delta.vstack(&w);
        let mut rhs = vec![field.zero(); k.count(2)];
        rhs.extend((0..loops.len()).map(|i| field.int(windings.get(i).copied().unwrap_or(0))));
        let sol = system
            .solve(&rhs)
            .ok_or_else(|| Error::Malformed("basis loops are not independent in homology".into()))?;
        let alpha = Cochain::new(0, field.random_vec(rng, k.count(0)));
        let beta = Cochain::new(1, sol).add(&k.coboundary(&alpha));
        Ok(beta)
    }
}

/// Coefficients of the functional `x ↦ Σ x(v_i → v_{i+1})` along a closed vertex path.
pub fn loop_functional(k: &SimplicialComplex, field: Field, path: &[usize]) -> Result<Vec<Scalar>> {
    let mut out = vec![field.zero(); k.count(1)];
    for i in 0..path.len() {
        let (a, b) = (path[i], path[(i + 1) % path.len()]);
        if a == b {
            continue;
        }
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let e = k
            .index_of(&[lo, hi])
            .ok_or_else(|| Error::Malformed(format!("no edge {{{a}, {b}}}")))?;
        out[e] += field.int(s);
    }
    Ok(out)
}

/// `∮_path β`.
pub fn winding(k: &SimplicialComplex, beta: &Cochain, path: &[usize]) -> Result<Scalar> {
    k.loop_sum(beta, path)
}

/// The `n`-vertex circle, oriented along increasing vertex order.
pub fn circle(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a simplicial circle needs at least three vertices");
    let edges: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    let signs = SimplicialComplex::from_facets(&edges)
        .unwrap()
        .simplices(1)
        .iter()
        .map(|e| if e[1] == e[0] + 1 { 1 } else { -1 })
        .collect();
    SimplicialComplex::from_facets(&edges)
        .and_then(|k| k.with_fundamental_cycle(signs))
        .expect("circle is a cycle")
}

/// The boundary of the tetrahedron.
pub fn sphere() -> SimplicialComplex {
    let facets = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    SimplicialComplex::from_facets(&facets)
        .and_then(SimplicialComplex::oriented)
        .expect("tetrahedron boundary is orientable")
}

fn torus_facets() -> Vec<[usize; 3]> {
    (0..7)
        .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

const TORUS_A: [usize; 7] = [0, 1, 2, 3, 4, 5, 6];
const TORUS_B: [usize; 3] = [0, 2, 1];

/// The 7-vertex (Möbius) torus, whose 1-skeleton is the complete graph on 7 vertices.
pub fn torus() -> Surface {
    genus(1).expect("torus")
}

/// A closed orientable surface of genus `g ≥ 1`, the connected sum of `g` copies of the
/// 7-vertex torus. Copy `c` is glued to copy `c+1` by removing the triangle `{2,4,5}` of
/// copy `c` and `{0,1,3}` of copy `c+1` and identifying their boundaries.
pub fn genus(g: usize) -> Result<Surface> {
    if g == 0 {
        return Err(Error::Malformed("genus 0: use `sphere`".into()));
    }
    // Try the six gluing bijections until the result is orientable.
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in perms {
        if let Ok(s) = glue_tori(g, perm) {
            return Ok(s);
        }
    }
    Err(Error::Malformed("no orientable gluing found".into()))
}

fn glue_tori(g: usize, perm: [usize; 3]) -> Result<Surface> {
    let back = [2usize, 4, 5];
    let front = [0usize, 1, 3];
    let mut facets = Vec::new();
    let mut handles = Vec::new();
    let mut next = 0usize;
    let mut prev_back: Option<[usize; 3]> = None;
    for c in 0..g {
        let mut ids = [usize::MAX; 7];
        if let Some(pb) = prev_back {
            for (i, &v) in front.iter().enumerate() {
                ids[v] = pb[perm[i]];
            }
        }
        for id in ids.iter_mut().filter(|id| **id == usize::MAX) {
            *id = next;
            next += 1;
        }
        for f in torus_facets() {
            let mut sorted = f;
            sorted.sort_unstable();
            if c > 0 && sorted == front {
                continue;
            }
            if c + 1 < g && sorted == back {
                continue;
            }
            facets.push(f.iter().map(|&v| ids[v]).collect::<Vec<_>>());
        }
        handles.push((
            TORUS_A.iter().map(|&v| ids[v]).collect(),
            TORUS_B.iter().map(|&v| ids[v]).collect(),
        ));
        prev_back = Some(back.map(|v| ids[v]));
    }
    let complex = SimplicialComplex::from_facets(&facets)?.oriented()?;
    let name = if g == 1 { "torus".to_string() } else { format!("genus-{g}") };
    Ok(Surface { name, complex, handles })
}

/// A disc with two interior triangles removed: a 6×4 grid of vertices, each square split
/// along its diagonal. Euler characteristic −1; it has no fundamental cycle.
pub fn twice_punctured_disc() -> SimplicialComplex {
    let (w, h) = (6usize, 4usize);
    let id = |x: usize, y: usize| y * w + x;
    let removed = [
        vec![id(1, 1), id(2, 1), id(2, 2)],
        vec![id(3, 1), id(4, 1), id(4, 2)],
    ];
    let mut facets = Vec::new();
    for y in 0..h - 1 {
        for x in 0..w - 1 {
            for t in [
                vec![id(x, y), id(x + 1, y), id(x + 1, y + 1)],
                vec![id(x, y), id(x, y + 1), id(x + 1, y + 1)],
            ] {
                if !removed.contains(&t) {
                    facets.push(t);
                }
            }
        }
    }
    SimplicialComplex::from_facets(&facets).expect("grid triangulation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(k: &SimplicialComplex, f: Field) -> Vec<usize> {
        k.cochain_complex(f).betti().into_iter().map(|(_, b)| b).collect()
    }

    #[test]
    fn torus_has_complete_one_skeleton() {
        let t = torus();
        assert_eq!(t.complex.count(0), 7);
        assert_eq!(t.complex.count(1), 21);
        assert_eq!(t.complex.count(2), 14);
        assert_eq!(betti(&t.complex, Field::Rationals), vec![1, 2, 1]);
    }

    #[test]
    fn genus_two_and_three_betti() {
        for g in 2..=3 {
            let s = genus(g).unwrap();
            assert_eq!(s.complex.euler_characteristic(), 2 - 2 * g as i64);
            assert_eq!(betti(&s.complex, Field::prime(3).unwrap()), vec![1, 2 * g, 1]);
        }
    }

    #[test]
    fn circle_and_disc() {
        assert_eq!(betti(&circle(3), Field::Rationals), vec![1, 1]);
        let d = twice_punctured_disc();
        assert_eq!(d.euler_characteristic(), -1);
        assert_eq!(betti(&d, Field::Rationals), vec![1, 2, 0]);
    }

    #[test]
    fn prescribed_windings() {
        let s = genus(2).unwrap();
        let f = Field::prime(5).unwrap();
        let mut rng = crate::rng(3);
        let beta = s.beta_with_windings(f, &[1, 2], &mut rng).unwrap();
        assert!(s.complex.coboundary(&beta).is_zero());
        let w: Vec<Scalar> = s
            .basis_loops()
            .iter()
            .map(|l| winding(&s.complex, &beta, l).unwrap())
            .collect();
        assert_eq!(w, vec![f.int(1), f.int(2), f.int(0), f.int(0)]);
    }
}
