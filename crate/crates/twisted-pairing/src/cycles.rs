//! Decorated cycles on surfaces, transverse intersection records and the bullet pairing.
//!
//! An edge loop lives in the 1-skeleton and a dual loop is a cyclic sequence of triangles,
//! consecutive ones sharing an edge, so an edge loop and a dual loop always meet
//! transversally at (edge, dual edge) incidences.
//!
//! Potentials: along an edge loop `γ(v_{i+1}) − γ(v_i) = β(v_i → v_{i+1})`. A triangle `T`
//! of a dual loop carries `γ(T)`, read at its minimal vertex `T0`; crossing the shared edge
//! `e` into `T'` the rule is `γ(T') − γ(T) = β(T0 → e0) + β(e0 → T'0)`.

use serde::{Deserialize, Serialize};

use crate::covers::CyclicCover;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::simplicial::{permutation_sign, Cochain, SimplicialComplex};

/// One transverse intersection point of `L0` and `L1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRecord {
    pub sign: i64,
    pub gamma1: Scalar,
    pub gamma0: Scalar,
    pub label: String,
}

impl IntersectionRecord {
    pub fn new(sign: i64, gamma1: Scalar, gamma0: Scalar) -> Self {
        IntersectionRecord {
            sign,
            gamma1,
            gamma0,
            label: String::new(),
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// `L̃0 • L̃1 = Σ ±(γ_{L1}(x) − γ_{L0}(x))`.
pub fn bullet_records(field: Field, records: &[IntersectionRecord]) -> Scalar {
    let mut acc = field.zero();
    for r in records {
        acc += &field.int(r.sign) * &(&r.gamma1 - &r.gamma0);
    }
    acc
}

/// Algebraic intersection number `Σ ±1`.
pub fn intersection_number(records: &[IntersectionRecord]) -> i64 {
    records.iter().map(|r| r.sign).sum()
}

/// The records of `L1 • L0` from those of `L0 • L1`, for cycles of codimensions `c0`, `c1`:
/// local signs pick up `(−1)^{c0·c1}` and the potentials trade places.
pub fn swap_records(records: &[IntersectionRecord], c0: u32, c1: u32) -> Vec<IntersectionRecord> {
    let s = if (c0 * c1).is_multiple_of(2) { 1 } else { -1 };
    records
        .iter()
        .map(|r| IntersectionRecord {
            sign: s * r.sign,
            gamma1: r.gamma0.clone(),
            gamma0: r.gamma1.clone(),
            label: r.label.clone(),
        })
        .collect()
}

/// `L1•L0 + (−1)^{c0·c1} L0•L1`, which vanishes identically.
pub fn symmetry_defect(field: Field, records: &[IntersectionRecord], c0: u32, c1: u32) -> Scalar {
    let swapped = bullet_records(field, &swap_records(records, c0, c1));
    &swapped + &(&field.sign((c0 * c1) as i64) * &bullet_records(field, records))
}

/// The self-intersection of a figure-eight curve in the twice-punctured plane, with the
/// potential jumping by one between the two lobes: contributions add up to 2.
pub fn figure_eight_records(field: Field) -> Vec<IntersectionRecord> {
    vec![
        IntersectionRecord::new(1, field.one(), field.zero()).labeled("x"),
        IntersectionRecord::new(-1, field.zero(), field.one()).labeled("y"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "ids", rename_all = "snake_case")]
pub enum Carrier {
    /// Closed vertex path; consecutive vertices (cyclically) span edges.
    EdgeLoop(Vec<usize>),
    /// Closed path of top-simplex indices; consecutive triangles share an edge.
    DualLoop(Vec<usize>),
}

impl Carrier {
    pub fn len(&self) -> usize {
        match self {
            Carrier::EdgeLoop(v) | Carrier::DualLoop(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A cycle `L` with a potential `γ_L`, one value per vertex or triangle of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedCycle {
    pub carrier: Carrier,
    pub gamma: Vec<Scalar>,
}

/// Result of checking `dγ = β|L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialReport {
    /// Steps `i → i+1` where the rule fails.
    pub defects: Vec<usize>,
}

impl PotentialReport {
    pub fn ok(&self) -> bool {
        self.defects.is_empty()
    }
}

fn edge_step(k: &SimplicialComplex, beta: &Cochain, a: usize, b: usize) -> Result<Scalar> {
    k.edge_value(beta, a, b)
}

/// The edge shared by two triangles, with the third vertex of the first.
fn shared_edge(k: &SimplicialComplex, t: usize, u: usize) -> Result<([usize; 2], usize)> {
    let top = k.dim();
    let ts = k.simplex(top, t);
    let us = k.simplex(top, u);
    let common: Vec<usize> = ts.iter().copied().filter(|v| us.contains(v)).collect();
    if t == u || common.len() != 2 {
        return Err(Error::Malformed(format!("triangles {ts:?} and {us:?} do not share an edge")));
    }
    let w = ts.iter().copied().find(|v| !common.contains(v)).unwrap();
    Ok(([common[0], common[1]], w))
}

/// Sign of the crossing as a dual loop exits triangle `t` through edge `e = (a < b)` with
/// opposite vertex `w`: `−s_T · sgn(a, b, w)`.
pub fn crossing_sign(k: &SimplicialComplex, t: usize, e: [usize; 2], w: usize) -> Result<i64> {
    let fc = k
        .fundamental_cycle()
        .ok_or_else(|| Error::Missing("fundamental cycle".into()))?;
    Ok(-fc[t] * permutation_sign(&[e[0], e[1], w]))
}

pub(crate) struct DualStep {
    pub(crate) from: usize,
    pub(crate) to: usize,
    pub(crate) edge: [usize; 2],
    pub(crate) opposite: usize,
}

pub(crate) fn dual_steps(k: &SimplicialComplex, tris: &[usize]) -> Result<Vec<DualStep>> {
    if k.dim() != 2 {
        return Err(Error::Dimension("dual loops live on surfaces".into()));
    }
    if tris.is_empty() {
        return Err(Error::Malformed("empty dual loop".into()));
    }
    if tris.len() == 1 {
        // A loop inside one triangle crosses nothing.
        return if tris[0] < k.count(2) {
            Ok(Vec::new())
        } else {
            Err(Error::Malformed("triangle index out of range".into()))
        };
    }
    (0..tris.len())
        .map(|i| {
            let (t, u) = (tris[i], tris[(i + 1) % tris.len()]);
            if t >= k.count(2) || u >= k.count(2) {
                return Err(Error::Malformed(format!("triangle index out of range in step {i}")));
            }
            let (edge, opposite) = shared_edge(k, t, u)?;
            Ok(DualStep {
                from: t,
                to: u,
                edge,
                opposite,
            })
        })
        .collect()
}

fn check_edge_loop(k: &SimplicialComplex, path: &[usize]) -> Result<()> {
    if path.len() < 2 {
        return Err(Error::Malformed("an edge loop needs at least two vertices".into()));
    }
    for i in 0..path.len() {
        let (a, b) = (path[i], path[(i + 1) % path.len()]);
        let mut e = [a, b];
        e.sort_unstable();
        if a == b || k.index_of(&e).is_none() {
            return Err(Error::Malformed(format!("edge loop step {a} → {b} is not an edge")));
        }
    }
    Ok(())
}

/// Checks `dγ = β|L` step by step.
pub fn check_potential(k: &SimplicialComplex, beta: &Cochain, cycle: &DecoratedCycle) -> Result<PotentialReport> {
    if cycle.gamma.len() != cycle.carrier.len() {
        return Err(Error::Dimension("one potential value per carrier element".into()));
    }
    let g = &cycle.gamma;
    let m = g.len();
    let mut defects = Vec::new();
    match &cycle.carrier {
        Carrier::EdgeLoop(path) => {
            check_edge_loop(k, path)?;
            for i in 0..m {
                let step = edge_step(k, beta, path[i], path[(i + 1) % m])?;
                if &g[(i + 1) % m] - &g[i] != step {
                    defects.push(i);
                }
            }
        }
        Carrier::DualLoop(tris) => {
            for (i, s) in dual_steps(k, tris)?.iter().enumerate() {
                let t0 = k.simplex(2, s.from)[0];
                let u0 = k.simplex(2, s.to)[0];
                let step = &edge_step(k, beta, t0, s.edge[0])? + &edge_step(k, beta, s.edge[0], u0)?;
                if &g[(i + 1) % m] - &g[i] != step {
                    defects.push(i);
                }
            }
        }
    }
    Ok(PotentialReport { defects })
}

/// The potential along an edge loop starting from `start`; fails when `∮_L β ≠ 0`.
pub fn edge_loop_potential(k: &SimplicialComplex, beta: &Cochain, path: &[usize], start: Scalar) -> Result<DecoratedCycle> {
    check_edge_loop(k, path)?;
    let w = k.loop_sum(beta, path)?;
    if !w.is_zero() {
        return Err(Error::NotCocycle(format!("β winds {w} along the loop; no potential exists")));
    }
    let mut gamma = vec![start];
    for i in 0..path.len() - 1 {
        let next = gamma[i].clone() + edge_step(k, beta, path[i], path[i + 1])?;
        gamma.push(next);
    }
    Ok(DecoratedCycle {
        carrier: Carrier::EdgeLoop(path.to_vec()),
        gamma,
    })
}

/// The potential along a dual loop starting from `start`; fails when β has nonzero
/// holonomy around it.
pub fn dual_loop_potential(k: &SimplicialComplex, beta: &Cochain, tris: &[usize], start: Scalar) -> Result<DecoratedCycle> {
    let steps = dual_steps(k, tris)?;
    let mut gamma = vec![start];
    for s in &steps {
        let t0 = k.simplex(2, s.from)[0];
        let u0 = k.simplex(2, s.to)[0];
        let last = gamma.last().unwrap().clone();
        gamma.push(last + (&edge_step(k, beta, t0, s.edge[0])? + &edge_step(k, beta, s.edge[0], u0)?));
    }
    let back = gamma.pop().unwrap();
    if back != gamma[0] {
        return Err(Error::NotCocycle("β has nonzero holonomy along the dual loop".into()));
    }
    Ok(DecoratedCycle {
        carrier: Carrier::DualLoop(tris.to_vec()),
        gamma,
    })
}

/// One record per crossing of the edge loop `L0` by the dual loop `L1`.
///
/// The sign is the crossing sign times ±1 for the direction in which `L0` runs along the
/// crossed edge `e = (a < b)`. Both potentials are transported to `a`: `γ_{L0}(a)` and
/// `γ_{L1}(T) + β(T0 → a)` for the triangle `T` that `L1` exits.
pub fn intersect(
    k: &SimplicialComplex,
    beta: &Cochain,
    l0: &DecoratedCycle,
    l1: &DecoratedCycle,
) -> Result<Vec<IntersectionRecord>> {
    let (path, tris) = match (&l0.carrier, &l1.carrier) {
        (Carrier::EdgeLoop(p), Carrier::DualLoop(t)) => (p, t),
        _ => return Err(Error::Malformed("intersect expects an edge loop and a dual loop".into())),
    };
    check_edge_loop(k, path)?;
    let m = path.len();
    let mut records = Vec::new();
    for (i, s) in dual_steps(k, tris)?.iter().enumerate() {
        let cross = crossing_sign(k, s.from, s.edge, s.opposite)?;
        let t0 = k.simplex(2, s.from)[0];
        let g1 = &l1.gamma[i] + &edge_step(k, beta, t0, s.edge[0])?;
        for j in 0..m {
            let (a, b) = (path[j], path[(j + 1) % m]);
            let (dir, g0) = if [a, b] == s.edge {
                (1, l0.gamma[j].clone())
            } else if [b, a] == s.edge {
                (-1, l0.gamma[(j + 1) % m].clone())
            } else {
                continue;
            };
            records.push(IntersectionRecord::new(dir * cross, g1.clone(), g0).labeled(format!("e{}-{}@{}.{}", s.edge[0], s.edge[1], i, j)));
        }
    }
    Ok(records)
}

/// The Poincaré-dual 1-cocycle of a dual loop: `ξ(e) = Σ` crossing signs through `e`.
pub fn pd_cocycle(k: &SimplicialComplex, field: Field, tris: &[usize]) -> Result<Cochain> {
    let mut xi = Cochain::zero(field, k, 1);
    for s in dual_steps(k, tris)? {
        let e = k.index_of(&s.edge).unwrap();
        xi.values[e] += field.int(crossing_sign(k, s.from, s.edge, s.opposite)?);
    }
    Ok(xi)
}

/// A cocycle `(ξ, x)` of the cone of `β⌣`: `dξ = 0` and `dx = β⌣ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantConeCocycle {
    pub xi: Cochain,
    pub x: Cochain,
}

/// `ξ = PD(L1)` and `x(e) = Σ` over crossings of `e` of sign · γ-at-crossing.
pub fn equivariant_cocycle_surface(
    k: &SimplicialComplex,
    beta: &Cochain,
    l1: &DecoratedCycle,
) -> Result<EquivariantConeCocycle> {
    let tris = match &l1.carrier {
        Carrier::DualLoop(t) => t,
        Carrier::EdgeLoop(_) => return Err(Error::Malformed("expected a dual loop; push the edge loop off first".into())),
    };
    let report = check_potential(k, beta, l1)?;
    if !report.ok() {
        return Err(Error::NotCocycle(format!("dγ ≠ β|L at steps {:?}", report.defects)));
    }
    let field = beta.field();
    let xi = pd_cocycle(k, field, tris)?;
    let mut x = Cochain::zero(field, k, 1);
    for (i, s) in dual_steps(k, tris)?.iter().enumerate() {
        let e = k.index_of(&s.edge).unwrap();
        let t0 = k.simplex(2, s.from)[0];
        let g = &l1.gamma[i] + &edge_step(k, beta, t0, s.edge[0])?;
        x.values[e] += &field.int(crossing_sign(k, s.from, s.edge, s.opposite)?) * &g;
    }
    if k.coboundary(&x) != k.cup(beta, &xi) || !k.coboundary(&xi).is_zero() {
        return Err(Error::Defect("equivariant cocycle is not closed".into()));
    }
    Ok(EquivariantConeCocycle { xi, x })
}

fn left_triangle(k: &SimplicialComplex, a: usize, b: usize) -> Result<usize> {
    let fc = k
        .fundamental_cycle()
        .ok_or_else(|| Error::Missing("fundamental cycle".into()))?;
    k.simplices(2)
        .iter()
        .enumerate()
        .find_map(|(i, t)| {
            if !(t.contains(&a) && t.contains(&b)) {
                return None;
            }
            let w = t.iter().copied().find(|&v| v != a && v != b)?;
            (fc[i] * permutation_sign(&[a, b, w]) == 1).then_some(i)
        })
        .ok_or_else(|| Error::Malformed(format!("no triangle to the left of {a} → {b}")))
}

fn across(k: &SimplicialComplex, t: usize, v: usize, w: usize) -> Result<usize> {
    k.simplices(2)
        .iter()
        .enumerate()
        .find(|(i, s)| *i != t && s.contains(&v) && s.contains(&w))
        .map(|(i, _)| i)
        .ok_or_else(|| Error::Malformed(format!("edge {{{v}, {w}}} is on the boundary")))
}

/// Pushes an edge loop off to its left, giving a dual loop with the transported potential
/// `γ'(T) = γ(v) + β(v → T0)` for triangles `T` around the vertex `v`.
pub fn pushoff(k: &SimplicialComplex, beta: &Cochain, l: &DecoratedCycle) -> Result<DecoratedCycle> {
    let path = match &l.carrier {
        Carrier::EdgeLoop(p) => p,
        Carrier::DualLoop(_) => return Err(Error::Malformed("pushoff expects an edge loop".into())),
    };
    check_edge_loop(k, path)?;
    let m = path.len();
    let mut tris: Vec<usize> = Vec::new();
    let mut gamma: Vec<Scalar> = Vec::new();
    for i in 0..m {
        let (a, v, b) = (path[(i + m - 1) % m], path[i], path[(i + 1) % m]);
        let target = left_triangle(k, v, b)?;
        let mut t = left_triangle(k, a, v)?;
        let mut u = a;
        let mut fan = vec![t];
        let mut guard = 0;
        while t != target {
            let s = k.simplex(2, t);
            let w = s.iter().copied().find(|&x| x != v && x != u).unwrap();
            t = across(k, t, v, w)?;
            u = w;
            fan.push(t);
            guard += 1;
            if guard > k.count(2) {
                return Err(Error::Malformed(format!("vertex {v} has no closed link")));
            }
        }
        for t in fan {
            if tris.last() == Some(&t) {
                continue;
            }
            let t0 = k.simplex(2, t)[0];
            tris.push(t);
            gamma.push(&l.gamma[i] + &edge_step(k, beta, v, t0)?);
        }
    }
    if tris.len() > 1 && tris.first() == tris.last() {
        tris.pop();
        gamma.pop();
    }
    Ok(DecoratedCycle {
        carrier: Carrier::DualLoop(tris),
        gamma,
    })
}

/// A decorated dual loop lifted to a cyclic cover: triangle `T` goes to sheet `γ(T)`.
#[derive(Clone, Debug)]
pub struct DecoratedLift {
    pub cycle: DecoratedCycle,
    /// Indices upstairs of the lifted triangles.
    pub lifted: Vec<usize>,
    /// Poincaré dual of the lift in `C¹(M̃)`.
    pub cocycle: Cochain,
    /// Image `(a, c)` in the quotient by `(q−1)²`.
    pub class: (Cochain, Cochain),
}

/// The lift `L̃` of a decorated dual loop and its class in the quotient complex.
pub fn lift_class(cover: &CyclicCover, l: &DecoratedCycle) -> Result<DecoratedLift> {
    let tris = match &l.carrier {
        Carrier::DualLoop(t) => t,
        Carrier::EdgeLoop(_) => return Err(Error::Malformed("lift a dual loop; push the edge loop off first".into())),
    };
    if l.gamma.iter().any(|g| g.field() != cover.field()) {
        return Err(Error::FieldMismatch(l.gamma[0].field(), cover.field()));
    }
    let report = check_potential(cover.base(), cover.beta(), l)?;
    if !report.ok() {
        return Err(Error::NotCocycle(format!("γ is not a potential mod {} at steps {:?}", cover.p(), report.defects)));
    }
    let lifted: Vec<usize> = tris
        .iter()
        .zip(&l.gamma)
        .map(|(&t, g)| cover.lift_index(2, t, g.residue().unwrap() as i64))
        .collect();
    let cocycle = pd_cocycle(cover.total(), cover.field(), &lifted)?;
    let class = cover.quotient(&cocycle);
    Ok(DecoratedLift {
        cycle: l.clone(),
        lifted,
        cocycle,
        class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces;

    #[test]
    fn figure_eight_adds_up_to_two() {
        for f in [Field::Rationals, Field::prime(3).unwrap(), Field::prime(7).unwrap()] {
            assert_eq!(bullet_records(f, &figure_eight_records(f)), f.int(2));
        }
        let f2 = Field::prime(2).unwrap();
        assert!(bullet_records(f2, &figure_eight_records(f2)).is_zero());
    }

    #[test]
    fn shifting_gamma0_subtracts_intersection_number() {
        let f = Field::Rationals;
        let recs = vec![
            IntersectionRecord::new(1, f.int(2), f.int(1)),
            IntersectionRecord::new(1, f.int(0), f.int(5)),
            IntersectionRecord::new(-1, f.int(3), f.int(3)),
        ];
        let c = f.int(4);
        let shifted: Vec<_> = recs
            .iter()
            .map(|r| IntersectionRecord::new(r.sign, r.gamma1.clone(), &r.gamma0 + &c))
            .collect();
        let diff = bullet_records(f, &shifted) - bullet_records(f, &recs);
        assert_eq!(diff, -(&c * &f.int(intersection_number(&recs))));
    }

    #[test]
    fn torus_a_and_b_cross_once() {
        let t = surfaces::torus();
        let f = Field::Rationals;
        let beta = Cochain::zero(f, &t.complex, 1);
        let (a, b) = &t.handles[0];
        let l0 = edge_loop_potential(&t.complex, &beta, a, f.zero()).unwrap();
        let l1 = pushoff(&t.complex, &beta, &edge_loop_potential(&t.complex, &beta, b, f.zero()).unwrap()).unwrap();
        let recs = intersect(&t.complex, &beta, &l0, &l1).unwrap();
        assert_eq!(intersection_number(&recs).abs(), 1);
    }

    #[test]
    fn potential_rejects_winding() {
        let t = surfaces::torus();
        let f = Field::prime(3).unwrap();
        let mut rng = crate::rng(0);
        let beta = t.beta_with_windings(f, &[1, 0], &mut rng).unwrap();
        assert!(edge_loop_potential(&t.complex, &beta, &t.handles[0].0, f.zero()).is_err());
        let gamma = vec![f.zero(); 7];
        let cyc = DecoratedCycle {
            carrier: Carrier::EdgeLoop(t.handles[0].0.clone()),
            gamma,
        };
        assert!(!check_potential(&t.complex, &beta, &cyc).unwrap().ok());
    }
}
