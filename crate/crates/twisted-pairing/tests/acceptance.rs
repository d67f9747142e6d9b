use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::Parser;
use rand::Rng;
use twisted_pairing::bounds::{
    a_m_bound, brute_force_independent, eigenvalue_pairing, folk_independent, gram_bound, semicharacteristic,
    shift_identity_check, AmWitness, DualInstance, FamilyInput, FamilyMember, FolkVerdict, IdentityStatus,
    IntersectionForm, WeightedEulerData,
};
use twisted_pairing::cli::{run, Cli};
use twisted_pairing::conealg::{synthetic_extended, ConeElement, FloerModel, Slope, SyntheticOptions};
use twisted_pairing::covers::CyclicCover;
use twisted_pairing::cycles::{
    bullet_records, edge_loop_potential, equivariant_cocycle_surface, intersect, lift_class, pushoff, symmetry_defect,
    IntersectionRecord,
};
use twisted_pairing::surfaces::{self, Surface};
use twisted_pairing::{les_dimension_check, Cochain, Field, Matrix, Scalar};

type Outcome = Result<String, Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return Err(format!($($m)+).into());
        }
    };
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn surfaces_under_test() -> Vec<Surface> {
    vec![surfaces::torus(), surfaces::genus(2).unwrap()]
}

fn surface_model(s: &Surface, f: Field, w: [i64; 2], seed: u64) -> twisted_pairing::Result<FloerModel> {
    let beta = s.beta_with_windings(f, &w, &mut twisted_pairing::rng(seed))?;
    FloerModel::from_simplicial(&s.complex, &beta)
}

fn random_cocycle<R: Rng>(z: &Matrix, rng: &mut R) -> Vec<Scalar> {
    let c = z.field().random_vec(rng, z.cols());
    z.mul_vec(&c)
}

fn repeat(l: &[usize], n: usize) -> Vec<usize> {
    l.iter().copied().cycle().take(l.len() * n).collect()
}

fn then_reversed(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = a.to_vec();
    out.push(a[0]);
    out.extend(b.iter().rev().take(b.len() - 1));
    out
}

// Loop pairs whose decorations close up for the given windings of β.
fn loop_pairs(s: &Surface, w: [i64; 2], p: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (a, b) = s.handles[0].clone();
    let mut out = match w {
        [0, 0] => vec![(a.clone(), b.clone()), (b.clone(), a.clone())],
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

fn figure_eight() -> Outcome {
    let bullet = |field: &str| -> Result<String, String> {
        let cli = Cli::try_parse_from(["twisted-pairing", "--field", field, "bullet", "--records", "figure_eight.json"])
            .map_err(|e| e.to_string())?;
        let r = run(&cli);
        if r.exit != 0 {
            return Err(format!("exit {}", r.exit));
        }
        r.text
            .lines()
            .find_map(|l| l.strip_prefix("bullet "))
            .map(str::to_string)
            .ok_or_else(|| "no bullet line".to_string())
    };
    for f in ["q", "p:3", "p:5", "p:7"] {
        let v = bullet(f)?;
        ensure!(v == "2", "over {f} printed {v}");
    }
    let v = bullet("p:2")?;
    ensure!(v == "0", "over GF(2) printed {v}");
    Ok("2 over ℚ, GF(3), GF(5), GF(7); 0 over GF(2)".into())
}

fn record_symmetry() -> Outcome {
    let mut rng = twisted_pairing::rng(101);
    let fields = [gf(2), gf(3), gf(5), gf(7), Field::Rationals];
    for i in 0..100 {
        let f = fields[i % fields.len()];
        let records: Vec<IntersectionRecord> = (0..rng.gen_range(0..10))
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                IntersectionRecord::new(sign, f.random(&mut rng), f.random(&mut rng))
            })
            .collect();
        for c0 in 1..=3 {
            for c1 in 1..=3 {
                let d = symmetry_defect(f, &records, c0, c1);
                ensure!(d.is_zero(), "instance {i} over {f}, codims ({c0},{c1}): defect {d}");
            }
        }
    }
    Ok("100 configurations, codimensions 1..3".into())
}

fn covering_descent() -> Outcome {
    let t = surfaces::torus();
    let mut rng = twisted_pairing::rng(102);
    let mut checked = 0;
    for p in [2, 3, 5] {
        let f = gf(p);
        let beta = t.beta_with_windings(f, &[1, 0], &mut rng)?;
        let cover = CyclicCover::new(&t.complex, &beta)?;
        let cells = cover.total().count(1);
        for _ in 0..100 {
            let x = Cochain::new(1, f.random_vec(&mut rng, cells));
            let y = Cochain::new(1, f.random_vec(&mut rng, cells));
            let qx = cover.q_power(&x, 1);
            let q2x = cover.q_power(&x, 2);
            let square = q2x.sub(&qx.scale(&f.int(2))).add(&x);
            let vanish = cover.iota(&square, &y)?;
            ensure!(vanish.is_zero(), "p={p}: ι((q−1)²x, y) = {vanish}");
            let diff = cover.iota(&qx, &y)? - cover.iota(&x, &y)?;
            let base = t.complex.integrate(&t.complex.cup(&cover.pushdown(&x), &cover.pushdown(&y)))?;
            ensure!(diff == base, "p={p}: ι(qx, y) − ι(x, y) = {diff}, ∫x·y = {base}");
            checked += 1;
        }
    }
    Ok(format!("{checked} cochain pairs on the torus covers, p ∈ {{2, 3, 5}}"))
}

fn les_dimensions() -> Outcome {
    let f = gf(3);
    let mut checked = 0;
    for s in surfaces_under_test() {
        for w in [[0, 1], [1, 0], [1, 1]] {
            let model = surface_model(&s, f, w, 103)?;
            let cone = model.cone_complex()?;
            let report = les_dimension_check(&cone, &model.beta_map()?);
            ensure!(report.holds(), "{} w={w:?}: {report:?}", s.name);
            for (k, b) in cone.betti() {
                ensure!(
                    report.rows.iter().any(|r| r.degree == k && r.cone_dim == b) || b == 0,
                    "{} w={w:?}: cone dimension in degree {k} not reported",
                    s.name
                );
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} surface models over GF(3)"))
}

fn iota_chain_map() -> Outcome {
    let mut checked = 0;
    for s in surfaces_under_test() {
        for f in [gf(3), Field::Rationals] {
            for w in [[0, 0], [1, 0], [1, 1]] {
                if f == Field::Rationals && w != [0, 0] {
                    continue;
                }
                let model = surface_model(&s, f, w, 104)?;
                let defect = model.iota_chain_map_defect()?;
                ensure!(defect.is_none(), "{} {f} w={w:?}: defect at {defect:?}", s.name);
                checked += 1;
            }
        }
    }
    Ok(format!("every basis pair on {checked} surface models"))
}

fn pairing_identities() -> Outcome {
    let mut rng = twisted_pairing::rng(106);
    let mut models = 0;
    for s in surfaces_under_test() {
        for (f, w) in [(gf(3), [1, 0]), (gf(5), [1, 1]), (Field::Rationals, [0, 0])] {
            let model = surface_model(&s, f, w, 105)?;
            let n2 = 2 * model.n;
            let cone = model.cone_complex()?;
            let plus = model.complex(Slope::One)?;
            for i in 0..100 {
                let k = (i as i64) % (n2 + 1);
                let za = cone.d(k).kernel();
                let zb = cone.d(n2 - k).kernel();
                let a = model.cone_element(k, &random_cocycle(&za, &mut rng))?;
                let b = model.cone_element(n2 - k, &random_cocycle(&zb, &mut rng))?;
                let defect = model.symmetry_defect(&a, &b)?;
                ensure!(defect.is_zero(), "{} {f}: symmetry defect {defect} in degree {k}", s.name);

                let x1 = random_cocycle(&plus.d(n2 - k).kernel(), &mut rng);
                let only_x = ConeElement::new(n2 - k, vec![f.zero(); b.xi.len()], x1.clone());
                let literal = -(f.sign(k) * model.pair(Slope::One, n2 - k, &x1, &a.xi)?);
                let got = model.iota(&a, &only_x)?;
                ensure!(got == literal, "{} {f}: ι(a, (0, x1)) = {got}, literal form {literal}", s.name);
            }
            models += 1;
        }
    }
    Ok(format!("100 cocycle pairs on each of {models} surface models"))
}

fn nondegeneracy() -> Outcome {
    let mut checked = 0;
    for s in surfaces_under_test() {
        for f in [gf(2), gf(3), gf(5), Field::Rationals] {
            for w in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                if f == Field::Rationals && w != [0, 0] {
                    continue;
                }
                let model = surface_model(&s, f, w, 107)?;
                let report = model.nondegeneracy_report()?;
                if report.pairing_nondegenerate {
                    ensure!(report.full_rank(), "{} {f} w={w:?}: {report:?}", s.name);
                    checked += 1;
                }
            }
        }
    }
    ensure!(checked > 0, "no model had a nondegenerate pairing");
    Ok(format!("I_cone full rank on {checked} models"))
}

fn recovery() -> Outcome {
    let mut rng = twisted_pairing::rng(108);
    let (mut cover_checked, mut cone_checked, mut nonzero) = (0, 0, 0);
    for s in surfaces_under_test() {
        for f in [gf(3), gf(5), Field::Rationals] {
            let windings: &[[i64; 2]] = match f {
                Field::Rationals => &[[0, 0]],
                _ => &[[0, 0], [1, 0], [1, 1]],
            };
            let p = f.characteristic().max(1) as usize;
            for &w in windings {
                let beta = s.beta_with_windings(f, &w, &mut rng)?;
                let model = FloerModel::from_simplicial(&s.complex, &beta)?;
                let cover = match f {
                    Field::Rationals => None,
                    _ => Some(CyclicCover::new(&s.complex, &beta)?),
                };
                for (l0, l1) in loop_pairs(&s, w, p) {
                    let d0 = edge_loop_potential(&s.complex, &beta, &l0, f.random(&mut rng))?;
                    let d1 = edge_loop_potential(&s.complex, &beta, &l1, f.random(&mut rng))?;
                    let p0 = pushoff(&s.complex, &beta, &d0)?;
                    let p1 = pushoff(&s.complex, &beta, &d1)?;
                    let bullet = bullet_records(f, &intersect(&s.complex, &beta, &d0, &p1)?);
                    if !bullet.is_zero() {
                        nonzero += 1;
                    }
                    if let Some(cover) = &cover {
                        let x0 = lift_class(cover, &p0)?;
                        let x1 = lift_class(cover, &p1)?;
                        let i = cover.iota(&x0.cocycle, &x1.cocycle)?;
                        ensure!(i == bullet, "{} {f} w={w:?}: I_cover = {i}, bullet = {bullet}", s.name);
                        cover_checked += 1;
                    }
                    let e0 = equivariant_cocycle_surface(&s.complex, &beta, &p0)?;
                    let e1 = equivariant_cocycle_surface(&s.complex, &beta, &p1)?;
                    let a = ConeElement::new(1, e0.xi.values, e0.x.values);
                    let b = ConeElement::new(1, e1.xi.values, e1.x.values);
                    let i = model.i_cone(&a, &b)?;
                    ensure!(i == -bullet.clone(), "{} {f} w={w:?}: I_cone = {i}, bullet = {bullet}", s.name);
                    cone_checked += 1;
                }
            }
        }
    }
    ensure!(cover_checked >= 6 && cone_checked >= 6, "too few pairs");
    ensure!(nonzero > 0, "every bullet value vanished");
    Ok(format!(
        "{cover_checked} pairs via covers (GF(3), GF(5)), {cone_checked} via cones (GF(3), GF(5), ℚ), {nonzero} nonzero"
    ))
}

// Dimensions symmetric under k ↔ n − k; skew or char-2 middle pairings need an even middle.
fn symmetric_dims<R: Rng>(n: i64, even_middle: bool, rng: &mut R) -> Vec<usize> {
    let mut dims = vec![0; n as usize + 1];
    for k in 0..=n as usize / 2 {
        let mut d = rng.gen_range(0..3);
        if 2 * k == n as usize && even_middle {
            d = 2 * rng.gen_range(0..2);
        }
        dims[k] = d;
        dims[n as usize - k] = d;
    }
    dims
}

fn supertraces() -> Outcome {
    let mut rng = twisted_pairing::rng(109);
    let fields = [gf(2), gf(3), gf(5), gf(7), Field::Rationals];

    let mut spheres = 0;
    for f in fields {
        for n in 1..=10 {
            let inst = DualInstance::sphere(f, n);
            ensure!(inst.supertrace() == f.sign(n), "sphere {f} n={n}: Str = {}", inst.supertrace());
            ensure!(
                inst.identities()?.status("sphere") == Some(&IdentityStatus::Holds),
                "sphere {f} n={n}: identity not asserted"
            );
            spheres += 1;
        }
    }

    let mut even = 0;
    for i in 0..60 {
        let f = fields[1 + i % 4];
        let n = 2 * rng.gen_range(1..4);
        let inst = DualInstance::random(f, n, &symmetric_dims(n, true, &mut rng), &mut rng)?;
        ensure!(inst.is_dual(), "even instance {i} is not dual");
        let chi: i64 = inst.dims().iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        let twice = f.int(2) * inst.supertrace();
        ensure!(twice == f.int(chi), "{f} n={n}: 2·Str = {twice}, χ = {chi}");
        even += 1;
    }

    let mut odd = 0;
    let f2 = gf(2);
    for i in 0..60 {
        let n = 2 * rng.gen_range(0..3) + 1;
        let inst = DualInstance::random(f2, n, &symmetric_dims(n, false, &mut rng), &mut rng)?;
        ensure!(inst.is_dual(), "odd instance {i} is not dual");
        let dims: Vec<u64> = inst.dims().iter().map(|&d| d as u64).collect();
        let half = semicharacteristic(&dims, n)?;
        ensure!(
            inst.supertrace() == f2.int(half as i64),
            "n={n} dims {dims:?}: Str = {}, χ_1/2 = {half}",
            inst.supertrace()
        );
        odd += 1;
    }

    let mut eigen = 0;
    for i in 0..60 {
        let n = rng.gen_range(1..5);
        let inst = DualInstance::random(f2, n, &symmetric_dims(n, true, &mut rng), &mut rng)?;
        let pairing = eigenvalue_pairing(f2, n, &inst.blocks)?;
        ensure!(pairing.holds(), "GF(2) instance {i}, n={n}: unmatched {:?}", pairing.unmatched);
        eigen += 1;
    }
    Ok(format!(
        "{spheres} spheres, {even} even-dimensional, {odd} odd over GF(2), {eigen} eigenvalue pairings"
    ))
}

fn bounds() -> Outcome {
    let mut rng = twisted_pairing::rng(110);

    let mut folk = 0;
    for i in 0..300 {
        let f = if i % 2 == 0 { gf(2) } else { gf(3) };
        let p = f.characteristic() as i64;
        let dim = rng.gen_range(1..=6);
        let r = rng.gen_range(1..=dim);
        let a = Matrix::random_invertible(f, dim, &mut rng);
        let diag: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        let mut d = Matrix::zeros(f, dim, dim);
        for (j, &v) in diag.iter().enumerate() {
            d.set(j, j, f.int(v));
        }
        let inv = a.inverse().ok_or("random invertible matrix is singular")?;
        let form = IntersectionForm::new(2, a.transpose().mul(&d).mul(&a))?;
        let classes = inv.select_columns(&(0..r).collect::<Vec<_>>());
        let chis: Vec<i64> = diag[..r].iter().map(|&v| -v).collect();
        let report = folk_independent(&classes, &chis, &form)?;
        let brute = brute_force_independent(&classes).ok_or("brute force out of range")?;
        let expected = diag[..r].iter().all(|&v| v.rem_euclid(p) != 0);
        ensure!((report.verdict == FolkVerdict::Independent) == expected, "instance {i}: {:?}", report.verdict);
        ensure!(!expected || brute, "instance {i}: folk says independent, brute force disagrees");

        // Dependent families must never be certified.
        let mut twice = classes.clone();
        if r >= 2 {
            let c0 = classes.column(0);
            for (row, v) in c0.into_iter().enumerate() {
                twice.set(row, 1, v);
            }
            let report = folk_independent(&twice, &chis, &form)?;
            ensure!(report.verdict != FolkVerdict::Independent, "instance {i}: repeated class certified");
            ensure!(brute_force_independent(&twice) == Some(false), "instance {i}: brute force misses repetition");
        }
        folk += 1;
    }

    let q = Field::Rationals;
    let mut isotropic = 0;
    let mut attempts = 0;
    while isotropic < 200 {
        attempts += 1;
        ensure!(attempts < 2000, "could not generate nondegenerate families");
        let m = rng.gen_range(1..=3);
        let dim = 2 * m;
        let mut h = Matrix::zeros(q, dim, dim);
        for j in 0..m {
            h.set(j, m + j, q.one());
            h.set(m + j, j, q.one());
        }
        // A random isometry of the hyperbolic form carries span(e_1..e_m) to a random Lagrangian.
        let a = random_int_invertible(q, m, &mut rng);
        let a_inv_t = a.inverse().ok_or("singular")?.transpose();
        let mut s = Matrix::zeros(q, m, m);
        for x in 0..m {
            for y in x + 1..m {
                let v = q.int(rng.gen_range(-2..=2));
                s.set(x, y, v.clone());
                s.set(y, x, -v);
            }
        }
        let mut g = Matrix::zeros(q, dim, dim);
        g.paste(0, 0, &a);
        g.paste(0, m, &a.mul(&s));
        g.paste(m, m, &a_inv_t);
        let w = g.select_columns(&(0..m).collect::<Vec<_>>());

        let r = rng.gen_range(1..=dim);
        let inside = rng.gen_range(0..=r / 2);
        let mut cols = Vec::new();
        for _ in 0..inside {
            let c: Vec<Scalar> = (0..m).map(|_| q.int(rng.gen_range(-3..=3))).collect();
            cols.push(w.mul_vec(&c));
        }
        for _ in inside..r {
            cols.push((0..dim).map(|_| q.int(rng.gen_range(-3..=3))).collect());
        }
        let classes = Matrix::from_columns(q, dim, &cols);
        let form = IntersectionForm::new(2, h)?;
        let gram = form.gram(&classes)?;
        if gram.rank() < r {
            continue;
        }
        let input = FamilyInput {
            n: 2,
            members: (0..r)
                .map(|j| FamilyMember {
                    label: format!("L{j}"),
                    chi: 0,
                    bullet: Some(gram.get(j, j).clone()),
                })
                .collect(),
            gram,
            classes: Some(classes),
            form: Some(form),
            isotropic: Some(w),
        };
        let report = gram_bound(&input)?;
        let iso = report.isotropic.ok_or("no isotropic check")?;
        ensure!(iso.satisfied == Some(true), "isotropic instance {isotropic}: {iso:?}");
        ensure!(iso.dim_intersection <= r / 2, "isotropic instance {isotropic}: {iso:?}");
        ensure!(iso.dim_intersection >= inside.min(iso.dim_span), "intersection too small: {iso:?}");
        isotropic += 1;
    }

    for dim in 1..=5 {
        let form = IntersectionForm::new(2, Matrix::identity(q, dim).scale(&q.int(-2)))?;
        let classes = random_int_invertible(q, dim, &mut rng);
        let gram = form.gram(&classes)?;
        let input = FamilyInput {
            n: 2,
            members: (0..dim).map(|j| FamilyMember { label: format!("S{j}"), chi: 2, bullet: Some(gram.get(j, j).clone()) }).collect(),
            gram,
            classes: Some(classes),
            form: Some(form),
            isotropic: Some(Matrix::zeros(q, dim, 1)),
        };
        let iso = gram_bound(&input)?.isotropic.ok_or("no isotropic check")?;
        ensure!(iso.definite && iso.dim_intersection == 0 && iso.satisfied == Some(true), "definite case: {iso:?}");
    }

    for m in 1..=12 {
        ensure!(a_m_bound(m) == m.div_ceil(2), "a_m_bound({m}) = {}", a_m_bound(m));
        let w = AmWitness::new(m)?;
        ensure!(w.verified(), "A_{m} witness fails: {w:?}");
    }
    Ok(format!("{folk} folk instances, {isotropic} isotropic instances, definite case, A_1..A_12"))
}

fn random_int_invertible<R: Rng>(f: Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let m = Matrix::from_ints(f, &rows);
        if m.rank() == n {
            return m;
        }
    }
}

fn hexagon_and_cardy() -> Outcome {
    let mut rng = twisted_pairing::rng(111);
    let mut coboundaries = 0;
    let mut models = 0;
    for f in [gf(3), gf(5), gf(7), Field::Rationals] {
        for n in 1..=3 {
            for _ in 0..3 {
                let opts = SyntheticOptions { n, ..SyntheticOptions::default() };
                let ext = synthetic_extended(f, opts, &mut rng)?;
                ensure!(ext.check_relations()?.all_pass(), "{f} n={n}: flags not satisfied");
                for t in ext.hexagon_on_coboundaries()? {
                    ensure!(t.total().is_zero(), "{f} n={n}: hexagon map {} on a coboundary", t.total());
                    coboundaries += 1;
                }
                let cardy = ext.cardy_check()?;
                ensure!(cardy.defect.is_zero(), "{f} n={n}: Cardy defect {}", cardy.defect);
                models += 1;
            }
        }
    }
    ensure!(coboundaries > 0, "no coboundaries were tested");
    Ok(format!("{models} models, {coboundaries} coboundaries"))
}

fn weighted_mukai() -> Outcome {
    let mut rng = twisted_pairing::rng(112);
    for i in 0..100 {
        let pairs: Vec<(i64, i64)> = (0..rng.gen_range(0..8)).map(|_| (rng.gen_range(-6..6), rng.gen_range(-5..5))).collect();
        let data = WeightedEulerData::new(pairs);
        let chi = data.euler();
        let r = shift_identity_check(&data, chi);
        // Independent oracle: Σσχ_σ shifts by χ.
        let direct: i64 = data.weights.iter().map(|(s, c)| s * c).sum();
        let shifted: i64 = data.weights.iter().map(|(s, c)| (s + 1) * c).sum();
        ensure!(r.holds && r.euler_consistent, "instance {i}: {r:?}");
        ensure!(shifted - direct == chi, "instance {i}: oracle disagrees");
        ensure!(r.derivative == direct, "instance {i}: derivative {} vs {direct}", r.derivative);
    }
    Ok("100 weighted instances".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("figure-eight bullet", figure_eight),
        ("record symmetry", record_symmetry),
        ("covering descent", covering_descent),
        ("cone exact sequence", les_dimensions),
        ("ι chain map", iota_chain_map),
        ("pairing identities", pairing_identities),
        ("nondegeneracy", nondegeneracy),
        ("recovery identity", recovery),
        ("supertrace suite", supertraces),
        ("bounds", bounds),
        ("hexagon and Cardy", hexagon_and_cardy),
        ("weighted Mukai", weighted_mukai),
    ];
    // Written past the test harness capture so the verdicts show in every run.
    let mut out = std::io::stdout().lock();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(detail)) => format!("PASS {:>2} {name}: {detail}", i + 1),
            Ok(Err(e)) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name}: {e}", i + 1)
            }
            Err(_) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name}: panicked", i + 1)
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    drop(out);
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
