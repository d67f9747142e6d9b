//! Command-line interface: loads documents, runs one computation and renders a text or
//! JSON report. Exit codes: 0 success, 2 schema error, 3 axiom failure, 4 identity defect.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::gram_bound;
use crate::complex::GradedComplex;
use crate::conealg::{ConeElement, FloerModel};
use crate::covers::{component_count, CyclicCover};
use crate::cycles::{
    bullet_records, equivariant_cocycle_surface, intersect, intersection_number, lift_class, pushoff,
    symmetry_defect, Carrier, DecoratedCycle, IntersectionRecord,
};
use crate::document::{canonical_json, Document, LoadedSurface, Payload};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::simplicial::SimplicialComplex;

pub const FIXTURES_ENV: &str = "TWISTED_PAIRING_FIXTURES";

#[derive(Parser, Debug)]
#[command(name = "twisted-pairing", version, about = "Exact twisted intersection pairings on cochain models")]
pub struct Cli {
    /// Coefficient field: `q` or `p:<prime>`; overrides the document's field.
    #[arg(long, global = true, value_parser = parse_field)]
    pub field: Option<Field>,
    /// Seed for generated data.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti numbers of a complex, cochain or surface document.
    Cohomology { file: PathBuf },
    /// The cyclic cover defined by a class `β`, with dimension and cohomology checks.
    Cover {
        file: PathBuf,
        /// Degree of the cover; the field becomes GF(p).
        #[arg(long)]
        p: u64,
        #[arg(long)]
        beta: Option<String>,
    },
    /// The pairing of two decorated cycles by the covering and cone routes.
    Pair {
        file: PathBuf,
        #[arg(long = "class", num_args = 1, required = true)]
        classes: Vec<String>,
    },
    /// The bullet pairing of two decorated cycles or of intersection records.
    Bullet {
        file: Option<PathBuf>,
        /// Two cycle ids, `a,b`.
        #[arg(long, value_delimiter = ',')]
        cycles: Vec<String>,
        /// A records document.
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Axioms, the chain-map identity, nondegeneracy and the symmetry defect of a model.
    ConeCheck { file: PathBuf },
    /// Independence and rank bounds for a family.
    Bound { file: PathBuf },
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

/// A rendered command result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub exit: i32,
    pub json: Value,
    pub text: String,
}

impl Report {
    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.text.clone(),
            ReportFormat::Json => canonical_json(&self.json),
        }
    }
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Axiom(_) | Error::NotCocycle(_) | Error::NotChainMap(_) => 3,
            Error::Defect(_) => 4,
            _ => 2,
        }
    }
}

/// Residue or fraction without the modulus, for text reports.
pub fn plain(s: &Scalar) -> String {
    match s.residue() {
        Some(v) => v.to_string(),
        None => s.to_string(),
    }
}

/// The fixture directory: `$TWISTED_PAIRING_FIXTURES` or the bundled one.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// A path as given, or relative to the fixture directory when it does not exist.
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let candidate = fixtures_dir().join(path);
    if candidate.exists() {
        candidate
    } else {
        path.to_path_buf()
    }
}

fn load(path: &Path) -> Result<Document> {
    Document::load(&resolve(path))
}

struct Lines(String);

impl Lines {
    fn new(field: Field) -> Self {
        Lines(format!("field {field}\n"))
    }

    fn push(&mut self, key: &str, value: impl std::fmt::Display) {
        self.0.push_str(&format!("{key} {value}\n"));
    }
}

pub fn run(cli: &Cli) -> Report {
    let result = match &cli.command {
        Command::Cohomology { file } => cohomology(file, cli.field),
        Command::Cover { file, p, beta } => cover(file, *p, beta.as_deref()),
        Command::Pair { file, classes } => pair(file, classes, cli.field),
        Command::Bullet { file, cycles, records } => bullet(file.as_deref(), cycles, records.as_deref(), cli.field),
        Command::ConeCheck { file } => cone_check(file, cli.field, cli.seed),
        Command::Bound { file } => bound(file, cli.field),
    };
    result.unwrap_or_else(|e| Report {
        exit: e.exit_code(),
        json: json!({ "error": e.to_string(), "exit": e.exit_code() }),
        text: format!("error: {e}\n"),
    })
}

/// Parses arguments, runs the command, prints the report and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = run(&cli);
    let out = report.render(cli.report);
    if report.exit == 0 || cli.report == ReportFormat::Json {
        print!("{out}");
    } else {
        eprint!("{out}");
    }
    report.exit
}

fn betti_json(c: &GradedComplex) -> Value {
    Value::Array(c.betti().into_iter().map(|(_, b)| json!(b)).collect())
}

fn surface_of(doc: &Document, field: Option<Field>) -> Result<LoadedSurface> {
    let f = doc.field(field)?;
    match &doc.payload {
        Payload::Surface(s) => s.build(f),
        Payload::DecoratedCycle(d) => d.as_surface().build(f),
        other => Err(Error::Schema(format!("expected a surface document, got `{}`", other.kind()))),
    }
}

fn cohomology(file: &Path, field: Option<Field>) -> Result<Report> {
    let doc = load(file)?;
    let f = doc.field(field)?;
    let mut lines = Lines::new(f);
    let mut out = json!({ "command": "cohomology", "field": f.to_string(), "kind": doc.payload.kind() });
    let k: SimplicialComplex = match &doc.payload {
        Payload::Complex(c) => c.build()?,
        Payload::Cochain(c) => {
            let (k, x) = c.build(f)?;
            let closed = k.coboundary(&x).is_zero();
            out["cocycle"] = json!(closed);
            lines.push("cocycle", closed);
            k
        }
        Payload::Surface(_) | Payload::DecoratedCycle(_) => {
            let s = surface_of(&doc, Some(f))?;
            let mut twisted = serde_json::Map::new();
            for (id, beta) in &s.betas {
                let model = FloerModel::from_simplicial(&s.surface.complex, beta)?;
                let cone = model.cone_complex()?;
                let h = cone.cohomology();
                let dims: Vec<usize> = cone.degrees().map(|k| h.dim(k)).collect();
                lines.push(&format!("cone[{id}]"), format!("{dims:?}"));
                twisted.insert(id.clone(), json!(dims));
            }
            out["cone"] = Value::Object(twisted);
            s.surface.complex
        }
        other => return Err(Error::Schema(format!("cohomology needs a complex, cochain or surface, got `{}`", other.kind()))),
    };
    let c = k.cochain_complex(f);
    for (deg, b) in c.betti() {
        lines.push(&format!("H^{deg}"), b);
    }
    lines.push("euler", c.euler_characteristic());
    out["betti"] = betti_json(&c);
    out["euler"] = json!(c.euler_characteristic());
    Ok(Report {
        exit: 0,
        json: out,
        text: lines.0,
    })
}

fn cover(file: &Path, p: u64, beta: Option<&str>) -> Result<Report> {
    let f = Field::prime(p)?;
    let doc = load(file)?;
    let (k, b) = match &doc.payload {
        Payload::Cochain(c) => {
            let (k, x) = c.build(f)?;
            if x.degree != 1 {
                return Err(Error::Schema("the cover needs a degree-1 cochain".into()));
            }
            (k, x)
        }
        _ => {
            let s = surface_of(&doc, Some(f))?;
            let (_, b) = s.pick_beta(beta)?;
            (s.surface.complex.clone(), b.clone())
        }
    };
    let cov = CyclicCover::new(&k, &b)?;
    let base = k.cochain_complex(f);
    let total = cov.total_complex();
    let free = (0..=k.dim()).all(|d| total.dim(d as i64) == p as usize * base.dim(d as i64));
    let twisted = cov.twisted_complex()?;
    let tw_dims: Vec<usize> = twisted.complex.degrees().map(|d| twisted.complex.cohomology().dim(d)).collect();
    let invariant = cov.invariant_cohomology_dims();
    let mut lines = Lines::new(f);
    lines.push("p", p);
    lines.push("base_cells", format!("{:?}", base.dims()));
    lines.push("cover_cells", format!("{:?}", total.dims()));
    lines.push("free", free);
    lines.push("components", component_count(cov.total()));
    lines.push("base_betti", format!("{:?}", base.betti().iter().map(|x| x.1).collect::<Vec<_>>()));
    lines.push("cover_betti", format!("{:?}", total.betti().iter().map(|x| x.1).collect::<Vec<_>>()));
    lines.push("invariant_betti", format!("{invariant:?}"));
    lines.push("twisted_betti", format!("{tw_dims:?}"));
    let out = json!({
        "command": "cover",
        "field": f.to_string(),
        "p": p,
        "base_cells": base.dims(),
        "cover_cells": total.dims(),
        "free": free,
        "components": component_count(cov.total()),
        "base_betti": betti_json(&base),
        "cover_betti": betti_json(&total),
        "invariant_betti": invariant,
        "twisted_betti": tw_dims,
    });
    Ok(Report {
        exit: if free { 0 } else { 4 },
        json: out,
        text: lines.0,
    })
}

fn dual(k: &SimplicialComplex, beta: &crate::simplicial::Cochain, c: &DecoratedCycle) -> Result<DecoratedCycle> {
    match c.carrier {
        Carrier::EdgeLoop(_) => pushoff(k, beta, c),
        Carrier::DualLoop(_) => Ok(c.clone()),
    }
}

/// Values of the pairing of two decorated cycles of a surface by every available route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairValues {
    pub bullet: Option<Scalar>,
    pub cover: Option<Scalar>,
    pub cone: Scalar,
    /// `I_cover = bullet` and `I_cone = (−1)^{n(n+1)/2}·bullet` wherever defined.
    pub consistent: bool,
}

pub fn pair_values(s: &LoadedSurface, a: &str, b: &str) -> Result<PairValues> {
    let (ba, ca) = s.cycle(a)?;
    let (bb, cb) = s.cycle(b)?;
    if ba != bb {
        return Err(Error::Schema(format!("cycles `{a}` and `{b}` use different classes β")));
    }
    let beta = s.beta(ba)?;
    let k = &s.surface.complex;
    let f = s.field;
    let (p0, p1) = (dual(k, beta, ca)?, dual(k, beta, cb)?);
    let bullet = match ca.carrier {
        Carrier::EdgeLoop(_) => Some(bullet_records(f, &intersect(k, beta, ca, &p1)?)),
        Carrier::DualLoop(_) => None,
    };
    let cover = match f {
        Field::Prime(_) => {
            let cov = CyclicCover::new(k, beta)?;
            let x0 = lift_class(&cov, &p0)?;
            let x1 = lift_class(&cov, &p1)?;
            Some(cov.iota(&x0.cocycle, &x1.cocycle)?)
        }
        Field::Rationals => None,
    };
    let model = FloerModel::from_simplicial(k, beta)?;
    let e0 = equivariant_cocycle_surface(k, beta, &p0)?;
    let e1 = equivariant_cocycle_surface(k, beta, &p1)?;
    let cone = model.i_cone(
        &ConeElement::new(1, e0.xi.values, e0.x.values),
        &ConeElement::new(1, e1.xi.values, e1.x.values),
    )?;
    let consistent = match &bullet {
        Some(bv) => cover.as_ref().is_none_or(|c| c == bv) && cone == -bv.clone(),
        None => cover.as_ref().is_none_or(|c| *c == -cone.clone()),
    };
    Ok(PairValues {
        bullet,
        cover,
        cone,
        consistent,
    })
}

fn pair(file: &Path, classes: &[String], field: Option<Field>) -> Result<Report> {
    if classes.len() != 2 {
        return Err(Error::Schema(format!("pair needs two classes, got {}", classes.len())));
    }
    let doc = load(file)?;
    let s = surface_of(&doc, field)?;
    let v = pair_values(&s, &classes[0], &classes[1])?;
    let mut lines = Lines::new(s.field);
    lines.push("classes", classes.join(","));
    let opt = |x: &Option<Scalar>| x.as_ref().map_or("n/a".to_string(), plain);
    lines.push("cover", opt(&v.cover));
    lines.push("cone", plain(&v.cone));
    lines.push("bullet", opt(&v.bullet));
    lines.push("consistent", v.consistent);
    let out = json!({
        "command": "pair",
        "field": s.field.to_string(),
        "classes": classes,
        "cover": v.cover.as_ref().map(|x| x.to_string()),
        "cone": v.cone.to_string(),
        "bullet": v.bullet.as_ref().map(|x| x.to_string()),
        "consistent": v.consistent,
    });
    Ok(Report {
        exit: if v.consistent { 0 } else { 4 },
        json: out,
        text: lines.0,
    })
}

fn records_report(f: Field, records: &[IntersectionRecord], codims: [u32; 2], extra: Value) -> Report {
    let value = bullet_records(f, records);
    let defect = symmetry_defect(f, records, codims[0], codims[1]);
    let mut lines = Lines::new(f);
    lines.push("bullet", plain(&value));
    lines.push("intersection_number", intersection_number(records));
    lines.push("points", records.len());
    lines.push("symmetry_defect", plain(&defect));
    let mut out = json!({
        "command": "bullet",
        "field": f.to_string(),
        "bullet": value.to_string(),
        "intersection_number": intersection_number(records),
        "points": records.len(),
        "symmetry_defect": defect.to_string(),
    });
    if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
        o.extend(e);
    }
    Report {
        exit: if defect.is_zero() { 0 } else { 4 },
        json: out,
        text: lines.0,
    }
}

fn bullet(file: Option<&Path>, cycles: &[String], records: Option<&Path>, field: Option<Field>) -> Result<Report> {
    let path = match (file, records) {
        (Some(_), Some(_)) => return Err(Error::Schema("give either a document or --records".into())),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => return Err(Error::Schema("bullet needs a document or --records".into())),
    };
    let doc = load(path)?;
    if let Payload::Records(r) = &doc.payload {
        let f = doc.field(field)?;
        return Ok(records_report(f, &r.build(f)?, r.codims, json!({})));
    }
    if records.is_some() {
        return Err(Error::Schema(format!("--records expects a records document, got `{}`", doc.payload.kind())));
    }
    let [a, b] = cycles else {
        return Err(Error::Schema("--cycles needs two ids".into()));
    };
    let s = surface_of(&doc, field)?;
    let (ba, ca) = s.cycle(a)?;
    let (bb, cb) = s.cycle(b)?;
    if ba != bb {
        return Err(Error::Schema(format!("cycles `{a}` and `{b}` use different classes β")));
    }
    let beta = s.beta(ba)?;
    let k = &s.surface.complex;
    let recs = intersect(k, beta, ca, &dual(k, beta, cb)?)?;
    Ok(records_report(s.field, &recs, [1, 1], json!({ "cycles": [a, b] })))
}

fn cone_check(file: &Path, field: Option<Field>, seed: u64) -> Result<Report> {
    let doc = load(file)?;
    let f = doc.field(field)?;
    let model = match &doc.payload {
        Payload::FloerModel(m) => m.build(f)?,
        other => return Err(Error::Schema(format!("cone-check needs a floer_model, got `{}`", other.kind()))),
    };
    let axioms = model.check_axioms();
    let chain = model.iota_chain_map_defect()?;
    let nondeg = model.nondegeneracy_report()?;
    let cone = model.cone_complex()?;
    let h = cone.cohomology();
    let mut rng = crate::rng(seed);
    let mut checked = 0usize;
    let mut nonzero = 0usize;
    for k in cone.degrees() {
        let l = 2 * model.n - k;
        if l < cone.min_degree() || l > cone.max_degree() {
            continue;
        }
        let ra = h.reps(k, cone.dim(k));
        let rb = h.reps(l, cone.dim(l));
        for _ in 0..4 {
            if ra.cols() == 0 || rb.cols() == 0 {
                break;
            }
            let a = ra.mul_vec(&f.random_vec(&mut rng, ra.cols()));
            let b = rb.mul_vec(&f.random_vec(&mut rng, rb.cols()));
            let d = model.symmetry_defect(&model.cone_element(k, &a)?, &model.cone_element(l, &b)?)?;
            checked += 1;
            if !d.is_zero() {
                nonzero += 1;
            }
        }
    }
    let mut lines = Lines::new(f);
    for (a, s) in &axioms.entries {
        lines.push(&format!("axiom {a:?}"), serde_json::to_value(s).expect("status")["status"].as_str().unwrap_or("?"));
    }
    lines.push("chain_map", chain.is_none());
    lines.push("pairing_nondegenerate", nondeg.pairing_nondegenerate);
    lines.push("i_full_rank", nondeg.full_rank());
    lines.push("symmetry_checked", checked);
    lines.push("symmetry_nonzero", nonzero);
    let exit = if !axioms.chain_map_axioms_pass() {
        3
    } else if chain.is_some() || nonzero > 0 || (nondeg.pairing_nondegenerate && !nondeg.full_rank()) {
        4
    } else {
        0
    };
    let out = json!({
        "command": "cone-check",
        "field": f.to_string(),
        "axioms": axioms,
        "chain_map_violation": chain,
        "nondegeneracy": nondeg,
        "symmetry": { "checked": checked, "nonzero": nonzero },
    });
    Ok(Report {
        exit,
        json: out,
        text: lines.0,
    })
}

fn bound(file: &Path, field: Option<Field>) -> Result<Report> {
    let doc = load(file)?;
    let f = doc.field(field)?;
    let input = match &doc.payload {
        Payload::Family(d) => d.build(f)?,
        other => return Err(Error::Schema(format!("bound needs a family, got `{}`", other.kind()))),
    };
    let r = gram_bound(&input)?;
    let mut lines = Lines::new(f);
    for (i, m) in r.members.iter().enumerate() {
        lines.push(
            &format!("member {}", m.label),
            format!("chi={} diag={} expected={}", m.chi, plain(r.gram.get(i, i)), plain(&r.expected_diagonal[i])),
        );
    }
    let opt = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
    lines.push("rank", r.rank);
    lines.push("nondegenerate", r.nondegenerate);
    lines.push("diagonal_matches", r.diagonal_matches);
    lines.push("gram_consistent", opt(r.gram_consistent));
    lines.push("independent", opt(r.independent));
    lines.push("rank_lower_bound", r.rank_lower_bound);
    lines.push("ambient_bound", opt(r.ambient_bound));
    if let Some(c) = &r.isotropic {
        lines.push(
            "isotropic",
            format!(
                "span={} w={} meet={} bound={} satisfied={}",
                c.dim_span,
                c.dim_w,
                c.dim_intersection,
                c.bound.map_or("n/a".to_string(), |b| b.to_string()),
                opt(c.satisfied)
            ),
        );
    }
    let mut out = serde_json::to_value(&r).expect("report serializes");
    out["command"] = json!("bound");
    out["field"] = json!(f.to_string());
    Ok(Report {
        exit: if r.ok() { 0 } else { 4 },
        json: out,
        text: lines.0,
    })
}
