//! JSON documents: schema, canonical serialization and loading into library types.
//!
//! Scalars are strings (`"3/7"`, `"-2"` or `"5 mod 11"`), keys are emitted in sorted order
//! and the output is pretty-printed with a trailing newline, so identical documents are
//! byte-identical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{FamilyInput, FamilyMember, IntersectionForm};
use crate::conealg::FloerModel;
use crate::cycles::{check_potential, edge_loop_potential, Carrier, DecoratedCycle, IntersectionRecord};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::simplicial::{Cochain, SimplicialComplex};
use crate::surfaces::{self, Surface};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    /// `q` or `p:<prime>`; a command-line field takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Complex(ComplexDoc),
    Cochain(CochainDoc),
    Surface(SurfaceDoc),
    DecoratedCycle(DecoratedCycleDoc),
    FloerModel(FloerModelDoc),
    Family(FamilyDoc),
    Records(RecordsDoc),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Complex(_) => "complex",
            Payload::Cochain(_) => "cochain",
            Payload::Surface(_) => "surface",
            Payload::DecoratedCycle(_) => "decorated_cycle",
            Payload::FloerModel(_) => "floer_model",
            Payload::Family(_) => "family",
            Payload::Records(_) => "records",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub facets: Vec<Vec<usize>>,
    /// Orient the top simplices coherently and record the fundamental cycle.
    #[serde(default)]
    pub oriented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainDoc {
    pub complex: ComplexDoc,
    pub degree: usize,
    pub values: Vec<String>,
}

/// A built-in surface (`torus`, `genus-<g>`, `sphere`) or explicit facets with handle loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceShape {
    Builtin {
        name: String,
    },
    Explicit {
        name: String,
        facets: Vec<Vec<usize>>,
        handles: Vec<[Vec<usize>; 2]>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BetaDoc {
    /// Windings along `a_1, b_1, a_2, …` plus a coboundary drawn from `seed`.
    Windings { windings: Vec<i64>, seed: u64 },
    Values { values: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HandleSide {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CycleDoc {
    /// A handle loop traversed `repeat` times, with the potential integrated from `start`.
    Handle {
        beta: String,
        handle: usize,
        side: HandleSide,
        #[serde(default = "one")]
        repeat: usize,
        start: String,
    },
    /// A closed vertex path with the potential integrated from `start`.
    Path { beta: String, path: Vec<usize>, start: String },
    /// A carrier with an explicit potential, checked against `beta`.
    Explicit { beta: String, carrier: Carrier, gamma: Vec<String> },
}

fn one() -> usize {
    1
}

impl CycleDoc {
    pub fn beta(&self) -> &str {
        match self {
            CycleDoc::Handle { beta, .. } | CycleDoc::Path { beta, .. } | CycleDoc::Explicit { beta, .. } => beta,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDoc {
    pub surface: SurfaceShape,
    #[serde(default)]
    pub betas: BTreeMap<String, BetaDoc>,
    #[serde(default)]
    pub cycles: BTreeMap<String, CycleDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedCycleDoc {
    pub surface: SurfaceShape,
    pub beta: BetaDoc,
    pub cycle: CycleDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum FloerModelDoc {
    /// Cochains of a closed oriented complex with cup, cup-1 and a 1-cocycle `β`.
    Simplicial { complex: ComplexDoc, beta: Vec<String> },
    Surface { surface: SurfaceShape, beta: BetaDoc },
    /// A generated model with every axiom satisfied.
    Synthetic { n: i64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub label: String,
    pub chi: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bullet: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub n: i64,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub n: i64,
    pub members: Vec<MemberDoc>,
    pub gram: Vec<Vec<String>>,
    /// Rows of the matrix whose columns are the classes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<FormDoc>,
    /// Rows of the matrix whose columns span the isotropic subspace.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropic: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordDoc {
    pub sign: i64,
    pub gamma1: String,
    pub gamma0: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordsDoc {
    pub records: Vec<RecordDoc>,
    /// Codimensions of the two cycles, for the symmetry law.
    #[serde(default = "curve_codims")]
    pub codims: [u32; 2],
}

fn curve_codims() -> [u32; 2] {
    [1, 1]
}

impl Document {
    pub fn new(field: Option<Field>, payload: Payload) -> Self {
        Document {
            version: FORMAT_VERSION,
            field: field.map(|f| f.to_string()),
            payload,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Schema(format!("unsupported format version {}", doc.version)));
        }
        if let Some(f) = &doc.field {
            Field::parse(f).map_err(|e| Error::Schema(e.to_string()))?;
        }
        Ok(doc)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Document::parse(&std::fs::read_to_string(path)?)
    }

    /// Sorted keys, two-space indentation, trailing newline.
    pub fn to_canonical(&self) -> String {
        canonical_json(self)
    }

    /// The document's field, overridden by `field` when given, defaulting to ℚ.
    pub fn field(&self, field: Option<Field>) -> Result<Field> {
        match (field, &self.field) {
            (Some(f), _) => Ok(f),
            (None, Some(s)) => Field::parse(s),
            (None, None) => Ok(Field::Rationals),
        }
    }
}

/// Canonical JSON of any serializable value.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize to JSON");
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values print");
    s.push('\n');
    s
}

fn scalars(field: Field, xs: &[String]) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| field.parse_scalar(s)).collect()
}

fn matrix(field: Field, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed: Vec<Vec<Scalar>> = rows.iter().map(|r| scalars(field, r)).collect::<Result<_>>()?;
    if let Some(w) = parsed.first().map(Vec::len) {
        if parsed.iter().any(|r| r.len() != w) {
            return Err(Error::Schema("ragged matrix".into()));
        }
    }
    Ok(Matrix::from_rows(field, &parsed))
}

pub fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(&m.row(r))).collect()
}

impl ComplexDoc {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexDoc {
            facets: k.simplices(k.dim()).to_vec(),
            oriented: k.fundamental_cycle().is_some(),
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex> {
        let k = SimplicialComplex::from_facets(&self.facets)?;
        if self.oriented {
            k.oriented()
        } else {
            Ok(k)
        }
    }
}

impl CochainDoc {
    pub fn build(&self, field: Field) -> Result<(SimplicialComplex, Cochain)> {
        let k = self.complex.build()?;
        if self.degree > k.dim() || self.values.len() != k.count(self.degree) {
            return Err(Error::Schema(format!(
                "a degree-{} cochain needs {} values, got {}",
                self.degree,
                k.count(self.degree.min(k.dim())),
                self.values.len()
            )));
        }
        let x = Cochain::new(self.degree, scalars(field, &self.values)?);
        Ok((k, x))
    }
}

impl SurfaceShape {
    pub fn build(&self) -> Result<Surface> {
        match self {
            SurfaceShape::Builtin { name } => match name.as_str() {
                "torus" => Ok(surfaces::torus()),
                "sphere" => Ok(Surface {
                    name: "sphere".into(),
                    complex: surfaces::sphere(),
                    handles: Vec::new(),
                }),
                other => {
                    let g = other
                        .strip_prefix("genus-")
                        .and_then(|g| g.parse().ok())
                        .ok_or_else(|| Error::Schema(format!("unknown surface `{other}`")))?;
                    surfaces::genus(g)
                }
            },
            SurfaceShape::Explicit { name, facets, handles } => Ok(Surface {
                name: name.clone(),
                complex: SimplicialComplex::from_facets(facets)?.oriented()?,
                handles: handles.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
            }),
        }
    }
}

impl BetaDoc {
    pub fn build(&self, field: Field, s: &Surface) -> Result<Cochain> {
        match self {
            BetaDoc::Windings { windings, seed } => s.beta_with_windings(field, windings, &mut crate::rng(*seed)),
            BetaDoc::Values { values } => {
                if values.len() != s.complex.count(1) {
                    return Err(Error::Schema(format!(
                        "β needs {} edge values, got {}",
                        s.complex.count(1),
                        values.len()
                    )));
                }
                Ok(Cochain::new(1, scalars(field, values)?))
            }
        }
    }
}

impl CycleDoc {
    pub fn build(&self, field: Field, s: &Surface, beta: &Cochain) -> Result<DecoratedCycle> {
        let k = &s.complex;
        let cycle = match self {
            CycleDoc::Handle {
                handle, side, repeat, start, ..
            } => {
                let (a, b) = s
                    .handles
                    .get(*handle)
                    .ok_or_else(|| Error::Schema(format!("no handle {handle} on {}", s.name)))?;
                let l = if *side == HandleSide::A { a } else { b };
                let path: Vec<usize> = l.iter().copied().cycle().take(l.len() * repeat.max(&1)).collect();
                edge_loop_potential(k, beta, &path, field.parse_scalar(start)?)?
            }
            CycleDoc::Path { path, start, .. } => edge_loop_potential(k, beta, path, field.parse_scalar(start)?)?,
            CycleDoc::Explicit { carrier, gamma, .. } => {
                let c = DecoratedCycle {
                    carrier: carrier.clone(),
                    gamma: scalars(field, gamma)?,
                };
                if c.gamma.len() != c.carrier.len() {
                    return Err(Error::Schema("one potential value per carrier entry".into()));
                }
                let report = check_potential(k, beta, &c)?;
                if !report.ok() {
                    return Err(Error::NotCocycle(format!("γ fails dγ = β at steps {:?}", report.defects)));
                }
                c
            }
        };
        Ok(cycle)
    }
}

/// A surface with its named classes `β` and decorated cycles.
#[derive(Clone, Debug)]
pub struct LoadedSurface {
    pub field: Field,
    pub surface: Surface,
    pub betas: BTreeMap<String, Cochain>,
    /// Cycle id to `(β id, cycle)`.
    pub cycles: BTreeMap<String, (String, DecoratedCycle)>,
}

impl LoadedSurface {
    pub fn cycle(&self, id: &str) -> Result<&(String, DecoratedCycle)> {
        self.cycles
            .get(id)
            .ok_or_else(|| Error::Schema(format!("no cycle `{id}`")))
    }

    pub fn beta(&self, id: &str) -> Result<&Cochain> {
        self.betas.get(id).ok_or_else(|| Error::Schema(format!("no class β `{id}`")))
    }

    /// The only `β`, or the named one.
    pub fn pick_beta(&self, id: Option<&str>) -> Result<(String, &Cochain)> {
        match id {
            Some(id) => Ok((id.to_string(), self.beta(id)?)),
            None if self.betas.len() == 1 => {
                let (k, v) = self.betas.iter().next().expect("one entry");
                Ok((k.clone(), v))
            }
            None => Err(Error::Schema(format!(
                "choose one of the classes β {:?}",
                self.betas.keys().collect::<Vec<_>>()
            ))),
        }
    }
}

impl SurfaceDoc {
    pub fn build(&self, field: Field) -> Result<LoadedSurface> {
        let surface = self.surface.build()?;
        let mut betas = BTreeMap::new();
        for (id, b) in &self.betas {
            let beta = b.build(field, &surface)?;
            if !surface.complex.coboundary(&beta).is_zero() {
                return Err(Error::NotCocycle(format!("β `{id}` is not closed")));
            }
            betas.insert(id.clone(), beta);
        }
        let mut cycles = BTreeMap::new();
        for (id, c) in &self.cycles {
            let beta = betas
                .get(c.beta())
                .ok_or_else(|| Error::Schema(format!("cycle `{id}` refers to unknown β `{}`", c.beta())))?;
            cycles.insert(id.clone(), (c.beta().to_string(), c.build(field, &surface, beta)?));
        }
        Ok(LoadedSurface {
            field,
            surface,
            betas,
            cycles,
        })
    }
}

impl DecoratedCycleDoc {
    /// As a surface document with one class `beta` and one cycle `cycle`.
    pub fn as_surface(&self) -> SurfaceDoc {
        let mut cycle = self.cycle.clone();
        match &mut cycle {
            CycleDoc::Handle { beta, .. } | CycleDoc::Path { beta, .. } | CycleDoc::Explicit { beta, .. } => {
                *beta = "beta".into()
            }
        }
        SurfaceDoc {
            surface: self.surface.clone(),
            betas: BTreeMap::from([("beta".to_string(), self.beta.clone())]),
            cycles: BTreeMap::from([("cycle".to_string(), cycle)]),
        }
    }
}

impl FloerModelDoc {
    pub fn build(&self, field: Field) -> Result<FloerModel> {
        match self {
            FloerModelDoc::Simplicial { complex, beta } => {
                let k = complex.build()?;
                if beta.len() != k.count(1) {
                    return Err(Error::Schema(format!("β needs {} edge values, got {}", k.count(1), beta.len())));
                }
                FloerModel::from_simplicial(&k, &Cochain::new(1, scalars(field, beta)?))
            }
            FloerModelDoc::Surface { surface, beta } => {
                let s = surface.build()?;
                let b = beta.build(field, &s)?;
                FloerModel::from_simplicial(&s.complex, &b)
            }
            FloerModelDoc::Synthetic { n, seed } => FloerModel::synthetic(field, *n, *seed),
        }
    }
}

impl FamilyDoc {
    pub fn build(&self, field: Field) -> Result<FamilyInput> {
        let members = self
            .members
            .iter()
            .map(|m| {
                Ok(FamilyMember {
                    label: m.label.clone(),
                    chi: m.chi,
                    bullet: m.bullet.as_ref().map(|b| field.parse_scalar(b)).transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let gram = matrix(field, &self.gram)?;
        let classes = self.classes.as_ref().map(|c| matrix(field, c)).transpose()?;
        let form = self
            .form
            .as_ref()
            .map(|f| IntersectionForm::new(f.n, matrix(field, &f.matrix)?))
            .transpose()?;
        let isotropic = self.isotropic.as_ref().map(|w| matrix(field, w)).transpose()?;
        Ok(FamilyInput {
            n: self.n,
            members,
            gram,
            classes,
            form,
            isotropic,
        })
    }

    pub fn from_input(input: &FamilyInput) -> Self {
        FamilyDoc {
            n: input.n,
            members: input
                .members
                .iter()
                .map(|m| MemberDoc {
                    label: m.label.clone(),
                    chi: m.chi,
                    bullet: m.bullet.as_ref().map(|b| b.to_string()),
                })
                .collect(),
            gram: matrix_strings(&input.gram),
            classes: input.classes.as_ref().map(matrix_strings),
            form: input.form.as_ref().map(|f| FormDoc {
                n: f.n,
                matrix: matrix_strings(&f.matrix),
            }),
            isotropic: input.isotropic.as_ref().map(matrix_strings),
        }
    }
}

impl RecordsDoc {
    pub fn build(&self, field: Field) -> Result<Vec<IntersectionRecord>> {
        self.records
            .iter()
            .map(|r| {
                if r.sign.abs() != 1 {
                    return Err(Error::Schema(format!("record sign must be ±1, got {}", r.sign)));
                }
                Ok(
                    IntersectionRecord::new(r.sign, field.parse_scalar(&r.gamma1)?, field.parse_scalar(&r.gamma0)?)
                        .labeled(r.label.clone()),
                )
            })
            .collect()
    }

    pub fn from_records(records: &[IntersectionRecord]) -> Self {
        RecordsDoc {
            records: records
                .iter()
                .map(|r| RecordDoc {
                    sign: r.sign,
                    gamma1: r.gamma1.to_string(),
                    gamma0: r.gamma0.to_string(),
                    label: r.label.clone(),
                })
                .collect(),
            codims: curve_codims(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::figure_eight_records;

    #[test]
    fn records_round_trip_byte_stably() {
        let f = Field::prime(5).unwrap();
        let doc = Document::new(Some(f), Payload::Records(RecordsDoc::from_records(&figure_eight_records(f))));
        let text = doc.to_canonical();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_canonical(), text);
        match &back.payload {
            Payload::Records(r) => assert_eq!(r.build(f).unwrap(), figure_eight_records(f)),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn keys_are_sorted() {
        let doc = Document::new(
            None,
            Payload::Complex(ComplexDoc {
                facets: vec![vec![0, 1]],
                oriented: false,
            }),
        );
        let text = doc.to_canonical();
        let positions: Vec<usize> = ["\"facets\"", "\"kind\"", "\"oriented\"", "\"version\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn schema_errors_are_reported() {
        assert!(matches!(Document::parse("{}"), Err(Error::Schema(_))));
        assert!(matches!(
            Document::parse(r#"{"version": 9, "kind": "records", "records": []}"#),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            Document::parse(r#"{"version": 1, "kind": "nope"}"#),
            Err(Error::Schema(_))
        ));
        let doc = Document::parse(r#"{"version": 1, "field": "p:3", "kind": "records", "records": [{"sign": 2, "gamma1": "0", "gamma0": "0"}]}"#).unwrap();
        match doc.payload {
            Payload::Records(r) => assert!(r.build(Field::prime(3).unwrap()).is_err()),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn surface_references_must_resolve() {
        let text = r#"{"version": 1, "kind": "surface", "surface": {"type": "builtin", "name": "torus"},
            "betas": {"w": {"type": "windings", "windings": [0, 0], "seed": 1}},
            "cycles": {"a": {"type": "handle", "beta": "v", "handle": 0, "side": "a", "start": "0"}}}"#;
        let doc = Document::parse(text).unwrap();
        match doc.payload {
            Payload::Surface(s) => assert!(matches!(s.build(Field::Rationals), Err(Error::Schema(_)))),
            _ => panic!("wrong kind"),
        }
    }

    #[test]
    fn surface_loads_cycles_with_potentials() {
        let text = r#"{"version": 1, "field": "p:3", "kind": "surface", "surface": {"type": "builtin", "name": "torus"},
            "betas": {"w": {"type": "windings", "windings": [1, 0], "seed": 1}},
            "cycles": {"a3": {"type": "handle", "beta": "w", "handle": 0, "side": "a", "repeat": 3, "start": "1"},
                       "b": {"type": "handle", "beta": "w", "handle": 0, "side": "b", "start": "0"}}}"#;
        let doc = Document::parse(text).unwrap();
        let f = doc.field(None).unwrap();
        match &doc.payload {
            Payload::Surface(s) => {
                let l = s.build(f).unwrap();
                assert_eq!(l.cycles.len(), 2);
                assert!(l.pick_beta(None).is_ok());
            }
            _ => panic!("wrong kind"),
        }
        assert_eq!(Document::parse(&doc.to_canonical()).unwrap(), doc);
    }
}
