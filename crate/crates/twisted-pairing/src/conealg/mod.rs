//! Chain-level packages of complexes, pairings and products, the cone complex of
//! multiplication by `β`, its pairing, equivariant classes, supertraces and the hexagon map.

mod cone;
mod lagrangian;
mod model;
mod surface;
mod synthetic;
mod trace;

pub use cone::{ConeElement, DilationReport, NondegeneracyReport, NondegeneracyRow};
pub use lagrangian::{CardyReport, ExtendedModel, HexagonTerms, LagrangianDatum, RelationReport};
pub use model::{Axiom, AxiomReport, AxiomStatus, BvData, FloerModel, Product, Slope};
pub use trace::{bullet_supertrace, q_refined, supertrace, EigenFactor, QRefined};
pub use synthetic::{synthetic_bv, synthetic_extended, SyntheticOptions};
pub use surface::surface_cardy_defect;
