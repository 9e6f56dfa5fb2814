//! Formal concept analysis over scenario attributes.

pub mod concepts;
pub mod context;
pub mod findings;
pub mod implications;
pub mod io;
pub mod lattice;

pub use concepts::{all_concepts, next_closure, ConceptView, FormalConcept};
pub use context::{
    build_context, catalog_context, AttrSet, AttributeSchema, FormalContext, ObjSet, ScenarioObject,
    DERIVED_ATTRIBUTES,
};
pub use findings::{evaluate_findings, FindingReport};
pub use implications::{
    entails, implication_basis, implication_closure, parse_implication, verify_implication, Implication,
    Verification,
};
pub use io::{lattice_to_dot, read_csv, read_cxt, write_csv, write_cxt};
pub use lattice::{build_lattice, ConceptLattice};
