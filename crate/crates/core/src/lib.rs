//! Scenario taxonomy toolkit.
//!
//! A scenario wires a six-node learning loop: input `I`, the internal
//! cluster of processes `P` and structures `S`, output `O`, feedback `F` and
//! environment `E`. This crate enumerates the 216 configurations, parses and
//! prints their notation, runs an auditable filter pipeline down to the
//! priority catalog, builds concept lattices and implication bases over
//! scenario attributes, and analyses developmental trajectories.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod fca;
pub mod filters;
pub mod model;
pub mod notation;
pub mod trajectory;

pub use enumeration::{appendix2_catalog, enumerate_space, find_duplicates, table1_catalog, Catalog, CatalogEntry, TierLabel};
pub use error::{Error, Result};
pub use model::{
    attributes_of, build_graph, internal_reach, Attribute, AttributeVector, InternalArrangement, InternalNode, Node,
    NodePattern, Scenario, ScenarioGraph, Shortcut, ShortcutSet,
};
pub use notation::{format_scenario, parse_scenario, topology_id, topology_shortcuts, NotationStyle};
