//! The full configuration space and the embedded reference catalogs.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::model::{InternalArrangement, NodePattern, Scenario};
use crate::notation::topology_shortcuts;

/// Developmental tier of a priority scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TierLabel {
    Novice,
    Developing,
    ExpertAdaptive,
}

impl TierLabel {
    pub const ALL: [TierLabel; 3] = [TierLabel::Novice, TierLabel::Developing, TierLabel::ExpertAdaptive];

    pub fn name(self) -> &'static str {
        match self {
            TierLabel::Novice => "novice",
            TierLabel::Developing => "developing",
            TierLabel::ExpertAdaptive => "expert-adaptive",
        }
    }

    /// Attribute name used in formal contexts.
    pub fn attribute(self) -> &'static str {
        match self {
            TierLabel::Novice => "tier:novice",
            TierLabel::Developing => "tier:developing",
            TierLabel::ExpertAdaptive => "tier:expert",
        }
    }
}

impl fmt::Display for TierLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TierLabel::Novice => "Novice",
            TierLabel::Developing => "Developing",
            TierLabel::ExpertAdaptive => "ExpertAdaptive",
        })
    }
}

/// One catalog row. The configuration fields are flattened so the on-disk
/// row reads `{label, notation, entry, internal, exit, shortcuts, ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub label: String,
    pub notation: String,
    #[serde(flatten)]
    pub scenario: Scenario,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tier: Option<TierLabel>,
    pub description: String,
    pub reference: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    pub name: String,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Builds a catalog, rejecting duplicate labels.
    pub fn new(name: impl Into<String>, entries: Vec<CatalogEntry>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.label.as_str()) {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
        }
        Ok(Catalog { name: name.into(), entries })
    }

    pub fn from_json(name: impl Into<String>, json: &str) -> Result<Self, Error> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(json)?;
        Self::new(name, entries)
    }

    /// Pretty JSON with a trailing newline; the shipped data files are
    /// byte-identical to this rendering.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.entries).expect("catalog rows always serialize");
        s.push('\n');
        s
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct configurations, in first-appearance order.
    pub fn distinct_scenarios(&self) -> Vec<Scenario> {
        let mut seen = HashSet::new();
        self.entries.iter().map(|e| e.scenario).filter(|s| seen.insert(*s)).collect()
    }

    pub fn keys(&self) -> BTreeSet<Scenario> {
        self.entries.iter().map(|e| e.scenario).collect()
    }

    /// Rows sharing `s`'s configuration.
    pub fn matching(&self, s: &Scenario) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.scenario == *s).collect()
    }

    pub fn tier_counts(&self) -> BTreeMap<TierLabel, usize> {
        let mut out = BTreeMap::new();
        for t in self.entries.iter().filter_map(|e| e.tier) {
            *out.entry(t).or_insert(0) += 1;
        }
        out
    }
}

/// All 216 scenarios, ordered by entry, internal arrangement, exit and
/// topology id.
pub fn enumerate_space() -> Vec<Scenario> {
    let mut out = Vec::with_capacity(216);
    for entry in NodePattern::ALL {
        for internal in InternalArrangement::ALL {
            for exit in NodePattern::ALL {
                for id in 1..=8 {
                    let shortcuts = topology_shortcuts(id).expect("1..=8 is in range");
                    out.push(Scenario::new(entry, internal, exit, shortcuts));
                }
            }
        }
    }
    out
}

/// Groups of labels (size >= 2) whose rows share one configuration, in
/// order of first appearance.
pub fn find_duplicates(c: &Catalog) -> Vec<Vec<String>> {
    let mut groups: Vec<(Scenario, Vec<String>)> = Vec::new();
    for e in &c.entries {
        match groups.iter_mut().find(|(s, _)| *s == e.scenario) {
            Some((_, labels)) => labels.push(e.label.clone()),
            None => groups.push((e.scenario, vec![e.label.clone()])),
        }
    }
    groups.into_iter().map(|(_, labels)| labels).filter(|l| l.len() >= 2).collect()
}

const APPENDIX2_JSON: &str = include_str!("../data/appendix2.json");
const TABLE1_JSON: &str = include_str!("../data/table1.json");

/// The 24 priority scenarios with tiers.
pub fn appendix2_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_json("appendix2", APPENDIX2_JSON).expect("embedded catalog is valid"))
}

/// The five configurations most discussed in the literature; no tiers.
pub fn table1_catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_json("table1", TABLE1_JSON).expect("embedded catalog is valid"))
}

pub fn catalog_by_name(name: &str) -> Option<&'static Catalog> {
    match name {
        "appendix2" | "priority" => Some(appendix2_catalog()),
        "table1" | "literature" => Some(table1_catalog()),
        _ => None,
    }
}

/// Raw embedded data, for golden comparisons.
pub fn embedded_json(name: &str) -> Option<&'static str> {
    match name {
        "appendix2" => Some(APPENDIX2_JSON),
        "table1" => Some(TABLE1_JSON),
        _ => None,
    }
}
