use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::enumeration::{Catalog, TierLabel};
use crate::error::{Error, Result};
use crate::model::{Attribute, Scenario};

/// Set of attribute indices of a context.
pub type AttrSet = FixedBitSet;
/// Set of object indices of a context.
pub type ObjSet = FixedBitSet;

/// Objects × attributes incidence table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttrSet>,
}

impl FormalContext {
    pub fn new(objects: Vec<String>, attributes: Vec<String>, incidence: Vec<Vec<bool>>) -> Result<Self> {
        if incidence.len() != objects.len() {
            return Err(Error::Format(format!("{} objects but {} incidence rows", objects.len(), incidence.len())));
        }
        let m = attributes.len();
        let rows = incidence
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != m {
                    return Err(Error::Format(format!("row {i} has {} cells, expected {m}", row.len())));
                }
                let mut set = AttrSet::with_capacity(m);
                for (j, x) in row.into_iter().enumerate() {
                    set.set(j, x);
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(objects, attributes, rows)
    }

    pub fn from_rows(objects: Vec<String>, attributes: Vec<String>, rows: Vec<AttrSet>) -> Result<Self> {
        let mut seen = HashSet::new();
        for o in &objects {
            if !seen.insert(o.as_str()) {
                return Err(Error::DuplicateLabel(o.clone()));
            }
        }
        let mut seen = HashSet::new();
        for a in &attributes {
            if !seen.insert(a.as_str()) {
                return Err(Error::DuplicateAttribute(a.clone()));
            }
        }
        if rows.len() != objects.len() || rows.iter().any(|r| r.len() != attributes.len()) {
            return Err(Error::Format("incidence dimensions do not match object/attribute lists".into()));
        }
        Ok(FormalContext { objects, attributes, rows })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn row(&self, object: usize) -> &AttrSet {
        &self.rows[object]
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    pub fn empty_attrs(&self) -> AttrSet {
        AttrSet::with_capacity(self.n_attributes())
    }

    pub fn all_attrs(&self) -> AttrSet {
        let mut s = self.empty_attrs();
        s.insert_range(..);
        s
    }

    pub fn all_objects(&self) -> ObjSet {
        let mut s = ObjSet::with_capacity(self.n_objects());
        s.insert_range(..);
        s
    }

    pub fn attr_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttrSet> {
        let mut set = self.empty_attrs();
        for n in names {
            let i = self.attribute_index(n.as_ref()).ok_or_else(|| Error::UnknownAttribute(n.as_ref().to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attr_names(&self, set: &AttrSet) -> Vec<String> {
        set.ones().map(|i| self.attributes[i].clone()).collect()
    }

    pub fn object_names(&self, set: &ObjSet) -> Vec<String> {
        set.ones().map(|i| self.objects[i].clone()).collect()
    }

    /// Attributes shared by every object of `objects` (all attributes for
    /// the empty set).
    pub fn common_attributes(&self, objects: &ObjSet) -> AttrSet {
        let mut out = self.all_attrs();
        for g in objects.ones() {
            out.intersect_with(&self.rows[g]);
        }
        out
    }

    /// Objects having every attribute of `attrs`.
    pub fn common_objects(&self, attrs: &AttrSet) -> ObjSet {
        let mut out = ObjSet::with_capacity(self.n_objects());
        for (g, row) in self.rows.iter().enumerate() {
            if attrs.is_subset(row) {
                out.insert(g);
            }
        }
        out
    }

    /// `attrs''`.
    pub fn closure(&self, attrs: &AttrSet) -> AttrSet {
        self.common_attributes(&self.common_objects(attrs))
    }

    /// Sub-context on the objects accepted by `keep`.
    pub fn restrict_objects(&self, keep: impl Fn(&str) -> bool) -> FormalContext {
        let (objects, rows) = self
            .objects
            .iter()
            .zip(&self.rows)
            .filter(|(o, _)| keep(o))
            .map(|(o, r)| (o.clone(), r.clone()))
            .unzip();
        FormalContext { objects, attributes: self.attributes.clone(), rows }
    }

    /// Merges objects with identical rows; merged names are joined by `|`.
    pub fn clarify_objects(&self) -> FormalContext {
        let mut groups: Vec<(AttrSet, Vec<&str>)> = Vec::new();
        for (o, r) in self.objects.iter().zip(&self.rows) {
            match groups.iter_mut().find(|(row, _)| row == r) {
                Some((_, names)) => names.push(o),
                None => groups.push((r.clone(), vec![o])),
            }
        }
        let (rows, objects) = groups.into_iter().map(|(r, names)| (r, names.join("|"))).unzip();
        FormalContext { objects, attributes: self.attributes.clone(), rows }
    }
}

/// Which attribute families a scenario context carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AttributeSchema {
    /// `parallel-entry`, `dual-exit`, `bidirectional`.
    pub derived: bool,
    /// `tier:novice`, `tier:developing`, `tier:expert`.
    pub tiers: bool,
}

impl Default for AttributeSchema {
    fn default() -> Self {
        AttributeSchema { derived: true, tiers: true }
    }
}

pub const DERIVED_ATTRIBUTES: [&str; 3] = ["parallel-entry", "dual-exit", "bidirectional"];

impl AttributeSchema {
    pub fn attribute_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Attribute::ALL.iter().map(|a| a.name().to_string()).collect();
        if self.derived {
            names.extend(DERIVED_ATTRIBUTES.iter().map(|s| s.to_string()));
        }
        if self.tiers {
            names.extend(TierLabel::ALL.iter().map(|t| t.attribute().to_string()));
        }
        names
    }

    fn row(&self, s: &Scenario, tier: Option<TierLabel>) -> Vec<bool> {
        let v = s.attributes();
        let mut row: Vec<bool> = Attribute::ALL.iter().map(|a| v.has(*a)).collect();
        if self.derived {
            row.extend([v.parallel_entry(), v.dual_exit(), v.bidirectional()]);
        }
        if self.tiers {
            row.extend(TierLabel::ALL.iter().map(|t| tier == Some(*t)));
        }
        row
    }
}

/// One object of a scenario context.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioObject {
    pub label: String,
    pub scenario: Scenario,
    pub tier: Option<TierLabel>,
}

pub fn build_context(objects: &[ScenarioObject], schema: &AttributeSchema) -> Result<FormalContext> {
    let names = objects.iter().map(|o| o.label.clone()).collect();
    let incidence = objects.iter().map(|o| schema.row(&o.scenario, o.tier)).collect();
    FormalContext::new(names, schema.attribute_names(), incidence)
}

pub fn catalog_context(catalog: &Catalog, schema: &AttributeSchema) -> Result<FormalContext> {
    let objects: Vec<ScenarioObject> = catalog
        .entries
        .iter()
        .map(|e| ScenarioObject { label: e.label.clone(), scenario: e.scenario, tier: e.tier })
        .collect();
    build_context(&objects, schema)
}

/// Column-wise attribute counts, handy for summaries.
pub fn attribute_support(ctx: &FormalContext) -> BTreeMap<String, usize> {
    (0..ctx.n_attributes())
        .map(|a| (ctx.attributes()[a].clone(), (0..ctx.n_objects()).filter(|&g| ctx.has(g, a)).count()))
        .collect()
}
