use std::collections::HashMap;

use serde::Serialize;

use super::concepts::{ConceptView, FormalConcept};
use super::context::{AttrSet, FormalContext, ObjSet};
use crate::error::{Error, Result};

/// Concepts plus their Hasse diagram. `covers` holds `(lower, upper)`
/// index pairs into `concepts`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    pub concepts: Vec<FormalConcept>,
    pub covers: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeView {
    pub concepts: Vec<IndexedConcept>,
    pub covers: Vec<(usize, usize)>,
    pub top: usize,
    pub bottom: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexedConcept {
    pub id: usize,
    #[serde(flatten)]
    pub concept: ConceptView,
}

/// Builds the Hasse diagram. Fails with `IncompleteConceptSet` when some
/// pair lacks a meet or a join inside the given set.
pub fn build_lattice(concepts: Vec<FormalConcept>) -> Result<ConceptLattice> {
    if concepts.is_empty() {
        return Err(Error::IncompleteConceptSet("no concepts".into()));
    }
    let by_extent: HashMap<&ObjSet, usize> = concepts.iter().enumerate().map(|(i, c)| (&c.extent, i)).collect();
    let by_intent: HashMap<&AttrSet, usize> = concepts.iter().enumerate().map(|(i, c)| (&c.intent, i)).collect();
    if by_extent.len() != concepts.len() {
        return Err(Error::IncompleteConceptSet("two concepts share an extent".into()));
    }
    for (i, a) in concepts.iter().enumerate() {
        for (j, b) in concepts.iter().enumerate().skip(i + 1) {
            let mut ext = a.extent.clone();
            ext.intersect_with(&b.extent);
            if !by_extent.contains_key(&ext) {
                return Err(Error::IncompleteConceptSet(format!("concepts {i} and {j} have no meet")));
            }
            let mut int = a.intent.clone();
            int.intersect_with(&b.intent);
            if !by_intent.contains_key(&int) {
                return Err(Error::IncompleteConceptSet(format!("concepts {i} and {j} have no join")));
            }
        }
    }
    let covers = hasse_covers(&concepts);
    let size = |i: &usize| concepts[*i].extent.count_ones(..);
    let top = (0..concepts.len()).max_by_key(size).expect("nonempty");
    let bottom = (0..concepts.len()).min_by_key(size).expect("nonempty");
    Ok(ConceptLattice { concepts, covers, top, bottom })
}

fn hasse_covers(concepts: &[FormalConcept]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, lower) in concepts.iter().enumerate() {
        let mut above: Vec<usize> = (0..concepts.len())
            .filter(|&j| j != i && lower.extent.is_subset(&concepts[j].extent))
            .collect();
        above.sort_by_key(|&j| (concepts[j].extent.count_ones(..), j));
        let mut accepted: Vec<usize> = Vec::new();
        for j in above {
            if !accepted.iter().any(|&c| concepts[c].extent.is_subset(&concepts[j].extent)) {
                accepted.push(j);
            }
        }
        accepted.sort_unstable();
        covers.extend(accepted.into_iter().map(|j| (i, j)));
    }
    covers
}

impl ConceptLattice {
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn index_of_intent(&self, intent: &AttrSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.intent == intent)
    }

    pub fn index_of_extent(&self, extent: &ObjSet) -> Option<usize> {
        self.concepts.iter().position(|c| &c.extent == extent)
    }

    /// Concept introducing attribute `a`: `(a', a'')`.
    pub fn attribute_concept(&self, ctx: &FormalContext, a: usize) -> usize {
        let mut m = ctx.empty_attrs();
        m.insert(a);
        self.index_of_extent(&ctx.common_objects(&m)).expect("complete lattice")
    }

    /// Concept introducing object `g`: `(g'', g')`.
    pub fn object_concept(&self, ctx: &FormalContext, g: usize) -> usize {
        self.index_of_intent(ctx.row(g)).expect("complete lattice")
    }

    /// Checks meets and joins against the derivation operators of `ctx`:
    /// every pair needs its meet and join present, with components that are
    /// derivations of each other.
    pub fn check_lattice_laws(&self, ctx: &FormalContext) -> Result<()> {
        let by_intent: HashMap<&AttrSet, usize> =
            self.concepts.iter().enumerate().map(|(i, c)| (&c.intent, i)).collect();
        let by_extent: HashMap<&ObjSet, usize> =
            self.concepts.iter().enumerate().map(|(i, c)| (&c.extent, i)).collect();
        for (i, a) in self.concepts.iter().enumerate() {
            if !a.is_closed_in(ctx) {
                return Err(Error::IncompleteConceptSet(format!("concept {i} is not closed")));
            }
            for b in &self.concepts[i + 1..] {
                // meet: extent X ∩ Y with intent (X ∩ Y)' = (A ∪ B)''
                let mut ext = a.extent.clone();
                ext.intersect_with(&b.extent);
                match by_extent.get(&ext) {
                    Some(&k) if self.concepts[k].intent == ctx.common_attributes(&ext) => {}
                    _ => return Err(Error::IncompleteConceptSet("meet mismatch".into())),
                }
                // join: intent A ∩ B with extent (A ∩ B)' = (X ∪ Y)''
                let mut int = a.intent.clone();
                int.intersect_with(&b.intent);
                match by_intent.get(&int) {
                    Some(&k) if self.concepts[k].extent == ctx.common_objects(&int) => {}
                    _ => return Err(Error::IncompleteConceptSet("join mismatch".into())),
                }
            }
        }
        Ok(())
    }

    pub fn view(&self, ctx: &FormalContext) -> LatticeView {
        LatticeView {
            concepts: self
                .concepts
                .iter()
                .enumerate()
                .map(|(id, c)| IndexedConcept { id, concept: c.view(ctx) })
                .collect(),
            covers: self.covers.clone(),
            top: self.top,
            bottom: self.bottom,
        }
    }

    pub fn to_json(&self, ctx: &FormalContext) -> String {
        let mut s = serde_json::to_string_pretty(&self.view(ctx)).expect("lattice serializes");
        s.push('\n');
        s
    }
}
