use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::context::{AttrSet, FormalContext, ObjSet};

/// A closed (extent, intent) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: ObjSet,
    pub intent: AttrSet,
}

/// Concept with names resolved, for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptView {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

impl FormalConcept {
    pub fn view(&self, ctx: &FormalContext) -> ConceptView {
        ConceptView { extent: ctx.object_names(&self.extent), intent: ctx.attr_names(&self.intent) }
    }

    /// Both components are fixed points of the derivation operators.
    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.common_objects(&self.intent) == self.extent && ctx.common_attributes(&self.extent) == self.intent
    }
}

/// Next set after `current` in lectic order that is closed under `closure`,
/// or `None` if `current` is the last one.
pub fn next_closure<F>(current: &FixedBitSet, n: usize, closure: F) -> Option<FixedBitSet>
where
    F: Fn(&FixedBitSet) -> FixedBitSet,
{
    let mut a = current.clone();
    for i in (0..n).rev() {
        if a.contains(i) {
            a.set(i, false);
            continue;
        }
        let mut candidate = a.clone();
        candidate.insert(i);
        let b = closure(&candidate);
        // `b` may only add elements after `i`.
        if b.ones().take_while(|&j| j < i).eq(a.ones().take_while(|&j| j < i)) {
            return Some(b);
        }
    }
    None
}

/// Every formal concept of `ctx`, in lectic order of intents.
pub fn all_concepts(ctx: &FormalContext) -> Vec<FormalConcept> {
    let m = ctx.n_attributes();
    let closure = |s: &FixedBitSet| ctx.closure(s);
    let mut out = Vec::new();
    let mut intent = closure(&ctx.empty_attrs());
    loop {
        out.push(FormalConcept { extent: ctx.common_objects(&intent), intent: intent.clone() });
        match next_closure(&intent, m, closure) {
            Some(next) => intent = next,
            None => return out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(rows: &[&[bool]], m: usize) -> FormalContext {
        FormalContext::new(
            (0..rows.len()).map(|i| format!("o{}", i + 1)).collect(),
            (0..m).map(|j| ((b'a' + j as u8) as char).to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn empty_context_has_one_concept() {
        let c = all_concepts(&ctx(&[], 0));
        assert_eq!(c.len(), 1);
        assert!(c[0].extent.is_clear() && c[0].intent.is_clear());
    }

    #[test]
    fn two_object_example() {
        let k = ctx(&[&[true, false], &[true, true]], 2);
        let views: Vec<_> = all_concepts(&k).iter().map(|c| c.view(&k)).collect();
        assert_eq!(views.len(), 2);
        assert_eq!(views[0], ConceptView { extent: vec!["o1".into(), "o2".into()], intent: vec!["a".into()] });
        assert!(views.contains(&ConceptView { extent: vec!["o2".into()], intent: vec!["a".into(), "b".into()] }));
        // o2 carries every attribute, so the bottom concept has a nonempty extent.
        assert!(all_concepts(&k).iter().all(|c| c.is_closed_in(&k)));
    }

    #[test]
    fn bottom_with_empty_extent() {
        let k = ctx(&[&[true, false], &[false, true]], 2);
        let views: Vec<_> = all_concepts(&k).iter().map(|c| c.view(&k)).collect();
        assert_eq!(views.len(), 4);
        assert!(views.contains(&ConceptView { extent: vec![], intent: vec!["a".into(), "b".into()] }));
    }
}
