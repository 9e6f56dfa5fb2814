use serde::Serialize;

use super::concepts::next_closure;
use super::context::{AttrSet, FormalContext};
use crate::error::{Error, Result};

/// `premise ⇒ conclusion` over attribute indices of one context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: AttrSet,
    pub conclusion: AttrSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationView {
    pub premise: Vec<String>,
    pub conclusion: Vec<String>,
}

/// Outcome of checking an implication against a context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub holds: bool,
    /// Objects having the premise but missing part of the conclusion.
    pub counterexamples: Vec<String>,
}

impl Implication {
    pub fn from_names<S: AsRef<str>>(ctx: &FormalContext, premise: &[S], conclusion: &[S]) -> Result<Self> {
        Ok(Implication { premise: ctx.attr_set(premise)?, conclusion: ctx.attr_set(conclusion)? })
    }

    pub fn view(&self, ctx: &FormalContext) -> ImplicationView {
        ImplicationView { premise: ctx.attr_names(&self.premise), conclusion: ctx.attr_names(&self.conclusion) }
    }

    pub fn render(&self, ctx: &FormalContext) -> String {
        let side = |s: &AttrSet| format!("{{{}}}", ctx.attr_names(s).join(", "));
        format!("{} => {}", side(&self.premise), side(&self.conclusion))
    }

    /// Whether `set` respects this implication.
    pub fn respected_by(&self, set: &AttrSet) -> bool {
        !self.premise.is_subset(set) || self.conclusion.is_subset(set)
    }
}

pub fn verify_implication(ctx: &FormalContext, imp: &Implication) -> Verification {
    let counterexamples: Vec<String> = (0..ctx.n_objects())
        .filter(|&g| !imp.respected_by(ctx.row(g)))
        .map(|g| ctx.objects()[g].clone())
        .collect();
    Verification { holds: counterexamples.is_empty(), counterexamples }
}

/// Parses `a, b => c` (also `->`, `→`, `⇒`) against the attribute names of `ctx`.
pub fn parse_implication(ctx: &FormalContext, text: &str) -> Result<Implication> {
    let (lhs, rhs) = ["=>", "⇒", "->", "→"]
        .iter()
        .find_map(|sep| text.split_once(sep))
        .ok_or_else(|| Error::Format(format!("no `=>` in implication `{text}`")))?;
    let names = |s: &str| -> Vec<String> {
        s.trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect()
    };
    Implication::from_names(ctx, &names(lhs), &names(rhs))
}

/// Closure of `set` under `implications` (every premise contained pulls
/// in its conclusion, repeated to a fixpoint).
pub fn implication_closure(implications: &[Implication], set: &AttrSet) -> AttrSet {
    let mut out = set.clone();
    loop {
        let mut changed = false;
        for imp in implications {
            if imp.premise.is_subset(&out) && !imp.conclusion.is_subset(&out) {
                out.union_with(&imp.conclusion);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Whether `basis` semantically entails `imp`.
pub fn entails(basis: &[Implication], imp: &Implication) -> bool {
    imp.conclusion.is_subset(&implication_closure(basis, &imp.premise))
}

/// The canonical (stem) basis, premises in lectic order. Conclusions hold
/// only the attributes not already in the premise.
pub fn implication_basis(ctx: &FormalContext) -> Vec<Implication> {
    let m = ctx.n_attributes();
    let mut basis: Vec<Implication> = Vec::new();
    // L*-closure: only implications with a proper-subset premise fire.
    let star = |basis: &[Implication], set: &AttrSet| -> AttrSet {
        let mut out = set.clone();
        loop {
            let mut changed = false;
            for imp in basis {
                if imp.premise.is_subset(&out) && imp.premise != out && !imp.conclusion.is_subset(&out) {
                    out.union_with(&imp.conclusion);
                    changed = true;
                }
            }
            if !changed {
                return out;
            }
        }
    };
    let mut current = star(&basis, &ctx.empty_attrs());
    loop {
        let closed = ctx.closure(&current);
        if closed != current {
            let mut conclusion = closed;
            conclusion.difference_with(&current);
            basis.push(Implication { premise: current.clone(), conclusion });
        }
        let snapshot = basis.clone();
        match next_closure(&current, m, |s| star(&snapshot, s)) {
            Some(next) => current = next,
            None => return basis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> FormalContext {
        // a → b holds; c alone on o3
        FormalContext::new(
            vec!["o1".into(), "o2".into(), "o3".into()],
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![true, true, false], vec![false, true, false], vec![false, false, true]],
        )
        .unwrap()
    }

    #[test]
    fn verify_and_parse() {
        let k = ctx();
        let imp = parse_implication(&k, "a => b").unwrap();
        assert!(verify_implication(&k, &imp).holds);
        let bad = parse_implication(&k, "{b} -> {a}").unwrap();
        let v = verify_implication(&k, &bad);
        assert_eq!(v.counterexamples, ["o2"]);
        assert!(matches!(parse_implication(&k, "q => a"), Err(Error::UnknownAttribute(_))));
        assert!(parse_implication(&k, "a b").is_err());
    }

    #[test]
    fn empty_premise_implication() {
        let k = ctx();
        let imp = Implication::from_names(&k, &[] as &[&str], &["b"]).unwrap();
        assert_eq!(verify_implication(&k, &imp).counterexamples, ["o3"]);
    }

    #[test]
    fn basis_of_small_context() {
        let k = ctx();
        let basis = implication_basis(&k);
        let rendered: Vec<String> = basis.iter().map(|i| i.render(&k)).collect();
        assert_eq!(rendered, ["{b, c} => {a}", "{a} => {b}"]);
        for imp in &basis {
            assert!(verify_implication(&k, imp).holds);
        }
    }

    #[test]
    fn entailment() {
        let k = ctx();
        let basis = implication_basis(&k);
        let derived = Implication::from_names(&k, &["a", "c"], &["b"]).unwrap();
        assert!(entails(&basis, &derived));
        let not = Implication::from_names(&k, &["b"], &["a"]).unwrap();
        assert!(!entails(&basis, &not));
    }
}
