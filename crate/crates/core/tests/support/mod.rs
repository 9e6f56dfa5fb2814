//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's derivation operators, closure or reachability code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use scentax::fca::FormalContext;
use scentax::{InternalArrangement, NodePattern, Scenario};

/// A concept as (sorted object indices, sorted attribute indices).
pub type PlainConcept = (Vec<usize>, Vec<usize>);

fn table(ctx: &FormalContext) -> Vec<Vec<bool>> {
    (0..ctx.n_objects()).map(|g| (0..ctx.n_attributes()).map(|m| ctx.has(g, m)).collect()).collect()
}

/// Every concept, found by closing each of the 2^|M| attribute subsets.
pub fn brute_force_concepts(ctx: &FormalContext) -> BTreeSet<PlainConcept> {
    let rows = table(ctx);
    let m = ctx.n_attributes();
    assert!(m <= 20, "brute force over 2^{m} subsets");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << m) {
        let extent: Vec<usize> =
            (0..rows.len()).filter(|&g| (0..m).all(|a| mask & (1 << a) == 0 || rows[g][a])).collect();
        let intent: Vec<usize> = (0..m).filter(|&a| extent.iter().all(|&g| rows[g][a])).collect();
        out.insert((extent, intent));
    }
    out
}

pub fn plain(ctx: &FormalContext, concepts: &[scentax::fca::FormalConcept]) -> BTreeSet<PlainConcept> {
    let _ = ctx;
    concepts.iter().map(|c| (c.extent.ones().collect(), c.intent.ones().collect())).collect()
}

/// Random context with `g` objects, `m` attributes and cell density `p`.
pub fn random_context(rng: &mut StdRng, g: usize, m: usize, p: f64) -> FormalContext {
    let objects = (0..g).map(|i| format!("g{i}")).collect();
    let attributes = (0..m).map(|j| format!("m{j}")).collect();
    let incidence = (0..g).map(|_| (0..m).map(|_| rng.random_bool(p)).collect()).collect();
    FormalContext::new(objects, attributes, incidence).unwrap()
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Brute-force reachability: does some entry node reach every exit node
/// using internal edges only? Enumerates walks of length <= 2 explicitly.
pub fn oracle_connected(s: &Scenario) -> bool {
    let edges: Vec<(char, char)> = match s.internal {
        InternalArrangement::BottomUp => vec![('P', 'S')],
        InternalArrangement::TopDown => vec![('S', 'P')],
        InternalArrangement::Bidirectional => vec![('P', 'S'), ('S', 'P')],
    };
    let nodes = |p: NodePattern| -> Vec<char> {
        match p {
            NodePattern::P => vec!['P'],
            NodePattern::S => vec!['S'],
            NodePattern::Both => vec!['P', 'S'],
        }
    };
    let reach = |from: char| -> Vec<char> {
        let mut r = vec![from];
        for &(a, b) in &edges {
            if a == from {
                r.push(b);
            }
        }
        r
    };
    let reached: Vec<char> = nodes(s.entry).into_iter().flat_map(reach).collect();
    nodes(s.exit).iter().all(|x| reached.contains(x))
}

/// The nine atomic attributes of `s`, computed from the definitions.
pub fn oracle_attributes(s: &Scenario) -> BTreeSet<&'static str> {
    use scentax::Shortcut;
    let mut out = BTreeSet::new();
    if matches!(s.entry, NodePattern::P | NodePattern::Both) {
        out.insert("entry:P");
    }
    if matches!(s.entry, NodePattern::S | NodePattern::Both) {
        out.insert("entry:S");
    }
    if matches!(s.internal, InternalArrangement::BottomUp | InternalArrangement::Bidirectional) {
        out.insert("mon");
    }
    if matches!(s.internal, InternalArrangement::TopDown | InternalArrangement::Bidirectional) {
        out.insert("ctl");
    }
    if matches!(s.exit, NodePattern::P | NodePattern::Both) {
        out.insert("exit:P");
    }
    if matches!(s.exit, NodePattern::S | NodePattern::Both) {
        out.insert("exit:S");
    }
    for (sc, name) in [(Shortcut::OE, "sc:OE"), (Shortcut::OI, "sc:OI"), (Shortcut::FI, "sc:FI")] {
        if s.shortcuts.contains(sc) {
            out.insert(name);
        }
    }
    out
}
