//! Developmental trajectories through the scenario space.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::enumeration::{appendix2_catalog, Catalog, TierLabel};
use crate::error::{Error, Result};
use crate::model::{Attribute, AttributeVector, Scenario};
use crate::notation::{format_scenario, NotationStyle};

/// Default Hamming radius for one step of a path.
pub const DEFAULT_STEP_RADIUS: u32 = 3;

/// Attributes gained and lost between two configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Delta {
    pub gained: AttributeVector,
    pub lost: AttributeVector,
}

impl Delta {
    pub fn size(&self) -> usize {
        self.gained.len() + self.lost.len()
    }

    /// `a + gained - lost`.
    pub fn apply(&self, a: AttributeVector) -> AttributeVector {
        a.union(self.gained).difference(self.lost)
    }
}

impl Serialize for Delta {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View {
            gained: Vec<Attribute>,
            lost: Vec<Attribute>,
        }
        View { gained: self.gained.iter().collect(), lost: self.lost.iter().collect() }.serialize(ser)
    }
}

pub fn delta(a: &Scenario, b: &Scenario) -> Delta {
    let (va, vb) = (a.attributes(), b.attributes());
    Delta { gained: vb.difference(va), lost: va.difference(vb) }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryStep {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub scenario: Scenario,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdKind {
    /// Gaining two-way traffic between `P` and `S`.
    BidirectionalityBarrier,
    /// Gaining the `O → I` shortcut.
    SelfMonitoringThreshold,
    /// Reaching at least two shortcuts.
    ExternalEngagementCeiling,
}

impl ThresholdKind {
    pub const ALL: [ThresholdKind; 3] = [
        ThresholdKind::BidirectionalityBarrier,
        ThresholdKind::SelfMonitoringThreshold,
        ThresholdKind::ExternalEngagementCeiling,
    ];

    pub fn holds(self, s: &Scenario) -> bool {
        let v = s.attributes();
        match self {
            ThresholdKind::BidirectionalityBarrier => v.bidirectional(),
            ThresholdKind::SelfMonitoringThreshold => v.has(Attribute::ScOI),
            ThresholdKind::ExternalEngagementCeiling => v.shortcut_count() >= 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThresholdKind::BidirectionalityBarrier => "bidirectionality-barrier",
            ThresholdKind::SelfMonitoringThreshold => "self-monitoring-threshold",
            ThresholdKind::ExternalEngagementCeiling => "external-engagement-ceiling",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdEvent {
    pub kind: ThresholdKind,
    /// Index of the step at which the condition first holds.
    pub step: usize,
}

/// Events fire once, at the first step `k >= 1` where the condition holds,
/// and only if the starting configuration does not already satisfy it.
pub fn threshold_events(steps: &[Scenario]) -> Vec<ThresholdEvent> {
    let Some(first) = steps.first() else { return Vec::new() };
    ThresholdKind::ALL
        .iter()
        .filter(|k| !k.holds(first))
        .filter_map(|&kind| {
            let step = steps.iter().position(|s| kind.holds(s))?;
            Some(ThresholdEvent { kind, step })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityViolation {
    /// Index of the step that lost something (the later configuration).
    pub step: usize,
    pub lost: Vec<Attribute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    pub monotone: bool,
    pub violations: Vec<MonotonicityViolation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub name: String,
    pub steps: Vec<TrajectoryStep>,
    pub deltas: Vec<Delta>,
    pub thresholds: Vec<ThresholdEvent>,
}

impl Trajectory {
    pub fn new(name: impl Into<String>, steps: Vec<TrajectoryStep>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::EmptyTrajectory);
        }
        let keys: Vec<Scenario> = steps.iter().map(|s| s.scenario).collect();
        let deltas = keys.windows(2).map(|w| delta(&w[0], &w[1])).collect();
        let thresholds = threshold_events(&keys);
        Ok(Trajectory { name: name.into(), steps, deltas, thresholds })
    }

    pub fn from_scenarios(name: impl Into<String>, scenarios: &[Scenario]) -> Result<Self> {
        Self::new(name, scenarios.iter().map(|&scenario| TrajectoryStep { label: None, scenario }).collect())
    }

    /// Steps looked up by label in `catalog`.
    pub fn from_labels<S: AsRef<str>>(name: impl Into<String>, labels: &[S], catalog: &Catalog) -> Result<Self> {
        let steps = labels
            .iter()
            .map(|l| {
                let e = catalog.get(l.as_ref()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
                Ok(TrajectoryStep { label: Some(e.label.clone()), scenario: e.scenario })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, steps)
    }

    pub fn is_monotone(&self) -> Monotonicity {
        let violations: Vec<MonotonicityViolation> = self
            .deltas
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.lost.is_empty())
            .map(|(i, d)| MonotonicityViolation { step: i + 1, lost: d.lost.iter().collect() })
            .collect();
        Monotonicity { monotone: violations.is_empty(), violations }
    }

    fn step_name(&self, i: usize) -> String {
        self.steps[i].label.clone().unwrap_or_else(|| format!("#{i}"))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct StepView<'a> {
            #[serde(flatten)]
            step: &'a TrajectoryStep,
            notation: String,
        }
        #[derive(Serialize)]
        struct View<'a> {
            name: &'a str,
            steps: Vec<StepView<'a>>,
            deltas: &'a [Delta],
            thresholds: &'a [ThresholdEvent],
            monotonicity: Monotonicity,
        }
        let view = View {
            name: &self.name,
            steps: self
                .steps
                .iter()
                .map(|step| StepView { step, notation: format_scenario(&step.scenario, NotationStyle::TopologyShort) })
                .collect(),
            deltas: &self.deltas,
            thresholds: &self.thresholds,
            monotonicity: self.is_monotone(),
        };
        let mut s = serde_json::to_string_pretty(&view).expect("trajectory serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let names = |v: AttributeVector| v.iter().map(|a| a.name()).collect::<Vec<_>>().join(" ");
        let mut out = format!("trajectory {}\n", self.name);
        for (i, step) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "  {i}  {:<4} {}",
                self.step_name(i),
                format_scenario(&step.scenario, NotationStyle::TopologyShort)
            );
            if let Some(d) = i.checked_sub(1).map(|j| &self.deltas[j]) {
                let _ = writeln!(out, "       +[{}] -[{}]", names(d.gained), names(d.lost));
            }
        }
        let m = self.is_monotone();
        let _ = writeln!(out, "monotone: {}", if m.monotone { "yes" } else { "no" });
        for v in &m.violations {
            let lost: Vec<_> = v.lost.iter().map(|a| a.name()).collect();
            let _ = writeln!(out, "  step {} ({}) loses {}", v.step, self.step_name(v.step), lost.join(" "));
        }
        if self.thresholds.is_empty() {
            out.push_str("thresholds: none\n");
        }
        for t in &self.thresholds {
            let _ = writeln!(out, "threshold {} at step {} ({})", t.kind.name(), t.step, self.step_name(t.step));
        }
        out
    }
}

pub const NAMED_TRAJECTORIES: [(&str, &[&str]); 5] = [
    ("mainstream-s17", &["S1", "S7", "S17"]),
    ("mainstream-s24", &["S1", "S7", "S24"]),
    ("specialist", &["S1", "S6", "S19"]),
    ("strategic", &["S3", "S13", "S24"]),
    ("fca-mainstream", &["S1", "S6", "S7", "S14", "S17"]),
];

pub fn named_trajectory(name: &str) -> Option<Trajectory> {
    let (_, labels) = NAMED_TRAJECTORIES.iter().find(|(n, _)| *n == name)?;
    Some(Trajectory::from_labels(name, labels, appendix2_catalog()).expect("named trajectories use catalog labels"))
}

pub fn named_trajectories() -> Vec<Trajectory> {
    NAMED_TRAJECTORIES.iter().filter_map(|(n, _)| named_trajectory(n)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub tier: TierLabel,
    pub exact: bool,
    pub distance: u32,
    /// Catalog labels at the minimum distance.
    pub nearest: Vec<String>,
    pub rationale: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Tier of the nearest tiered catalog rows by Hamming distance over the
/// nine atomic attributes. Ties across tiers resolve to the lower tier.
pub fn classify_tier(s: &Scenario, catalog: &Catalog) -> Result<Classification> {
    let v = s.attributes();
    let rows: Vec<(&str, TierLabel, u32)> = catalog
        .entries
        .iter()
        .filter_map(|e| Some((e.label.as_str(), e.tier?, e.scenario.attributes().hamming(v))))
        .collect();
    let distance = rows.iter().map(|r| r.2).min().ok_or_else(|| Error::UnknownLabel("no tiered rows".into()))?;
    let near: Vec<(&str, TierLabel)> = rows.iter().filter(|r| r.2 == distance).map(|r| (r.0, r.1)).collect();
    let tier = near.iter().map(|r| r.1).min().expect("at least one row");
    let nearest: Vec<String> = near.iter().map(|r| r.0.to_string()).collect();
    let exact = distance == 0;
    let mixed = near.iter().any(|r| r.1 != tier);
    let listing = near.iter().map(|(l, t)| format!("{l}:{t}")).collect::<Vec<_>>().join(", ");
    let rationale = if exact {
        format!("exact match with {}", nearest.join(", "))
    } else {
        format!("nearest at Hamming distance {distance}: {listing}")
    };
    let warning = mixed.then(|| format!("conflicting tiers ({listing}); reporting the lower tier {tier}"));
    Ok(Classification { tier, exact, distance, nearest, rationale, warning })
}

/// Every shortest path from `from` to `to` through `within`, where each hop
/// changes at most `k` atomic attributes. Paths are listed in the order of
/// `within`.
pub fn shortest_paths(from: &Scenario, to: &Scenario, within: &[Scenario], k: u32) -> Result<Vec<Vec<Scenario>>> {
    let mut nodes: Vec<Scenario> = Vec::new();
    let mut index: HashMap<Scenario, usize> = HashMap::new();
    for s in within {
        index.entry(*s).or_insert_with(|| {
            nodes.push(*s);
            nodes.len() - 1
        });
    }
    let (&src, &dst) = (index.get(from).ok_or(Error::NotInSpace)?, index.get(to).ok_or(Error::NotInSpace)?);
    let vecs: Vec<AttributeVector> = nodes.iter().map(|s| s.attributes()).collect();
    let adjacent = |a: usize, b: usize| a != b && vecs[a].hamming(vecs[b]) <= k;

    let mut dist = vec![usize::MAX; nodes.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        for w in 0..nodes.len() {
            if dist[w] == usize::MAX && adjacent(u, w) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if dist[dst] == usize::MAX {
        return Err(Error::NoPath);
    }
    // Walk forward along distance layers, only through nodes that can still
    // reach the target in the remaining hops.
    let mut to_dst = vec![usize::MAX; nodes.len()];
    to_dst[dst] = 0;
    let mut queue = VecDeque::from([dst]);
    while let Some(u) = queue.pop_front() {
        for w in 0..nodes.len() {
            if to_dst[w] == usize::MAX && adjacent(u, w) {
                to_dst[w] = to_dst[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let total = dist[dst];
    let mut out = Vec::new();
    let mut stack = vec![vec![src]];
    while let Some(path) = stack.pop() {
        let u = *path.last().expect("nonempty");
        if u == dst {
            out.push(path.iter().map(|&i| nodes[i]).collect());
            continue;
        }
        let depth = path.len() - 1;
        let next: Vec<usize> = (0..nodes.len())
            .filter(|&w| adjacent(u, w) && dist[w] == depth + 1 && to_dst[w] == total - depth - 1)
            .collect();
        for &w in next.iter().rev() {
            let mut p = path.clone();
            p.push(w);
            stack.push(p);
        }
    }
    Ok(out)
}

/// Attribute frequencies per tier, as fractions of the tier's rows.
pub fn tier_profiles(catalog: &Catalog) -> BTreeMap<TierLabel, BTreeMap<&'static str, f64>> {
    let mut out = BTreeMap::new();
    for tier in TierLabel::ALL {
        let rows: Vec<AttributeVector> =
            catalog.entries.iter().filter(|e| e.tier == Some(tier)).map(|e| e.scenario.attributes()).collect();
        if rows.is_empty() {
            continue;
        }
        let freq = Attribute::ALL
            .iter()
            .map(|a| (a.name(), rows.iter().filter(|v| v.has(*a)).count() as f64 / rows.len() as f64))
            .collect();
        out.insert(tier, freq);
    }
    out
}
