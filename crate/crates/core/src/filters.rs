//! Declarative, auditable filter pipeline.
//!
//! A [`PipelineConfig`] is an ordered list of [`FilterRule`]s, each bound to
//! one of four stages. Every stage sees the survivors of the previous one;
//! within a stage a scenario is eliminated by the first rule that fires, and
//! the elimination is recorded with that rule's name in the stage's
//! [`StageReport`].

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::enumeration::appendix2_catalog;
use crate::error::{Error, Result};
use crate::model::{
    build_graph, internal_reach, Attribute, InternalArrangement, Node, NodePattern, Scenario, ScenarioGraph,
};
use crate::notation::{format_scenario, NotationStyle};

pub const STAGES: std::ops::RangeInclusive<u8> = 1..=4;

/// Filter-1 rule A: every exit node is reachable, over internal edges, from
/// some entry node.
pub fn connected_flow(s: &Scenario) -> bool {
    let reach: HashSet<_> = s.entry.members().into_iter().flat_map(|e| internal_reach(s, e)).collect();
    s.exit.members().iter().all(|x| reach.contains(x))
}

/// Filter-1 rule B: `P` lies on a directed `I -> ... -> O` route through the
/// entry, internal and exit edges.
pub fn process_on_io_path(s: &Scenario) -> bool {
    let g = build_graph(s);
    let from_input = g.reachable_by(Node::I, ScenarioGraph::is_cluster_edge);
    let from_process = g.reachable_by(Node::P, ScenarioGraph::is_cluster_edge);
    from_input.contains(&Node::P) && from_process.contains(&Node::O)
}

/// The literal rule-B family: input to S, top-down internals, output from S.
pub fn pure_knowledge_pathway(s: &Scenario) -> bool {
    s.entry == NodePattern::S && s.internal == InternalArrangement::TopDown && s.exit == NodePattern::S
}

/// Filter 2: fully integrated internals with the baseline topology only.
pub fn filter2_integration_without_feedback(s: &Scenario) -> bool {
    s.internal == InternalArrangement::Bidirectional && s.shortcuts.is_empty()
}

pub fn filter4_priority(s: &Scenario) -> bool {
    priority_keys().contains(s)
}

fn priority_keys() -> &'static HashSet<Scenario> {
    static KEYS: std::sync::OnceLock<HashSet<Scenario>> = std::sync::OnceLock::new();
    KEYS.get_or_init(|| appendix2_catalog().entries.iter().map(|e| e.scenario).collect())
}

/// Filter 3 with the shipped equivalence relation: a single-entry `{P}`
/// scenario with monitoring is folded into its parallel-entry twin when the
/// twin is present in `space`. Priority-catalog configurations form
/// singleton classes.
pub fn filter3_representative(s: &Scenario, space: &[Scenario]) -> bool {
    let set: HashSet<Scenario> = space.iter().copied().collect();
    micro_sequence_representative(s, &set, true)
}

/// Filter 3 with an explicit choice of priority protection. With
/// `protect_priority = false` the relation is applied to every pair.
pub fn filter3_representative_with(s: &Scenario, space: &[Scenario], protect_priority: bool) -> bool {
    let set: HashSet<Scenario> = space.iter().copied().collect();
    micro_sequence_representative(s, &set, protect_priority)
}

fn micro_sequence_representative(s: &Scenario, space: &HashSet<Scenario>, protect: bool) -> bool {
    let protected = |x: &Scenario| protect && filter4_priority(x);
    if protected(s) || s.entry != NodePattern::P || !s.internal.has_monitoring() {
        return true;
    }
    let twin = Scenario { entry: NodePattern::Both, ..*s };
    !space.contains(&twin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleBStrictness {
    /// `P` must lie on an input-output route.
    OnPath,
    /// Only the `({S}, top-down, {S})` family fails.
    NamedOnly,
}

/// The closed predicate vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "predicate", rename_all = "kebab-case")]
pub enum Predicate {
    ExitReachableFromEntry,
    ProcessOnIoPath { strictness: RuleBStrictness },
    IntegratedInternalWithBaselineTopology,
    MicroSequenceRepresentative { protect_priority: bool },
    InPriorityCatalog,
    /// True iff every `all` attribute is present and no `none` attribute is.
    CustomAttributeClause { all: Vec<Attribute>, none: Vec<Attribute> },
}

impl Predicate {
    pub fn name(&self) -> &'static str {
        match self {
            Predicate::ExitReachableFromEntry => "exit-reachable-from-entry",
            Predicate::ProcessOnIoPath { .. } => "process-on-io-path",
            Predicate::IntegratedInternalWithBaselineTopology => "integrated-internal-with-baseline-topology",
            Predicate::MicroSequenceRepresentative { .. } => "micro-sequence-representative",
            Predicate::InPriorityCatalog => "in-priority-catalog",
            Predicate::CustomAttributeClause { .. } => "custom-attribute-clause",
        }
    }

    fn eval(&self, s: &Scenario, stage_input: &HashSet<Scenario>) -> bool {
        match self {
            Predicate::ExitReachableFromEntry => connected_flow(s),
            Predicate::ProcessOnIoPath { strictness: RuleBStrictness::OnPath } => process_on_io_path(s),
            Predicate::ProcessOnIoPath { strictness: RuleBStrictness::NamedOnly } => !pure_knowledge_pathway(s),
            Predicate::IntegratedInternalWithBaselineTopology => filter2_integration_without_feedback(s),
            Predicate::MicroSequenceRepresentative { protect_priority } => {
                micro_sequence_representative(s, stage_input, *protect_priority)
            }
            Predicate::InPriorityCatalog => filter4_priority(s),
            Predicate::CustomAttributeClause { all, none } => {
                let v = s.attributes();
                all.iter().all(|a| v.has(*a)) && !none.iter().any(|a| v.has(*a))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    DropIfTrue,
    KeepOnlyIfTrue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterRule {
    pub name: String,
    pub stage: u8,
    #[serde(flatten)]
    pub predicate: Predicate,
    pub action: Action,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unless: Option<Predicate>,
}

impl FilterRule {
    /// Whether this rule eliminates `s`.
    fn fires(&self, s: &Scenario, stage_input: &HashSet<Scenario>) -> bool {
        let holds = self.predicate.eval(s, stage_input);
        let fires = match self.action {
            Action::DropIfTrue => holds,
            Action::KeepOnlyIfTrue => !holds,
        };
        fires && !self.unless.as_ref().is_some_and(|u| u.eval(s, stage_input))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineConfig {
    pub rules: Vec<FilterRule>,
    /// Expected output count per stage (index 0 is stage 1).
    pub targets: [Option<usize>; 4],
}

const SHIPPED_TOML: &str = include_str!("../data/pipeline.toml");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    targets: BTreeMap<String, usize>,
    #[serde(default)]
    rule: Vec<toml::Spanned<RawRule>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawRule {
    name: String,
    stage: toml::Spanned<u8>,
    predicate: toml::Spanned<String>,
    action: toml::Spanned<String>,
    #[serde(default)]
    unless: Option<toml::Spanned<String>>,
    #[serde(default)]
    rule_b: Option<toml::Spanned<String>>,
    #[serde(default)]
    protect_priority: Option<bool>,
    #[serde(default)]
    all: Vec<toml::Spanned<String>>,
    #[serde(default)]
    none: Vec<toml::Spanned<String>>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

struct ConfigReader<'a> {
    text: &'a str,
    path: &'a str,
}

impl ConfigReader<'_> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Config { path: self.path.to_string(), line: line_of(self.text, offset), message: message.into() }
    }

    fn predicate(&self, raw: &RawRule, name: &toml::Spanned<String>) -> Result<Predicate> {
        let at = name.span().start;
        Ok(match name.get_ref().as_str() {
            "exit-reachable-from-entry" => Predicate::ExitReachableFromEntry,
            "process-on-io-path" => {
                let strictness = match raw.rule_b.as_ref().map(|s| (s.get_ref().as_str(), s.span().start)) {
                    None | Some(("on-path", _)) => RuleBStrictness::OnPath,
                    Some(("named-only", _)) => RuleBStrictness::NamedOnly,
                    Some((other, at)) => {
                        return Err(self.err(at, format!("unknown rule-b strictness `{other}` (on-path | named-only)")))
                    }
                };
                Predicate::ProcessOnIoPath { strictness }
            }
            "integrated-internal-with-baseline-topology" => Predicate::IntegratedInternalWithBaselineTopology,
            "micro-sequence-representative" => {
                Predicate::MicroSequenceRepresentative { protect_priority: raw.protect_priority.unwrap_or(true) }
            }
            "in-priority-catalog" => Predicate::InPriorityCatalog,
            "custom-attribute-clause" => {
                let attrs = |list: &[toml::Spanned<String>]| -> Result<Vec<Attribute>> {
                    list.iter()
                        .map(|a| {
                            Attribute::from_name(a.get_ref())
                                .ok_or_else(|| self.err(a.span().start, format!("unknown attribute `{}`", a.get_ref())))
                        })
                        .collect()
                };
                Predicate::CustomAttributeClause { all: attrs(&raw.all)?, none: attrs(&raw.none)? }
            }
            other => return Err(self.err(at, format!("unknown predicate `{other}`"))),
        })
    }
}

impl PipelineConfig {
    /// The configuration shipped with the crate.
    pub fn shipped() -> Self {
        Self::from_toml_str(SHIPPED_TOML, "<shipped>").expect("shipped pipeline config is valid")
    }

    pub fn shipped_toml() -> &'static str {
        SHIPPED_TOML
    }

    /// Parses a pipeline configuration; errors carry `path` and a 1-based line.
    pub fn from_toml_str(text: &str, path: &str) -> Result<Self> {
        let reader = ConfigReader { text, path };
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let at = e.span().map(|s| s.start).unwrap_or(0);
            reader.err(at, e.message().to_string())
        })?;

        let mut targets = [None; 4];
        for (key, count) in &raw.targets {
            let stage = key
                .strip_prefix("stage")
                .and_then(|n| n.parse::<u8>().ok())
                .filter(|n| STAGES.contains(n))
                .ok_or_else(|| reader.err(text.find(key.as_str()).unwrap_or(0), format!("unknown target `{key}`")))?;
            targets[(stage - 1) as usize] = Some(*count);
        }

        let mut rules = Vec::with_capacity(raw.rule.len());
        let mut last_stage = 0u8;
        for spanned in &raw.rule {
            let r = spanned.get_ref();
            let stage = *r.stage.get_ref();
            if !STAGES.contains(&stage) {
                return Err(reader.err(r.stage.span().start, format!("stage {stage} is outside 1..4")));
            }
            if stage < last_stage {
                return Err(reader.err(r.stage.span().start, "rules must appear in nondecreasing stage order"));
            }
            last_stage = stage;
            if rules.iter().any(|x: &FilterRule| x.name == r.name) {
                return Err(reader.err(spanned.span().start, format!("duplicate rule name `{}`", r.name)));
            }
            let action = match r.action.get_ref().as_str() {
                "drop-if-true" => Action::DropIfTrue,
                "keep-only-if-true" => Action::KeepOnlyIfTrue,
                other => return Err(reader.err(r.action.span().start, format!("unknown action `{other}`"))),
            };
            let predicate = reader.predicate(r, &r.predicate)?;
            let unless = r.unless.as_ref().map(|u| reader.predicate(r, u)).transpose()?;
            rules.push(FilterRule { name: r.name.clone(), stage, predicate, action, unless });
        }
        if rules.is_empty() {
            return Err(Error::EmptyRuleSet);
        }
        Ok(PipelineConfig { rules, targets })
    }

    pub fn rule(&self, name: &str) -> Option<&FilterRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// Keeps only the named rule; targets are kept.
    pub fn only_rule(&self, name: &str) -> Result<Self> {
        let rule = self.rule(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
        Ok(PipelineConfig { rules: vec![rule.clone()], targets: self.targets })
    }

    pub fn without_rule(&self, name: &str) -> Self {
        PipelineConfig { rules: self.rules.iter().filter(|r| r.name != name).cloned().collect(), targets: self.targets }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub scenario: Scenario,
    pub notation: String,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub stage: u8,
    pub input_count: usize,
    pub output_count: usize,
    pub eliminations: Vec<Elimination>,
    pub target_count: Option<usize>,
    pub matches_target: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineRun {
    pub reports: Vec<StageReport>,
    #[serde(rename = "final")]
    pub final_set: Vec<Scenario>,
}

/// Where a scenario ended up after a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Fate {
    Survived,
    Eliminated { stage: u8, rule: String },
    NotInSpace,
}

impl PipelineRun {
    pub fn fate(&self, s: &Scenario) -> Fate {
        if self.final_set.contains(s) {
            return Fate::Survived;
        }
        for r in &self.reports {
            if let Some(e) = r.eliminations.iter().find(|e| e.scenario == *s) {
                return Fate::Eliminated { stage: r.stage, rule: e.rule.clone() };
            }
        }
        Fate::NotInSpace
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Fixed-width summary plus one line per elimination.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:<6} {:>6} {:>7} {:>11} {:>7}  match", "stage", "input", "output", "eliminated", "target").unwrap();
        for r in &self.reports {
            let target = r.target_count.map_or("-".to_string(), |t| t.to_string());
            writeln!(
                out,
                "{:<6} {:>6} {:>7} {:>11} {:>7}  {}",
                r.stage,
                r.input_count,
                r.output_count,
                r.eliminations.len(),
                target,
                if r.target_count.is_none() { "-" } else if r.matches_target { "yes" } else { "no" }
            )
            .unwrap();
            if let Some(n) = &r.note {
                writeln!(out, "       note: {n}").unwrap();
            }
        }
        writeln!(out).unwrap();
        for r in &self.reports {
            let mut by_rule: BTreeMap<&str, usize> = BTreeMap::new();
            for e in &r.eliminations {
                *by_rule.entry(e.rule.as_str()).or_default() += 1;
            }
            for (rule, n) in by_rule {
                writeln!(out, "stage {} {rule}: {n} eliminated", r.stage).unwrap();
            }
        }
        writeln!(out, "final: {} scenarios", self.final_set.len()).unwrap();
        out
    }
}

pub fn run_pipeline(cfg: &PipelineConfig, space: &[Scenario]) -> Result<PipelineRun> {
    if cfg.rules.is_empty() {
        return Err(Error::EmptyRuleSet);
    }
    let mut seen = HashSet::with_capacity(space.len());
    for s in space {
        if !seen.insert(*s) {
            return Err(Error::DuplicateScenario(format_scenario(s, NotationStyle::Bracketed)));
        }
    }

    let catalog = appendix2_catalog();
    let mut current: Vec<Scenario> = space.to_vec();
    let mut reports = Vec::with_capacity(4);
    for stage in STAGES {
        let rules: Vec<&FilterRule> = cfg.rules.iter().filter(|r| r.stage == stage).collect();
        let input: HashSet<Scenario> = current.iter().copied().collect();
        let mut kept = Vec::with_capacity(current.len());
        let mut eliminations = Vec::new();
        for s in &current {
            match rules.iter().find(|r| r.fires(s, &input)) {
                Some(rule) => eliminations.push(Elimination {
                    scenario: *s,
                    notation: format_scenario(s, NotationStyle::Bracketed),
                    rule: rule.name.clone(),
                }),
                None => kept.push(*s),
            }
        }
        let target = cfg.targets[(stage - 1) as usize];
        let note = match target {
            Some(t) if stage == 4 && t == catalog.len() && kept.len() == catalog.distinct_scenarios().len() => Some(
                format!(
                    "target counts catalog labels: {} rows over {} distinct configurations",
                    catalog.len(),
                    catalog.distinct_scenarios().len()
                ),
            ),
            _ => None,
        };
        reports.push(StageReport {
            stage,
            input_count: current.len(),
            output_count: kept.len(),
            eliminations,
            target_count: target,
            matches_target: target == Some(kept.len()),
            note,
        });
        current = kept;
    }
    Ok(PipelineRun { reports, final_set: current })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_space, table1_catalog};
    use crate::model::{Shortcut, ShortcutSet};
    use InternalArrangement::*;
    use NodePattern as NP;

    fn sc(items: &[Shortcut]) -> ShortcutSet {
        ShortcutSet::new(items.iter().copied())
    }

    #[test]
    fn connected_flow_examples() {
        for bits in 1..=8 {
            let t = crate::notation::topology_shortcuts(bits).unwrap();
            assert!(!connected_flow(&Scenario::new(NP::S, BottomUp, NP::P, t)));
            assert!(connected_flow(&Scenario::new(NP::P, BottomUp, NP::Both, t)));
            for i in InternalArrangement::ALL {
                for x in NodePattern::ALL {
                    assert!(connected_flow(&Scenario::new(NP::Both, i, x, t)));
                }
            }
        }
    }

    #[test]
    fn process_on_io_path_examples() {
        assert!(!process_on_io_path(&Scenario::new(NP::S, TopDown, NP::S, ShortcutSet::EMPTY)));
        assert!(process_on_io_path(&Scenario::new(NP::P, BottomUp, NP::P, ShortcutSet::FULL)));
        assert!(process_on_io_path(&Scenario::new(NP::S, TopDown, NP::Both, ShortcutSet::EMPTY)));
        assert!(!process_on_io_path(&Scenario::new(NP::S, BottomUp, NP::S, ShortcutSet::EMPTY)));
        assert!(process_on_io_path(&Scenario::new(NP::S, Bidirectional, NP::S, ShortcutSet::EMPTY)));
    }

    #[test]
    fn filter2_examples() {
        assert!(filter2_integration_without_feedback(&Scenario::new(NP::P, Bidirectional, NP::Both, ShortcutSet::EMPTY)));
        assert!(!filter2_integration_without_feedback(&Scenario::new(NP::P, Bidirectional, NP::Both, sc(&[Shortcut::OI]))));
        assert!(!filter2_integration_without_feedback(&Scenario::new(NP::P, BottomUp, NP::P, ShortcutSet::EMPTY)));
    }

    #[test]
    fn filter3_examples() {
        let space = enumerate_space();
        let single = Scenario::new(NP::P, BottomUp, NP::Both, sc(&[Shortcut::OI, Shortcut::FI]));
        let s10 = Scenario::new(NP::Both, BottomUp, NP::Both, sc(&[Shortcut::OI, Shortcut::FI]));
        assert!(!filter3_representative(&single, &space));
        assert!(filter3_representative(&s10, &space));
        let s7 = appendix2_catalog().get("S7").unwrap().scenario;
        assert!(filter3_representative(&s7, &space));
        assert!(!filter3_representative_with(&s7, &space, false));
        // Without its twin in the space, a scenario is its own class.
        assert!(filter3_representative(&single, &[single]));
    }

    #[test]
    fn filter4_examples() {
        let s17 = appendix2_catalog().get("S17").unwrap().scenario;
        assert!(filter4_priority(&s17));
        assert!(!filter4_priority(&Scenario::new(NP::S, TopDown, NP::S, ShortcutSet::EMPTY)));
        assert!(appendix2_catalog().distinct_scenarios().iter().all(filter4_priority));
    }

    #[test]
    fn shipped_pipeline_end_state() {
        let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
        let finals: HashSet<_> = run.final_set.iter().copied().collect();
        assert_eq!(finals, appendix2_catalog().keys().into_iter().collect());
        assert_eq!(run.final_set.len(), 23);
        assert_eq!(run.reports.len(), 4);
        for (i, r) in run.reports.iter().enumerate() {
            assert_eq!(r.input_count, r.output_count + r.eliminations.len());
            if i > 0 {
                assert_eq!(r.input_count, run.reports[i - 1].output_count);
            }
        }
        assert_eq!(run.reports[0].target_count, Some(178));
        assert!(!run.reports[0].matches_target);
        assert!(run.reports[3].note.is_some());
    }

    #[test]
    fn rule_a_only() {
        let cfg = PipelineConfig::shipped().only_rule("connected-flow").unwrap();
        let run = run_pipeline(&cfg, &enumerate_space()).unwrap();
        assert_eq!(run.final_set.len(), 184);
        assert_eq!(run.reports[0].eliminations.len(), 32);
    }

    #[test]
    fn rule_b_strictness_counts() {
        let space = enumerate_space();
        let strict = space.iter().filter(|s| !connected_flow(s) || !process_on_io_path(s)).count();
        let named = space.iter().filter(|s| !connected_flow(s) || pure_knowledge_pathway(s)).count();
        assert_eq!((strict, named), (56, 40));
    }

    #[test]
    fn empty_space_gives_four_zero_reports() {
        let run = run_pipeline(&PipelineConfig::shipped(), &[]).unwrap();
        assert!(run.final_set.is_empty());
        assert_eq!(run.reports.len(), 4);
        assert!(run.reports.iter().all(|r| r.input_count == 0 && r.output_count == 0));
    }

    #[test]
    fn duplicate_space_rejected() {
        let s = enumerate_space()[0];
        assert!(matches!(run_pipeline(&PipelineConfig::shipped(), &[s, s]), Err(Error::DuplicateScenario(_))));
    }

    #[test]
    fn table1_status() {
        let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
        let fates: Vec<_> = table1_catalog().entries.iter().map(|e| run.fate(&e.scenario)).collect();
        assert_eq!(fates[0], Fate::Survived);
        assert_eq!(fates[1], Fate::Eliminated { stage: 2, rule: "integration-without-feedback".into() });
        assert_eq!(fates[4], Fate::Eliminated { stage: 1, rule: "process-involvement".into() });
        assert_eq!(fates.iter().filter(|f| matches!(f, Fate::Eliminated { .. })).count(), 2);
    }

    #[test]
    fn config_errors_carry_lines() {
        let text = "[[rule]]\nname = \"x\"\nstage = 1\npredicate = \"no-such\"\naction = \"drop-if-true\"\n";
        match PipelineConfig::from_toml_str(text, "cfg.toml") {
            Err(Error::Config { path, line, message }) => {
                assert_eq!(path, "cfg.toml");
                assert_eq!(line, 4);
                assert!(message.contains("no-such"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(PipelineConfig::from_toml_str("", "e.toml"), Err(Error::EmptyRuleSet)));
        assert!(matches!(PipelineConfig::from_toml_str("[[rule]\n", "bad.toml"), Err(Error::Config { line: 1, .. })));
        let order = "[[rule]]\nname=\"a\"\nstage=2\npredicate=\"in-priority-catalog\"\naction=\"drop-if-true\"\n\
                     [[rule]]\nname=\"b\"\nstage=1\npredicate=\"in-priority-catalog\"\naction=\"drop-if-true\"\n";
        assert!(matches!(PipelineConfig::from_toml_str(order, "o.toml"), Err(Error::Config { line: 8, .. })));
    }

    #[test]
    fn custom_attribute_clause() {
        let text = "[[rule]]\nname = \"no-oe\"\nstage = 2\npredicate = \"custom-attribute-clause\"\n\
                    action = \"drop-if-true\"\nall = [\"sc:OE\"]\nnone = [\"ctl\"]\n";
        let cfg = PipelineConfig::from_toml_str(text, "c.toml").unwrap();
        let run = run_pipeline(&cfg, &enumerate_space()).unwrap();
        // sc:OE present in 4 of 8 topologies; ctl absent only for bottom-up (1 of 3).
        assert_eq!(run.reports[1].eliminations.len(), 9 * 4);
    }
}
