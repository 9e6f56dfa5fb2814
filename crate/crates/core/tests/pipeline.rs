mod support;

use std::collections::BTreeSet;

use scentax::filters::{run_pipeline, Fate, PipelineConfig};
use scentax::{appendix2_catalog, enumerate_space, table1_catalog, Error, Scenario};

#[test]
fn stage_reports_chain_and_conserve() {
    let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
    let mut total_eliminated = 0;
    for (i, r) in run.reports.iter().enumerate() {
        assert_eq!(r.stage as usize, i + 1);
        assert_eq!(r.input_count, r.output_count + r.eliminations.len());
        total_eliminated += r.eliminations.len();
    }
    assert_eq!(total_eliminated + run.final_set.len(), 216);
    let targets: Vec<_> = run.reports.iter().map(|r| r.target_count).collect();
    assert_eq!(targets, [Some(178), Some(141), Some(80), Some(24)]);
}

#[test]
fn every_scenario_has_exactly_one_fate() {
    let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
    for s in enumerate_space() {
        let eliminated = run.reports.iter().flat_map(|r| &r.eliminations).filter(|e| e.scenario == s).count();
        let survived = run.final_set.contains(&s) as usize;
        assert_eq!(eliminated + survived, 1);
    }
}

#[test]
fn rule_a_matches_brute_force_oracle() {
    let space = enumerate_space();
    let oracle: BTreeSet<Scenario> = space.iter().filter(|s| !support::oracle_connected(s)).copied().collect();
    let cfg = PipelineConfig::shipped().only_rule("connected-flow").unwrap();
    let run = run_pipeline(&cfg, &space).unwrap();
    let got: BTreeSet<Scenario> = run.reports[0].eliminations.iter().map(|e| e.scenario).collect();
    assert_eq!(got, oracle);
    assert_eq!(got.len(), 32);
}

#[test]
fn named_only_rule_b_is_a_documented_variant() {
    let text = PipelineConfig::shipped_toml().replace("rule-b = \"on-path\"", "rule-b = \"named-only\"");
    let cfg = PipelineConfig::from_toml_str(&text, "variant.toml").unwrap();
    let run = run_pipeline(&cfg, &enumerate_space()).unwrap();
    // 216 - 32 (rule A) - 7 (the named family minus its priority member)
    assert_eq!(run.reports[0].output_count, 177);
    let finals: BTreeSet<Scenario> = run.final_set.iter().copied().collect();
    assert_eq!(finals, appendix2_catalog().keys());
}

#[test]
fn table1_fates() {
    let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
    let fates: Vec<Fate> = table1_catalog().entries.iter().map(|e| run.fate(&e.scenario)).collect();
    assert_eq!(fates[0], Fate::Survived);
    assert!(matches!(&fates[1], Fate::Eliminated { stage: 2, .. }));
    assert_eq!(fates[2], Fate::Survived);
    assert_eq!(fates[3], Fate::Survived);
    assert!(matches!(&fates[4], Fate::Eliminated { stage: 1, rule } if rule == "process-involvement"));
}

#[test]
fn config_errors() {
    assert!(matches!(PipelineConfig::from_toml_str("", "empty.toml"), Err(Error::EmptyRuleSet)));
    let err = PipelineConfig::from_toml_str(
        "[[rule]]\nname = \"a\"\nstage = 7\npredicate = \"in-priority-catalog\"\naction = \"drop-if-true\"\n",
        "c.toml",
    )
    .unwrap_err();
    assert!(matches!(err, Error::Config { line: 3, .. }), "{err}");
    let dup = enumerate_space().into_iter().chain([enumerate_space()[0]]).collect::<Vec<_>>();
    assert!(matches!(run_pipeline(&PipelineConfig::shipped(), &dup), Err(Error::DuplicateScenario(_))));
}

#[test]
fn pipeline_json_round_trips_as_json() {
    let run = run_pipeline(&PipelineConfig::shipped(), &enumerate_space()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&run.to_json()).unwrap();
    assert_eq!(v["final"].as_array().unwrap().len(), 23);
    assert_eq!(v["reports"][3]["target_count"], 24);
}
