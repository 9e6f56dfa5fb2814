use proptest::prelude::*;
use scentax::notation::{format_scenario_with, DiagnosticKind, Glyphs};
use scentax::{enumerate_space, parse_scenario, NotationStyle};

fn style() -> impl Strategy<Value = NotationStyle> {
    prop_oneof![Just(NotationStyle::Bracketed), Just(NotationStyle::Flat), Just(NotationStyle::TopologyShort)]
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(i in 0usize..216, style in style(), unicode in any::<bool>()) {
        let s = enumerate_space()[i];
        let glyphs = if unicode { Glyphs::Unicode } else { Glyphs::Ascii };
        let text = format_scenario_with(&s, style, glyphs);
        let out = parse_scenario(&text);
        prop_assert_eq!(out.scenario, Some(s));
        prop_assert!(out.diagnostics.is_empty());
    }

    #[test]
    fn whitespace_does_not_matter(i in 0usize..216, style in style(), pad in "[ \t]{0,3}") {
        let s = enumerate_space()[i];
        let text = format_scenario_with(&s, style, Glyphs::Ascii).replace(", ", &format!(",{pad}"));
        prop_assert_eq!(parse_scenario(&text).scenario, Some(s));
    }

    #[test]
    fn arbitrary_text_never_panics(text in "\\PC{0,60}") {
        let out = parse_scenario(&text);
        prop_assert!(out.scenario.is_some() || out.errors().next().is_some());
        for d in &out.diagnostics {
            prop_assert!(d.span.start <= d.span.end && d.span.end <= text.len());
        }
    }

    #[test]
    fn truncation_yields_diagnostics(i in 0usize..216, cut in 1usize..20) {
        let s = enumerate_space()[i];
        let text = format_scenario_with(&s, NotationStyle::Flat, Glyphs::Ascii);
        let end = text.len().saturating_sub(cut);
        let short = &text[..end];
        let out = parse_scenario(short);
        prop_assert_eq!(out.scenario.is_none(), out.errors().next().is_some());
    }
}

#[test]
fn empty_input_is_an_error() {
    let out = parse_scenario("   ");
    assert!(out.scenario.is_none());
    assert_eq!(out.errors().next().map(|d| d.kind), Some(DiagnosticKind::EmptyInput));
}
