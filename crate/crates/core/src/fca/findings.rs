//! Checks of the headline structural claims about the priority catalog,
//! each phrased as an implication or a direct query over its context.

use serde::Serialize;

use super::context::{catalog_context, AttributeSchema, FormalContext};
use super::implications::{verify_implication, Implication};
use crate::enumeration::Catalog;
use crate::error::Result;
use crate::trajectory::Trajectory;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FindingReport {
    pub id: u8,
    pub title: &'static str,
    pub query: String,
    /// `None` for descriptive findings with nothing to confirm.
    pub holds: Option<bool>,
    pub counterexamples: Vec<String>,
    pub detail: String,
}

impl FindingReport {
    pub fn status(&self) -> &'static str {
        match self.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "reported",
        }
    }
}

fn check(ctx: &FormalContext, premise: &[&str], conclusion: &[&str]) -> Result<(Implication, Vec<String>)> {
    let imp = Implication::from_names(ctx, premise, conclusion)?;
    let v = verify_implication(ctx, &imp);
    Ok((imp, v.counterexamples))
}

fn labels_with(ctx: &FormalContext, attrs: &[&str]) -> Result<Vec<String>> {
    Ok(ctx.object_names(&ctx.common_objects(&ctx.attr_set(attrs)?)))
}

/// Pearson correlation of two equal-length series; 0 when either is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return 0.0;
    }
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        0.0
    } else {
        cov / (vx * vy).sqrt()
    }
}

/// Evaluates the five findings against `catalog` (normally the priority
/// catalog), using the default attribute schema.
pub fn evaluate_findings(catalog: &Catalog) -> Result<Vec<FindingReport>> {
    let ctx = catalog_context(catalog, &AttributeSchema::default())?;
    let mut out = Vec::new();

    // 1. Self-monitoring beyond the entry scenario.
    let first = catalog.entries.first().map(|e| e.label.clone()).unwrap_or_default();
    let rest = ctx.restrict_objects(|o| o != first);
    let (imp, cx) = check(&rest, &[], &["sc:OI"])?;
    let (_, dev_cx) = check(&ctx, &["tier:developing"], &["sc:OI"])?;
    let (_, exp_cx) = check(&ctx, &["tier:expert"], &["sc:OI", "sc:FI"])?;
    out.push(FindingReport {
        id: 1,
        title: "self-monitoring appears in every scenario after the first",
        query: format!("{} on all rows except {first}", imp.render(&rest)),
        holds: Some(cx.is_empty()),
        counterexamples: cx,
        detail: format!(
            "tier:developing => sc:OI {}; tier:expert => sc:OI, sc:FI {}",
            if dev_cx.is_empty() { "holds" } else { "fails" },
            if exp_cx.is_empty() { "holds" } else { "fails" },
        ),
    });

    // 2. Several distinct expert pathways.
    let with_bi = labels_with(&ctx, &["tier:expert", "bidirectional"])?;
    let expert = labels_with(&ctx, &["tier:expert"])?;
    let without_bi: Vec<String> = expert.iter().filter(|l| !with_bi.contains(l)).cloned().collect();
    let (imp, _) = check(&ctx, &["tier:expert"], &["bidirectional"])?;
    out.push(FindingReport {
        id: 2,
        title: "expert scenarios follow more than one internal arrangement",
        query: format!("expert rows split on bidirectional; {} expected to fail", imp.render(&ctx)),
        holds: Some(!with_bi.is_empty() && !without_bi.is_empty()),
        counterexamples: without_bi.clone(),
        detail: format!("bidirectional: {}; other: {}", with_bi.join(" "), without_bi.join(" ")),
    });

    // 3. Accumulation along the main developmental line.
    let labels = ["S1", "S6", "S7", "S14", "S17"];
    let (holds, cx, detail) = match Trajectory::from_labels("fca-mainstream", &labels, catalog) {
        Ok(t) => {
            let m = t.is_monotone();
            let cx = m.violations.iter().map(|v| labels[v.step].to_string()).collect();
            let detail = m
                .violations
                .iter()
                .map(|v| {
                    let lost: Vec<_> = v.lost.iter().map(|a| a.name()).collect();
                    format!("{} -> {} loses {}", labels[v.step - 1], labels[v.step], lost.join(" "))
                })
                .collect::<Vec<_>>()
                .join("; ");
            (Some(m.monotone), cx, detail)
        }
        Err(e) => (None, Vec::new(), e.to_string()),
    };
    out.push(FindingReport {
        id: 3,
        title: "capabilities accumulate without loss along the main trajectory",
        query: format!("attribute sets grow monotonically along {}", labels.join(" -> ")),
        holds,
        counterexamples: cx,
        detail,
    });

    // 4. Full engagement implies parallel entry.
    let (imp, cx) = check(&ctx, &["sc:OE", "sc:OI", "sc:FI", "bidirectional"], &["parallel-entry"])?;
    out.push(FindingReport {
        id: 4,
        title: "full shortcut topology with bidirectional flow implies parallel entry",
        query: imp.render(&ctx),
        holds: Some(cx.is_empty()),
        counterexamples: cx,
        detail: format!("rows with premise: {}", labels_with(&ctx, &["sc:OE", "sc:OI", "sc:FI", "bidirectional"])?.join(" ")),
    });

    // 5. Shortcut richness against bidirectionality.
    let shortcuts: Vec<f64> = catalog.entries.iter().map(|e| e.scenario.attributes().shortcut_count() as f64).collect();
    let bidir: Vec<f64> =
        catalog.entries.iter().map(|e| if e.scenario.attributes().bidirectional() { 1.0 } else { 0.0 }).collect();
    let r = pearson(&shortcuts, &bidir);
    out.push(FindingReport {
        id: 5,
        title: "shortcut count co-varies with bidirectionality",
        query: "point-biserial correlation of shortcut count and bidirectional".into(),
        holds: None,
        counterexamples: Vec::new(),
        detail: format!("r = {r:.4} over {} rows", catalog.len()),
    });
    Ok(out)
}

pub fn findings_table(reports: &[FindingReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("finding {}: {} [{}]\n  query: {}\n", r.id, r.title, r.status(), r.query));
        if !r.counterexamples.is_empty() {
            out.push_str(&format!("  counterexamples: {}\n", r.counterexamples.join(" ")));
        }
        if !r.detail.is_empty() {
            out.push_str(&format!("  {}\n", r.detail));
        }
    }
    out
}
