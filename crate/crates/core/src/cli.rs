//! Command-line front end. `main.rs` only parses arguments and prints what
//! [`run`] returns, so every command is testable in-process.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::enumeration::{appendix2_catalog, catalog_by_name, enumerate_space, table1_catalog, Catalog};
use crate::error::{Error, Result};
use crate::fca::{self, AttributeSchema, FormalContext};
use crate::filters::{run_pipeline, Fate, PipelineConfig};
use crate::model::{InternalArrangement, Scenario};
use crate::notation::{format_scenario_with, parse_scenario, topology_id, Glyphs, NotationStyle};
use crate::trajectory::{self, Trajectory, DEFAULT_STEP_RADIUS};

#[derive(Debug, Parser)]
#[command(name = "scentax", version, about = "Enumerate, filter and analyse learning-loop scenarios")]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate the scenario space.
    Enumerate(EnumerateArgs),
    /// Run the filter pipeline and print per-stage reports.
    Filter(FilterArgs),
    /// Build the concept lattice of a catalog or context file.
    Lattice(LatticeArgs),
    /// Print the implication basis and check the catalog findings.
    Implications(ImplicationsArgs),
    /// Report on named or custom trajectories, or search for shortest paths.
    Trajectory(TrajectoryArgs),
    /// Assign a tier to a scenario.
    Classify(ClassifyArgs),
    /// Parse notation and print the canonical configuration.
    Parse(ParseArgs),
    /// Reformat notation in a chosen style.
    Fmt(FmtArgs),
    /// Print a reference catalog.
    Catalog(CatalogArgs),
    /// Write contexts, catalogs, the space or the lattice in exchange formats.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Bracketed,
    Flat,
    TopologyShort,
}

impl From<Style> for NotationStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::Bracketed => NotationStyle::Bracketed,
            Style::Flat => NotationStyle::Flat,
            Style::TopologyShort => NotationStyle::TopologyShort,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Arrangement {
    BottomUp,
    TopDown,
    Bidirectional,
}

impl From<Arrangement> for InternalArrangement {
    fn from(a: Arrangement) -> Self {
        match a {
            Arrangement::BottomUp => InternalArrangement::BottomUp,
            Arrangement::TopDown => InternalArrangement::TopDown,
            Arrangement::Bidirectional => InternalArrangement::Bidirectional,
        }
    }
}

#[derive(Debug, Args)]
pub struct NotationOpts {
    #[arg(long, value_enum, default_value = "flat")]
    pub style: Style,
    /// Print Unicode arrows instead of ASCII.
    #[arg(long)]
    pub unicode: bool,
}

impl NotationOpts {
    fn render(&self, s: &Scenario) -> String {
        let glyphs = if self.unicode { Glyphs::Unicode } else { Glyphs::Ascii };
        format_scenario_with(s, self.style.into(), glyphs)
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// List every scenario, not just the count.
    #[arg(long)]
    pub full: bool,
    /// Print only the number of matching scenarios.
    #[arg(long)]
    pub count: bool,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
    pub topology: Option<u8>,
    #[arg(long, value_enum)]
    pub internal: Option<Arrangement>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
    #[command(flatten)]
    pub notation: NotationOpts,
}

#[derive(Debug, Args)]
pub struct FilterArgs {
    /// Pipeline configuration (TOML). Defaults to the shipped one.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Run only this rule.
    #[arg(long)]
    pub only_rule: Option<String>,
    /// Exit nonzero unless the final set equals the priority catalog.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ContextOpts {
    /// Built-in catalog (`appendix2` or `table1`).
    #[arg(long, default_value = "appendix2", conflicts_with = "context")]
    pub catalog: String,
    /// Context file (`.cxt` or `.csv`) instead of a catalog.
    #[arg(long)]
    pub context: Option<PathBuf>,
    /// Leave out the derived attributes.
    #[arg(long)]
    pub no_derived: bool,
    /// Leave out the tier attributes.
    #[arg(long)]
    pub no_tiers: bool,
    /// Merge objects with identical rows.
    #[arg(long)]
    pub clarify: bool,
}

impl ContextOpts {
    fn load(&self) -> Result<FormalContext> {
        let ctx = match &self.context {
            Some(path) => read_context_file(path)?,
            None => {
                let schema = AttributeSchema { derived: !self.no_derived, tiers: !self.no_tiers };
                fca::catalog_context(named_catalog(&self.catalog)?, &schema)?
            }
        };
        Ok(if self.clarify { ctx.clarify_objects() } else { ctx })
    }
}

fn read_context_file(path: &Path) -> Result<FormalContext> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => fca::read_csv(&text),
        _ => fca::read_cxt(&text),
    }
}

fn named_catalog(name: &str) -> Result<&'static Catalog> {
    catalog_by_name(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub context: ContextOpts,
    /// Output format; inferred from `--out` when omitted.
    #[arg(long, value_enum)]
    pub format: Option<LatticeFormat>,
}

#[derive(Debug, Args)]
pub struct ImplicationsArgs {
    #[command(flatten)]
    pub context: ContextOpts,
    /// Extra implication to check, e.g. `tier:expert => sc:OI`.
    #[arg(long = "verify")]
    pub verify: Vec<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    /// Named trajectories; all of them when none are given.
    pub names: Vec<String>,
    /// Custom trajectory as comma-separated catalog labels.
    #[arg(long, value_delimiter = ',', conflicts_with = "names")]
    pub steps: Vec<String>,
    /// Shortest paths from this scenario (label or notation) ...
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    /// ... to this one.
    #[arg(long, requires = "from")]
    pub to: Option<String>,
    /// Largest attribute change allowed per hop.
    #[arg(long, default_value_t = DEFAULT_STEP_RADIUS)]
    pub radius: u32,
    /// Search the whole space instead of the priority catalog.
    #[arg(long)]
    pub space: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Scenario notation or catalog label.
    pub scenario: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ParseArgs {
    pub notation: String,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FmtArgs {
    pub notation: String,
    #[command(flatten)]
    pub notation_opts: NotationOpts,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Show the literature table instead of the priority catalog.
    #[arg(long)]
    pub table1: bool,
    /// Add each row's fate under the shipped pipeline.
    #[arg(long)]
    pub filter_status: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Context,
    Catalog,
    Space,
    Lattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Cxt,
    Csv,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(value_enum)]
    pub what: ExportWhat,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ExportFormat,
    #[command(flatten)]
    pub context: ContextOpts,
}

/// What a command produced: text for stdout (or `--out`), messages for
/// stderr and the process exit code.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

/// A catalog label from either catalog, or notation.
pub fn resolve_scenario(arg: &str) -> Result<Scenario> {
    if let Some(e) = appendix2_catalog().get(arg.trim()).or_else(|| table1_catalog().get(arg.trim())) {
        return Ok(e.scenario);
    }
    let out = parse_scenario(arg);
    if !out.broken_links.is_empty() {
        return Err(Error::NotInSpace);
    }
    out.into_result().map_err(Error::Parse)
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Filter(a) => filter(a),
        Command::Lattice(a) => lattice(a, cli.out.as_deref()),
        Command::Implications(a) => implications(a),
        Command::Trajectory(a) => trajectory_cmd(a),
        Command::Classify(a) => classify(a),
        Command::Parse(a) => parse(a),
        Command::Fmt(a) => Ok(Outcome::ok(format!("{}\n", a.notation_opts.render(&resolve_scenario(&a.notation)?)))),
        Command::Catalog(a) => catalog(a),
        Command::Export(a) => export(a),
    }
}

#[derive(Serialize)]
struct ScenarioRow {
    index: usize,
    #[serde(flatten)]
    scenario: Scenario,
    topology: u8,
    notation: String,
}

fn enumerate(a: &EnumerateArgs) -> Result<Outcome> {
    let space: Vec<(usize, Scenario)> = enumerate_space()
        .into_iter()
        .enumerate()
        .filter(|(_, s)| a.topology.is_none_or(|t| topology_id(s.shortcuts) == t))
        .filter(|(_, s)| a.internal.is_none_or(|i| s.internal == i.into()))
        .collect();
    if a.count {
        return Ok(Outcome::ok(format!("{}\n", space.len())));
    }
    if !a.full {
        let text = if a.topology.is_none() && a.internal.is_none() {
            format!("{} scenarios (3 internal × 9 cross-cluster × 8 topologies)\n", space.len())
        } else {
            format!("{} scenarios\n", space.len())
        };
        return Ok(Outcome::ok(text));
    }
    Ok(Outcome::ok(match a.format {
        Format::Json => json(
            &space
                .iter()
                .map(|&(index, scenario)| ScenarioRow {
                    index,
                    scenario,
                    topology: topology_id(scenario.shortcuts),
                    notation: a.notation.render(&scenario),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Table => {
            let mut out = String::new();
            for (i, s) in &space {
                let _ = writeln!(out, "{:>3}  {}", i + 1, a.notation.render(s));
            }
            out
        }
    }))
}

fn filter(a: &FilterArgs) -> Result<Outcome> {
    let mut cfg = match &a.config {
        Some(path) => PipelineConfig::from_toml_str(&std::fs::read_to_string(path)?, &path.display().to_string())?,
        None => PipelineConfig::shipped(),
    };
    if let Some(rule) = &a.only_rule {
        cfg = cfg.only_rule(rule)?;
    }
    let run = run_pipeline(&cfg, &enumerate_space())?;
    let mut out = Outcome::ok(match a.format {
        Format::Json => {
            let mut s = run.to_json();
            s.push('\n');
            s
        }
        Format::Table => run.to_table(),
    });
    if a.strict {
        let got: std::collections::BTreeSet<Scenario> = run.final_set.iter().copied().collect();
        if got != appendix2_catalog().keys() {
            out.stderr = format!(
                "strict: final set has {} scenarios, expected the {} priority configurations\n",
                got.len(),
                appendix2_catalog().keys().len()
            );
            out.code = 2;
        }
    }
    Ok(out)
}

fn lattice(a: &LatticeArgs, out: Option<&Path>) -> Result<Outcome> {
    let ctx = a.context.load()?;
    let lat = fca::build_lattice(fca::all_concepts(&ctx))?;
    let inferred = out.and_then(|p| p.extension()).and_then(|e| e.to_str()).map(|e| e == "json");
    let format = a.format.unwrap_or(if inferred == Some(true) { LatticeFormat::Json } else { LatticeFormat::Dot });
    Ok(Outcome::ok(match format {
        LatticeFormat::Dot => fca::lattice_to_dot(&ctx, &lat),
        LatticeFormat::Json => lat.to_json(&ctx),
    }))
}

#[derive(Serialize)]
struct ImplicationReport {
    basis: Vec<fca::implications::ImplicationView>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    checks: Vec<CheckView>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    findings: Vec<fca::FindingReport>,
}

#[derive(Serialize)]
struct CheckView {
    implication: String,
    #[serde(flatten)]
    result: fca::Verification,
}

fn implications(a: &ImplicationsArgs) -> Result<Outcome> {
    let ctx = a.context.load()?;
    let basis = fca::implication_basis(&ctx);
    let checks = a
        .verify
        .iter()
        .map(|text| {
            let imp = fca::parse_implication(&ctx, text)?;
            Ok(CheckView { implication: imp.render(&ctx), result: fca::verify_implication(&ctx, &imp) })
        })
        .collect::<Result<Vec<_>>>()?;
    let findings = match (&a.context.context, a.context.catalog.as_str()) {
        (None, "appendix2" | "priority") => fca::evaluate_findings(appendix2_catalog())?,
        _ => Vec::new(),
    };
    Ok(Outcome::ok(match a.format {
        Format::Json => json(&ImplicationReport {
            basis: basis.iter().map(|i| i.view(&ctx)).collect(),
            checks,
            findings,
        }),
        Format::Table => {
            let mut out = format!("implication basis ({} implications)\n", basis.len());
            for imp in &basis {
                let support = ctx.common_objects(&imp.premise).count_ones(..);
                let _ = writeln!(out, "  <{support}> {}", imp.render(&ctx));
            }
            for c in &checks {
                let status = if c.result.holds { "holds" } else { "fails" };
                let _ = writeln!(out, "check {}: {status}", c.implication);
                if !c.result.counterexamples.is_empty() {
                    let _ = writeln!(out, "  counterexamples: {}", c.result.counterexamples.join(" "));
                }
            }
            if !findings.is_empty() {
                out.push('\n');
                out.push_str(&fca::findings::findings_table(&findings));
            }
            out
        }
    }))
}

#[derive(Serialize)]
struct PathReport {
    from: String,
    to: String,
    radius: u32,
    within: &'static str,
    hops: usize,
    paths: Vec<Vec<String>>,
}

fn label_for(s: &Scenario) -> String {
    appendix2_catalog()
        .matching(s)
        .first()
        .map(|e| e.label.clone())
        .unwrap_or_else(|| format_scenario_with(s, NotationStyle::TopologyShort, Glyphs::Ascii))
}

fn trajectory_cmd(a: &TrajectoryArgs) -> Result<Outcome> {
    if let (Some(from), Some(to)) = (&a.from, &a.to) {
        let (src, dst) = (resolve_scenario(from)?, resolve_scenario(to)?);
        let within: Vec<Scenario> = if a.space {
            enumerate_space()
        } else {
            appendix2_catalog().entries.iter().map(|e| e.scenario).collect()
        };
        let paths = trajectory::shortest_paths(&src, &dst, &within, a.radius)?;
        let report = PathReport {
            from: label_for(&src),
            to: label_for(&dst),
            radius: a.radius,
            within: if a.space { "space" } else { "appendix2" },
            hops: paths[0].len() - 1,
            paths: paths.iter().map(|p| p.iter().map(label_for).collect()).collect(),
        };
        return Ok(Outcome::ok(match a.format {
            Format::Json => json(&report),
            Format::Table => {
                let mut out = format!(
                    "{} -> {}: {} hop(s) within {} at radius {}\n",
                    report.from, report.to, report.hops, report.within, report.radius
                );
                for p in &report.paths {
                    let _ = writeln!(out, "  {}", p.join(" -> "));
                }
                out
            }
        }));
    }
    let trajectories: Vec<Trajectory> = if !a.steps.is_empty() {
        vec![Trajectory::from_labels("custom", &a.steps, appendix2_catalog())?]
    } else if a.names.is_empty() {
        trajectory::named_trajectories()
    } else {
        a.names
            .iter()
            .map(|n| trajectory::named_trajectory(n).ok_or_else(|| Error::UnknownLabel(n.clone())))
            .collect::<Result<_>>()?
    };
    Ok(Outcome::ok(match a.format {
        Format::Json => {
            let values: Vec<serde_json::Value> =
                trajectories.iter().map(|t| serde_json::from_str(&t.to_json())).collect::<std::result::Result<_, _>>()?;
            json(&values)
        }
        Format::Table => trajectories.iter().map(|t| t.to_table()).collect::<Vec<_>>().join("\n"),
    }))
}

fn classify(a: &ClassifyArgs) -> Result<Outcome> {
    let s = resolve_scenario(&a.scenario)?;
    let c = trajectory::classify_tier(&s, appendix2_catalog())?;
    let mut out = Outcome::ok(match a.format {
        Format::Json => json(&c),
        Format::Table => {
            let how = if c.exact {
                format!("exact match {}", c.nearest.join(", "))
            } else {
                format!("nearest {} at distance {}", c.nearest.join(", "), c.distance)
            };
            format!("{} ({how})\n{}\n", c.tier, c.rationale)
        }
    });
    if let Some(w) = &c.warning {
        out.stderr = format!("warning: {w}\n");
    }
    Ok(out)
}

fn parse(a: &ParseArgs) -> Result<Outcome> {
    let outcome = parse_scenario(&a.notation);
    let failed = outcome.scenario.is_none();
    let mut out = Outcome::ok(match a.format {
        Format::Json => json(&outcome),
        Format::Table => {
            let mut text = String::new();
            if let Some(s) = &outcome.scenario {
                let _ = writeln!(
                    text,
                    "entry: {}\ninternal: {}\nexit: {}\nshortcuts: {}\ntopology: {}",
                    pattern(s.entry),
                    s.internal.name(),
                    pattern(s.exit),
                    s.shortcuts.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" "),
                    topology_id(s.shortcuts)
                );
            }
            for (x, y) in &outcome.broken_links {
                let _ = writeln!(text, "broken link: {}{}", x.symbol(), y.symbol());
            }
            text
        }
    });
    out.stderr = outcome.diagnostics.iter().map(|d| format!("{d}\n")).collect();
    if failed {
        out.code = 1;
    }
    Ok(out)
}

fn pattern(p: crate::model::NodePattern) -> String {
    let members: Vec<String> = p.members().iter().map(|n| n.node().symbol().to_string()).collect();
    format!("{{{}}}", members.join(","))
}

#[derive(Serialize)]
struct CatalogRow<'a> {
    #[serde(flatten)]
    entry: &'a crate::enumeration::CatalogEntry,
    topology: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    fate: Option<Fate>,
}

fn catalog(a: &CatalogArgs) -> Result<Outcome> {
    let cat = if a.table1 { table1_catalog() } else { appendix2_catalog() };
    let run = if a.filter_status { Some(run_pipeline(&PipelineConfig::shipped(), &enumerate_space())?) } else { None };
    let rows: Vec<CatalogRow> = cat
        .entries
        .iter()
        .map(|entry| CatalogRow {
            entry,
            topology: topology_id(entry.scenario.shortcuts),
            fate: run.as_ref().map(|r| r.fate(&entry.scenario)),
        })
        .collect();
    Ok(Outcome::ok(match a.format {
        Format::Json => json(&rows),
        Format::Table => {
            let mut out = String::new();
            for r in &rows {
                let tier = r.entry.tier.map_or("-".to_string(), |t| t.to_string());
                let notation = format_scenario_with(&r.entry.scenario, NotationStyle::TopologyShort, Glyphs::Ascii);
                let _ = write!(out, "{:<4} {:<15} {:<44} {}", r.entry.label, tier, notation, r.entry.description);
                match &r.fate {
                    Some(Fate::Survived) => out.push_str("  [survives]"),
                    Some(Fate::Eliminated { stage, rule }) => {
                        let _ = write!(out, "  [eliminated-by-pipeline: stage {stage} {rule}]");
                    }
                    Some(Fate::NotInSpace) => out.push_str("  [not-in-space]"),
                    None => {}
                }
                out.push('\n');
            }
            if run.is_some() {
                let eliminated = rows.iter().filter(|r| matches!(r.fate, Some(Fate::Eliminated { .. }))).count();
                let _ = writeln!(out, "{} rows, {eliminated} eliminated-by-pipeline", rows.len());
            }
            out
        }
    }))
}

fn export(a: &ExportArgs) -> Result<Outcome> {
    let bad = |what: &str| Error::Format(format!("{what} cannot be exported as {:?}", a.format).to_lowercase());
    let text = match (a.what, a.format) {
        (ExportWhat::Context, ExportFormat::Cxt) => fca::write_cxt(&a.context.load()?),
        (ExportWhat::Context, ExportFormat::Csv) => fca::write_csv(&a.context.load()?)?,
        (ExportWhat::Context, ExportFormat::Json) => {
            let ctx = a.context.load()?;
            let rows: BTreeMap<&str, Vec<String>> = ctx
                .objects()
                .iter()
                .enumerate()
                .map(|(g, o)| (o.as_str(), ctx.attr_names(ctx.row(g))))
                .collect();
            json(&serde_json::json!({ "attributes": ctx.attributes(), "objects": ctx.objects(), "rows": rows }))
        }
        (ExportWhat::Catalog, ExportFormat::Json) => named_catalog(&a.context.catalog)?.to_json(),
        (ExportWhat::Space, ExportFormat::Json) => json(
            &enumerate_space()
                .into_iter()
                .enumerate()
                .map(|(index, scenario)| ScenarioRow {
                    index,
                    scenario,
                    topology: topology_id(scenario.shortcuts),
                    notation: format_scenario_with(&scenario, NotationStyle::Flat, Glyphs::Ascii),
                })
                .collect::<Vec<_>>(),
        ),
        (ExportWhat::Lattice, ExportFormat::Dot | ExportFormat::Json) => {
            let ctx = a.context.load()?;
            let lat = fca::build_lattice(fca::all_concepts(&ctx))?;
            if a.format == ExportFormat::Dot {
                fca::lattice_to_dot(&ctx, &lat)
            } else {
                lat.to_json(&ctx)
            }
        }
        (ExportWhat::Context, _) => return Err(bad("context")),
        (ExportWhat::Catalog, _) => return Err(bad("catalog")),
        (ExportWhat::Space, _) => return Err(bad("space")),
        (ExportWhat::Lattice, _) => return Err(bad("lattice")),
    };
    Ok(Outcome::ok(text))
}
