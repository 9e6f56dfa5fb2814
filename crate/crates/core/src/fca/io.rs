//! Burmeister `.cxt`, CSV cross tables and Graphviz DOT.

use std::fmt::Write as _;

use super::context::{AttrSet, FormalContext};
use super::lattice::ConceptLattice;
use crate::error::{Error, Result};

pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "B\n\n{}\n{}\n", ctx.n_objects(), ctx.n_attributes());
    for o in ctx.objects() {
        let _ = writeln!(out, "{o}");
    }
    for a in ctx.attributes() {
        let _ = writeln!(out, "{a}");
    }
    for g in 0..ctx.n_objects() {
        let row: String = (0..ctx.n_attributes()).map(|a| if ctx.has(g, a) { 'X' } else { '.' }).collect();
        let _ = writeln!(out, "{row}");
    }
    out
}

pub fn read_cxt(text: &str) -> Result<FormalContext> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let err = |line: usize, msg: &str| Error::Format(format!("cxt line {}: {msg}", line + 1));
    if lines.first().map(|l| l.trim()) != Some("B") {
        return Err(err(0, "expected `B` header"));
    }
    // Optional context name line, then the two counts.
    let mut i = 1;
    while i < lines.len() && lines[i].trim().parse::<usize>().is_err() {
        i += 1;
        if i > 3 {
            return Err(err(i, "expected object count"));
        }
    }
    let count = |i: usize| -> Result<usize> {
        lines.get(i).and_then(|l| l.trim().parse().ok()).ok_or_else(|| err(i, "expected a count"))
    };
    let g = count(i)?;
    let m = count(i + 1)?;
    i += 2;
    while i < lines.len() && lines[i].trim().is_empty() {
        i += 1;
    }
    let take = |i: usize, n: usize| -> Result<Vec<String>> {
        lines
            .get(i..i + n)
            .map(|s| s.iter().map(|l| l.trim().to_string()).collect())
            .ok_or_else(|| err(i, "file ends early"))
    };
    let objects = take(i, g)?;
    let attributes = take(i + g, m)?;
    i += g + m;
    let mut incidence = Vec::with_capacity(g);
    for k in 0..g {
        let line = lines.get(i + k).ok_or_else(|| err(i + k, "missing incidence row"))?.trim();
        if line.chars().count() != m {
            return Err(err(i + k, &format!("row has {} cells, expected {m}", line.chars().count())));
        }
        let row = line
            .chars()
            .map(|c| match c {
                'X' | 'x' => Ok(true),
                '.' => Ok(false),
                other => Err(err(i + k, &format!("unexpected cell `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        incidence.push(row);
    }
    FormalContext::new(objects, attributes, incidence)
}

/// Header row is `,attr1,attr2,...`; cells are `X` or empty.
pub fn write_csv(ctx: &FormalContext) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(ctx.attributes().iter().cloned());
    w.write_record(&header)?;
    for g in 0..ctx.n_objects() {
        let mut rec = vec![ctx.objects()[g].clone()];
        rec.extend((0..ctx.n_attributes()).map(|a| if ctx.has(g, a) { "X".to_string() } else { String::new() }));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn read_csv(text: &str) -> Result<FormalContext> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let attributes: Vec<String> = r.headers()?.iter().skip(1).map(|s| s.trim().to_string()).collect();
    let mut objects = Vec::new();
    let mut incidence = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let mut cells = rec.iter();
        objects.push(cells.next().unwrap_or_default().trim().to_string());
        let row: Vec<bool> = cells
            .map(|c| matches!(c.trim(), "X" | "x" | "1" | "true"))
            .collect();
        incidence.push(row);
    }
    FormalContext::new(objects, attributes, incidence)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with reduced labelling: each attribute is shown on the
/// concept that introduces it, each object on its object concept. Edges
/// run from lower to upper concept.
pub fn lattice_to_dot(ctx: &FormalContext, lattice: &ConceptLattice) -> String {
    let n = lattice.len();
    let mut attr_labels: Vec<Vec<&str>> = vec![Vec::new(); n];
    let mut obj_labels: Vec<Vec<&str>> = vec![Vec::new(); n];
    for a in 0..ctx.n_attributes() {
        attr_labels[lattice.attribute_concept(ctx, a)].push(&ctx.attributes()[a]);
    }
    for g in 0..ctx.n_objects() {
        obj_labels[lattice.object_concept(ctx, g)].push(&ctx.objects()[g]);
    }
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box, fontsize=10];\n");
    for i in 0..n {
        let c = &lattice.concepts[i];
        let mut label = format!("#{i} ({})", c.extent.count_ones(..));
        if !attr_labels[i].is_empty() {
            label.push_str("\\n");
            label.push_str(&dot_escape(&attr_labels[i].join(", ")));
        }
        if !obj_labels[i].is_empty() {
            label.push_str("\\n");
            label.push_str(&dot_escape(&obj_labels[i].join(", ")));
        }
        let _ = writeln!(out, "  c{i} [label=\"{label}\"];");
    }
    for &(lo, hi) in &lattice.covers {
        let _ = writeln!(out, "  c{lo} -> c{hi};");
    }
    out.push_str("}\n");
    out
}

/// Renders a context as a plain text cross table.
pub fn context_table(ctx: &FormalContext) -> String {
    let width = ctx.objects().iter().map(|o| o.len()).max().unwrap_or(0);
    let mut out = format!("{:width$}", "");
    for (i, _) in ctx.attributes().iter().enumerate() {
        let _ = write!(out, " {}", i % 10);
    }
    out.push('\n');
    for g in 0..ctx.n_objects() {
        let _ = write!(out, "{:width$}", ctx.objects()[g]);
        for a in 0..ctx.n_attributes() {
            out.push_str(if ctx.has(g, a) { " X" } else { " ." });
        }
        out.push('\n');
    }
    for (i, a) in ctx.attributes().iter().enumerate() {
        let _ = writeln!(out, "  {i:>2} {a}");
    }
    out
}

/// Attribute set rendered as `{a, b}`.
pub fn render_set(ctx: &FormalContext, set: &AttrSet) -> String {
    format!("{{{}}}", ctx.attr_names(set).join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::appendix2_catalog;
    use crate::fca::concepts::all_concepts;
    use crate::fca::context::{catalog_context, AttributeSchema};
    use crate::fca::lattice::build_lattice;

    fn ctx() -> FormalContext {
        catalog_context(appendix2_catalog(), &AttributeSchema::default()).unwrap()
    }

    #[test]
    fn cxt_round_trip() {
        let k = ctx();
        let text = write_cxt(&k);
        assert!(text.starts_with("B\n\n24\n15\n\nS1\n"));
        assert_eq!(read_cxt(&text).unwrap(), k);
    }

    #[test]
    fn cxt_with_name_line() {
        let k = read_cxt("B\nsmall\n2\n1\n\ng1\ng2\nm\nX\n.\n").unwrap();
        assert_eq!(k.objects(), ["g1", "g2"]);
        assert!(k.has(0, 0) && !k.has(1, 0));
        assert!(read_cxt("B\n\n2\n1\n\ng1\ng2\nm\nX\n").is_err());
        assert!(read_cxt("B\n\n1\n1\n\ng1\nm\nZ\n").is_err());
        assert!(read_cxt("A\n").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let k = ctx();
        let text = write_csv(&k).unwrap();
        assert!(text.starts_with(",entry:P,entry:S,mon,ctl,"));
        assert_eq!(read_csv(&text).unwrap(), k);
    }

    #[test]
    fn dot_has_one_source_and_sink() {
        let k = ctx();
        let lat = build_lattice(all_concepts(&k)).unwrap();
        let dot = lattice_to_dot(&k, &lat);
        assert!(dot.starts_with("digraph lattice {"));
        let edges: Vec<(usize, usize)> = dot
            .lines()
            .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -> "))
            .map(|(a, b)| (a[1..].parse().unwrap(), b[1..].parse().unwrap()))
            .collect();
        assert_eq!(edges.len(), lat.covers.len());
        let sources: Vec<usize> = (0..lat.len()).filter(|i| !edges.iter().any(|&(_, h)| h == *i)).collect();
        let sinks: Vec<usize> = (0..lat.len()).filter(|i| !edges.iter().any(|&(l, _)| l == *i)).collect();
        assert_eq!(sources, [lat.bottom]);
        assert_eq!(sinks, [lat.top]);
        // each attribute name and object label shows up exactly once
        let tokens: Vec<&str> = dot
            .lines()
            .filter_map(|l| l.split_once("label=\"")?.1.strip_suffix("\"];"))
            .flat_map(|label| label.split("\\n").skip(1))
            .flat_map(|part| part.split(", "))
            .collect();
        for name in k.attributes().iter().chain(k.objects()) {
            assert_eq!(tokens.iter().filter(|t| **t == name).count(), 1, "{name}");
        }
        assert_eq!(tokens.len(), k.n_attributes() + k.n_objects());
    }
}
