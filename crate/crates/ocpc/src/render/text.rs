//! Plain-text tables for the terminal.

use ocpc_core::cube::CountGrid;
use ocpc_core::{ModelDiff, Ocel};

use super::fmt_seconds;

fn table(rows: Vec<Vec<String>>) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; width];
    for r in &rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{c:<w$}", w = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn grid(g: &CountGrid) -> String {
    let corner = match &g.row_axis {
        ocpc_core::GridAxis::Dim(d) => d.label(),
        ocpc_core::GridAxis::All => "ALL".into(),
    };
    let mut rows = vec![std::iter::once(corner)
        .chain(g.cols.iter().map(ToString::to_string))
        .collect()];
    for (label, counts) in g.rows.iter().zip(&g.counts) {
        rows.push(
            std::iter::once(label.to_string())
                .chain(counts.iter().map(ToString::to_string))
                .collect(),
        );
    }
    table(rows)
}

pub fn summary(log: &Ocel) -> String {
    let mut rows = vec![
        vec!["events".into(), log.len().to_string()],
        vec!["objects".into(), log.objects().len().to_string()],
        vec!["object types".into(), log.object_types().len().to_string()],
    ];
    for t in log.object_types() {
        let n = log.objects().values().filter(|o| &o.otype == t).count();
        rows.push(vec![format!("  {t}"), n.to_string()]);
    }
    rows.push(vec!["attributes".into(), log.attribute_names().len().to_string()]);
    table(rows)
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn diff(d: &ModelDiff) -> String {
    let mut rows = vec![vec![
        "type".into(),
        "activity".into(),
        "presence".into(),
        "left".into(),
        "right".into(),
        "delta".into(),
    ]];
    for a in &d.activities {
        rows.push(vec![
            a.otype.to_string(),
            a.activity.to_string(),
            a.presence.as_str().into(),
            opt(a.left),
            opt(a.right),
            format!("{:+}", a.frequency_delta()),
        ]);
    }
    let mut out = table(rows);
    out.push('\n');
    let mut rows = vec![vec![
        "type".into(),
        "edge".into(),
        "presence".into(),
        "left".into(),
        "right".into(),
        "mean left".into(),
        "mean right".into(),
    ]];
    for e in &d.edges {
        rows.push(vec![
            e.otype.to_string(),
            format!("{} -> {}", e.source, e.target),
            e.presence.as_str().into(),
            opt(e.left.as_ref().map(|s| s.frequency)),
            opt(e.right.as_ref().map(|s| s.frequency)),
            opt(e.left.as_ref().map(|s| fmt_seconds(s.mean_duration))),
            opt(e.right.as_ref().map(|s| fmt_seconds(s.mean_duration))),
        ]);
    }
    out.push_str(&table(rows));
    out
}
