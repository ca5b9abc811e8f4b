//! Rendering results as JSON, CSV or aligned text.

use clap::ValueEnum;
use serde::Serialize;
use twistroot_core::classify::RootClassRecord;
use twistroot_core::DataSet;

use crate::reproduce::{Report, RowOutcome};
use crate::schema::{DataSetJson, RecordJson};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Table,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv of utf-8 fields")
}

/// Left-aligned columns separated by ` | `.
fn aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0; width];
    for r in rows {
        for (i, cell) in r.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| if i + 1 == r.len() { c.clone() } else { format!("{c:<w$}", w = widths[i]) })
            .collect();
        out.push_str(&cells.join(" | "));
        out.push('\n');
    }
    out
}

/// CSV columns: `n,g0,a,cones,genus`, with `a` and `cones` space separated.
pub fn datasets(list: &[DataSet], format: Format) -> String {
    match format {
        Format::Json => json(&list.iter().map(DataSetJson::from_dataset).collect::<Vec<_>>()),
        Format::Csv => csv(
            &["n", "g0", "a", "cones", "genus"],
            list.iter().map(|d| {
                vec![
                    d.degree().to_string(),
                    d.quotient_genus().to_string(),
                    d.residues().iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                    d.cones().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
                    d.genus().to_string(),
                ]
            }),
        ),
        Format::Table => list.iter().map(|d| format!("{d}\n")).collect(),
    }
}

/// CSV columns: `degree`, then one data set per component in layout order.
pub fn records(list: &[RootClassRecord], format: Format) -> String {
    match format {
        Format::Json => json(&list.iter().map(RecordJson::from).collect::<Vec<_>>()),
        Format::Csv => {
            let paths: Vec<String> =
                list.first().map(|r| r.components.iter().map(|c| c.path.to_string()).collect()).unwrap_or_default();
            let mut header = vec!["degree"];
            header.extend(paths.iter().map(String::as_str));
            csv(
                &header,
                list.iter().map(|r| {
                    let mut row = vec![r.degree.to_string()];
                    row.extend(r.components.iter().map(|c| c.data.to_string()));
                    row
                }),
            )
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = list
                .iter()
                .map(|r| {
                    let mut row = vec![r.degree.to_string()];
                    row.extend(r.components.iter().map(|c| c.data.to_string()));
                    row
                })
                .collect();
            aligned(&rows)
        }
    }
}

/// Summary line per table, followed by every discrepancy.
pub fn reports(list: &[Report], format: Format) -> String {
    match format {
        Format::Json => json(list),
        Format::Csv => csv(
            &["table", "rows", "matched", "missing", "extra", "errata_hits", "unexplained"],
            list.iter().map(|r| {
                vec![
                    r.table.clone(),
                    r.printed.len().to_string(),
                    r.matched().to_string(),
                    r.missing().to_string(),
                    r.extra.len().to_string(),
                    r.errata_hits().to_string(),
                    r.unexplained().to_string(),
                ]
            }),
        ),
        Format::Table => {
            let mut out = String::new();
            for r in list {
                if list.len() > 1 {
                    out.push_str(&format!("{}: ", r.table));
                }
                out.push_str(&format!("{r}\n"));
                for p in &r.printed {
                    let row = format!("{} | {}", p.row.degree, p.row.data.join(" | "));
                    match &p.outcome {
                        RowOutcome::Matched => {}
                        RowOutcome::Missing { findings, explained } => {
                            let tag = if *explained { "erratum" } else { "UNEXPLAINED" };
                            for f in findings {
                                out.push_str(&format!(
                                    "  missing [{tag}, {}] {row}: {}\n",
                                    f.invariant.as_str(),
                                    f.detail
                                ));
                            }
                        }
                        RowOutcome::Inconsistent => {
                            out.push_str(&format!("  missing [UNEXPLAINED] {row}: glues but is not classified\n"));
                        }
                    }
                }
                for e in &r.extra {
                    let tag = if e.explained { "erratum" } else { "UNEXPLAINED" };
                    out.push_str(&format!("  extra [{tag}, omitted] {} | {}\n", e.row.degree, e.row.data.join(" | ")));
                }
                for s in &r.stale {
                    out.push_str(&format!(
                        "  stale erratum [{}] {} | {}\n",
                        s.invariant.as_str(),
                        s.row.degree,
                        s.row.data.join(" | ")
                    ));
                }
            }
            out
        }
    }
}
