//! Comparing a printed table with the classification of its multicurve.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use twistroot_core::arith::lcm;
use twistroot_core::bounds::search_cap;
use twistroot_core::classify::{glue_row, table_rows, ComponentPath, Layout, RootClassRecord, RowKey};
use twistroot_core::{DataSet, Mode, RawDataSet};

use crate::run::{self, RunError};
use crate::tables::{Erratum, GoldenRow, GoldenTable, Invariant};

/// Why a printed row is not a row of the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub invariant: Invariant,
    pub detail: String,
}

impl Finding {
    fn new(invariant: Invariant, detail: impl Into<String>) -> Self {
        Finding { invariant, detail: detail.into() }
    }
}

/// How one printed row fared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RowOutcome {
    Matched,
    Missing {
        findings: Vec<Finding>,
        explained: bool,
    },
    /// The row glues on its own but the classification lacks it.
    Inconsistent,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrintedRow {
    pub row: GoldenRow,
    pub outcome: RowOutcome,
}

/// A classified row the table does not print.
#[derive(Clone, Debug, Serialize)]
pub struct ExtraRow {
    pub row: GoldenRow,
    pub explained: bool,
}

/// Outcome of one reproduction.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub table: String,
    pub printed: Vec<PrintedRow>,
    pub extra: Vec<ExtraRow>,
    /// Errata for this table that matched nothing.
    pub stale: Vec<Erratum>,
}

impl Report {
    pub fn matched(&self) -> usize {
        self.printed.iter().filter(|r| r.outcome == RowOutcome::Matched).count()
    }

    pub fn missing(&self) -> usize {
        self.printed.len() - self.matched()
    }

    /// Errata that account for a discrepancy.
    pub fn errata_hits(&self) -> usize {
        let printed =
            self.printed.iter().filter(|r| matches!(r.outcome, RowOutcome::Missing { explained: true, .. })).count();
        printed + self.extra.iter().filter(|e| e.explained).count()
    }

    /// Discrepancies without an erratum, plus errata that explain nothing.
    pub fn unexplained(&self) -> usize {
        let printed = self
            .printed
            .iter()
            .filter(|r| matches!(r.outcome, RowOutcome::Missing { explained: false, .. } | RowOutcome::Inconsistent))
            .count();
        printed + self.extra.iter().filter(|e| !e.explained).count() + self.stale.len()
    }

    /// Whether the table matches the classification exactly, without errata.
    pub fn is_exact(&self) -> bool {
        self.missing() == 0 && self.extra.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rows: {} matched, {} missing, {} extra",
            self.printed.len(),
            self.matched(),
            self.missing(),
            self.extra.len()
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReproduceError {
    #[error(transparent)]
    Run(#[from] RunError),
    #[error("table {table}: bad column {column}")]
    Column { table: String, column: String },
}

/// Layout index of every printed column.
pub fn column_map(table: &GoldenTable, layout: &Layout) -> Result<Vec<usize>, ReproduceError> {
    let bad = |column: &str| ReproduceError::Column { table: table.id.clone(), column: column.to_string() };
    let Some(cols) = &table.columns else {
        return Ok((0..layout.components.len()).collect());
    };
    let map = cols
        .iter()
        .map(|c| c.parse::<ComponentPath>().ok().and_then(|p| layout.column(p)).ok_or_else(|| bad(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let distinct: BTreeSet<_> = map.iter().collect();
    if map.len() != layout.components.len() || distinct.len() != map.len() {
        return Err(bad(&cols.join(",")));
    }
    Ok(map)
}

/// Parses and checks a printed row, returning its data sets in layout order
/// or every invariant the printed text violates.
pub fn printed_datasets(
    row: &GoldenRow,
    layout: &Layout,
    columns: &[usize],
    cap: u64,
) -> Result<Vec<DataSet>, Vec<Finding>> {
    if row.data.len() != columns.len() {
        return Err(vec![Finding::new(
            Invariant::Malformed,
            format!("{} entries for {} components", row.data.len(), columns.len()),
        )]);
    }
    let mut findings = Vec::new();
    let mut raws: Vec<Option<RawDataSet>> = vec![None; columns.len()];
    let mut out: Vec<Option<DataSet>> = vec![None; columns.len()];
    for (text, &c) in row.data.iter().zip(columns) {
        let raw: RawDataSet = match text.parse() {
            Ok(raw) => raw,
            Err(e) => {
                findings.push(Finding::new(Invariant::Malformed, format!("{text}: {e}")));
                continue;
            }
        };
        let comp = &layout.components[c];
        let expected = if comp.copies == 1 { comp.residues } else { 0 };
        if raw.residues.len() as u64 != expected {
            findings.push(Finding::new(
                Invariant::ResidueCount,
                format!(
                    "{text} has {} distinguished fixed points, component {} needs {expected}",
                    raw.residues.len(),
                    comp.path
                ),
            ));
        }
        match raw.validate() {
            Ok(d) if d.genus() != comp.genus => findings.push(Finding::new(
                Invariant::CutGenus,
                format!("{text} has genus {}, component {} has genus {}", d.genus(), comp.path, comp.genus),
            )),
            Ok(d) => out[c] = Some(d),
            Err(e) => findings.push(Finding::new(Invariant::Validity, format!("{text}: {e}"))),
        }
        raws[c] = Some(raw);
    }
    if raws.iter().all(Option::is_some) {
        let order = raws
            .iter()
            .zip(&layout.components)
            .map(|(d, c)| lcm(c.copies, d.as_ref().expect("all parsed").n.max(1)))
            .fold(1, lcm);
        if order != row.degree {
            findings.push(Finding::new(
                Invariant::Order,
                format!("component orders have lcm {order}, printed degree is {}", row.degree),
            ));
        }
    }
    if row.degree > cap {
        findings.push(Finding::new(Invariant::Bound, format!("degree {} exceeds the bound {cap}", row.degree)));
    }
    if !findings.is_empty() {
        return Err(findings);
    }
    Ok(out.into_iter().map(|d| d.expect("no findings, so every entry is valid")).collect())
}

/// Checks a single printed row against the gluing conditions alone.
pub fn analyze_row(
    row: &GoldenRow,
    layout: &Layout,
    columns: &[usize],
    cap: u64,
    mode: Mode,
) -> Result<RowKey, Vec<Finding>> {
    let data = printed_datasets(row, layout, columns, cap)?;
    if glue_row(layout, row.degree, &data, mode).is_empty() {
        return Err(vec![Finding::new(Invariant::NoGluing, "no class assignment passes the gluing condition")]);
    }
    Ok(layout.row_key(row.degree, &data))
}

/// Prints a classified row in the table's column order.
pub fn render_row(record: &RootClassRecord, columns: &[usize]) -> GoldenRow {
    GoldenRow {
        degree: record.degree,
        data: columns.iter().map(|&c| record.components[c].data.dataset().to_string()).collect(),
    }
}

/// Reproduces `table`, explaining discrepancies with `errata`.
pub fn reproduce(
    table: &GoldenTable,
    errata: &[Erratum],
    mode: Mode,
    jobs: Option<usize>,
) -> Result<Report, ReproduceError> {
    let spec = table.spec.to_spec();
    let layout = Layout::of(&spec).map_err(RunError::from)?;
    let columns = column_map(table, &layout)?;
    let cap = search_cap(&spec);
    let records = run::classify_layout(&layout, cap, mode, jobs)?;
    let rows = table_rows(&layout, &records);

    let mine: Vec<&Erratum> = errata.iter().filter(|e| e.table == table.id).collect();
    let mut used = vec![false; mine.len()];
    // An erratum explains a printed row when it cites one of the row's violations.
    let mut claim = |row: &GoldenRow, violated: &[Invariant]| {
        let text = row.normalized();
        let hit = (0..mine.len())
            .find(|&i| !used[i] && violated.contains(&mine[i].invariant) && mine[i].row.normalized() == text);
        if let Some(i) = hit {
            used[i] = true;
        }
        hit.is_some()
    };

    let mut seen: BTreeSet<RowKey> = BTreeSet::new();
    let mut printed = Vec::new();
    for row in &table.rows {
        let outcome = match analyze_row(row, &layout, &columns, cap, mode) {
            Ok(key) if !rows.contains_key(&key) => RowOutcome::Inconsistent,
            Ok(key) if !seen.insert(key.clone()) => {
                let explained = claim(row, &[Invariant::Duplicate]);
                RowOutcome::Missing {
                    findings: vec![Finding::new(Invariant::Duplicate, "repeats an earlier row")],
                    explained,
                }
            }
            Ok(_) => RowOutcome::Matched,
            Err(findings) => {
                let violated: Vec<Invariant> = findings.iter().map(|f| f.invariant).collect();
                let explained = claim(row, &violated);
                RowOutcome::Missing { findings, explained }
            }
        };
        printed.push(PrintedRow { row: row.clone(), outcome });
    }

    // Omitted rows are matched by conjugacy invariant, not text.
    let mut omitted: BTreeMap<RowKey, Vec<usize>> = BTreeMap::new();
    for (i, e) in mine.iter().enumerate() {
        if e.invariant == Invariant::Omitted && !used[i] {
            if let Ok(data) = printed_datasets(&e.row, &layout, &columns, cap) {
                omitted.entry(layout.row_key(e.row.degree, &data)).or_default().push(i);
            }
        }
    }
    let mut extra = Vec::new();
    for (key, record) in &rows {
        if seen.contains(key) {
            continue;
        }
        let hit = omitted.get_mut(key).and_then(Vec::pop);
        if let Some(i) = hit {
            used[i] = true;
        }
        extra.push(ExtraRow { row: render_row(record, &columns), explained: hit.is_some() });
    }
    let stale = mine.iter().zip(&used).filter(|(_, &u)| !u).map(|(e, _)| (*e).clone()).collect();
    Ok(Report { table: table.id.clone(), printed, extra, stale })
}
