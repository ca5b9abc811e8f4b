//! Golden tables and their errata, as shipped under `tables/`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::schema::SpecJson;

/// Environment variable overriding the table directory.
pub const TABLES_ENV: &str = "TWISTROOT_TABLES";

/// Name of the errata file inside the table directory.
pub const ERRATA_FILE: &str = "errata.json";

/// One printed row: degree and one data set per column, as printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenRow {
    pub degree: u64,
    pub data: Vec<String>,
}

impl GoldenRow {
    /// Whitespace-insensitive text of the row.
    pub fn normalized(&self) -> (u64, Vec<String>) {
        let squash = |s: &String| s.chars().filter(|c| !c.is_whitespace()).collect();
        (self.degree, self.data.iter().map(squash).collect())
    }
}

/// A printed table with the multicurve it classifies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenTable {
    pub id: String,
    pub caption: String,
    pub spec: SpecJson,
    /// Component path of each printed column; layout order when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<Vec<String>>,
    /// How printed entries map to cut components, where that needs saying.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    pub rows: Vec<GoldenRow>,
}

/// What an erratum claims about a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    /// An entry does not parse as a data set, or the column count is off.
    Malformed,
    /// An entry fails a data-set condition.
    Validity,
    /// An entry's genus differs from the genus of its capped component.
    CutGenus,
    /// An entry carries the wrong number of distinguished fixed points.
    ResidueCount,
    /// The printed degree is not the lcm of the component orders.
    Order,
    /// The printed degree exceeds the degree bound of the multicurve.
    Bound,
    /// No assignment of classes to curve orbits passes the gluing condition.
    NoGluing,
    /// The row repeats an earlier row up to conjugacy.
    Duplicate,
    /// A root exists but the table does not list it.
    Omitted,
}

impl Invariant {
    pub fn as_str(self) -> &'static str {
        match self {
            Invariant::Malformed => "malformed",
            Invariant::Validity => "validity",
            Invariant::CutGenus => "cut-genus",
            Invariant::ResidueCount => "residue-count",
            Invariant::Order => "order",
            Invariant::Bound => "bound",
            Invariant::NoGluing => "no-gluing",
            Invariant::Duplicate => "duplicate",
            Invariant::Omitted => "omitted",
        }
    }
}

/// A known discrepancy between a printed table and the classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    pub table: String,
    pub row: GoldenRow,
    pub invariant: Invariant,
    pub explanation: String,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("no golden table named {0}")]
    Unknown(String),
}

/// The shipped table directory, or the override from the environment.
pub fn default_dir() -> PathBuf {
    match std::env::var_os(TABLES_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../tables"),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, TableError> {
    let text = fs::read_to_string(path).map_err(|source| TableError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| TableError::Json { path: path.into(), source })
}

/// Every golden table below `dir`, sorted by id.
pub fn load_all(dir: &Path) -> Result<Vec<GoldenTable>, TableError> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        let entries = fs::read_dir(&d).map_err(|source| TableError::Io { path: d.clone(), source })?;
        for entry in entries {
            let path = entry.map_err(|source| TableError::Io { path: d.clone(), source })?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().is_some_and(|e| e == "json")
                && path.file_name().is_some_and(|f| f != ERRATA_FILE)
            {
                out.push(read_json::<GoldenTable>(&path)?);
            }
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

pub fn load(dir: &Path, id: &str) -> Result<GoldenTable, TableError> {
    load_all(dir)?.into_iter().find(|t| t.id == id).ok_or_else(|| TableError::Unknown(id.to_string()))
}

/// Errata from an explicit file, or the directory's errata file if present.
pub fn load_errata(dir: &Path, file: Option<&Path>) -> Result<Vec<Erratum>, TableError> {
    match file {
        Some(f) => read_json(f),
        None => {
            let path = dir.join(ERRATA_FILE);
            if path.exists() {
                read_json(&path)
            } else {
                Ok(Vec::new())
            }
        }
    }
}
