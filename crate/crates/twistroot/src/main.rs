use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twistroot::output::{self, Format};
use twistroot::reproduce::{reproduce, Report};
use twistroot::schema::{DataSetJson, SpecJson};
use twistroot::{run, tables};
use twistroot_core::bounds::{bound_nonseparating, search_cap, separating_bound, stable_bound};
use twistroot_core::enumerate::{enumerate_datasets, enumerate_permuting};
use twistroot_core::{EnumQuery, Mode};

#[derive(Parser)]
#[command(name = "twistroot", version, about = "Roots of Dehn twists about multicurves")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Test gluings with the unscaled angle condition.
    #[arg(long, global = true)]
    strict_defs: bool,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a data set given as JSON.
    Validate(Input),
    /// List data sets of a genus and degree.
    Enumerate {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        degree: u64,
        /// Number of distinguished fixed points.
        #[arg(long, default_value_t = 0)]
        residues: u64,
        /// Sizes of distinguished orbits, comma separated.
        #[arg(long, value_delimiter = ',')]
        orbits: Vec<u64>,
    },
    /// Classify the roots of the twist about a multicurve.
    Classify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Degree bounds.
    Bounds(BoundsArgs),
    /// Data set of a power of an action.
    Power {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        exp: u64,
    },
    /// Compare a golden table with the classification.
    Reproduce {
        /// Table id; every table when omitted.
        table: Option<String>,
        #[arg(long)]
        errata: Option<PathBuf>,
        /// List table ids and captions instead.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args)]
struct Input {
    /// JSON file; standard input when absent.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, conflicts_with_all = ["stable", "spec", "gc"])]
    nonseparating: bool,
    #[arg(long)]
    stable: bool,
    #[arg(long)]
    genus: Option<u64>,
    #[arg(long)]
    curves: Option<u64>,
    #[arg(long, default_value_t = 0)]
    r: u64,
    /// Smallest genus sum of consecutive chain pieces.
    #[arg(long)]
    gc: Option<u64>,
    /// Search cap for a multicurve file.
    #[arg(long)]
    spec: Option<PathBuf>,
}

enum Failure {
    Domain(String),
    Usage(String),
    Discrepancy(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Discrepancy(_) => 3,
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_input(file: Option<&Path>) -> Result<String, Failure> {
    match file {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(s)
        }
    }
}

fn parse_json<T: for<'de> serde::Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("malformed JSON: {e}")))
}

fn validate(input: &Input, format: Format) -> Outcome {
    let j: DataSetJson = parse_json(&read_input(input.file.as_deref())?)?;
    match j.raw().validate() {
        Ok(d) => Ok(match format {
            Format::Json => format!("{}\n", serde_json::json!({"valid": true, "genus": d.genus()})),
            _ => format!("genus {}\n", d.genus()),
        }),
        Err(e) => {
            let lines: Vec<String> = e.violations.iter().map(ToString::to_string).collect();
            Err(Failure::Domain(match format {
                Format::Json => serde_json::json!({"valid": false, "violations": lines}).to_string(),
                _ => lines.join("\n"),
            }))
        }
    }
}

fn enumerate(genus: u64, degree: u64, residues: u64, orbits: &[u64], format: Format) -> Outcome {
    let q = EnumQuery::new(genus, degree).with_residues(residues);
    if orbits.is_empty() {
        return Ok(output::datasets(&enumerate_datasets(&q), format));
    }
    let list = enumerate_permuting(&q.with_orbit_sizes(orbits.to_vec())).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(match format {
        Format::Json => {
            let items: Vec<DataSetJson> = list.iter().map(DataSetJson::from_permuting).collect();
            format!("{}\n", serde_json::to_string_pretty(&items).expect("plain data"))
        }
        _ => list.iter().map(|pd| format!("{pd}\n")).collect(),
    })
}

fn load_spec(path: &Path) -> Result<twistroot_core::MulticurveSpec, Failure> {
    let text = read_input(Some(path))?;
    let spec = parse_json::<SpecJson>(&text)?.to_spec();
    spec.validate().map_err(|e| Failure::Domain(format!("invalid multicurve: {e}")))?;
    Ok(spec)
}

fn bounds(a: &BoundsArgs) -> Outcome {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("--{flag} is required")));
    let value = if a.nonseparating {
        let (g, m) = (need(a.genus, "genus")?, need(a.curves, "curves")?);
        if m == 0 || m > g {
            return Err(Failure::Domain("need 1 <= curves <= genus".into()));
        }
        bound_nonseparating(g, m, a.r)
    } else if a.stable {
        stable_bound(need(a.genus, "genus")?)
    } else if let Some(gc) = a.gc {
        separating_bound(gc)
    } else if let Some(p) = &a.spec {
        search_cap(&load_spec(p)?)
    } else {
        return Err(Failure::Usage("choose --nonseparating, --stable, --gc or --spec".into()));
    };
    Ok(format!("{value}\n"))
}

fn power(input: &Input, exp: u64, format: Format) -> Outcome {
    if exp == 0 {
        return Err(Failure::Usage("--exp must be positive".into()));
    }
    let j: DataSetJson = parse_json(&read_input(input.file.as_deref())?)?;
    let d = j.raw().validate().map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(output::datasets(&[d.raise(exp).0], format))
}

fn reproduce_cmd(
    table: Option<&str>,
    errata: Option<&Path>,
    list: bool,
    mode: Mode,
    jobs: Option<usize>,
    format: Format,
) -> Outcome {
    let dir = tables::default_dir();
    let domain = |e: tables::TableError| Failure::Domain(e.to_string());
    let all = tables::load_all(&dir).map_err(domain)?;
    if list {
        return Ok(all.iter().map(|t| format!("{}\t{}\n", t.id, t.caption)).collect());
    }
    let chosen: Vec<&tables::GoldenTable> = match table {
        Some(id) => {
            vec![all.iter().find(|t| t.id == id).ok_or_else(|| domain(tables::TableError::Unknown(id.into())))?]
        }
        None => all.iter().collect(),
    };
    let errata = tables::load_errata(&dir, errata).map_err(domain)?;
    let reports: Vec<Report> = chosen
        .into_iter()
        .map(|t| reproduce(t, &errata, mode, jobs))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Domain(e.to_string()))?;
    let text = output::reports(&reports, format);
    if reports.iter().any(|r| r.unexplained() > 0) {
        Err(Failure::Discrepancy(text))
    } else {
        Ok(text)
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let mode = if cli.strict_defs { Mode::Strict } else { Mode::Scaled };
    match &cli.command {
        Command::Validate(input) => validate(input, cli.format),
        Command::Enumerate { genus, degree, residues, orbits } => {
            enumerate(*genus, *degree, *residues, orbits, cli.format)
        }
        Command::Classify { spec } => {
            let spec = load_spec(spec)?;
            let records = run::classify(&spec, mode, cli.jobs).map_err(|e| Failure::Domain(e.to_string()))?;
            Ok(output::records(&records, cli.format))
        }
        Command::Bounds(a) => bounds(a),
        Command::Power { input, exp } => power(input, *exp, cli.format),
        Command::Reproduce { table, errata, list } => {
            reproduce_cmd(table.as_deref(), errata.as_deref(), *list, mode, cli.jobs, cli.format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(text) => {
            let _ = io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Discrepancy(text) => {
                    let _ = io::stdout().write_all(text.as_bytes());
                }
                Failure::Domain(msg) | Failure::Usage(msg) => eprintln!("{msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
