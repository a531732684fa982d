use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use inertia_core::admissible::{connected_sectors, parse_datum, AdmissibleDatum, SectorShape};
use inertia_core::age::age;
use inertia_core::algebra::Rational;
use inertia_core::catalog::{
    builtin_ambient, builtin_special_sectors, computed_record, cr_bigraded, cr_poincare,
    duality_audit, sector_records, table_sizes, CrReport, SectorRecord, SUPPORTED_GENUS,
    UNSUPPORTED_GENUS_MSG,
};
use inertia_core::genus0::TraceTable;
use inertia_core::latex::{bigraded_to_latex, qgraded_to_latex, table1_rows, table2_rows};
use inertia_core::selftest::{run_selftest, SelftestConfig};
use inertia_core::Error;

const EXIT_SELFTEST: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_AUDIT: u8 = 3;

#[derive(Parser)]
#[command(name = "inertia", version)]
#[command(about = "Twisted sectors of the inertia stack of M_g and their orbifold cohomology")]
struct Cli {
    /// Genus of the curves (at least 2)
    #[arg(long, global = true, default_value_t = 3)]
    genus: u32,

    /// Use the compactified sectors
    #[arg(long, global = true)]
    compactified: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for the trace-table cache
    #[arg(long, global = true, env = "SECTOR_CACHE_DIR")]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// List the data indexing connected twisted sectors
    Enumerate,
    /// Age of every twisted sector
    Ages,
    /// Cohomology records of one sector, or of all of them
    Sector {
        /// Datum such as "(0,4;2,3,0)"
        datum: Option<String>,
    },
    /// Orbifold Poincaré polynomial
    CrPoly {
        /// Keep the Hodge weights (L-exponents)
        #[arg(long)]
        bigraded: bool,
    },
    /// Rows of the character and age tables
    Tables,
    /// Run the invariant suite
    Selftest {
        /// Replace the eigenvalue rule by a constant one (fault injection)
        #[arg(long, hide = true)]
        mutate_sigma: bool,
        /// Leave a sector out of the assembly (fault injection)
        #[arg(long, hide = true)]
        drop_sector: Vec<String>,
        /// Largest genus for the property checks
        #[arg(long, default_value_t = 5)]
        max_genus: u32,
    },
}

enum Failure {
    Usage(String),
    Audit(String),
    Selftest(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGenus(_)
            | Error::InvalidDatum(_)
            | Error::Parse(_)
            | Error::Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Audit(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Audit(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Audit(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn json<T: Serialize>(value: &T) -> CmdResult {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn lines(rows: impl IntoIterator<Item = String>) -> String {
    rows.into_iter().map(|r| r + "\n").collect()
}

fn join_d(d: &[u32]) -> String {
    d.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn check_genus(g: u32) -> Result<(), Failure> {
    if g < 2 {
        return Err(Error::InvalidGenus(g).into());
    }
    Ok(())
}

fn require_supported(g: u32) -> Result<(), Failure> {
    check_genus(g)?;
    if g != SUPPORTED_GENUS {
        return Err(Failure::Usage(UNSUPPORTED_GENUS_MSG.to_string()));
    }
    Ok(())
}

fn trace_table(cli: &Cli) -> Result<TraceTable, Failure> {
    let (open, closed) = table_sizes(cli.genus)?;
    Ok(TraceTable::load_or_build(
        cli.cache.as_deref(),
        open,
        closed,
    )?)
}

fn cmd_enumerate(cli: &Cli) -> CmdResult {
    check_genus(cli.genus)?;
    let records: Vec<_> = connected_sectors(cli.genus)?
        .iter()
        .map(SectorShape::record)
        .collect();
    match cli.format {
        Format::Json => json(&records),
        Format::Tsv => Ok(lines(
            std::iter::once("g\tg_prime\tN\td\tk\tdim\tconnected\tcomponents".to_string()).chain(
                records.iter().map(|r| {
                    format!(
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        r.g,
                        r.g_prime,
                        r.n,
                        join_d(&r.d),
                        r.k,
                        r.dim,
                        r.connected,
                        r.components.join(";")
                    )
                }),
            ),
        )),
        Format::Latex => Ok(lines(records.iter().map(|r| {
            format!(
                "$({},{};{})$&${}$&${}$\\\\",
                r.g_prime,
                r.n,
                join_d(&r.d),
                r.k,
                r.dim
            )
        }))),
    }
}

#[derive(Serialize)]
struct AgeRow {
    datum: AdmissibleDatum,
    dim: i64,
    age: Rational,
}

fn cmd_ages(cli: &Cli) -> CmdResult {
    check_genus(cli.genus)?;
    let rows: Vec<AgeRow> = connected_sectors(cli.genus)?
        .into_iter()
        .map(|s| AgeRow {
            age: age(&s.datum),
            dim: s.dimension,
            datum: s.datum,
        })
        .collect();
    match cli.format {
        Format::Json => json(&rows),
        Format::Tsv => Ok(lines(
            std::iter::once("datum\tdim\tage".to_string()).chain(
                rows.iter()
                    .map(|r| format!("{}\t{}\t{}", r.datum, r.dim, r.age)),
            ),
        )),
        Format::Latex => {
            Ok(lines(rows.iter().map(|r| {
                format!("${}$&${}$&${}$\\\\", r.datum, r.dim, r.age.to_latex())
            })))
        }
    }
}

/// A sector whose cohomology is not available at this genus.
#[derive(Serialize)]
struct SectorStub {
    datum: AdmissibleDatum,
    component: String,
    age: Rational,
    dim: i64,
    complete: bool,
    note: &'static str,
}

#[derive(Serialize)]
#[serde(untagged)]
enum SectorEntry {
    Full(Box<SectorRecord>),
    Stub(SectorStub),
}

fn sector_entry(a: &AdmissibleDatum, table: &TraceTable) -> Result<SectorEntry, Failure> {
    let shape = SectorShape::of(a);
    if !shape.is_connected_sector() {
        return Err(Failure::Usage(format!(
            "{a} does not index a twisted sector"
        )));
    }
    if shape.genus0_pipeline {
        return Ok(SectorEntry::Full(Box::new(computed_record(a, table)?)));
    }
    if a.g == SUPPORTED_GENUS {
        if let Some(r) = builtin_special_sectors()
            .into_iter()
            .find(|r| &r.datum == a)
        {
            return Ok(SectorEntry::Full(Box::new(r)));
        }
    }
    Ok(SectorEntry::Stub(SectorStub {
        datum: a.clone(),
        component: shape.components[0].label(shape.k),
        age: age(a),
        dim: a.sector_dimension(),
        complete: false,
        note: UNSUPPORTED_GENUS_MSG,
    }))
}

fn entry_row(e: &SectorEntry, compactified: bool) -> (String, String, String, String) {
    match e {
        SectorEntry::Full(r) => {
            let poly = if compactified {
                r.ph_bar
                    .as_ref()
                    .map_or("?".to_string(), qgraded_to_latex)
            } else {
                qgraded_to_latex(&r.ph.specialize_l())
            };
            (
                r.datum.to_string(),
                r.dim.to_string(),
                r.age.to_latex(),
                poly,
            )
        }
        SectorEntry::Stub(s) => (
            s.datum.to_string(),
            s.dim.to_string(),
            s.age.to_latex(),
            "?".into(),
        ),
    }
}

fn cmd_sector(cli: &Cli, datum: Option<&str>) -> CmdResult {
    check_genus(cli.genus)?;
    let data: Vec<AdmissibleDatum> = match datum {
        Some(s) => vec![parse_datum(cli.genus, s)?],
        None => connected_sectors(cli.genus)?
            .into_iter()
            .map(|s| s.datum)
            .collect(),
    };
    let table = trace_table(cli)?;
    let entries = data
        .iter()
        .map(|a| sector_entry(a, &table))
        .collect::<Result<Vec<_>, _>>()?;
    match cli.format {
        Format::Json if datum.is_some() => json(&entries[0]),
        Format::Json => json(&entries),
        Format::Tsv => Ok(lines(
            std::iter::once("datum\tdim\tage\tpoincare".to_string()).chain(entries.iter().map(
                |e| {
                    let (a, b, c, d) = entry_row(e, cli.compactified);
                    format!("{a}\t{b}\t{c}\t{d}")
                },
            )),
        )),
        Format::Latex => Ok(lines(entries.iter().map(|e| {
            let (a, b, c, d) = entry_row(e, cli.compactified);
            format!("${a}$&${b}$&${c}$&${d}$\\\\")
        }))),
    }
}

fn cmd_cr_poly(cli: &Cli, bigraded: bool) -> CmdResult {
    require_supported(cli.genus)?;
    let table = trace_table(cli)?;
    let records = sector_records(cli.genus, &table)?;
    let ambient = builtin_ambient();
    if bigraded {
        if cli.compactified {
            return Err(Failure::Usage(
                "--bigraded is only available for the open space".into(),
            ));
        }
        let poly = cr_bigraded(&records, &ambient);
        return match cli.format {
            Format::Json => json(&poly),
            Format::Tsv => Ok(lines(
                std::iter::once("l\tdeg\tmult".to_string())
                    .chain(poly.iter().map(|(k, m)| format!("{}\t{}\t{m}", k.l, k.t))),
            )),
            Format::Latex => Ok(bigraded_to_latex(&poly) + "\n"),
        };
    }
    let poly = cr_poincare(&records, &ambient, cli.compactified)?;
    let top = Rational::from_integer(2 * (3 * cli.genus as i64 - 3));
    if cli.compactified && !duality_audit(&poly, &top) {
        return Err(Failure::Audit(
            "compactified polynomial fails Poincaré duality".into(),
        ));
    }
    match cli.format {
        Format::Json => json(&CrReport::new(cli.genus, cli.compactified, poly)),
        Format::Tsv => Ok(lines(
            std::iter::once("deg\tmult".to_string())
                .chain(poly.iter().map(|(d, m)| format!("{d}\t{m}"))),
        )),
        Format::Latex => Ok(qgraded_to_latex(&poly) + "\n"),
    }
}

#[derive(Serialize)]
struct TableRow {
    datum: String,
    dim: i64,
    chi_open: Option<String>,
    chi_closed: Option<String>,
    age: Rational,
}

fn cmd_tables(cli: &Cli) -> CmdResult {
    require_supported(cli.genus)?;
    let table = trace_table(cli)?;
    let records: Vec<SectorRecord> = sector_records(cli.genus, &table)?
        .into_iter()
        .filter(|r| r.datum.g_prime == 0)
        .collect();
    match cli.format {
        Format::Latex => {
            let mut out = lines(table1_rows(&records)?);
            out.push('\n');
            out.push_str(&lines(table2_rows(&records)));
            Ok(out)
        }
        Format::Json | Format::Tsv => {
            let rows: Vec<TableRow> = records
                .iter()
                .map(|r| TableRow {
                    datum: r.datum.table_label(),
                    dim: r.dim,
                    chi_open: r.chi_open.as_ref().map(|c| c.to_string()),
                    chi_closed: r.chi_closed.as_ref().map(|c| c.to_string()),
                    age: r.age.clone(),
                })
                .collect();
            if cli.format == Format::Json {
                return json(&rows);
            }
            let opt = |o: &Option<String>| o.clone().unwrap_or_default();
            Ok(lines(
                std::iter::once("datum\tdim\tchi_open\tchi_closed\tage".to_string()).chain(
                    rows.iter().map(|r| {
                        format!(
                            "{}\t{}\t{}\t{}\t{}",
                            r.datum,
                            r.dim,
                            opt(&r.chi_open),
                            opt(&r.chi_closed),
                            r.age
                        )
                    }),
                ),
            ))
        }
    }
}

fn constant_sigma(_: u32, _: u32, _: u32) -> u32 {
    1
}

fn cmd_selftest(mutate_sigma: bool, drop: &[String], max_genus: u32) -> CmdResult {
    let drop_sectors = drop
        .iter()
        .map(|s| parse_datum(SUPPORTED_GENUS, s))
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = SelftestConfig {
        sigma: if mutate_sigma {
            constant_sigma
        } else {
            SelftestConfig::default().sigma
        },
        drop_sectors,
        max_genus,
        ..Default::default()
    };
    let report = run_selftest(&cfg);
    let text = report.to_string();
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Selftest(text))
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Enumerate => cmd_enumerate(cli),
        Command::Ages => cmd_ages(cli),
        Command::Sector { datum } => cmd_sector(cli, datum.as_deref()),
        Command::CrPoly { bigraded } => cmd_cr_poly(cli, *bigraded),
        Command::Tables => cmd_tables(cli),
        Command::Selftest {
            mutate_sigma,
            drop_sector,
            max_genus,
        } => cmd_selftest(*mutate_sigma, drop_sector, *max_genus),
    }
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let (text, code) = match outcome {
        Ok(text) => (Some(text), 0),
        Err(Failure::Selftest(text)) => (Some(text), EXIT_SELFTEST),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            (None, EXIT_USAGE)
        }
        Err(Failure::Audit(msg)) => {
            eprintln!("audit failure: {msg}");
            (None, EXIT_AUDIT)
        }
    };
    if let Some(text) = text {
        if let Err(e) = emit(&cli, &text) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_AUDIT);
        }
    }
    ExitCode::from(code)
}
