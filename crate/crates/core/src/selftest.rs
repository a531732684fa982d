//! Named invariant checks behind the `selftest` command.

use std::fmt;

use num_bigint::BigInt;

use crate::admissible::{connected_sectors, AdmissibleDatum};
use crate::age::{age_with, duality_defect, sigma_indicator, SigmaRule};
use crate::algebra::{LPoly, Rational};
use crate::catalog::{
    builtin_ambient, cr_bigraded, cr_poincare, derive_ambient, duality_audit, genus0_records,
    sector_records, table_sizes, SectorRecord,
};
use crate::error::Result;
use crate::fieldcount::brute_force_trace_open;
use crate::genus0::{
    chi_closed, chi_open, chi_to_poincare_open, trace_closed, TraceTable, TREE_CAP,
};
use crate::latex::{normalize_row, table1_rows, table2_rows};
use crate::partition::{partitions, CycleType};
use crate::reference::{self, OPEN_TOTAL_DIM, TABLE1_ROWS, TABLE2_ROWS};

pub const CENSUS: &str = "census";
pub const AGE_DUALITY: &str = "age-duality";
pub const AGE_TABLES: &str = "age-tables";
pub const COUNTING_ORACLE: &str = "counting-oracle";
pub const CLOSED_TRACES: &str = "closed-traces";
pub const GENUS0_PROPERTIES: &str = "genus0-properties";
pub const TABLE1_GOLDEN: &str = "table1-golden";
pub const TABLE2_GOLDEN: &str = "table2-golden";
pub const OPEN_GOLDEN: &str = "open-poincare-golden";
pub const COMPACTIFIED_GOLDEN: &str = "compactified-poincare-golden";
pub const BIGRADED_GOLDEN: &str = "bigraded-golden";
pub const AMBIENT_SUBTRACTION: &str = "ambient-subtraction";

/// What to run and which deliberate faults to inject.
#[derive(Clone)]
pub struct SelftestConfig {
    pub sigma: SigmaRule,
    /// Sectors removed from the assembly.
    pub drop_sectors: Vec<AdmissibleDatum>,
    /// Property checks run for `2 <= g <= max_genus`.
    pub max_genus: u32,
    /// Prime powers used by the brute-force counting oracle.
    pub oracle_fields: Vec<u32>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            sigma: sigma_indicator,
            drop_sectors: Vec::new(),
            max_genus: 5,
            oracle_fields: vec![2, 3, 4, 5],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.name, c.detail)?;
        }
        writeln!(
            f,
            "{} checks, {} failures",
            self.checks.len(),
            self.failures().len()
        )
    }
}

/// Collects problems; an empty list means the check passed.
fn check(name: &'static str, ok_detail: &str, problems: Result<Vec<String>>) -> CheckResult {
    match problems {
        Ok(p) if p.is_empty() => CheckResult {
            name,
            passed: true,
            detail: ok_detail.to_string(),
        },
        Ok(p) => CheckResult {
            name,
            passed: false,
            detail: format!("{} problem(s), first: {}", p.len(), p[0]),
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn census() -> Result<Vec<String>> {
    let sectors = connected_sectors(3)?;
    let g0 = sectors.iter().filter(|s| s.datum.g_prime == 0).count();
    let mut problems = Vec::new();
    if g0 != 43 {
        problems.push(format!("{g0} genus-0-base sectors, expected 43"));
    }
    let mut expected: Vec<AdmissibleDatum> = reference::table1()?
        .into_iter()
        .map(|r| r.datum)
        .chain(reference::table2()?.into_iter().map(|(a, _)| a))
        .collect();
    expected.sort();
    let mut found: Vec<AdmissibleDatum> = sectors
        .iter()
        .filter(|s| s.datum.g_prime == 0)
        .map(|s| s.datum.clone())
        .collect();
    found.sort();
    if found != expected {
        problems.push("genus-0-base sectors differ from the table rows".to_string());
    }
    let others: Vec<String> = sectors
        .iter()
        .filter(|s| s.datum.g_prime > 0)
        .map(|s| s.datum.to_string())
        .collect();
    if others != ["(1,2;4)", "(1,3;1,1)", "(1,4;0,2,0)", "(2,2;0)"] {
        problems.push(format!("positive base genus sectors {others:?}"));
    }
    Ok(problems)
}

fn age_duality(cfg: &SelftestConfig) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for g in 2..=cfg.max_genus {
        for s in connected_sectors(g)? {
            let defect = duality_defect(&s.datum, cfg.sigma);
            if !defect.is_zero() {
                problems.push(format!("g = {g} {}: defect {defect}", s.datum));
            }
        }
    }
    Ok(problems)
}

fn age_tables(cfg: &SelftestConfig) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let expected = reference::table1()?
        .into_iter()
        .map(|r| (r.datum, r.age))
        .chain(reference::table2()?);
    for (a, want) in expected {
        let got = age_with(&a, cfg.sigma);
        if got != want {
            problems.push(format!("{a}: age {got}, table {want}"));
        }
    }
    Ok(problems)
}

fn counting_oracle(cfg: &SelftestConfig, table: &TraceTable) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for n in 3..=5 {
        for t in partitions(n) {
            let formula = table.open(&t)?;
            for &q in &cfg.oracle_fields {
                let brute = brute_force_trace_open(&t, q)?;
                let value = formula.eval_i64(q as i64);
                if brute != value {
                    problems.push(format!("type {t}, q = {q}: count {brute}, formula {value}"));
                }
            }
        }
    }
    Ok(problems)
}

fn closed_traces() -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let q_plus_1 = LPoly::from_coeffs(vec![1, 1]);
    for t in partitions(4) {
        let got = trace_closed(&t.representative())?;
        if got != q_plus_1 {
            problems.push(format!("n = 4, type {t}: {got}"));
        }
    }
    let got = trace_closed(&CycleType::identity(5).representative())?;
    if got != LPoly::from_coeffs(vec![1, 5, 1]) {
        problems.push(format!("n = 5, identity: {got}"));
    }
    Ok(problems)
}

/// Burnside integrality, purity signs and degree of every `g' = 0` sector
/// with `g <= max_genus`; compactified characters where the tree
/// enumeration reaches.
fn genus0_properties(cfg: &SelftestConfig, table: &TraceTable) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    for g in 2..=cfg.max_genus {
        for s in connected_sectors(g)?
            .into_iter()
            .filter(|s| s.genus0_pipeline)
        {
            let a = &s.datum;
            let chi = match chi_open(a, table) {
                Ok(c) => c,
                Err(e) => {
                    problems.push(format!("g = {g} {a}: {e}"));
                    continue;
                }
            };
            if chi.degree() != Some(s.dimension as usize)
                || chi.leading_coeff() != Some(&BigInt::from(1))
            {
                problems.push(format!(
                    "g = {g} {a}: chi = {chi} is not monic of degree {}",
                    s.dimension
                ));
            }
            if let Err(e) = chi_to_poincare_open(&chi, s.dimension) {
                problems.push(format!("g = {g} {a}: {e}"));
            }
            if (s.total_branch as usize) <= table.closed_max() {
                match chi_closed(a, table) {
                    Ok(c) if c.eval_i64(1) <= BigInt::from(0) => {
                        problems.push(format!("g = {g} {a}: Euler characteristic of {c}"))
                    }
                    Ok(_) => {}
                    Err(e) => problems.push(format!("g = {g} {a}: {e}")),
                }
            }
        }
    }
    Ok(problems)
}

fn compare_rows(emitted: &[String], golden: &[&str]) -> Vec<String> {
    let mut problems = Vec::new();
    if emitted.len() != golden.len() {
        problems.push(format!("{} rows, expected {}", emitted.len(), golden.len()));
    }
    for (e, g) in emitted.iter().zip(golden) {
        if normalize_row(e) != normalize_row(g) {
            problems.push(format!("{} != {}", normalize_row(e), normalize_row(g)));
        }
    }
    problems
}

fn with_sigma(records: Vec<SectorRecord>, cfg: &SelftestConfig) -> Vec<SectorRecord> {
    records
        .into_iter()
        .filter(|r| !cfg.drop_sectors.contains(&r.datum))
        .map(|mut r| {
            r.age = age_with(&r.datum, cfg.sigma);
            r
        })
        .collect()
}

fn golden_open(records: &[SectorRecord]) -> Result<Vec<String>> {
    let got = cr_poincare(records, &builtin_ambient(), false)?;
    let want = reference::open_polynomial()?;
    let mut problems = Vec::new();
    if got != want {
        problems.push(format!("assembled {got}"));
    }
    if got.total() != OPEN_TOTAL_DIM {
        problems.push(format!("total dimension {}", got.total()));
    }
    Ok(problems)
}

fn golden_compactified(records: &[SectorRecord]) -> Result<Vec<String>> {
    let got = cr_poincare(records, &builtin_ambient(), true)?;
    let mut problems = Vec::new();
    if got != reference::compactified_polynomial()? {
        problems.push(format!("assembled {got}"));
    }
    if !duality_audit(&got, &Rational::from_integer(12)) {
        problems.push("not palindromic about 12".to_string());
    }
    Ok(problems)
}

fn golden_bigraded(records: &[SectorRecord]) -> Result<Vec<String>> {
    let got = cr_bigraded(records, &builtin_ambient());
    Ok(if got == reference::bigraded_polynomial()? {
        Vec::new()
    } else {
        vec![format!("assembled {got}")]
    })
}

fn ambient_subtraction(records: &[SectorRecord]) -> Result<Vec<String>> {
    let derived = derive_ambient(
        records,
        &reference::bigraded_polynomial()?,
        &reference::compactified_polynomial()?,
        6,
    )?;
    Ok(if derived == builtin_ambient() {
        Vec::new()
    } else {
        vec![format!("derived {derived:?}")]
    })
}

/// Builds the trace tables needed for `cfg` (open up to the largest
/// branch count, closed up to [`TREE_CAP`]).
pub fn selftest_table(cfg: &SelftestConfig) -> Result<TraceTable> {
    let mut open = 5;
    for g in 2..=cfg.max_genus.max(3) {
        open = open.max(table_sizes(g)?.0);
    }
    TraceTable::build(open, open.min(TREE_CAP))
}

pub fn run_selftest(cfg: &SelftestConfig) -> SelftestReport {
    run_selftest_with(cfg, None)
}

/// As [`run_selftest`], reusing a prebuilt table when given.
pub fn run_selftest_with(cfg: &SelftestConfig, table: Option<&TraceTable>) -> SelftestReport {
    let mut report = SelftestReport::default();
    let built;
    let table = match table {
        Some(t) => t,
        None => match selftest_table(cfg) {
            Ok(t) => {
                built = t;
                &built
            }
            Err(e) => {
                report.checks.push(check("trace-table", "", Err(e)));
                return report;
            }
        },
    };

    report
        .checks
        .push(check(CENSUS, "43 + 4 sectors of genus 3", census()));
    report.checks.push(check(
        AGE_DUALITY,
        &format!("every connected datum with g <= {}", cfg.max_genus),
        age_duality(cfg),
    ));
    report
        .checks
        .push(check(AGE_TABLES, "43 ages", age_tables(cfg)));
    report.checks.push(check(
        COUNTING_ORACLE,
        &format!("n <= 5, q in {:?}", cfg.oracle_fields),
        counting_oracle(cfg, table),
    ));
    report
        .checks
        .push(check(CLOSED_TRACES, "n = 4, 5", closed_traces()));
    report.checks.push(check(
        GENUS0_PROPERTIES,
        &format!(
            "g <= {}, compactified for d <= {}",
            cfg.max_genus,
            table.closed_max()
        ),
        genus0_properties(cfg, table),
    ));

    let records = sector_records(3, table).map(|r| with_sigma(r, cfg));
    let g0 = genus0_records(3, table).map(|r| with_sigma(r, cfg));
    let rows = |f: &dyn Fn(&[SectorRecord]) -> Result<Vec<String>>| match &g0 {
        Ok(r) => f(r),
        Err(e) => Err(crate::Error::Unsupported(e.to_string())),
    };
    report.checks.push(check(
        TABLE1_GOLDEN,
        "11 rows",
        rows(&|r| Ok(compare_rows(&table1_rows(r)?, &TABLE1_ROWS))),
    ));
    report.checks.push(check(
        TABLE2_GOLDEN,
        "16 rows",
        rows(&|r| Ok(compare_rows(&table2_rows(r), &TABLE2_ROWS))),
    ));
    let assembled = |f: fn(&[SectorRecord]) -> Result<Vec<String>>| match &records {
        Ok(r) => f(r),
        Err(e) => Err(crate::Error::Unsupported(e.to_string())),
    };
    report.checks.push(check(
        OPEN_GOLDEN,
        "total dimension 62",
        assembled(golden_open),
    ));
    report.checks.push(check(
        COMPACTIFIED_GOLDEN,
        "palindromic about 12",
        assembled(golden_compactified),
    ));
    report.checks.push(check(
        BIGRADED_GOLDEN,
        "L -> 1 recovers the open polynomial",
        assembled(golden_bigraded),
    ));
    report.checks.push(check(
        AMBIENT_SUBTRACTION,
        "untwisted part recovered",
        assembled(ambient_subtraction),
    ));
    report
}
