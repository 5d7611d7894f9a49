//! The `relcomm` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::catalog::{builtin_catalog, coprime_pairs, named_group, CatalogEntry};
use crate::classifier::{verify_with_spectrum, ClassificationReport, Verdict};
use crate::commdeg::degree_spectrum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::lab::{self, AuditRecord, GroupAnalysis};
use crate::lattice::{SubgroupLattice, DEFAULT_LATTICE_CAP};
use crate::report::{scan_entry, Report};
use crate::spec::{parse_group_spec, GroupSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "relcomm",
    version,
    about = "Relative commutativity degree spectra of finite groups"
)]
struct Cli {
    /// Largest group order the subgroup lattice may be built for
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP)]
    cap: usize,
    /// Worker threads (defaults to the number of cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include per-phase timings in scan reports
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(clap::Args, Debug)]
struct GroupInput {
    /// File holding a JSON group spec
    spec_file: Option<PathBuf>,
    /// Inline JSON group spec
    #[arg(long, conflicts_with = "spec_file")]
    group: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the degree spectrum with a witness subgroup per value
    Spectrum(GroupInput),
    /// Print the classification report
    Classify(GroupInput),
    /// Classify and compare spectra; exit 1 on a mismatch
    Verify(GroupInput),
    /// Sweep a catalog and emit one report per group
    Scan {
        #[arg(long)]
        max_order: usize,
        /// JSON array of {"name", "spec"} objects to use instead of the built-in catalog
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Run conjecture and lemma audits over the catalog
    Audit {
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Include the coprime product pairs (implied by `--check product`)
        #[arg(long)]
        pairs: bool,
        #[arg(long, default_value_t = 256)]
        max_order: usize,
    },
    /// Spectrum-size deltas for direct products of non-coprime pairs
    Counterexample {
        #[arg(long, value_enum)]
        pair: Pair,
        /// Permit the order-576 computation
        #[arg(long)]
        allow_heavy: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Check {
    Chain,
    Omega,
    Product,
    PrimePower,
    DistinctPrime,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Pair {
    A4s4,
    S4s4,
    /// Refused: order 14400 is far past any lattice cap
    S5s5,
}

/// Runs the CLI on process arguments and stdio.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = match code {
                EXIT_OK => write!(out, "{e}"),
                _ => write!(err, "{e}"),
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::BadParams(e.to_string())),
        },
        None => execute(&cli),
    };
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &outcome.text).map_err(Error::from),
                None => out.write_all(outcome.text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
            for note in &outcome.notes {
                let _ = writeln!(err, "{note}");
            }
            if outcome.failed {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_cap() {
                EXIT_CAP
            } else {
                EXIT_INPUT
            }
        }
    }
}

struct Outcome {
    text: String,
    failed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failed: false,
            notes: Vec::new(),
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Spectrum(input) => spectrum(cli, input),
        Command::Classify(input) => classification(cli, input, false),
        Command::Verify(input) => classification(cli, input, true),
        Command::Scan { max_order, catalog } => scan(cli, *max_order, catalog.as_ref()),
        Command::Audit {
            check,
            pairs,
            max_order,
        } => audit(cli, *check, *pairs, *max_order),
        Command::Counterexample { pair, allow_heavy } => counterexample(cli, *pair, *allow_heavy),
    }
}

fn load_group(input: &GroupInput) -> Result<FiniteGroup> {
    let text = match (&input.spec_file, &input.group) {
        (_, Some(inline)) => inline.clone(),
        (Some(path), None) => fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Error::BadParams("give a spec file or --group JSON".into())),
    };
    let spec = parse_group_spec(&text)?;
    let g = spec.build(DEFAULT_ORDER_CAP)?;
    Ok(match (g.name().is_some(), &spec) {
        (false, GroupSpec::Named(id)) => g.named(id.clone()),
        _ => g,
    })
}

fn lattice_for(cli: &Cli, g: &FiniteGroup) -> Result<SubgroupLattice> {
    SubgroupLattice::build(g, cli.cap)
}

fn spectrum(cli: &Cli, input: &GroupInput) -> Result<Outcome> {
    let g = load_group(input)?;
    let l = lattice_for(cli, &g)?;
    let s = degree_spectrum(&g, &l);
    let text = match cli.format {
        Format::Json => {
            let values: Vec<Value> = s
                .values
                .iter()
                .zip(&s.witnesses)
                .map(|(v, w)| json!({ "value": v.to_string(), "witness": w.elements() }))
                .collect();
            let doc = json!({
                "name": g.name().unwrap_or("G"),
                "order": g.order(),
                "spectrumSize": s.len(),
                "spectrum": values,
            });
            format!("{}\n", serde_json::to_string(&doc).expect("json"))
        }
        Format::Tsv => {
            let mut text = String::from("value\twitnessOrder\twitness\n");
            for (v, w) in s.values.iter().zip(&s.witnesses) {
                let elems: Vec<String> = w.elements().iter().map(|x| x.to_string()).collect();
                text.push_str(&format!("{v}\t{}\t{}\n", w.order(), elems.join(",")));
            }
            text
        }
    };
    Ok(Outcome::ok(text))
}

fn classification_json(r: &ClassificationReport) -> Value {
    json!({
        "name": r.name,
        "order": r.order,
        "centerOrder": r.center_order,
        "caseTag": r.case,
        "predicted": r.predicted.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "spectrum": r.computed.values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "verdict": r.verdict,
    })
}

fn classification(cli: &Cli, input: &GroupInput, strict: bool) -> Result<Outcome> {
    let g = load_group(input)?;
    let l = lattice_for(cli, &g)?;
    let r = verify_with_spectrum(&g, &l, degree_spectrum(&g, &l))?;
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string(&classification_json(&r)).expect("json")),
        Format::Tsv => format!(
            "{}\n{}\t{}\t{}\t{}\t{}\n",
            Report::TSV_HEADER,
            r.name,
            r.order,
            r.computed.len(),
            r.case,
            r.verdict
        ),
    };
    Ok(Outcome {
        text,
        failed: strict && r.verdict == Verdict::Mismatch,
        notes: Vec::new(),
    })
}

fn read_catalog_file(path: &PathBuf) -> Result<Vec<CatalogEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let items = doc.as_array().ok_or_else(|| Error::Schema {
        field: "catalog".into(),
        message: "expected an array of {\"name\", \"spec\"} objects".into(),
    })?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let name = item.get("name").and_then(Value::as_str).ok_or_else(|| Error::Schema {
                field: format!("catalog[{i}].name"),
                message: "expected a string".into(),
            })?;
            let spec = item.get("spec").ok_or_else(|| Error::Schema {
                field: format!("catalog[{i}].spec"),
                message: "missing".into(),
            })?;
            Ok(CatalogEntry {
                name: name.to_string(),
                spec: GroupSpec::from_json(spec)?,
            })
        })
        .collect()
}

fn catalog_for(max_order: usize, path: Option<&PathBuf>) -> Result<Vec<CatalogEntry>> {
    match path {
        None => builtin_catalog(max_order),
        Some(p) => {
            let mut entries = Vec::new();
            for e in read_catalog_file(p)? {
                if e.spec.order()? <= max_order {
                    entries.push(e);
                }
            }
            Ok(entries)
        }
    }
}

fn scan(cli: &Cli, max_order: usize, path: Option<&PathBuf>) -> Result<Outcome> {
    let entries = catalog_for(max_order, path)?;
    let reports: Vec<Report> = entries
        .par_iter()
        .map(|e| scan_entry(e, DEFAULT_ORDER_CAP, cli.cap, cli.timings))
        .collect::<Result<_>>()?;
    let mut text = String::new();
    if cli.format == Format::Tsv {
        text.push_str(Report::TSV_HEADER);
        text.push('\n');
    }
    let mut notes = Vec::new();
    for r in &reports {
        let line = match cli.format {
            Format::Json => r.to_json_line(),
            Format::Tsv => r.to_tsv_line(),
        };
        text.push_str(&line);
        text.push('\n');
        if !r.passed() {
            notes.push(format!("finding: {} ({}, {})", r.name, r.case_tag, r.verdict));
        }
    }
    Ok(Outcome {
        text,
        failed: !notes.is_empty(),
        notes,
    })
}

fn audit_records_for(a: &GroupAnalysis, check: Check) -> Vec<AuditRecord> {
    let mut out = Vec::new();
    if matches!(check, Check::Chain | Check::All) {
        out.push(lab::check_chain_bound(a));
    }
    if matches!(check, Check::Omega | Check::All) {
        out.push(lab::check_omega_bound(a));
    }
    if matches!(check, Check::PrimePower | Check::All) {
        if let Ok(r) = lab::check_prime_power_orders(a) {
            out.push(r);
        }
    }
    if matches!(check, Check::DistinctPrime | Check::All) {
        out.push(lab::check_distinct_prime_degrees(a));
    }
    out
}

fn audit_tsv(r: &AuditRecord) -> String {
    format!("{}\t{:?}\t{}", r.subject, r.check, r.holds)
}

fn audit(cli: &Cli, check: Check, pairs: bool, max_order: usize) -> Result<Outcome> {
    let mut records: Vec<AuditRecord> = Vec::new();
    if check != Check::Product {
        let entries = builtin_catalog(max_order)?;
        let per_group: Vec<Vec<AuditRecord>> = entries
            .par_iter()
            .map(|e| {
                let a = GroupAnalysis::new(e.build(DEFAULT_ORDER_CAP)?, cli.cap)?;
                Ok(audit_records_for(&a, check))
            })
            .collect::<Result<_>>()?;
        records.extend(per_group.into_iter().flatten());
    }
    if check == Check::Product || (check == Check::All && pairs) {
        let per_pair: Vec<Vec<AuditRecord>> = coprime_pairs()
            .par_iter()
            .map(|&(h, k)| {
                let h = named_group(h, DEFAULT_ORDER_CAP)?;
                let k = named_group(k, DEFAULT_ORDER_CAP)?;
                Ok(vec![
                    lab::product_spectrum(&h, &k, cli.cap)?,
                    lab::check_product_cardinality(&h, &k, cli.cap)?,
                ])
            })
            .collect::<Result<_>>()?;
        records.extend(per_pair.into_iter().flatten());
    }
    let mut text = String::new();
    if cli.format == Format::Tsv {
        text.push_str("subject\tcheck\tholds\n");
    }
    let mut notes = Vec::new();
    for r in &records {
        let line = match cli.format {
            Format::Json => serde_json::to_string(r).expect("json"),
            Format::Tsv => audit_tsv(r),
        };
        text.push_str(&line);
        text.push('\n');
        if !r.holds {
            notes.push(format!("finding: {:?} fails for {}", r.check, r.subject));
        }
    }
    Ok(Outcome {
        text,
        failed: !notes.is_empty(),
        notes,
    })
}

fn counterexample(cli: &Cli, pair: Pair, allow_heavy: bool) -> Result<Outcome> {
    let (label, left, right) = match pair {
        Pair::A4s4 => ("a4s4", FiniteGroup::alternating(4), FiniteGroup::symmetric(4)),
        Pair::S4s4 => {
            if !allow_heavy {
                return Err(Error::BadParams(
                    "the s4s4 pair builds a lattice at order 576; pass --allow-heavy".into(),
                ));
            }
            ("s4s4", FiniteGroup::symmetric(4), FiniteGroup::symmetric(4))
        }
        Pair::S5s5 => {
            return Err(Error::Inapplicable(
                "S5 x S5 has order 14400 and its subgroup lattice is out of reach; this pair is not computed".into(),
            ))
        }
    };
    let cap = cli.cap.max(left.order() * right.order());
    let sizes = |g: &FiniteGroup| -> Result<usize> {
        let l = SubgroupLattice::build(g, cap)?;
        Ok(degree_spectrum(g, &l).len())
    };
    let (ls, rs) = (sizes(&left)?, sizes(&right)?);
    let delta = lab::product_cardinality_delta(&left, &right, cap)?;
    let product = (ls * rs) as i64 + delta;
    let text = match cli.format {
        Format::Json => format!(
            "{}\n",
            json!({
                "pair": label,
                "leftSize": ls,
                "rightSize": rs,
                "productSize": product,
                "delta": delta,
            })
        ),
        Format::Tsv => {
            format!("pair\tleftSize\trightSize\tproductSize\tdelta\n{label}\t{ls}\t{rs}\t{product}\t{delta}\n")
        }
    };
    Ok(Outcome::ok(text))
}
