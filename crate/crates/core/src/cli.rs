//! Command-line front end: `audit`, `sl3` and `tables dump`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::audit::{self, AuditReport, TypeContext};
use crate::error::{Error, Result};
use crate::rootdata::CartanType;
use crate::sl3lab::{self, Sl3Report};
use crate::weylmod;

#[derive(Debug, Parser)]
#[command(name = "cellred", version, about = "Exact Weyl group, Hecke algebra and Weyl module computations with a conjecture audit")]
pub struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check for the selected types.
    Audit(AuditArgs),
    /// Incidence modules and principal series for SL3 over F_p.
    Sl3(Sl3Args),
    /// Dump computed tables.
    Tables {
        #[command(subcommand)]
        action: TablesCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Type to audit; may be repeated.
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "all")]
    pub types: Vec<CartanType>,
    /// Audit A1, A2, A3, A4, B2 and G2.
    #[arg(long)]
    pub all: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct Sl3Args {
    /// Prime; may be repeated.
    #[arg(long = "p", value_name = "P", default_values_t = [2u64, 3, 5, 7, 11])]
    pub primes: Vec<u64>,
    /// Also sum Weyl dimensions over regular orbits (primes >= 5).
    #[arg(long)]
    pub orbits: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum TablesCommand {
    Dump {
        #[arg(long, value_enum)]
        what: Table,
        #[arg(long = "type", value_name = "TYPE")]
        cartan_type: CartanType,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Klpoly,
    Cells,
    Gamma,
    Cwe,
    Delta,
}

impl Table {
    /// Case-insensitive lookup by the name used on the command line.
    pub fn from_name(name: &str) -> Option<Table> {
        <Table as ValueEnum>::from_str(name, true).ok()
    }
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })?;
    Ok(())
}

fn emit(output: Option<&Path>, contents: &str) -> Result<()> {
    match output {
        Some(path) => write_atomically(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_audit(reports: &[AuditReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Md => audit::render_markdown(reports),
    }
}

pub fn render_sl3(reports: &[Sl3Report], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Md => {
            let mut out = String::from("| p | lines | ker tau | ker tau' | ker tau = im tau' | ker tau' = im tau | equivariant | orbits |\n|---|---|---|---|---|---|---|---|\n");
            for r in reports {
                let k = &r.kernels;
                let orbits = r.principal_series.as_ref().map_or("-".to_string(), |ps| {
                    format!("{} regular, {}", ps.regular_orbits, if ps.all_ok { "all sum to the target" } else { "MISMATCH" })
                });
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.p, r.lines, k.dim_ker_tau, k.dim_ker_tau_prime, k.ker_tau_eq_im_tau_prime, k.ker_tau_prime_eq_im_tau, r.equivariant, orbits
                );
            }
            out
        }
    }
}

fn poly_map(coeffs: &[i64]) -> BTreeMap<String, i64> {
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(k, c)| (k.to_string(), *c))
        .collect()
}

/// JSON payload of `tables dump`.
pub fn dump_table(what: Table, t: CartanType) -> Result<Value> {
    let cx = TypeContext::build(t)?;
    let g = &cx.group;
    let name = |w: usize| g.elt(w).to_string();
    let body = match what {
        Table::Klpoly => {
            let mut polys = BTreeMap::new();
            for w in 0..g.order() {
                let row: BTreeMap<String, BTreeMap<String, i64>> = cx
                    .kl
                    .bruhat()
                    .interval_below(w)
                    .map(|y| (name(y), poly_map(cx.kl.kl_poly(y, w))))
                    .collect();
                polys.insert(name(w), row);
            }
            json!({ "variable": "q", "polynomials": polys })
        }
        Table::Cells => {
            let names = |c: &Vec<usize>| c.iter().map(|&w| name(w)).collect::<Vec<_>>();
            let two_sided: Vec<Value> = cx
                .cells
                .two_sided_cells
                .iter()
                .zip(&cx.cells.a_value)
                .map(|(c, a)| json!({ "elements": names(c), "a": a }))
                .collect();
            json!({
                "left_cells": cx.cells.left_cells.iter().map(names).collect::<Vec<_>>(),
                "right_cells": cx.cells.right_cells.iter().map(names).collect::<Vec<_>>(),
                "two_sided_cells": two_sided,
                "near_involutions": names(&cx.near_involutions.members),
            })
        }
        Table::Gamma => {
            let j = cx.jring.as_ref().map_err(|e| Error::ConstructionIncomplete(e.clone()))?;
            let mut out: BTreeMap<String, BTreeMap<String, BTreeMap<String, i64>>> = BTreeMap::new();
            for x in 0..g.order() {
                for y in 0..g.order() {
                    for &(z, c) in j.basis_product(x, y) {
                        out.entry(name(x)).or_default().entry(name(y)).or_default().insert(name(z), c);
                    }
                }
            }
            json!({ "convention": "t_x t_y = sum_z gamma[x][y][z] t_z", "gamma": out })
        }
        Table::Cwe => {
            let hc = cx.hecke.as_ref().map_err(|e| Error::ConstructionIncomplete(e.clone()))?;
            let rows: BTreeMap<String, &Vec<i64>> = (0..g.order()).map(|w| (name(w), &hc.leading.c[w])).collect();
            let a_e: BTreeMap<&str, usize> =
                hc.leading.labels.iter().map(String::as_str).zip(hc.leading.a.iter().copied()).collect();
            json!({ "labels": hc.leading.labels, "a_E": a_e, "c": rows })
        }
        Table::Delta => {
            let tb = cx.tables.as_ref().map_err(|e| Error::ConstructionIncomplete(e.clone()))?;
            let deltas = weylmod::delta_table(tb, &cx.roots)?;
            let duality = weylmod::find_duality(g, &deltas)?;
            let word = |w: usize| tb.word(g, w);
            let rows: BTreeMap<String, Value> = deltas
                .values()
                .map(|d| {
                    let pair = duality.pairs.iter().find(|p| p.w == d.w);
                    (
                        word(d.w),
                        json!({
                            "pi": d.pi.to_string(),
                            "c": d.c,
                            "partner": pair.map(|p| word(p.partner)),
                            "sign": pair.map(|p| p.sign),
                        }),
                    )
                })
                .collect();
            json!({ "delta": rows })
        }
    };
    let mut out = json!({ "type": t.to_string(), "table": format!("{what:?}").to_lowercase() });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    Ok(out)
}

/// Runs the parsed command; the exit code is 0 iff no check failed.
pub fn run(cli: Cli) -> Result<bool> {
    if let Some(jobs) = cli.jobs {
        // a pool that already exists keeps its size
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match cli.command {
        Command::Audit(args) => {
            let types = if args.all || args.types.is_empty() { CartanType::ALL.to_vec() } else { args.types };
            let reports = audit::run_all(&types);
            emit(args.out.output.as_deref(), &render_audit(&reports, args.out.format))?;
            Ok(reports.iter().all(AuditReport::passed))
        }
        Command::Sl3(args) => {
            let reports = args
                .primes
                .iter()
                .map(|&p| sl3lab::run_sl3(p, args.orbits))
                .collect::<Result<Vec<_>>>()?;
            emit(args.out.output.as_deref(), &render_sl3(&reports, args.out.format))?;
            Ok(reports.iter().all(Sl3Report::passed))
        }
        Command::Tables { action: TablesCommand::Dump { what, cartan_type, output } } => {
            let value = dump_table(what, cartan_type)?;
            emit(output.as_deref(), &to_json(&value))?;
            Ok(true)
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
