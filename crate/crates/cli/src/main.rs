use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gentle_bc::homology::{default_max_depth, generate_table, ResolutionStore, Table, TableKind};
use gentle_bc::quiverrep::{all_indecomposables, HallConfig};
use gentle_bc::report::{overall, CheckRecord, Status};
use gentle_bc::riedtmann::{build_ltilde, LtLabel};
use serde_json::json;

mod suites;

use suites::{Suite, SuiteConfig};

/// Exit status when a check fails.
const EXIT_FAIL: u8 = 1;
/// Exit status when the only problem is an exhausted enumeration budget.
const EXIT_BUDGET: u8 = 3;
/// Exit status for runtime errors such as undetermined resolutions.
const EXIT_ERROR: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "gentle-bc", version, about = "Exact checks for the gentle one-cycle algebra and its Lie algebras")]
struct Cli {
    /// Rank: number of vertices of the quiver.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Depth bound for projective resolutions.
    #[arg(long, global = true)]
    max_depth: Option<usize>,

    /// Cap on enumerated subspace tuples per oracle count.
    #[arg(long, global = true, default_value_t = HallConfig::default().budget, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Primes for the oracle point counts.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = HallConfig::default().primes)]
    primes: Vec<u64>,

    /// Run the oracle suite above its default rank limit.
    #[arg(long, global = true)]
    force_oracle: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the indecomposables with dimension vectors and roots.
    Indecomposables,
    /// The tables of the modified Euler form and its value at t = 1.
    Tables,
    /// Run verification suites and print a report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// The bracket table of the extended Lie algebra.
    Brackets,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    let pipe = Some(std::io::ErrorKind::BrokenPipe);
    e.downcast_ref::<std::io::Error>().map(std::io::Error::kind) == pipe
        || e.downcast_ref::<serde_json::Error>().and_then(serde_json::Error::io_error_kind) == pipe
}

fn run(cli: &Cli) -> Result<u8> {
    let n = cli.n as usize;
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Indecomposables => {
            write!(out, "{}", indecomposables(n, cli.format)?)?;
            Ok(0)
        }
        Command::Tables => tables(cli, n, &mut out),
        Command::Brackets => {
            write!(out, "{}", brackets(n, cli.format)?)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let mut seen = std::collections::BTreeSet::new();
            if !cli.primes.iter().all(|p| seen.insert(*p)) {
                bail!("--primes must be distinct, got {:?}", cli.primes);
            }
            let cfg = SuiteConfig {
                n,
                max_depth: cli.max_depth,
                oracle: HallConfig {
                    primes: cli.primes.clone(),
                    budget: cli.budget,
                },
                force_oracle: cli.force_oracle,
            };
            let records = suites::run(*suite, &cfg)?;
            write!(out, "{}", render_records(&records, cli.format)?)?;
            Ok(match overall(&records) {
                Status::Fail => EXIT_FAIL,
                Status::BudgetExceeded => EXIT_BUDGET,
                Status::Pass | Status::Skipped => 0,
            })
        }
    }
}

fn indecomposables(n: usize, format: Format) -> Result<String> {
    let types = all_indecomposables(n);
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    Ok(match format {
        Format::Json => {
            let items: Vec<_> = types
                .iter()
                .map(|t| {
                    json!({
                        "label": t.to_string(),
                        "dim_vector": t.dim_vector(n),
                        "gabriel_root": t.gabriel_root(n).coeffs(),
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({"n": n, "count": types.len(), "indecomposables": items}))?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "dim_vector", "gabriel_root"])?;
            for t in &types {
                w.write_record([t.to_string(), join(&t.dim_vector(n)), t.gabriel_root(n).to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Latex => {
            let mut s = String::from("\\begin{tabular}{lll}\nmodule & dimension vector & root \\\\\n\\hline\n");
            for t in &types {
                s.push_str(&format!("${t}$ & $({})$ & ${}$ \\\\\n", join(&t.dim_vector(n)).replace(' ', ","), t.gabriel_root(n)));
            }
            s.push_str(&format!("\\end{{tabular}}\n% {} indecomposables\n", types.len()));
            s
        }
    })
}

fn tables(cli: &Cli, n: usize, out: &mut impl Write) -> Result<u8> {
    let depth = cli.max_depth.unwrap_or_else(|| default_max_depth(n));
    let store = ResolutionStore::with_depth(n, depth)?;
    let undetermined = suites::undetermined_modules(&store);
    if !undetermined.is_empty() {
        bail!(
            "resolutions undetermined within depth {depth}: {}",
            undetermined.join(", ")
        );
    }
    let tables: Vec<Table> = [TableKind::Series, TableKind::AtOne]
        .into_iter()
        .map(|k| generate_table(k, &store))
        .collect::<gentle_bc::Result<_>>()?;
    let findings: usize = tables.iter().map(|t| t.findings.len()).sum();
    match cli.format {
        Format::Json => {
            let body: Vec<_> = tables
                .iter()
                .map(|t| {
                    json!({
                        "table": t.kind.number(),
                        "kind": t.kind,
                        "rows": t.rows(),
                        "findings": t.findings,
                    })
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &json!({"n": n, "tables": body}))?;
            writeln!(out)?;
        }
        Format::Csv => {
            for (k, t) in tables.iter().enumerate() {
                let csv = t.to_csv();
                let skip = if k == 0 { 0 } else { 1 };
                for line in csv.lines().skip(skip) {
                    writeln!(out, "{line}")?;
                }
            }
        }
        Format::Latex => {
            for t in &tables {
                let title = match t.kind {
                    TableKind::Series => "<M,N>_t, row M, column N",
                    TableKind::AtOne => "<M,N>_1, row M, column N",
                };
                writeln!(out, "% {title}")?;
                write!(out, "{}", t.to_latex())?;
            }
            writeln!(out, "% findings: {findings}")?;
        }
    }
    if findings > 0 {
        for t in &tables {
            for f in &t.findings {
                eprintln!(
                    "table {} <{}, {}>: {:?}, printed {:?}, computed {}, ext dims {:?}",
                    f.table, f.row, f.col, f.kind, f.printed, f.computed, f.ext_dims
                );
            }
        }
        return Ok(EXIT_FAIL);
    }
    Ok(0)
}

fn brackets(n: usize, format: Format) -> Result<String> {
    let lt = build_ltilde(n)?;
    let alg = &lt.algebra;
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({"n": n, "algebra": alg.to_json()}))?;
            s.push('\n');
            s
        }
        Format::Latex => lt.to_latex(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["x", "y", "bracket"])?;
            let labels: Vec<LtLabel> = alg.labels().to_vec();
            for a in &labels {
                for b in &labels {
                    let v = alg.bracket_labels(a, b)?;
                    if !v.is_zero() {
                        w.write_record([a.to_string(), b.to_string(), alg.format(&v)])?;
                    }
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

fn render_records(records: &[CheckRecord], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(records)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Latex => {
            let esc = |s: &str| s.replace('_', "\\_").replace('{', "\\{").replace('}', "\\}").replace('&', "\\&");
            let mut s = String::from("\\begin{tabular}{lllll}\ncheck & instance & expected & computed & status \\\\\n\\hline\n");
            for r in records {
                s.push_str(&format!(
                    "{} & {} & {} & {} & {} \\\\\n",
                    esc(&r.check_id),
                    esc(&r.instance),
                    esc(&r.expected),
                    esc(&r.computed),
                    r.status
                ));
            }
            s.push_str("\\end{tabular}\n");
            s
        }
    })
}
