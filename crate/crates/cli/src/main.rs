mod input;
mod scan;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cantor_core::automaton::{
    build_multi_untrimmed, count_paths, BuildOptions, DEFAULT_MAX_VERTICES,
};
use cantor_core::export::{to_dot, to_json};
use cantor_core::families::{
    expect_l, expect_n, family_multiplier, n_eigen_residual, FamilyExpectation,
};
use cantor_core::langops::{is_subset, pointed_isomorphic};
use cantor_core::oracle::{brute_count_extendable_with, brute_count_with, OracleLimits};
use cantor_core::spectral::{hausdorff_dim, scc, DEFAULT_TOL};
use cantor_core::suite::{run_suite, Suite};
use cantor_core::ternary::FamilyKind;
use cantor_core::{build_single, Error};

use input::{expand, SetExpr};
use scan::ScanRow;

#[derive(Parser)]
#[command(
    name = "cantor",
    version,
    about = "Hausdorff dimensions of C(1, M_1, ..., M_n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Numeric {
    /// Target accuracy for the Perron eigenvalue.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Decimal places in reported values.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=12))]
    precision: u8,
    /// Refuse constructions with more states than this.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
}

impl Numeric {
    fn opts(&self) -> BuildOptions {
        BuildOptions {
            max_vertices: self.max_vertices,
        }
    }

    fn fmt(&self, x: f64) -> String {
        format!("{x:.*}", self.precision as usize)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of one set, e.g. `7`, `7,19`, `L:4`, `t:201`, `2^8` or `Y`.
    Dim {
        set: String,
        #[command(flatten)]
        num: Numeric,
        #[arg(long)]
        json: bool,
    },
    /// One row per set; terms may carry ranges such as `L:1..9` or `2^2..14/2`.
    Scan {
        entries: Vec<String>,
        /// Read further entries from a file, one per line.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        num: Numeric,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write the presentation as Graphviz DOT or JSON.
    Export {
        set: String,
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Brute-force word counts next to automaton path counts.
    Blocks {
        set: String,
        /// Longest word length.
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Count only words that extend indefinitely.
        #[arg(long)]
        extendable: bool,
    },
    /// Decide whether the first set is contained in the second.
    Contain { left: String, right: String },
    /// Decide whether two presentations are pointed-isomorphic.
    Iso { left: String, right: String },
    /// Expected and computed values for a family member, e.g. `family L 5`.
    Family {
        kind: FamilyKind,
        k: u32,
        #[command(flatten)]
        num: Numeric,
    },
    /// Run a regression suite: tables, families, oracle, containment or all.
    Check {
        suite: Suite,
        /// Print every check, not only failures.
        #[arg(short, long)]
        verbose: bool,
    },
}

enum Failure {
    Core(Error),
    Io(io::Error),
    Usage(String),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = out.flush();
            match f {
                Failure::Core(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(if e.is_refusal() { 2 } else { 1 })
                }
                Failure::Io(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Failure::Io(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
                Failure::Usage(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(1)
                }
                Failure::ChecksFailed(n) => {
                    eprintln!("{n} criteria failed");
                    ExitCode::from(3)
                }
            }
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Outcome {
    match command {
        Command::Dim { set, num, json } => cmd_dim(&set, num, json, out),
        Command::Scan {
            entries,
            file,
            num,
            csv,
            jobs,
        } => cmd_scan(entries, file, num, csv, jobs, out),
        Command::Export {
            set,
            dot,
            json: _,
            output,
            max_vertices,
        } => {
            let g = SetExpr::parse(&set)?.build(&BuildOptions { max_vertices })?;
            let text = if dot { to_dot(&g) } else { to_json(&g) + "\n" };
            match output {
                Some(path) => fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(())
        }
        Command::Blocks {
            set,
            max_len,
            extendable,
        } => cmd_blocks(&set, max_len, extendable, out),
        Command::Contain { left, right } => {
            let opts = BuildOptions::default();
            let r = is_subset(
                &SetExpr::parse(&left)?.build(&opts)?,
                &SetExpr::parse(&right)?.build(&opts)?,
            )?;
            match r.witness {
                None => writeln!(out, "contained=true")?,
                Some(w) => writeln!(out, "contained=false witness={}", w.to_msf_string())?,
            }
            Ok(())
        }
        Command::Iso { left, right } => {
            let opts = BuildOptions::default();
            let iso = pointed_isomorphic(
                &SetExpr::parse(&left)?.build(&opts)?,
                &SetExpr::parse(&right)?.build(&opts)?,
            )?;
            writeln!(out, "isomorphic={iso}")?;
            Ok(())
        }
        Command::Family { kind, k, num } => cmd_family(kind, k, num, out),
        Command::Check { suite, verbose } => {
            let outcomes = run_suite(suite);
            let mut failed = 0;
            for o in &outcomes {
                writeln!(out, "{o}")?;
                for line in &o.lines {
                    if verbose || !line.passed {
                        let mark = if line.passed { "ok  " } else { "FAIL" };
                        writeln!(out, "       {mark} {}", line.text)?;
                    }
                }
                failed += usize::from(!o.passed);
            }
            writeln!(
                out,
                "{} of {} criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            )?;
            if failed > 0 {
                return Err(Failure::ChecksFailed(failed));
            }
            Ok(())
        }
    }
}

fn cmd_dim(set: &str, num: Numeric, as_json: bool, out: &mut impl Write) -> Outcome {
    let g = SetExpr::parse(set)?.build(&num.opts())?;
    let d = hausdorff_dim(&g, num.tol)?;
    let sccs = scc(&g).len();
    if as_json {
        let v = json!({
            "set": set,
            "beta": d.beta,
            "dim": d.dim,
            "vertices": g.vertex_count(),
            "sccs": sccs,
            "error_bound": d.error_bound,
            "method": d.method.to_string(),
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&v).expect("plain data")
        )?;
    } else {
        writeln!(
            out,
            "beta={} dim={} vertices={} sccs={} error_bound={:.1e} method={}",
            num.fmt(d.beta),
            num.fmt(d.dim),
            g.vertex_count(),
            sccs,
            d.error_bound,
            d.method
        )?;
    }
    Ok(())
}

fn cmd_scan(
    entries: Vec<String>,
    file: Option<PathBuf>,
    num: Numeric,
    as_csv: bool,
    jobs: usize,
    out: &mut impl Write,
) -> Outcome {
    let mut raw = entries;
    if let Some(path) = file {
        raw.extend(
            fs::read_to_string(path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from),
        );
    }
    if raw.is_empty() {
        return Err(Failure::Usage("scan needs at least one entry".into()));
    }
    let mut expanded = Vec::new();
    for entry in &raw {
        expanded.extend(expand(entry)?);
    }
    let rows = scan::scan(&expanded, &num.opts(), num.tol, jobs);
    if as_csv {
        write_csv(&rows, num, out)
    } else {
        write_table(&rows, num, out)
    }
}

fn write_csv(rows: &[ScanRow], num: Numeric, out: &mut impl Write) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "multipliers",
        "vertices",
        "sccs",
        "beta",
        "dim",
        "error_bound",
        "elapsed_ms",
        "error",
    ])?;
    for r in rows {
        match &r.error {
            None => w.write_record([
                r.multipliers.clone(),
                r.vertex_count.to_string(),
                r.scc_count.to_string(),
                num.fmt(r.beta),
                num.fmt(r.dim),
                format!("{:.1e}", r.error_bound),
                r.elapsed_ms.to_string(),
                String::new(),
            ])?,
            Some(e) => {
                w.write_record([r.multipliers.as_str(), "", "", "", "", "", "", e.as_str()])?
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn write_table(rows: &[ScanRow], num: Numeric, out: &mut impl Write) -> Outcome {
    let width = rows
        .iter()
        .map(|r| r.multipliers.len())
        .max()
        .unwrap_or(0)
        .max(11);
    writeln!(
        out,
        "{:<width$}  {:>8}  {:>5}  {:>14}  {:>14}",
        "multipliers", "vertices", "sccs", "beta", "dim"
    )?;
    for r in rows {
        match &r.error {
            None => writeln!(
                out,
                "{:<width$}  {:>8}  {:>5}  {:>14}  {:>14}",
                r.multipliers,
                r.vertex_count,
                r.scc_count,
                num.fmt(r.beta),
                num.fmt(r.dim)
            )?,
            Some(e) => writeln!(out, "{:<width$}  error: {e}", r.multipliers)?,
        }
    }
    Ok(())
}

fn cmd_blocks(set: &str, max_len: usize, extendable: bool, out: &mut impl Write) -> Outcome {
    let SetExpr::Multipliers(ms) = SetExpr::parse(set)? else {
        return Err(Failure::Usage("blocks needs a multiplier list".into()));
    };
    let limits = OracleLimits::default();
    let opts = BuildOptions::default();
    let g = if extendable {
        SetExpr::Multipliers(ms.clone()).build(&opts)?
    } else {
        build_multi_untrimmed(&ms, &opts)?
    };
    writeln!(out, "n brute automaton")?;
    for n in 0..=max_len {
        let brute = if extendable {
            brute_count_extendable_with(&ms, n, &limits)?
        } else {
            brute_count_with(&ms, n, &limits)?
        };
        writeln!(out, "{n} {brute} {}", count_paths(&g, n)?)?;
    }
    Ok(())
}

fn cmd_family(kind: FamilyKind, k: u32, num: Numeric, out: &mut impl Write) -> Outcome {
    let m = family_multiplier(kind, k)?;
    let g = build_single(&m)?;
    let d = hausdorff_dim(&g, num.tol)?;
    writeln!(out, "{}:{k} = {m}", kind.letter())?;
    writeln!(
        out,
        "computed beta={} dim={} vertices={} sccs={}",
        num.fmt(d.beta),
        num.fmt(d.dim),
        g.vertex_count(),
        scc(&g).len()
    )?;
    let expectation: Option<FamilyExpectation> = match kind {
        FamilyKind::L => Some(expect_l(k)?),
        FamilyKind::N => Some(expect_n(k)?),
        FamilyKind::P => None,
    };
    if let Some(e) = expectation {
        writeln!(
            out,
            "expected beta={} dim={} vertices={} sccs={}",
            num.fmt(e.expected_beta),
            num.fmt(e.expected_dim),
            e.expected_vertices,
            e.expected_scc_count
        )?;
        if let Some(p) = &e.defining_poly {
            writeln!(out, "polynomial {p}")?;
        }
    }
    if kind == FamilyKind::N {
        writeln!(out, "eigenvector residual {:.1e}", n_eigen_residual(k)?)?;
    }
    Ok(())
}
