use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use geode_core::geode::{geode_closed_2var, geode_closed_two_nonzero};
use geode_core::verify::Status;
use geode_core::{
    geode_series, hyper_catalan, run_suite, solve_s, Bounds, ExpVec, Suite, TruncatedSeries,
};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "geode",
    version,
    about = "Hyper-Catalan and Geode coefficient tables and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the series S or the Geode series G.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        vars: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value = "s", ignore_case = true)]
        kind: TableKind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a single hyper-Catalan (C) or Geode (G) coefficient.
    Coeff {
        #[arg(long, value_enum, ignore_case = true)]
        kind: CoeffKind,
        /// Comma-separated exponents, e.g. 1,1
        #[arg(long, value_parser = parse_exps)]
        exps: ExpList,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        a: Option<u32>,
        #[arg(long)]
        max_order: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r_max: Option<u32>,
        /// Where to write the JSON report.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print every case, not just failures.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    S,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffKind {
    C,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone)]
struct ExpList(Vec<u32>);

fn parse_exps(s: &str) -> Result<ExpList, String> {
    let exps = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{p}' is not a nonnegative integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExpList(exps))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table {
            vars,
            max_degree,
            kind,
            format,
            out,
        } => cmd_table(vars as usize, max_degree, kind, format, out),
        Command::Coeff { kind, exps } => cmd_coeff(kind, exps.0),
        Command::Verify {
            suite,
            max_degree,
            a,
            max_order,
            n_max,
            r_max,
            report,
            verbose,
        } => {
            let bounds = Bounds {
                max_degree,
                a,
                max_order,
                n_max,
                r_max,
            };
            cmd_verify(suite, &bounds, report, verbose)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn open_output(out: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            Box::new(BufWriter::new(File::create(&path).map_err(|e| {
                io::Error::new(e.kind(), format!("{}: {e}", path.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_csv(w: &mut dyn Write, series: &TruncatedSeries) -> io::Result<()> {
    let header: Vec<String> = (1..=series.nvars()).map(|k| format!("m_{k}")).collect();
    writeln!(w, "{},coeff", header.join(","))?;
    for (m, c) in series.terms() {
        let row: Vec<String> = m.exps().iter().map(|e| e.to_string()).collect();
        writeln!(w, "{},{c}", row.join(","))?;
    }
    Ok(())
}

fn cmd_table(
    vars: usize,
    max_degree: u32,
    kind: TableKind,
    format: Format,
    out: Option<PathBuf>,
) -> Result<u8, Box<dyn std::error::Error>> {
    let mut w = open_output(out)?;
    match kind {
        TableKind::S => {
            let s = solve_s(vars, max_degree);
            match format {
                Format::Csv => write_csv(&mut w, &s)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &s.to_json())?;
                    writeln!(w)?;
                }
            }
        }
        TableKind::G => {
            let g = geode_series(vars, max_degree)?;
            match format {
                Format::Csv => write_csv(&mut w, g.series())?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut w, &g.to_json())?;
                    writeln!(w)?;
                }
            }
        }
    }
    w.flush()?;
    Ok(0)
}

/// Geode coefficient from a closed form when at most two exponents are
/// nonzero, from the series oracle otherwise.
fn geode_coeff(exps: &[u32]) -> Result<BigInt, Box<dyn std::error::Error>> {
    let nonzero: Vec<usize> = (0..exps.len()).filter(|&k| exps[k] > 0).collect();
    let n = exps.iter().sum::<u32>() + 1;
    let value = match nonzero.as_slice() {
        [] => BigInt::from(1),
        [s, t] if exps.len() == 2 => geode_closed_2var(exps[*s], exps[*t]),
        [s, t] => geode_closed_two_nonzero(*s as u32 + 1, *t as u32 + 1, n, exps[*t]),
        [s] => geode_closed_two_nonzero(*s as u32 + 1, *s as u32 + 2, n, 0),
        _ => {
            let m = ExpVec::new(exps.to_vec());
            geode_series(exps.len(), m.total_degree())?.coeff(&m)?
        }
    };
    Ok(value)
}

fn cmd_coeff(kind: CoeffKind, exps: Vec<u32>) -> Result<u8, Box<dyn std::error::Error>> {
    let value = match kind {
        CoeffKind::C => hyper_catalan(&ExpVec::new(exps)),
        CoeffKind::G => geode_coeff(&exps)?,
    };
    println!("{value}");
    Ok(0)
}

fn cmd_verify(
    suite: Suite,
    bounds: &Bounds,
    report_path: Option<PathBuf>,
    verbose: bool,
) -> Result<u8, Box<dyn std::error::Error>> {
    let report = run_suite(suite, bounds);
    for case in &report.cases {
        if verbose || case.status != Status::Pass {
            let tag = match case.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            println!(
                "{tag:5} {} expected={} actual={}",
                case.id, case.expected, case.actual
            );
        }
    }
    println!(
        "{}: {} cases, {} passed, {} failed",
        report.suite, report.summary.total, report.summary.passed, report.summary.failed
    );
    if let Some(path) = report_path {
        let mut w = open_output(Some(path))?;
        serde_json::to_writer_pretty(&mut w, &report)?;
        writeln!(w)?;
        w.flush()?;
    }
    Ok(report.exit_code() as u8)
}
