use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use theta_forge::batch;
use theta_forge::checks::{self, CheckResult};
use theta_forge::commands::{
    self, error_status, CliResult, ConvertArgs, HyperArgs, NewtonArgs, Outcome, SiegelArgs, Status,
};
use theta_forge::gen::{seed_from_env, Gen};

#[derive(Parser)]
#[command(name = "theta-forge", version, about = "Exact tools for linear differential operators in the D and T = tD bases")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite an operator in the other basis.
    Convert(ConvertArgs),
    /// Iterate a linear form and check the determinant windows.
    Siegel(SiegelArgs),
    /// Newton polygon at infinity and the single-slope verdict.
    Newton(NewtonArgs),
    /// Factorial-type or hypergeometric example operator with all checks.
    Hyper(HyperArgs),
    /// Run a line-delimited JSON jobs file.
    Batch {
        #[arg(long)]
        jobs: std::path::PathBuf,
        #[arg(long)]
        out: std::path::PathBuf,
    },
    /// Randomized self-check; the seed comes from THETA_FORGE_SEED.
    Selftest,
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| commands::CliError::Input(format!("{}: {e}", path.display())))
}

fn finish(result: CliResult<Outcome>, json: Option<&Path>, svg: Option<&Path>) -> Status {
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return error_status(&e);
        }
    };
    print!("{}", outcome.text);
    for d in &outcome.report.diagnostics {
        eprintln!("note: {d}");
    }
    let written = json
        .map(|p| write_file(p, &commands::report_json(&outcome.report)))
        .transpose()
        .and_then(|_| match (svg, &outcome.svg) {
            (Some(p), Some(s)) => write_file(p, s),
            _ => Ok(()),
        });
    if let Err(e) = written {
        eprintln!("error: {e}");
        return Status::Input;
    }
    outcome.status
}

fn selftest() -> Status {
    let seed = seed_from_env();
    println!("seed {seed}");
    let mut g = Gen::new(seed);
    let mut results: Vec<(&str, CheckResult, Duration)> = Vec::new();
    let mut timed = |name, f: &mut dyn FnMut() -> CheckResult| {
        let start = Instant::now();
        let r = f();
        results.push((name, r, start.elapsed()));
    };
    timed("monomial oracle", &mut || checks::monomial_oracle(8, 12));
    timed("conversion roundtrip", &mut || checks::conversion_roundtrip(&mut g, 20, 6, 8));
    let mut t1 = None;
    timed("t1 determinants", &mut || {
        let s = checks::t1_suite(&mut g, 20, 2);
        t1 = Some(s.slopes);
        s.nonvanishing
    });
    let mut t2 = None;
    timed("t2 determinants", &mut || {
        let s = checks::t2_suite(&mut g, 20, 2);
        t2 = Some(s.slopes);
        s.nonvanishing
    });
    timed("t1 slopes", &mut || t1.take().expect("suite ran"));
    timed("t2 slopes", &mut || t2.take().expect("suite ran"));
    timed("worked slopes", &mut checks::worked_slopes);
    timed("annihilation", &mut || checks::annihilation(&mut g, 10, 20));
    timed("pfq boundary", &mut || checks::pfq_boundary(&mut g, 10));
    timed("determinant oracle", &mut || checks::det_oracle(&mut g, 20));
    timed("negative control", &mut checks::negative_control);
    timed("parser roundtrip", &mut || checks::parser_roundtrip(&mut g, 20));
    let mut status = Status::Ok;
    for (name, r, elapsed) in results {
        match r {
            Ok(detail) => println!("ok   {name}: {detail} [{} ms]", elapsed.as_millis()),
            Err(e) => {
                println!("FAIL {name}: {e}");
                status = Status::Internal;
            }
        }
    }
    status
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match &cli.cmd {
        Cmd::Convert(a) => finish(commands::convert(a), None, None),
        Cmd::Siegel(a) => finish(commands::siegel(a), a.json.as_deref(), None),
        Cmd::Newton(a) => finish(commands::newton(a), a.json.as_deref(), a.svg.as_deref()),
        Cmd::Hyper(a) => finish(commands::hyper(a), a.json.as_deref(), None),
        Cmd::Batch { jobs, out } => match fs::read_to_string(jobs) {
            Ok(text) => {
                let r = batch::run(&text);
                match write_file(out, &r.lines()) {
                    Ok(()) => {
                        println!("{}", r.summary());
                        r.status
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        Status::Input
                    }
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", jobs.display());
                Status::Input
            }
        },
        Cmd::Selftest => selftest(),
    };
    ExitCode::from(status.code())
}
