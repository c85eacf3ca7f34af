use std::process::ExitCode;

use clap::Parser;
use lgsim_cli::{emit, run, Cli, Params};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("lgsim: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match run(cli.experiment, &Params::from(&cli)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("lgsim: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&outcome, &cli) {
        eprintln!("lgsim: cannot write output: {e}");
        return ExitCode::from(2);
    }
    for c in &outcome.checks {
        eprintln!("[{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
    }
    if outcome.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
