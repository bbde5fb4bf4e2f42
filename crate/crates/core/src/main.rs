use std::collections::hash_map::RandomState;
use std::hash::BuildHasher;
use std::process::ExitCode;

use clap::Parser;
use wallis_gamma::cli::{self, Cli, Command};

fn fresh_seed() -> u64 {
    RandomState::new().hash_one(std::time::SystemTime::now())
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(args) => args,
        Err(e) => e.exit(),
    };
    let format = args.format;
    let output = match &args.command {
        Command::Gamma(a) => cli::cmd_gamma(a, format),
        Command::Rational(a) => {
            let budget = match cli::digit_budget_from_env() {
                Ok(b) => b,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            cli::cmd_rational(a, budget, format)
        }
        Command::Wallis(a) => cli::cmd_wallis(a, format),
        Command::Duplication(a) => cli::cmd_duplication(a, format),
        Command::Mc(a) => {
            let seed = args.seed.unwrap_or_else(|| {
                let seed = fresh_seed();
                eprintln!("seed: {seed}");
                seed
            });
            cli::cmd_mc(a, seed, format)
        }
    };
    let output = match output {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &args.out {
        Some(path) => std::fs::write(path, output),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(output.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
