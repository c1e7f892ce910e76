mod args;
mod commands;
mod error;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use fqlab_core::Execution;

use args::Cli;
use commands::Context;
use error::CliError;
use manifest::RunManifest;

fn budget_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var("FQLAB_BUDGET") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(Some(b)),
            _ => Err(CliError::Usage(format!("FQLAB_BUDGET must be a positive integer, got {v:?}"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("FQLAB_BUDGET: {e}"))),
    }
}

fn subcommand_name(argv: &[String]) -> String {
    argv.iter()
        .skip(1)
        .find(|a| {
            ["sieve", "density", "fq", "oq", "classify", "smooth", "census", "graphs", "verify"]
                .contains(&a.as_str())
        })
        .cloned()
        .unwrap_or_default()
}

fn run(cli: &Cli, argv: &[String]) -> Result<bool, CliError> {
    let started = Instant::now();
    let budget = budget_from_env()?;
    let exec = if cli.threads > 1 { Execution::Parallel } else { Execution::Sequential };
    let manifest = RunManifest {
        subcommand: subcommand_name(argv),
        params: argv[1..].to_vec(),
        threads: cli.threads,
        budget,
        ..RunManifest::default()
    };
    let mut ctx = Context { exec, budget, fixtures: cli.fixtures.clone(), manifest };
    let result = if cli.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads.into())
            .build()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
        pool.install(|| commands::run(&cli.command, &mut ctx))
    } else {
        commands::run(&cli.command, &mut ctx)
    };
    if let Some(path) = &cli.manifest {
        ctx.manifest.wall_time = started.elapsed();
        ctx.manifest.complete = matches!(result, Ok(true));
        ctx.manifest.write(path)?;
    }
    result
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&argv);
    match run(&cli, &argv) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("fqlab: search budget exhausted; output is partial");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("fqlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
