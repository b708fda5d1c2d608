use clap::Parser;
use std::process::ExitCode;

use phonon_sobol::Execution;

mod args;
mod commands;
mod failure;
mod output;

use args::{Cli, Command};
use commands::Context;
use failure::{CmdResult, Failure};
use output::Output;

fn execution(threads: Option<usize>) -> CmdResult<Execution> {
    match threads {
        None => Ok(Execution::default()),
        Some(0) => Err(Failure::config("--threads must be at least 1")),
        Some(1) => Ok(Execution::Sequential),
        Some(n) => {
            #[cfg(feature = "parallel")]
            {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Failure::config(format!("cannot start {n} threads: {e}")))?;
                Ok(Execution::Parallel)
            }
            #[cfg(not(feature = "parallel"))]
            {
                log::warn!("built without the parallel feature; ignoring --threads {n}");
                Ok(Execution::Sequential)
            }
        }
    }
}

fn run(cli: Cli) -> CmdResult<Vec<std::path::PathBuf>> {
    let mut ctx = Context {
        seed: cli.global.seed,
        exec: execution(cli.global.threads)?,
        out: Output::new(cli.global.out, cli.global.format)?,
    };
    let result = match &cli.command {
        Command::Dispersion(a) => commands::dispersion::run(a, &mut ctx),
        Command::Bandgap(a) => commands::bandgap::run(a, &mut ctx),
        Command::Sobol(a) => commands::sobol::run(a, &mut ctx),
        Command::Design(a) => commands::design::run(a, &mut ctx),
    };
    for path in ctx.out.written() {
        println!("wrote {}", path.display());
    }
    result.map(|_| ctx.out.written().to_vec())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
