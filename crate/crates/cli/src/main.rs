//! `recurse-ring`: command-line front end for the workbench.
//!
//! Exit status is 0 on success, 2 when a checked claim fails, and 1 on usage
//! or resource errors.

mod cache;
mod cli;
mod commands;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::cli::Cli;
use crate::output::{json_bytes, write_target, Caps, CommandReport, Provenance};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            let resource = e.chain().any(|c| {
                c.downcast_ref::<recurse_ring::Error>().is_some_and(recurse_ring::Error::is_resource_limit)
                    || matches!(
                        c.downcast_ref::<recurse_ring::RecursionError>(),
                        Some(recurse_ring::RecursionError::LevelCapExceeded { .. })
                    )
                    || matches!(
                        c.downcast_ref::<recurse_ring::GrowthError>(),
                        Some(recurse_ring::GrowthError::MemoryBudgetExceeded { .. })
                    )
                    || matches!(
                        c.downcast_ref::<recurse_ring::MonomialError>(),
                        Some(recurse_ring::MonomialError::SearchBudgetExceeded(_))
                    )
            });
            let kind = if resource { "resource limit" } else { "error" };
            eprintln!("{kind}: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let Cli { opts, command } = cli;
    if let Some(threads) = opts.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global()?;
    }
    let started = Instant::now();
    let sys = if commands::uses_system(&command) { Some(commands::load_system(&opts.system)?) } else { None };
    let outcome = commands::run(&command, &opts, sys.as_ref())?;
    let wall_time = opts.timing.then(|| started.elapsed().as_secs_f64());

    let report = CommandReport {
        command: commands::command_name(&command).to_string(),
        parameters: commands::parameters(&command),
        results: outcome.results,
        provenance: Provenance {
            system: sys.as_ref().map(|s| s.name().to_string()),
            caps: Caps { levels: opts.levels, states: opts.cap_states, memos: opts.cap_memos, bytes: opts.cap_bytes },
        },
        wall_time,
    };
    let json_to_stdout = opts.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    let csv_to_stdout = opts.csv.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !json_to_stdout && !csv_to_stdout {
        println!("{}", outcome.text);
        if let Some(t) = wall_time {
            println!("wall time {t:.3}s");
        }
    }
    if let Some(path) = &opts.json {
        write_target(path, &json_bytes(&report))?;
    }
    if let Some(path) = &opts.csv {
        let bytes = outcome.csv.ok_or_else(|| anyhow::anyhow!("{} has no tabular output for --csv", report.command))?;
        write_target(path, &bytes)?;
    }
    Ok(outcome.verdict)
}
