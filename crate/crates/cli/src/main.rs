use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cumdev_cli::config::Format;
use cumdev_cli::{registry, run_config, CliError, Overrides};
use cumdev_verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "cumdev", version = env!("CUMDEV_BUILD_ID"), about = "Cumulant bounds and moderate-deviation experiments")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Overrides the config's root seed.
        #[arg(long, value_name = "U64")]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// List experiment kinds with their parameters.
    ListExperiments {
        #[arg(long)]
        json: bool,
    },
    /// Run an acceptance suite: fast or full.
    Verify { suite: String },
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("cumdev: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            return fail(CliError::Validation("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("global pool is built once");
    }
    match cli.command {
        Command::Run { config, seed, format, out } => match run_config(&config, &Overrides { seed, format, out }) {
            Ok((record, target)) => {
                println!(
                    "{}: {} rows, seed {}, {:.2} s -> {}",
                    record.payload.kind,
                    record.payload.rows.len(),
                    record.config.seed,
                    record.timing.elapsed_seconds,
                    target.display()
                );
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
        Command::ListExperiments { json } => {
            let entries = registry::entries();
            if json {
                println!("{}", serde_json::to_string_pretty(&entries).expect("registry serializes"));
            } else {
                print!("{}", registry::render_text(&entries));
            }
            ExitCode::SUCCESS
        }
        Command::Verify { suite } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(m) => return fail(CliError::Validation(m)),
            };
            let results = run_suite(suite, |r| {
                println!("{r}");
                if suite == Suite::Full {
                    for row in &r.table {
                        println!("      {row}");
                    }
                }
            });
            let failed = results.iter().filter(|r| !r.ok()).count();
            println!("{} of {} criteria passed", results.len() - failed, results.len());
            if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
