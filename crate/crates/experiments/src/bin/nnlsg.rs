use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nnlsg_experiments::{resolve_threads, run_scenario, run_sweep, Error, Scenario, BUILTINS};

#[derive(Parser)]
#[command(name = "nnlsg", version, about = "PT-symmetric nonlocal NLS on a four-bond star graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario (file path or built-in name)
    Run(Common),
    /// Run the weight sweep of a scenario
    Sweep(Common),
    /// List the built-in scenarios
    ListBuiltins,
}

#[derive(Args)]
struct Common {
    scenario: String,
    /// Output directory [default: out/<scenario name>]
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps; NNLSG_THREADS takes precedence
    #[arg(long)]
    threads: Option<usize>,
    /// Grid points per bond, overriding the scenario
    #[arg(long)]
    resolution: Option<usize>,
    /// Reserved; rejected
    #[arg(long)]
    seedless: bool,
}

impl Common {
    fn load(&self) -> Result<(Scenario, PathBuf), Error> {
        if self.seedless {
            return Err(Error::Invalid("--seedless is reserved: no random numbers are used anywhere".into()));
        }
        let mut s = Scenario::load(&self.scenario)?;
        if let Some(m) = self.resolution {
            s = s.with_points(m)?;
        }
        let out = self.out.clone().unwrap_or_else(|| PathBuf::from("out").join(&s.name));
        Ok((s, out))
    }
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::ListBuiltins => {
            for (name, text) in BUILTINS {
                let about = text.lines().next().unwrap_or("").trim_start_matches('#').trim();
                println!("{name:6} {about}");
            }
        }
        Command::Run(c) => {
            let (s, out) = c.load()?;
            let o = run_scenario(&s, &out)?;
            print!("{}", o.summary.render());
            println!("written to {}", out.display());
        }
        Command::Sweep(c) => {
            let threads = resolve_threads(c.threads)?;
            let (s, out) = c.load()?;
            let sweep = run_sweep(&s, &out, threads)?;
            let failed = sweep.cells.iter().filter(|c| c.status != "ok").count();
            println!("{} cells ({failed} failed) written to {}", sweep.cells.len(), out.join("sweep.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
