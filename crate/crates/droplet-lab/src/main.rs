use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use droplet_core::constants;
use droplet_core::quantities::CONSTANTS_VERSION;
use droplet_lab::{emit, load_config, run, Format, LabError, Scenario};

#[derive(Parser)]
#[command(name = "droplet-lab", version, about = "Run electron-droplet model scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its result table.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check a scenario file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Print the physical constants in use.
    Constants,
}

fn execute(command: Command) -> Result<(), LabError> {
    match command {
        Command::Run { config, out, format } => {
            let cfg = load_config(&config)?;
            let table = run(&cfg)?;
            let format = format.unwrap_or(cfg.format);
            let out = out.or_else(|| cfg.out.clone());
            emit(&table, format, out.as_deref())
        }
        Command::Validate { config } => {
            let cfg = load_config(&config)?;
            Scenario::build(&cfg)?;
            println!("ok: mode = {}", cfg.mode.as_str());
            for (key, value) in &cfg.values {
                let note = if cfg.defaults_applied.contains(key) { "  (default)" } else { "" };
                println!("{key} = {value}{note}");
            }
            Ok(())
        }
        Command::Constants => {
            println!("# {CONSTANTS_VERSION}");
            println!("symbol,name,value,unit");
            for entry in constants().table() {
                println!("{},{},{:?},{}", entry.symbol, entry.name, entry.value, entry.unit);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
