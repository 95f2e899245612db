use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Parser, Subcommand};

use freerep::Budget;
use freerep_cli::commands::{self, CliError, Report, Settings};

#[derive(Parser)]
#[command(name = "freerep", version, about = "Freely representable finite groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the construction, quaternion and norm-relation caps.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Seed for sampled associativity checks on large tables.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Give up after this many seconds.
    #[arg(long, global = true)]
    deadline: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sylow profile, cycloidal type, mu(G) and the free-representability verdict.
    Analyze { spec: String },
    /// Express 1 through subgroup norms, or report that no relation exists.
    NormRelation { spec: String },
    /// Build and certify a free representation.
    Represent { spec: String },
    /// Cyclic-subgroup census and structure checks for SL2(F_p).
    Census {
        p: u64,
        /// Permit primes above 13 (SL2(17) takes minutes).
        #[arg(long)]
        allow_large: bool,
    },
    /// The groups of order 210 with cyclic Sylow subgroups.
    Survey210,
}

fn run(cli: &Cli, settings: &Settings) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze { spec } => commands::analyze(spec, settings),
        Command::NormRelation { spec } => commands::norm_relation(spec, settings),
        Command::Represent { spec } => commands::represent(spec, settings),
        Command::Census { p, allow_large } => commands::census(*p, *allow_large, settings),
        Command::Survey210 => commands::survey(settings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.cap {
        freerep::constructors::set_construction_cap(cap);
    }
    if let Some(seed) = cli.seed {
        freerep::group::set_sampling_seed(seed);
    }
    let deadline = cli.deadline.map(Duration::from_secs_f64);
    let budget = deadline.map_or_else(Budget::unlimited, Budget::with_timeout);
    let settings = Settings { cap: cli.cap, budget };

    let (tx, rx) = mpsc::channel();
    let json = cli.json;
    std::thread::spawn(move || {
        let out = run(&cli, &settings);
        let _ = tx.send(out);
    });
    let outcome = match deadline {
        // a little slack so cooperative cancellation can report first
        Some(d) => rx.recv_timeout(d + Duration::from_millis(250)).unwrap_or_else(|_| {
            Err(CliError {
                kind: "deadline_exceeded".into(),
                detail: format!("no result within {:.3}s", d.as_secs_f64()),
                offending_input: None,
            })
        }),
        None => rx.recv().expect("worker thread finished"),
    };

    match outcome {
        Ok(report) => {
            let body = if json {
                serde_json::to_string_pretty(&report.json).expect("report serializes") + "\n"
            } else {
                report.text
            };
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(body.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                eprintln!("{}", serde_json::to_string(&e).expect("error serializes"));
            } else {
                match &e.offending_input {
                    Some(input) => eprintln!("error[{}]: {} (input: {input})", e.kind, e.detail),
                    None => eprintln!("error[{}]: {}", e.kind, e.detail),
                }
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
