mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{Failure, Outcome};

pub const SCHEMA: &str = "upsilon/1";

#[derive(Parser, Debug)]
#[command(
    name = "upsilon",
    version,
    about = "Bigraded graph cohomology, deletion-contraction and motives"
)]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (defaults to all cores)
    #[arg(long, global = true, env = "UPSILON_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Ring {
    Rationals,
    Integers,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Method {
    Closed,
    Delcon,
    Tutte,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bigraded ranks and filtrations of the cohomology
    Cohomology {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "rationals")]
        ring: Ring,
    },
    /// Class of the graph in the Grothendieck ring
    Motive {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// Deletion-contraction long exact sequence for one edge
    Delcon {
        path: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Weight, perverse and deletion filtration report
    Pw {
        path: PathBuf,
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long, default_value_t = upsilon_core::pointcount::DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Brute-force point count over a prime field
    Count {
        path: PathBuf,
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',')]
        eta: Option<Vec<u64>>,
        #[arg(long, default_value_t = upsilon_core::pointcount::DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Run every invariant check on one graph
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = upsilon_core::pointcount::DEFAULT_CEILING)]
        ceiling: u128,
    },
    /// Emit a random connected graph document
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn emit_error(json_mode: bool, kind: &str, message: &str) {
    if json_mode {
        let v =
            json!({ "schema": SCHEMA, "ok": false, "error": { "kind": kind, "message": message } });
        println!(
            "{}",
            serde_json::to_string_pretty(&v).expect("serializable")
        );
    } else {
        eprintln!("error: {message}");
    }
}

fn main() -> ExitCode {
    let json_mode = std::env::args().any(|a| a == "--json");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            if json_mode {
                emit_error(true, "usage", e.to_string().trim());
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };

    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            emit_error(
                cli.json,
                "usage",
                &format!("cannot configure {n} threads: {e}"),
            );
            return ExitCode::from(2);
        }
    }

    let result = match cli.command {
        Command::Cohomology { path, ring } => commands::cohomology(&path, ring),
        Command::Motive { path, method } => commands::motive(&path, method),
        Command::Delcon { path, edge } => commands::delcon(&path, &edge),
        Command::Pw { path, q, ceiling } => commands::pw(&path, &q, ceiling),
        Command::Count {
            path,
            q,
            eta,
            ceiling,
        } => commands::count(&path, q, eta, ceiling),
        Command::Check { path, ceiling } => commands::check(&path, ceiling),
        Command::Random {
            vertices,
            edges,
            seed,
        } => commands::random(vertices, edges, seed),
    };

    match result {
        Ok(Outcome {
            command,
            ok,
            payload,
            human,
        }) => {
            if cli.json {
                let mut doc = json!({ "schema": SCHEMA, "command": command, "ok": ok });
                if let (Value::Object(doc), Value::Object(extra)) = (&mut doc, payload) {
                    doc.extend(extra);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                );
            } else {
                print!("{human}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(e)) => {
            emit_error(cli.json, "usage", &format!("{e:#}"));
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            emit_error(cli.json, "internal", &format!("{e:#}"));
            ExitCode::from(1)
        }
    }
}
