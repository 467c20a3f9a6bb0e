//! `blackbox`: command-line front end for the circuit engine.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use blackbox_core::blackbox::{blackbox, blackbox_fast, oracle_behavior, render_table, Behavior};
use blackbox_core::circuit::{compose_circuits, dagger_circuit, tensor_circuits, Circuit};
use blackbox_core::dirichlet::{extended_power_functional, power_functional};
use blackbox_core::field::{default_sample_points, parse_rat};
use blackbox_core::netlist::{parse_netlist, parse_sample_points, print_netlist, ParseOptions};
use clap::{Parser, Subcommand};
use serde_json::json;

const SAMPLE_ENV: &str = "BLACKBOX_SAMPLE_POINTS";

#[derive(Parser)]
#[command(
    name = "blackbox",
    version,
    about = "Exact black-box semantics of passive linear circuits"
)]
struct Cli {
    /// Accept raw `Z` impedance lines (checked positive at sample points).
    #[arg(long, global = true)]
    allow_raw_z: bool,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the behavior (Lagrangian relation) of a circuit.
    Blackbox {
        file: PathBuf,
        /// Print the impedance Z(s) of a one-input, one-output circuit.
        #[arg(long)]
        as_impedance: bool,
    },
    /// Netlist of `g ∘ f`: outputs of `f` glued to inputs of `g`.
    Compose { f: PathBuf, g: PathBuf },
    /// Netlist of the disjoint union of two circuits.
    Tensor { f: PathBuf, g: PathBuf },
    /// Netlist with inputs and outputs exchanged.
    Dagger { f: PathBuf },
    /// Print the extended power functional P and its minimization Q onto the terminals.
    Eliminate { file: PathBuf },
    /// Exit 0 if both circuits have exactly the same behavior, 1 otherwise.
    Equiv { f: PathBuf, g: PathBuf },
    /// Print the behavior's generator matrix evaluated at s = σ.
    Eval {
        file: PathBuf,
        #[arg(long = "at", value_name = "σ", allow_hyphen_values = true)]
        at: String,
    },
    /// Check invariants (Lagrangian, dimension, triple agreement) on circuits.
    Check {
        files: Vec<PathBuf>,
        /// Check every `.net` file in a directory.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

struct Ctx {
    opts: ParseOptions,
    json: bool,
}

fn read_source(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

impl Ctx {
    fn load(&self, path: &Path) -> Result<Circuit, String> {
        let text = read_source(path)?;
        parse_netlist(&text, &self.opts).map_err(|e| format!("{}: {e}", path.display()))
    }

    fn print_behavior(&self, b: &Behavior) -> Result<(), String> {
        if self.json {
            let text = serde_json::to_string_pretty(&b.to_json()).map_err(|e| e.to_string())?;
            println!("{text}");
        } else {
            println!("{b}");
        }
        Ok(())
    }
}

fn check_one(g: &Circuit) -> Vec<String> {
    let mut problems = Vec::new();
    let b = blackbox(g);
    if !b.relation().is_lagrangian() {
        problems.push("behavior is not Lagrangian".to_string());
    }
    let expected = g.inputs().len() + g.outputs().len();
    if b.relation().dim() != expected {
        problems.push(format!("dimension {} != {expected}", b.relation().dim()));
    }
    if blackbox_fast(g) != b {
        problems.push("fast path disagrees".to_string());
    }
    if oracle_behavior(g) != b {
        problems.push("Kirchhoff oracle disagrees".to_string());
    }
    problems
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "net"))
        .collect();
    files.sort();
    Ok(files)
}

fn run(cli: Cli) -> Result<u8, String> {
    let sample_points = match std::env::var(SAMPLE_ENV) {
        Ok(text) => parse_sample_points(&text).map_err(|e| format!("{SAMPLE_ENV}: {e}"))?,
        Err(_) => default_sample_points(),
    };
    let ctx = Ctx {
        opts: ParseOptions {
            allow_raw_z: cli.allow_raw_z,
            sample_points,
        },
        json: cli.json,
    };
    match cli.command {
        Command::Blackbox { file, as_impedance } => {
            let b = blackbox(&ctx.load(&file)?);
            if as_impedance {
                let z = b.as_impedance().map_err(|e| e.to_string())?;
                if ctx.json {
                    println!("{}", json!({ "impedance": z.to_string() }));
                } else {
                    println!("{z}");
                }
            } else {
                ctx.print_behavior(&b)?;
            }
        }
        Command::Compose { f, g } => {
            let c = compose_circuits(&ctx.load(&f)?, &ctx.load(&g)?).map_err(|e| e.to_string())?;
            print!("{}", print_netlist(&c));
        }
        Command::Tensor { f, g } => {
            print!(
                "{}",
                print_netlist(&tensor_circuits(&ctx.load(&f)?, &ctx.load(&g)?))
            );
        }
        Command::Dagger { f } => {
            print!("{}", print_netlist(&dagger_circuit(&ctx.load(&f)?)));
        }
        Command::Eliminate { file } => {
            let g = ctx.load(&file)?;
            let p = extended_power_functional(&g);
            let q = power_functional(&p, &g.boundary()).map_err(|e| e.to_string())?;
            if ctx.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(
                        &json!({ "P": p.to_entries(), "Q": q.to_entries() })
                    )
                    .map_err(|e| e.to_string())?
                );
            } else {
                println!("{}", p.pretty("P"));
                println!("{}", q.pretty("Q"));
            }
        }
        Command::Equiv { f, g } => {
            let same = blackbox(&ctx.load(&f)?) == blackbox(&ctx.load(&g)?);
            if ctx.json {
                println!("{}", json!({ "equivalent": same }));
            } else {
                println!("{}", if same { "equivalent" } else { "not equivalent" });
            }
            return Ok(if same { 0 } else { 1 });
        }
        Command::Eval { file, at } => {
            let sigma = parse_rat(&at).map_err(|e| format!("--at: {e}"))?;
            let b = blackbox(&ctx.load(&file)?);
            let values = b.evaluate_at(&sigma).map_err(|e| e.to_string())?;
            let cells: Vec<Vec<String>> = values
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect())
                .collect();
            if ctx.json {
                println!(
                    "{}",
                    json!({ "at": sigma.to_string(), "generators": cells })
                );
            } else {
                let mut table = vec![b.headers()];
                table.extend(cells);
                println!("{}", render_table(&table));
            }
        }
        Command::Check { files, corpus } => {
            let mut all = files;
            if let Some(dir) = corpus {
                all.extend(corpus_files(&dir)?);
            }
            if all.is_empty() {
                return Err("check: no circuits given".to_string());
            }
            let mut failed = false;
            for path in &all {
                let problems = check_one(&ctx.load(path)?);
                if problems.is_empty() {
                    println!("ok    {}", path.display());
                } else {
                    failed = true;
                    println!("FAIL  {}: {}", path.display(), problems.join("; "));
                }
            }
            return Ok(u8::from(failed));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
