use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use syntkit::aig::{read_aiger, write_aiger, AigerDoc, Format, Justice, Lit};
use syntkit::game::Game;
use syntkit::mc::{check_justice_universal, check_safety, find_fair_trace, Verdict};
use syntkit::pipeline::spec_to_game;
use syntkit::transforms::{justice_to_safety, reverse_justice};

#[derive(Parser)]
#[command(name = "syntkit", version, about = "Reactive synthesis from extended SMV specifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a specification and its automata into a game circuit.
    Spec2aag {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Emit a standard safety game with a liveness window of K steps.
        #[arg(long, requires = "k", conflicts_with = "extended")]
        standard: bool,
        #[arg(long)]
        k: Option<u32>,
        /// Emit bad, constraint and justice sections (the default).
        #[arg(long)]
        extended: bool,
    },
    /// Replace the justice signal by a liveness window of K steps.
    Just2safe {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Solve the game and write the synthesized model.
    Synth {
        input: PathBuf,
        #[arg(short, long, required_unless_present = "print_realizability_only")]
        output: Option<PathBuf>,
        #[arg(long)]
        print_realizability_only: bool,
    },
    /// Reverse the justice of a synthesized model for standard model checkers.
    Synt2hwmcc {
        model: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a model: safety and universal justice, or with `--existential`
    /// search for a fair trace (which is a counterexample).
    Mc {
        model: PathBuf,
        #[arg(long)]
        existential: bool,
    },
}

type Failure = Box<dyn std::error::Error>;

fn read_doc(path: &Path) -> Result<AigerDoc, Failure> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(read_aiger(&text).map_err(|e| format!("{}: {e}", path.display()))?)
}

fn write_doc(path: &Path, doc: &AigerDoc) -> Result<(), Failure> {
    let text = write_aiger(doc)?;
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

fn report(what: &str, v: &Verdict) -> bool {
    match v {
        Verdict::Holds => true,
        Verdict::Violated(t) => {
            eprintln!("{what} violated; counterexample:\n{t}");
            false
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Spec2aag {
            spec,
            output,
            standard,
            k,
            ..
        } => {
            let mut doc = spec_to_game(&spec)?;
            if standard {
                if doc.justice.is_empty() {
                    doc.justice.push(Justice {
                        lits: vec![Lit::TRUE],
                        name: None,
                    });
                }
                doc = justice_to_safety(&doc, k.expect("clap requires --k"))?;
            }
            write_doc(&output, &doc)?;
            println!(
                "wrote {} ({} inputs, {} latches, {} AND gates)",
                output.display(),
                doc.inputs.len(),
                doc.latches.len(),
                doc.num_live_ands()
            );
            Ok(true)
        }
        Command::Just2safe { input, output, k } => {
            let doc = justice_to_safety(&read_doc(&input)?, k)?;
            write_doc(&output, &doc)?;
            println!("wrote {} (window {k})", output.display());
            Ok(true)
        }
        Command::Synth {
            input,
            output,
            print_realizability_only,
        } => {
            let doc = read_doc(&input)?;
            let mut game = Game::build(&doc)?;
            let sol = game.solve();
            if !sol.realizable {
                println!("UNREALIZABLE");
                return Ok(false);
            }
            if print_realizability_only {
                println!("REALIZABLE");
                return Ok(true);
            }
            let strategy = game.extract_strategy(&sol)?;
            let model = game.strategy_to_circuit(&strategy);
            let output = output.expect("clap requires -o");
            write_doc(&output, &model)?;
            println!("REALIZABLE");
            eprintln!(
                "model {}: {} AND gates",
                output.display(),
                model.num_live_ands()
            );
            Ok(true)
        }
        Command::Synt2hwmcc { model, output } => {
            let doc = reverse_justice(&read_doc(&model)?)?;
            write_doc(&output, &doc)?;
            println!("wrote {}", output.display());
            Ok(true)
        }
        Command::Mc { model, existential } => {
            let doc = read_doc(&model)?;
            let ok = if existential {
                match find_fair_trace(&doc)? {
                    None => true,
                    Some(t) => {
                        eprintln!("fair trace found:\n{t}");
                        false
                    }
                }
            } else {
                let safe = report("safety", &check_safety(&doc));
                safe && (doc.format == Format::Old
                    || report("justice", &check_justice_universal(&doc)?))
            };
            println!("{}", if ok { "HOLDS" } else { "VIOLATED" });
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::new().filter_level(log::LevelFilter::Warn).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
