use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eqlef::fixtures;
use eqlef::lefschetz::SubgroupPolicy;
use eqlef::report::{run, Command, Status};
use eqlef::scene::parse_scene;

/// Directory searched for `--fixture` names before the bundled set.
const FIXTURE_DIR_VAR: &str = "EQLEF_FIXTURE_DIR";

#[derive(Parser)]
#[command(name = "eqlef", version, about = "Exact equivariant Lefschetz classes of simplicial G-maps")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Equivariant Euler characteristic of the complex
    Euler(Input),
    /// Lefschetz class from the cellular map
    LefComb(Input),
    /// Lefschetz class from the smooth fixed-point data
    LefSmooth(Input),
    /// Compare both classes modulo point-evaluation relations
    Compare(Input),
    /// Non-equivariant homology trace against the chain supertrace
    Oracle(Input),
    /// Sign character of a commuting automorphism
    Sign(Input),
    /// List bundled fixtures
    Fixtures,
}

#[derive(Args)]
struct Input {
    /// Scene file
    scene: Option<PathBuf>,
    /// Bundled fixture name instead of a file
    #[arg(long, conflicts_with = "scene")]
    fixture: Option<String>,
    /// Subgroups used for relations: all or cyclic+stab
    #[arg(long)]
    policy: Option<SubgroupPolicy>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

fn load(input: &Input) -> Result<String, String> {
    match (&input.scene, &input.fixture) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        (None, Some(name)) => {
            if let Ok(dir) = std::env::var(FIXTURE_DIR_VAR) {
                let path = Path::new(&dir).join(format!("{name}.scene"));
                if path.exists() {
                    return std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()));
                }
            }
            fixtures::fixture(name)
                .map(str::to_string)
                .ok_or_else(|| format!("no fixture {name}; known: {}", fixtures::fixture_names().join(", ")))
        }
        (None, None) => Err("give a scene file or --fixture=<name>".to_string()),
    }
}

fn execute(cmd: Command, input: &Input) -> ExitCode {
    let text = match load(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let scene = match parse_scene(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&scene, cmd, input.policy) {
        Ok(report) => {
            if input.json {
                print!("{}", report.json_text());
            } else {
                print!("{}", report.text());
            }
            match report.status {
                Status::Success => ExitCode::SUCCESS,
                Status::NotProven => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let (cmd, input) = match &cli.command {
        Cmd::Euler(i) => (Command::Euler, i),
        Cmd::LefComb(i) => (Command::LefComb, i),
        Cmd::LefSmooth(i) => (Command::LefSmooth, i),
        Cmd::Compare(i) => (Command::Compare, i),
        Cmd::Oracle(i) => (Command::Oracle, i),
        Cmd::Sign(i) => (Command::Sign, i),
        Cmd::Fixtures => {
            for name in fixtures::fixture_names() {
                println!("{name}");
            }
            return ExitCode::SUCCESS;
        }
    };
    execute(cmd, input)
}
