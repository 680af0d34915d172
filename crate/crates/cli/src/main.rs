use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyforge::{
    cmd_cd, cmd_covers, cmd_polytope, cmd_theorem_check, cmd_theorem_check_corpus, cmd_validate, CdAction, CliError,
    Limits, Outcome, PolytopeRequest,
};
use polyforge_core::fpgroup::DEFAULT_MAX_COSETS;
use polyforge_core::permgroup::DEFAULT_ELEMENT_CAP;

#[derive(Parser)]
#[command(name = "polyforge", version, about = "String C-groups of 2-power order and their polytopes")]
struct Cli {
    /// Print machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    max_cosets: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a presentation defines a string C-group
    Validate { file: PathBuf },
    /// Verify the subgroup structure of a group, or of the whole corpus
    TheoremCheck {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
    },
    /// Whether ρ_i ↦ σ_i extends to an epimorphism from P onto Q
    Covers {
        p: PathBuf,
        #[arg(required_unless_present = "against_cd", conflicts_with = "against_cd")]
        q: Option<PathBuf>,
        /// Use G(C_d) of the rank of P as the target
        #[arg(long)]
        against_cd: bool,
    },
    /// Build the polytope and report on it
    Polytope {
        file: PathBuf,
        #[command(flatten)]
        request: PolytopeArgs,
    },
    /// The tight polytope C_d
    Cd {
        #[arg(long)]
        rank: usize,
        #[arg(long, conflicts_with = "verify", required_unless_present = "verify")]
        emit_presentation: bool,
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args)]
struct PolytopeArgs {
    /// Proper faces per rank (the default)
    #[arg(long)]
    counts: bool,
    #[arg(long)]
    diamond: bool,
    #[arg(long)]
    flag_connected: bool,
    /// Orders of the rank-3 sections
    #[arg(long)]
    sections: bool,
    /// Whether every K-face meets every L-face
    #[arg(long, num_args = 2, value_names = ["K", "L"])]
    flat: Option<Vec<usize>>,
    /// The flag graph in DOT
    #[arg(long)]
    dot: bool,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let limits = Limits { max_cosets: cli.max_cosets, element_cap: cli.element_cap };
    let json = cli.json;
    match cli.command {
        Command::Validate { file } => cmd_validate(&file, limits, json),
        Command::TheoremCheck { file: Some(file), .. } => cmd_theorem_check(&file, limits, json),
        Command::TheoremCheck { file: None, .. } => cmd_theorem_check_corpus(limits, json),
        Command::Covers { p, q, .. } => cmd_covers(&p, q.as_deref(), limits, json),
        Command::Polytope { file, request: r } => {
            let req = PolytopeRequest {
                counts: r.counts,
                diamond: r.diamond,
                flag_connected: r.flag_connected,
                sections: r.sections,
                flat: r.flat.map(|v| (v[0], v[1])),
                dot: r.dot,
            };
            cmd_polytope(&file, &req, limits, json)
        }
        Command::Cd { rank, verify, .. } => {
            cmd_cd(rank, if verify { CdAction::Verify } else { CdAction::EmitPresentation }, limits, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
