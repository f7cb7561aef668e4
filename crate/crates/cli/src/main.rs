//! `hbk`: coloring invariants and crossing-change bounds for handlebody-knot
//! diagrams stored as JSON.
//!
//! Exit status is 0 on success, 2 for malformed input (unreadable files,
//! parse and validation errors, bad parameters) and 1 when a computation
//! cannot be carried out (move not applicable, enumeration over its cap).

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "hbk",
    version,
    about = "Biquandle coloring invariants of handlebody-knot diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for per-flow work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Print human-readable text instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    text: bool,

    /// Print JSON (the default).
    #[arg(long, global = true)]
    json: bool,
}

/// Alexander biquandle `F_p[t]/(f)` with parameter `s`, and the flow modulus.
#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Prime characteristic.
    #[arg(long)]
    p: u64,
    /// Modulus polynomial, ascending coefficients, e.g. `1,1,1` for 1+t+t^2.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// The unit s as a polynomial in t.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    s: String,
    /// Flow modulus; defaults to the type of the biquandle.
    #[arg(long)]
    m: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct CapArg {
    /// Largest number of flows to enumerate.
    #[arg(long, default_value_t = hbk_core::flow::DEFAULT_FLOW_CAP)]
    cap: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a diagram file and report its combinatorics.
    Validate { file: PathBuf },
    /// Print a built-in diagram: `kink`, `trivial-G`, `link-K`, `e`,
    /// `trefoil+` or `trefoil-`.
    Example { name: String },
    /// Describe the Z_m-flows of a diagram.
    Flows {
        file: PathBuf,
        #[arg(long)]
        m: u64,
        /// Also list every flow as semi-arc values.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Coloring dimension and count for one flow (zero flow by default).
    Color {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        /// Flow as `semi=value,...`, naming at least one semi-arc per arc.
        #[arg(long)]
        flow: Option<String>,
        /// Include the coloring matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Lower bound for the unknotting number.
    BoundUnknot {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Lower bound for the Gordian distance between two diagrams.
    BoundDistance {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Compare the rank computation against exhaustive search.
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        flow: Option<String>,
        /// Search budget in visited nodes.
        #[arg(long, default_value_t = hbk_core::coloring::DEFAULT_BRUTE_FORCE_CAP)]
        budget: u64,
    },
    /// Check the linear relation among the matrix rows for every flow.
    CheckRelation {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        flow: Option<String>,
        #[command(flatten)]
        cap: CapArg,
    },
    /// List, apply or randomize local moves; emits a diagram file.
    Moves {
        file: PathBuf,
        /// A site such as `R2-:x3:left`.
        #[arg(long, conflicts_with_all = ["randomize", "list"])]
        apply: Option<String>,
        /// Number of random moves.
        #[arg(long, requires = "seed", conflicts_with = "list")]
        randomize: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// List applicable sites.
        #[arg(long)]
        list: bool,
        /// Skip random moves producing more crossings than this.
        #[arg(long)]
        max_crossings: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli.command) {
        Ok(out) => {
            let text = if cli.text {
                render::text(&out)
            } else {
                render::json(&out)
            };
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
