//! `flopcheck`: command-line frontend to the verification suite.
//!
//! Exit codes: 0 when every check passes or the command is a query, 1 when a
//! check fails, 2 on usage or input errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "flopcheck", version, about = "Exact cohomology checks for homogeneous bundles and the Gr(3,5)/Gr(2,5) flop")]
struct Cli {
    /// Also write the machine-readable report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Littlewood-Richardson products.
    #[command(subcommand)]
    Lr(LrCommand),
    /// Weyl dimensions of GL(m) irreducibles.
    #[command(subcommand)]
    Weyl(WeylCommand),
    /// Borel-Weil-Bott cohomology of one bundle.
    #[command(subcommand)]
    Bwb(BwbCommand),
    /// Graded Ext table between two bundle sets pulled back to a total space.
    ExtTotal(ExtTotalArgs),
    /// Pretilting check on a total space.
    #[command(subcommand)]
    Tilting(TiltingCommand),
    /// Built-in check suites.
    #[command(subcommand)]
    Suite(SuiteCommand),
    /// Graded Euler characteristics on both sides of the flop.
    #[command(subcommand)]
    Euler(EulerCommand),
    /// Graded-restriction windows.
    #[command(subcommand)]
    Windows(WindowsCommand),
    /// Kempf-Ness adapted one-parameter subgroups.
    #[command(subcommand)]
    Kn(KnCommand),
    /// Exceptional collections and resolutions.
    #[command(subcommand)]
    Collections(CollectionsCommand),
    /// Every built-in check.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum LrCommand {
    /// Decompose s_λ · s_μ.
    Mult {
        /// Partition, comma separated.
        lam: String,
        mu: String,
    },
}

#[derive(Subcommand, Debug)]
enum WeylCommand {
    Dim {
        /// Dominant weight, comma separated.
        #[arg(allow_hyphen_values = true)]
        weight: String,
        /// Rank of the group; defaults to the length of the weight.
        #[arg(long)]
        m: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum BwbCommand {
    /// e.g. `bwb cohom gr(2,5) u=[0,0] q=[3,3,3]`.
    Cohom {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        literal: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct SetSource {
    /// Bundle-set file.
    #[arg(long, value_name = "PATH")]
    sets: PathBuf,
}

#[derive(Args, Debug)]
struct ExtTotalArgs {
    #[arg(long, default_value = "xplus")]
    model: String,
    #[command(flatten)]
    source: SetSource,
    /// Name of the left set.
    #[arg(long)]
    left: String,
    /// Name of the right set.
    #[arg(long)]
    right: String,
    /// `auto` or a largest level.
    #[arg(long, default_value = "auto")]
    cutoff: String,
}

#[derive(Subcommand, Debug)]
enum TiltingCommand {
    Check {
        #[arg(long, default_value = "xplus")]
        model: String,
        /// Built-in window: spade, heart, club, diamond, or kapranov.
        #[arg(long, conflicts_with_all = ["sets", "set"])]
        window: Option<String>,
        /// Bundle-set file, used with --set.
        #[arg(long, requires = "set")]
        sets: Option<PathBuf>,
        #[arg(long, requires = "sets")]
        set: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCommand {
    MinusVanishing,
}

#[derive(Subcommand, Debug)]
enum EulerCommand {
    Compare {
        #[arg(long)]
        star: String,
        #[arg(long, default_value_t = 8)]
        max_l: u32,
    },
}

#[derive(Subcommand, Debug)]
enum WindowsCommand {
    Enumerate {
        #[arg(long)]
        side: String,
        /// `w0,w1,w2`; write `--w=-7,-4,-1` for negative entries.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    Member {
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        #[arg(long)]
        side: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
}

#[derive(Subcommand, Debug)]
enum KnCommand {
    Solve {
        /// `plus`, `minus` or an explicit triple.
        #[arg(long, allow_hyphen_values = true)]
        character: String,
        /// Coordinates allowed to be nonzero, e.g. `q1,q2,q3`.
        #[arg(long)]
        support: String,
    },
    Strata {
        #[arg(long)]
        side: String,
    },
}

#[derive(Subcommand, Debug)]
enum CollectionsCommand {
    /// Exceptional, semiorthogonal and strong checks.
    Check {
        /// Built-in collection; all of them plus the negative control when omitted.
        #[arg(long, conflicts_with = "sets")]
        name: Option<String>,
        #[arg(long, requires = "set")]
        sets: Option<PathBuf>,
        #[arg(long, requires = "sets")]
        set: Option<String>,
    },
    /// K-theory checks of a built-in resolution.
    Resolve {
        /// Built-in sequence; all of them when omitted.
        #[arg(long)]
        name: Option<String>,
        /// Inclusive range `a..b` or a list `a,b,c`.
        #[arg(long, default_value = "-3..3", allow_hyphen_values = true)]
        twists: String,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("FLOPCHECK_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("FLOPCHECK_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("FLOPCHECK_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let outcome = match commands::run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", outcome.text);
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, outcome.report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.query || outcome.report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
