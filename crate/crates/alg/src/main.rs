use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use polyadic_alg::commands::{self, Context, EnumerateKind};
use polyadic_alg::pipeline;

#[derive(Parser)]
#[command(name = "alg", version, about = "Finite n-ary semigroups: associativity, reducibility, adjunction, W-monoids")]
struct Cli {
    /// Worker threads for reduction and adjunction searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the full associativity system.
    CheckAssoc { file: PathBuf },
    /// List the neutral elements.
    Neutrals { file: PathBuf },
    /// n-ary extension of a binary operation.
    Extend {
        file: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Binary reduction through a neutral element.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        neutral: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for binary reductions.
    Reductions {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        /// Seconds; overrides ALG_TIMEOUT_SECS.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Search for monoids adjoining a neutral element.
    Adjoin {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Decide whether the operation is an IN-semigroup.
    InCheck {
        file: PathBuf,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// W-monoid recognition and constructions.
    Wmonoid {
        #[command(subcommand)]
        command: WCommand,
    },
    /// Odd-arity IN-semigroup from a W-monoid.
    InBuild {
        file: PathBuf,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Enumerate small structures up to isomorphism.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        arity: Option<usize>,
        /// Catalog file (JSON lines).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Least order of an n-ary IN-semigroup.
    MinimalIn {
        #[arg(long)]
        arity: usize,
    },
    /// Re-derive every claim of the theory at desk scale.
    VerifyPaper {
        /// Oracles up to order 2, no order-6 enumeration.
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Subcommand)]
enum WCommand {
    Check { file: PathBuf },
    FromInvolution {
        file: PathBuf,
        #[arg(long)]
        involution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    FromBitranslation {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Decompose {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Semigroup,
    Monoid,
    Wmonoid,
    Survey,
}

fn context(jobs: usize, timeout: Option<f64>) -> Result<Context, String> {
    let timeout = match timeout {
        Some(s) if s.is_finite() && s >= 0.0 => Duration::from_secs_f64(s),
        Some(s) => return Err(format!("invalid timeout {}", s)),
        None => commands::default_timeout(),
    };
    Ok(Context { timeout, jobs: jobs.max(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs;
    let ctx = |t: Option<f64>| context(jobs, t);
    let report = match cli.command {
        Command::CheckAssoc { file } => commands::check_assoc(&file),
        Command::Neutrals { file } => commands::neutrals(&file),
        Command::Extend { file, arity, out } => commands::extend(&file, arity, out.as_deref()),
        Command::Reduce { file, neutral, out } => commands::reduce(&file, neutral, out.as_deref()),
        Command::Reductions { file, limit, timeout } => match ctx(timeout) {
            Ok(c) => commands::reductions(&file, limit, &c),
            Err(e) => polyadic_alg::report::CommandReport::error("reductions", e),
        },
        Command::Adjoin { file, limit, timeout } => match ctx(timeout) {
            Ok(c) => commands::adjoin(&file, limit, &c),
            Err(e) => polyadic_alg::report::CommandReport::error("adjoin", e),
        },
        Command::InCheck { file, timeout } => match ctx(timeout) {
            Ok(c) => commands::in_check(&file, &c),
            Err(e) => polyadic_alg::report::CommandReport::error("in-check", e),
        },
        Command::Wmonoid { command } => match command {
            WCommand::Check { file } => commands::wmonoid_check(&file),
            WCommand::FromInvolution { file, involution, out } => {
                commands::wmonoid_from_involution(&file, involution, out.as_deref())
            }
            WCommand::FromBitranslation { file, out } => commands::wmonoid_from_bitranslation(&file, out.as_deref()),
            WCommand::Decompose { file, out } => commands::wmonoid_decompose(&file, out.as_deref()),
        },
        Command::InBuild { file, arity, out, timeout } => match ctx(timeout) {
            Ok(c) => commands::in_build(&file, arity, out.as_deref(), &c),
            Err(e) => polyadic_alg::report::CommandReport::error("in-build", e),
        },
        Command::Enumerate { kind, order, arity, out } => {
            let kind = match kind {
                Kind::Semigroup => EnumerateKind::Semigroup,
                Kind::Monoid => EnumerateKind::Monoid,
                Kind::Wmonoid => EnumerateKind::WMonoid,
                Kind::Survey => EnumerateKind::Survey,
            };
            commands::enumerate(kind, order, arity, out.as_deref(), &ctx(None).expect("default timeout"))
        }
        Command::MinimalIn { arity } => commands::minimal_in(arity, &ctx(None).expect("default timeout")),
        Command::VerifyPaper { fast } => pipeline::verify(fast, &ctx(None).expect("default timeout")),
    };
    print!("{}", report.render());
    ExitCode::from(report.exit_code() as u8)
}
