mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::Report;

/// Exit codes: 0 all verdicts as expected, 1 some verdict differs, 2 some
/// search ran out of budget, 64 usage error.
#[derive(Parser, Debug)]
#[command(name = "vclosed", version, about = "Experiments on verbally closed subgroups and retracts")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Worker threads (default: available cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Node or evaluation budget for searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true, default_value_t = vclosed::util::DEFAULT_SEED)]
    pub seed: u64,
    /// Report runtime_ms as 0, making reports byte-comparable.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Primary decomposition of an abelian group.
    Decompose(GroupArg),
    /// Whether all cyclic summands of an abelian group have equal or coprime orders.
    RetractCriterion(GroupArg),
    /// Embedding of an abelian group failing the criterion whose image has no complement.
    ViolationEmbedding(GroupArg),
    /// Whether the center of a subgroup is a direct factor with a normal complement.
    Center(CenterArgs),
    /// Bounded search for a retraction onto a subgroup.
    RetractCheck(SubgroupArgs),
    /// Bounded verbal closedness of a subgroup.
    VerbalClosed(VerbalArgs),
    /// Smallest code with the three approximation properties.
    ApproxSearch(ApproxSearchArgs),
    /// Re-checks an approximation certificate.
    ApproxVerify(ApproxVerifyArgs),
    /// Witness groups G = Q/R.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Heisenberg group experiments.
    #[command(subcommand)]
    Heis(HeisCommand),
}

#[derive(Args, Debug)]
pub struct GroupArg {
    /// Group name (q8, d4, s3, Z6, Z2+Z4, heis(1,3)) or @file.json.
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct CenterArgs {
    #[arg(long)]
    pub group: String,
    /// Subgroup: whole, center, derived, trivial, or generators a,b,...
    #[arg(long, default_value = "whole")]
    pub sub: String,
}

#[derive(Args, Debug)]
pub struct SubgroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub sub: String,
}

#[derive(Args, Debug)]
pub struct VerbalArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub sub: String,
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
}

#[derive(Args, Debug)]
pub struct ApproxSearchArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub k: usize,
    /// Largest length tried (default k + 8).
    #[arg(long)]
    pub t_max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct ApproxVerifyArgs {
    /// Certificate JSON, or a report or bundle containing one.
    #[arg(long)]
    pub cert: std::path::PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum WitnessCommand {
    /// Builds the bundle for H with T = H and A = Z(H) unless given.
    Build(WitnessBuildArgs),
    /// Bounded verbal closedness of the diagonal copy of H in G.
    VerifyVc(WitnessVcArgs),
    /// Structured search for a retraction of G onto H.
    VerifyRetract(WitnessRetractArgs),
}

#[derive(Args, Debug)]
pub struct WitnessBuildArgs {
    #[arg(long)]
    pub group: String,
    /// Strength: a number, or `full` for the number of subgroups of T.
    #[arg(long, default_value = "full")]
    pub k: String,
    /// Prime (default: smallest prime giving a nontrivial C).
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value = "whole")]
    pub t_sub: String,
    #[arg(long, default_value = "center")]
    pub a: String,
}

#[derive(Args, Debug)]
pub struct WitnessVcArgs {
    #[arg(long)]
    pub bundle: std::path::PathBuf,
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
}

#[derive(Args, Debug)]
pub struct WitnessRetractArgs {
    #[arg(long)]
    pub bundle: std::path::PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum HeisCommand {
    /// Classifies the verbal image of a word in H_n(F_q).
    Classify(HeisClassifyArgs),
    /// Central product experiment: retraction and bounded verbal closedness.
    Prop6(HeisProp6Args),
    /// Quotients of the discrete Heisenberg group by <<a^alpha, [a,b]^n>>.
    Quotient(HeisQuotientArgs),
}

#[derive(Args, Debug)]
pub struct HeisClassifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug)]
pub struct HeisProp6Args {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long, default_value_t = 2)]
    pub vars: usize,
}

#[derive(Args, Debug)]
pub struct HeisQuotientArgs {
    #[arg(long)]
    pub alpha: i64,
    #[arg(long)]
    pub nparam: i64,
    /// all, abelian, torsion or obstruction.
    #[arg(long, default_value = "all")]
    pub check: String,
    /// Search window B for the obstruction check.
    #[arg(long, default_value_t = 20)]
    pub window: i64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.global.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(64);
        }
    };
    let result = pool.install(|| commands::run(&cli));
    let mut report: Report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(commands::error_code(&e));
        }
    };
    report.seed = cli.global.seed;
    report.runtime_ms = if cli.global.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    let text = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code() as u8)
}
