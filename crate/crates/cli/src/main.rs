use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::PossibleValuesParser;
use clap::Parser;
use weqtk::{replay_text, run, BudgetOverrides, CliResult, Command, FieldSpec, InputDoc, JobSpec};

const COMMANDS: [&str; 10] = [
    "check-rlp",
    "check-equivalence",
    "check-quasi-iso",
    "check-we-sset",
    "check-pure-mono",
    "free-injective",
    "subdivide",
    "ex",
    "pi0",
    "replay",
];

/// Checks lifting, equivalence and weak-equivalence conditions on finite data
/// and emits replayable certificates.
///
/// Exit status: 0 verified, 1 refuted, 2 unknown at the given bounds, 3 and
/// above for errors.
#[derive(Debug, Parser)]
#[command(name = "weqtk", version)]
struct Cli {
    #[arg(value_parser = PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// JSON input document, or a certificate for `replay`.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the certificate; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    stage_bound: Option<usize>,
    /// Truncation dimension for `ex`; size bound of test objects for `check-pure-mono`.
    #[arg(long)]
    dim_bound: Option<usize>,
    /// `Z/p` or `Q`.
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    search_budget: Option<usize>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Seed for generated probe corpora.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn execute(cli: &Cli) -> CliResult<i32> {
    let text = std::fs::read_to_string(&cli.input)?;
    if cli.command == "replay" {
        let ok = replay_text(&text)?;
        println!("{ok}");
        return Ok(if ok { 0 } else { 1 });
    }
    let overrides = BudgetOverrides {
        k_max: cli.k_max,
        m_max: cli.m_max,
        n_max: cli.n_max,
        stage_bound: cli.stage_bound,
        dim_bound: cli.dim_bound,
        field: cli.field.as_deref().map(str::parse::<FieldSpec>).transpose()?,
        search_budget: cli.search_budget,
    };
    let command: Command = cli.command.parse()?;
    let mut job = JobSpec::new(command, InputDoc::parse(&text)?)?.with_budgets(&overrides)?;
    job.seed = cli.seed;
    job.output = cli.output.clone();
    let cert = run(&job)?;
    if cli.output.is_none() {
        print!("{}", cert.to_json()?);
    }
    let summary: Vec<String> = cert.verdicts.iter().map(|v| format!("{}={:?}", v.name, v.status)).collect();
    eprintln!("{}: {:?} [{}]", cert.command, cert.status, summary.join(", "));
    Ok(cert.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(3);
        }
    }
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

