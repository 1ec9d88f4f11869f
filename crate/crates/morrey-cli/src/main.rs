//! Command-line front end for the `morrey` library.
//!
//! Every invocation writes exactly one JSON document to stdout and
//! diagnostics to stderr. Exit codes: 0 on success (and verified), 1 when
//! verification ran but a verdict is false, 2 on usage or validation
//! errors. All randomness is seeded; repeated runs with identical flags
//! produce byte-identical output regardless of `--threads`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use morrey::json::{
    self, manifest_for, norm_value_to_doc, params_echo, parse_rational_param, report_to_doc,
    NormValueDoc, ReportDoc,
};
use morrey::{
    build_witness, morrey_norm, search_lower_bound, verify_family, Mode, SearchKind, SearchParams,
    Sequence, SpaceParams, Verdicts,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "morrey",
    version,
    about = "Discrete Morrey space toolkit: windowed norms, extremal families, \
             Von Neumann-Jordan / James constant verification and search"
)]
struct Cli {
    /// Cap the worker-thread count used by parallel phases
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the windowed norm of a sequence file
    Norm(NormArgs),
    /// Construct a witness family and write it to a directory
    Witness(WitnessArgs),
    /// Verify that both constants equal n on the witness family
    Verify(VerifyArgs),
    /// Randomized lower-bound search for either constant
    Estimate(EstimateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeOpt {
    Exact,
    Float,
}

#[derive(Args)]
struct ModeArgs {
    /// Arithmetic mode
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeOpt,
    /// Shorthand for --mode exact
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Shorthand for --mode float
    #[arg(long)]
    float: bool,
}

impl ModeArgs {
    fn resolve(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else if self.float {
            Mode::Float
        } else {
            match self.mode {
                ModeOpt::Exact => Mode::Exact,
                ModeOpt::Float => Mode::Float,
            }
        }
    }
}

#[derive(Args)]
struct NormArgs {
    /// Sequence file in the JSON format
    #[arg(long)]
    input: PathBuf,
    /// Exponent p as an integer or a/b (decimals only in float mode)
    #[arg(short, long)]
    p: String,
    /// Exponent q, likewise
    #[arg(short, long)]
    q: String,
    /// Expected dimension; cross-checked against the input file
    #[arg(short, long)]
    d: Option<usize>,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct WitnessArgs {
    /// Family size
    #[arg(short, long)]
    n: u32,
    #[arg(short, long)]
    p: String,
    #[arg(short, long)]
    q: String,
    #[arg(short, long)]
    d: usize,
    /// Spacing override; must be even and satisfy the threshold condition
    #[arg(long)]
    j: Option<u64>,
    /// Directory receiving the manifest and member files
    #[arg(long, default_value = ".")]
    output: PathBuf,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    n: u32,
    #[arg(short, long)]
    p: String,
    #[arg(short, long)]
    q: String,
    #[arg(short, long)]
    d: usize,
    #[arg(long)]
    j: Option<u64>,
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindOpt {
    Nj,
    James,
}

#[derive(Args)]
struct EstimateArgs {
    /// Which constant to lower-bound
    #[arg(long, value_enum)]
    kind: KindOpt,
    #[arg(short, long)]
    n: u32,
    #[arg(short, long)]
    p: String,
    #[arg(short, long)]
    q: String,
    #[arg(short, long, default_value_t = 1)]
    d: usize,
    /// Total number of objective evaluations
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Sampling box side and per-member support bound
    #[arg(long, default_value_t = 8)]
    support_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed the start pool with the witness family (requires p < q)
    #[arg(long)]
    include_witness: bool,
    /// Directory receiving the best tuple as sequence files
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || match &cli.command {
        Command::Norm(args) => cmd_norm(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Estimate(args) => cmd_estimate(args),
    };
    let outcome = match cli.threads {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(anyhow::Error::from);
            match pool {
                Ok(pool) => pool.install(run),
                Err(e) => Err(e),
            }
        }
        None => run(),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn space_params(p: &str, q: &str, d: usize, mode: Mode) -> anyhow::Result<SpaceParams> {
    let allow_decimal = mode == Mode::Float;
    let p = parse_rational_param(p, allow_decimal)?;
    let q = parse_rational_param(q, allow_decimal)?;
    Ok(SpaceParams::new(p, q, d, mode)?)
}

fn emit<T: Serialize>(doc: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    println!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct NormOutput {
    version: String,
    command: String,
    params: serde_json::Value,
    input: String,
    value_float: f64,
    exact: Option<json::CertificateDoc>,
    argmax: json::WindowDoc,
}

fn cmd_norm(args: &NormArgs) -> anyhow::Result<ExitCode> {
    let mode = args.mode.resolve();
    let x = json::read_sequence_file(&args.input, mode)
        .with_context(|| format!("reading {}", args.input.display()))?;
    if let Some(d) = args.d {
        if d != x.dim() {
            anyhow::bail!("input file has d = {}, flag says d = {}", x.dim(), d);
        }
    }
    let params = space_params(&args.p, &args.q, x.dim(), mode)?;
    let value = morrey_norm(&x, &params)?;
    let NormValueDoc {
        value_float,
        exact,
        argmax,
    } = norm_value_to_doc(&value);
    emit(&NormOutput {
        version: VERSION.into(),
        command: "norm".into(),
        params: params_echo(&params),
        input: args.input.display().to_string(),
        value_float,
        exact,
        argmax,
    })?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct WitnessOutput {
    version: String,
    command: String,
    params: serde_json::Value,
    n: u32,
    j: u64,
    manifest: String,
    members: Vec<String>,
}

fn cmd_witness(args: &WitnessArgs) -> anyhow::Result<ExitCode> {
    let mode = args.mode.resolve();
    let params = space_params(&args.p, &args.q, args.d, mode)?;
    let family = build_witness(args.n, &params, args.j)?;

    std::fs::create_dir_all(&args.output)
        .with_context(|| format!("creating {}", args.output.display()))?;
    let mut member_files = Vec::new();
    for (i, member) in family.members().iter().enumerate() {
        let name = format!("member_{}.json", i + 1);
        json::write_sequence_file(&args.output.join(&name), member)?;
        member_files.push(name);
    }
    let manifest = manifest_for(&family, member_files.clone());
    let manifest_path = args.output.join("manifest.json");
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(&manifest_path, text)?;

    emit(&WitnessOutput {
        version: VERSION.into(),
        command: "witness".into(),
        params: params_echo(&params),
        n: args.n,
        j: family.spacing(),
        manifest: manifest_path.display().to_string(),
        members: member_files
            .iter()
            .map(|name| args.output.join(name).display().to_string())
            .collect(),
    })?;
    Ok(ExitCode::SUCCESS)
}

fn exit_code_for_verdicts(verdicts: &Verdicts) -> ExitCode {
    if verdicts.all_true() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let mode = args.mode.resolve();
    let params = space_params(&args.p, &args.q, args.d, mode)?;
    let family = build_witness(args.n, &params, args.j)?;
    let report = verify_family(&family)?;
    let doc: ReportDoc = report_to_doc(&report, VERSION);
    emit(&doc)?;
    Ok(exit_code_for_verdicts(&report.verdicts))
}

#[derive(Serialize)]
struct EstimateOutput {
    version: String,
    command: String,
    kind: String,
    n: u32,
    params: serde_json::Value,
    support_cap: usize,
    budget: u64,
    seed: u64,
    include_witness: bool,
    best_value: f64,
    evaluations: u64,
    restarts: u32,
    tuple_files: Option<Vec<String>>,
}

fn cmd_estimate(args: &EstimateArgs) -> anyhow::Result<ExitCode> {
    // the search itself always evaluates in float mode
    let params = space_params(&args.p, &args.q, args.d, Mode::Float)?;
    let kind = match args.kind {
        KindOpt::Nj => SearchKind::Nj,
        KindOpt::James => SearchKind::James,
    };
    let search = SearchParams {
        kind,
        n: args.n,
        support_cap: args.support_cap,
        budget: args.budget,
        seed: args.seed,
        include_witness: args.include_witness,
    };
    let outcome = search_lower_bound(&params, &search)?;

    let tuple_files = match &args.output {
        None => None,
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let mut files = Vec::new();
            for (i, member) in outcome.best_tuple.iter().enumerate() {
                let path = dir.join(format!("tuple_member_{}.json", i + 1));
                write_tuple_member(&path, member)?;
                files.push(path.display().to_string());
            }
            Some(files)
        }
    };

    emit(&EstimateOutput {
        version: VERSION.into(),
        command: "estimate".into(),
        kind: kind.to_string(),
        n: args.n,
        params: params_echo(&params),
        support_cap: args.support_cap,
        budget: args.budget,
        seed: args.seed,
        include_witness: args.include_witness,
        best_value: outcome.best_value,
        evaluations: outcome.evaluations,
        restarts: outcome.restarts,
        tuple_files,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn write_tuple_member(path: &Path, member: &Sequence) -> anyhow::Result<()> {
    json::write_sequence_file(path, member)?;
    Ok(())
}
