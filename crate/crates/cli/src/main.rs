use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use slbc::approx::approx_sbcm;
use slbc::bench::{all_starts_csv, bench_csv, random_start, runtime_csv, BenchParams, Variant};
use slbc::exact::{solve_bfs_with_budget, solve_iddfs, DEFAULT_STATE_BUDGET};
use slbc::gen::{gen_random_2sbcm, gen_sbt_reduction};
use slbc::greedy::{best_greedy, greedy, heuristic_start};
use slbc::ihed::{ihed_approx, ihed_brute};
use slbc::interval::crossing_free;
use slbc::io;
use slbc::render::{render_ascii, render_svg, RenderStyle};
use slbc::{build_group_hypergraph, validate_solution, GroupHypergraph, Permutation, StorylineInstance};

const BUDGET_VAR: &str = "SLBC_STATE_BUDGET";

/// Block crossing minimization for storyline visualizations.
#[derive(Parser)]
#[command(name = "slbc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Compute a solution.
    Solve(SolveArgs),
    /// Check a solution and print its cost.
    Verify(VerifyArgs),
    /// Draw a solution as SVG and/or ASCII.
    Render(RenderArgs),
    /// Delete edges until a hypergraph is interval.
    Ihed(IhedArgs),
    /// Print a crossing-free start order, if there is one.
    Check(CheckArgs),
    /// Run experiments and print CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random pair meetings, no two consecutive meetings equal.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use the plain-text format instead of JSON.
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Instance whose optimum equals the transposition distance of a permutation.
    Sbt {
        /// Permutation such as "2,1".
        #[arg(long)]
        perm: String,
        #[arg(long)]
        text: bool,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Iddfs,
    Bfs,
    Greedy,
    Approx,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartKind {
    Heuristic,
    Random,
    Best,
    Identity,
    File,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Start order; exact solvers search all starts unless one is given.
    #[arg(long, value_enum)]
    start: Option<StartKind>,
    #[arg(long)]
    start_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest crossing count the iterative deepening solver tries.
    #[arg(long)]
    budget: Option<usize>,
    /// Meeting size bound for the approximation.
    #[arg(long)]
    d: Option<usize>,
    /// Also print solver statistics (or the approximation report) as JSON.
    #[arg(long)]
    stats: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    sol: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    sol: PathBuf,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Print the ASCII drawing (default when no SVG path is given).
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct IhedArgs {
    /// Hypergraph JSON, or an instance whose groups are used.
    #[arg(long = "in")]
    input: PathBuf,
    /// Exact minimum instead of the approximation.
    #[arg(long)]
    brute: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMode {
    Table,
    AllStarts,
    Runtime,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "table")]
    mode: BenchMode,
    #[arg(long)]
    k: usize,
    /// Meeting count; several comma-separated values for the runtime mode.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    instances: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated: random, heuristic, best, identity, exact, approx.
    #[arg(long, value_delimiter = ',', default_value = "heuristic,exact")]
    variants: Vec<String>,
    #[command(flatten)]
    out: OutArgs,
}

/// Flag combinations clap cannot express; reported like other usage errors.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_instance(path: &Path) -> Result<StorylineInstance> {
    io::parse_instance(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn state_budget() -> Result<u128> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{BUDGET_VAR} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_STATE_BUDGET),
    }
}

fn format_instance(inst: &StorylineInstance, text: bool) -> String {
    if text {
        io::instance_to_text(inst)
    } else {
        io::instance_to_json(inst)
    }
}

fn gen(cmd: GenCommand) -> Result<()> {
    match cmd {
        GenCommand::Random { k, n, seed, text, out } => emit(&out, &format_instance(&gen_random_2sbcm(k, n, seed)?, text)),
        GenCommand::Sbt { perm, text, out } => {
            let pi = io::parse_permutation(&perm)?;
            emit(&out, &format_instance(&gen_sbt_reduction(&pi)?, text))
        }
    }
}

fn fixed_start(args: &SolveArgs, inst: &StorylineInstance) -> Result<Option<Permutation>> {
    Ok(match (args.start, &args.start_file) {
        (None, None) => None,
        (None | Some(StartKind::File), Some(p)) => Some(io::parse_permutation(&read(p)?)?),
        (Some(StartKind::File), None) => return Err(usage("--start file needs --start-file")),
        (Some(_), Some(_)) => return Err(usage("--start-file goes with --start file")),
        (Some(StartKind::Identity), None) => Some(Permutation::identity(inst.k)),
        (Some(StartKind::Random), None) => Some(random_start(inst.k, args.seed)),
        (Some(StartKind::Heuristic), None) => Some(heuristic_start(inst)?),
        (Some(StartKind::Best), None) => None,
    })
}

fn solve(args: SolveArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    let (solution, stats) = match args.algo {
        Algo::Iddfs | Algo::Bfs => {
            if matches!(args.start, Some(StartKind::Best)) {
                return Err(usage("--start best only applies to the greedy solver"));
            }
            let start = fixed_start(&args, &inst)?;
            let solved = match args.algo {
                Algo::Iddfs => solve_iddfs(&inst, start.as_ref(), args.budget)?,
                _ => solve_bfs_with_budget(&inst, start.as_ref(), state_budget()?)?,
            };
            (solved.solution, serde_json::to_value(&solved.stats)?)
        }
        Algo::Greedy => {
            let sol = match args.start {
                Some(StartKind::Best) => best_greedy(&inst)?,
                _ => {
                    let start = match fixed_start(&args, &inst)? {
                        Some(p) => p,
                        None => heuristic_start(&inst)?,
                    };
                    greedy(&inst, &start)?
                }
            };
            let cost = sol.cost();
            (sol, json!({ "beta": cost }))
        }
        Algo::Approx => {
            if args.start.is_some() || args.start_file.is_some() {
                return Err(usage("the approximation chooses its own start"));
            }
            let a = approx_sbcm(&inst, args.d, None)?;
            (a.solution, serde_json::to_value(&a.report)?)
        }
    };
    validate_solution(&inst, &solution).context("solver returned an invalid solution")?;
    let sol_json = io::solution_to_json(&solution);
    match (&args.out.out, args.stats) {
        (Some(_), true) => {
            emit(&args.out, &sol_json)?;
            println!("{stats}");
        }
        (None, true) => print!("{sol_json}{stats}\n"),
        (_, false) => emit(&args.out, &sol_json)?,
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    let sol = io::parse_solution(&read(&args.sol)?).with_context(|| format!("in {}", args.sol.display()))?;
    let cost = validate_solution(&inst, &sol)?;
    println!("cost={cost}");
    Ok(())
}

fn render(args: RenderArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    let sol = io::parse_solution(&read(&args.sol)?).with_context(|| format!("in {}", args.sol.display()))?;
    if let Some(p) = &args.svg {
        let svg = render_svg(&inst, &sol, &RenderStyle::default())?;
        fs::write(p, svg).with_context(|| format!("cannot write {}", p.display()))?;
    }
    if args.ascii || args.svg.is_none() {
        print!("{}", render_ascii(&inst, &sol)?);
    }
    Ok(())
}

fn ihed(args: IhedArgs) -> Result<()> {
    let text = read(&args.input)?;
    let h: GroupHypergraph = if text.contains("\"meetings\"") || !text.trim_start().starts_with('{') {
        build_group_hypergraph(&io::parse_instance(&text)?)
    } else {
        io::parse_hypergraph(&text)?
    };
    let value = if args.brute {
        json!({ "paid": ihed_brute(&h)? })
    } else {
        let d = ihed_approx(&h)?;
        json!({ "paid": d.paid, "witness": d.witness })
    };
    emit(&args.out, &format!("{value}\n"))
}

fn check(args: CheckArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    match crossing_free(&inst) {
        Some(p) => {
            println!("{}", serde_json::to_string(&p)?);
            Ok(())
        }
        None => bail!("no crossing-free start order exists"),
    }
}

fn bench(args: BenchArgs) -> Result<()> {
    let variants = args.variants.iter().map(|v| v.parse::<Variant>()).collect::<slbc::Result<Vec<_>>>().map_err(|e| usage(e.to_string()))?;
    let budget = state_budget()?;
    let single_n = || match args.n[..] {
        [n] => Ok(n),
        _ => Err(usage("this mode takes a single --n")),
    };
    let csv = match args.mode {
        BenchMode::Table => bench_csv(&BenchParams {
            k: args.k,
            n: single_n()?,
            instances: args.instances,
            seed: args.seed,
            variants,
            state_budget: budget,
        })?,
        BenchMode::AllStarts => all_starts_csv(args.k, single_n()?, args.seed)?,
        BenchMode::Runtime => runtime_csv(args.k, &args.n, args.instances, args.seed, &variants, budget)?,
    };
    emit(&args.out, &csv)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(c) => gen(c),
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify(a),
        Command::Render(a) => render(a),
        Command::Ihed(a) => ihed(a),
        Command::Check(a) => check(a),
        Command::Bench(a) => bench(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
