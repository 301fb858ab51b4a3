//! Command-line front end: generate networks, run solvers and oracles,
//! translate hardness gadgets, build adversarial families, and drive batch
//! sweeps with CSV/SVG output.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags, unknown
//! algorithm or solver names), 2 when an instance is infeasible or a
//! computation fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use aggtree::chart::emit_chart;
use aggtree::cost::{check_budget, tree_cost, CostParams};
use aggtree::error::{AggError, Result};
use aggtree::families::{spt_trap, steiner_trap, TrapFamily};
use aggtree::fileio::{
    parse_ds, parse_lbsm, parse_network, parse_tree, write_network, write_tree,
};
use aggtree::oracle::{
    brute_force_mecat, brute_force_mecat_rn, count_spanning_trees, lower_bound, mecat_feasible,
    mecat_rn_feasible,
};
use aggtree::rat::{format_rational, parse_rational, Rational};
use aggtree::reduction::{ds_gadget, lbsm_gadget, tree_to_dominating_set, tree_to_semi_matching};
use aggtree::rgg::{generate_rgg, RggConfig, SizeMode};
use aggtree::sweep::{
    default_algorithms, default_q_values, rows_from_csv, rows_to_csv, run_sweep, solve_by_name,
    summarize, summary_to_csv, SweepConfig, ALGORITHM_NAMES,
};

#[derive(Parser)]
#[command(
    name = "aggtree",
    version,
    about = "Energy-minimal data-aggregation routing trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random geometric network file.
    GenRgg(GenRggArgs),
    /// Run a named algorithm on a network file and print the tree.
    Solve(SolveArgs),
    /// Evaluate the cost of a tree on a network.
    Eval(EvalArgs),
    /// Print the energy lower bound of a network.
    Lb(LbArgs),
    /// Exhaustive search: optimal tree, feasibility, or tree counting.
    Oracle(OracleArgs),
    /// Translate a semi-matching or dominating-set instance into a network.
    Gadget(GadgetArgs),
    /// Emit a worst-case instance family member.
    Family(FamilyArgs),
    /// Run algorithms over random networks across aggregation ratios.
    Sweep(SweepArgs),
    /// Render a sweep CSV as an SVG chart.
    Chart(ChartArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SizeModeArg {
    Uniform,
    Nonuniform,
}

impl From<SizeModeArg> for SizeMode {
    fn from(arg: SizeModeArg) -> SizeMode {
        match arg {
            SizeModeArg::Uniform => SizeMode::Uniform,
            SizeModeArg::Nonuniform => SizeMode::NonUniform,
        }
    }
}

/// Generator flags shared by `gen-rgg` and `sweep`.
#[derive(Args)]
struct RggArgs {
    /// Total number of nodes, sink included.
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Side length of the square field.
    #[arg(long, default_value_t = 100.0)]
    field: f64,
    /// Transmission range.
    #[arg(long, default_value_t = 20.0)]
    range: f64,
    /// Sink x coordinate.
    #[arg(long, default_value_t = 50.0)]
    sink_x: f64,
    /// Sink y coordinate.
    #[arg(long, default_value_t = 50.0)]
    sink_y: f64,
    /// Mark non-sink nodes as relays with probability --relay-prob.
    #[arg(long)]
    relays: bool,
    /// Probability that a non-sink node is a relay (needs --relays).
    #[arg(long, default_value_t = 0.3)]
    relay_prob: f64,
    /// Report size distribution for sources.
    #[arg(long, value_enum, default_value_t = SizeModeArg::Uniform)]
    size_mode: SizeModeArg,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RggArgs {
    fn to_config(&self) -> RggConfig {
        RggConfig {
            n: self.n,
            field: self.field,
            range: self.range,
            sink_at: (self.sink_x, self.sink_y),
            relay_prob: self.relay_prob,
            relays: self.relays,
            size_mode: self.size_mode.into(),
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct GenRggArgs {
    #[command(flatten)]
    rgg: RggArgs,
    /// Aggregation ratio written to the param line.
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Transmission energy per packet.
    #[arg(long, default_value = "2")]
    tx: String,
    /// Reception energy per packet.
    #[arg(long, default_value = "1")]
    rx: String,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Network file.
    #[arg(long)]
    net: PathBuf,
    /// Algorithm name; see `--algorithm help` for the list.
    #[arg(long)]
    algorithm: String,
    /// Seed for randomized algorithms.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output tree file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// Network file.
    #[arg(long)]
    net: PathBuf,
    /// Tree file.
    #[arg(long)]
    tree: PathBuf,
}

#[derive(Args)]
struct LbArgs {
    /// Network file.
    #[arg(long)]
    net: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    /// Network file.
    #[arg(long)]
    net: PathBuf,
    /// Count spanning trees instead of optimizing.
    #[arg(long, conflicts_with = "feasible")]
    count: bool,
    /// Decide whether any tree fits the budget from the param line.
    #[arg(long)]
    feasible: bool,
    /// Output tree file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    Lbsm,
    Ds,
}

#[derive(Args)]
struct GadgetArgs {
    /// Which reduction to apply.
    #[arg(value_enum)]
    kind: GadgetKind,
    /// Instance file (`lbsm ...` or `ds ...` format).
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Translate a routing tree of the gadget back into a solution of the
    /// original instance instead of emitting the network.
    #[arg(long, value_name = "TREE")]
    back_tree: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    /// Chain plus private relays: shortest-path trees stay expensive.
    SteinerTrap,
    /// Relay detours: fewest-edge trees stay expensive.
    SptTrap,
}

#[derive(Args)]
struct FamilyArgs {
    /// Which family to draw from.
    #[arg(value_enum)]
    kind: FamilyKind,
    /// Number of sources.
    #[arg(long)]
    size: usize,
    /// Output network file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Also write the expensive reference tree here.
    #[arg(long, value_name = "FILE")]
    trapped_out: Option<PathBuf>,
    /// Also write the cheap reference tree here.
    #[arg(long, value_name = "FILE")]
    escape_out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    rgg: RggArgs,
    /// Comma-separated aggregation ratios (defaults depend on --size-mode).
    #[arg(long)]
    q_values: Option<String>,
    /// Number of networks to draw.
    #[arg(long, default_value_t = 30)]
    trials: u64,
    /// Comma-separated algorithm names (defaults depend on --relays).
    #[arg(long)]
    algorithms: Option<String>,
    /// Transmission energy per packet.
    #[arg(long, default_value = "2")]
    tx: String,
    /// Reception energy per packet.
    #[arg(long, default_value = "1")]
    rx: String,
    /// Record wall-clock runtimes (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
    /// Rows CSV output file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Also write the per-(q, algorithm) mean table here.
    #[arg(long, value_name = "FILE")]
    summary_out: Option<PathBuf>,
}

#[derive(Args)]
struct ChartArgs {
    /// Rows CSV produced by `sweep`.
    #[arg(long)]
    csv: PathBuf,
    /// Output SVG file (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                AggError::UnknownAlgorithm(_) | AggError::UnknownSolver(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::GenRgg(args) => cmd_gen_rgg(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Lb(args) => cmd_lb(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Gadget(args) => cmd_gadget(args),
        Command::Family(args) => cmd_family(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Chart(args) => cmd_chart(args),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| AggError::Parse(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_network(path: &Path) -> Result<(aggtree::graph::Network, CostParams)> {
    parse_network(&read_to_string(path)?)
}

fn parse_energy(text: &str, what: &str) -> Result<Rational> {
    let value = parse_rational(text)?;
    if value <= Rational::from_integer(0) {
        return Err(AggError::InvalidInstance(format!("{what} must be positive")));
    }
    Ok(value)
}

fn cmd_gen_rgg(args: GenRggArgs) -> Result<ExitCode> {
    let params = CostParams::new(
        args.q,
        parse_energy(&args.tx, "tx")?,
        parse_energy(&args.rx, "rx")?,
    )?;
    let (net, offset) = generate_rgg(&args.rgg.to_config())?;
    if offset > 0 {
        eprintln!("seed offset {offset}: earlier draws were disconnected");
    }
    write_out(args.out.as_deref(), &write_network(&net, &params))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode> {
    if !ALGORITHM_NAMES.contains(&args.algorithm.as_str()) {
        return Err(AggError::UnknownAlgorithm(format!(
            "{} (expected one of: {})",
            args.algorithm,
            ALGORITHM_NAMES.join(", ")
        )));
    }
    let (net, params) = load_network(&args.net)?;
    let tree = solve_by_name(&args.algorithm, &net, &params, args.seed)?;
    let cost = tree_cost(&tree, &net, &params)?;
    eprintln!("cost {}", format_rational(&cost));
    write_out(args.out.as_deref(), &write_tree(&tree))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_eval(args: EvalArgs) -> Result<ExitCode> {
    let (net, params) = load_network(&args.net)?;
    let tree = parse_tree(&read_to_string(&args.tree)?)?;
    tree.validate(&net)?;
    let cost = tree_cost(&tree, &net, &params)?;
    println!("cost {}", format_rational(&cost));
    if params.budget.is_some() {
        let ok = check_budget(&tree, &net, &params)?;
        println!("within-budget {ok}");
        if !ok {
            return Ok(ExitCode::from(2));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_lb(args: LbArgs) -> Result<ExitCode> {
    let (net, params) = load_network(&args.net)?;
    let bound = lower_bound(&net, &params)?;
    println!("lower-bound {}", format_rational(&bound));
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode> {
    let (net, params) = load_network(&args.net)?;
    if args.count {
        let trees = count_spanning_trees(&net)?;
        println!("trees {trees}");
        return Ok(ExitCode::SUCCESS);
    }
    if args.feasible {
        let budget = params.budget.ok_or(AggError::NoBudget)?;
        let found = if net.has_relays() {
            mecat_rn_feasible(&net, &params, budget)?
        } else {
            mecat_feasible(&net, &params, budget)?
        };
        match found {
            Some(tree) => {
                println!("feasible true");
                write_out(args.out.as_deref(), &write_tree(&tree))?;
                return Ok(ExitCode::SUCCESS);
            }
            None => {
                println!("feasible false");
                return Ok(ExitCode::from(2));
            }
        }
    }
    let (tree, cost) = if net.has_relays() {
        brute_force_mecat_rn(&net, &params)?
    } else {
        brute_force_mecat(&net, &params)?
    };
    eprintln!("cost {}", format_rational(&cost));
    write_out(args.out.as_deref(), &write_tree(&tree))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_gadget(args: GadgetArgs) -> Result<ExitCode> {
    let text = read_to_string(&args.input)?;
    match args.kind {
        GadgetKind::Lbsm => {
            let inst = parse_lbsm(&text)?;
            let gadget = lbsm_gadget(&inst)?;
            match args.back_tree {
                Some(tree_path) => {
                    let tree = parse_tree(&read_to_string(&tree_path)?)?;
                    let assignment = tree_to_semi_matching(&inst, &gadget, &tree)?;
                    let mut out = String::new();
                    for (i, j) in assignment.iter().enumerate() {
                        out.push_str(&format!("assign {i} {j}\n"));
                    }
                    write_out(args.out.as_deref(), &out)?;
                }
                None => {
                    eprintln!(
                        "gadget: {} nodes, q {}, budget {}",
                        gadget.net.node_count(),
                        gadget.params.q,
                        format_rational(&gadget.budget)
                    );
                    write_out(args.out.as_deref(), &write_network(&gadget.net, &gadget.params))?;
                }
            }
        }
        GadgetKind::Ds => {
            let inst = parse_ds(&text)?;
            let gadget = ds_gadget(&inst)?;
            match args.back_tree {
                Some(tree_path) => {
                    let tree = parse_tree(&read_to_string(&tree_path)?)?;
                    let set = tree_to_dominating_set(&inst, &gadget, &tree)?;
                    let mut out = String::new();
                    for d in &set {
                        out.push_str(&format!("dominator {d}\n"));
                    }
                    write_out(args.out.as_deref(), &out)?;
                }
                None => {
                    eprintln!(
                        "gadget: {} nodes, q {}, budget {}",
                        gadget.net.node_count(),
                        gadget.params.q,
                        format_rational(&gadget.budget)
                    );
                    write_out(args.out.as_deref(), &write_network(&gadget.net, &gadget.params))?;
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_family(args: FamilyArgs) -> Result<ExitCode> {
    let family: TrapFamily = match args.kind {
        FamilyKind::SteinerTrap => steiner_trap(args.size)?,
        FamilyKind::SptTrap => spt_trap(args.size)?,
    };
    let trapped_cost = tree_cost(&family.trapped, &family.net, &family.params)?;
    let escape_cost = tree_cost(&family.escape, &family.net, &family.params)?;
    eprintln!(
        "trapped cost {}, escape cost {}",
        format_rational(&trapped_cost),
        format_rational(&escape_cost)
    );
    if let Some(path) = &args.trapped_out {
        std::fs::write(path, write_tree(&family.trapped))?;
    }
    if let Some(path) = &args.escape_out {
        std::fs::write(path, write_tree(&family.escape))?;
    }
    write_out(args.out.as_deref(), &write_network(&family.net, &family.params))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse()
                .map_err(|_| AggError::Parse(format!("bad {what} `{item}`")))
        })
        .collect()
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let rgg = args.rgg.to_config();
    let q_values = match &args.q_values {
        Some(text) => parse_list(text, "aggregation ratio")?,
        None => default_q_values(rgg.size_mode),
    };
    let algorithms = match &args.algorithms {
        Some(text) => text.split(',').map(|s| s.trim().to_string()).collect(),
        None => default_algorithms(rgg.relays),
    };
    let cfg = SweepConfig {
        q_values,
        trials: args.trials,
        algorithms,
        base_seed: rgg.seed,
        tx: parse_energy(&args.tx, "tx")?,
        rx: parse_energy(&args.rx, "rx")?,
        timing: args.timing,
    };
    let rows = run_sweep(&cfg, &rgg)?;
    write_out(args.out.as_deref(), &rows_to_csv(&rows))?;
    if let Some(path) = &args.summary_out {
        std::fs::write(path, summary_to_csv(&summarize(&rows)))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chart(args: ChartArgs) -> Result<ExitCode> {
    let rows = rows_from_csv(&read_to_string(&args.csv)?)?;
    let svg = emit_chart(&rows)?;
    write_out(args.out.as_deref(), &svg)?;
    Ok(ExitCode::SUCCESS)
}
