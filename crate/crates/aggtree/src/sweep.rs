//! Batch experiments: run a set of algorithms over random networks across a
//! range of aggregation ratios and collect the costs as CSV.
//!
//! A sweep draws one network per trial (seeded as `base_seed + trial`), then
//! evaluates every `(q, algorithm)` pair on it. Output is one row per
//! `(trial, q, algorithm)` plus an aggregate table of per-`(q, algorithm)`
//! means. All costs are exact rationals, so two runs of the same sweep
//! produce byte-identical CSV — as long as timing capture is left off, which
//! is why `timing` defaults to false and the `runtime_ms` column stays empty
//! unless explicitly requested.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::time::Instant;

use crate::algos::{
    solve_mecat_rn_alg2, solve_mecat_rn_alg3, solve_mecat_spt, solve_spanning_baseline,
};
use crate::cnd::{SalmanSolver, ShortestPathsSolver};
use crate::cost::{tree_cost, CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::Network;
use crate::oracle::lower_bound;
use crate::rat::{format_rational, Rational};
use crate::rgg::{generate_rgg, RggConfig, SizeMode};
use crate::trees::{shortest_path_tree, steiner_tree_2approx};

/// Names accepted by [`solve_by_name`], in presentation order.
pub const ALGORITHM_NAMES: &[&str] = &[
    "spt",
    "spanning",
    "spt-sources",
    "steiner",
    "light-tree",
    "route-salman",
    "route-sp",
];

/// Runs the named algorithm on a network. `seed` only matters for the
/// randomized spanning-tree baseline; deterministic algorithms ignore it.
///
/// - `spt`: shortest-path tree over all nodes (relay-free networks only).
/// - `spanning`: random spanning tree baseline (relay-free networks only).
/// - `spt-sources`: shortest-path tree kept only where it serves sources.
/// - `steiner`: fewest-edge tree connecting sources to the sink.
/// - `light-tree`: balanced light tree over the hop metric, then
///   shortest paths inside it.
/// - `route-salman`: per-source routing via the cluster-merging heuristic,
///   then shortest paths inside the routed subgraph.
/// - `route-sp`: per-source plain shortest-path routing, then shortest paths
///   inside the routed subgraph.
pub fn solve_by_name(
    name: &str,
    net: &Network,
    params: &CostParams,
    seed: u64,
) -> Result<RoutingTree> {
    match name {
        "spt" => solve_mecat_spt(net, params),
        "spanning" => solve_spanning_baseline(net, params, seed),
        "spt-sources" => {
            let span: BTreeSet<_> = net.sources().into_iter().collect();
            if span.is_empty() {
                return Err(AggError::NoSources);
            }
            shortest_path_tree(net, net.sink(), &span)
        }
        "steiner" => {
            let mut terminals: BTreeSet<_> = net.sources().into_iter().collect();
            if terminals.is_empty() {
                return Err(AggError::NoSources);
            }
            terminals.insert(net.sink());
            steiner_tree_2approx(net, &terminals)
        }
        "light-tree" => solve_mecat_rn_alg2(net, params),
        "route-salman" => solve_mecat_rn_alg3(net, params, &SalmanSolver),
        "route-sp" => solve_mecat_rn_alg3(net, params, &ShortestPathsSolver),
        other => Err(AggError::UnknownAlgorithm(other.into())),
    }
}

/// Default algorithm set: the two relay-free algorithms when relays are
/// absent, the full relay-aware lineup otherwise.
pub fn default_algorithms(relays: bool) -> Vec<String> {
    let names: &[&str] = if relays {
        &["light-tree", "route-salman", "route-sp", "spt-sources", "steiner"]
    } else {
        &["spt", "spanning"]
    };
    names.iter().map(|s| s.to_string()).collect()
}

/// Default aggregation ratios: 2, 4, ..., 50 for uniform report sizes and
/// 2, 4, ..., 100 for non-uniform ones (larger reports need larger ratios
/// before aggregation saturates).
pub fn default_q_values(mode: SizeMode) -> Vec<u64> {
    let top = match mode {
        SizeMode::Uniform => 50,
        SizeMode::NonUniform => 100,
    };
    (1..=top / 2).map(|i| 2 * i).collect()
}

/// Parameters for a sweep over `(trial, q, algorithm)` triples.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Aggregation ratios to evaluate.
    pub q_values: Vec<u64>,
    /// Number of independent networks to draw.
    pub trials: u64,
    /// Algorithm names, each accepted by [`solve_by_name`].
    pub algorithms: Vec<String>,
    /// Trial `t` draws its network with seed `base_seed + t`.
    pub base_seed: u64,
    /// Energy to transmit one packet over one link.
    pub tx: Rational,
    /// Energy to receive one packet over one link.
    pub rx: Rational,
    /// Capture wall-clock runtimes. Off by default: timing makes the CSV
    /// differ between runs, and the contract is byte-identical output.
    pub timing: bool,
}

impl SweepConfig {
    /// Table-style defaults for the given generator configuration:
    /// transmit energy 2, receive energy 1, 30 trials.
    pub fn for_rgg(rgg: &RggConfig) -> Self {
        SweepConfig {
            q_values: default_q_values(rgg.size_mode),
            trials: 30,
            algorithms: default_algorithms(rgg.relays),
            base_seed: rgg.seed,
            tx: Rational::from_integer(2),
            rx: Rational::from_integer(1),
            timing: false,
        }
    }
}

/// One `(trial, q, algorithm)` measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    /// Seed the trial's network was drawn from (before any retry offset).
    pub seed: u64,
    pub q: u64,
    pub algorithm: String,
    /// `None` when the solver returned an error for this row.
    pub cost: Option<Rational>,
    pub lower_bound: Rational,
    /// Wall-clock solve time; captured only when timing was requested.
    pub runtime_ms: Option<u128>,
}

/// Per-`(q, algorithm)` aggregate over the successful trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub q: u64,
    pub algorithm: String,
    /// Exact mean over successful trials; `None` when every trial failed.
    pub mean_cost: Option<Rational>,
    pub mean_lb: Option<Rational>,
    /// Number of successful trials behind the means.
    pub trials: u64,
}

/// Runs every algorithm over every `(trial, q)` pair.
///
/// Solver errors are recorded as failed rows and the sweep continues; errors
/// that make the whole sweep meaningless (unknown algorithm name, generation
/// failure, invalid parameters) abort it. Rows come back sorted by
/// `(seed, q, algorithm)`.
pub fn run_sweep(cfg: &SweepConfig, rgg: &RggConfig) -> Result<Vec<SweepRow>> {
    if cfg.q_values.is_empty() {
        return Err(AggError::InvalidInstance("no aggregation ratios given".into()));
    }
    if cfg.trials == 0 {
        return Err(AggError::InvalidInstance("need at least one trial".into()));
    }
    if cfg.algorithms.is_empty() {
        return Err(AggError::InvalidInstance("no algorithms given".into()));
    }
    for name in &cfg.algorithms {
        if !ALGORITHM_NAMES.contains(&name.as_str()) {
            return Err(AggError::UnknownAlgorithm(name.clone()));
        }
    }

    let mut rows = Vec::new();
    for trial in 0..cfg.trials {
        let seed = cfg.base_seed.wrapping_add(trial);
        let (net, _offset) = generate_rgg(&RggConfig { seed, ..rgg.clone() })?;
        for &q in &cfg.q_values {
            let params = CostParams::new(q, cfg.tx, cfg.rx)?;
            let lb = lower_bound(&net, &params)?;
            for name in &cfg.algorithms {
                let started = Instant::now();
                let cost = match solve_by_name(name, &net, &params, seed) {
                    Ok(tree) => Some(tree_cost(&tree, &net, &params)?),
                    Err(_) => None,
                };
                let runtime_ms = cfg.timing.then(|| started.elapsed().as_millis());
                rows.push(SweepRow {
                    seed,
                    q,
                    algorithm: name.clone(),
                    cost,
                    lower_bound: lb,
                    runtime_ms,
                });
            }
        }
    }
    rows.sort_by(|a, b| {
        (a.seed, a.q, a.algorithm.as_str()).cmp(&(b.seed, b.q, b.algorithm.as_str()))
    });
    Ok(rows)
}

/// Collapses sweep rows into per-`(q, algorithm)` means over the successful
/// trials, sorted by `(q, algorithm)`.
pub fn summarize(rows: &[SweepRow]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(u64, &str), (Rational, Rational, u64)> = BTreeMap::new();
    for row in rows {
        if let Some(cost) = row.cost {
            let entry = groups
                .entry((row.q, row.algorithm.as_str()))
                .or_insert((Rational::from_integer(0), Rational::from_integer(0), 0));
            entry.0 += cost;
            entry.1 += row.lower_bound;
            entry.2 += 1;
        } else {
            groups
                .entry((row.q, row.algorithm.as_str()))
                .or_insert((Rational::from_integer(0), Rational::from_integer(0), 0));
        }
    }
    groups
        .into_iter()
        .map(|((q, algorithm), (cost_sum, lb_sum, n))| {
            let div = |sum: Rational| (n > 0).then(|| sum / Rational::from_integer(n as i64));
            SummaryRow {
                q,
                algorithm: algorithm.to_string(),
                mean_cost: div(cost_sum),
                mean_lb: div(lb_sum),
                trials: n,
            }
        })
        .collect()
}

/// Renders sweep rows as CSV. Failed rows carry `failed` in the cost column;
/// the `runtime_ms` cell is empty when timing was off.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("seed,q,algorithm,cost,lower_bound,runtime_ms\n");
    for row in rows {
        let cost = match row.cost {
            Some(c) => format_rational(&c),
            None => "failed".into(),
        };
        let runtime = match row.runtime_ms {
            Some(ms) => ms.to_string(),
            None => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.seed,
            row.q,
            row.algorithm,
            cost,
            format_rational(&row.lower_bound),
            runtime,
        ));
    }
    out
}

/// Renders the aggregate table as CSV.
pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from("q,algorithm,mean_cost,mean_lb,trials\n");
    for row in rows {
        let mean_cost = row.mean_cost.map(|r| format_rational(&r)).unwrap_or_default();
        let mean_lb = row.mean_lb.map(|r| format_rational(&r)).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.q, row.algorithm, mean_cost, mean_lb, row.trials,
        ));
    }
    out
}

/// Parses CSV produced by [`rows_to_csv`] back into rows (used by the chart
/// command, which works from a file on disk).
pub fn rows_from_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "seed,q,algorithm,cost,lower_bound,runtime_ms" => {}
        _ => {
            return Err(AggError::Parse(
                "expected header seed,q,algorithm,cost,lower_bound,runtime_ms".into(),
            ))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(AggError::Parse(format!(
                "line {}: expected 6 fields, found {}",
                idx + 1,
                fields.len()
            )));
        }
        let bad = |what: &str| AggError::Parse(format!("line {}: bad {}", idx + 1, what));
        let seed: u64 = fields[0].parse().map_err(|_| bad("seed"))?;
        let q: u64 = fields[1].parse().map_err(|_| bad("q"))?;
        let cost = if fields[3] == "failed" {
            None
        } else {
            Some(crate::rat::parse_rational(fields[3])?)
        };
        let lower_bound = crate::rat::parse_rational(fields[4])?;
        let runtime_ms = if fields[5].is_empty() {
            None
        } else {
            Some(fields[5].parse().map_err(|_| bad("runtime_ms"))?)
        };
        rows.push(SweepRow {
            seed,
            q,
            algorithm: fields[2].to_string(),
            cost,
            lower_bound,
            runtime_ms,
        });
    }
    Ok(rows)
}
