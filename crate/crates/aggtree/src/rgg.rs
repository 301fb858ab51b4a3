//! Random geometric network generation.
//!
//! Nodes are dropped uniformly at random into a square field and linked
//! whenever their Euclidean distance is at most the transmission range. The
//! sink is pinned to a fixed position (the field center by default) so that
//! every generated instance has a well-defined root. Generation is fully
//! deterministic given a seed: a draw that produces a disconnected network is
//! discarded and retried with `seed + 1`, `seed + 2`, ... so callers can
//! reproduce the exact network from `(config, seed)` alone.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId};

/// How report sizes are assigned to source nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeMode {
    /// Every source sends a report of size 1.
    Uniform,
    /// Source report sizes are drawn uniformly from 1..=5.
    NonUniform,
}

/// Parameters for random geometric network generation.
#[derive(Debug, Clone)]
pub struct RggConfig {
    /// Total number of nodes, including the sink.
    pub n: usize,
    /// Side length of the square deployment field.
    pub field: f64,
    /// Transmission range: nodes within this distance are linked.
    pub range: f64,
    /// Fixed position of the sink.
    pub sink_at: (f64, f64),
    /// Probability that a non-sink node is a relay rather than a source.
    /// Only consulted when `relays` is true.
    pub relay_prob: f64,
    /// Whether to include relay nodes at all. When false every non-sink
    /// node is a source.
    pub relays: bool,
    /// How source report sizes are drawn.
    pub size_mode: SizeMode,
    /// Base seed for the deterministic generator.
    pub seed: u64,
}

impl Default for RggConfig {
    fn default() -> Self {
        RggConfig {
            n: 100,
            field: 100.0,
            range: 20.0,
            sink_at: (50.0, 50.0),
            relay_prob: 0.3,
            relays: false,
            size_mode: SizeMode::Uniform,
            seed: 0,
        }
    }
}

/// How many fresh seeds to try before giving up on a configuration whose
/// draws keep coming out disconnected.
const MAX_ATTEMPTS: u64 = 1000;

/// Generates a connected random geometric network.
///
/// Node 0 is the sink, pinned at `cfg.sink_at` with report size 0. The
/// remaining `n - 1` nodes are placed independently and uniformly in the
/// field; two nodes are linked when their distance is at most `cfg.range`.
/// Roles and report sizes are then drawn per the configuration.
///
/// A draw is rejected when the resulting graph is disconnected or has no
/// source nodes; rejection moves on to the next seed offset. Returns the
/// network together with the seed offset that succeeded (0 when the first
/// draw was already usable), so callers can report which effective seed
/// produced the instance.
pub fn generate_rgg(cfg: &RggConfig) -> Result<(Network, u64)> {
    validate_config(cfg)?;
    for offset in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(offset));
        if let Some(net) = try_draw(cfg, &mut rng)? {
            return Ok((net, offset));
        }
    }
    Err(AggError::GenerationFailed(
        "generation failed; lower n or raise range".into(),
    ))
}

fn validate_config(cfg: &RggConfig) -> Result<()> {
    if cfg.n < 2 {
        return Err(AggError::InvalidInstance(
            "need at least a sink and one other node".into(),
        ));
    }
    if !(cfg.field > 0.0) || !cfg.field.is_finite() {
        return Err(AggError::InvalidInstance(
            "field side must be positive".into(),
        ));
    }
    if !(cfg.range > 0.0) || !cfg.range.is_finite() {
        return Err(AggError::InvalidInstance(
            "transmission range must be positive".into(),
        ));
    }
    if !(0.0..1.0).contains(&cfg.relay_prob) {
        return Err(AggError::InvalidInstance(
            "relay probability must be in [0, 1)".into(),
        ));
    }
    let (sx, sy) = cfg.sink_at;
    if !(0.0..=cfg.field).contains(&sx) || !(0.0..=cfg.field).contains(&sy) {
        return Err(AggError::InvalidInstance(
            "sink position must lie inside the field".into(),
        ));
    }
    Ok(())
}

/// One placement attempt. Returns `Ok(None)` when the draw came out
/// disconnected or sourceless and should be retried under a fresh seed.
fn try_draw(cfg: &RggConfig, rng: &mut ChaCha8Rng) -> Result<Option<Network>> {
    let n = cfg.n;
    let mut coords = Vec::with_capacity(n);
    coords.push(cfg.sink_at);
    for _ in 1..n {
        let x = rng.gen_range(0.0..cfg.field);
        let y = rng.gen_range(0.0..cfg.field);
        coords.push((x, y));
    }

    let range_sq = cfg.range * cfg.range;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let dx = coords[u].0 - coords[v].0;
            let dy = coords[u].1 - coords[v].1;
            if dx * dx + dy * dy <= range_sq {
                edges.push((u as NodeId, v as NodeId));
            }
        }
    }

    if !connected(n, &edges) {
        return Ok(None);
    }

    let mut sizes = vec![0u64; n];
    let mut any_source = false;
    for node in 1..n {
        let is_relay = cfg.relays && rng.gen_bool(cfg.relay_prob);
        if is_relay {
            sizes[node] = 0;
        } else {
            any_source = true;
            sizes[node] = match cfg.size_mode {
                SizeMode::Uniform => 1,
                SizeMode::NonUniform => rng.gen_range(1..=5),
            };
        }
    }
    if !any_source {
        return Ok(None);
    }

    let net = Network::new(n, 0, sizes, edges)?.with_coords(coords)?;
    Ok(Some(net))
}

/// Connectivity check on the raw edge list, run before committing to a draw.
fn connected(n: usize, edges: &[(NodeId, NodeId)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == n
}
