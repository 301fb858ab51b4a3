//! Capacitated routing of source demands toward a single sink.
//!
//! Every source must pick one path to the sink. An edge crossed by paths
//! carrying a total demand of `z` needs `ceil(z / q)` packet slots, each
//! paid at the edge's length. This is the routing problem the relay-aware
//! tree algorithms reduce to.

use std::collections::{BTreeMap, BTreeSet};

use crate::cost::{CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{metric_closure_weighted, shortest_path, Network, NodeId, WeightedGraph};
use crate::rat::{rat, Rational};
use crate::trees::{last_tree, LastParams};

/// A routing instance: a weighted graph, a sink, positive integer demands on
/// the sources, and the aggregation capacity `q`.
#[derive(Debug, Clone)]
pub struct CndInstance {
    pub graph: WeightedGraph,
    pub sink: NodeId,
    pub demands: BTreeMap<NodeId, u64>,
    pub capacity: u64,
}

impl CndInstance {
    pub fn new(
        graph: WeightedGraph,
        sink: NodeId,
        demands: BTreeMap<NodeId, u64>,
        capacity: u64,
    ) -> Result<Self> {
        if sink >= graph.node_count() {
            return Err(AggError::InvalidInstance(format!("sink {sink} out of range")));
        }
        if capacity == 0 {
            return Err(AggError::InvalidInstance("capacity must be at least 1".into()));
        }
        if demands.is_empty() {
            return Err(AggError::NoSources);
        }
        for (&u, &d) in &demands {
            if u >= graph.node_count() {
                return Err(AggError::InvalidInstance(format!("source {u} out of range")));
            }
            if u == sink {
                return Err(AggError::InvalidInstance("sink cannot be a source".into()));
            }
            if d == 0 {
                return Err(AggError::InvalidInstance(format!("source {u} has zero demand")));
            }
        }
        Ok(CndInstance {
            graph,
            sink,
            demands,
            capacity,
        })
    }

    /// Routing view of a network: every edge gets length `tx + rx`, sources
    /// keep their report sizes as demands, capacity is `q`.
    pub fn from_network(net: &Network, params: &CostParams) -> Result<Self> {
        params.validate()?;
        let demands = net
            .sources()
            .into_iter()
            .map(|u| (u, net.report_size(u)))
            .collect();
        CndInstance::new(net.to_weighted(params.unit())?, net.sink(), demands, params.q)
    }

    pub fn sources(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.demands.keys().copied()
    }
}

/// One simple path per source, each ending at the sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CndRoute {
    paths: BTreeMap<NodeId, Vec<NodeId>>,
}

impl CndRoute {
    pub fn new(inst: &CndInstance, paths: BTreeMap<NodeId, Vec<NodeId>>) -> Result<Self> {
        for (&u, path) in &paths {
            if path.first() != Some(&u) {
                return Err(AggError::InvalidRoute(format!(
                    "path for {u} does not start at {u}"
                )));
            }
            if path.last() != Some(&inst.sink) {
                return Err(AggError::InvalidRoute(format!(
                    "path for {u} does not end at the sink"
                )));
            }
            for pair in path.windows(2) {
                if inst.graph.weight(pair[0], pair[1]).is_none() {
                    return Err(AggError::InvalidRoute(format!(
                        "path for {u} uses missing edge ({}, {})",
                        pair[0], pair[1]
                    )));
                }
            }
            let distinct: BTreeSet<NodeId> = path.iter().copied().collect();
            if distinct.len() != path.len() {
                return Err(AggError::InvalidRoute(format!(
                    "path for {u} repeats a node"
                )));
            }
        }
        let missing: Vec<NodeId> = inst
            .sources()
            .filter(|u| !paths.contains_key(u))
            .collect();
        if !missing.is_empty() {
            return Err(AggError::InvalidRoute(format!(
                "no path for sources {missing:?}"
            )));
        }
        Ok(CndRoute { paths })
    }

    pub fn path(&self, u: NodeId) -> Option<&[NodeId]> {
        self.paths.get(&u).map(|p| p.as_slice())
    }

    pub fn paths(&self) -> impl Iterator<Item = (NodeId, &[NodeId])> {
        self.paths.iter().map(|(&u, p)| (u, p.as_slice()))
    }

    /// Total demand crossing each edge, keyed by (min, max) endpoints.
    pub fn edge_demand(&self, inst: &CndInstance) -> BTreeMap<(NodeId, NodeId), u64> {
        let mut demand = BTreeMap::new();
        for (&u, path) in &self.paths {
            let d = inst.demands[&u];
            for pair in path.windows(2) {
                let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                *demand.entry(key).or_insert(0) += d;
            }
        }
        demand
    }

    /// Union of all path edges.
    pub fn edge_union(&self) -> BTreeSet<(NodeId, NodeId)> {
        let mut union = BTreeSet::new();
        for path in self.paths.values() {
            for pair in path.windows(2) {
                union.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
            }
        }
        union
    }
}

/// Exact routing cost: `sum over edges of ceil(demand(e)/q) * length(e)`.
///
/// The same value decomposes as
/// `sum_u (demand(u)/q) * length(path_u) + sum_e (ceil(z_e) - z_e) * length(e)`
/// with `z_e = demand(e)/q`; both forms are computed independently and must
/// agree exactly, otherwise an internal error is raised.
pub fn cnd_cost(route: &CndRoute, inst: &CndInstance) -> Result<Rational> {
    // Re-validate so stale routes cannot be costed against the wrong instance.
    let route = CndRoute::new(inst, route.paths.clone())?;
    let q = rat(inst.capacity as i64);
    let mut facility = Rational::from_integer(0);
    let mut rounding = Rational::from_integer(0);
    for ((a, b), d) in route.edge_demand(inst) {
        let len = inst.graph.weight(a, b).expect("validated edge");
        let z = rat(d as i64) / q;
        let packets = rat(d.div_ceil(inst.capacity) as i64);
        facility = facility + packets * len;
        rounding = rounding + (z.ceil() - z) * len;
    }
    let mut fractional = Rational::from_integer(0);
    for (u, path) in route.paths() {
        let mut len = Rational::from_integer(0);
        for pair in path.windows(2) {
            len = len + inst.graph.weight(pair[0], pair[1]).expect("validated edge");
        }
        fractional = fractional + rat(inst.demands[&u] as i64) / q * len;
    }
    if facility != fractional + rounding {
        return Err(AggError::Internal(
            "routing cost decomposition mismatch".into(),
        ));
    }
    Ok(facility)
}

/// Remove loops from a walk: keep the first occurrence of every node and cut
/// the excursion whenever a node repeats. The result is a simple path over a
/// subset of the walk's edges, never longer than the walk.
fn loop_erase(walk: &[NodeId]) -> Vec<NodeId> {
    let mut path: Vec<NodeId> = Vec::with_capacity(walk.len());
    for &v in walk {
        if let Some(pos) = path.iter().position(|&x| x == v) {
            path.truncate(pos + 1);
        } else {
            path.push(v);
        }
    }
    path
}

/// Route every source through a (3, 2) light approximate shortest-path tree
/// of the terminals' metric closure: tree paths are expanded through witness
/// shortest paths and loop-erased. Every output path is at most 3 times the
/// source's shortest distance to the sink (checked per call), and the union
/// of the paths is light, which is what makes this a 7-approximation.
pub fn salman_route(inst: &CndInstance) -> Result<CndRoute> {
    let terminals: BTreeSet<NodeId> = inst.sources().chain([inst.sink]).collect();
    let closure = metric_closure_weighted(&inst.graph, &terminals)?;
    let root = closure.index_of(inst.sink).expect("sink is a terminal");
    let tree = last_tree(&closure.graph, root, &LastParams::default())?;
    let dist = inst.graph.distances(inst.sink);

    let mut paths = BTreeMap::new();
    for u in inst.sources() {
        let idx = closure.index_of(u).expect("source is a terminal");
        let tree_path = tree.path_to_root(idx)?;
        let mut walk: Vec<NodeId> = vec![u];
        for pair in tree_path.windows(2) {
            let seg = closure.witness(pair[0], pair[1]);
            walk.extend_from_slice(&seg[1..]);
        }
        let path = loop_erase(&walk);
        let mut len = Rational::from_integer(0);
        for pair in path.windows(2) {
            len = len
                + inst
                    .graph
                    .weight(pair[0], pair[1])
                    .ok_or_else(|| AggError::Internal("expansion left the graph".into()))?;
        }
        if len > rat(3) * dist[u] {
            return Err(AggError::Internal(format!(
                "routing invariant violated: path for {u} exceeds 3x its shortest distance"
            )));
        }
        paths.insert(u, path);
    }
    CndRoute::new(inst, paths)
}

/// Route every source independently along its shortest path. No guarantee on
/// the rounding term; useful as a baseline solver.
pub fn shortest_paths_route(inst: &CndInstance) -> Result<CndRoute> {
    let mut paths = BTreeMap::new();
    for u in inst.sources() {
        paths.insert(u, shortest_path(&inst.graph, u, inst.sink));
    }
    CndRoute::new(inst, paths)
}

/// Read the root paths of an aggregation tree as a routing solution. When
/// the tree spans the instance's sources and edge lengths are uniform
/// `tx + rx`, the routing cost equals the tree's energy cost exactly.
pub fn tree_to_cnd_route(tree: &RoutingTree, inst: &CndInstance) -> Result<CndRoute> {
    let mut paths = BTreeMap::new();
    for u in inst.sources() {
        if !tree.contains(u) {
            return Err(AggError::InvalidRoute(format!(
                "tree does not contain source {u}"
            )));
        }
        paths.insert(u, tree.path_to_root(u)?);
    }
    CndRoute::new(inst, paths)
}

/// A capacitated routing solver with an optional proven approximation factor.
pub trait CndSolver {
    fn name(&self) -> &'static str;
    /// Proven approximation factor, if any.
    fn approx_factor(&self) -> Option<u32>;
    fn solve(&self, inst: &CndInstance) -> Result<CndRoute>;
}

/// The light-tree router; proven factor 7.
pub struct SalmanSolver;

impl CndSolver for SalmanSolver {
    fn name(&self) -> &'static str {
        "salman"
    }

    fn approx_factor(&self) -> Option<u32> {
        Some(7)
    }

    fn solve(&self, inst: &CndInstance) -> Result<CndRoute> {
        salman_route(inst)
    }
}

/// Independent shortest paths; no proven factor.
pub struct ShortestPathsSolver;

impl CndSolver for ShortestPathsSolver {
    fn name(&self) -> &'static str {
        "sp-only"
    }

    fn approx_factor(&self) -> Option<u32> {
        None
    }

    fn solve(&self, inst: &CndInstance) -> Result<CndRoute> {
        shortest_paths_route(inst)
    }
}

/// Look a solver up by its registered name.
pub fn solver_by_name(name: &str) -> Result<Box<dyn CndSolver>> {
    match name {
        "salman" => Ok(Box::new(SalmanSolver)),
        "sp-only" => Ok(Box::new(ShortestPathsSolver)),
        other => Err(AggError::UnknownSolver(other.to_string())),
    }
}
