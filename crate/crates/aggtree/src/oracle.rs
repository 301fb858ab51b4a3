//! Exact reference solvers by exhaustive enumeration.
//!
//! These are deliberately independent of the approximation algorithms: they
//! enumerate parent-choice vectors directly, so they can certify optimal
//! costs, count spanning trees, and answer budget-feasibility questions on
//! small instances. Instance size is capped; the cap can be raised through
//! the `AGGTREE_ORACLE_CAP` environment variable or the `_with_cap`
//! variants.

use std::collections::{BTreeMap, BTreeSet};

use crate::cnd::{CndInstance, CndRoute};
use crate::cost::{prune_useless_relays, CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId, Subgraph};
use crate::rat::{rat, Rational};
use crate::trees::steiner_tree_2approx;

/// Default node-count cap for the spanning-tree oracle.
pub const DEFAULT_MECAT_CAP: usize = 9;
/// Default node-count cap for the relay-subset oracle.
pub const DEFAULT_MECAT_RN_CAP: usize = 10;

/// Environment variable overriding both oracle caps.
pub const ORACLE_CAP_ENV: &str = "AGGTREE_ORACLE_CAP";

fn oracle_cap(default: usize) -> Result<usize> {
    match std::env::var(ORACLE_CAP_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|_| AggError::Parse(format!("{ORACLE_CAP_ENV} must be an integer, got {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(AggError::OracleCap { size, cap })
    } else {
        Ok(())
    }
}

enum Mode {
    /// Count every complete tree; no pruning, no best tracking.
    Count,
    /// Track the cheapest tree; the first one found at the minimum wins.
    Minimize,
    /// Stop at the first tree whose total packet count is within budget.
    Feasible(u64),
}

/// Enumerates parent-choice vectors over a member set in lexicographic
/// order (children ascending, candidate parents ascending), maintaining
/// incremental descendant loads so partial assignments carry an admissible
/// packet-count lower bound.
struct Search {
    q: u64,
    root: NodeId,
    /// Members except the root, ascending.
    order: Vec<NodeId>,
    /// Candidate parents per `order` entry, ascending.
    cands: Vec<Vec<NodeId>>,
    parent: Vec<Option<NodeId>>,
    /// Report size of the node plus everything currently attached below it.
    carried: Vec<u64>,
    /// ceil(carried / q) per node, kept in sync with `carried`.
    packets: Vec<u64>,
    /// Sum of `packets` over `order`: a lower bound on the total packets of
    /// any completion, exact once every node is assigned.
    lb_packets: u64,
    mode: Mode,
    count: u64,
    best: Option<(BTreeMap<NodeId, NodeId>, u64)>,
}

impl Search {
    fn new(net: &Network, q: u64, root: NodeId, members: &BTreeSet<NodeId>, mode: Mode) -> Self {
        debug_assert!(members.contains(&root));
        let order: Vec<NodeId> = members.iter().copied().filter(|&v| v != root).collect();
        let cands = order
            .iter()
            .map(|&v| {
                net.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|p| members.contains(p))
                    .collect()
            })
            .collect();
        let n = net.node_count();
        let mut carried = vec![0u64; n];
        let mut packets = vec![0u64; n];
        let mut lb_packets = 0u64;
        for &v in &order {
            carried[v] = net.report_size(v);
            packets[v] = carried[v].div_ceil(q);
            lb_packets += packets[v];
        }
        Search {
            q,
            root,
            order,
            cands,
            parent: vec![None; n],
            carried,
            packets,
            lb_packets,
            mode,
            count: 0,
            best: None,
        }
    }

    /// Does adding edge `v -> p` close a cycle among assigned parents?
    fn creates_cycle(&self, v: NodeId, p: NodeId) -> bool {
        let mut u = p;
        loop {
            if u == v {
                return true;
            }
            match self.parent[u] {
                Some(next) => u = next,
                None => return false,
            }
        }
    }

    /// Push `v`'s current subtree weight up the assigned chain above `p`.
    fn attach(&mut self, v: NodeId, p: NodeId) {
        let w = self.carried[v];
        let mut u = p;
        while u != self.root {
            self.carried[u] += w;
            let np = self.carried[u].div_ceil(self.q);
            self.lb_packets += np - self.packets[u];
            self.packets[u] = np;
            match self.parent[u] {
                Some(next) => u = next,
                None => break,
            }
        }
        self.parent[v] = Some(p);
    }

    fn detach(&mut self, v: NodeId, p: NodeId) {
        self.parent[v] = None;
        let w = self.carried[v];
        let mut u = p;
        while u != self.root {
            self.carried[u] -= w;
            let np = self.carried[u].div_ceil(self.q);
            self.lb_packets -= self.packets[u] - np;
            self.packets[u] = np;
            match self.parent[u] {
                Some(next) => u = next,
                None => break,
            }
        }
    }

    fn prune(&self) -> bool {
        match self.mode {
            Mode::Count => false,
            // A completion can only add load, so a partial bound at or above
            // the incumbent can never beat it; the first minimum found is
            // reached with a strictly larger incumbent and survives.
            Mode::Minimize => match &self.best {
                Some((_, b)) => self.lb_packets >= *b,
                None => false,
            },
            // Equality must be kept: the completion may land exactly on
            // the budget.
            Mode::Feasible(budget) => self.lb_packets > budget,
        }
    }

    /// Returns true when the search should stop early.
    fn complete(&mut self) -> bool {
        match self.mode {
            Mode::Count => {
                self.count += 1;
                false
            }
            Mode::Minimize => {
                let better = match &self.best {
                    Some((_, b)) => self.lb_packets < *b,
                    None => true,
                };
                if better {
                    self.best = Some((self.snapshot(), self.lb_packets));
                }
                false
            }
            Mode::Feasible(budget) => {
                if self.lb_packets <= budget {
                    self.best = Some((self.snapshot(), self.lb_packets));
                    true
                } else {
                    false
                }
            }
        }
    }

    fn snapshot(&self) -> BTreeMap<NodeId, NodeId> {
        self.order
            .iter()
            .map(|&v| (v, self.parent[v].expect("complete assignment")))
            .collect()
    }

    fn run(&mut self) {
        self.dfs(0);
    }

    fn dfs(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.complete();
        }
        let v = self.order[i];
        for ci in 0..self.cands[i].len() {
            let p = self.cands[i][ci];
            if self.creates_cycle(v, p) {
                continue;
            }
            self.attach(v, p);
            let stop = !self.prune() && self.dfs(i + 1);
            self.detach(v, p);
            if stop {
                return true;
            }
        }
        false
    }
}

/// Number of spanning trees of the network, counted by enumeration.
pub fn count_spanning_trees(net: &Network) -> Result<u64> {
    count_spanning_trees_with_cap(net, oracle_cap(DEFAULT_MECAT_CAP)?)
}

pub fn count_spanning_trees_with_cap(net: &Network, cap: usize) -> Result<u64> {
    check_cap(net.node_count(), cap)?;
    let members: BTreeSet<NodeId> = (0..net.node_count()).collect();
    let mut search = Search::new(net, 1, net.sink(), &members, Mode::Count);
    search.run();
    Ok(search.count)
}

fn minimize_over(
    net: &Network,
    params: &CostParams,
    members: &BTreeSet<NodeId>,
) -> Option<(BTreeMap<NodeId, NodeId>, u64)> {
    let mut search = Search::new(net, params.q, net.sink(), members, Mode::Minimize);
    search.run();
    search.best
}

/// Minimum-cost spanning aggregation tree, found by exhaustive enumeration.
/// Every node of the network is a tree member. Returns the first tree in
/// parent-vector order that attains the minimum, with its exact cost.
pub fn brute_force_mecat(net: &Network, params: &CostParams) -> Result<(RoutingTree, Rational)> {
    brute_force_mecat_with_cap(net, params, oracle_cap(DEFAULT_MECAT_CAP)?)
}

pub fn brute_force_mecat_with_cap(
    net: &Network,
    params: &CostParams,
    cap: usize,
) -> Result<(RoutingTree, Rational)> {
    params.validate()?;
    check_cap(net.node_count(), cap)?;
    let members: BTreeSet<NodeId> = (0..net.node_count()).collect();
    let (parent, packets) = minimize_over(net, params, &members)
        .ok_or_else(|| AggError::Internal("connected network has no spanning tree".into()))?;
    Ok((
        RoutingTree::new(net.sink(), parent),
        params.unit() * rat(packets as i64),
    ))
}

/// Is there a spanning aggregation tree with cost at most `budget`?
/// Returns the first such tree in parent-vector order, if any.
pub fn mecat_feasible(
    net: &Network,
    params: &CostParams,
    budget: Rational,
) -> Result<Option<RoutingTree>> {
    mecat_feasible_with_cap(net, params, budget, oracle_cap(DEFAULT_MECAT_CAP)?)
}

pub fn mecat_feasible_with_cap(
    net: &Network,
    params: &CostParams,
    budget: Rational,
    cap: usize,
) -> Result<Option<RoutingTree>> {
    params.validate()?;
    check_cap(net.node_count(), cap)?;
    let Some(budget_packets) = budget_in_packets(budget, params) else {
        return Ok(None);
    };
    let members: BTreeSet<NodeId> = (0..net.node_count()).collect();
    let mut search = Search::new(net, params.q, net.sink(), &members, Mode::Feasible(budget_packets));
    search.run();
    Ok(search
        .best
        .map(|(parent, _)| RoutingTree::new(net.sink(), parent)))
}

/// Cost is `unit * packets`, so a cost budget is a packet budget of
/// `floor(budget / unit)`. `None` means no tree can ever fit.
fn budget_in_packets(budget: Rational, params: &CostParams) -> Option<u64> {
    let per_packet = params.unit();
    let ratio = budget / per_packet;
    if ratio < rat(0) {
        return None;
    }
    Some(ratio.floor().to_integer() as u64)
}

/// Minimum-cost aggregation tree over the sources plus any subset of the
/// relays, by enumerating relay subsets (smaller subsets first) and running
/// the spanning-tree search inside each. Relays that end up carrying
/// nothing are pruned from the returned tree.
pub fn brute_force_mecat_rn(
    net: &Network,
    params: &CostParams,
) -> Result<(RoutingTree, Rational)> {
    brute_force_mecat_rn_with_cap(net, params, oracle_cap(DEFAULT_MECAT_RN_CAP)?)
}

pub fn brute_force_mecat_rn_with_cap(
    net: &Network,
    params: &CostParams,
    cap: usize,
) -> Result<(RoutingTree, Rational)> {
    params.validate()?;
    check_cap(net.node_count(), cap)?;
    let sources = net.sources();
    let relays = net.relays();
    let mut required: BTreeSet<NodeId> = sources.iter().copied().collect();
    required.insert(net.sink());

    let mut best: Option<(BTreeMap<NodeId, NodeId>, u64)> = None;
    'subsets: for k in 0..=relays.len() {
        // In a minimal tree every relay carries load (an idle relay could be
        // pruned, and the pruned tree lives in a smaller subset that was
        // already enumerated), so the cost is at least one packet per
        // member. Once that floor reaches the incumbent, larger subsets
        // cannot help.
        if let Some((_, b)) = &best {
            if (sources.len() + k) as u64 >= *b && k > 0 {
                break 'subsets;
            }
        }
        for mask in masks_of_popcount(relays.len(), k) {
            let mut members = required.clone();
            for (i, &r) in relays.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    members.insert(r);
                }
            }
            if let Some((parent, packets)) = minimize_over(net, params, &members) {
                let better = match &best {
                    Some((_, b)) => packets < *b,
                    None => true,
                };
                if better {
                    best = Some((parent, packets));
                }
            }
        }
    }
    let (parent, packets) =
        best.ok_or_else(|| AggError::Disconnected)?;
    let tree = prune_useless_relays(&RoutingTree::new(net.sink(), parent), net)?;
    Ok((tree, params.unit() * rat(packets as i64)))
}

/// Is there an aggregation tree over the sources plus some relay subset
/// with cost at most `budget`? Returns the first found, pruned of idle
/// relays (which preserves its cost).
pub fn mecat_rn_feasible(
    net: &Network,
    params: &CostParams,
    budget: Rational,
) -> Result<Option<RoutingTree>> {
    mecat_rn_feasible_with_cap(net, params, budget, oracle_cap(DEFAULT_MECAT_RN_CAP)?)
}

pub fn mecat_rn_feasible_with_cap(
    net: &Network,
    params: &CostParams,
    budget: Rational,
    cap: usize,
) -> Result<Option<RoutingTree>> {
    params.validate()?;
    check_cap(net.node_count(), cap)?;
    let Some(budget_packets) = budget_in_packets(budget, params) else {
        return Ok(None);
    };
    let sources = net.sources();
    let relays = net.relays();
    let mut required: BTreeSet<NodeId> = sources.iter().copied().collect();
    required.insert(net.sink());

    for k in 0..=relays.len() {
        // Same packet floor as in minimization: a tree over k loaded relays
        // costs at least (|sources| + k) packets, and any tree with idle
        // relays has an equal-cost twin in a smaller subset.
        if (sources.len() + k) as u64 > budget_packets {
            break;
        }
        for mask in masks_of_popcount(relays.len(), k) {
            let mut members = required.clone();
            for (i, &r) in relays.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    members.insert(r);
                }
            }
            let mut search = Search::new(
                net,
                params.q,
                net.sink(),
                &members,
                Mode::Feasible(budget_packets),
            );
            search.run();
            if let Some((parent, _)) = search.best {
                let tree = prune_useless_relays(&RoutingTree::new(net.sink(), parent), net)?;
                return Ok(Some(tree));
            }
        }
    }
    Ok(None)
}

/// All `width`-bit masks with exactly `ones` bits set, ascending.
fn masks_of_popcount(width: usize, ones: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for mask in 0..(1u64 << width) {
        if mask.count_ones() as usize == ones {
            out.push(mask);
        }
    }
    out
}

/// Minimum number of edges in any tree containing all terminals, by
/// enumerating subsets of the optional nodes. Returns one minimum tree.
pub fn brute_force_steiner(
    net: &Network,
    terminals: &BTreeSet<NodeId>,
) -> Result<(Subgraph, usize)> {
    if terminals.is_empty() {
        return Err(AggError::InvalidInstance("no terminals".into()));
    }
    for &t in terminals {
        if t >= net.node_count() {
            return Err(AggError::InvalidInstance(format!("terminal {t} out of range")));
        }
    }
    let optional: Vec<NodeId> = (0..net.node_count())
        .filter(|v| !terminals.contains(v))
        .collect();
    check_cap(optional.len(), 16)?;

    let mut best: Option<(Subgraph, usize)> = None;
    for mask in 0u64..(1 << optional.len()) {
        let mut nodes: BTreeSet<NodeId> = terminals.clone();
        for (i, &v) in optional.iter().enumerate() {
            if mask & (1 << i) != 0 {
                nodes.insert(v);
            }
        }
        let edges = nodes.len() - 1;
        if let Some((_, b)) = &best {
            if edges >= *b {
                continue;
            }
        }
        if let Some(tree) = spanning_tree_of_induced(net, &nodes) {
            best = Some((tree, edges));
        }
    }
    best.ok_or_else(|| AggError::Internal("connected network has no Steiner tree".into()))
}

/// BFS spanning tree of the subgraph induced by `nodes`, if connected.
fn spanning_tree_of_induced(net: &Network, nodes: &BTreeSet<NodeId>) -> Option<Subgraph> {
    let &start = nodes.iter().next()?;
    let mut tree = Subgraph::new();
    tree.add_node(start);
    let mut seen = BTreeSet::from([start]);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in net.neighbors(u) {
            if nodes.contains(&v) && seen.insert(v) {
                tree.add_edge(u, v);
                queue.push_back(v);
            }
        }
    }
    (seen.len() == nodes.len()).then_some(tree)
}

/// Exact minimum-cost routing by enumerating every combination of simple
/// paths, one per source, with monotone facility-cost pruning.
pub fn brute_force_cnd(inst: &CndInstance) -> Result<(CndRoute, Rational)> {
    check_cap(inst.graph.node_count(), 10)?;
    let sources: Vec<NodeId> = inst.sources().collect();
    check_cap(sources.len(), 8)?;

    let mut all_paths: Vec<Vec<Vec<NodeId>>> = Vec::new();
    for &u in &sources {
        let mut paths = Vec::new();
        let mut prefix = vec![u];
        let mut on_path = vec![false; inst.graph.node_count()];
        on_path[u] = true;
        simple_paths(inst, u, &mut prefix, &mut on_path, &mut paths);
        if paths.is_empty() {
            return Err(AggError::Disconnected);
        }
        paths.sort();
        all_paths.push(paths);
    }

    struct Ctx<'a> {
        inst: &'a CndInstance,
        sources: &'a [NodeId],
        all_paths: &'a [Vec<Vec<NodeId>>],
        demand: BTreeMap<(NodeId, NodeId), u64>,
        chosen: Vec<usize>,
        best: Option<(Vec<usize>, Rational)>,
    }

    fn facility_cost(inst: &CndInstance, demand: &BTreeMap<(NodeId, NodeId), u64>) -> Rational {
        let mut total = Rational::from_integer(0);
        for (&(a, b), &d) in demand {
            total = total
                + rat(d.div_ceil(inst.capacity) as i64)
                    * inst.graph.weight(a, b).expect("path edge");
        }
        total
    }

    fn go(ctx: &mut Ctx, i: usize) {
        // Adding a path never lowers any edge's slot count, so the current
        // facility cost is an admissible bound for every completion.
        let partial = facility_cost(ctx.inst, &ctx.demand);
        if let Some((_, b)) = &ctx.best {
            if partial >= *b {
                return;
            }
        }
        if i == ctx.sources.len() {
            ctx.best = Some((ctx.chosen.clone(), partial));
            return;
        }
        let u = ctx.sources[i];
        let d = ctx.inst.demands[&u];
        for (pi, path) in ctx.all_paths[i].iter().enumerate() {
            for pair in path.windows(2) {
                let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                *ctx.demand.entry(key).or_insert(0) += d;
            }
            ctx.chosen.push(pi);
            go(ctx, i + 1);
            ctx.chosen.pop();
            for pair in path.windows(2) {
                let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                let slot = ctx.demand.get_mut(&key).expect("just added");
                *slot -= d;
                if *slot == 0 {
                    ctx.demand.remove(&key);
                }
            }
        }
    }

    let mut ctx = Ctx {
        inst,
        sources: &sources,
        all_paths: &all_paths,
        demand: BTreeMap::new(),
        chosen: Vec::new(),
        best: None,
    };
    go(&mut ctx, 0);
    let (chosen, cost) = ctx.best.ok_or(AggError::Disconnected)?;
    let paths: BTreeMap<NodeId, Vec<NodeId>> = sources
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, all_paths[i][chosen[i]].clone()))
        .collect();
    let route = CndRoute::new(inst, paths)?;
    debug_assert_eq!(crate::cnd::cnd_cost(&route, inst)?, cost);
    Ok((route, cost))
}

fn simple_paths(
    inst: &CndInstance,
    u: NodeId,
    prefix: &mut Vec<NodeId>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<NodeId>>,
) {
    if u == inst.sink {
        out.push(prefix.clone());
        return;
    }
    let nbrs: Vec<NodeId> = inst.graph.neighbors(u).iter().map(|&(v, _)| v).collect();
    for v in nbrs {
        if !on_path[v] {
            on_path[v] = true;
            prefix.push(v);
            simple_paths(inst, v, prefix, on_path, out);
            prefix.pop();
            on_path[v] = false;
        }
    }
}

/// Certified lower bound on the cost of any aggregation tree for the
/// network: the larger of the fractional-load bound (every report must
/// travel at least its hop distance, at 1/q packet per unit) and the
/// structural bound (a tree over the sources has at least
/// max(|Steiner edges| / 2, |sources|) edges, each carrying a packet).
pub fn lower_bound(net: &Network, params: &CostParams) -> Result<Rational> {
    params.validate()?;
    let sources = net.sources();
    if sources.is_empty() {
        return Ok(rat(0));
    }
    let hop = net.hop_distances(net.sink())?;
    let q = rat(params.q as i64);
    let mut fractional = Rational::from_integer(0);
    for &u in &sources {
        fractional = fractional + rat(net.report_size(u) as i64) / q * rat(hop[u] as i64);
    }
    let mut terminals: BTreeSet<NodeId> = sources.iter().copied().collect();
    terminals.insert(net.sink());
    let steiner_edges = steiner_tree_2approx(net, &terminals)?.member_count() - 1;
    let structural = std::cmp::max(
        rat(steiner_edges as i64) / rat(2),
        rat(sources.len() as i64),
    );
    Ok(params.unit() * std::cmp::max(fractional, structural))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::tree_cost;
    use crate::graph::Network;

    /// Spanning-tree count via the matrix-tree theorem, with a fraction-free
    /// integer determinant. Independent of the enumerator.
    fn kirchhoff_count(net: &Network) -> i128 {
        let n = net.node_count();
        let mut lap = vec![vec![0i128; n]; n];
        for &(a, b) in net.edges() {
            lap[a][a] += 1;
            lap[b][b] += 1;
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
        // Delete the sink's row and column, take the determinant.
        let keep: Vec<usize> = (0..n).filter(|&v| v != net.sink()).collect();
        let mut m: Vec<Vec<i128>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| lap[i][j]).collect())
            .collect();
        let k = m.len();
        if k == 0 {
            return 1;
        }
        let mut sign = 1i128;
        let mut prev = 1i128;
        for col in 0..k - 1 {
            if m[col][col] == 0 {
                match (col + 1..k).find(|&r| m[r][col] != 0) {
                    Some(r) => {
                        m.swap(col, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in col + 1..k {
                for j in col + 1..k {
                    m[i][j] = (m[i][j] * m[col][col] - m[i][col] * m[col][j]) / prev;
                }
                m[i][col] = 0;
            }
            prev = m[col][col];
        }
        sign * m[k - 1][k - 1]
    }

    fn example_net() -> Network {
        Network::new(
            8,
            0,
            vec![0, 2, 2, 2, 1, 1, 2, 1],
            vec![
                (0, 1),
                (0, 2),
                (1, 3),
                (3, 7),
                (7, 6),
                (2, 4),
                (2, 5),
                (2, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_count_matches_matrix_tree_theorem() {
        // 4-cycle: four spanning trees.
        let cycle = Network::new(4, 0, vec![0, 1, 1, 1], vec![(0, 1), (1, 2), (2, 3), (3, 0)])
            .unwrap();
        assert_eq!(count_spanning_trees(&cycle).unwrap(), 4);
        assert_eq!(kirchhoff_count(&cycle), 4);

        // Complete graph on 4 nodes: 4^2 = 16.
        let k4 = Network::new(
            4,
            0,
            vec![0, 1, 1, 1],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(count_spanning_trees(&k4).unwrap(), 16);
        assert_eq!(kirchhoff_count(&k4), 16);

        let net = example_net();
        assert_eq!(
            count_spanning_trees(&net).unwrap() as i128,
            kirchhoff_count(&net)
        );
    }

    #[test]
    fn spanning_minimum_on_the_two_branch_network() {
        let net = example_net();
        let params = CostParams::new(3, rat(1), rat(1)).unwrap();
        let (tree, cost) = brute_force_mecat(&net, &params).unwrap();
        tree.validate(&net).unwrap();
        assert!(tree.spans_all(&net));
        assert_eq!(tree_cost(&tree, &net, &params).unwrap(), cost);
        assert_eq!(cost, rat(18));
    }

    #[test]
    fn minimum_can_beat_every_shortest_path_tree() {
        // Diamond with a heavy far node: hanging 4 under the longer branch
        // lets its reports ride shared packets.
        let net = Network::new(
            5,
            0,
            vec![0, 5, 1, 1, 5],
            vec![(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
        )
        .unwrap();
        let params = CostParams::new(9, rat(1), rat(1)).unwrap();
        let (tree, cost) = brute_force_mecat(&net, &params).unwrap();
        assert_eq!(cost, rat(8));
        // The winning tree routes 4 through the hop-longer branch.
        assert_eq!(tree.parent(4), Some(3));
        // Any min-hop parent assignment pays 10.
        let spt = crate::algos::solve_mecat_spt(&net, &params).unwrap();
        assert_eq!(tree_cost(&spt, &net, &params).unwrap(), rat(10));
    }

    #[test]
    fn relay_subset_oracle_skips_idle_relays() {
        // Relay 5 shortcuts 3 and 4 home; relay 2's detour is useless.
        let net = Network::new(
            6,
            0,
            vec![0, 1, 0, 1, 1, 0],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (0, 5)],
        )
        .unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        let (tree, cost) = brute_force_mecat_rn(&net, &params).unwrap();
        tree.validate(&net).unwrap();
        assert!(tree.spans_sources(&net));
        assert!(crate::cost::useless_relays(&tree, &net).unwrap().is_empty());
        assert_eq!(tree_cost(&tree, &net, &params).unwrap(), cost);
        // 1 direct; 3 and 4 through relay 5: loads 1, 2, 1, 2 all fit in
        // one packet at q = 2: 4 packets * 2 energy. The detour through
        // relay 2 would funnel 3 reports through node 1 for 5 packets.
        assert_eq!(cost, rat(8));
        assert!(!tree.contains(2));
    }

    #[test]
    fn feasibility_brackets_the_minimum() {
        let net = example_net();
        let params = CostParams::new(3, rat(1), rat(1)).unwrap();
        assert!(mecat_feasible(&net, &params, rat(18)).unwrap().is_some());
        assert!(mecat_feasible(&net, &params, rat(17)).unwrap().is_none());
        assert!(mecat_feasible(&net, &params, rat(-2)).unwrap().is_none());

        let tree = mecat_feasible(&net, &params, rat(20)).unwrap().unwrap();
        assert!(tree_cost(&tree, &net, &params).unwrap() <= rat(20));
    }

    #[test]
    fn caps_are_enforced_and_overridable() {
        let edges: Vec<(usize, usize)> = (0..10).map(|i| (i, i + 1)).collect();
        let mut sizes = vec![1u64; 11];
        sizes[0] = 0;
        let net = Network::new(11, 0, sizes, edges).unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        assert!(matches!(
            brute_force_mecat(&net, &params),
            Err(AggError::OracleCap { size: 11, cap: 9 })
        ));
        let (tree, _) = brute_force_mecat_with_cap(&net, &params, 11).unwrap();
        assert!(tree.spans_all(&net));
    }

    #[test]
    fn steiner_enumeration_certifies_the_heuristic() {
        // Sources 3, 4 reach the sink through relay chains; optional node 5
        // is a dead end the optimum must skip.
        let net = Network::new(
            6,
            0,
            vec![0, 0, 0, 1, 1, 0],
            vec![(0, 1), (1, 3), (1, 2), (2, 4), (0, 5), (5, 4)],
        )
        .unwrap();
        let terminals: BTreeSet<NodeId> = [0, 3, 4].into_iter().collect();
        let (tree, opt_edges) = brute_force_steiner(&net, &terminals).unwrap();
        assert_eq!(opt_edges, 4);
        assert_eq!(tree.edge_count(), 4);
        let approx = steiner_tree_2approx(&net, &terminals).unwrap();
        assert!(approx.member_count() - 1 <= 2 * opt_edges);
    }

    #[test]
    fn routing_minimum_depends_on_capacity() {
        // 5-cycle, sink 0, unit demands at 2 and 3. With q = 2 the reports
        // share one side (3 slots); with q = 1 they split (4 slots).
        let net = Network::new(
            5,
            0,
            vec![0, 0, 1, 1, 0],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        )
        .unwrap();
        let shared = CostParams::new(2, rat(1), rat(0)).unwrap();
        let inst = CndInstance::from_network(&net, &shared).unwrap();
        let (_, cost) = brute_force_cnd(&inst).unwrap();
        assert_eq!(cost, rat(3));

        let unshared = CostParams::new(1, rat(1), rat(0)).unwrap();
        let inst = CndInstance::from_network(&net, &unshared).unwrap();
        let (_, cost) = brute_force_cnd(&inst).unwrap();
        assert_eq!(cost, rat(4));
    }

    #[test]
    fn lower_bound_is_below_the_oracle_on_small_networks() {
        let nets = vec![
            example_net(),
            Network::new(
                5,
                0,
                vec![0, 5, 1, 1, 5],
                vec![(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
            )
            .unwrap(),
            Network::new(4, 0, vec![0, 1, 2, 3], vec![(0, 1), (1, 2), (2, 3), (3, 0)])
                .unwrap(),
        ];
        for net in nets {
            for q in [1, 2, 3, 10] {
                let params = CostParams::new(q, rat(2), rat(1)).unwrap();
                let lb = lower_bound(&net, &params).unwrap();
                let (_, opt) = brute_force_mecat(&net, &params).unwrap();
                assert!(lb <= opt, "lb {lb} above optimum {opt} at q = {q}");
            }
        }
    }

    #[test]
    fn lower_bound_is_tight_on_a_path() {
        // Path r - 1 - 2: loads 2 then 1 at q = 2 give 1 + 1 packets, and
        // the fractional bound (1/2)*1 + (1/2)*2 = 3/2 rounds into it via
        // the structural bound (2 sources).
        let net = Network::new(3, 0, vec![0, 1, 1], vec![(0, 1), (1, 2)]).unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        let lb = lower_bound(&net, &params).unwrap();
        let (_, opt) = brute_force_mecat(&net, &params).unwrap();
        assert_eq!(lb, rat(4));
        assert_eq!(opt, rat(4));
    }
}
