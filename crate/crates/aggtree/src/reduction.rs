//! Hardness gadgets: both tree problems encode classic NP-complete
//! problems, and these constructions make the encodings executable in both
//! directions, so the equivalences can be checked exhaustively on small
//! instances.
//!
//! - Load-balanced semi-matching embeds into the spanning-tree problem:
//!   assignment loads become aggregation loads on the middle layer.
//! - Dominating set embeds into the relay-subset problem: chosen relays
//!   are exactly the dominating nodes.

use std::collections::{BTreeMap, BTreeSet};

use crate::cost::{tree_cost, CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId};
use crate::rat::{rat, Rational};

/// Bipartite load-balancing instance: every left node (with a positive
/// integer weight) must be assigned to an adjacent right node; feasible
/// when some assignment keeps every right node's total weight at most `k`.
#[derive(Debug, Clone)]
pub struct LbsmInstance {
    pub nu: usize,
    pub nv: usize,
    pub weights: Vec<u64>,
    pub edges: BTreeSet<(usize, usize)>,
    pub k: u64,
}

impl LbsmInstance {
    pub fn new(
        nu: usize,
        nv: usize,
        weights: Vec<u64>,
        edges: BTreeSet<(usize, usize)>,
        k: u64,
    ) -> Result<Self> {
        if weights.len() != nu {
            return Err(AggError::InvalidInstance(format!(
                "expected {nu} weights, got {}",
                weights.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(AggError::InvalidInstance("weights must be positive".into()));
        }
        if k == 0 {
            return Err(AggError::InvalidInstance("k must be positive".into()));
        }
        for &(i, j) in &edges {
            if i >= nu || j >= nv {
                return Err(AggError::InvalidInstance(format!(
                    "edge ({i}, {j}) out of range"
                )));
            }
        }
        Ok(LbsmInstance {
            nu,
            nv,
            weights,
            edges,
            k,
        })
    }

    fn neighbors_of_left(&self, i: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(_, j)| j)
            .collect()
    }

    /// Max right-node load of an assignment (`assignment[i]` = right index).
    pub fn max_load(&self, assignment: &[usize]) -> Result<u64> {
        if assignment.len() != self.nu {
            return Err(AggError::InvalidInstance(
                "assignment length must match left side".into(),
            ));
        }
        let mut load = vec![0u64; self.nv];
        for (i, &j) in assignment.iter().enumerate() {
            if !self.edges.contains(&(i, j)) {
                return Err(AggError::InvalidInstance(format!(
                    "assignment uses missing edge ({i}, {j})"
                )));
            }
            load[j] += self.weights[i];
        }
        Ok(load.into_iter().max().unwrap_or(0))
    }
}

/// First assignment (in lexicographic order) with max load at most `k`,
/// found by direct backtracking over the bipartite instance.
pub fn lbsm_feasible_brute(inst: &LbsmInstance) -> Option<Vec<usize>> {
    fn go(
        inst: &LbsmInstance,
        i: usize,
        load: &mut Vec<u64>,
        picked: &mut Vec<usize>,
    ) -> bool {
        if i == inst.nu {
            return true;
        }
        for j in inst.neighbors_of_left(i) {
            if load[j] + inst.weights[i] <= inst.k {
                load[j] += inst.weights[i];
                picked.push(j);
                if go(inst, i + 1, load, picked) {
                    return true;
                }
                picked.pop();
                load[j] -= inst.weights[i];
            }
        }
        false
    }
    let mut load = vec![0u64; inst.nv];
    let mut picked = Vec::new();
    go(inst, 0, &mut load, &mut picked).then_some(picked)
}

/// Smallest achievable max load over all assignments, if any exists.
pub fn lbsm_min_max_load(inst: &LbsmInstance) -> Option<u64> {
    fn go(inst: &LbsmInstance, i: usize, load: &mut Vec<u64>, best: &mut Option<u64>) {
        let current = load.iter().copied().max().unwrap_or(0);
        if let Some(b) = best {
            if current >= *b {
                return;
            }
        }
        if i == inst.nu {
            *best = Some(current);
            return;
        }
        for j in inst.neighbors_of_left(i) {
            load[j] += inst.weights[i];
            go(inst, i + 1, load, best);
            load[j] -= inst.weights[i];
        }
    }
    let mut load = vec![0u64; inst.nv];
    let mut best = None;
    go(inst, 0, &mut load, &mut best);
    best
}

/// The spanning-tree encoding of a bipartite load-balancing instance:
/// a sink over the right side, the left side behind it, and below each
/// left node enough pendant nodes to make its subtree weigh `w(u)`.
/// Capacity is `k + 1`, and the budget is met exactly when every right
/// node can forward everything it hears in a single packet.
pub struct LbsmGadget {
    pub net: Network,
    pub params: CostParams,
    pub budget: Rational,
    nu: usize,
    nv: usize,
}

impl LbsmGadget {
    pub fn left_node(&self, i: usize) -> NodeId {
        debug_assert!(i < self.nu);
        1 + i
    }

    pub fn right_node(&self, j: usize) -> NodeId {
        debug_assert!(j < self.nv);
        1 + self.nu + j
    }

    fn right_index(&self, v: NodeId) -> Option<usize> {
        (v >= 1 + self.nu && v < 1 + self.nu + self.nv).then(|| v - 1 - self.nu)
    }
}

/// Build the spanning-tree gadget. Fails when the bipartite instance has a
/// left node with no edges: the gadget graph is then disconnected, exactly
/// mirroring infeasibility.
pub fn lbsm_gadget(inst: &LbsmInstance) -> Result<LbsmGadget> {
    let q = inst
        .k
        .checked_add(1)
        .ok_or_else(|| AggError::InvalidInstance("k too large".into()))?;
    let pendant_total: u64 = inst.weights.iter().map(|&w| w - 1).sum();
    let n = 1 + inst.nu + inst.nv + pendant_total as usize;

    let mut sizes = vec![1u64; n];
    sizes[0] = 0;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for j in 0..inst.nv {
        edges.push((0, 1 + inst.nu + j));
    }
    for &(i, j) in &inst.edges {
        edges.push((1 + i, 1 + inst.nu + j));
    }
    let mut next = 1 + inst.nu + inst.nv;
    for (i, &w) in inst.weights.iter().enumerate() {
        for _ in 1..w {
            edges.push((1 + i, next));
            next += 1;
        }
    }

    let net = Network::new(n, 0, sizes, edges)?;
    let per_left: u64 = inst.weights.iter().map(|&w| w.div_ceil(q)).sum();
    let budget = rat(2) * (rat(pendant_total as i64) + rat(per_left as i64) + rat(inst.nv as i64));
    let params = CostParams::new(q, rat(1), rat(1))?.with_budget(budget);
    Ok(LbsmGadget {
        net,
        params,
        budget,
        nu: inst.nu,
        nv: inst.nv,
    })
}

/// Turn an assignment into the canonical gadget tree: right nodes under the
/// sink, left nodes under their assigned right node, pendants under their
/// owner. When the assignment's max load is at most `k`, the tree's cost
/// meets the budget.
pub fn semi_matching_to_tree(
    inst: &LbsmInstance,
    gadget: &LbsmGadget,
    assignment: &[usize],
) -> Result<RoutingTree> {
    inst.max_load(assignment)?;
    let mut parent = BTreeMap::new();
    for j in 0..inst.nv {
        parent.insert(gadget.right_node(j), 0);
    }
    for (i, &j) in assignment.iter().enumerate() {
        parent.insert(gadget.left_node(i), gadget.right_node(j));
    }
    let mut next = 1 + inst.nu + inst.nv;
    for (i, &w) in inst.weights.iter().enumerate() {
        for _ in 1..w {
            parent.insert(next, gadget.left_node(i));
            next += 1;
        }
    }
    let tree = RoutingTree::new(0, parent);
    tree.validate(&gadget.net)?;
    Ok(tree)
}

/// Read an assignment back off a spanning tree within budget: each left
/// node's parent is necessarily a right node, and the budget forces every
/// right node to fit its subtree into one packet, so the assignment's max
/// load is at most `k`. Both facts are checked, not assumed.
pub fn tree_to_semi_matching(
    inst: &LbsmInstance,
    gadget: &LbsmGadget,
    tree: &RoutingTree,
) -> Result<Vec<usize>> {
    tree.validate(&gadget.net)?;
    if !tree.spans_all(&gadget.net) {
        return Err(AggError::MalformedTree("gadget tree must span".into()));
    }
    let cost = tree_cost(tree, &gadget.net, &gadget.params)?;
    if cost > gadget.budget {
        return Err(AggError::InvalidInstance(format!(
            "tree cost {cost} exceeds the gadget budget {}",
            gadget.budget
        )));
    }
    let mut assignment = Vec::with_capacity(inst.nu);
    for i in 0..inst.nu {
        let p = tree
            .parent(gadget.left_node(i))
            .ok_or_else(|| AggError::MalformedTree(format!("left node {i} missing")))?;
        let j = gadget.right_index(p).ok_or_else(|| {
            AggError::Internal(format!("left node {i} hangs under a non-right node"))
        })?;
        assignment.push(j);
    }
    if inst.max_load(&assignment)? > inst.k {
        return Err(AggError::Internal(
            "budget-feasible tree produced an overloaded assignment".into(),
        ));
    }
    Ok(assignment)
}

/// Dominating-set instance on a simple graph: is there a set of at most
/// `k` nodes such that every node is in it or adjacent to it?
#[derive(Debug, Clone)]
pub struct DsInstance {
    pub n: usize,
    pub edges: BTreeSet<(usize, usize)>,
    pub k: u64,
}

impl DsInstance {
    pub fn new(n: usize, edges: BTreeSet<(usize, usize)>, k: u64) -> Result<Self> {
        if n == 0 {
            return Err(AggError::InvalidInstance("graph must have nodes".into()));
        }
        for &(a, b) in &edges {
            if a >= b || b >= n {
                return Err(AggError::InvalidInstance(format!(
                    "edge ({a}, {b}) must be ordered and in range"
                )));
            }
        }
        Ok(DsInstance { n, edges, k })
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    pub fn is_dominating(&self, set: &BTreeSet<usize>) -> bool {
        (0..self.n).all(|v| {
            set.contains(&v)
                || set.iter().any(|&d| {
                    self.edges.contains(&(d.min(v), d.max(v))) && d != v
                })
        })
    }
}

/// First dominating set of size at most `k`, smallest sets first.
pub fn ds_feasible_brute(inst: &DsInstance) -> Option<BTreeSet<usize>> {
    let limit = (inst.k as usize).min(inst.n);
    for size in 0..=limit {
        for mask in 0u64..(1 << inst.n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let set: BTreeSet<usize> = (0..inst.n).filter(|&v| mask & (1 << v) != 0).collect();
            if inst.is_dominating(&set) {
                return Some(set);
            }
        }
    }
    None
}

/// Size of a minimum dominating set.
pub fn min_dominating_size(inst: &DsInstance) -> usize {
    for size in 0..=inst.n {
        for mask in 0u64..(1 << inst.n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let set: BTreeSet<usize> = (0..inst.n).filter(|&v| mask & (1 << v) != 0).collect();
            if inst.is_dominating(&set) {
                return size;
            }
        }
    }
    inst.n
}

/// The relay-subset encoding of a dominating-set instance: one relay and
/// one source per original node, relays wired to the sink, each source
/// wired to its own relay and to the relays of its original neighbors.
/// Capacity `max degree + 1` lets a relay serve its whole neighborhood in
/// one packet; the budget is met exactly when at most `k` relays join.
pub struct DsGadget {
    pub net: Network,
    pub params: CostParams,
    pub budget: Rational,
    n: usize,
}

impl DsGadget {
    pub fn relay_node(&self, i: usize) -> NodeId {
        debug_assert!(i < self.n);
        1 + i
    }

    pub fn source_node(&self, i: usize) -> NodeId {
        debug_assert!(i < self.n);
        1 + self.n + i
    }
}

pub fn ds_gadget(inst: &DsInstance) -> Result<DsGadget> {
    let n = inst.n;
    let q = inst.max_degree() as u64 + 1;
    let mut sizes = vec![0u64; 1 + 2 * n];
    for i in 0..n {
        sizes[1 + n + i] = 1;
    }
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for i in 0..n {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + n + i));
    }
    for &(a, b) in &inst.edges {
        edges.push((1 + a, 1 + n + b));
        edges.push((1 + b, 1 + n + a));
    }
    let net = Network::new(1 + 2 * n, 0, sizes, edges)?;
    let budget = rat(2) * (rat(n as i64) + rat(inst.k as i64));
    let params = CostParams::new(q, rat(1), rat(1))?.with_budget(budget);
    Ok(DsGadget {
        net,
        params,
        budget,
        n,
    })
}

/// Canonical gadget tree for a dominating set: chosen relays under the
/// sink, each source under its smallest dominating relay.
pub fn dominating_set_to_tree(
    inst: &DsInstance,
    gadget: &DsGadget,
    set: &BTreeSet<usize>,
) -> Result<RoutingTree> {
    if !inst.is_dominating(set) {
        return Err(AggError::InvalidInstance("set is not dominating".into()));
    }
    let mut parent = BTreeMap::new();
    for &d in set {
        if d >= inst.n {
            return Err(AggError::InvalidInstance(format!("node {d} out of range")));
        }
        parent.insert(gadget.relay_node(d), 0);
    }
    for v in 0..inst.n {
        let dominator = set
            .iter()
            .copied()
            .find(|&d| d == v || inst.edges.contains(&(d.min(v), d.max(v))))
            .expect("set dominates");
        parent.insert(gadget.source_node(v), gadget.relay_node(dominator));
    }
    let tree = RoutingTree::new(0, parent);
    tree.validate(&gadget.net)?;
    Ok(tree)
}

/// Read a dominating set back off a budget-feasible tree over the sources:
/// the relays present in the tree dominate every original node (each
/// source's parent must be a relay), and the budget caps how many relays
/// can be present once idle ones are pruned. Both facts are checked.
pub fn tree_to_dominating_set(
    inst: &DsInstance,
    gadget: &DsGadget,
    tree: &RoutingTree,
) -> Result<BTreeSet<usize>> {
    tree.validate(&gadget.net)?;
    if !tree.spans_sources(&gadget.net) {
        return Err(AggError::MalformedTree(
            "gadget tree must span the sources".into(),
        ));
    }
    let cost = tree_cost(tree, &gadget.net, &gadget.params)?;
    if cost > gadget.budget {
        return Err(AggError::InvalidInstance(format!(
            "tree cost {cost} exceeds the gadget budget {}",
            gadget.budget
        )));
    }
    let idle = crate::cost::useless_relays(tree, &gadget.net)?;
    if !idle.is_empty() {
        return Err(AggError::MalformedTree(
            "prune idle relays before extracting a dominating set".into(),
        ));
    }
    let set: BTreeSet<usize> = (0..inst.n)
        .filter(|&i| tree.contains(gadget.relay_node(i)))
        .collect();
    if !inst.is_dominating(&set) {
        return Err(AggError::Internal(
            "tree relays fail to dominate the original graph".into(),
        ));
    }
    if set.len() as u64 > inst.k {
        return Err(AggError::Internal(
            "budget-feasible tree uses more relays than k".into(),
        ));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{mecat_feasible_with_cap, mecat_rn_feasible_with_cap};

    fn small_lbsm() -> LbsmInstance {
        // Two left nodes (weights 2 and 1), two right nodes; u0 reaches
        // both, u1 only v1.
        LbsmInstance::new(
            2,
            2,
            vec![2, 1],
            BTreeSet::from([(0, 0), (0, 1), (1, 1)]),
            2,
        )
        .unwrap()
    }

    #[test]
    fn gadget_counts_nodes_and_budget() {
        let inst = small_lbsm();
        let gadget = lbsm_gadget(&inst).unwrap();
        // r + 2 left + 2 right + 1 pendant.
        assert_eq!(gadget.net.node_count(), 6);
        assert_eq!(gadget.params.q, 3);
        // 2 * (1 pendant + (1 + 1) left packets + 2 right) = 10.
        assert_eq!(gadget.budget, rat(10));
    }

    #[test]
    fn assignment_and_tree_translate_both_ways() {
        let inst = small_lbsm();
        let gadget = lbsm_gadget(&inst).unwrap();
        let assignment = lbsm_feasible_brute(&inst).unwrap();
        assert!(inst.max_load(&assignment).unwrap() <= inst.k);

        let tree = semi_matching_to_tree(&inst, &gadget, &assignment).unwrap();
        let cost = tree_cost(&tree, &gadget.net, &gadget.params).unwrap();
        assert!(cost <= gadget.budget);

        let back = tree_to_semi_matching(&inst, &gadget, &tree).unwrap();
        assert_eq!(back, assignment);
    }

    #[test]
    fn overload_is_infeasible_on_both_sides() {
        // Two weight-3 left nodes forced onto one right node; k = 3.
        let inst = LbsmInstance::new(
            2,
            1,
            vec![3, 3],
            BTreeSet::from([(0, 0), (1, 0)]),
            3,
        )
        .unwrap();
        assert!(lbsm_feasible_brute(&inst).is_none());
        let gadget = lbsm_gadget(&inst).unwrap();
        let found = mecat_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)
            .unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn isolated_left_node_disconnects_the_gadget() {
        let inst = LbsmInstance::new(2, 1, vec![1, 1], BTreeSet::from([(0, 0)]), 1).unwrap();
        assert!(lbsm_feasible_brute(&inst).is_none());
        assert!(lbsm_gadget(&inst).is_err());
    }

    #[test]
    fn min_max_load_matches_direct_reasoning() {
        let inst = small_lbsm();
        // u1 must go to v1; the best split sends u0 to v0: loads (2, 1).
        assert_eq!(lbsm_min_max_load(&inst), Some(2));
    }

    #[test]
    fn path_graph_dominating_translations() {
        // Path v0 - v1 - v2: {v1} dominates.
        let inst = DsInstance::new(3, BTreeSet::from([(0, 1), (1, 2)]), 1).unwrap();
        assert_eq!(min_dominating_size(&inst), 1);
        let gadget = ds_gadget(&inst).unwrap();
        assert_eq!(gadget.params.q, 3);
        assert_eq!(gadget.budget, rat(8));

        let set = ds_feasible_brute(&inst).unwrap();
        assert_eq!(set, BTreeSet::from([1]));
        let tree = dominating_set_to_tree(&inst, &gadget, &set).unwrap();
        assert!(tree_cost(&tree, &gadget.net, &gadget.params).unwrap() <= gadget.budget);

        let found = mecat_rn_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)
            .unwrap()
            .unwrap();
        let back = tree_to_dominating_set(&inst, &gadget, &found).unwrap();
        assert!(inst.is_dominating(&back));
        assert!(back.len() as u64 <= inst.k);
    }

    #[test]
    fn edgeless_graph_needs_everyone() {
        let inst = DsInstance::new(2, BTreeSet::new(), 1).unwrap();
        assert!(ds_feasible_brute(&inst).is_none());
        let gadget = ds_gadget(&inst).unwrap();
        let found = mecat_rn_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)
            .unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn exhaustive_equivalence_on_triangle_family() {
        // All graphs on 3 nodes, all k in 1..=3: the dominating-set answer
        // and the gadget answer agree.
        let all_edges = [(0usize, 1usize), (0, 2), (1, 2)];
        for mask in 0u8..8 {
            let edges: BTreeSet<(usize, usize)> = all_edges
                .iter()
                .enumerate()
                .filter(|&(b, _)| mask & (1 << b) != 0)
                .map(|(_, &e)| e)
                .collect();
            for k in 1..=3u64 {
                let inst = DsInstance::new(3, edges.clone(), k).unwrap();
                let direct = ds_feasible_brute(&inst).is_some();
                let gadget = ds_gadget(&inst).unwrap();
                let via_tree =
                    mecat_rn_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)
                        .unwrap()
                        .is_some();
                assert_eq!(direct, via_tree, "mask {mask} k {k}");
            }
        }
    }
}
