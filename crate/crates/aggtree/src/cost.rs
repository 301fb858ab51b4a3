//! Energy-cost semantics for aggregation trees.
//!
//! A node whose subtree gathers `d` units of foreign reports on top of its
//! own `s` units must send `ceil((d + s) / q)` packets toward its parent.
//! Each packet costs `tx` to send and `rx` to receive, so the energy cost of
//! a tree is `(tx + rx)` times the total packet count over all non-root
//! members. All arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId, Role};
use crate::rat::{rat, Rational};

/// Aggregation parameters: packet capacity `q` (reports per packet),
/// per-packet transmission and reception energy, and an optional budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostParams {
    pub q: u64,
    pub tx: Rational,
    pub rx: Rational,
    pub budget: Option<Rational>,
}

impl CostParams {
    pub fn new(q: u64, tx: Rational, rx: Rational) -> Result<Self> {
        let p = CostParams { q, tx, rx, budget: None };
        p.validate()?;
        Ok(p)
    }

    pub fn with_budget(mut self, budget: Rational) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.q == 0 {
            return Err(AggError::InvalidInstance("q must be at least 1".into()));
        }
        if self.tx < rat(0) || self.rx < rat(0) {
            return Err(AggError::InvalidInstance(
                "tx and rx must be non-negative".into(),
            ));
        }
        Ok(())
    }

    /// Energy spent per packet hop: one transmission plus one reception.
    pub fn unit(&self) -> Rational {
        self.tx + self.rx
    }
}

/// A rooted tree given by parent pointers. Members are the root plus every
/// node with a parent entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingTree {
    root: NodeId,
    parent: BTreeMap<NodeId, NodeId>,
}

impl RoutingTree {
    pub fn new(root: NodeId, parent: BTreeMap<NodeId, NodeId>) -> Self {
        RoutingTree { root, parent }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent.get(&v).copied()
    }

    /// Parent entries as (child, parent), ascending by child.
    pub fn parent_pairs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.parent.iter().map(|(&c, &p)| (c, p))
    }

    pub fn members(&self) -> BTreeSet<NodeId> {
        let mut m: BTreeSet<NodeId> = self.parent.keys().copied().collect();
        m.insert(self.root);
        m
    }

    pub fn member_count(&self) -> usize {
        self.parent.len() + 1
    }

    pub fn contains(&self, v: NodeId) -> bool {
        v == self.root || self.parent.contains_key(&v)
    }

    /// Path from `v` to the root along parent pointers. Assumes a validated
    /// tree; loops are reported as an error rather than spinning.
    pub fn path_to_root(&self, v: NodeId) -> Result<Vec<NodeId>> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.root {
            cur = *self
                .parent
                .get(&cur)
                .ok_or_else(|| AggError::MalformedTree(format!("{cur} has no parent")))?;
            if path.contains(&cur) {
                return Err(AggError::MalformedTree("cycle in parent pointers".into()));
            }
            path.push(cur);
        }
        Ok(path)
    }

    /// Children lists, ascending, for every member.
    pub fn children(&self) -> BTreeMap<NodeId, Vec<NodeId>> {
        let mut ch: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        ch.entry(self.root).or_default();
        for (&c, &p) in &self.parent {
            ch.entry(p).or_default().push(c);
            ch.entry(c).or_default();
        }
        ch
    }

    /// Structural validation against a network: the root has no parent entry,
    /// every parent edge exists in the network, and every member reaches the
    /// root without repeating a node.
    pub fn validate(&self, net: &Network) -> Result<()> {
        if self.root >= net.node_count() {
            return Err(AggError::MalformedTree("root out of range".into()));
        }
        if self.parent.contains_key(&self.root) {
            return Err(AggError::MalformedTree("root has a parent".into()));
        }
        for (&c, &p) in &self.parent {
            if c >= net.node_count() || p >= net.node_count() {
                return Err(AggError::MalformedTree(format!(
                    "edge ({c}, {p}) out of range"
                )));
            }
            if !net.has_edge(c, p) {
                return Err(AggError::MalformedTree(format!(
                    "tree edge ({c}, {p}) is not a network edge"
                )));
            }
        }
        // Walk each member to the root, marking resolved nodes so the whole
        // check is linear and cycles are caught.
        let mut state = vec![0u8; net.node_count()]; // 0 unseen, 1 in-progress, 2 ok
        state[self.root] = 2;
        for &start in self.parent.keys() {
            let mut stack = Vec::new();
            let mut cur = start;
            while state[cur] == 0 {
                state[cur] = 1;
                stack.push(cur);
                match self.parent.get(&cur) {
                    Some(&p) => cur = p,
                    None => {
                        return Err(AggError::MalformedTree(format!(
                            "member {cur} does not reach the root"
                        )))
                    }
                }
            }
            if state[cur] == 1 {
                return Err(AggError::MalformedTree("cycle in parent pointers".into()));
            }
            for v in stack {
                state[v] = 2;
            }
        }
        Ok(())
    }

    /// True when every node of the network is a member.
    pub fn spans_all(&self, net: &Network) -> bool {
        self.member_count() == net.node_count()
    }

    /// True when every source of the network is a member.
    pub fn spans_sources(&self, net: &Network) -> bool {
        net.sources().iter().all(|&u| self.contains(u))
    }
}

/// Total report size of each member's strict descendants.
pub fn descendant_loads(tree: &RoutingTree, net: &Network) -> Result<BTreeMap<NodeId, u64>> {
    tree.validate(net)?;
    let mut des: BTreeMap<NodeId, u64> = tree.members().iter().map(|&v| (v, 0)).collect();
    for (&c, _) in tree.parent.iter() {
        // Push c's own report size up the chain of its strict ancestors.
        let s = net.report_size(c);
        if s == 0 {
            continue;
        }
        let mut cur = c;
        while let Some(&p) = tree.parent.get(&cur) {
            *des.get_mut(&p).expect("ancestor is a member") += s;
            cur = p;
        }
    }
    Ok(des)
}

/// Packets each non-root member sends to its parent:
/// `ceil((descendant load + own report) / q)`.
pub fn packets_sent(
    tree: &RoutingTree,
    net: &Network,
    params: &CostParams,
) -> Result<BTreeMap<NodeId, u64>> {
    params.validate()?;
    let des = descendant_loads(tree, net)?;
    let mut out = BTreeMap::new();
    for (&v, &d) in &des {
        if v == tree.root() {
            continue;
        }
        let carried = d + net.report_size(v);
        out.insert(v, carried.div_ceil(params.q));
    }
    Ok(out)
}

/// Exact energy cost of a tree: `(tx + rx)` times total packets sent.
pub fn tree_cost(tree: &RoutingTree, net: &Network, params: &CostParams) -> Result<Rational> {
    let packets: u64 = packets_sent(tree, net, params)?.values().sum();
    Ok(params.unit() * rat(packets as i64))
}

/// Whether the tree's cost fits the params' budget.
pub fn check_budget(tree: &RoutingTree, net: &Network, params: &CostParams) -> Result<bool> {
    let budget = params.budget.ok_or(AggError::NoBudget)?;
    Ok(tree_cost(tree, net, params)? <= budget)
}

/// Members that are relays carrying no reports at all; they are legal but
/// pointless, and callers may want to prune them.
pub fn useless_relays(tree: &RoutingTree, net: &Network) -> Result<Vec<NodeId>> {
    let des = descendant_loads(tree, net)?;
    Ok(des
        .iter()
        .filter(|&(&v, &d)| {
            v != tree.root() && net.role(v) == Role::Relay && d + net.report_size(v) == 0
        })
        .map(|(&v, _)| v)
        .collect())
}

/// Drop relay members whose subtrees carry no reports. Cost is unchanged;
/// the result has no useless relays.
pub fn prune_useless_relays(tree: &RoutingTree, net: &Network) -> Result<RoutingTree> {
    let mut parent = tree.parent.clone();
    loop {
        let t = RoutingTree::new(tree.root, parent.clone());
        let dead = useless_relays(&t, net)?;
        // Only leaves can be removed without orphaning children; iterate
        // until the zero-load relay subtrees are gone.
        let children = t.children();
        let removable: Vec<NodeId> = dead
            .into_iter()
            .filter(|v| children[v].is_empty())
            .collect();
        if removable.is_empty() {
            return Ok(t);
        }
        for v in removable {
            parent.remove(&v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Network;

    fn params(q: u64, tx: i64, rx: i64) -> CostParams {
        CostParams::new(q, rat(tx), rat(rx)).unwrap()
    }

    fn path_net(sizes: &[u64]) -> Network {
        // 0 - 1 - 2 - ... - (n-1), sink 0
        let n = sizes.len();
        let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
        Network::new(n, 0, sizes.to_vec(), edges).unwrap()
    }

    fn chain_tree(n: usize) -> RoutingTree {
        RoutingTree::new(0, (1..n).map(|v| (v, v - 1)).collect())
    }

    #[test]
    fn descendants_on_a_two_hop_path() {
        // r(0) <- a(1) <- b(2), unit reports
        let net = path_net(&[0, 1, 1]);
        let tree = chain_tree(3);
        let des = descendant_loads(&tree, &net).unwrap();
        assert_eq!(des[&2], 0);
        assert_eq!(des[&1], 1);
        assert_eq!(des[&0], 2);
    }

    #[test]
    fn cost_of_a_three_node_chain() {
        // r <- a <- b <- c, s = 1, q = 2, tx = 2, rx = 1:
        // c sends 1 packet, b sends 1, a sends 2 -> 4 packets, cost 12.
        let net = path_net(&[0, 1, 1, 1]);
        let tree = chain_tree(4);
        let p = params(2, 2, 1);
        let packets = packets_sent(&tree, &net, &p).unwrap();
        assert_eq!(packets[&3], 1);
        assert_eq!(packets[&2], 1);
        assert_eq!(packets[&1], 2);
        assert_eq!(tree_cost(&tree, &net, &p).unwrap(), rat(12));
    }

    #[test]
    fn q_one_sends_every_report_unaggregated() {
        let net = path_net(&[0, 1, 2, 1]);
        let tree = chain_tree(4);
        let p = params(1, 1, 1);
        // Each node forwards exactly (descendant load + own size) packets:
        // 1 + 3 + 4 = 8 packets, cost 16.
        assert_eq!(tree_cost(&tree, &net, &p).unwrap(), rat(16));
    }

    #[test]
    fn huge_q_costs_one_packet_per_member() {
        let net = path_net(&[0, 1, 2, 1, 5]);
        let tree = chain_tree(5);
        let p = params(1_000, 1, 1);
        assert_eq!(tree_cost(&tree, &net, &p).unwrap(), rat(8)); // 4 senders
    }

    #[test]
    fn cost_is_non_increasing_in_q() {
        let net = path_net(&[0, 2, 3, 1, 4, 1]);
        let tree = chain_tree(6);
        let mut last = None;
        for q in 1..=12 {
            let c = tree_cost(&tree, &net, &params(q, 2, 1)).unwrap();
            if let Some(prev) = last {
                assert!(c <= prev, "cost grew from q={} to q={q}", q - 1);
            }
            last = Some(c);
        }
    }

    #[test]
    fn cycle_is_rejected() {
        let net = path_net(&[0, 1, 1, 1]);
        // 1 -> 2 -> 3 -> 1 never reaches the root.
        let tree = RoutingTree::new(0, BTreeMap::from([(1, 2), (2, 3), (3, 1)]));
        assert!(matches!(
            descendant_loads(&tree, &net),
            Err(AggError::MalformedTree(_))
        ));
    }

    #[test]
    fn non_network_edges_are_rejected() {
        let net = path_net(&[0, 1, 1]);
        let tree = RoutingTree::new(0, BTreeMap::from([(1, 0), (2, 0)]));
        assert!(tree.validate(&net).is_err());
    }

    #[test]
    fn budget_checks_require_a_budget() {
        let net = path_net(&[0, 1]);
        let tree = chain_tree(2);
        let p = params(2, 1, 1);
        assert!(matches!(
            check_budget(&tree, &net, &p),
            Err(AggError::NoBudget)
        ));
        let p = p.with_budget(rat(2));
        assert!(check_budget(&tree, &net, &p).unwrap());
        let tight = params(2, 1, 1).with_budget(rat(1));
        assert!(!check_budget(&tree, &net, &tight).unwrap());
    }

    #[test]
    fn zero_load_relays_are_flagged_and_prunable() {
        // r(0) - u(1) source, r - x(2) - y(3) relays hanging off the root.
        let net = Network::new(
            4,
            0,
            vec![0, 1, 0, 0],
            vec![(0, 1), (0, 2), (2, 3)],
        )
        .unwrap();
        let tree = RoutingTree::new(0, BTreeMap::from([(1, 0), (2, 0), (3, 2)]));
        let lint = useless_relays(&tree, &net).unwrap();
        assert_eq!(lint, vec![2, 3]);
        let p = params(2, 1, 1);
        let pruned = prune_useless_relays(&tree, &net).unwrap();
        assert_eq!(pruned.members(), BTreeSet::from([0, 1]));
        assert_eq!(
            tree_cost(&tree, &net, &p).unwrap(),
            tree_cost(&pruned, &net, &p).unwrap()
        );
    }
}
