//! Tree constructions: shortest-path trees, a metric-closure Steiner
//! 2-approximation, and light approximate shortest-path trees (LAST) that
//! balance root distances against total weight.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::cost::RoutingTree;
use crate::error::{AggError, Result};
use crate::graph::{
    metric_closure, minimum_spanning_tree, Network, NodeId, Subgraph, WeightedGraph,
};
use crate::rat::{rat, Rational};

/// Build a hop-shortest-path tree over an adjacency structure. Each reached
/// node's parent is the neighbor one BFS layer closer to the root that
/// minimizes `tie[n]` (node id itself when `tie` is `None`). The output is
/// restricted to the parent chains of `span`.
fn spt_core(
    adj: &[Vec<NodeId>],
    root: NodeId,
    span: &BTreeSet<NodeId>,
    tie: Option<&[usize]>,
) -> Result<RoutingTree> {
    let n = adj.len();
    if root >= n {
        return Err(AggError::InvalidInstance(format!("root {root} out of range")));
    }
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    for &v in span {
        if v >= n || dist[v] == usize::MAX {
            return Err(AggError::Disconnected);
        }
    }
    let key = |v: NodeId| tie.map_or(v, |t| t[v]);
    let mut parent: Vec<Option<NodeId>> = vec![None; n];
    for v in 0..n {
        if v == root || dist[v] == usize::MAX {
            continue;
        }
        parent[v] = adj[v]
            .iter()
            .copied()
            .filter(|&u| dist[u] + 1 == dist[v])
            .min_by_key(|&u| key(u));
    }
    let mut keep: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for &v in span {
        let mut cur = v;
        while cur != root && !keep.contains_key(&cur) {
            let p = parent[cur].expect("reached node has a parent");
            keep.insert(cur, p);
            cur = p;
        }
    }
    let tree = RoutingTree::new(root, keep);
    // Defining property: tree depth equals hop distance for every member.
    debug_assert!(tree
        .members()
        .iter()
        .all(|&v| tree.path_to_root(v).unwrap().len() - 1 == dist[v]));
    Ok(tree)
}

/// Hop-shortest-path tree of a network, restricted to the parent chains of
/// `span`. Ties pick the smallest-id parent.
pub fn shortest_path_tree(
    net: &Network,
    root: NodeId,
    span: &BTreeSet<NodeId>,
) -> Result<RoutingTree> {
    spt_core(net.adjacency(), root, span, None)
}

/// Same construction under a different deterministic tie-break: parents
/// minimize `perm[id]` instead of the id itself. Every choice still yields a
/// legal shortest-path tree; the total descendant load is invariant.
pub fn shortest_path_tree_with_tiebreak(
    net: &Network,
    root: NodeId,
    span: &BTreeSet<NodeId>,
    perm: &[usize],
) -> Result<RoutingTree> {
    if perm.len() != net.node_count() {
        return Err(AggError::InvalidInstance(
            "tie-break permutation length mismatch".into(),
        ));
    }
    spt_core(net.adjacency(), root, span, Some(perm))
}

/// Hop-shortest-path tree inside an edge subgraph, restricted to `span`.
pub fn subgraph_spt(sub: &Subgraph, root: NodeId, span: &BTreeSet<NodeId>) -> Result<RoutingTree> {
    let n = sub.nodes().max().map_or(root, |m| m.max(root)) + 1;
    let mut adj = vec![Vec::new(); n];
    for v in sub.nodes() {
        adj[v] = sub.neighbors(v).collect();
    }
    spt_core(&adj, root, span, None)
}

/// Steiner tree 2-approximation: minimum spanning tree of the terminals'
/// metric closure, expanded through the recorded witness paths, then reduced
/// to the terminals' parent chains so no leaf is a non-terminal. Rooted at
/// the network sink, which must be a terminal. Edge count is at most twice
/// the optimal Steiner edge count.
pub fn steiner_tree_2approx(net: &Network, terminals: &BTreeSet<NodeId>) -> Result<RoutingTree> {
    let root = net.sink();
    if !terminals.contains(&root) {
        return Err(AggError::InvalidInstance(
            "terminal set must contain the sink".into(),
        ));
    }
    if terminals.len() == 1 {
        return Ok(RoutingTree::new(root, BTreeMap::new()));
    }
    let closure = metric_closure(net, terminals, rat(1))?;
    let mst = minimum_spanning_tree(&closure.graph);
    let mut sub = Subgraph::new();
    for (i, j, _) in mst {
        sub.add_path(&closure.witness(i, j));
    }
    subgraph_spt(&sub, root, terminals)
}

/// Shape parameters for a light approximate shortest-path tree: root
/// distances within `alpha` times shortest, total weight within `beta` times
/// the minimum spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LastParams {
    pub alpha: Rational,
    pub beta: Rational,
}

impl LastParams {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self> {
        if alpha < rat(1) || beta < rat(1) {
            return Err(AggError::InvalidInstance(
                "alpha and beta must be at least 1".into(),
            ));
        }
        Ok(LastParams { alpha, beta })
    }
}

impl Default for LastParams {
    /// The (3, 2) trade-off used by the relay-aware solvers.
    fn default() -> Self {
        LastParams {
            alpha: rat(3),
            beta: rat(2),
        }
    }
}

/// Build an (alpha, beta) light approximate shortest-path tree of a weighted
/// graph: start from the minimum spanning tree, walk it depth-first, and
/// whenever a node's tentative root distance exceeds `alpha` times its true
/// shortest distance, graft the shortest path to it. With `beta >=
/// 1 + 2/(alpha - 1)` the result also stays within `beta` times the MST
/// weight. Both guarantees are re-checked on every call; a violation is an
/// internal error, never a silently degraded tree.
pub fn last_tree(g: &WeightedGraph, root: NodeId, params: &LastParams) -> Result<RoutingTree> {
    if root >= g.node_count() {
        return Err(AggError::InvalidInstance(format!("root {root} out of range")));
    }
    if params.alpha <= rat(1) {
        return Err(AggError::InvalidInstance(
            "the construction needs alpha > 1".into(),
        ));
    }
    let n = g.node_count();
    let dist = g.distances(root);

    // Lexicographic shortest-path predecessors: smallest-id tight neighbor.
    let sp_parent: Vec<Option<NodeId>> = (0..n)
        .map(|v| {
            if v == root {
                return None;
            }
            g.neighbors(v)
                .iter()
                .filter(|&&(u, len)| dist[u] + len == dist[v])
                .map(|&(u, _)| u)
                .min()
        })
        .collect();

    let mst = minimum_spanning_tree(g);
    let mst_weight: Rational = mst.iter().map(|&(_, _, w)| w).sum();
    let mut mst_adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for &(a, b, _) in &mst {
        mst_adj[a].push(b);
        mst_adj[b].push(a);
    }
    for list in &mut mst_adj {
        list.sort_unstable();
    }

    let weight_of = |a: NodeId, b: NodeId| g.weight(a, b).expect("edge exists");

    struct State {
        d: Vec<Option<Rational>>,
        parent: Vec<Option<NodeId>>,
    }
    let mut st = State {
        d: vec![None; n],
        parent: vec![None; n],
    };
    st.d[root] = Some(rat(0));

    let relax = |st: &mut State, x: NodeId, y: NodeId, w: Rational| {
        let dx = st.d[x].expect("relaxation source has a distance");
        let cand = dx + w;
        if st.d[y].map_or(true, |dy| cand < dy) {
            st.d[y] = Some(cand);
            st.parent[y] = Some(x);
        }
    };

    // Depth-first walk of the MST, smallest-id children first. For each
    // child the recursive shape is: relax(u, c); walk c's subtree;
    // relax(c, u). Recursion is replaced by an explicit stack so deep
    // chains cannot overflow; children are pushed in descending order so
    // their Forward/Enter/Exit triples pop in ascending order.
    enum Step {
        Forward(NodeId, NodeId),
        Enter(NodeId, Option<NodeId>),
        Exit(NodeId, NodeId),
    }
    let mut stack = vec![Step::Enter(root, None)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Forward(u, v) => {
                relax(&mut st, u, v, weight_of(u, v));
            }
            Step::Enter(u, from) => {
                let limit = params.alpha * dist[u];
                if st.d[u].map_or(true, |du| du > limit) {
                    // Graft the shortest path from the root to u.
                    let mut chain = vec![u];
                    let mut cur = u;
                    while let Some(p) = sp_parent[cur] {
                        chain.push(p);
                        cur = p;
                    }
                    chain.reverse();
                    for pair in chain.windows(2) {
                        relax(&mut st, pair[0], pair[1], weight_of(pair[0], pair[1]));
                    }
                }
                for &v in mst_adj[u].iter().rev() {
                    if Some(v) != from {
                        stack.push(Step::Exit(v, u));
                        stack.push(Step::Enter(v, Some(u)));
                        stack.push(Step::Forward(u, v));
                    }
                }
            }
            Step::Exit(v, u) => {
                relax(&mut st, v, u, weight_of(v, u));
            }
        }
    }

    let mut parent_map = BTreeMap::new();
    for v in 0..n {
        if v == root {
            continue;
        }
        let p = st.parent[v].ok_or_else(|| {
            AggError::Internal("LAST invariant violated: node never relaxed".into())
        })?;
        parent_map.insert(v, p);
    }
    let tree = RoutingTree::new(root, parent_map);

    // Post-check 1: every root path within alpha of the shortest distance.
    let mut pathw: Vec<Option<Rational>> = vec![None; n];
    pathw[root] = Some(rat(0));
    let children = tree.children();
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &c in &children[&u] {
            pathw[c] = Some(pathw[u].unwrap() + weight_of(c, u));
            queue.push_back(c);
        }
    }
    for v in 0..n {
        let pw = pathw[v].ok_or_else(|| {
            AggError::Internal("LAST invariant violated: tree does not span".into())
        })?;
        if pw > params.alpha * dist[v] {
            return Err(AggError::Internal(format!(
                "LAST invariant violated: node {v} root path exceeds alpha bound"
            )));
        }
    }
    // Post-check 2: total weight within beta of the MST weight.
    let total: Rational = tree
        .parent_pairs()
        .map(|(c, p)| weight_of(c, p))
        .sum();
    if total > params.beta * mst_weight {
        return Err(AggError::Internal(
            "LAST invariant violated: tree weight exceeds beta bound".into(),
        ));
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::descendant_loads;
    use crate::rat::rat;

    fn unit_net(n: usize, sink: NodeId, edges: &[(usize, usize)]) -> Network {
        let sizes = (0..n).map(|v| if v == sink { 0 } else { 1 }).collect();
        Network::new(n, sink, sizes, edges.to_vec()).unwrap()
    }

    fn all_nodes(net: &Network) -> BTreeSet<NodeId> {
        (0..net.node_count()).collect()
    }

    #[test]
    fn spt_on_a_four_cycle_breaks_the_tie_low() {
        // r(0) - a(1) - b(2) - c(3) - r: b can hang off a or c; a wins.
        let net = unit_net(4, 0, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let t = shortest_path_tree(&net, 0, &all_nodes(&net)).unwrap();
        assert_eq!(t.parent(2), Some(1));
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(3), Some(0));
    }

    #[test]
    fn spt_span_restriction_drops_side_branches() {
        // r(0) - 1 - 2 and r - 3; spanning only {2} leaves 3 out.
        let net = unit_net(4, 0, &[(0, 1), (1, 2), (0, 3)]);
        let t = shortest_path_tree(&net, 0, &BTreeSet::from([2])).unwrap();
        assert_eq!(t.members(), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn spt_depth_equals_hop_distance() {
        let net = unit_net(
            7,
            0,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (2, 5), (5, 6)],
        );
        let t = shortest_path_tree(&net, 0, &all_nodes(&net)).unwrap();
        let hops = net.hop_distances(0).unwrap();
        for v in 0..net.node_count() {
            assert_eq!(t.path_to_root(v).unwrap().len() - 1, hops[v]);
        }
    }

    #[test]
    fn different_tiebreaks_keep_total_descendant_load() {
        // Diamond: both 1 and 2 can parent 3.
        let net = unit_net(4, 0, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let span = all_nodes(&net);
        let t1 = shortest_path_tree(&net, 0, &span).unwrap();
        let perm = vec![0, 3, 1, 2]; // makes node 2 more attractive than 1
        let t2 = shortest_path_tree_with_tiebreak(&net, 0, &span, &perm).unwrap();
        assert_eq!(t1.parent(3), Some(1));
        assert_eq!(t2.parent(3), Some(2));
        let sum1: u64 = descendant_loads(&t1, &net).unwrap().values().sum();
        let sum2: u64 = descendant_loads(&t2, &net).unwrap().values().sum();
        assert_eq!(sum1, sum2);
    }

    #[test]
    fn steiner_keeps_pass_through_nodes() {
        // a(2) - x(1) - r(0), terminals {a, r}: x rides along.
        let net = unit_net(3, 0, &[(0, 1), (1, 2)]);
        let t = steiner_tree_2approx(&net, &BTreeSet::from([0, 2])).unwrap();
        assert_eq!(t.members(), BTreeSet::from([0, 1, 2]));
        assert_eq!(t.root(), 0);
    }

    #[test]
    fn steiner_leaves_are_terminals() {
        let net = unit_net(
            8,
            0,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (2, 6), (6, 7)],
        );
        let terms = BTreeSet::from([0, 3, 7]);
        let t = steiner_tree_2approx(&net, &terms).unwrap();
        let children = t.children();
        for (&v, ch) in &children {
            if ch.is_empty() && v != t.root() {
                assert!(terms.contains(&v), "leaf {v} is not a terminal");
            }
        }
        for &term in &terms {
            assert!(t.contains(term));
        }
    }

    #[test]
    fn last_grafts_when_the_chain_gets_too_long() {
        // Chain 0-1-...-7 of weight-1 edges plus a weight-2 shortcut (0,7).
        // The MST is the chain; node 7 sits at depth 7 > 3 * dist(7) = 6,
        // so the shortest path (0,7) is grafted in.
        let mut edges: Vec<_> = (0..7).map(|i| (i, i + 1, rat(1))).collect();
        edges.push((0, 7, rat(2)));
        let g = WeightedGraph::new(8, edges).unwrap();
        let t = last_tree(&g, 0, &LastParams::default()).unwrap();
        assert_eq!(t.parent(7), Some(0));
        assert_eq!(t.parent(6), Some(7)); // improvement propagates back
    }

    #[test]
    fn huge_alpha_reproduces_the_mst() {
        let g = WeightedGraph::new(
            5,
            vec![
                (0, 1, rat(1)),
                (1, 2, rat(1)),
                (2, 3, rat(1)),
                (3, 4, rat(1)),
                (0, 4, rat(2)),
                (0, 3, rat(5)),
            ],
        )
        .unwrap();
        let params = LastParams::new(rat(1000), rat(1000)).unwrap();
        let t = last_tree(&g, 0, &params).unwrap();
        let mut tree_edges: Vec<(NodeId, NodeId)> = t
            .parent_pairs()
            .map(|(c, p)| (c.min(p), c.max(p)))
            .collect();
        tree_edges.sort_unstable();
        let mut mst_edges: Vec<(NodeId, NodeId)> = minimum_spanning_tree(&g)
            .into_iter()
            .map(|(a, b, _)| (a, b))
            .collect();
        mst_edges.sort_unstable();
        assert_eq!(tree_edges, mst_edges);
    }

    #[test]
    fn last_rejects_alpha_of_one() {
        let g = WeightedGraph::new(2, vec![(0, 1, rat(1))]).unwrap();
        let params = LastParams::new(rat(1), rat(10)).unwrap();
        assert!(last_tree(&g, 0, &params).is_err());
    }
}
