//! Aggregation-tree construction algorithms.
//!
//! Relay-free networks get an exact-factor-2 shortest path tree. Networks
//! with relays get either the light-tree construction (factor 7) or the
//! routing-based construction (factor 2x the routing solver's factor).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cnd::{CndInstance, CndSolver};
use crate::cost::{useless_relays, CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{metric_closure, Network, NodeId, Subgraph};
use crate::trees::{last_tree, shortest_path_tree, subgraph_spt, LastParams};

/// Shortest path tree over the whole network. Only valid when every
/// non-sink node is a source: with relays present a spanning tree may
/// carry dead weight and the factor-2 bound no longer holds.
pub fn solve_mecat_spt(net: &Network, params: &CostParams) -> Result<RoutingTree> {
    params.validate()?;
    if net.has_relays() {
        return Err(AggError::RelaysPresent);
    }
    let span: BTreeSet<NodeId> = (0..net.node_count()).collect();
    shortest_path_tree(net, net.sink(), &span)
}

/// Light-tree construction for networks with relays:
/// build the hop metric closure of the sources plus the sink, take a
/// (3, 2) light approximate shortest-path tree of the closure, expand every
/// tree edge back through its witness path, and span the sources with a
/// shortest path tree inside that expansion.
pub fn solve_mecat_rn_alg2(net: &Network, params: &CostParams) -> Result<RoutingTree> {
    params.validate()?;
    let sources = net.sources();
    if sources.is_empty() {
        return Err(AggError::NoSources);
    }
    let mut terminals: BTreeSet<NodeId> = sources.iter().copied().collect();
    terminals.insert(net.sink());

    let mut expansion = Subgraph::new();
    expansion.add_node(net.sink());
    if terminals.len() >= 2 {
        let closure = metric_closure(net, &terminals, crate::rat::rat(1))?;
        let root = closure.index_of(net.sink()).expect("sink is a terminal");
        let light = last_tree(&closure.graph, root, &LastParams::default())?;
        for (child, parent) in light.parent_pairs() {
            expansion.add_path(&closure.witness(child, parent));
        }
    }

    let span: BTreeSet<NodeId> = sources.iter().copied().collect();
    let tree = subgraph_spt(&expansion, net.sink(), &span)?;
    debug_assert!(useless_relays(&tree, net)?.is_empty());
    Ok(tree)
}

/// Routing-based construction for networks with relays: solve the
/// capacitated routing relaxation with the given solver, keep the union of
/// its paths as a subgraph, and span the sources with a shortest path tree
/// inside it. The tree's cost is below 2x the routing cost, so the factor
/// is twice the solver's.
pub fn solve_mecat_rn_alg3(
    net: &Network,
    params: &CostParams,
    solver: &dyn CndSolver,
) -> Result<RoutingTree> {
    params.validate()?;
    if net.sources().is_empty() {
        return Err(AggError::NoSources);
    }
    let inst = CndInstance::from_network(net, params)?;
    let route = solver.solve(&inst)?;

    let mut union = Subgraph::new();
    union.add_node(net.sink());
    for (_, path) in route.paths() {
        union.add_path(path);
    }
    let span: BTreeSet<NodeId> = net.sources().into_iter().collect();
    let tree = subgraph_spt(&union, net.sink(), &span)?;
    debug_assert!(useless_relays(&tree, net)?.is_empty());
    Ok(tree)
}

/// Random spanning tree baseline: a depth-first traversal that visits
/// neighbors in an order shuffled by the seed. Same restriction as the
/// shortest path tree: relays would make a spanning tree unrepresentative.
pub fn solve_spanning_baseline(net: &Network, params: &CostParams, seed: u64) -> Result<RoutingTree> {
    params.validate()?;
    if net.has_relays() {
        return Err(AggError::RelaysPresent);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = net.node_count();
    let mut parent = std::collections::BTreeMap::new();
    let mut seen = vec![false; n];
    seen[net.sink()] = true;
    let mut stack = vec![net.sink()];
    while let Some(u) = stack.pop() {
        let mut nbrs: Vec<NodeId> = net.neighbors(u).to_vec();
        nbrs.shuffle(&mut rng);
        for v in nbrs {
            if !seen[v] {
                seen[v] = true;
                parent.insert(v, u);
                stack.push(v);
            }
        }
    }
    let tree = RoutingTree::new(net.sink(), parent);
    tree.validate(net)?;
    if !tree.spans_all(net) {
        return Err(AggError::Internal("baseline traversal missed a node".into()));
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnd::{SalmanSolver, ShortestPathsSolver};
    use crate::cost::tree_cost;
    use crate::rat::rat;

    /// Sink 0 with sources 1..=7 in two branches; every node reports.
    fn relay_free_net() -> Network {
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
    fn spt_rejects_relays() {
        let net = Network::new(3, 0, vec![0, 0, 1], vec![(0, 1), (1, 2)]).unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        assert!(matches!(
            solve_mecat_spt(&net, &params),
            Err(AggError::RelaysPresent)
        ));
        assert!(matches!(
            solve_spanning_baseline(&net, &params, 7),
            Err(AggError::RelaysPresent)
        ));
    }

    #[test]
    fn spt_picks_min_hop_parents_with_smallest_id() {
        let net = relay_free_net();
        let params = CostParams::new(3, rat(1), rat(1)).unwrap();
        let tree = solve_mecat_spt(&net, &params).unwrap();
        // 6 is adjacent to both 7 (depth 3) and 2 (depth 1): must hang off 2.
        assert_eq!(tree.parent(6), Some(2));
        assert_eq!(tree_cost(&tree, &net, &params).unwrap(), rat(18));
    }

    /// Ring: sink 0, sources 1..=4, relay 5 offering a shortcut for 3, 4.
    fn ring_with_relay() -> Network {
        Network::new(
            6,
            0,
            vec![0, 1, 1, 1, 1, 0],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (0, 5)],
        )
        .unwrap()
    }

    #[test]
    fn light_tree_construction_spans_sources_through_relays() {
        let net = ring_with_relay();
        let params = CostParams::new(5, rat(1), rat(1)).unwrap();
        let tree = solve_mecat_rn_alg2(&net, &params).unwrap();
        tree.validate(&net).unwrap();
        assert!(tree.spans_sources(&net));
        assert!(useless_relays(&tree, &net).unwrap().is_empty());
        let cost = tree_cost(&tree, &net, &params).unwrap();
        assert!(cost > rat(0));
    }

    #[test]
    fn routing_construction_uses_the_relay_shortcut() {
        let net = ring_with_relay();
        let params = CostParams::new(5, rat(1), rat(1)).unwrap();
        let tree = solve_mecat_rn_alg3(&net, &params, &ShortestPathsSolver).unwrap();
        tree.validate(&net).unwrap();
        assert!(tree.spans_sources(&net));
        // 3's shortest path to the sink runs through the relay.
        assert_eq!(tree.parent(3), Some(5));
        assert_eq!(tree.parent(5), Some(0));
    }

    #[test]
    fn both_relay_algorithms_handle_a_sink_only_neighborhood() {
        // Single source adjacent to the sink, one unreachable-by-need relay.
        let net = Network::new(3, 0, vec![0, 3, 0], vec![(0, 1), (1, 2)]).unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        for tree in [
            solve_mecat_rn_alg2(&net, &params).unwrap(),
            solve_mecat_rn_alg3(&net, &params, &SalmanSolver).unwrap(),
        ] {
            assert_eq!(tree.member_count(), 2);
            assert_eq!(tree.parent(1), Some(0));
        }
    }

    #[test]
    fn no_sources_is_an_error_for_relay_algorithms() {
        let net = Network::new(2, 0, vec![0, 0], vec![(0, 1)]).unwrap();
        let params = CostParams::new(2, rat(1), rat(1)).unwrap();
        assert!(matches!(
            solve_mecat_rn_alg2(&net, &params),
            Err(AggError::NoSources)
        ));
        assert!(matches!(
            solve_mecat_rn_alg3(&net, &params, &SalmanSolver),
            Err(AggError::NoSources)
        ));
    }

    #[test]
    fn baseline_is_seed_deterministic_and_spanning() {
        let net = relay_free_net();
        let params = CostParams::new(3, rat(1), rat(1)).unwrap();
        let a = solve_spanning_baseline(&net, &params, 42).unwrap();
        let b = solve_spanning_baseline(&net, &params, 42).unwrap();
        assert_eq!(
            a.parent_pairs().collect::<Vec<_>>(),
            b.parent_pairs().collect::<Vec<_>>()
        );
        assert!(a.spans_all(&net));
        a.validate(&net).unwrap();
    }
}
