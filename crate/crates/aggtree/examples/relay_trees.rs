//! Networks with relay nodes: relays forward traffic but have nothing of
//! their own to report, so a tree only pays for the relays it actually
//! routes through. This example compares the three relay-aware strategies
//! on one network and shows why pruning idle relays never hurts.
//!
//! Run with: cargo run --example relay_trees

use aggtree::algos::{solve_mecat_rn_alg2, solve_mecat_rn_alg3};
use aggtree::cnd::SalmanSolver;
use aggtree::cost::{prune_useless_relays, tree_cost, useless_relays, CostParams, RoutingTree};
use aggtree::graph::{Network, Role};
use aggtree::rat::{format_rational, rat};
use aggtree::trees::{shortest_path_tree, steiner_tree_2approx};
use std::collections::{BTreeMap, BTreeSet};

fn main() -> aggtree::Result<()> {
    // Sources 1-4 ring the sink through relays 5-7; relay 8 dangles off the
    // ring and serves nobody.
    //
    //    1 --- 5 --- 0 --- 6 --- 3
    //    |           |           |
    //    2 --------- 7 --------- 4 --- 8
    let net = Network::new(
        9,
        0,
        vec![0, 1, 1, 1, 1, 0, 0, 0, 0],
        vec![
            (1, 5),
            (5, 0),
            (0, 6),
            (6, 3),
            (1, 2),
            (2, 7),
            (7, 0),
            (7, 4),
            (3, 4),
            (4, 8),
        ],
    )?;
    assert_eq!(net.role(8), Role::Relay);
    let params = CostParams::new(2, rat(2), rat(1))?;

    let sources: BTreeSet<_> = net.sources().into_iter().collect();
    let mut terminals = sources.clone();
    terminals.insert(net.sink());

    let spt = shortest_path_tree(&net, net.sink(), &sources)?;
    let steiner = steiner_tree_2approx(&net, &terminals)?;
    let light = solve_mecat_rn_alg2(&net, &params)?;
    let routed = solve_mecat_rn_alg3(&net, &params, &SalmanSolver)?;

    println!("strategy      | cost | relays used");
    for (name, tree) in [
        ("spt-sources", &spt),
        ("steiner", &steiner),
        ("light-tree", &light),
        ("route-salman", &routed),
    ] {
        let cost = tree_cost(tree, &net, &params)?;
        let used: Vec<_> = tree
            .members()
            .iter()
            .copied()
            .filter(|&v| net.role(v) == Role::Relay)
            .collect();
        println!(
            "{name:13} |  {}  | {used:?}",
            format_rational(&cost)
        );
        // Nobody routes through the dead-end relay 8.
        assert!(!tree.contains(8));
        // The constructions only keep relays that carry traffic.
        assert!(useless_relays(tree, &net)?.is_empty());
    }

    // Pruning in action: hang relay 8 onto an otherwise fine tree and watch
    // it come off again without touching the cost.
    let mut parent: BTreeMap<_, _> = light.parent_pairs().collect();
    parent.insert(8, 4);
    let padded = RoutingTree::new(0, parent);
    padded.validate(&net)?;
    assert_eq!(useless_relays(&padded, &net)?, vec![8]);
    let pruned = prune_useless_relays(&padded, &net)?;
    assert!(!pruned.contains(8));
    assert_eq!(
        tree_cost(&pruned, &net, &params)?,
        tree_cost(&padded, &net, &params)?
    );
    println!("idle relay 8 pruned; cost unchanged");
    Ok(())
}
