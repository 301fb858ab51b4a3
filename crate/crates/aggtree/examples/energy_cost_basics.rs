//! The cost model from first principles: build a seven-node network by
//! hand, route it, and walk through where every unit of energy goes.
//!
//! Each node forwards its own report plus everything its subtree collected,
//! packed into packets of q report-units; sending one packet over one link
//! costs tx at the sender and rx at the receiver.
//!
//! Run with: cargo run --example energy_cost_basics

use aggtree::cost::{descendant_loads, packets_sent, tree_cost, CostParams, RoutingTree};
use aggtree::graph::Network;
use aggtree::rat::{format_rational, rat};
use std::collections::BTreeMap;

fn main() -> aggtree::Result<()> {
    // A sink (node 0) with two branches hanging off it:
    //
    //        0
    //       / \
    //      1   2
    //     /   / \
    //    3   4   5
    //            |
    //            6
    //
    // Every non-sink node is a source with a report of size 1.
    let net = Network::new(
        7,
        0,
        vec![0, 1, 1, 1, 1, 1, 1],
        vec![(0, 1), (0, 2), (1, 3), (2, 4), (2, 5), (5, 6)],
    )?;

    // Aggregation ratio 3: a node may pack up to 3 report-units per packet.
    let params = CostParams::new(3, rat(2), rat(1))?;

    // Route along the drawing above.
    let parent: BTreeMap<_, _> = [(1, 0), (2, 0), (3, 1), (4, 2), (5, 2), (6, 5)]
        .into_iter()
        .collect();
    let tree = RoutingTree::new(0, parent);
    tree.validate(&net)?;

    let loads = descendant_loads(&tree, &net)?;
    let packets = packets_sent(&tree, &net, &params)?;
    println!("q = {}, tx = 2, rx = 1", params.q);
    println!("node | carries | packets sent");
    for v in 1..net.node_count() {
        let carried = loads[&v] + net.report_size(v);
        println!("  {v}  |    {carried}    |      {}", packets[&v]);
    }

    // Node 2 carries its own report plus 4, 5, 6 -> 4 units -> 2 packets.
    assert_eq!(packets[&2], 2);
    // Everyone else fits in one packet.
    assert_eq!(packets.values().sum::<u64>(), 7);

    // Total: 7 packets, each costing tx + rx = 3.
    let cost = tree_cost(&tree, &net, &params)?;
    println!("total energy: {}", format_rational(&cost));
    assert_eq!(cost, rat(21));

    // With no aggregation (q = 1) every report-unit travels alone, so node 2
    // sends 4 packets and the price goes up accordingly.
    let single = CostParams::new(1, rat(2), rat(1))?;
    let cost_single = tree_cost(&tree, &net, &single)?;
    println!("without aggregation: {}", format_rational(&cost_single));
    assert_eq!(cost_single, rat(33));

    // With q large enough to swallow whole subtrees, each node sends exactly
    // one packet: 6 senders * 3 energy.
    let wide = CostParams::new(100, rat(2), rat(1))?;
    assert_eq!(tree_cost(&tree, &net, &wide)?, rat(18));
    println!("with saturating aggregation: 18");

    Ok(())
}
