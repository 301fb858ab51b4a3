//! Light approximate shortest-path trees: a spanning tree that is
//! simultaneously close to a shortest-path tree (every root path within 3x
//! the true distance) and close to a minimum spanning tree (total weight
//! within 2x). Neither tree alone offers both; the combined tree is what
//! the relay-aware solvers build their scaffolding from.
//!
//! Run with: cargo run --example last_invariants

use aggtree::graph::{minimum_spanning_tree, NodeId, WeightedGraph};
use aggtree::rat::{format_rational, rat, Rational};
use aggtree::rgg::{generate_rgg, RggConfig};
use aggtree::trees::{last_tree, LastParams};
use aggtree::cost::RoutingTree;

fn path_weight(tree: &RoutingTree, g: &WeightedGraph, mut v: NodeId) -> Rational {
    let mut total = rat(0);
    while let Some(p) = tree.parent(v) {
        total += g.weight(v, p).expect("tree edge exists in the graph");
        v = p;
    }
    total
}

fn check_invariants(g: &WeightedGraph, root: NodeId, label: &str) -> aggtree::Result<()> {
    let params = LastParams::default(); // alpha = 3, beta = 2
    let tree = last_tree(g, root, &params)?;
    let dist = g.distances(root);

    let mst_weight: Rational = minimum_spanning_tree(g).iter().map(|&(_, _, w)| w).sum();
    let tree_weight: Rational = tree
        .parent_pairs()
        .map(|(c, p)| g.weight(c, p).expect("tree edge exists"))
        .sum();

    let mut worst_stretch = rat(0);
    for v in 0..g.node_count() {
        if v == root {
            continue;
        }
        let along_tree = path_weight(&tree, g, v);
        assert!(along_tree <= rat(3) * dist[v], "distance guarantee broken");
        if dist[v] > rat(0) {
            let stretch = along_tree / dist[v];
            if stretch > worst_stretch {
                worst_stretch = stretch;
            }
        }
    }
    assert!(tree_weight <= rat(2) * mst_weight, "weight guarantee broken");
    println!(
        "{label}: weight {} vs mst {}, worst path stretch {}",
        format_rational(&tree_weight),
        format_rational(&mst_weight),
        format_rational(&worst_stretch)
    );
    Ok(())
}

fn main() -> aggtree::Result<()> {
    // A ring where the two goals pull apart. The minimum spanning tree
    // keeps the six unit edges and drops the 3/2 chord, leaving node 6 a
    // six-hop walk from the root even though it sits 3/2 away. The light
    // tree must graft the chord back in.
    let mut edges: Vec<(NodeId, NodeId, Rational)> =
        (0..6).map(|i| (i, i + 1, rat(1))).collect();
    edges.push((0, 6, rat(3) / rat(2)));
    let ring = WeightedGraph::new(7, edges)?;

    let tree = last_tree(&ring, 0, &LastParams::default())?;
    assert_eq!(tree.parent(6), Some(0), "the chord must be grafted");
    check_invariants(&ring, 0, "ring with chord")?;

    // The guarantees are not a small-graph artifact: check a batch of
    // random geometric networks under hop weights.
    for seed in 0..6 {
        let (net, _) = generate_rgg(&RggConfig {
            n: 60,
            field: 80.0,
            range: 18.0,
            sink_at: (40.0, 40.0),
            seed,
            ..RggConfig::default()
        })?;
        let g = net.to_weighted(rat(1))?;
        check_invariants(&g, net.sink(), &format!("geometric seed {seed}"))?;
    }
    Ok(())
}
