//! Aggregation via explicit routing: pick one sink-bound path per source,
//! overlay the paths, and pay for packet slots on every edge. A good route
//! concentrates traffic so slots are shared. Any routing heuristic can be
//! plugged in; the library ships two, and a routing tree can itself be read
//! back as a route.
//!
//! Run with: cargo run --example cnd_routing

use aggtree::algos::solve_mecat_rn_alg3;
use aggtree::cnd::{
    cnd_cost, salman_route, shortest_paths_route, solver_by_name, tree_to_cnd_route, CndInstance,
    SalmanSolver,
};
use aggtree::cost::{tree_cost, CostParams};
use aggtree::graph::Network;
use aggtree::rat::{format_rational, rat};

fn main() -> aggtree::Result<()> {
    // Two sources, each with its own three-hop relay corridor to the sink,
    // plus a short cross link between them. Per-source shortest paths use
    // both corridors; merging traffic over the cross link fills one
    // corridor's packet slots instead.
    //
    //   0 --- 3 --- 4 --- 1
    //   |                 |
    //   5 --- 6 --------- 2
    let net = Network::new(
        7,
        0,
        vec![0, 1, 1, 0, 0, 0, 0],
        vec![(0, 3), (3, 4), (4, 1), (0, 5), (5, 6), (6, 2), (1, 2)],
    )?;
    let params = CostParams::new(4, rat(1), rat(1))?;
    let inst = CndInstance::from_network(&net, &params)?;

    let direct = shortest_paths_route(&inst)?;
    let merged = salman_route(&inst)?;
    let direct_cost = cnd_cost(&direct, &inst)?;
    let merged_cost = cnd_cost(&merged, &inst)?;
    println!("shortest-path route cost:  {}", format_rational(&direct_cost));
    println!("cluster-merged route cost: {}", format_rational(&merged_cost));
    for (source, path) in merged.paths() {
        println!("  source {source} rides {path:?}");
    }
    // Both corridors cost 6 slots; the merged route needs only 4.
    assert!(merged_cost < direct_cost);

    // The named-solver registry drives the full tree construction: route,
    // overlay the paths, then build a shortest-path tree inside the overlay.
    for name in ["salman", "sp-only"] {
        let solver = solver_by_name(name)?;
        let tree = solve_mecat_rn_alg3(&net, &params, solver.as_ref())?;
        println!(
            "solver {name:8} -> tree cost {}",
            format_rational(&tree_cost(&tree, &net, &params)?)
        );
    }
    assert!(solver_by_name("annealing").is_err());

    // A routing tree is a route in disguise: follow each source's parent
    // chain. The slot accounting then reproduces the tree's cost exactly,
    // which pins down how the two cost models relate.
    let tree = solve_mecat_rn_alg3(&net, &params, &SalmanSolver)?;
    let as_route = tree_to_cnd_route(&tree, &inst)?;
    assert_eq!(
        cnd_cost(&as_route, &inst)?,
        tree_cost(&tree, &net, &params)?
    );
    println!("tree-as-route cost matches the tree cost");
    Ok(())
}
