//! The exhaustive toolkit behind every quality claim: optimal trees by
//! brute force, budget feasibility, spanning-tree counting, and the cheap
//! lower bound that brackets the optimum from below. Sizes are capped to
//! keep the search honest about its exponential nature; the cap can be
//! lifted through the AGGTREE_ORACLE_CAP environment variable.
//!
//! Run with: cargo run --example exhaustive_search

use aggtree::cost::tree_cost;
use aggtree::cost::CostParams;
use aggtree::error::AggError;
use aggtree::graph::Network;
use aggtree::oracle::{
    brute_force_mecat, brute_force_mecat_with_cap, count_spanning_trees, lower_bound,
    mecat_feasible,
};
use aggtree::rat::{format_rational, rat};

fn main() -> aggtree::Result<()> {
    // A 3x2 grid of sources below the sink.
    //
    //   0 - 1 - 2
    //   |   |   |
    //   3 - 4 - 5
    let net = Network::new(
        6,
        0,
        vec![0, 1, 1, 1, 1, 1],
        vec![(0, 1), (1, 2), (0, 3), (1, 4), (2, 5), (3, 4), (4, 5)],
    )?;
    let params = CostParams::new(2, rat(2), rat(1))?;

    // How big is the search space? Every spanning tree is a candidate.
    let trees = count_spanning_trees(&net)?;
    println!("the grid has {trees} spanning trees");

    let (best, best_cost) = brute_force_mecat(&net, &params)?;
    println!("optimal cost: {}", format_rational(&best_cost));
    for (child, parent) in best.parent_pairs() {
        println!("  {child} -> {parent}");
    }

    // The lower bound never exceeds the optimum, and the gap here is small.
    let bound = lower_bound(&net, &params)?;
    println!(
        "lower bound: {} (gap {})",
        format_rational(&bound),
        format_rational(&(best_cost - bound))
    );
    assert!(bound <= best_cost);

    // Feasibility brackets the optimum: the optimal cost is feasible as a
    // budget, one unit less is not.
    assert!(mecat_feasible(&net, &params, best_cost)?.is_some());
    assert!(mecat_feasible(&net, &params, best_cost - rat(1))?.is_none());
    if let Some(tree) = mecat_feasible(&net, &params, best_cost)? {
        assert_eq!(tree_cost(&tree, &net, &params)?, best_cost);
    }
    println!("feasibility flips exactly at the optimum");

    // Search sizes are capped; a too-large instance is refused rather than
    // silently burning hours.
    let mut sizes = vec![1u64; 12];
    sizes[0] = 0;
    let chain_edges: Vec<_> = (0..11).map(|i| (i, i + 1)).collect();
    let long = Network::new(12, 0, sizes, chain_edges)?;
    match brute_force_mecat(&long, &params) {
        Err(AggError::OracleCap { size, cap }) => {
            println!("refused {size}-node search (cap {cap}); raise AGGTREE_ORACLE_CAP to override")
        }
        other => panic!("expected the cap to trip, got {other:?}"),
    }
    // With an explicit cap the same search runs: a path has exactly one
    // spanning tree, so the optimum is forced.
    let (_, forced) = brute_force_mecat_with_cap(&long, &params, 12)?;
    println!(
        "12-node path under an explicit cap: optimal cost {}",
        format_rational(&forced)
    );
    Ok(())
}
