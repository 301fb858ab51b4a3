//! When every node is a source, the shortest-path tree is a safe bet: its
//! cost is always within a factor of two of the best possible routing tree.
//! This example checks that bound against exhaustive search on a batch of
//! small random networks, and shows a case where the shortest-path tree is
//! genuinely not optimal.
//!
//! Run with: cargo run --example spt_approximation

use aggtree::algos::solve_mecat_spt;
use aggtree::cost::{tree_cost, CostParams};
use aggtree::graph::Network;
use aggtree::oracle::brute_force_mecat;
use aggtree::rat::{format_rational, rat};
use aggtree::rgg::{generate_rgg, RggConfig};

fn main() -> aggtree::Result<()> {
    // Exhaustive search over parent choices is exponential, so stay small.
    let cfg = RggConfig {
        n: 8,
        field: 40.0,
        range: 22.0,
        sink_at: (20.0, 20.0),
        ..RggConfig::default()
    };

    println!("seed | spt cost | optimal | ratio");
    let mut worst = rat(0);
    for seed in 0..12 {
        let (net, _) = generate_rgg(&RggConfig { seed, ..cfg.clone() })?;
        let params = CostParams::new(2, rat(2), rat(1))?;
        let spt = solve_mecat_spt(&net, &params)?;
        let spt_cost = tree_cost(&spt, &net, &params)?;
        let (_, opt_cost) = brute_force_mecat(&net, &params)?;
        let ratio = spt_cost / opt_cost;
        assert!(
            ratio <= rat(2),
            "approximation bound violated at seed {seed}"
        );
        if ratio > worst {
            worst = ratio;
        }
        println!(
            "  {seed}  |    {}    |   {}    | {}",
            format_rational(&spt_cost),
            format_rational(&opt_cost),
            format_rational(&ratio)
        );
    }
    println!("worst observed ratio: {}", format_rational(&worst));

    // A hand-built case where every shortest-path tree must lose. Node 4
    // (size 5) sits two hops out; its only two-hop route runs through the
    // equally heavy node 1, whose subtree then carries 10 units and needs
    // two packets at q = 9. The three-hop detour through 3 and 2 keeps all
    // loads within one packet, and the exhaustive search finds it.
    //
    //      0 --- 1(s=5) --- 4(s=5)
    //      |                |
    //      2(s=1) --- 3(s=1)
    let net = Network::new(
        5,
        0,
        vec![0, 5, 1, 1, 5],
        vec![(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
    )?;
    let params = CostParams::new(9, rat(1), rat(1))?;
    let spt = solve_mecat_spt(&net, &params)?;
    let spt_cost = tree_cost(&spt, &net, &params)?;
    let (best, opt_cost) = brute_force_mecat(&net, &params)?;
    println!(
        "detour case: spt {} vs optimal {}",
        format_rational(&spt_cost),
        format_rational(&opt_cost)
    );
    assert_eq!(spt_cost, rat(10));
    assert_eq!(opt_cost, rat(8));
    // The optimum routes 4 through 3 and 2, filling packets along the chain.
    assert_eq!(best.parent(4), Some(3));
    Ok(())
}
