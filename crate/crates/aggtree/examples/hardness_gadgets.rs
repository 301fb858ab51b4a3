//! Why exact solving is out of reach: two classic NP-hard problems embed
//! into budget-feasibility questions about routing trees. Each embedding is
//! constructive in both directions — a solution of one side translates into
//! a solution of the other — and this example runs the translations against
//! exhaustive search to show they agree.
//!
//! Run with: cargo run --example hardness_gadgets

use aggtree::oracle::{mecat_feasible_with_cap, mecat_rn_feasible_with_cap};
use aggtree::rat::format_rational;
use aggtree::reduction::{
    dominating_set_to_tree, ds_feasible_brute, ds_gadget, lbsm_feasible_brute, lbsm_gadget,
    semi_matching_to_tree, tree_to_dominating_set, tree_to_semi_matching, DsInstance,
    LbsmInstance,
};
use std::collections::BTreeSet;

fn main() -> aggtree::Result<()> {
    // --- Load-balanced semi-matching -> relay-free budget feasibility ---
    //
    // Three tasks (left, with weights) must each be assigned to a machine
    // (right) they are compatible with, no machine carrying more than k
    // weight. The gadget turns tasks and machines into sensor nodes whose
    // every budget-respecting routing tree encodes an assignment.
    let tasks = LbsmInstance::new(
        3,
        2,
        vec![2, 1, 1],
        [(0, 0), (0, 1), (1, 0), (1, 1), (2, 1)].into_iter().collect(),
        2,
    )?;
    let gadget = lbsm_gadget(&tasks)?;
    println!(
        "semi-matching gadget: {} nodes, q = {}, budget = {}",
        gadget.net.node_count(),
        gadget.params.q,
        format_rational(&gadget.budget)
    );

    let direct = lbsm_feasible_brute(&tasks);
    let via_tree = mecat_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)?;
    assert_eq!(direct.is_some(), via_tree.is_some());

    let assignment = direct.expect("this instance is feasible");
    println!("assignment found directly: {assignment:?}");
    // Forward: assignment -> tree within budget.
    let tree = semi_matching_to_tree(&tasks, &gadget, &assignment)?;
    // Backward: the tree the oracle found -> assignment with max load <= k.
    let recovered = tree_to_semi_matching(&tasks, &gadget, &via_tree.unwrap())?;
    println!("assignment recovered from the oracle's tree: {recovered:?}");
    assert!(aggtree::cost::check_budget(&tree, &gadget.net, &gadget.params)?);

    // Tighten the capacity and both sides flip to infeasible together.
    let tight = LbsmInstance::new(3, 2, vec![2, 1, 1], tasks.edges.clone(), 1)?;
    let tight_gadget = lbsm_gadget(&tight)?;
    assert!(lbsm_feasible_brute(&tight).is_none());
    assert!(
        mecat_feasible_with_cap(&tight_gadget.net, &tight_gadget.params, tight_gadget.budget, 16)?
            .is_none()
    );
    println!("capacity 1 is infeasible on both sides");

    // --- Dominating set -> relay budget feasibility ---
    //
    // A five-cycle needs two dominators. The gadget makes each graph node a
    // relay/source pair; a routing tree within budget can afford exactly k
    // active relays, which dominate the graph.
    let cycle = DsInstance::new(
        5,
        [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)].into_iter().collect(),
        2,
    )?;
    let gadget = ds_gadget(&cycle)?;
    println!(
        "dominating-set gadget: {} nodes, q = {}, budget = {}",
        gadget.net.node_count(),
        gadget.params.q,
        format_rational(&gadget.budget)
    );

    let direct = ds_feasible_brute(&cycle).expect("two dominators suffice on a 5-cycle");
    println!("dominating set found directly: {direct:?}");
    let tree = dominating_set_to_tree(&cycle, &gadget, &direct)?;
    let recovered: BTreeSet<usize> = tree_to_dominating_set(&cycle, &gadget, &tree)?;
    assert!(cycle.is_dominating(&recovered));
    assert!(recovered.len() as u64 <= cycle.k);

    let via_tree = mecat_rn_feasible_with_cap(&gadget.net, &gadget.params, gadget.budget, 16)?
        .expect("gadget must be feasible when the graph has a small dominating set");
    let from_oracle = tree_to_dominating_set(&cycle, &gadget, &via_tree)?;
    println!("dominating set recovered from the oracle's tree: {from_oracle:?}");

    // One dominator cannot cover a 5-cycle, and the gadget knows it.
    let starved = DsInstance::new(5, cycle.edges.clone(), 1)?;
    let starved_gadget = ds_gadget(&starved)?;
    assert!(ds_feasible_brute(&starved).is_none());
    assert!(mecat_rn_feasible_with_cap(
        &starved_gadget.net,
        &starved_gadget.params,
        starved_gadget.budget,
        16
    )?
    .is_none());
    println!("one dominator is infeasible on both sides");
    Ok(())
}
