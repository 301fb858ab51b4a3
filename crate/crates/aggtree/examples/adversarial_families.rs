//! No single tree shape wins everywhere. Two scalable instance families
//! make that concrete: in one, hugging the shortest paths gets ever more
//! wasteful; in the other, hugging the fewest-edge tree does. Each family
//! member carries both reference trees so the gap is checkable, and at
//! small sizes exhaustive search confirms which reference is really best.
//!
//! Run with: cargo run --example adversarial_families

use aggtree::cost::tree_cost;
use aggtree::families::{spt_trap, steiner_trap};
use aggtree::oracle::brute_force_mecat_rn_with_cap;
use aggtree::rat::{format_rational, rat};

fn main() -> aggtree::Result<()> {
    // Family one: a chain of sources next to the sink, plus a private
    // relay shortcut for each source. Shortest-path trees take the
    // shortcuts, miss every chance to share packets, and pay per source;
    // riding the chain costs a constant.
    println!("chain family (q = 2): shortcut tree vs chain tree");
    println!("sources | shortcuts | chain | ratio");
    let mut last_ratio = rat(0);
    for m in 3..=10 {
        let fam = steiner_trap(m)?;
        let trapped = tree_cost(&fam.trapped, &fam.net, &fam.params)?;
        let escape = tree_cost(&fam.escape, &fam.net, &fam.params)?;
        let ratio = trapped / escape;
        assert!(ratio >= last_ratio, "the gap must widen with size");
        last_ratio = ratio;
        println!(
            "   {m:2}   |    {:3}    |  {:3}  | {}",
            format_rational(&trapped),
            format_rational(&escape),
            format_rational(&ratio)
        );
    }
    // The ratio tends to (m+2)/8 as m grows: unbounded.
    assert!(last_ratio > rat(1));

    // Family two: every source could reach the sink in one hop through a
    // relay ladder, but the fewest-edge tree chains the sources instead.
    // With q equal to the source count, the chain forces m packets through
    // each prefix, while the ladder ships one packet per source.
    println!("\nladder family (q = m): chain tree vs ladder tree");
    println!("sources | chain | ladder | ratio");
    for m in 3..=10 {
        let fam = spt_trap(m)?;
        let trapped = tree_cost(&fam.trapped, &fam.net, &fam.params)?;
        let escape = tree_cost(&fam.escape, &fam.net, &fam.params)?;
        println!(
            "   {m:2}   |  {:3}  |  {:3}   | {}",
            format_rational(&trapped),
            format_rational(&escape),
            format_rational(&(trapped / escape))
        );
    }

    // At sizes the exhaustive oracle can handle, the ladder tree is not
    // merely better -- it is optimal.
    for m in [4, 5] {
        let fam = spt_trap(m)?;
        let (best, best_cost) = brute_force_mecat_rn_with_cap(&fam.net, &fam.params, 12)?;
        let escape = tree_cost(&fam.escape, &fam.net, &fam.params)?;
        assert_eq!(best_cost, escape, "ladder tree must be optimal at m = {m}");
        assert_eq!(best.member_count(), fam.escape.member_count());
        println!("\nladder family m = {m}: oracle optimum {} matches the ladder tree", format_rational(&best_cost));
    }

    // The chain family's cheap reference is cheap but not always optimal:
    // pairing adjacent chain sources through shared relays beats it.
    let fam = steiner_trap(5)?;
    let (_, best_cost) = brute_force_mecat_rn_with_cap(&fam.net, &fam.params, 12)?;
    let escape = tree_cost(&fam.escape, &fam.net, &fam.params)?;
    println!(
        "chain family m = 5: oracle optimum {} vs chain tree {}",
        format_rational(&best_cost),
        format_rational(&escape)
    );
    assert!(best_cost < escape);
    Ok(())
}
