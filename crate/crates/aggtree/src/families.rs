//! Adversarial instance families showing that minimizing the wrong
//! objective can cost a factor linear in the number of sources.
//!
//! Each family builds a network together with two explicit trees: the one
//! a single-objective minimizer is lured into, and the cheap tree it
//! overlooks. The cost gap between the two grows linearly with the number
//! of sources.

use std::collections::BTreeMap;

use crate::cost::{CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId};
use crate::rat::rat;

/// A lure-and-escape pair on one network.
pub struct TrapFamily {
    pub net: Network,
    pub params: CostParams,
    /// The tree built by minimizing the trapped objective.
    pub trapped: RoutingTree,
    /// The cheaper tree that objective can never find.
    pub escape: RoutingTree,
}

/// Network punishing edge-count minimization: `m` sources in a chain off
/// the sink, plus a private relay detour for every source past the second.
/// The fewest-edge tree is the bare chain, which funnels all reports
/// through its head at capacity 2; the escape tree pays one relay per
/// source to keep every load at one packet.
///
/// Node ids: sink 0, sources 1..=m along the chain, relay for source `i`
/// (3 <= i <= m) at `m + i - 2`.
pub fn steiner_trap(m: usize) -> Result<TrapFamily> {
    if m < 3 {
        return Err(AggError::InvalidInstance(
            "the family needs at least 3 sources".into(),
        ));
    }
    let n = 2 * m - 1;
    let mut sizes = vec![0u64; n];
    for u in 1..=m {
        sizes[u] = 1;
    }
    let mut edges: Vec<(NodeId, NodeId)> = vec![(0, 1)];
    for u in 1..m {
        edges.push((u, u + 1));
    }
    for i in 3..=m {
        let s = m + i - 2;
        edges.push((0, s));
        edges.push((s, i));
    }
    let net = Network::new(n, 0, sizes, edges)?;
    let params = CostParams::new(2, rat(1), rat(1))?;

    let mut trapped = BTreeMap::new();
    trapped.insert(1, 0);
    for u in 2..=m {
        trapped.insert(u, u - 1);
    }
    let trapped = RoutingTree::new(0, trapped);

    let mut escape = BTreeMap::new();
    escape.insert(1, 0);
    escape.insert(2, 1);
    for i in 3..=m {
        let s = m + i - 2;
        escape.insert(s, 0);
        escape.insert(i, s);
    }
    let escape = RoutingTree::new(0, escape);

    trapped.validate(&net)?;
    escape.validate(&net)?;
    Ok(TrapFamily {
        net,
        params,
        trapped,
        escape,
    })
}

/// Network punishing hop-distance minimization: the same source chain, but
/// source `i`'s private detour is a relay path one hop shorter than the
/// chain prefix. A shortest-path tree can route every source through its
/// detour, paying for a quadratic number of relays; the escape tree is the
/// bare chain, where capacity `m` absorbs every report into single
/// packets.
///
/// Node ids: sink 0, sources 1..=m, and the detour for source `i`
/// (3 <= i <= m) occupies `i - 2` relays numbered consecutively from
/// `m + 1 + (i - 3)(i - 2) / 2`, starting at the sink side.
pub fn spt_trap(m: usize) -> Result<TrapFamily> {
    if m < 3 {
        return Err(AggError::InvalidInstance(
            "the family needs at least 3 sources".into(),
        ));
    }
    let relay_count = (m - 1) * (m - 2) / 2;
    let n = 1 + m + relay_count;
    let mut sizes = vec![0u64; n];
    for u in 1..=m {
        sizes[u] = 1;
    }
    let relay = |i: usize, j: usize| -> NodeId { m + (i - 3) * (i - 2) / 2 + j };

    let mut edges: Vec<(NodeId, NodeId)> = vec![(0, 1)];
    for u in 1..m {
        edges.push((u, u + 1));
    }
    for i in 3..=m {
        edges.push((0, relay(i, 1)));
        for j in 1..i - 2 {
            edges.push((relay(i, j), relay(i, j + 1)));
        }
        edges.push((relay(i, i - 2), i));
    }
    let net = Network::new(n, 0, sizes, edges)?;
    let params = CostParams::new(m as u64, rat(1), rat(1))?;

    let mut trapped = BTreeMap::new();
    trapped.insert(1, 0);
    trapped.insert(2, 1);
    for i in 3..=m {
        trapped.insert(relay(i, 1), 0);
        for j in 1..i - 2 {
            trapped.insert(relay(i, j + 1), relay(i, j));
        }
        trapped.insert(i, relay(i, i - 2));
    }
    let trapped = RoutingTree::new(0, trapped);

    let mut escape = BTreeMap::new();
    escape.insert(1, 0);
    for u in 2..=m {
        escape.insert(u, u - 1);
    }
    let escape = RoutingTree::new(0, escape);

    trapped.validate(&net)?;
    escape.validate(&net)?;
    Ok(TrapFamily {
        net,
        params,
        trapped,
        escape,
    })
}
