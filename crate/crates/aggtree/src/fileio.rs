//! Line-based text formats for networks, routing trees, and the two
//! combinatorial problem inputs (load-balanced semi-matching and dominating
//! set). The formats are deliberately trivial — one declaration per line,
//! whitespace-separated tokens, `#` starts a comment — so fixtures can be
//! written and diffed by hand.
//!
//! Network file:
//! ```text
//! # ids are 0-based; the sink appears exactly once
//! net 4
//! param q 2 tx 2 rx 1
//! node 0 0 sink 50 50
//! node 1 1 source 40 50
//! node 2 1 source 60 50
//! node 3 0 relay 50 40
//! edge 0 1
//! edge 0 3
//! edge 1 2
//! edge 2 3
//! ```
//! Coordinates are optional, but must be given for either all nodes or none.
//! `param` optionally ends with `budget <num>`.
//!
//! Tree file: `root <id>` then one `parent <child> <parent>` line per
//! non-root member, sorted by child.
//!
//! Semi-matching file: `lbsm <left> <right> <k>`, then optional
//! `weight <i> <w>` lines (weights default to 1) and `edge <i> <j>` lines
//! with `i` on the left side and `j` on the right.
//!
//! Dominating-set file: `ds <n> <k>` then `edge <i> <j>` lines.

use std::collections::{BTreeMap, BTreeSet};

use crate::cost::{CostParams, RoutingTree};
use crate::error::{AggError, Result};
use crate::graph::{Network, NodeId, Role};
use crate::rat::{format_rational, parse_rational};
use crate::reduction::{DsInstance, LbsmInstance};

/// Strips comments and blank lines, returning `(line_number, tokens)` per
/// surviving line.
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, line)| {
            let code = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = code.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((idx + 1, tokens))
            }
        })
        .collect()
}

fn parse_err(line: usize, msg: impl AsRef<str>) -> AggError {
    AggError::Parse(format!("line {line}: {}", msg.as_ref()))
}

fn parse_token<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{token}`")))
}

/// Parses a network file into the network and its cost parameters.
pub fn parse_network(text: &str) -> Result<(Network, CostParams)> {
    let mut n: Option<usize> = None;
    let mut params: Option<CostParams> = None;
    let mut nodes: BTreeMap<NodeId, (u64, Role, Option<(f64, f64)>)> = BTreeMap::new();
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "net" => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate net line"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected `net <n>`"));
                }
                n = Some(parse_token(line, tokens[1], "node count")?);
            }
            "param" => {
                if params.is_some() {
                    return Err(parse_err(line, "duplicate param line"));
                }
                if tokens.len() != 7 && tokens.len() != 9 {
                    return Err(parse_err(
                        line,
                        "expected `param q <int> tx <num> rx <num> [budget <num>]`",
                    ));
                }
                if tokens[1] != "q" || tokens[3] != "tx" || tokens[5] != "rx" {
                    return Err(parse_err(line, "param keywords must be q, tx, rx"));
                }
                let q: u64 = parse_token(line, tokens[2], "aggregation ratio")?;
                let tx = parse_rational(tokens[4]).map_err(|_| parse_err(line, "bad tx"))?;
                let rx = parse_rational(tokens[6]).map_err(|_| parse_err(line, "bad rx"))?;
                let mut p = CostParams::new(q, tx, rx)?;
                if tokens.len() == 9 {
                    if tokens[7] != "budget" {
                        return Err(parse_err(line, "expected `budget <num>`"));
                    }
                    let budget =
                        parse_rational(tokens[8]).map_err(|_| parse_err(line, "bad budget"))?;
                    p = p.with_budget(budget);
                }
                params = Some(p);
            }
            "node" => {
                if tokens.len() != 4 && tokens.len() != 6 {
                    return Err(parse_err(
                        line,
                        "expected `node <id> <s> <source|relay|sink> [<x> <y>]`",
                    ));
                }
                let id: NodeId = parse_token(line, tokens[1], "node id")?;
                let size: u64 = parse_token(line, tokens[2], "report size")?;
                let role = match tokens[3] {
                    "source" => Role::Source,
                    "relay" => Role::Relay,
                    "sink" => Role::Sink,
                    other => return Err(parse_err(line, format!("unknown role `{other}`"))),
                };
                let coords = if tokens.len() == 6 {
                    let x: f64 = parse_token(line, tokens[4], "x coordinate")?;
                    let y: f64 = parse_token(line, tokens[5], "y coordinate")?;
                    Some((x, y))
                } else {
                    None
                };
                match role {
                    Role::Source if size == 0 => {
                        return Err(parse_err(line, "sources need a positive report size"))
                    }
                    Role::Relay | Role::Sink if size != 0 => {
                        return Err(parse_err(line, "relays and the sink carry no report"))
                    }
                    _ => {}
                }
                if nodes.insert(id, (size, role, coords)).is_some() {
                    return Err(parse_err(line, format!("duplicate node {id}")));
                }
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `edge <u> <v>`"));
                }
                let u: NodeId = parse_token(line, tokens[1], "endpoint")?;
                let v: NodeId = parse_token(line, tokens[2], "endpoint")?;
                edges.push((u, v));
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }

    let n = n.ok_or_else(|| AggError::Parse("missing net line".into()))?;
    let params = params.ok_or_else(|| AggError::Parse("missing param line".into()))?;
    if nodes.len() != n {
        return Err(AggError::Parse(format!(
            "net says {n} nodes but {} node lines given",
            nodes.len()
        )));
    }
    if let Some(&id) = nodes.keys().find(|&&id| id >= n) {
        return Err(AggError::Parse(format!("node id {id} out of range")));
    }

    let sinks: Vec<NodeId> = nodes
        .iter()
        .filter(|(_, (_, role, _))| *role == Role::Sink)
        .map(|(&id, _)| id)
        .collect();
    let sink = match sinks.as_slice() {
        [one] => *one,
        [] => return Err(AggError::Parse("no sink declared".into())),
        _ => return Err(AggError::Parse("more than one sink declared".into())),
    };

    let sizes: Vec<u64> = (0..n).map(|id| nodes[&id].0).collect();
    let with_coords = nodes.values().filter(|(_, _, c)| c.is_some()).count();
    if with_coords != 0 && with_coords != n {
        return Err(AggError::Parse(
            "coordinates must be given for all nodes or none".into(),
        ));
    }

    let mut net = Network::new(n, sink, sizes, edges)?;
    if with_coords == n {
        let coords: Vec<(f64, f64)> = (0..n).map(|id| nodes[&id].2.unwrap()).collect();
        net = net.with_coords(coords)?;
    }
    // The role written in the file must agree with what the sizes imply.
    for (&id, &(_, role, _)) in &nodes {
        if net.role(id) != role {
            return Err(AggError::Parse(format!(
                "node {id} declared {role:?} but its size says otherwise"
            )));
        }
    }
    Ok((net, params))
}

/// Renders a network and its parameters in the line format.
pub fn write_network(net: &Network, params: &CostParams) -> String {
    let mut out = String::new();
    out.push_str(&format!("net {}\n", net.node_count()));
    out.push_str(&format!(
        "param q {} tx {} rx {}",
        params.q,
        format_rational(&params.tx),
        format_rational(&params.rx)
    ));
    if let Some(budget) = params.budget {
        out.push_str(&format!(" budget {}", format_rational(&budget)));
    }
    out.push('\n');
    for id in 0..net.node_count() {
        let role = match net.role(id) {
            Role::Sink => "sink",
            Role::Source => "source",
            Role::Relay => "relay",
        };
        out.push_str(&format!("node {id} {} {role}", net.report_size(id)));
        if let Some(coords) = net.coords() {
            out.push_str(&format!(" {} {}", coords[id].0, coords[id].1));
        }
        out.push('\n');
    }
    let mut edges = net.edges().to_vec();
    edges.sort_unstable();
    for (u, v) in edges {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

/// Parses a routing-tree file.
pub fn parse_tree(text: &str) -> Result<RoutingTree> {
    let mut root: Option<NodeId> = None;
    let mut parent: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "root" => {
                if root.is_some() {
                    return Err(parse_err(line, "duplicate root line"));
                }
                if tokens.len() != 2 {
                    return Err(parse_err(line, "expected `root <id>`"));
                }
                root = Some(parse_token(line, tokens[1], "root id")?);
            }
            "parent" => {
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `parent <child> <parent>`"));
                }
                let child: NodeId = parse_token(line, tokens[1], "child id")?;
                let par: NodeId = parse_token(line, tokens[2], "parent id")?;
                if parent.insert(child, par).is_some() {
                    return Err(parse_err(line, format!("node {child} has two parents")));
                }
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let root = root.ok_or_else(|| AggError::Parse("missing root line".into()))?;
    if parent.contains_key(&root) {
        return Err(AggError::Parse("the root cannot have a parent".into()));
    }
    Ok(RoutingTree::new(root, parent))
}

/// Renders a routing tree, parent lines sorted by child id.
pub fn write_tree(tree: &RoutingTree) -> String {
    let mut out = format!("root {}\n", tree.root());
    for (child, parent) in tree.parent_pairs() {
        out.push_str(&format!("parent {child} {parent}\n"));
    }
    out
}

/// Parses a load-balanced semi-matching instance. Weights default to 1 for
/// left nodes without a `weight` line.
pub fn parse_lbsm(text: &str) -> Result<LbsmInstance> {
    let mut header: Option<(usize, usize, u64)> = None;
    let mut weight_lines: BTreeMap<usize, u64> = BTreeMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "lbsm" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate lbsm line"));
                }
                if tokens.len() != 4 {
                    return Err(parse_err(line, "expected `lbsm <left> <right> <k>`"));
                }
                header = Some((
                    parse_token(line, tokens[1], "left count")?,
                    parse_token(line, tokens[2], "right count")?,
                    parse_token(line, tokens[3], "capacity k")?,
                ));
            }
            "weight" => {
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `weight <i> <w>`"));
                }
                let i: usize = parse_token(line, tokens[1], "left index")?;
                let w: u64 = parse_token(line, tokens[2], "weight")?;
                if weight_lines.insert(i, w).is_some() {
                    return Err(parse_err(line, format!("duplicate weight for {i}")));
                }
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `edge <i> <j>`"));
                }
                edges.insert((
                    parse_token(line, tokens[1], "left index")?,
                    parse_token(line, tokens[2], "right index")?,
                ));
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let (nu, nv, k) = header.ok_or_else(|| AggError::Parse("missing lbsm line".into()))?;
    if let Some(&i) = weight_lines.keys().find(|&&i| i >= nu) {
        return Err(AggError::Parse(format!("weight index {i} out of range")));
    }
    let weights: Vec<u64> = (0..nu)
        .map(|i| weight_lines.get(&i).copied().unwrap_or(1))
        .collect();
    LbsmInstance::new(nu, nv, weights, edges, k)
}

/// Renders a semi-matching instance. Weights are written only when not 1.
pub fn write_lbsm(inst: &LbsmInstance) -> String {
    let mut out = format!("lbsm {} {} {}\n", inst.nu, inst.nv, inst.k);
    for (i, &w) in inst.weights.iter().enumerate() {
        if w != 1 {
            out.push_str(&format!("weight {i} {w}\n"));
        }
    }
    for &(i, j) in &inst.edges {
        out.push_str(&format!("edge {i} {j}\n"));
    }
    out
}

/// Parses a dominating-set instance.
pub fn parse_ds(text: &str) -> Result<DsInstance> {
    let mut header: Option<(usize, u64)> = None;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (line, tokens) in tokenize(text) {
        match tokens[0] {
            "ds" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate ds line"));
                }
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `ds <n> <k>`"));
                }
                header = Some((
                    parse_token(line, tokens[1], "node count")?,
                    parse_token(line, tokens[2], "budget k")?,
                ));
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(parse_err(line, "expected `edge <i> <j>`"));
                }
                let i: usize = parse_token(line, tokens[1], "endpoint")?;
                let j: usize = parse_token(line, tokens[2], "endpoint")?;
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                edges.insert((a, b));
            }
            other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
        }
    }
    let (n, k) = header.ok_or_else(|| AggError::Parse("missing ds line".into()))?;
    DsInstance::new(n, edges, k)
}

/// Renders a dominating-set instance.
pub fn write_ds(inst: &DsInstance) -> String {
    let mut out = format!("ds {} {}\n", inst.n, inst.k);
    for &(i, j) in &inst.edges {
        out.push_str(&format!("edge {i} {j}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn example_net() -> (Network, CostParams) {
        let net = Network::new(
            5,
            0,
            vec![0, 1, 2, 0, 1],
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        )
        .unwrap();
        let params = CostParams::new(3, rat(2), rat(1)).unwrap();
        (net, params)
    }

    #[test]
    fn network_round_trips_exactly() {
        let (net, params) = example_net();
        let text = write_network(&net, &params);
        let (back, back_params) = parse_network(&text).unwrap();
        assert_eq!(write_network(&back, &back_params), text);
        assert_eq!(back.sink(), 0);
        assert_eq!(back.report_size(2), 2);
        assert_eq!(back.role(3), Role::Relay);
        assert_eq!(back_params.q, 3);
        assert_eq!(back_params.budget, None);
    }

    #[test]
    fn network_with_coords_and_budget_round_trips() {
        let (net, params) = example_net();
        let net = net
            .with_coords(vec![(0.0, 0.0), (1.0, 0.5), (2.0, 0.0), (2.0, 1.0), (1.0, 2.0)])
            .unwrap();
        let params = params.with_budget(rat(21) / rat(2));
        let text = write_network(&net, &params);
        assert!(text.contains("budget 10.5"));
        let (back, back_params) = parse_network(&text).unwrap();
        assert_eq!(back.coords().unwrap()[4], (1.0, 2.0));
        assert_eq!(back_params.budget, Some(rat(21) / rat(2)));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "\
# a tiny network
net 2

param q 2 tx 1 rx 1   # unit energies
node 0 0 sink
node 1 1 source
edge 0 1
";
        let (net, params) = parse_network(text).unwrap();
        assert_eq!(net.node_count(), 2);
        assert_eq!(params.q, 2);
    }

    #[test]
    fn malformed_networks_are_rejected_with_line_numbers() {
        let cases: &[(&str, &str)] = &[
            ("param q 2 tx 1 rx 1\nnode 0 0 sink\n", "missing net"),
            ("net 1\nnode 0 0 sink\n", "missing param"),
            ("net 1\nparam q 2 tx 1 rx 1\nnode 0 1 sink\n", "line 3"),
            ("net 1\nparam q 2 tx 1 rx 1\nnode 0 0 relay\n", "no sink"),
            (
                "net 2\nparam q 2 tx 1 rx 1\nnode 0 0 sink\nnode 1 0 source\nedge 0 1\n",
                "line 4",
            ),
            (
                "net 2\nparam q 2 tx 1 rx 1\nnode 0 0 sink 1 2\nnode 1 1 source\nedge 0 1\n",
                "all nodes or none",
            ),
            ("net 1\nparam q 2 tx 1 rx 1\nfrobnicate 3\n", "line 3"),
        ];
        for (text, needle) in cases {
            let err = parse_network(text).unwrap_err().to_string();
            assert!(
                err.contains(needle),
                "error `{err}` should mention `{needle}`"
            );
        }
    }

    #[test]
    fn tree_round_trips_and_rejects_double_parents() {
        let text = "root 0\nparent 1 0\nparent 2 1\n";
        let tree = parse_tree(text).unwrap();
        assert_eq!(tree.root(), 0);
        assert_eq!(tree.parent(2), Some(1));
        assert_eq!(write_tree(&tree), text);
        assert!(parse_tree("root 0\nparent 1 0\nparent 1 2\n").is_err());
        assert!(parse_tree("root 0\nparent 0 1\n").is_err());
        assert!(parse_tree("parent 1 0\n").is_err());
    }

    #[test]
    fn lbsm_defaults_weights_and_round_trips() {
        let text = "lbsm 3 2 2\nweight 1 4\nedge 0 0\nedge 1 0\nedge 1 1\nedge 2 1\n";
        let inst = parse_lbsm(text).unwrap();
        assert_eq!(inst.weights, vec![1, 4, 1]);
        assert_eq!(write_lbsm(&inst), text);
        assert!(parse_lbsm("lbsm 1 1 1\nedge 5 0\n").is_err());
        assert!(parse_lbsm("edge 0 0\n").is_err());
    }

    #[test]
    fn ds_normalizes_edge_order_and_round_trips() {
        let inst = parse_ds("ds 4 1\nedge 2 0\nedge 1 2\nedge 2 3\n").unwrap();
        assert_eq!(write_ds(&inst), "ds 4 1\nedge 0 2\nedge 1 2\nedge 2 3\n");
        assert!(parse_ds("ds 2 1\nedge 0 7\n").is_err());
        assert!(parse_ds("# nothing\n").is_err());
    }
}