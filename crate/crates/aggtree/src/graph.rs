//! Graph structures: sensor networks with report sizes, positively weighted
//! graphs, hop distances, deterministic shortest paths, metric closures with
//! witness paths, and minimum spanning trees.
//!
//! All tie-breaking is lexicographic on node ids so that every construction
//! in the crate is reproducible bit-for-bit.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{AggError, Result};
use crate::rat::{is_positive, Rational};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Sink,
    Source,
    Relay,
}

/// A connected sensor network: one sink, per-node report sizes, and an
/// undirected simple edge set. Nodes with a positive report size are
/// sources; non-sink nodes with size zero are relays.
#[derive(Debug, Clone)]
pub struct Network {
    n: usize,
    sink: NodeId,
    sizes: Vec<u64>,
    adj: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    coords: Option<Vec<(f64, f64)>>,
}

impl Network {
    pub fn new(
        n: usize,
        sink: NodeId,
        sizes: Vec<u64>,
        edges: Vec<(NodeId, NodeId)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(AggError::InvalidNetwork("no nodes".into()));
        }
        if sink >= n {
            return Err(AggError::InvalidNetwork(format!("sink {sink} out of range")));
        }
        if sizes.len() != n {
            return Err(AggError::InvalidNetwork(format!(
                "{} report sizes for {} nodes",
                sizes.len(),
                n
            )));
        }
        if sizes[sink] != 0 {
            return Err(AggError::InvalidNetwork(
                "sink must have report size zero".into(),
            ));
        }
        let mut norm: Vec<(NodeId, NodeId)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(AggError::InvalidNetwork(format!(
                    "edge ({a}, {b}) out of range"
                )));
            }
            if a == b {
                return Err(AggError::InvalidNetwork(format!("self-loop at {a}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(AggError::InvalidNetwork("duplicate edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &norm {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let net = Network {
            n,
            sink,
            sizes,
            adj,
            edges: norm,
            coords: None,
        };
        if !net.is_connected() {
            return Err(AggError::Disconnected);
        }
        Ok(net)
    }

    pub fn with_coords(mut self, coords: Vec<(f64, f64)>) -> Result<Self> {
        if coords.len() != self.n {
            return Err(AggError::InvalidNetwork("coordinate count mismatch".into()));
        }
        self.coords = Some(coords);
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn report_size(&self, v: NodeId) -> u64 {
        self.sizes[v]
    }

    pub fn role(&self, v: NodeId) -> Role {
        if v == self.sink {
            Role::Sink
        } else if self.sizes[v] > 0 {
            Role::Source
        } else {
            Role::Relay
        }
    }

    /// Source ids in ascending order.
    pub fn sources(&self) -> Vec<NodeId> {
        (0..self.n).filter(|&v| self.role(v) == Role::Source).collect()
    }

    pub fn relays(&self) -> Vec<NodeId> {
        (0..self.n).filter(|&v| self.role(v) == Role::Relay).collect()
    }

    pub fn has_relays(&self) -> bool {
        (0..self.n).any(|v| self.role(v) == Role::Relay)
    }

    pub fn total_report(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<NodeId>] {
        &self.adj
    }

    /// Edges as (min, max) pairs in ascending order.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn coords(&self) -> Option<&[(f64, f64)]> {
        self.coords.as_deref()
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Hop distance from `from` to every node, by breadth-first search.
    pub fn hop_distances(&self, from: NodeId) -> Result<Vec<usize>> {
        if from >= self.n {
            return Err(AggError::InvalidNetwork(format!("node {from} out of range")));
        }
        let mut dist = vec![usize::MAX; self.n];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.iter().any(|&d| d == usize::MAX) {
            return Err(AggError::Disconnected);
        }
        Ok(dist)
    }

    /// The same node set and edges with every edge given weight `edge_weight`.
    pub fn to_weighted(&self, edge_weight: Rational) -> Result<WeightedGraph> {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (a, b, edge_weight))
            .collect();
        WeightedGraph::new(self.n, edges)
    }
}

/// Connected undirected graph with positive rational edge weights.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<Vec<(NodeId, Rational)>>,
    edges: Vec<(NodeId, NodeId, Rational)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(NodeId, NodeId, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(AggError::InvalidNetwork("no nodes".into()));
        }
        let mut norm: Vec<(NodeId, NodeId, Rational)> = Vec::with_capacity(edges.len());
        for &(a, b, w) in &edges {
            if a >= n || b >= n {
                return Err(AggError::InvalidNetwork(format!(
                    "edge ({a}, {b}) out of range"
                )));
            }
            if a == b {
                return Err(AggError::InvalidNetwork(format!("self-loop at {a}")));
            }
            if !is_positive(&w) {
                return Err(AggError::InvalidNetwork(format!(
                    "edge ({a}, {b}) has non-positive weight"
                )));
            }
            norm.push((a.min(b), a.max(b), w));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(AggError::InvalidNetwork("duplicate edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b, w) in &norm {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = WeightedGraph { n, adj, edges: norm };
        if !g.is_connected() {
            return Err(AggError::Disconnected);
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, Rational)] {
        &self.adj[v]
    }

    pub fn edges(&self) -> &[(NodeId, NodeId, Rational)] {
        &self.edges
    }

    pub fn weight(&self, a: NodeId, b: NodeId) -> Option<Rational> {
        self.adj[a]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, len)| len)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Exact single-source shortest distances (Dijkstra; weights positive).
    pub fn distances(&self, from: NodeId) -> Vec<Rational> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut dist: Vec<Option<Rational>> = vec![None; self.n];
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Rational::from_integer(0), from)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if let Some(old) = dist[v] {
                if old <= d {
                    continue;
                }
            }
            dist[v] = Some(d);
            for &(w, len) in &self.adj[v] {
                let nd = d + len;
                if dist[w].map_or(true, |old| nd < old) {
                    heap.push(Reverse((nd, w)));
                }
            }
        }
        dist.into_iter().map(|d| d.expect("graph is connected")).collect()
    }
}

/// Minimum-weight path from `from` to `to`; among all minimum-weight paths
/// the lexicographically smallest node-id sequence is returned.
pub fn shortest_path(g: &WeightedGraph, from: NodeId, to: NodeId) -> Vec<NodeId> {
    let dist_to = g.distances(to);
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        // Walk the unique greedy sequence of tight edges, smallest id first.
        let next = g
            .neighbors(cur)
            .iter()
            .filter(|&&(w, len)| dist_to[w] + len == dist_to[cur])
            .map(|&(w, _)| w)
            .min()
            .expect("tight edge exists on a shortest path");
        path.push(next);
        cur = next;
    }
    path
}

/// Complete graph over `terminals` with shortest-path distances as weights,
/// keeping one witness shortest path per terminal pair.
#[derive(Debug, Clone)]
pub struct MetricClosure {
    pub graph: WeightedGraph,
    terminals: Vec<NodeId>,
    witness: BTreeMap<(usize, usize), Vec<NodeId>>,
}

impl MetricClosure {
    /// Terminals of the closure in ascending original-id order; closure node
    /// `i` corresponds to `terminals()[i]`.
    pub fn terminals(&self) -> &[NodeId] {
        &self.terminals
    }

    pub fn index_of(&self, original: NodeId) -> Option<usize> {
        self.terminals.binary_search(&original).ok()
    }

    pub fn original(&self, idx: usize) -> NodeId {
        self.terminals[idx]
    }

    /// Witness shortest path between closure nodes `i` and `j`, oriented from
    /// `i` to `j`, as original node ids.
    pub fn witness(&self, i: usize, j: usize) -> Vec<NodeId> {
        let key = (i.min(j), i.max(j));
        let stored = &self.witness[&key];
        if i < j {
            stored.clone()
        } else {
            stored.iter().rev().copied().collect()
        }
    }
}

/// Metric closure of a weighted graph over a terminal set.
pub fn metric_closure_weighted(
    g: &WeightedGraph,
    terminals: &BTreeSet<NodeId>,
) -> Result<MetricClosure> {
    if terminals.len() < 2 {
        return Err(AggError::InvalidInstance(
            "metric closure needs at least two terminals".into(),
        ));
    }
    if let Some(&t) = terminals.iter().find(|&&t| t >= g.node_count()) {
        return Err(AggError::InvalidInstance(format!("terminal {t} out of range")));
    }
    let terms: Vec<NodeId> = terminals.iter().copied().collect();
    let dist_from: Vec<Vec<Rational>> = terms.iter().map(|&t| g.distances(t)).collect();
    let mut edges = Vec::new();
    let mut witness = BTreeMap::new();
    for i in 0..terms.len() {
        for j in (i + 1)..terms.len() {
            edges.push((i, j, dist_from[j][terms[i]]));
            // Greedy walk over tight edges from terms[i] toward terms[j],
            // reusing the distance field of terms[j]; this is the
            // lexicographically smallest shortest path from i's side.
            let to_j = &dist_from[j];
            let mut path = vec![terms[i]];
            let mut cur = terms[i];
            while cur != terms[j] {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .filter(|&&(w, len)| to_j[w] + len == to_j[cur])
                    .map(|&(w, _)| w)
                    .min()
                    .expect("tight edge exists on a shortest path");
                path.push(next);
                cur = next;
            }
            witness.insert((i, j), path);
        }
    }
    Ok(MetricClosure {
        graph: WeightedGraph::new(terms.len(), edges)?,
        terminals: terms,
        witness,
    })
}

/// Metric closure of a network with weight = hop distance × `edge_weight`.
pub fn metric_closure(
    net: &Network,
    terminals: &BTreeSet<NodeId>,
    edge_weight: Rational,
) -> Result<MetricClosure> {
    if !is_positive(&edge_weight) {
        return Err(AggError::InvalidInstance(
            "edge weight must be positive".into(),
        ));
    }
    metric_closure_weighted(&net.to_weighted(edge_weight)?, terminals)
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Kruskal's minimum spanning tree; ties are broken by smallest
/// (weight, u, v), so the result is independent of edge insertion order.
pub fn minimum_spanning_tree(g: &WeightedGraph) -> Vec<(NodeId, NodeId, Rational)> {
    let mut edges = g.edges().to_vec();
    edges.sort_by(|a, b| (a.2, a.0, a.1).cmp(&(b.2, b.0, b.1)));
    let mut ds = DisjointSet::new(g.node_count());
    let mut tree = Vec::with_capacity(g.node_count().saturating_sub(1));
    for (a, b, w) in edges {
        if ds.union(a, b) {
            tree.push((a, b, w));
        }
    }
    tree
}

/// A mutable edge-induced subgraph over original node ids, used to collect
/// the union of expanded witness paths before the final tree extraction.
#[derive(Debug, Clone, Default)]
pub struct Subgraph {
    adj: BTreeMap<NodeId, BTreeSet<NodeId>>,
}

impl Subgraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        if a == b {
            return;
        }
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    pub fn add_path(&mut self, path: &[NodeId]) {
        if path.len() == 1 {
            self.adj.entry(path[0]).or_default();
        }
        for pair in path.windows(2) {
            self.add_edge(pair[0], pair[1]);
        }
    }

    pub fn add_node(&mut self, v: NodeId) {
        self.adj.entry(v).or_default();
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.get(&v).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn edge_list(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::new();
        for (&a, nbrs) in &self.adj {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}
