//   Copyright 2026 keydoor developers
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//! Augmented graph of convex sets.
//!
//! One copy of the labeled graph per reachable set of collected keys,
//! arranged in layers by set size. A copy only contains the door edges its
//! key set unlocks. Picking up key `v` is a directed zero-cost edge from
//! the key's copy in `S` to its copy in `S ∪ {v}`, so every start-target
//! path respects the precedence specification by construction.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::partition::{LabelKind, LabeledGraph};
use crate::precedence::{vertex_event, AtomicTrace, Mode, PrecedenceSpec};

/// Largest supported number of keys.
pub const MAX_KEYS: usize = 24;

/// Set of keys (1-based indices) stored as a bitset.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeySubset(u32);

impl KeySubset {
    pub const fn empty() -> Self {
        Self(0)
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=32).contains(&i), "key index {i} out of range");
        Self(1 << (i - 1))
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        if n == 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << n) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | Self::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !Self::singleton(i).0)
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }
}

impl FromIterator<usize> for KeySubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Self::empty(), Self::with)
    }
}

impl fmt::Display for KeySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for KeySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AugNode {
    /// Copy of a labeled-graph vertex inside the subgraph of `subset`.
    Copy { subset: KeySubset, vertex: usize },
    /// The merged target.
    Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    Intra,
    InterLayer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AugEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    graph: LabeledGraph,
    spec: PrecedenceSpec,
    layers: Vec<Vec<KeySubset>>,
    nodes: Vec<AugNode>,
    index: HashMap<AugNode, usize>,
    edges: Vec<AugEdge>,
    start: usize,
    target: usize,
}

/// Whether edge `(u, v)` of `g` is present in the subgraph whose doors
/// `open` are unlocked.
fn edge_allowed(g: &LabeledGraph, open: KeySubset, u: usize, v: usize) -> bool {
    [u, v].iter().all(|&w| {
        let l = g.vertex(w).label;
        l.kind != LabelKind::Door || open.contains(l.index)
    })
}

/// Vertices of `g` reachable from its start inside the subgraph with doors
/// `open`. The target is entered but not left when `target_stops` holds.
fn reachable_in(
    g: &LabeledGraph,
    adj: &[Vec<usize>],
    open: KeySubset,
    target_stops: bool,
) -> Vec<bool> {
    let mut seen = vec![false; g.n_vertices()];
    let s = g.start_vertex();
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if target_stops && u == g.target_vertex() {
            continue;
        }
        for &v in &adj[u] {
            if !seen[v] && edge_allowed(g, open, u, v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Key sets of size `layer` reachable from the sets in `previous`: `S` is
/// included when some `v ∈ S` has `S − {v}` in `previous` and key `v` is
/// reachable from the start copy inside that subgraph.
pub fn reachable_key_sets(
    g: &LabeledGraph,
    spec: &PrecedenceSpec,
    previous: &[KeySubset],
    layer: usize,
) -> Vec<KeySubset> {
    let adj = g.adjacency();
    let target_stops = spec.mode() == Mode::Release;
    let key_vertices: Vec<Option<usize>> = (1..=spec.n()).map(|i| g.key_vertex(i)).collect();
    let mut out = std::collections::BTreeSet::new();
    for &s in previous {
        debug_assert_eq!(s.len() + 1, layer);
        let seen = reachable_in(g, &adj, spec.doors_unlocked(s), target_stops);
        for (i, kv) in key_vertices.iter().enumerate() {
            let key = i + 1;
            if let Some(kv) = *kv {
                if !s.contains(key) && seen[kv] {
                    out.insert(s.with(key));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Builds the augmented graph layer by layer.
pub fn build_augmented(g: &LabeledGraph, spec: &PrecedenceSpec) -> Result<AugmentedGraph> {
    let n = spec.n();
    if n > MAX_KEYS {
        return Err(Error::TooManyKeys { n, max: MAX_KEYS });
    }
    if g.n_keys() > n {
        return Err(Error::InvalidParams(format!(
            "graph has {} keys but the specification covers {n}",
            g.n_keys()
        )));
    }

    let mut layers = vec![vec![KeySubset::empty()]];
    for l in 1..=n {
        let next = reachable_key_sets(g, spec, layers.last().expect("nonempty"), l);
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }

    let full = spec.all_keys();
    let merges_target = |s: KeySubset| spec.mode() == Mode::Release || s == full;

    let mut nodes = Vec::new();
    let mut index = HashMap::new();
    let mut target = None;
    let tv = g.target_vertex();
    for layer in &layers {
        for &s in layer {
            for v in 0..g.n_vertices() {
                let node = if v == tv && merges_target(s) {
                    AugNode::Target
                } else {
                    AugNode::Copy { subset: s, vertex: v }
                };
                if !index.contains_key(&node) {
                    index.insert(node, nodes.len());
                    if node == AugNode::Target {
                        target = Some(nodes.len());
                    }
                    nodes.push(node);
                }
            }
        }
    }
    let target = match target {
        Some(t) => t,
        None => {
            // Until mode with the full key set unreachable.
            nodes.push(AugNode::Target);
            index.insert(AugNode::Target, nodes.len() - 1);
            nodes.len() - 1
        }
    };
    let node_of = |s: KeySubset, v: usize| -> usize {
        if v == tv && merges_target(s) {
            index[&AugNode::Target]
        } else {
            index[&AugNode::Copy { subset: s, vertex: v }]
        }
    };

    let mut edges = Vec::new();
    for layer in &layers {
        for &s in layer {
            let open = spec.doors_unlocked(s);
            for &(u, v) in g.edges() {
                if edge_allowed(g, open, u, v) {
                    let (a, b) = (node_of(s, u), node_of(s, v));
                    edges.push(AugEdge { from: a, to: b, kind: EdgeKind::Intra });
                    edges.push(AugEdge { from: b, to: a, kind: EdgeKind::Intra });
                }
            }
        }
    }
    for pair in layers.windows(2) {
        for &s in &pair[0] {
            for key in 1..=n {
                if s.contains(key) {
                    continue;
                }
                let up = s.with(key);
                if pair[1].binary_search(&up).is_err() {
                    continue;
                }
                if let Some(kv) = g.key_vertex(key) {
                    edges.push(AugEdge {
                        from: node_of(s, kv),
                        to: node_of(up, kv),
                        kind: EdgeKind::InterLayer,
                    });
                }
            }
        }
    }

    let start = node_of(KeySubset::empty(), g.start_vertex());
    Ok(AugmentedGraph {
        graph: g.clone(),
        spec: spec.clone(),
        layers,
        nodes,
        index,
        edges,
        start,
        target,
    })
}

impl AugmentedGraph {
    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn spec(&self) -> &PrecedenceSpec {
        &self.spec
    }

    pub fn layers(&self) -> &[Vec<KeySubset>] {
        &self.layers
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn subgraphs(&self) -> impl Iterator<Item = KeySubset> + '_ {
        self.layers.iter().flatten().copied()
    }

    pub fn n_subgraphs(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn has_subgraph(&self, s: KeySubset) -> bool {
        self.layers
            .get(s.len())
            .is_some_and(|l| l.binary_search(&s).is_ok())
    }

    pub fn max_width(&self) -> usize {
        self.layers.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn nodes(&self) -> &[AugNode] {
        &self.nodes
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[AugEdge] {
        &self.edges
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn node_index(&self, node: AugNode) -> Option<usize> {
        self.index.get(&node).copied()
    }

    /// Labeled-graph vertex behind an augmented node.
    pub fn vertex_of(&self, node: usize) -> usize {
        match self.nodes[node] {
            AugNode::Copy { vertex, .. } => vertex,
            AugNode::Target => self.graph.target_vertex(),
        }
    }

    /// Intra-subgraph edges incident to doors, grouped by subgraph.
    pub fn door_edges(&self, s: KeySubset) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.kind != EdgeKind::Intra {
                continue;
            }
            let in_s = |n: usize| match self.nodes[n] {
                AugNode::Copy { subset, .. } => subset == s,
                AugNode::Target => false,
            };
            if !(in_s(e.from) || in_s(e.to)) {
                continue;
            }
            let (u, v) = (self.vertex_of(e.from), self.vertex_of(e.to));
            let is_door = |w: usize| self.graph.vertex(w).label.kind == LabelKind::Door;
            if (is_door(u) || is_door(v)) && u < v {
                out.push((u, v));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Outgoing adjacency lists over directed edges; entries are edge ids.
    pub fn out_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_nodes()];
        for (k, e) in self.edges.iter().enumerate() {
            out[e.from].push(k);
        }
        out
    }

    /// Labeled-graph vertex sequence of an augmented path, with inter-layer
    /// steps (which stay on the same key vertex) removed.
    pub fn project_path(&self, path: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::with_capacity(path.len());
        for &n in path {
            let v = self.vertex_of(n);
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn trace_of_path(&self, path: &[usize]) -> Option<AtomicTrace> {
        AtomicTrace::new(
            self.project_path(path)
                .into_iter()
                .map(|v| vertex_event(&self.graph, v))
                .collect(),
        )
    }

    /// Graphviz listing: one node per line as `"S:vertex"`, then one
    /// directed edge per line.
    pub fn to_dot(&self) -> String {
        let name = |n: usize| match self.nodes[n] {
            AugNode::Copy { subset, vertex } => format!("{subset}:{vertex}"),
            AugNode::Target => format!("T:{}", self.graph.target_vertex()),
        };
        let mut s = String::from("digraph augmented {\n");
        for n in 0..self.n_nodes() {
            let extra = if n == self.start {
                " [shape=box]"
            } else if n == self.target {
                " [shape=doublecircle]"
            } else {
                ""
            };
            let _ = writeln!(s, "  \"{}\"{extra};", name(n));
        }
        for e in &self.edges {
            let style = match e.kind {
                EdgeKind::Intra => "",
                EdgeKind::InterLayer => " [style=dashed]",
            };
            let _ = writeln!(s, "  \"{}\" -> \"{}\"{style};", name(e.from), name(e.to));
        }
        s.push_str("}\n");
        s
    }

    /// Layer summary, one line per layer.
    pub fn layer_summary(&self) -> String {
        let mut s = String::new();
        for (l, layer) in self.layers.iter().enumerate() {
            let sets: Vec<String> = layer.iter().map(|k| k.to_string()).collect();
            let _ = writeln!(s, "layer {l}: {}", sets.join(" "));
        }
        s
    }

    /// Count of subgraphs per layer.
    pub fn widths(&self) -> BTreeMap<usize, usize> {
        self.layers.iter().enumerate().map(|(l, v)| (l, v.len())).collect()
    }
}

/// Whether the merged target is reachable from the start along directed edges.
pub fn certify_feasibility(aug: &AugmentedGraph) -> bool {
    let out = aug.out_edges();
    let mut seen = vec![false; aug.n_nodes()];
    seen[aug.start] = true;
    let mut queue = VecDeque::from([aug.start]);
    while let Some(u) = queue.pop_front() {
        if u == aug.target {
            return true;
        }
        for &e in &out[u] {
            let v = aug.edges[e].to;
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

pub fn max_width(aug: &AugmentedGraph) -> usize {
    aug.max_width()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polytope;
    use crate::partition::VertexLabel;

    /// Unit squares along the x axis with the given labels; consecutive
    /// squares are adjacent. Start is square 0, target the last one.
    fn corridor(labels: &[VertexLabel]) -> LabeledGraph {
        let verts = labels
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let x = i as f64;
                (l, Polytope::from_box(&[x, 0.0], &[x + 1.0, 1.0]).unwrap())
            })
            .collect();
        let edges = (1..labels.len()).map(|i| (i - 1, i));
        LabeledGraph::new(verts, edges, 0, labels.len() - 1).unwrap()
    }

    #[test]
    fn subset_ops() {
        let s: KeySubset = [1, 3].into_iter().collect();
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.without(1), KeySubset::singleton(3));
        assert_eq!(KeySubset::full(3).bits(), 0b111);
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn no_keys_gives_one_subgraph() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::FREE, L::FREE]);
        let aug = build_augmented(&g, &PrecedenceSpec::new(0, Mode::Release)).unwrap();
        assert_eq!(aug.n_subgraphs(), 1);
        assert_eq!(aug.n_nodes(), 3);
        assert_eq!(aug.edges().len(), 4);
        assert!(certify_feasibility(&aug));
    }

    #[test]
    fn key_behind_own_door_deadlocks() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::door(1), L::key(1), L::FREE]);
        let aug = build_augmented(&g, &PrecedenceSpec::new(1, Mode::Release)).unwrap();
        assert_eq!(aug.n_subgraphs(), 1);
        assert!(!certify_feasibility(&aug));
    }

    #[test]
    fn chain_of_keys() {
        use VertexLabel as L;
        // s k1 d1 k2 d2 t: key 2 sits behind door 1.
        let g = corridor(&[L::FREE, L::key(1), L::door(1), L::key(2), L::door(2), L::FREE]);
        let aug = build_augmented(&g, &PrecedenceSpec::new(2, Mode::Release)).unwrap();
        assert_eq!(aug.n_subgraphs(), 3);
        assert_eq!(aug.max_width(), 1);
        assert_eq!(aug.layers()[2], vec![KeySubset::full(2)]);
        assert!(certify_feasibility(&aug));
    }

    #[test]
    fn independent_keys_fill_the_lattice() {
        use VertexLabel as L;
        // Star around a hub: s, 4 keys, target; no doors in the way.
        let mut verts = vec![(L::FREE, Polytope::from_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap())];
        for i in 1..=4 {
            let x = i as f64;
            verts.push((L::key(i), Polytope::from_box(&[x, 0.0], &[x + 1.0, 1.0]).unwrap()));
        }
        for i in 1..=4 {
            let x = 10.0 + i as f64;
            verts.push((L::door(i), Polytope::from_box(&[x, 0.0], &[x + 1.0, 1.0]).unwrap()));
        }
        verts.push((L::FREE, Polytope::from_box(&[20.0, 0.0], &[21.0, 1.0]).unwrap()));
        let edges: Vec<(usize, usize)> = (1..=4).map(|i| (0, i)).chain([(0, 9)]).collect();
        let g = LabeledGraph::new(verts, edges, 0, 9).unwrap();
        let aug = build_augmented(&g, &PrecedenceSpec::new(4, Mode::Release)).unwrap();
        assert_eq!(aug.n_subgraphs(), 16);
        assert_eq!(aug.max_width(), 6);
    }

    #[test]
    fn door_edges_follow_key_sets() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::key(1), L::door(1), L::FREE]);
        let aug = build_augmented(&g, &PrecedenceSpec::new(1, Mode::Release)).unwrap();
        assert!(aug.door_edges(KeySubset::empty()).is_empty());
        assert_eq!(aug.door_edges(KeySubset::singleton(1)), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn until_keeps_lower_target_copies() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::FREE, L::key(1), L::FREE]);
        let g = g.with_endpoints(0, 1).unwrap();
        let release = build_augmented(&g, &PrecedenceSpec::new(1, Mode::Release)).unwrap();
        let until = build_augmented(&g, &PrecedenceSpec::new(1, Mode::Until)).unwrap();
        assert_eq!(release.n_subgraphs(), 1);
        assert_eq!(release.n_nodes(), 4);
        assert_eq!(until.n_nodes(), 8);
        assert!(certify_feasibility(&until));
    }

    #[test]
    fn too_many_keys() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::FREE]);
        let err = build_augmented(&g, &PrecedenceSpec::new(25, Mode::Release)).unwrap_err();
        assert!(matches!(err, Error::TooManyKeys { n: 25, .. }));
    }

    #[test]
    fn dot_export_lists_nodes() {
        use VertexLabel as L;
        let g = corridor(&[L::FREE, L::key(1), L::FREE]);
        let aug = build_augmented(&g, &PrecedenceSpec::new(1, Mode::Release)).unwrap();
        let dot = aug.to_dot();
        assert!(dot.contains("\"{}:0\""));
        assert!(dot.contains("\"{}:1\" -> \"{1}:1\" [style=dashed]"));
    }
}
