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
//! Exact convex partition of free space and the labeled graph of convex sets.
//!
//! Every facet hyperplane of the world, obstacles, keys and doors goes into
//! one arrangement. Its cells partition the world exactly; cells inside a
//! key or door are merged into one labeled vertex, obstacle cells are
//! discarded and the remaining free cells are merged greedily while their
//! union stays convex. Two cells share a facet iff their markings differ in
//! one entry, which gives the edge set without any geometric test.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use log::debug;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::environment::HalfSpaces;
use crate::error::{Error, Result};
use crate::geometry::{convex_union, Arrangement, Marking, Polytope, Sign};
use crate::tolerance::EPS_FEAS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LabelKind {
    Free,
    Key,
    Door,
    Obstacle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexLabel {
    pub kind: LabelKind,
    /// 1-based key/door/obstacle index, 0 for free space.
    pub index: usize,
}

impl VertexLabel {
    pub const FREE: VertexLabel = VertexLabel {
        kind: LabelKind::Free,
        index: 0,
    };

    pub fn key(i: usize) -> Self {
        Self {
            kind: LabelKind::Key,
            index: i,
        }
    }

    pub fn door(i: usize) -> Self {
        Self {
            kind: LabelKind::Door,
            index: i,
        }
    }

    pub fn is_free(&self) -> bool {
        self.kind == LabelKind::Free
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub id: usize,
    pub label: VertexLabel,
    pub polytope: Arc<Polytope>,
}

/// Graph of convex sets with free/key/door labels; edges join polytopes
/// that share a facet.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(usize, usize)>,
    start: usize,
    target: usize,
    n_keys: usize,
}

impl LabeledGraph {
    /// Vertex ids must be `0..n` in order. Edges are stored as `(min, max)`.
    pub fn new(
        vertices: Vec<(VertexLabel, Polytope)>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        start: usize,
        target: usize,
    ) -> Result<Self> {
        let n = vertices.len();
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .enumerate()
            .map(|(id, (label, p))| Vertex {
                id,
                label,
                polytope: Arc::new(p),
            })
            .collect();
        Self::from_vertices(vertices, edges, start, target, n)
    }

    fn from_vertices(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        start: usize,
        target: usize,
        n: usize,
    ) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidParams(format!("bad edge ({u}, {v})")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        if start >= n || target >= n {
            return Err(Error::InvalidParams("start/target vertex out of range".into()));
        }
        if !vertices[start].label.is_free() || !vertices[target].label.is_free() {
            return Err(Error::InvalidParams(
                "start and target must be free vertices".into(),
            ));
        }
        let n_keys = vertices
            .iter()
            .filter(|v| v.label.kind == LabelKind::Key)
            .map(|v| v.label.index)
            .max()
            .unwrap_or(0);
        Ok(Self {
            vertices,
            edges: set,
            start,
            target,
            n_keys,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &Vertex {
        &self.vertices[id]
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn start_vertex(&self) -> usize {
        self.start
    }

    pub fn target_vertex(&self) -> usize {
        self.target
    }

    pub fn n_keys(&self) -> usize {
        self.n_keys
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].polytope.dim()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_vertices()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn count(&self, kind: LabelKind) -> usize {
        self.vertices.iter().filter(|v| v.label.kind == kind).count()
    }

    pub fn key_vertex(&self, i: usize) -> Option<usize> {
        self.find_label(VertexLabel::key(i))
    }

    pub fn door_vertex(&self, i: usize) -> Option<usize> {
        self.find_label(VertexLabel::door(i))
    }

    fn find_label(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    /// Short vertex name: `s`, `t`, `k#`, `d#` or `c#`.
    pub fn name(&self, id: usize) -> String {
        if id == self.start {
            return "s".into();
        }
        if id == self.target {
            return "t".into();
        }
        let l = self.vertices[id].label;
        match l.kind {
            LabelKind::Key => format!("k{}", l.index),
            LabelKind::Door => format!("d{}", l.index),
            LabelKind::Obstacle => format!("o{}", l.index),
            LabelKind::Free => format!("c{id}"),
        }
    }

    /// Free vertices containing `x`, lowest id first.
    pub fn free_vertices_containing(&self, x: &[f64]) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|v| v.label.is_free() && v.polytope.contains(x, EPS_FEAS))
            .map(|v| v.id)
            .collect()
    }

    /// Same graph with different start and target vertices.
    pub fn with_endpoints(&self, start: usize, target: usize) -> Result<Self> {
        let n = self.n_vertices();
        Self::from_vertices(
            self.vertices.clone(),
            self.edges.iter().copied(),
            start,
            target,
            n,
        )
    }

    /// JSON dump with vertex names, labels, half-spaces and edges.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct VertexDump<'a> {
            id: usize,
            name: String,
            label: &'a VertexLabel,
            polytope: HalfSpaces,
        }
        #[derive(Serialize)]
        struct Dump<'a> {
            start: usize,
            target: usize,
            vertices: Vec<VertexDump<'a>>,
            edges: Vec<(usize, usize)>,
        }
        let dump = Dump {
            start: self.start,
            target: self.target,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDump {
                    id: v.id,
                    name: self.name(v.id),
                    label: &v.label,
                    polytope: HalfSpaces::from(v.polytope.as_ref()),
                })
                .collect(),
            edges: self.edges.iter().copied().collect(),
        };
        serde_json::to_string_pretty(&dump).expect("graph serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "free vertices: {}", self.count(LabelKind::Free));
        let _ = writeln!(s, "key vertices: {}", self.count(LabelKind::Key));
        let _ = writeln!(s, "door vertices: {}", self.count(LabelKind::Door));
        let _ = writeln!(s, "vertices: {}", self.n_vertices());
        let _ = writeln!(s, "edges: {}", self.edges.len());
        let _ = writeln!(s, "start: {}", self.start);
        let _ = write!(s, "target: {}", self.target);
        s
    }
}

/// Which input set a cell belongs to, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Owner {
    Free(usize),
    Key(usize),
    Door(usize),
    Obstacle,
}

fn inside(m: &Marking, signs: &[(usize, Sign)]) -> bool {
    signs.iter().all(|&(i, s)| m.signs()[i] == s)
}

fn check_inside_world(world: &Polytope, p: &Polytope, what: &str) -> Result<()> {
    for i in 0..world.n_rows() {
        let (a, b) = world.row(i);
        match p.support(&a)? {
            Some(s) if s > b + 1e-7 => return Err(Error::OutsideWorld(what.into())),
            None => return Err(Error::EmptyPolytope),
            _ => {}
        }
    }
    Ok(())
}

/// Labeled graph of the world minus obstacles, with one vertex per key and
/// door and a greedily merged free-space partition.
pub fn build_labeled_graph(
    world: &Polytope,
    obstacles: &[Polytope],
    keys: &[Polytope],
    doors: &[Polytope],
    start: &[f64],
    target: &[f64],
    merge_seed: u64,
) -> Result<LabeledGraph> {
    let d = world.dim();
    if keys.len() != doors.len() {
        return Err(Error::InvalidParams(format!(
            "{} keys but {} doors",
            keys.len(),
            doors.len()
        )));
    }
    let all: Vec<&Polytope> = obstacles.iter().chain(keys).chain(doors).collect();
    if all.iter().any(|p| p.dim() != d) || start.len() != d || target.len() != d {
        return Err(Error::Dimension("environment sets differ in dimension".into()));
    }
    let world = match world.chebyshev_center() {
        Ok(_) => world.clone(),
        Err(Error::Unbounded) => world.intersect(&Polytope::from_box(
            &vec![-WORLD_BOX; d],
            &vec![WORLD_BOX; d],
        )?)?,
        Err(e) => return Err(e),
    };
    for (i, p) in obstacles.iter().enumerate() {
        check_inside_world(&world, p, &format!("obstacle {}", i + 1))?;
    }
    for (i, p) in keys.iter().enumerate() {
        check_inside_world(&world, p, &format!("key {}", i + 1))?;
    }
    for (i, p) in doors.iter().enumerate() {
        check_inside_world(&world, p, &format!("door {}", i + 1))?;
    }

    let arr = Arrangement::from_polytopes(&world, &all)?;
    let obstacle_signs = obstacles
        .iter()
        .map(|p| arr.halfspace_signs(p))
        .collect::<Result<Vec<_>>>()?;
    let key_signs = keys
        .iter()
        .map(|p| arr.halfspace_signs(p))
        .collect::<Result<Vec<_>>>()?;
    let door_signs = doors
        .iter()
        .map(|p| arr.halfspace_signs(p))
        .collect::<Result<Vec<_>>>()?;

    let cells: Vec<Marking> = arr.enumerate_cells()?.into_iter().collect();
    let index: HashMap<&Marking, usize> = cells.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut owners = Vec::with_capacity(cells.len());
    let mut n_free = 0;
    for m in &cells {
        let mut hits = Vec::new();
        for (i, s) in obstacle_signs.iter().enumerate() {
            if inside(m, s) {
                hits.push(format!("obstacle {}", i + 1));
            }
        }
        for (i, s) in key_signs.iter().enumerate() {
            if inside(m, s) {
                hits.push(format!("key {}", i + 1));
            }
        }
        for (i, s) in door_signs.iter().enumerate() {
            if inside(m, s) {
                hits.push(format!("door {}", i + 1));
            }
        }
        if hits.len() > 1 {
            return Err(Error::OverlappingInputSets(hits.join(" and ")));
        }
        let owner = match hits.first().map(String::as_str) {
            None => {
                n_free += 1;
                Owner::Free(n_free - 1)
            }
            Some(h) if h.starts_with("obstacle") => Owner::Obstacle,
            Some(_) => {
                let k = key_signs.iter().position(|s| inside(m, s));
                let dd = door_signs.iter().position(|s| inside(m, s));
                match (k, dd) {
                    (Some(k), _) => Owner::Key(k + 1),
                    (_, Some(dd)) => Owner::Door(dd + 1),
                    _ => unreachable!(),
                }
            }
        };
        owners.push(owner);
    }
    for i in 1..=keys.len() {
        if !owners.contains(&Owner::Key(i)) {
            return Err(Error::OverlappingInputSets(format!("key {i} has no interior")));
        }
        if !owners.contains(&Owner::Door(i)) {
            return Err(Error::OverlappingInputSets(format!("door {i} has no interior")));
        }
    }

    // Vertex order: free cells, then keys 1..n, then doors 1..n.
    let n = keys.len();
    let vertex_of = |o: Owner| -> Option<usize> {
        match o {
            Owner::Free(i) => Some(i),
            Owner::Key(k) => Some(n_free + k - 1),
            Owner::Door(k) => Some(n_free + n + k - 1),
            Owner::Obstacle => None,
        }
    };

    let mut vertices: Vec<(VertexLabel, Polytope)> = Vec::with_capacity(n_free + 2 * n);
    for (ci, m) in cells.iter().enumerate() {
        if let Owner::Free(_) = owners[ci] {
            vertices.push((VertexLabel::FREE, cell_polytope(&arr, &world, m, &index)?));
        }
    }
    for (i, k) in keys.iter().enumerate() {
        vertices.push((VertexLabel::key(i + 1), k.remove_redundant()?));
    }
    for (i, dr) in doors.iter().enumerate() {
        vertices.push((VertexLabel::door(i + 1), dr.remove_redundant()?));
    }

    let mut edges = BTreeSet::new();
    for (ci, m) in cells.iter().enumerate() {
        let Some(u) = vertex_of(owners[ci]) else {
            continue;
        };
        for h in 0..m.len() {
            if let Some(&cj) = index.get(&m.flipped(h)) {
                if let Some(v) = vertex_of(owners[cj]) {
                    if u != v {
                        edges.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
    }
    debug!(
        "partition: {} cells, {} free before merging, {} edges",
        cells.len(),
        n_free,
        edges.len()
    );

    let first_free = (0..n_free).next().ok_or(Error::StartInObstacle)?;
    let unmerged = LabeledGraph::new(vertices, edges, first_free, first_free)?;
    let merged = greedy_merge(&unmerged, merge_seed)?;
    let s = *merged
        .free_vertices_containing(start)
        .first()
        .ok_or(Error::StartInObstacle)?;
    let t = *merged
        .free_vertices_containing(target)
        .first()
        .ok_or(Error::TargetInObstacle)?;
    merged.with_endpoints(s, t)
}

/// Half-width of the box that bounds an unbounded world.
pub const WORLD_BOX: f64 = 1e3;

/// Irredundant description of a cell: its facets are exactly the
/// hyperplanes whose flip leads to another nonempty cell, plus world facets.
fn cell_polytope(
    arr: &Arrangement,
    world: &Polytope,
    m: &Marking,
    index: &HashMap<&Marking, usize>,
) -> Result<Polytope> {
    let d = arr.dim();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut b = Vec::new();
    for (i, h) in arr.hyperplanes().iter().enumerate() {
        if index.contains_key(&m.flipped(i)) {
            let s = -m.signs()[i].value();
            rows.push(h.normal().iter().map(|v| s * v).collect());
            b.push(s * h.offset());
        }
    }
    for i in 0..world.n_rows() {
        let (a, bi) = world.row(i);
        rows.push(a);
        b.push(bi);
    }
    debug_assert!(rows.iter().all(|r| r.len() == d));
    Polytope::from_rows(&rows, &b)?.remove_redundant()
}

/// Merges adjacent free vertices while their union stays convex.
///
/// Candidate pairs are visited in ascending order of combined row count,
/// ties broken by a seeded shuffle. Rounds repeat until nothing merges.
pub fn greedy_merge(g: &LabeledGraph, seed: u64) -> Result<LabeledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut polys: Vec<Option<Arc<Polytope>>> =
        g.vertices.iter().map(|v| Some(v.polytope.clone())).collect();
    let mut labels: Vec<VertexLabel> = g.vertices.iter().map(|v| v.label).collect();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n_vertices()];
    for &(u, v) in &g.edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    // Original vertex -> current node.
    let mut owner: Vec<usize> = (0..g.n_vertices()).collect();
    let mut rejected: HashSet<(usize, usize)> = HashSet::new();

    loop {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for u in 0..polys.len() {
            if polys[u].is_none() || !labels[u].is_free() {
                continue;
            }
            for &v in &adj[u] {
                if u < v && labels[v].is_free() && !rejected.contains(&(u, v)) {
                    pairs.push((u, v));
                }
            }
        }
        pairs.shuffle(&mut rng);
        pairs.sort_by_key(|&(u, v)| {
            polys[u].as_ref().map_or(0, |p| p.n_rows()) + polys[v].as_ref().map_or(0, |p| p.n_rows())
        });

        let mut merged_any = false;
        for (u, v) in pairs {
            let (Some(pu), Some(pv)) = (polys[u].clone(), polys[v].clone()) else {
                continue;
            };
            match convex_union(&pu, &pv)? {
                None => {
                    rejected.insert((u, v));
                }
                Some(union) => {
                    let w = polys.len();
                    polys.push(Some(Arc::new(union)));
                    labels.push(VertexLabel::FREE);
                    polys[u] = None;
                    polys[v] = None;
                    let mut nbrs: BTreeSet<usize> = adj[u].union(&adj[v]).copied().collect();
                    nbrs.remove(&u);
                    nbrs.remove(&v);
                    for &x in &nbrs {
                        adj[x].remove(&u);
                        adj[x].remove(&v);
                        adj[x].insert(w);
                    }
                    adj.push(nbrs);
                    adj[u].clear();
                    adj[v].clear();
                    for o in owner.iter_mut() {
                        if *o == u || *o == v {
                            *o = w;
                        }
                    }
                    merged_any = true;
                }
            }
        }
        if !merged_any {
            break;
        }
    }

    // Renumber: surviving free vertices first (in creation order), then the
    // untouched key and door vertices in their original order.
    let alive: Vec<usize> = (0..polys.len()).filter(|&i| polys[i].is_some()).collect();
    let mut order: Vec<usize> = alive.iter().copied().filter(|&i| labels[i].is_free()).collect();
    order.extend(alive.iter().copied().filter(|&i| !labels[i].is_free()));
    let new_id: BTreeMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let vertices: Vec<Vertex> = order
        .iter()
        .enumerate()
        .map(|(k, &i)| Vertex {
            id: k,
            label: labels[i],
            polytope: polys[i].clone().expect("alive"),
        })
        .collect();
    let mut edges = Vec::new();
    for &u in &order {
        for &v in &adj[u] {
            if u < v {
                edges.push((new_id[&u], new_id[&v]));
            }
        }
    }
    let n = vertices.len();
    LabeledGraph::from_vertices(
        vertices,
        edges,
        new_id[&owner[g.start]],
        new_id[&owner[g.target]],
        n,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxp(lo: [f64; 2], hi: [f64; 2]) -> Polytope {
        Polytope::from_box(&lo, &hi).unwrap()
    }

    #[test]
    fn empty_world_is_one_free_vertex() {
        let world = boxp([0.0, 0.0], [4.0, 2.0]);
        let g = build_labeled_graph(&world, &[], &[], &[], &[0.5, 0.5], &[3.5, 1.5], 0).unwrap();
        assert_eq!(g.n_vertices(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(g.start_vertex(), 0);
        assert_eq!(g.target_vertex(), 0);
    }

    #[test]
    fn two_boxes_merge_into_one() {
        let g = LabeledGraph::new(
            vec![
                (VertexLabel::FREE, boxp([0.0, 0.0], [1.0, 1.0])),
                (VertexLabel::FREE, boxp([1.0, 0.0], [2.0, 1.0])),
            ],
            [(0, 1)],
            0,
            1,
        )
        .unwrap();
        let m = greedy_merge(&g, 7).unwrap();
        assert_eq!(m.n_vertices(), 1);
        assert_eq!(m.start_vertex(), 0);
        assert_eq!(m.target_vertex(), 0);
    }

    #[test]
    fn staircase_merges_one_pair() {
        // Rows y=[0,1]: [0,1] and [1,2]; on top of the second: [1,2]x[1,2].
        // Either the bottom pair or the right column merges, never all three.
        let g = LabeledGraph::new(
            vec![
                (VertexLabel::FREE, boxp([0.0, 0.0], [1.0, 1.0])),
                (VertexLabel::FREE, boxp([1.0, 0.0], [2.0, 1.0])),
                (VertexLabel::FREE, boxp([1.0, 1.0], [2.0, 2.0])),
            ],
            [(0, 1), (1, 2)],
            0,
            2,
        )
        .unwrap();
        for seed in 0..4 {
            let m = greedy_merge(&g, seed).unwrap();
            assert_eq!(m.n_vertices(), 2);
            assert_eq!(m.edges().len(), 1);
        }
    }

    #[test]
    fn minimal_partition_is_fixed_point() {
        let g = LabeledGraph::new(
            vec![
                (VertexLabel::FREE, boxp([0.0, 0.0], [1.0, 2.0])),
                (VertexLabel::FREE, boxp([1.0, 1.0], [2.0, 2.0])),
            ],
            [(0, 1)],
            0,
            1,
        )
        .unwrap();
        let m = greedy_merge(&g, 3).unwrap();
        assert_eq!(m.n_vertices(), 2);
        assert_eq!(m.edges().len(), 1);
    }

    #[test]
    fn keys_are_not_merged() {
        let g = LabeledGraph::new(
            vec![
                (VertexLabel::FREE, boxp([0.0, 0.0], [1.0, 1.0])),
                (VertexLabel::key(1), boxp([1.0, 0.0], [2.0, 1.0])),
            ],
            [(0, 1)],
            0,
            0,
        )
        .unwrap();
        let m = greedy_merge(&g, 0).unwrap();
        assert_eq!(m.n_vertices(), 2);
    }

    #[test]
    fn start_inside_obstacle_is_rejected() {
        let world = boxp([0.0, 0.0], [4.0, 4.0]);
        let obs = boxp([1.0, 1.0], [3.0, 3.0]);
        let err = build_labeled_graph(&world, &[obs], &[], &[], &[2.0, 2.0], &[0.5, 0.5], 0)
            .unwrap_err();
        assert_eq!(err, Error::StartInObstacle);
        let obs = boxp([1.0, 1.0], [3.0, 3.0]);
        let err = build_labeled_graph(&world, &[obs], &[], &[], &[0.5, 0.5], &[2.5, 2.5], 0)
            .unwrap_err();
        assert_eq!(err, Error::TargetInObstacle);
    }

    #[test]
    fn overlapping_sets_are_rejected() {
        let world = boxp([0.0, 0.0], [4.0, 4.0]);
        let obs = boxp([1.0, 1.0], [3.0, 3.0]);
        let key = boxp([2.0, 2.0], [3.5, 3.5]);
        let door = boxp([0.0, 3.5], [1.0, 4.0]);
        let err = build_labeled_graph(&world, &[obs], &[key], &[door], &[0.5, 0.5], &[0.5, 2.5], 0)
            .unwrap_err();
        assert!(matches!(err, Error::OverlappingInputSets(_)));
    }

    #[test]
    fn sets_outside_world_are_rejected() {
        let world = boxp([0.0, 0.0], [4.0, 4.0]);
        let obs = boxp([3.0, 3.0], [5.0, 5.0]);
        let err =
            build_labeled_graph(&world, &[obs], &[], &[], &[0.5, 0.5], &[1.0, 1.0], 0).unwrap_err();
        assert!(matches!(err, Error::OutsideWorld(_)));
    }

    #[test]
    fn vertex_names() {
        let g = LabeledGraph::new(
            vec![
                (VertexLabel::FREE, boxp([0.0, 0.0], [1.0, 1.0])),
                (VertexLabel::FREE, boxp([1.0, 0.0], [2.0, 1.0])),
                (VertexLabel::key(1), boxp([2.0, 0.0], [3.0, 1.0])),
                (VertexLabel::door(1), boxp([3.0, 0.0], [4.0, 1.0])),
                (VertexLabel::FREE, boxp([4.0, 0.0], [5.0, 1.0])),
            ],
            [(0, 1), (1, 2), (2, 3), (3, 4)],
            0,
            4,
        )
        .unwrap();
        let names: Vec<String> = (0..5).map(|i| g.name(i)).collect();
        assert_eq!(names, ["s", "c1", "k1", "d1", "t"]);
    }
}
