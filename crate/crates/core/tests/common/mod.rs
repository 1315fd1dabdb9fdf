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

//! Instance generators and property checkers shared by the test targets.

#![allow(dead_code)]

use std::collections::BTreeMap;

use keydoor::augment::{AugNode, AugmentedGraph};
use keydoor::geometry::{buck_bound, facet_adjacent_geometric, Arrangement, Polytope};
use keydoor::partition::{build_labeled_graph, LabelKind, LabeledGraph, VertexLabel};
use keydoor::precedence::{check_sequence, vertex_event, AtomicTrace, Mode, PrecedenceSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WORLD: f64 = 10.0;

/// Planar environment with its input sets kept for checking.
pub struct RandomEnv {
    pub world: Polytope,
    pub obstacles: Vec<Polytope>,
    pub keys: Vec<Polytope>,
    pub doors: Vec<Polytope>,
    pub start: Vec<f64>,
    pub target: Vec<f64>,
}

impl RandomEnv {
    pub fn sets(&self) -> impl Iterator<Item = &Polytope> {
        self.obstacles.iter().chain(&self.keys).chain(&self.doors)
    }

    pub fn graph(&self, seed: u64) -> keydoor::Result<LabeledGraph> {
        build_labeled_graph(
            &self.world,
            &self.obstacles,
            &self.keys,
            &self.doors,
            &self.start,
            &self.target,
            seed,
        )
    }
}

pub fn rotated_rect(c: [f64; 2], half: [f64; 2], angle: f64) -> Polytope {
    let (s, co) = angle.sin_cos();
    let n1 = [co, s];
    let n2 = [-s, co];
    let d1 = n1[0] * c[0] + n1[1] * c[1];
    let d2 = n2[0] * c[0] + n2[1] * c[1];
    Polytope::from_rows(
        &[
            n1.to_vec(),
            vec![-n1[0], -n1[1]],
            n2.to_vec(),
            vec![-n2[0], -n2[1]],
        ],
        &[d1 + half[0], -d1 + half[0], d2 + half[1], -d2 + half[1]],
    )
    .expect("rectangle is valid")
}

fn overlaps(p: &Polytope, q: &Polytope) -> bool {
    p.intersect(q).unwrap().is_full_dimensional().unwrap()
}

/// Up to four obstacles and two key-door pairs, all rotated rectangles
/// with pairwise disjoint interiors.
pub fn random_env(seed: u64) -> RandomEnv {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let world = Polytope::from_box(&[0.0, 0.0], &[WORLD, WORLD]).unwrap();
    let n_obs = rng.gen_range(0..=4);
    let n_pairs = rng.gen_range(0..=2);
    let mut placed: Vec<Polytope> = Vec::new();
    let draw = |rng: &mut ChaCha8Rng, placed: &mut Vec<Polytope>, big: bool| -> Option<Polytope> {
        for _ in 0..200 {
            let size = if big { 0.6..1.8 } else { 0.3..0.8 };
            let half = [rng.gen_range(size.clone()), rng.gen_range(size)];
            let c = [rng.gen_range(1.0..WORLD - 1.0), rng.gen_range(1.0..WORLD - 1.0)];
            let angle = if rng.gen_bool(0.5) { 0.0 } else { rng.gen_range(0.0..std::f64::consts::PI) };
            let p = rotated_rect(c, half, angle);
            let (lo, hi) = p.bounding_box().unwrap();
            if lo.iter().any(|&v| v < 0.0) || hi.iter().any(|&v| v > WORLD) {
                continue;
            }
            if placed.iter().any(|q| overlaps(&p, q)) {
                continue;
            }
            placed.push(p.clone());
            return Some(p);
        }
        None
    };
    let obstacles: Vec<Polytope> = (0..n_obs).filter_map(|_| draw(&mut rng, &mut placed, true)).collect();
    let mut keys = Vec::new();
    let mut doors = Vec::new();
    for _ in 0..n_pairs {
        let k = draw(&mut rng, &mut placed, false);
        let d = draw(&mut rng, &mut placed, false);
        match (k, d) {
            (Some(k), Some(d)) => {
                keys.push(k);
                doors.push(d);
            }
            _ => break,
        }
    }
    let free_point = |rng: &mut ChaCha8Rng| loop {
        let x = vec![rng.gen_range(0.2..WORLD - 0.2), rng.gen_range(0.2..WORLD - 0.2)];
        if placed.iter().all(|p| p.violation(&x) > 0.05) {
            return x;
        }
    };
    let start = free_point(&mut rng);
    let target = free_point(&mut rng);
    RandomEnv {
        world,
        obstacles,
        keys,
        doors,
        start,
        target,
    }
}

fn interiors(g: &LabeledGraph, x: &[f64]) -> Vec<usize> {
    g.vertices()
        .iter()
        .filter(|v| v.polytope.contains_interior(x, 1e-9))
        .map(|v| v.id)
        .collect()
}

/// Samples the world and checks that every point lands where its input set
/// says it should.
pub fn check_coverage(env: &RandomEnv, g: &LabeledGraph, samples: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tested = 0;
    while tested < samples {
        let x = [rng.gen_range(0.0..WORLD), rng.gen_range(0.0..WORLD)];
        let near_boundary = env.sets().chain(g.vertices().iter().map(|v| v.polytope.as_ref())).any(|p| p.violation(&x).abs() < 1e-7);
        if near_boundary {
            continue;
        }
        tested += 1;
        let inside = interiors(g, &x);
        if let Some(i) = env.obstacles.iter().position(|o| o.contains_interior(&x, 0.0)) {
            if !inside.is_empty() {
                return Err(format!("point {x:?} in obstacle {} is covered by {inside:?}", i + 1));
            }
            continue;
        }
        let labeled = |sets: &[Polytope], mk: fn(usize) -> VertexLabel| {
            sets.iter().position(|s| s.contains_interior(&x, 0.0)).map(|i| mk(i + 1))
        };
        let want = labeled(&env.keys, VertexLabel::key).or_else(|| labeled(&env.doors, VertexLabel::door));
        if inside.len() != 1 {
            return Err(format!("point {x:?} lies in {} graph polytopes", inside.len()));
        }
        let got = g.vertex(inside[0]).label;
        match want {
            Some(l) if got != l => return Err(format!("point {x:?} should be {l:?}, got {got:?}")),
            None if !got.is_free() => return Err(format!("free point {x:?} labeled {got:?}")),
            _ => {}
        }
    }
    Ok(())
}

pub fn check_disjoint(g: &LabeledGraph) -> Result<(), String> {
    let vs = g.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let shrunk = vs[i].polytope.intersect(&vs[j].polytope).unwrap().shrink(1e-6);
            if !shrunk.is_empty().map_err(|e| e.to_string())? {
                return Err(format!("vertices {i} and {j} overlap"));
            }
        }
    }
    Ok(())
}

/// Edges are exactly the facet-adjacent pairs.
pub fn check_adjacency(g: &LabeledGraph) -> Result<(), String> {
    let vs = g.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let geo = facet_adjacent_geometric(&vs[i].polytope, &vs[j].polytope).map_err(|e| e.to_string())?;
            if geo != g.has_edge(i, j) {
                return Err(format!("pair ({i}, {j}): geometric {geo}, graph {}", g.has_edge(i, j)));
            }
        }
    }
    Ok(())
}

/// Cell count of the full arrangement against Buck's bound, and free
/// vertices against the cell count.
pub fn check_buck(env: &RandomEnv, g: &LabeledGraph) -> Result<(), String> {
    let sets: Vec<&Polytope> = env.sets().collect();
    let arr = Arrangement::from_polytopes(&env.world, &sets).map_err(|e| e.to_string())?;
    let cells = arr.enumerate_cells().map_err(|e| e.to_string())?.len();
    let bound = buck_bound(arr.n_hyperplanes(), 2);
    if cells as u128 > bound {
        return Err(format!("{cells} cells exceed the bound {bound}"));
    }
    if g.count(LabelKind::Free) > cells {
        return Err("more free vertices than arrangement cells".into());
    }
    Ok(())
}

// ---- augmented graphs ----

/// Labeled graph with the given labels and edges; geometry is a row of unit
/// boxes and does not matter for augmentation.
pub fn abstract_graph(labels: &[VertexLabel], edges: &[(usize, usize)], start: usize, target: usize) -> LabeledGraph {
    let verts = labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, Polytope::from_box(&[i as f64, 0.0], &[i as f64 + 1.0, 1.0]).unwrap()))
        .collect();
    LabeledGraph::new(verts, edges.iter().copied(), start, target).unwrap()
}

/// Random connected graph on `n` vertices with `pairs` key-door pairs.
pub fn random_abstract_graph(seed: u64, n: usize, pairs: usize) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = vec![VertexLabel::FREE; n];
    let mut slots: Vec<usize> = (2..n).collect();
    for i in 1..=pairs {
        for mk in [VertexLabel::key as fn(usize) -> VertexLabel, VertexLabel::door] {
            if slots.is_empty() {
                break;
            }
            let k = rng.gen_range(0..slots.len());
            labels[slots.swap_remove(k)] = mk(i);
        }
    }
    // Keys and doors must come in pairs.
    for i in 1..=pairs {
        let has_k = labels.contains(&VertexLabel::key(i));
        let has_d = labels.contains(&VertexLabel::door(i));
        if has_k != has_d {
            for l in labels.iter_mut() {
                if *l == VertexLabel::key(i) || *l == VertexLabel::door(i) {
                    *l = VertexLabel::FREE;
                }
            }
        }
    }
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..n / 2 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v));
        }
    }
    abstract_graph(&labels, &edges, 0, 1)
}

/// All simple start-target paths of the augmented graph, up to `limit`.
pub fn augmented_paths(aug: &AugmentedGraph, limit: usize) -> Vec<Vec<usize>> {
    let out = aug.out_edges();
    let mut paths = Vec::new();
    let mut path = vec![aug.start()];
    let mut on = vec![false; aug.n_nodes()];
    on[aug.start()] = true;
    fn dfs(aug: &AugmentedGraph, out: &[Vec<usize>], path: &mut Vec<usize>, on: &mut [bool], paths: &mut Vec<Vec<usize>>, limit: usize) {
        if paths.len() >= limit {
            return;
        }
        let u = *path.last().unwrap();
        if u == aug.target() {
            paths.push(path.clone());
            return;
        }
        for &e in &out[u] {
            let v = aug.edges()[e].to;
            if on[v] {
                continue;
            }
            on[v] = true;
            path.push(v);
            dfs(aug, out, path, on, paths, limit);
            path.pop();
            on[v] = false;
        }
    }
    dfs(aug, &out, &mut path, &mut on, &mut paths, limit);
    paths
}

/// Every augmented start-target path projects to an accepted trace.
pub fn check_soundness(aug: &AugmentedGraph, limit: usize) -> Result<usize, String> {
    let paths = augmented_paths(aug, limit);
    for p in &paths {
        let trace = aug.trace_of_path(p).ok_or("empty trace")?;
        if !check_sequence(&trace, aug.spec()) {
            return Err(format!("path {p:?} gives rejected trace {:?}", trace.events()));
        }
    }
    Ok(paths.len())
}

/// Walks of `g` from start to target (target only at the end) with at most
/// `max_len` vertices.
pub fn graph_walks(g: &LabeledGraph, max_len: usize) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut walk = vec![g.start_vertex()];
    fn rec(g: &LabeledGraph, adj: &[Vec<usize>], walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, max_len: usize) {
        let u = *walk.last().unwrap();
        if u == g.target_vertex() {
            out.push(walk.clone());
            return;
        }
        if walk.len() == max_len {
            return;
        }
        for &v in &adj[u] {
            walk.push(v);
            rec(g, adj, walk, out, max_len);
            walk.pop();
        }
    }
    if g.start_vertex() == g.target_vertex() {
        return vec![walk];
    }
    rec(g, &adj, &mut walk, &mut out, max_len);
    out
}

/// Follows `walk` through the augmented graph, collecting each key on entry.
pub fn lift_walk(aug: &AugmentedGraph, walk: &[usize]) -> Option<Vec<usize>> {
    let mut succ: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in aug.edges() {
        succ.entry(e.from).or_default().push(e.to);
    }
    let g = aug.graph();
    let mut cur = aug.start();
    let mut path = vec![cur];
    for &w in &walk[1..] {
        let next = succ.get(&cur)?.iter().copied().find(|&n| match aug.nodes()[n] {
            AugNode::Target => w == g.target_vertex(),
            AugNode::Copy { vertex, subset } => {
                vertex == w && matches!(aug.nodes()[cur], AugNode::Copy { subset: s, .. } if s == subset)
            }
        })?;
        cur = next;
        path.push(cur);
        if let AugNode::Copy { subset, vertex } = aug.nodes()[cur] {
            let label = g.vertex(vertex).label;
            if label.kind == LabelKind::Key && !subset.contains(label.index) {
                let up = succ.get(&cur).and_then(|s| {
                    s.iter().copied().find(|&n| {
                        matches!(aug.nodes()[n], AugNode::Copy { vertex: v, subset: t } if v == vertex && t == subset.with(label.index))
                    })
                });
                if let Some(u) = up {
                    cur = u;
                    path.push(cur);
                }
            }
        }
    }
    Some(path)
}

/// Every accepted walk of `g` is the projection of an augmented path.
pub fn check_completeness(aug: &AugmentedGraph, max_len: usize) -> Result<usize, String> {
    let g = aug.graph();
    let mut accepted = 0;
    for w in graph_walks(g, max_len) {
        let trace = AtomicTrace::new(w.iter().map(|&v| vertex_event(g, v)).collect()).unwrap();
        if !check_sequence(&trace, aug.spec()) {
            continue;
        }
        accepted += 1;
        let path = lift_walk(aug, &w).ok_or_else(|| format!("accepted walk {w:?} has no augmented path"))?;
        if aug.project_path(&path) != w {
            return Err(format!("walk {w:?} lifted to a different projection"));
        }
    }
    Ok(accepted)
}

pub fn release(n: usize) -> PrecedenceSpec {
    PrecedenceSpec::new(n, Mode::Release)
}
