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
//! Randomized rounding of relaxed flows into start-target paths.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::problem::GcsProblem;

/// Flows at or below this are treated as zero.
pub const FLOW_EPS: f64 = 1e-6;

/// Up to `trials` distinct simple paths from a flow-weighted randomized
/// depth-first search with backtracking.
pub fn round_path(prob: &GcsProblem, flows: &[f64], trials: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if prob.is_trivial() {
        return Ok(vec![vec![prob.start()]]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..trials.max(1) {
        if let Some(p) = random_dfs(prob, flows, &mut rng) {
            if seen.insert(p.clone()) {
                found.push(p);
            }
        }
    }
    if found.is_empty() {
        Err(Error::NoPathFound)
    } else {
        Ok(found)
    }
}

fn random_dfs(prob: &GcsProblem, flows: &[f64], rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let n = prob.aug.n_nodes();
    let (s, t) = (prob.start(), prob.target());
    let mut on_path = vec![false; n];
    let mut dead = vec![false; n];
    let mut path = vec![s];
    on_path[s] = true;
    // Untried positive-flow edges per stack level.
    let fresh = |u: usize| -> Vec<usize> {
        prob.out[u]
            .iter()
            .copied()
            .filter(|&e| flows[e] > FLOW_EPS)
            .collect()
    };
    let mut stack: Vec<Vec<usize>> = vec![fresh(s)];
    let budget = 50 * n + 1000;
    let mut steps = 0;
    while let Some(cands) = stack.last_mut() {
        steps += 1;
        if steps > budget {
            return None;
        }
        cands.retain(|&e| {
            let v = prob.edges[e].to;
            !on_path[v] && !dead[v]
        });
        if cands.is_empty() {
            stack.pop();
            let u = path.pop().expect("aligned with stack");
            on_path[u] = false;
            dead[u] = true;
            continue;
        }
        let total: f64 = cands.iter().map(|&e| flows[e]).sum();
        let mut r = rng.gen::<f64>() * total;
        let mut pick = cands.len() - 1;
        for (i, &e) in cands.iter().enumerate() {
            r -= flows[e];
            if r <= 0.0 {
                pick = i;
                break;
            }
        }
        let e = cands.swap_remove(pick);
        let v = prob.edges[e].to;
        path.push(v);
        on_path[v] = true;
        if v == t {
            return Some(path);
        }
        stack.push(fresh(v));
    }
    None
}

/// Fewest-edge start-target path ignoring flows.
pub fn bfs_path(prob: &GcsProblem) -> Option<Vec<usize>> {
    if prob.is_trivial() {
        return Some(vec![prob.start()]);
    }
    let n = prob.aug.n_nodes();
    let mut parent = vec![usize::MAX; n];
    let s = prob.start();
    parent[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        if u == prob.target() {
            let mut path = vec![u];
            let mut c = u;
            while c != s {
                c = parent[c];
                path.push(c);
            }
            path.reverse();
            return Some(path);
        }
        for &e in &prob.out[u] {
            let v = prob.edges[e].to;
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}
