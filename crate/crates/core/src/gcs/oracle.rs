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
//! Exhaustive oracle: restriction on every simple start-target path.

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::problem::GcsProblem;
use super::restrict::solve_restriction;
use super::Trajectory;

/// Default cap on the number of enumerated paths.
pub const PATH_BUDGET: usize = 10_000;

/// All simple start-target paths with at most `max_path_len` nodes.
pub fn simple_paths(prob: &GcsProblem, max_path_len: usize, budget: usize) -> Result<Vec<Vec<usize>>> {
    if prob.is_trivial() {
        return Ok(vec![vec![prob.start()]]);
    }
    let mut out = Vec::new();
    if !prob.has_path() {
        return Ok(out);
    }
    let mut on_path = vec![false; prob.aug.n_nodes()];
    let mut path = vec![prob.start()];
    on_path[prob.start()] = true;
    let mut stack: Vec<usize> = vec![0];
    while let Some(pos) = stack.last_mut() {
        let u = *path.last().expect("aligned with stack");
        let edges = prob.out_edges(u);
        if *pos >= edges.len() || path.len() >= max_path_len {
            stack.pop();
            on_path[path.pop().expect("aligned")] = false;
            continue;
        }
        let v = prob.edges()[edges[*pos]].to;
        *pos += 1;
        if on_path[v] {
            continue;
        }
        if v == prob.target() {
            let mut p = path.clone();
            p.push(v);
            out.push(p);
            if out.len() > budget {
                return Err(Error::PathBudgetExceeded { budget });
            }
            continue;
        }
        path.push(v);
        on_path[v] = true;
        stack.push(0);
    }
    Ok(out)
}

/// Minimum restriction cost over all simple paths of at most
/// `max_path_len` nodes. Paths whose restriction is infeasible are skipped.
pub fn oracle_shortest(prob: &GcsProblem, max_path_len: usize) -> Result<(f64, Vec<usize>, Trajectory)> {
    oracle_with_budget(prob, max_path_len, PATH_BUDGET)
}

pub fn oracle_with_budget(
    prob: &GcsProblem,
    max_path_len: usize,
    budget: usize,
) -> Result<(f64, Vec<usize>, Trajectory)> {
    let paths = simple_paths(prob, max_path_len, budget)?;
    let solved: Vec<(usize, Result<Trajectory>)> = paths
        .par_iter()
        .enumerate()
        .map(|(i, p)| (i, solve_restriction(prob, p)))
        .collect();
    let mut best: Option<(f64, usize, Trajectory)> = None;
    for (i, r) in solved {
        match r {
            Ok(tr) => {
                if best.as_ref().map_or(true, |b| tr.total_cost < b.0) {
                    best = Some((tr.total_cost, i, tr));
                }
            }
            Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let (cost, i, tr) = best.ok_or(Error::NoPathFound)?;
    Ok((cost, paths[i].clone(), tr))
}
