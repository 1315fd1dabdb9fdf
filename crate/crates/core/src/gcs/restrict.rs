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
//! Convex restriction: the program with the discrete path fixed.

use crate::augment::EdgeKind;
use crate::conic::{ConicProgram, LinExpr};
use crate::error::{Error, Result};

use super::problem::{block_cost, constrain_block, link, pin_start, pin_target, Block, GcsProblem};
use super::{Segment, Trajectory};

/// Optimal trajectory along `path` (augmented node ids, start to target).
///
/// Nodes joined by an inter-layer edge share one block and produce a single
/// segment.
pub fn solve_restriction(prob: &GcsProblem, path: &[usize]) -> Result<Trajectory> {
    let edge_ids = if prob.is_trivial() && path == [prob.start()] {
        Vec::new()
    } else {
        prob.path_edges(path)?
    };
    let params = &prob.params;
    let d = prob.aug.graph().dim();

    // Group path positions into segments.
    let mut groups: Vec<Vec<usize>> = vec![vec![path[0]]];
    for (k, &e) in edge_ids.iter().enumerate() {
        match prob.edges[e].kind {
            EdgeKind::InterLayer => groups.last_mut().expect("nonempty").push(path[k + 1]),
            EdgeKind::Intra => groups.push(vec![path[k + 1]]),
        }
    }

    let mut prog = ConicProgram::new();
    let one = LinExpr::constant(1.0);
    let mut blocks = Vec::with_capacity(groups.len());
    let mut objective = LinExpr::new();
    for g in &groups {
        let blk = Block::new(&mut prog, params.degree, d);
        constrain_block(&mut prog, &blk, prob.polytope(g[0]), params, &one);
        objective.add_expr(&block_cost(&mut prog, &blk, params), 1.0);
        if let Some(prev) = blocks.last() {
            link(&mut prog, prev, &blk);
        }
        blocks.push(blk);
    }
    pin_start(&mut prog, &blocks[0], params, &one);
    pin_target(&mut prog, blocks.last().expect("nonempty"), params, &one);
    prog.add_objective(&objective);

    let sol = prog.solve()?;
    if !sol.is_optimal() {
        return Err(Error::Infeasible(format!(
            "path of {} segments admits no trajectory ({:?})",
            groups.len(),
            sol.status
        )));
    }
    let x = sol.values();
    let segments = groups
        .iter()
        .zip(&blocks)
        .map(|(g, blk)| {
            let (control_points, duration) = blk.extract(x);
            Segment {
                vertex: prob.aug.vertex_of(g[0]),
                node: g[0],
                control_points,
                duration,
            }
        })
        .collect();
    let mut traj = Trajectory {
        segments,
        total_cost: 0.0,
    };
    traj.total_cost = traj.cost(params.alpha, params.beta);
    Ok(traj)
}
