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
//! Variable blocks and the graph on which the conic programs are built.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::augment::{AugmentedGraph, EdgeKind};
use crate::conic::{ConicProgram, LinExpr, Var};
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::tolerance::MIN_DURATION;

use super::PlannerParams;

/// Bezier control points and duration of one segment.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub pts: Vec<Vec<Var>>,
    pub t: Var,
}

impl Block {
    pub fn new(prog: &mut ConicProgram, degree: usize, dim: usize) -> Self {
        Self {
            pts: (0..=degree).map(|_| prog.add_vars(dim)).collect(),
            t: prog.add_var(),
        }
    }

    pub fn first(&self) -> &[Var] {
        &self.pts[0]
    }

    pub fn last(&self) -> &[Var] {
        self.pts.last().expect("degree >= 1")
    }

    /// Every scalar of the block in a fixed order.
    pub fn scalars(&self) -> impl Iterator<Item = Var> + '_ {
        self.pts.iter().flatten().copied().chain(std::iter::once(self.t))
    }

    pub fn extract(&self, x: &[f64]) -> (Vec<Vec<f64>>, f64) {
        let pts = self
            .pts
            .iter()
            .map(|p| p.iter().map(|v| x[v.index()]).collect())
            .collect();
        (pts, x[self.t.index()])
    }
}

/// Perspective of the block constraints scaled by `scale`: control points
/// in `scale · X`, velocity control points in `T · Q`, `T ≥ t_min · scale`.
pub(crate) fn constrain_block(
    prog: &mut ConicProgram,
    blk: &Block,
    poly: &Polytope,
    params: &PlannerParams,
    scale: &LinExpr,
) {
    let pts: Vec<Vec<LinExpr>> = blk
        .pts
        .iter()
        .map(|p| p.iter().map(|&v| LinExpr::from(v)).collect())
        .collect();
    constrain_exprs(prog, &pts, &LinExpr::from(blk.t), poly, params, scale);
}

/// Same as [`constrain_block`] for a block given by affine expressions.
pub(crate) fn constrain_exprs(
    prog: &mut ConicProgram,
    pts: &[Vec<LinExpr>],
    t: &LinExpr,
    poly: &Polytope,
    params: &PlannerParams,
    scale: &LinExpr,
) {
    let dot = |a: &[f64], p: &[LinExpr]| {
        let mut e = LinExpr::new();
        for (&c, x) in a.iter().zip(p) {
            if c != 0.0 {
                e.add_expr(x, c);
            }
        }
        e
    };
    for p in pts {
        for i in 0..poly.n_rows() {
            let (a, b) = poly.row(i);
            let mut e = dot(&a, p);
            e.add_expr(scale, -b);
            prog.add_nonpos(e);
        }
    }
    let deg = params.degree as f64;
    let q = &params.velocity_set;
    for j in 0..params.degree {
        for i in 0..q.n_rows() {
            let (a, b) = q.row(i);
            let mut e = dot(&a, &pts[j + 1]);
            e.add_expr(&dot(&a, &pts[j]), -1.0);
            let mut row = LinExpr::new();
            row.add_expr(t, -b);
            row.add_expr(&e, deg);
            prog.add_nonpos(row);
        }
    }
    let mut e = t.clone();
    e.add_expr(scale, -MIN_DURATION);
    prog.add_nonneg(e);
}

/// `α Σ‖P_{j+1} − P_j‖ + β T` through second-order cone epigraphs.
pub(crate) fn block_cost(prog: &mut ConicProgram, blk: &Block, params: &PlannerParams) -> LinExpr {
    let mut cost = LinExpr::term(blk.t, params.beta);
    if params.alpha > 0.0 {
        for j in 0..params.degree {
            let s = prog.add_var();
            let mut cone = vec![LinExpr::from(s)];
            for (&a, &b) in blk.pts[j + 1].iter().zip(&blk.pts[j]) {
                cone.push(LinExpr::term(a, 1.0).with_term(b, -1.0));
            }
            prog.add_soc(cone);
            cost.add_term(s, params.alpha);
        }
    }
    cost
}

/// `P_0 = q0 · scale` and, when given, the initial velocity pin.
pub(crate) fn pin_start(prog: &mut ConicProgram, blk: &Block, params: &PlannerParams, scale: &LinExpr) {
    for (k, &v) in blk.first().iter().enumerate() {
        let mut e = LinExpr::term(v, 1.0);
        e.add_expr(scale, -params.q0[k]);
        prog.add_eq(e);
    }
    if let Some(v0) = &params.v0 {
        pin_velocity(prog, blk, 0, v0, params.degree);
    }
}

pub(crate) fn pin_target(prog: &mut ConicProgram, blk: &Block, params: &PlannerParams, scale: &LinExpr) {
    for (k, &v) in blk.last().iter().enumerate() {
        let mut e = LinExpr::term(v, 1.0);
        e.add_expr(scale, -params.qt[k]);
        prog.add_eq(e);
    }
    if let Some(vt) = &params.vt {
        pin_velocity(prog, blk, params.degree - 1, vt, params.degree);
    }
}

/// `degree · (P_{j+1} − P_j) = T · v`.
fn pin_velocity(prog: &mut ConicProgram, blk: &Block, j: usize, v: &[f64], degree: usize) {
    let deg = degree as f64;
    for k in 0..v.len() {
        prog.add_eq(
            LinExpr::term(blk.pts[j + 1][k], deg)
                .with_term(blk.pts[j][k], -deg)
                .with_term(blk.t, -v[k]),
        );
    }
}

/// Position continuity between consecutive blocks.
pub(crate) fn link(prog: &mut ConicProgram, a: &Block, b: &Block) {
    for (&x, &y) in a.last().iter().zip(b.first()) {
        prog.add_eq(LinExpr::term(x, 1.0).with_term(y, -1.0));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProblemEdge {
    pub from: usize,
    pub to: usize,
    pub kind: EdgeKind,
}

/// Shortest-path problem over the augmented graph.
///
/// Only nodes that lie on some start-target walk are kept; edges into the
/// start and out of the target are dropped.
#[derive(Clone, Debug)]
pub struct GcsProblem {
    pub(crate) aug: Arc<AugmentedGraph>,
    pub(crate) params: PlannerParams,
    pub(crate) edges: Vec<ProblemEdge>,
    pub(crate) out: Vec<Vec<usize>>,
    pub(crate) inn: Vec<Vec<usize>>,
    pub(crate) active: Vec<bool>,
}

fn search(n: usize, from: usize, nbrs: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for v in nbrs(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

pub fn build_gcs(aug: Arc<AugmentedGraph>, params: &PlannerParams) -> Result<GcsProblem> {
    params.validate(aug.graph().dim())?;
    let (s, t) = (aug.start(), aug.target());
    let n = aug.n_nodes();
    let raw: Vec<ProblemEdge> = aug
        .edges()
        .iter()
        .filter(|e| e.to != s && e.from != t)
        .map(|e| ProblemEdge {
            from: e.from,
            to: e.to,
            kind: e.kind,
        })
        .collect();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for e in &raw {
        fwd[e.from].push(e.to);
        bwd[e.to].push(e.from);
    }
    let from_start = search(n, s, |u| fwd[u].clone());
    let to_target = search(n, t, |u| bwd[u].clone());
    let active: Vec<bool> = (0..n).map(|v| from_start[v] && to_target[v]).collect();
    let edges: Vec<ProblemEdge> = raw
        .into_iter()
        .filter(|e| active[e.from] && active[e.to])
        .collect();
    let mut out = vec![Vec::new(); n];
    let mut inn = vec![Vec::new(); n];
    for (k, e) in edges.iter().enumerate() {
        out[e.from].push(k);
        inn[e.to].push(k);
    }
    Ok(GcsProblem {
        aug,
        params: params.clone(),
        edges,
        out,
        inn,
        active,
    })
}

impl GcsProblem {
    pub fn augmented(&self) -> &AugmentedGraph {
        &self.aug
    }

    pub fn params(&self) -> &PlannerParams {
        &self.params
    }

    pub fn edges(&self) -> &[ProblemEdge] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn start(&self) -> usize {
        self.aug.start()
    }

    pub fn target(&self) -> usize {
        self.aug.target()
    }

    /// Whether the node lies on some start-target walk.
    pub fn is_active(&self, node: usize) -> bool {
        self.active[node]
    }

    pub fn n_active(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Number of variable blocks: one per active node.
    pub fn n_blocks(&self) -> usize {
        self.n_active()
    }

    /// Start and target coincide; the only path is the single node.
    pub fn is_trivial(&self) -> bool {
        self.start() == self.target()
    }

    pub fn has_path(&self) -> bool {
        self.is_trivial() || self.active[self.target()] && self.active[self.start()]
    }

    pub(crate) fn polytope(&self, node: usize) -> &Polytope {
        &self.aug.graph().vertex(self.aug.vertex_of(node)).polytope
    }

    /// Checks that `path` is a start-target path of problem edges and
    /// returns the edge ids.
    pub fn path_edges(&self, path: &[usize]) -> Result<Vec<usize>> {
        if path.first() != Some(&self.start()) || path.last() != Some(&self.target()) {
            return Err(Error::InvalidParams("path must run from start to target".into()));
        }
        path.windows(2)
            .map(|w| {
                self.out[w[0]]
                    .iter()
                    .copied()
                    .find(|&e| self.edges[e].to == w[1])
                    .ok_or_else(|| {
                        Error::InvalidParams(format!("no edge {} -> {}", w[0], w[1]))
                    })
            })
            .collect()
    }
}
