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
//! Convex relaxation of the shortest-path problem.
//!
//! Every edge carries a flow `y_e` and perspective copies of the blocks of
//! its two endpoints. Vertex sets and costs enter through their
//! perspectives, so the program is exact whenever the flows are binary.

use log::debug;

use crate::augment::EdgeKind;
use crate::conic::{ConicProgram, LinExpr, Var};
use crate::error::{Error, Result};

use super::problem::{block_cost, constrain_block, constrain_exprs, link, pin_start, pin_target, Block, GcsProblem};

#[derive(Clone, Debug)]
pub struct Relaxation {
    /// Flow per problem edge, clamped to `[0, 1]`.
    pub flows: Vec<f64>,
    pub cost: f64,
    /// Recovered control points per augmented node with positive flow.
    pub node_points: Vec<Option<Vec<Vec<f64>>>>,
}

struct EdgeVars {
    y: Var,
    src: Block,
    dst: Block,
}

pub fn solve_relaxation(prob: &GcsProblem) -> Result<Relaxation> {
    if prob.is_trivial() {
        let tr = super::restrict::solve_restriction(prob, &[prob.start()])?;
        let mut node_points = vec![None; prob.aug.n_nodes()];
        node_points[prob.start()] = Some(tr.segments[0].control_points.clone());
        return Ok(Relaxation {
            flows: Vec::new(),
            cost: tr.total_cost,
            node_points,
        });
    }
    if !prob.has_path() {
        return Err(Error::Infeasible("target is not reachable from start".into()));
    }

    let params = &prob.params;
    let d = prob.aug.graph().dim();
    let (s, t) = (prob.start(), prob.target());
    let mut prog = ConicProgram::new();
    let mut vars: Vec<EdgeVars> = Vec::with_capacity(prob.edges.len());
    let mut objective = LinExpr::new();

    for e in &prob.edges {
        let y = prog.add_var();
        let ye = LinExpr::from(y);
        prog.add_nonneg(ye.clone());
        prog.add_nonpos(ye.clone().with_constant(-1.0));
        let src = Block::new(&mut prog, params.degree, d);
        constrain_block(&mut prog, &src, prob.polytope(e.from), params, &ye);
        let dst = match e.kind {
            EdgeKind::InterLayer => src.clone(),
            EdgeKind::Intra => {
                let dst = Block::new(&mut prog, params.degree, d);
                constrain_block(&mut prog, &dst, prob.polytope(e.to), params, &ye);
                link(&mut prog, &src, &dst);
                objective.add_expr(&block_cost(&mut prog, &src, params), 1.0);
                if e.to == t {
                    objective.add_expr(&block_cost(&mut prog, &dst, params), 1.0);
                }
                dst
            }
        };
        if e.from == s {
            pin_start(&mut prog, &src, params, &ye);
        }
        if e.to == t {
            pin_target(&mut prog, &dst, params, &ye);
        }
        vars.push(EdgeVars { y, src, dst });
    }

    let flow_sum = |ids: &[usize]| -> LinExpr {
        let mut e = LinExpr::new();
        for &k in ids {
            e.add_term(vars[k].y, 1.0);
        }
        e
    };

    for v in 0..prob.aug.n_nodes() {
        if !prob.is_active(v) {
            continue;
        }
        let out_y = flow_sum(&prob.out[v]);
        let in_y = flow_sum(&prob.inn[v]);
        if v == s {
            prog.add_eq(out_y.with_constant(-1.0));
            continue;
        }
        if v == t {
            prog.add_eq(in_y.with_constant(-1.0));
            continue;
        }
        let mut bal = in_y.clone();
        bal.add_expr(&out_y, -1.0);
        prog.add_eq(bal);
        prog.add_nonpos(in_y.clone().with_constant(-1.0));

        // Spatial conservation: the aggregated incoming block equals the
        // aggregated outgoing one.
        let n_scalars = (params.degree + 1) * d + 1;
        let scalars_in: Vec<Vec<Var>> = prob.inn[v]
            .iter()
            .map(|&k| vars[k].dst.scalars().collect())
            .collect();
        let scalars_out: Vec<Vec<Var>> = prob.out[v]
            .iter()
            .map(|&k| vars[k].src.scalars().collect())
            .collect();
        for c in 0..n_scalars {
            let mut e = LinExpr::new();
            for sc in &scalars_in {
                e.add_term(sc[c], 1.0);
            }
            for sc in &scalars_out {
                e.add_term(sc[c], -1.0);
            }
            prog.add_eq(e);
        }

        if params.cycle_constraints {
            add_two_cycle_cuts(&mut prog, prob, &vars, v, &in_y);
        }
    }

    prog.add_objective(&objective);
    debug!(
        "relaxation: {} edges, {} variables, {} rows",
        prob.edges.len(),
        prog.n_vars(),
        prog.n_rows()
    );
    let sol = prog.solve()?;
    if !sol.is_optimal() {
        return Err(Error::Infeasible(format!("relaxation {:?}", sol.status)));
    }
    let x = sol.values();
    let flows: Vec<f64> = vars.iter().map(|ev| x[ev.y.index()].clamp(0.0, 1.0)).collect();

    let mut node_points = vec![None; prob.aug.n_nodes()];
    for v in 0..prob.aug.n_nodes() {
        let (ids, outgoing) = if v == s {
            (&prob.out[v], true)
        } else {
            (&prob.inn[v], false)
        };
        let mass: f64 = ids.iter().map(|&k| flows[k]).sum();
        if mass <= 1e-9 {
            continue;
        }
        let mut acc: Option<Vec<Vec<f64>>> = None;
        for &k in ids {
            let blk = if outgoing { &vars[k].src } else { &vars[k].dst };
            let (pts, _) = blk.extract(x);
            match acc.as_mut() {
                None => acc = Some(pts),
                Some(a) => {
                    for (ra, rp) in a.iter_mut().zip(&pts) {
                        for (u, w) in ra.iter_mut().zip(rp) {
                            *u += w;
                        }
                    }
                }
            }
        }
        node_points[v] = acc.map(|a| {
            a.into_iter()
                .map(|p| p.into_iter().map(|u| u / mass).collect())
                .collect()
        });
    }

    Ok(Relaxation {
        flows,
        cost: sol.objective,
        node_points,
    })
}

/// For each pair of opposite edges `u→w`, `w→u`, the flow through `u`
/// that uses neither still has to be a valid perspective point of `u`.
fn add_two_cycle_cuts(
    prog: &mut ConicProgram,
    prob: &GcsProblem,
    vars: &[EdgeVars],
    u: usize,
    in_y: &LinExpr,
) {
    let params = &prob.params;
    let poly = prob.polytope(u);
    for &e_out in &prob.out[u] {
        let w = prob.edges[e_out].to;
        let Some(&e_back) = prob.inn[u].iter().find(|&&k| prob.edges[k].from == w) else {
            continue;
        };
        let mut rest = in_y.clone();
        rest.add_term(vars[e_out].y, -1.0);
        rest.add_term(vars[e_back].y, -1.0);
        prog.add_nonneg(rest.clone());

        // Aggregated block of u minus the two copies it shares with w.
        let n_pts = params.degree + 1;
        let d = params.q0.len();
        let rest_scalar = |pick: &dyn Fn(&Block) -> Var| {
            let mut e = LinExpr::new();
            for &k in &prob.inn[u] {
                e.add_term(pick(&vars[k].dst), 1.0);
            }
            e.add_term(pick(&vars[e_out].src), -1.0);
            e.add_term(pick(&vars[e_back].dst), -1.0);
            e
        };
        let pts: Vec<Vec<LinExpr>> = (0..n_pts)
            .map(|j| (0..d).map(|c| rest_scalar(&|b: &Block| b.pts[j][c])).collect())
            .collect();
        let t = rest_scalar(&|b: &Block| b.t);
        constrain_exprs(prog, &pts, &t, poly, params, &rest);
    }
}
