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
//! Shortest paths in the augmented graph of convex sets.
//!
//! Each visited region holds one Bezier segment with its own duration. The
//! cost is `α` times the control-polygon length plus `β` times the total
//! duration. A convex relaxation gives a lower bound and flows, the flows
//! are rounded to candidate paths, and the best convex restriction wins.

mod io;
mod oracle;
mod problem;
mod relax;
mod restrict;
mod round;

use std::sync::Arc;
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augment::{build_augmented, certify_feasibility, AugmentedGraph};
use crate::environment::Environment;
use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::partition::LabeledGraph;
use crate::precedence::{check_sequence, trajectory_to_trace, PrecedenceSpec};
use crate::tolerance::EPS_GAP;

pub use io::{parse_report, parse_trajectory};
pub use oracle::{oracle_shortest, oracle_with_budget, simple_paths, PATH_BUDGET};
pub use problem::{build_gcs, GcsProblem, ProblemEdge};
pub use relax::{solve_relaxation, Relaxation};
pub use restrict::solve_restriction;
pub use round::{bfs_path, round_path, FLOW_EPS};

#[derive(Clone, Debug)]
pub struct PlannerParams {
    pub alpha: f64,
    pub beta: f64,
    pub degree: usize,
    /// Admissible velocities `Q`; must contain the origin in its interior.
    pub velocity_set: Polytope,
    pub q0: Vec<f64>,
    pub qt: Vec<f64>,
    pub v0: Option<Vec<f64>>,
    pub vt: Option<Vec<f64>>,
    pub rounding_trials: usize,
    pub seed: u64,
    /// Tighten the relaxation with two-cycle cuts.
    pub cycle_constraints: bool,
}

impl PlannerParams {
    /// Degree 3, `α = 1`, `β = 0.1`, unit-box velocities, 10 trials.
    pub fn new(q0: Vec<f64>, qt: Vec<f64>) -> Self {
        let d = q0.len();
        Self {
            alpha: 1.0,
            beta: 0.1,
            degree: 3,
            velocity_set: Polytope::from_box(&vec![-1.0; d], &vec![1.0; d])
                .expect("unit box is valid"),
            q0,
            qt,
            v0: None,
            vt: None,
            rounding_trials: 10,
            seed: 0,
            cycle_constraints: true,
        }
    }

    pub fn for_environment(env: &Environment) -> Result<Self> {
        let mut p = Self::new(env.start.clone(), env.target.clone());
        if let Some(q) = env.sets()?.velocity_set {
            p.velocity_set = q;
        }
        Ok(p)
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if !(self.alpha >= 0.0 && self.beta >= 0.0 && self.alpha + self.beta > 0.0) {
            return Err(Error::InvalidParams(
                "alpha and beta must be nonnegative with a positive sum".into(),
            ));
        }
        if self.degree < 1 {
            return Err(Error::InvalidParams("degree must be at least 1".into()));
        }
        if (self.v0.is_some() || self.vt.is_some()) && self.degree < 2 {
            return Err(Error::DegreeTooLow);
        }
        let dims_ok = self.q0.len() == dim
            && self.qt.len() == dim
            && self.velocity_set.dim() == dim
            && self.v0.as_ref().map_or(true, |v| v.len() == dim)
            && self.vt.as_ref().map_or(true, |v| v.len() == dim);
        if !dims_ok {
            return Err(Error::Dimension("planner parameters do not match the graph".into()));
        }
        if !self.velocity_set.contains_interior(&vec![0.0; dim], 1e-9) {
            return Err(Error::InvalidParams(
                "velocity set must contain the origin in its interior".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// Labeled-graph vertex whose polytope holds the segment.
    pub vertex: usize,
    /// Augmented node the segment was planned in.
    pub node: usize,
    pub control_points: Vec<Vec<f64>>,
    pub duration: f64,
}

impl Segment {
    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn polygon_length(&self) -> f64 {
        self.control_points
            .windows(2)
            .map(|w| dist(&w[0], &w[1]))
            .sum()
    }

    /// Point at normalized time `s ∈ [0, 1]` (de Casteljau).
    pub fn eval(&self, s: f64) -> Vec<f64> {
        let mut pts = self.control_points.clone();
        let n = pts.len();
        for r in 1..n {
            for i in 0..n - r {
                let next = pts[i + 1].clone();
                for (a, b) in pts[i].iter_mut().zip(next) {
                    *a = (1.0 - s) * *a + s * b;
                }
            }
        }
        pts.swap_remove(0)
    }

    /// Control points of the velocity curve.
    pub fn velocity_points(&self) -> Vec<Vec<f64>> {
        let k = self.degree() as f64 / self.duration;
        self.control_points
            .windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| k * (a - b)).collect())
            .collect()
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub segments: Vec<Segment>,
    pub total_cost: f64,
}

impl Trajectory {
    /// `α · Σ control-polygon lengths + β · Σ durations`.
    pub fn cost(&self, alpha: f64, beta: f64) -> f64 {
        self.segments
            .iter()
            .map(|s| alpha * s.polygon_length() + beta * s.duration)
            .sum()
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// `per_segment` samples per segment, endpoints included.
    pub fn sample(&self, per_segment: usize) -> Vec<Vec<f64>> {
        let k = per_segment.max(2);
        self.segments
            .iter()
            .flat_map(|s| (0..k).map(move |i| s.eval(i as f64 / (k - 1) as f64)))
            .collect()
    }

    /// Largest gap between consecutive segment endpoints.
    pub fn continuity_error(&self) -> f64 {
        self.segments
            .windows(2)
            .map(|w| {
                dist(
                    w[0].control_points.last().expect("nonempty"),
                    &w[1].control_points[0],
                )
            })
            .fold(0.0, f64::max)
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.segments.iter().map(|s| s.vertex).collect()
    }

    pub fn to_text(&self) -> String {
        io::trajectory_to_text(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Suboptimal,
    Infeasible,
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Suboptimal => "suboptimal",
            SolveStatus::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub c_relax: f64,
    pub c_round: f64,
    pub delta_relax: f64,
    /// Partition, augmentation and problem construction, seconds.
    pub form_time: f64,
    pub relax_time: f64,
    /// Rounding plus restriction solves, seconds.
    pub round_time: f64,
    /// Augmented node ids of the chosen path.
    pub path: Vec<usize>,
    pub n_vertices: usize,
    pub n_aug_nodes: usize,
    pub n_keys: usize,
    pub n_layers: usize,
    pub n_subgraphs: usize,
    pub max_width: usize,
    pub candidates: usize,
}

impl SolveReport {
    pub fn solve_time(&self) -> f64 {
        self.relax_time + self.round_time
    }

    pub fn to_text(&self) -> String {
        io::report_to_text(self)
    }
}

/// Relative gap with a guard for near-zero bounds.
pub fn relative_gap(c_round: f64, c_relax: f64) -> f64 {
    (c_round - c_relax) / c_relax.abs().max(1e-9)
}

#[derive(Clone, Debug)]
pub struct PlanOutput {
    pub graph: LabeledGraph,
    pub augmented: Arc<AugmentedGraph>,
    pub trajectory: Option<Trajectory>,
    pub report: SolveReport,
}

/// Partition, augment and solve an environment.
pub fn plan(env: &Environment, spec: &PrecedenceSpec, params: &PlannerParams) -> Result<PlanOutput> {
    let t0 = Instant::now();
    let g = env.labeled_graph(params.seed)?;
    let form = t0.elapsed().as_secs_f64();
    let mut out = plan_graph(&g, spec, params)?;
    out.report.form_time += form;
    Ok(out)
}

/// Solve on an already built labeled graph.
pub fn plan_graph(g: &LabeledGraph, spec: &PrecedenceSpec, params: &PlannerParams) -> Result<PlanOutput> {
    let t0 = Instant::now();
    let aug = Arc::new(build_augmented(g, spec)?);
    let mut report = SolveReport {
        status: SolveStatus::Infeasible,
        c_relax: f64::NAN,
        c_round: f64::NAN,
        delta_relax: f64::NAN,
        form_time: 0.0,
        relax_time: 0.0,
        round_time: 0.0,
        path: Vec::new(),
        n_vertices: g.n_vertices(),
        n_aug_nodes: aug.n_nodes(),
        n_keys: spec.n(),
        n_layers: aug.n_layers(),
        n_subgraphs: aug.n_subgraphs(),
        max_width: aug.max_width(),
        candidates: 0,
    };
    if !certify_feasibility(&aug) {
        report.form_time = t0.elapsed().as_secs_f64();
        info!("target not reachable in the augmented graph");
        return Ok(PlanOutput {
            graph: g.clone(),
            augmented: aug,
            trajectory: None,
            report,
        });
    }
    let prob = build_gcs(aug.clone(), params)?;
    report.form_time = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let relax = solve_relaxation(&prob)?;
    report.relax_time = t1.elapsed().as_secs_f64();
    report.c_relax = relax.cost;

    let t2 = Instant::now();
    let mut candidates = match round_path(&prob, &relax.flows, params.rounding_trials, params.seed) {
        Ok(c) => c,
        Err(Error::NoPathFound) => {
            warn!("rounding found no path; falling back to graph search");
            vec![bfs_path(&prob).ok_or(Error::NoPathFound)?]
        }
        Err(e) => return Err(e),
    };
    let mut best = best_restriction(&prob, &candidates)?;
    if best.is_none() {
        if let Some(p) = bfs_path(&prob) {
            warn!("no rounded path admits a trajectory; trying graph search");
            candidates.push(p);
            best = best_restriction(&prob, &candidates[candidates.len() - 1..])?;
        }
    }
    let (path, traj) = best.ok_or(Error::NoPathFound)?;
    report.round_time = t2.elapsed().as_secs_f64();
    report.candidates = candidates.len();
    report.c_round = traj.total_cost;
    report.delta_relax = relative_gap(report.c_round, report.c_relax);
    report.status = if report.delta_relax <= EPS_GAP {
        SolveStatus::Optimal
    } else {
        SolveStatus::Suboptimal
    };
    report.path = path;

    let trace = trajectory_to_trace(&traj, g)?;
    if !check_sequence(&trace, spec) {
        return Err(Error::SolverFailure(
            "planned trajectory violates the specification".into(),
        ));
    }
    Ok(PlanOutput {
        graph: g.clone(),
        augmented: aug,
        trajectory: Some(traj),
        report,
    })
}

type Candidate = (Vec<usize>, Trajectory);

fn best_restriction(prob: &GcsProblem, paths: &[Vec<usize>]) -> Result<Option<Candidate>> {
    let solved: Vec<Result<Trajectory>> = paths.par_iter().map(|p| solve_restriction(prob, p)).collect();
    let mut best: Option<Candidate> = None;
    for (p, r) in paths.iter().zip(solved) {
        match r {
            Ok(tr) => {
                if best.as_ref().map_or(true, |b| tr.total_cost < b.1.total_cost) {
                    best = Some((p.clone(), tr));
                }
            }
            Err(Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}
