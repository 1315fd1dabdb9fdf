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
//! Text formats for trajectories and solve reports.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Segment, SolveReport, SolveStatus, Trajectory};

/// One segment per line: `vertex duration x0 y0 x1 y1 ...`. A leading
/// comment line carries the total cost.
pub(super) fn trajectory_to_text(t: &Trajectory) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# cost {}", t.total_cost);
    for seg in &t.segments {
        let _ = write!(s, "{} {}", seg.vertex, seg.duration);
        for p in &seg.control_points {
            for v in p {
                let _ = write!(s, " {v}");
            }
        }
        s.push('\n');
    }
    s
}

/// Parses the segment file; `dim` is needed to split the control points.
pub fn parse_trajectory(text: &str, dim: usize) -> Result<Trajectory> {
    let mut t = Trajectory::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        let err = |msg: &str| Error::Parse {
            line: i + 1,
            msg: msg.into(),
        };
        if let Some(rest) = line.strip_prefix("# cost") {
            t.total_cost = rest.trim().parse().map_err(|_| err("bad cost"))?;
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let vertex = it
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err("bad vertex id"))?;
        let duration = it
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err("bad duration"))?;
        let vals: Vec<f64> = it
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| err("bad coordinate"))?;
        if dim == 0 || vals.is_empty() || vals.len() % dim != 0 {
            return Err(err("control points do not match the dimension"));
        }
        t.segments.push(Segment {
            vertex,
            node: vertex,
            control_points: vals.chunks(dim).map(<[f64]>::to_vec).collect(),
            duration,
        });
    }
    Ok(t)
}

pub(super) fn report_to_text(r: &SolveReport) -> String {
    let path: Vec<String> = r.path.iter().map(ToString::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "status={}", r.status);
    let _ = writeln!(s, "C_relax={}", r.c_relax);
    let _ = writeln!(s, "C_round={}", r.c_round);
    let _ = writeln!(s, "delta_relax={}", r.delta_relax);
    let _ = writeln!(s, "form_time={}", r.form_time);
    let _ = writeln!(s, "relax_time={}", r.relax_time);
    let _ = writeln!(s, "round_time={}", r.round_time);
    let _ = writeln!(s, "path={}", path.join(","));
    let _ = writeln!(s, "n_vertices={}", r.n_vertices);
    let _ = writeln!(s, "n_aug_nodes={}", r.n_aug_nodes);
    let _ = writeln!(s, "n_keys={}", r.n_keys);
    let _ = writeln!(s, "n_layers={}", r.n_layers);
    let _ = writeln!(s, "n_subgraphs={}", r.n_subgraphs);
    let _ = writeln!(s, "max_width={}", r.max_width);
    let _ = writeln!(s, "candidates={}", r.candidates);
    s
}

pub fn parse_report(text: &str) -> Result<SolveReport> {
    let mut r = SolveReport {
        status: SolveStatus::Infeasible,
        c_relax: f64::NAN,
        c_round: f64::NAN,
        delta_relax: f64::NAN,
        form_time: 0.0,
        relax_time: 0.0,
        round_time: 0.0,
        path: Vec::new(),
        n_vertices: 0,
        n_aug_nodes: 0,
        n_keys: 0,
        n_layers: 0,
        n_subgraphs: 0,
        max_width: 0,
        candidates: 0,
    };
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| err("expected key=value".into()))?;
        let f = || v.parse::<f64>().map_err(|_| err(format!("bad number for {k}")));
        let u = || v.parse::<usize>().map_err(|_| err(format!("bad integer for {k}")));
        match k {
            "status" => {
                r.status = match v {
                    "optimal" => SolveStatus::Optimal,
                    "suboptimal" => SolveStatus::Suboptimal,
                    "infeasible" => SolveStatus::Infeasible,
                    _ => return Err(err(format!("unknown status {v}"))),
                }
            }
            "C_relax" => r.c_relax = f()?,
            "C_round" => r.c_round = f()?,
            "delta_relax" => r.delta_relax = f()?,
            "form_time" => r.form_time = f()?,
            "relax_time" => r.relax_time = f()?,
            "round_time" => r.round_time = f()?,
            "path" => {
                r.path = v
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse().map_err(|_| err("bad path".into())))
                    .collect::<Result<_>>()?
            }
            "n_vertices" => r.n_vertices = u()?,
            "n_aug_nodes" => r.n_aug_nodes = u()?,
            "n_keys" => r.n_keys = u()?,
            "n_layers" => r.n_layers = u()?,
            "n_subgraphs" => r.n_subgraphs = u()?,
            "max_width" => r.max_width = u()?,
            "candidates" => r.candidates = u()?,
            _ => return Err(err(format!("unknown key {k}"))),
        }
    }
    Ok(r)
}
