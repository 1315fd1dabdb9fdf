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

//! Plain SVG drawings of planar environments, mazes and trajectories.

use std::fmt::Write as _;

use keydoor::gcs::Trajectory;
use keydoor::geometry::Polytope;
use keydoor::maze::Maze;
use keydoor::partition::{LabelKind, LabeledGraph};

use crate::instance::Instance;

pub const SAMPLES_PER_SEGMENT: usize = 64;

const WIDTH: f64 = 800.0;
const KEY_FILL: &str = "#2ca02c";
const DOOR_FILL: &str = "#d62728";
const FREE_FILL: &str = "#eeeeee";

/// Corners of a bounded planar polytope in counter-clockwise order.
pub fn polygon(p: &Polytope) -> Vec<[f64; 2]> {
    let n = p.n_rows();
    let rows: Vec<(Vec<f64>, f64)> = (0..n).map(|i| p.row(i)).collect();
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&rows[i], &rows[j]);
            let det = a.0[0] * b.0[1] - a.0[1] * b.0[0];
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (a.1 * b.0[1] - a.0[1] * b.1) / det;
            let y = (a.0[0] * b.1 - a.1 * b.0[0]) / det;
            if p.contains(&[x, y], 1e-7)
                && !pts.iter().any(|q| (q[0] - x).abs() < 1e-9 && (q[1] - y).abs() < 1e-9)
            {
                pts.push([x, y]);
            }
        }
    }
    if pts.is_empty() {
        return pts;
    }
    let cx = pts.iter().map(|q| q[0]).sum::<f64>() / pts.len() as f64;
    let cy = pts.iter().map(|q| q[1]).sum::<f64>() / pts.len() as f64;
    pts.sort_by(|a, b| {
        let ta = (a[1] - cy).atan2(a[0] - cx);
        let tb = (b[1] - cy).atan2(b[0] - cx);
        ta.total_cmp(&tb)
    });
    pts
}

struct Canvas {
    lo: [f64; 2],
    hi: [f64; 2],
    scale: f64,
    body: String,
}

impl Canvas {
    fn new(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let span = (hi[0] - lo[0]).max(1e-9);
        Self {
            lo,
            hi,
            scale: WIDTH / span,
            body: String::new(),
        }
    }

    fn px(&self, p: &[f64]) -> (f64, f64) {
        ((p[0] - self.lo[0]) * self.scale, (self.hi[1] - p[1]) * self.scale)
    }

    fn points(&self, pts: &[impl AsRef<[f64]>]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.px(p.as_ref());
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn polygon(&mut self, pts: &[[f64; 2]], fill: &str, stroke: &str) {
        if pts.len() < 3 {
            return;
        }
        let s = self.points(pts);
        let _ = writeln!(
            self.body,
            r#"<polygon points="{s}" fill="{fill}" stroke="{stroke}" stroke-width="0.5"/>"#
        );
    }

    fn text(&mut self, at: [f64; 2], label: &str) {
        let (x, y) = self.px(&at);
        let size = (0.35 * self.scale).clamp(6.0, 14.0);
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="{size:.1}" text-anchor="middle" dominant-baseline="middle">{label}</text>"#
        );
    }

    fn marker(&mut self, at: &[f64], fill: &str) {
        let (x, y) = self.px(at);
        let r = (0.15 * self.scale).clamp(3.0, 8.0);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{fill}" stroke="black"/>"#
        );
    }

    fn finish(self, background: &str) -> String {
        let w = WIDTH;
        let h = (self.hi[1] - self.lo[1]) * self.scale;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w:.2}" height="{h:.2}" fill="{background}"/>"#);
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

/// Draws the labeled graph regions, obstacles and an optional trajectory.
/// Returns `None` for anything but planar inputs.
pub fn render(inst: &Instance, g: &LabeledGraph, traj: Option<&Trajectory>) -> Option<String> {
    if g.dim() != 2 {
        return None;
    }
    let (lo, hi, background, obstacles) = match inst {
        Instance::Env(e) => {
            let sets = e.sets().ok()?;
            let (lo, hi) = g
                .vertices()
                .iter()
                .filter_map(|v| v.polytope.bounding_box().ok())
                .fold(([f64::MAX; 2], [f64::MIN; 2]), |(lo, hi), (a, b)| {
                    (
                        [lo[0].min(a[0]), lo[1].min(a[1])],
                        [hi[0].max(b[0]), hi[1].max(b[1])],
                    )
                });
            (lo, hi, "white", sets.obstacles)
        }
        Instance::Maze(m) => ([0.0, 0.0], maze_extent(m), "#333333", Vec::new()),
    };
    let mut c = Canvas::new(lo, hi);
    for o in &obstacles {
        c.polygon(&polygon(o), "#222222", "#222222");
    }
    let mut labels = Vec::new();
    for v in g.vertices() {
        let (fill, label) = match v.label.kind {
            LabelKind::Key => (KEY_FILL, Some(format!("k{}", v.label.index))),
            LabelKind::Door => (DOOR_FILL, Some(format!("d{}", v.label.index))),
            _ => (FREE_FILL, None),
        };
        let pts = polygon(&v.polytope);
        c.polygon(&pts, fill, "#888888");
        if let (Some(l), false) = (label, pts.is_empty()) {
            let n = pts.len() as f64;
            let at = [
                pts.iter().map(|p| p[0]).sum::<f64>() / n,
                pts.iter().map(|p| p[1]).sum::<f64>() / n,
            ];
            labels.push((at, l));
        }
    }
    for (at, l) in labels {
        c.text(at, &l);
    }
    if let Some(t) = traj {
        let samples = t.sample(SAMPLES_PER_SEGMENT);
        let s = c.points(&samples);
        let _ = writeln!(
            c.body,
            r##"<polyline points="{s}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##
        );
    }
    let (start, target) = match inst {
        Instance::Env(e) => (e.start.clone(), e.target.clone()),
        Instance::Maze(m) => (m.center(m.start), m.center(m.target)),
    };
    c.marker(&start, "#1f77b4");
    c.marker(&target, "#ff7f0e");
    Some(c.finish(background))
}

fn maze_extent(m: &Maze) -> [f64; 2] {
    [m.cols() as f64, m.rows() as f64]
}
