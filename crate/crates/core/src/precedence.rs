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
//! Key-door precedence specifications and their monitor.
//!
//! Two untimed fragments are supported. In release mode each key releases
//! its door (`K_i R ¬D_i`), so keys are optional unless a door has to be
//! crossed. In until mode (`¬D_i U K_i`) every key must be collected.
//! Both require the target to be reached eventually.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::augment::KeySubset;
use crate::error::{Error, Result};
use crate::gcs::Trajectory;
use crate::partition::{LabelKind, LabeledGraph};
use crate::tolerance::EPS_FEAS;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Release,
    Until,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Release => "release",
            Mode::Until => "until",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "release" => Ok(Mode::Release),
            "until" => Ok(Mode::Until),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecedenceSpec {
    n: usize,
    /// `unlocks[i]` is the set of doors opened by key `i + 1`.
    unlocks: Vec<KeySubset>,
    mode: Mode,
    target_required: bool,
}

impl PrecedenceSpec {
    /// Key `i` unlocks door `i`.
    pub fn new(n: usize, mode: Mode) -> Self {
        Self {
            n,
            unlocks: (1..=n).map(KeySubset::singleton).collect(),
            mode,
            target_required: true,
        }
    }

    /// Custom door map given per key. The induced map on key sets is the
    /// union over keys, which keeps it monotone.
    pub fn with_unlocks(unlocks: Vec<KeySubset>, mode: Mode) -> Self {
        Self {
            n: unlocks.len(),
            unlocks,
            mode,
            target_required: true,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn target_required(&self) -> bool {
        self.target_required
    }

    /// Doors opened by the key set `keys`.
    pub fn doors_unlocked(&self, keys: KeySubset) -> KeySubset {
        keys.iter()
            .filter_map(|k| self.unlocks.get(k - 1))
            .fold(KeySubset::empty(), |acc, &d| acc.union(d))
    }

    pub fn all_keys(&self) -> KeySubset {
        KeySubset::full(self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Free,
    Key(usize),
    Door(usize),
    Target,
}

/// Finite, nonempty sequence of region labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicTrace(Vec<Event>);

impl AtomicTrace {
    pub fn new(events: Vec<Event>) -> Option<Self> {
        (!events.is_empty()).then_some(Self(events))
    }

    pub fn events(&self) -> &[Event] {
        &self.0
    }

    /// Drops repeated consecutive events.
    pub fn collapsed(&self) -> AtomicTrace {
        let mut out: Vec<Event> = Vec::with_capacity(self.0.len());
        for &e in &self.0 {
            if out.last() != Some(&e) {
                out.push(e);
            }
        }
        AtomicTrace(out)
    }
}

pub fn check_sequence(trace: &AtomicTrace, spec: &PrecedenceSpec) -> bool {
    let mut held = KeySubset::empty();
    let mut reached_target = false;
    for &e in trace.events() {
        match e {
            Event::Key(i) if (1..=spec.n).contains(&i) => held.insert(i),
            Event::Key(_) | Event::Free => {}
            Event::Door(j) => {
                if !spec.doors_unlocked(held).contains(j) {
                    return false;
                }
            }
            Event::Target => reached_target = true,
        }
    }
    if spec.target_required && !reached_target {
        return false;
    }
    spec.mode == Mode::Release || held == spec.all_keys()
}

/// Label event of a graph vertex.
pub fn vertex_event(g: &LabeledGraph, v: usize) -> Event {
    if v == g.target_vertex() {
        return Event::Target;
    }
    let label = g.vertex(v).label;
    match label.kind {
        LabelKind::Key => Event::Key(label.index),
        LabelKind::Door => Event::Door(label.index),
        LabelKind::Free | LabelKind::Obstacle => Event::Free,
    }
}

/// One event per segment, with contiguous repeats collapsed.
///
/// Segments are certified to lie in their vertex polytope through their
/// control points (a Bezier curve stays in the hull of its control points).
pub fn trajectory_to_trace(traj: &Trajectory, g: &LabeledGraph) -> Result<AtomicTrace> {
    let mut events = Vec::with_capacity(traj.segments.len());
    for (k, seg) in traj.segments.iter().enumerate() {
        if seg.vertex >= g.n_vertices() {
            return Err(Error::SegmentOutsideGraph {
                segment: k,
                vertex: seg.vertex,
            });
        }
        let poly = &g.vertex(seg.vertex).polytope;
        for p in &seg.control_points {
            let scale = 1.0 + p.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if !poly.contains(p, EPS_FEAS * scale) {
                return Err(Error::SegmentOutsideGraph {
                    segment: k,
                    vertex: seg.vertex,
                });
            }
        }
        events.push(vertex_event(g, seg.vertex));
    }
    AtomicTrace::new(events)
        .map(|t| t.collapsed())
        .ok_or_else(|| Error::InvalidParams("empty trajectory".into()))
}
