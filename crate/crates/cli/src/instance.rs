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

//! Loading planner inputs from environment or maze files.

use std::path::Path;

use anyhow::{Context, Result};
use keydoor::environment::Environment;
use keydoor::gcs::PlannerParams;
use keydoor::maze::{maze_to_graph, Maze};
use keydoor::partition::LabeledGraph;
use keydoor::precedence::{Mode, PrecedenceSpec};

#[derive(Clone, Debug)]
pub enum Instance {
    Env(Environment),
    Maze(Maze),
}

impl Instance {
    /// JSON files are environments, anything else is read as a maze.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> keydoor::Result<Self> {
        if text.trim_start().starts_with('{') {
            Environment::parse(text).map(Instance::Env)
        } else {
            Maze::parse(text).map(Instance::Maze)
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Instance::Env(e) => e.dimension,
            Instance::Maze(_) => 2,
        }
    }

    pub fn graph(&self, seed: u64) -> keydoor::Result<LabeledGraph> {
        match self {
            Instance::Env(e) => e.labeled_graph(seed),
            Instance::Maze(m) => maze_to_graph(m),
        }
    }

    pub fn spec(&self, mode: Option<Mode>) -> PrecedenceSpec {
        match self {
            Instance::Env(e) => PrecedenceSpec::new(e.n_keys(), mode.unwrap_or(e.mode())),
            Instance::Maze(m) => PrecedenceSpec::new(m.n_keys(), mode.unwrap_or(m.mode)),
        }
    }

    pub fn params(&self) -> keydoor::Result<PlannerParams> {
        match self {
            Instance::Env(e) => PlannerParams::for_environment(e),
            Instance::Maze(m) => Ok(m.planner_params()),
        }
    }
}
