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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("start point is not in free space")]
    StartInObstacle,

    #[error("target point is not in free space")]
    TargetInObstacle,

    #[error("set lies outside the world: {0}")]
    OutsideWorld(String),

    #[error("input sets overlap: {0}")]
    OverlappingInputSets(String),

    #[error("segment {segment} leaves polytope of vertex {vertex}")]
    SegmentOutsideGraph { segment: usize, vertex: usize },

    #[error("{n} keys exceed the supported maximum of {max}")]
    TooManyKeys { n: usize, max: usize },

    #[error("velocity boundary conditions need a Bezier degree of at least 2")]
    DegreeTooLow,

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("rounding found no start-target path")]
    NoPathFound,

    #[error("more than {budget} simple paths; oracle budget exceeded")]
    PathBudgetExceeded { budget: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Whether the error comes from geometric preconditions on the input sets.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::EmptyPolytope
                | Error::Unbounded
                | Error::StartInObstacle
                | Error::TargetInObstacle
                | Error::OverlappingInputSets(_)
                | Error::OutsideWorld(_)
        )
    }
}
