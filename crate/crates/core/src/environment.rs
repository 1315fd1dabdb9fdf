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
//! Environment description files.
//!
//! An environment is a JSON document:
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "world": {"A": [[1, 0], [-1, 0], [0, 1], [0, -1]], "b": [4, 0, 2, 0]},
//!   "obstacles": [],
//!   "keys": [{"A": [...], "b": [...]}],
//!   "doors": [{"A": [...], "b": [...]}],
//!   "start": [0.5, 1.0],
//!   "target": [3.5, 1.0],
//!   "velocity_set": {"A": [...], "b": [...]},
//!   "precedence": {"mode": "release"}
//! }
//! ```
//!
//! Matrices are row-major; `velocity_set` and `precedence` are optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::partition::{build_labeled_graph, LabeledGraph};
use crate::precedence::Mode;

/// `{x : A x <= b}` as it appears in files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpaces {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

impl HalfSpaces {
    pub fn from_box(lo: &[f64], hi: &[f64]) -> Self {
        let d = lo.len();
        let mut a = Vec::with_capacity(2 * d);
        let mut b = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut row = vec![0.0; d];
            row[i] = 1.0;
            a.push(row.clone());
            b.push(hi[i]);
            row[i] = -1.0;
            a.push(row);
            b.push(-lo[i]);
        }
        Self { a, b }
    }

    pub fn to_polytope(&self, dimension: usize) -> Result<Polytope> {
        if self.a.len() != self.b.len() {
            return Err(Error::Dimension(format!(
                "{} rows in A but {} entries in b",
                self.a.len(),
                self.b.len()
            )));
        }
        if let Some(row) = self.a.iter().find(|r| r.len() != dimension) {
            return Err(Error::Dimension(format!(
                "row of length {} in a {}-d environment",
                row.len(),
                dimension
            )));
        }
        Polytope::from_rows(&self.a, &self.b)
    }
}

impl From<&Polytope> for HalfSpaces {
    fn from(p: &Polytope) -> Self {
        let (a, b) = (0..p.n_rows()).map(|i| p.row(i)).unzip();
        Self { a, b }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrecedenceConfig {
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub dimension: usize,
    pub world: HalfSpaces,
    #[serde(default)]
    pub obstacles: Vec<HalfSpaces>,
    #[serde(default)]
    pub keys: Vec<HalfSpaces>,
    #[serde(default)]
    pub doors: Vec<HalfSpaces>,
    pub start: Vec<f64>,
    pub target: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub velocity_set: Option<HalfSpaces>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precedence: Option<PrecedenceConfig>,
}

/// Polytopes of an environment after validation.
#[derive(Clone, Debug)]
pub struct EnvironmentSets {
    pub world: Polytope,
    pub obstacles: Vec<Polytope>,
    pub keys: Vec<Polytope>,
    pub doors: Vec<Polytope>,
    pub velocity_set: Option<Polytope>,
}

impl Environment {
    pub fn parse(text: &str) -> Result<Self> {
        let env: Environment = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        env.check_shape()?;
        Ok(env)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("environment serializes")
    }

    fn check_shape(&self) -> Result<()> {
        let parse_err = |msg: String| Error::Parse { line: 0, msg };
        if self.dimension == 0 {
            return Err(parse_err("dimension must be positive".into()));
        }
        if self.start.len() != self.dimension || self.target.len() != self.dimension {
            return Err(parse_err(format!(
                "start/target must have {} coordinates",
                self.dimension
            )));
        }
        if self.keys.len() != self.doors.len() {
            return Err(parse_err(format!(
                "{} keys but {} doors",
                self.keys.len(),
                self.doors.len()
            )));
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        self.precedence.as_ref().map_or(Mode::Release, |p| p.mode)
    }

    pub fn n_keys(&self) -> usize {
        self.keys.len()
    }

    pub fn sets(&self) -> Result<EnvironmentSets> {
        let d = self.dimension;
        let convert =
            |v: &[HalfSpaces]| v.iter().map(|h| h.to_polytope(d)).collect::<Result<Vec<_>>>();
        Ok(EnvironmentSets {
            world: self.world.to_polytope(d)?,
            obstacles: convert(&self.obstacles)?,
            keys: convert(&self.keys)?,
            doors: convert(&self.doors)?,
            velocity_set: self
                .velocity_set
                .as_ref()
                .map(|v| v.to_polytope(d))
                .transpose()?,
        })
    }

    /// Runs exact partitioning on the environment.
    pub fn labeled_graph(&self, merge_seed: u64) -> Result<LabeledGraph> {
        let sets = self.sets()?;
        build_labeled_graph(
            &sets.world,
            &sets.obstacles,
            &sets.keys,
            &sets.doors,
            &self.start,
            &self.target,
            merge_seed,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "dimension": 2,
        "world": {"A": [[1, 0], [-1, 0], [0, 1], [0, -1]], "b": [2, 0, 1, 0]},
        "start": [0.5, 0.5],
        "target": [1.5, 0.5],
        "precedence": {"mode": "until"}
    }"#;

    #[test]
    fn parses_minimal_environment() {
        let env = Environment::parse(SMALL).unwrap();
        assert_eq!(env.dimension, 2);
        assert!(env.obstacles.is_empty());
        assert_eq!(env.mode(), Mode::Until);
        let again = Environment::parse(&env.to_json()).unwrap();
        assert_eq!(again, env);
    }

    #[test]
    fn reports_line_of_syntax_error() {
        let bad = "{\n  \"dimension\": 2,\n  \"obstacles\": [],\n  \"world\" {}\n}";
        match Environment::parse(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_mismatched_keys_and_doors() {
        let text = SMALL.replace(
            "\"start\"",
            "\"keys\": [{\"A\": [[1, 0]], \"b\": [1]}], \"start\"",
        );
        assert!(matches!(Environment::parse(&text), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_ragged_rows() {
        let text = SMALL.replace("[0, -1]]", "[0, -1, 3]]");
        let env = Environment::parse(&text).unwrap();
        assert!(matches!(env.sets(), Err(Error::Dimension(_))));
    }
}
