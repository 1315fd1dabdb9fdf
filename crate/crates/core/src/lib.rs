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
//! Key-door precedence planning over graphs of convex sets.
//!
//! The pipeline partitions free space exactly into convex cells
//! ([`partition`]), layers copies of the resulting labeled graph by collected
//! key sets ([`augment`]), and solves a shortest path problem over the
//! layered graph of convex sets with a convex relaxation followed by
//! randomized rounding ([`gcs`]). [`maze`] generates key-door benchmark
//! mazes and [`precedence`] monitors label sequences against the
//! release/until specifications.

pub mod augment;
pub mod conic;
pub mod environment;
pub mod error;
pub mod gcs;
pub mod geometry;
pub mod maze;
pub mod partition;
pub mod precedence;
pub mod scenarios;
pub mod tolerance;

pub use error::{Error, Result};
