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

//! Numerical tolerances shared across the pipeline.

/// LP feasibility slack.
pub const EPS_FEAS: f64 = 1e-8;

/// Interior shrink used to discard lower-dimensional cells.
pub const EPS_INT: f64 = 1e-6;

/// Minimum inscribed (d-1)-ball radius for two polytopes to share a facet.
pub const EPS_FACET: f64 = 1e-7;

/// Position continuity between consecutive trajectory segments.
pub const EPS_CONT: f64 = 1e-6;

/// Relative gap under which a rounded solution counts as optimal.
pub const EPS_GAP: f64 = 1e-6;

/// Lower bound on the duration of a traversed segment.
pub const MIN_DURATION: f64 = 1e-4;

/// Tolerance for treating two hyperplanes as identical after normalization.
pub const EPS_HYPERPLANE: f64 = 1e-9;
