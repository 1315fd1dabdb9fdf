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
//! Polytope primitives, LP-backed predicates and hyperplane arrangements.

mod arrangement;
mod polytope;

pub use arrangement::{buck_bound, Arrangement, Hyperplane, Marking, Sign};
pub use polytope::{convex_union, facet_adjacent_geometric, union_is_convex, Polytope};
