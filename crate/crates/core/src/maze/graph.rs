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
//! Grid to labeled graph: free tiles are merged into rectangles by
//! run-length merging, keys and doors stay single tiles.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::geometry::Polytope;
use crate::partition::{LabeledGraph, VertexLabel};

use super::{Maze, Tile};

struct Rect {
    top: usize,
    bottom: usize,
    left: usize,
    right: usize,
}

pub fn maze_to_graph(m: &Maze) -> Result<LabeledGraph> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut rects: Vec<Rect> = Vec::new();
    // Rectangle still open for extension below, per run span.
    let mut open_prev: Vec<((usize, usize), usize)> = Vec::new();
    for i in 0..rows {
        let mut open_now = Vec::new();
        let mut j = 0;
        while j < cols {
            if m.get((i, j)) != Tile::Free {
                j += 1;
                continue;
            }
            let j0 = j;
            while j < cols && m.get((i, j)) == Tile::Free {
                j += 1;
            }
            let span = (j0, j - 1);
            let id = match open_prev.iter().find(|(s, _)| *s == span) {
                Some(&(_, id)) => {
                    rects[id].bottom = i;
                    id
                }
                None => {
                    rects.push(Rect {
                        top: i,
                        bottom: i,
                        left: span.0,
                        right: span.1,
                    });
                    rects.len() - 1
                }
            };
            open_now.push((span, id));
        }
        open_prev = open_now;
    }

    let n_free = rects.len();
    let n_keys = m.n_keys();
    let mut owner = vec![usize::MAX; rows * cols];
    for (id, r) in rects.iter().enumerate() {
        for i in r.top..=r.bottom {
            for j in r.left..=r.right {
                owner[i * cols + j] = id;
            }
        }
    }
    let mut vertices: Vec<(VertexLabel, Polytope)> = rects
        .iter()
        .map(|r| {
            let lo = [r.left as f64, (rows - 1 - r.bottom) as f64];
            let hi = [(r.right + 1) as f64, (rows - r.top) as f64];
            Polytope::from_box(&lo, &hi).map(|p| (VertexLabel::FREE, p))
        })
        .collect::<Result<_>>()?;
    let mut extra: Vec<(usize, VertexLabel, (usize, usize))> = m
        .positions()
        .filter_map(|p| match m.get(p) {
            Tile::Key(k) => Some((n_free + k - 1, VertexLabel::key(k), p)),
            Tile::Door(k) => Some((n_free + n_keys + k - 1, VertexLabel::door(k), p)),
            _ => None,
        })
        .collect();
    extra.sort_by_key(|e| e.0);
    for (id, label, p) in extra {
        let lo = m.corner(p);
        let hi = [lo[0] + 1.0, lo[1] + 1.0];
        vertices.push((label, Polytope::from_box(&lo, &hi)?));
        owner[p.0 * cols + p.1] = id;
    }

    let mut edges = BTreeSet::new();
    for i in 0..rows {
        for j in 0..cols {
            let a = owner[i * cols + j];
            if a == usize::MAX {
                continue;
            }
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if ni < rows && nj < cols {
                    let b = owner[ni * cols + nj];
                    if b != usize::MAX && b != a {
                        edges.insert((a.min(b), a.max(b)));
                    }
                }
            }
        }
    }
    let at = |p: (usize, usize)| owner[p.0 * cols + p.1];
    LabeledGraph::new(vertices, edges, at(m.start), at(m.target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::LabelKind;

    #[test]
    fn single_cell() {
        let m = Maze::closed(1, 1, 0);
        let g = maze_to_graph(&m).unwrap();
        assert_eq!(g.n_vertices(), 1);
        assert_eq!(g.start_vertex(), g.target_vertex());
    }

    #[test]
    fn open_corridor_is_one_vertex() {
        let mut m = Maze::closed(1, 5, 0);
        for j in 0..4 {
            m.set((1, 2 * j + 2), Tile::Free);
        }
        m.target = (1, 9);
        let g = maze_to_graph(&m).unwrap();
        assert_eq!(g.n_vertices(), 1);
        let (lo, hi) = g.vertex(0).polytope.bounding_box().unwrap();
        assert!((lo[0] - 1.0).abs() < 1e-6 && (hi[0] - 10.0).abs() < 1e-6);
    }

    #[test]
    fn room_with_key() {
        // 3x3 open room of cells, key in the top-left corner.
        let mut m = Maze::closed(3, 3, 0);
        for i in 1..6 {
            for j in 1..6 {
                m.set((i, j), Tile::Free);
            }
        }
        m.set((1, 1), Tile::Key(1));
        m.set((5, 6), Tile::Door(1));
        m.start = (5, 5);
        m.target = (3, 3);
        let g = maze_to_graph(&m).unwrap();
        assert_eq!(g.count(LabelKind::Key), 1);
        assert_eq!(g.count(LabelKind::Free), 2);
        let k = g.key_vertex(1).unwrap();
        assert_eq!(g.adjacency()[k].len(), 2);
    }
}
