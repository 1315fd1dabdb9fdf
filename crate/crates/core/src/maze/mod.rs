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
//! Key-door maze benchmark generator.
//!
//! A perfect maze is carved with Eller's algorithm on a `(2r+1) × (2c+1)`
//! grid: cells sit at odd coordinates, the slots between them are walls or
//! passages and even-even positions are pillars. Doors occupy passage
//! slots, keys occupy cells.

mod eller;
mod graph;
mod io;
mod place;

use std::collections::VecDeque;

use crate::gcs::PlannerParams;
use crate::precedence::{Mode, PrecedenceSpec};

pub use eller::generate_perfect_maze;
pub use graph::maze_to_graph;
pub use place::{mutate_walls, place_keys_doors, removable_walls, MIN_START_GAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tile {
    Wall,
    Free,
    /// 1-based key index.
    Key(usize),
    /// 1-based door index.
    Door(usize),
}

impl Tile {
    pub fn is_wall(self) -> bool {
        self == Tile::Wall
    }
}

pub type Pos = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Maze {
    rows: usize,
    cols: usize,
    grid: Vec<Tile>,
    pub start: Pos,
    pub target: Pos,
    /// Realized batch sizes, most accessible batch first.
    pub batches: Vec<usize>,
    pub mode: Mode,
    pub seed: u64,
}

impl Maze {
    /// All-wall grid of `(2r+1) × (2c+1)` with every cell open.
    pub fn closed(r: usize, c: usize, seed: u64) -> Self {
        let (rows, cols) = (2 * r + 1, 2 * c + 1);
        let mut grid = vec![Tile::Wall; rows * cols];
        for i in 0..r {
            for j in 0..c {
                grid[(2 * i + 1) * cols + 2 * j + 1] = Tile::Free;
            }
        }
        Self {
            rows,
            cols,
            grid,
            start: (1, 1),
            target: (1, 1),
            batches: Vec::new(),
            mode: Mode::Release,
            seed,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_rows(&self) -> usize {
        self.rows / 2
    }

    pub fn cell_cols(&self) -> usize {
        self.cols / 2
    }

    pub fn n_cells(&self) -> usize {
        self.cell_rows() * self.cell_cols()
    }

    pub fn get(&self, p: Pos) -> Tile {
        self.grid[p.0 * self.cols + p.1]
    }

    pub fn set(&mut self, p: Pos, t: Tile) {
        self.grid[p.0 * self.cols + p.1] = t;
    }

    pub fn is_border(&self, p: Pos) -> bool {
        p.0 == 0 || p.1 == 0 || p.0 + 1 == self.rows || p.1 + 1 == self.cols
    }

    /// Odd-odd positions.
    pub fn is_cell(p: Pos) -> bool {
        p.0 % 2 == 1 && p.1 % 2 == 1
    }

    /// Even-even positions.
    pub fn is_pillar(p: Pos) -> bool {
        p.0 % 2 == 0 && p.1 % 2 == 0
    }

    pub fn positions(&self) -> impl Iterator<Item = Pos> + '_ {
        (0..self.rows).flat_map(move |i| (0..self.cols).map(move |j| (i, j)))
    }

    pub fn cells(&self) -> impl Iterator<Item = Pos> + '_ {
        (0..self.cell_rows()).flat_map(move |i| (0..self.cell_cols()).map(move |j| (2 * i + 1, 2 * j + 1)))
    }

    /// In-grid 4-neighbours.
    pub fn neighbors(&self, p: Pos) -> impl Iterator<Item = Pos> + '_ {
        let (i, j) = (p.0 as isize, p.1 as isize);
        [(i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)]
            .into_iter()
            .filter(|&(a, b)| a >= 0 && b >= 0 && (a as usize) < self.rows && (b as usize) < self.cols)
            .map(|(a, b)| (a as usize, b as usize))
    }

    /// Passable 4-neighbours; doors count as passable when `through_doors`.
    pub fn open_neighbors(&self, p: Pos, through_doors: bool) -> Vec<Pos> {
        self.neighbors(p)
            .filter(|&q| match self.get(q) {
                Tile::Wall => false,
                Tile::Door(_) => through_doors,
                _ => true,
            })
            .collect()
    }

    /// Grid BFS distances from `from`; `usize::MAX` when unreachable.
    pub fn distances(&self, from: Pos, through_doors: bool) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.rows * self.cols];
        dist[from.0 * self.cols + from.1] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            let d = dist[p.0 * self.cols + p.1];
            for q in self.open_neighbors(p, through_doors) {
                let k = q.0 * self.cols + q.1;
                if dist[k] == usize::MAX {
                    dist[k] = d + 1;
                    queue.push_back(q);
                }
            }
        }
        dist
    }

    pub fn dist_at(&self, dist: &[usize], p: Pos) -> usize {
        dist[p.0 * self.cols + p.1]
    }

    /// Shortest grid path from `from` to `to`, both included.
    pub fn path(&self, from: Pos, to: Pos, through_doors: bool) -> Option<Vec<Pos>> {
        let dist = self.distances(to, through_doors);
        if self.dist_at(&dist, from) == usize::MAX {
            return None;
        }
        let mut path = vec![from];
        let mut p = from;
        while p != to {
            let d = self.dist_at(&dist, p);
            p = self
                .open_neighbors(p, through_doors)
                .into_iter()
                .find(|&q| self.dist_at(&dist, q) + 1 == d)
                .expect("distance labels are consistent");
            path.push(p);
        }
        Some(path)
    }

    /// Number of open passages around a cell.
    pub fn cell_degree(&self, p: Pos) -> usize {
        self.neighbors(p).filter(|&q| !self.get(q).is_wall()).count()
    }

    /// Open passage slots between cells (doors included).
    pub fn n_passages(&self) -> usize {
        self.positions()
            .filter(|&p| !Self::is_cell(p) && !Self::is_pillar(p) && !self.get(p).is_wall())
            .count()
    }

    pub fn n_keys(&self) -> usize {
        self.grid.iter().filter(|t| matches!(t, Tile::Key(_))).count()
    }

    pub fn n_doors(&self) -> usize {
        self.grid.iter().filter(|t| matches!(t, Tile::Door(_))).count()
    }

    pub fn find(&self, tile: Tile) -> Option<Pos> {
        self.positions().find(|&p| self.get(p) == tile)
    }

    /// Whether every cell is reachable from the start through open slots.
    pub fn is_connected(&self) -> bool {
        let dist = self.distances(self.start, true);
        self.cells().all(|c| self.dist_at(&dist, c) != usize::MAX)
    }

    /// Lower-left corner of the unit square of a grid position.
    pub fn corner(&self, p: Pos) -> [f64; 2] {
        [p.1 as f64, (self.rows - 1 - p.0) as f64]
    }

    /// Center of the unit square of a grid position.
    pub fn center(&self, p: Pos) -> Vec<f64> {
        let c = self.corner(p);
        vec![c[0] + 0.5, c[1] + 0.5]
    }

    pub fn render(&self) -> String {
        io::render(self)
    }

    pub fn parse(text: &str) -> crate::Result<Self> {
        io::parse(text)
    }

    pub fn spec(&self) -> PrecedenceSpec {
        PrecedenceSpec::new(self.n_keys(), self.mode)
    }

    /// Default planner parameters from the start cell center to the target cell center.
    pub fn planner_params(&self) -> PlannerParams {
        PlannerParams::new(self.center(self.start), self.center(self.target))
    }
}

/// Generator settings; `rows` and `cols` count cells, not grid positions.
#[derive(Clone, Debug, PartialEq)]
pub struct MazeConfig {
    pub rows: usize,
    pub cols: usize,
    pub batches: Vec<usize>,
    pub p_remove: f64,
    pub add_wall: bool,
    pub seed: u64,
}

impl MazeConfig {
    pub fn new(rows: usize, cols: usize, batches: Vec<usize>, seed: u64) -> Self {
        Self {
            rows,
            cols,
            batches,
            p_remove: 0.0,
            add_wall: false,
            seed,
        }
    }

    /// Carves, places keys and doors, then mutates walls. Each stage gets
    /// its own seed derived from the master seed.
    pub fn generate(&self) -> Maze {
        let stage = |k: u64| self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k);
        let m = generate_perfect_maze(self.rows, self.cols, stage(1));
        let m = place_keys_doors(&m, &self.batches, stage(2));
        let mut m = mutate_walls(&m, self.p_remove, self.add_wall, stage(3));
        m.seed = self.seed;
        m
    }
}
