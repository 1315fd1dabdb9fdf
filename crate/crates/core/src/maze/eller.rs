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
//! Eller's algorithm, one row of cells at a time.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Maze, Tile};

/// Perfect maze with `r × c` cells. The start is the center cell or a
/// corner; the target is the cell farthest from it.
pub fn generate_perfect_maze(r: usize, c: usize, seed: u64) -> Maze {
    assert!(r >= 1 && c >= 1, "maze needs at least one cell");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Maze::closed(r, c, seed);
    let id = |i: usize, j: usize| i * c + j;
    let mut sets = UnionFind::<usize>::new(r * c);
    let open = |m: &mut Maze, a: (usize, usize), b: (usize, usize)| {
        m.set((a.0 + b.0 + 1, a.1 + b.1 + 1), Tile::Free);
    };

    for i in 0..r {
        let last = i + 1 == r;
        for j in 0..c.saturating_sub(1) {
            if sets.find(id(i, j)) != sets.find(id(i, j + 1)) && (last || rng.gen_bool(0.5)) {
                sets.union(id(i, j), id(i, j + 1));
                open(&mut m, (i, j), (i, j + 1));
            }
        }
        if last {
            break;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for j in 0..c {
            groups.entry(sets.find(id(i, j))).or_default().push(j);
        }
        for members in groups.values() {
            let forced = *members.choose(&mut rng).expect("nonempty set");
            for &j in members {
                if j == forced || rng.gen_bool(0.5) {
                    sets.union(id(i, j), id(i + 1, j));
                    open(&mut m, (i, j), (i + 1, j));
                }
            }
        }
    }

    let centers = [
        (r / 2, c / 2),
        (0, 0),
        (0, c - 1),
        (r - 1, 0),
        (r - 1, c - 1),
    ];
    let (si, sj) = *centers.choose(&mut rng).expect("nonempty");
    m.start = (2 * si + 1, 2 * sj + 1);
    let dist = m.distances(m.start, true);
    m.target = m
        .cells()
        .max_by_key(|&p| (m.dist_at(&dist, p), std::cmp::Reverse(p)))
        .expect("at least one cell");
    m
}
