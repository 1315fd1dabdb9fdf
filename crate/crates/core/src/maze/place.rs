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
//! Batched door and key placement, wall removal and wall insertion.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Maze, Pos, Tile};

/// Doors closer than this many grid steps to the start are not placed.
pub const MIN_START_GAP: usize = 4;

/// Places doors and keys batch by batch.
///
/// `batches[0]` is the number of keys reachable from the start, `batches[1]`
/// the number reachable once those doors open, and so on. Generation runs
/// backwards from the target: the last batch is placed first. Batches that
/// do not fit shrink; if one ends up empty the remaining ones are skipped.
pub fn place_keys_doors(maze: &Maze, batches: &[usize], seed: u64) -> Maze {
    let mut m = maze.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = batches.iter().sum();
    let dist = m.distances(m.start, true);
    let diameter = m.cells().map(|c| m.dist_at(&dist, c) / 2).max().unwrap_or(0);
    // Neighbourhood radius for follow-up keys, in grid steps.
    let radius = 2 * (2 * diameter / total.max(1)).max(1);

    let mut goal = m.target;
    let mut placed: Vec<(Vec<Pos>, Vec<Pos>)> = Vec::new();
    for &size in batches.iter().rev() {
        if size == 0 {
            continue;
        }
        let mut doors = door_slots(&m, goal, size);
        let mut keys = Vec::new();
        while !doors.is_empty() {
            for &d in &doors {
                m.set(d, Tile::Door(0));
            }
            keys = key_cells(&m, doors.len(), radius, &mut rng);
            if keys.len() >= doors.len() {
                keys.truncate(doors.len());
                break;
            }
            for &d in &doors {
                m.set(d, Tile::Free);
            }
            doors.pop();
            keys.clear();
        }
        if keys.is_empty() {
            break;
        }
        for &k in &keys {
            m.set(k, Tile::Key(0));
        }
        let dist = m.distances(m.start, false);
        goal = *keys
            .iter()
            .min_by_key(|&&k| (m.dist_at(&dist, k), k))
            .expect("nonempty");
        placed.push((keys, doors));
    }

    placed.reverse();
    m.batches = placed.iter().map(|(k, _)| k.len()).collect();
    let mut idx = 1;
    for (keys, doors) in &placed {
        for (&k, &d) in keys.iter().zip(doors) {
            m.set(k, Tile::Key(idx));
            m.set(d, Tile::Door(idx));
            idx += 1;
        }
    }
    m
}

/// Passage slots flanked by two cells of degree at most two.
fn is_hallway(m: &Maze, p: Pos) -> bool {
    let flank: Vec<Pos> = m.neighbors(p).filter(|&q| Maze::is_cell(q)).collect();
    flank.len() == 2
        && flank
            .iter()
            .all(|&c| m.cell_degree(c) <= 2 && c != m.start && c != m.target)
}

/// Up to `count` slots on the path from `goal` to the start, spread evenly.
fn door_slots(m: &Maze, goal: Pos, count: usize) -> Vec<Pos> {
    let Some(path) = m
        .path(goal, m.start, false)
        .or_else(|| m.path(goal, m.start, true))
    else {
        return Vec::new();
    };
    let n = path.len() - 1;
    let usable = |k: usize, strict: bool| {
        let p = path[k];
        !Maze::is_cell(p)
            && m.get(p) == Tile::Free
            && n - k > MIN_START_GAP
            && (!strict || is_hallway(m, p))
    };
    let mut candidates: Vec<usize> = (0..=n).filter(|&k| usable(k, true)).collect();
    if candidates.len() < count {
        candidates = (0..=n).filter(|&k| usable(k, false)).collect();
    }
    let mut chosen: Vec<usize> = Vec::new();
    for i in 1..=count {
        let ideal = i * n / (count + 1);
        let best = candidates
            .iter()
            .copied()
            .filter(|k| chosen.iter().all(|c| c.abs_diff(*k) >= 2))
            .min_by_key(|k| (k.abs_diff(ideal), *k));
        match best {
            Some(k) => chosen.push(k),
            None => break,
        }
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|k| path[k]).collect()
}

/// Key cells reachable from the start without crossing a door: the
/// farthest one first, then dead ends and corners near it.
fn key_cells(m: &Maze, count: usize, radius: usize, rng: &mut ChaCha8Rng) -> Vec<Pos> {
    let dist = m.distances(m.start, false);
    let free = |c: Pos| {
        m.dist_at(&dist, c) != usize::MAX && c != m.start && c != m.target && m.get(c) == Tile::Free
    };
    let Some(first) = m
        .cells()
        .filter(|&c| free(c))
        .max_by_key(|&c| (m.dist_at(&dist, c), std::cmp::Reverse(c)))
    else {
        return Vec::new();
    };
    let mut keys = vec![first];
    if count == 1 {
        return keys;
    }
    let near = m.distances(first, false);
    let is_corner = |c: Pos| {
        let open = m.open_neighbors(c, true);
        open.len() == 2 && open[0].0 != open[1].0 && open[0].1 != open[1].1
    };
    let mut pool: Vec<(usize, usize, Pos)> = m
        .cells()
        .filter(|&c| c != first && free(c) && m.dist_at(&near, c) <= radius)
        .filter_map(|c| {
            let rank = match m.cell_degree(c) {
                1 => 0,
                2 if is_corner(c) => 1,
                _ => return None,
            };
            Some((rank, m.dist_at(&near, c), c))
        })
        .collect();
    pool.shuffle(rng);
    pool.sort_by_key(|&(rank, d, _)| (rank, d));
    keys.extend(pool.into_iter().take(count - 1).map(|(_, _, c)| c));
    keys
}

/// Wall slots that may be removed: not on the border, not a pillar and not
/// within one step (diagonals included) of a door.
pub fn removable_walls(m: &Maze) -> Vec<Pos> {
    let doors: Vec<Pos> = m
        .positions()
        .filter(|&p| matches!(m.get(p), Tile::Door(_)))
        .collect();
    m.positions()
        .filter(|&p| {
            m.get(p).is_wall()
                && !m.is_border(p)
                && !Maze::is_pillar(p)
                && doors
                    .iter()
                    .all(|d| d.0.abs_diff(p.0) > 1 || d.1.abs_diff(p.1) > 1)
        })
        .collect()
}

/// Removes each removable wall with probability `p_remove`; with
/// `add_wall`, one random open passage slot is walled up.
pub fn mutate_walls(maze: &Maze, p_remove: f64, add_wall: bool, seed: u64) -> Maze {
    let mut m = maze.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = p_remove.clamp(0.0, 1.0);
    if p > 0.0 {
        for w in removable_walls(&m) {
            if rng.gen_bool(p) {
                m.set(w, Tile::Free);
            }
        }
    }
    if add_wall {
        let slots: Vec<Pos> = m
            .positions()
            .filter(|&q| !Maze::is_cell(q) && !Maze::is_pillar(q) && m.get(q) == Tile::Free)
            .collect();
        if let Some(&s) = slots.choose(&mut rng) {
            m.set(s, Tile::Wall);
        }
    }
    m
}
