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

use keydoor::augment::{build_augmented, certify_feasibility};
use keydoor::maze::*;
use keydoor::partition::LabelKind;

fn configs() -> impl Iterator<Item = MazeConfig> {
    let batches = [vec![1], vec![1, 1], vec![2, 1], vec![1, 2, 1, 1, 2], vec![3, 2], vec![1; 6]];
    (0..60u64).map(move |seed| {
        let r = 3 + seed as usize % 8;
        let c = 3 + (seed as usize * 7) % 9;
        let mut cfg = MazeConfig::new(r, c, batches[seed as usize % batches.len()].clone(), seed);
        cfg.p_remove = [0.0, 0.1, 0.3][seed as usize % 3];
        cfg
    })
}

#[test]
fn perfect_mazes_are_spanning_trees() {
    for seed in 0..100u64 {
        let (r, c) = (1 + seed as usize % 12, 1 + (seed as usize * 5) % 12);
        let m = generate_perfect_maze(r, c, seed);
        assert_eq!(m.n_passages(), m.n_cells() - 1, "seed {seed}");
        assert!(m.is_connected());
        assert_eq!((m.rows(), m.cols()), (2 * r + 1, 2 * c + 1));
    }
}

#[test]
fn generated_mazes_are_feasible_with_paired_keys() {
    for cfg in configs() {
        let m = cfg.generate();
        assert_eq!(m.n_keys(), m.n_doors());
        assert_eq!(m.batches.iter().sum::<usize>(), m.n_keys());
        let g = maze_to_graph(&m).unwrap();
        let aug = build_augmented(&g, &m.spec()).unwrap();
        assert!(certify_feasibility(&aug), "seed {}", cfg.seed);
    }
}

#[test]
fn doors_sit_in_passages_away_from_the_start() {
    for cfg in configs() {
        let m = MazeConfig { p_remove: 0.0, ..cfg }.generate();
        let dist = m.distances(m.start, true);
        for p in m.positions() {
            match m.get(p) {
                Tile::Door(_) => {
                    assert!(!Maze::is_cell(p) && !Maze::is_pillar(p));
                    assert!(m.dist_at(&dist, p) > MIN_START_GAP);
                }
                Tile::Key(_) => assert!(Maze::is_cell(p)),
                _ => {}
            }
            if m.is_border(p) {
                assert_eq!(m.get(p), Tile::Wall);
            }
        }
    }
}

#[test]
fn wall_removal_spares_border_and_door_neighbours() {
    for cfg in configs().take(20) {
        let placed = MazeConfig { p_remove: 0.0, ..cfg.clone() }.generate();
        let cleared = mutate_walls(&placed, 1.0, false, 1);
        assert!(removable_walls(&cleared).is_empty());
        for p in placed.positions() {
            if placed.get(p).is_wall() && !cleared.get(p).is_wall() {
                assert!(!placed.is_border(p) && !Maze::is_pillar(p));
                for q in placed.positions() {
                    if matches!(placed.get(q), Tile::Door(_)) {
                        assert!(q.0.abs_diff(p.0) > 1 || q.1.abs_diff(p.1) > 1);
                    }
                }
            }
        }
        assert!(cleared.is_connected());
    }
}

#[test]
fn graph_covers_every_open_tile_once() {
    for cfg in configs().take(20) {
        let m = cfg.generate();
        let g = maze_to_graph(&m).unwrap();
        for p in m.positions() {
            let c = m.center(p);
            let owners: Vec<usize> = g
                .vertices()
                .iter()
                .filter(|v| v.polytope.contains(&c, 1e-9))
                .map(|v| v.id)
                .collect();
            match m.get(p) {
                Tile::Wall => assert!(owners.is_empty(), "wall {p:?} covered"),
                Tile::Free => {
                    assert_eq!(owners.len(), 1);
                    assert!(g.vertex(owners[0]).label.is_free());
                }
                Tile::Key(i) => assert_eq!(owners, vec![g.key_vertex(i).unwrap()]),
                Tile::Door(i) => assert_eq!(owners, vec![g.door_vertex(i).unwrap()]),
            }
        }
        assert_eq!(g.count(LabelKind::Key), m.n_keys());
        for &(u, v) in g.edges() {
            assert!(keydoor::geometry::facet_adjacent_geometric(&g.vertex(u).polytope, &g.vertex(v).polytope).unwrap());
        }
    }
}

#[test]
fn generation_is_deterministic_and_round_trips() {
    for cfg in configs().take(15) {
        let a = cfg.generate();
        assert_eq!(a, cfg.generate());
        assert_eq!(Maze::parse(&a.render()).unwrap(), a);
    }
}

#[test]
fn narrow_batches_realize() {
    let m = MazeConfig::new(8, 8, vec![1, 2, 1, 1, 2], 4).generate();
    assert!(m.n_keys() >= 3);
    assert_eq!(m.n_keys(), m.n_doors());
}
