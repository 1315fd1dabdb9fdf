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
//! Maze text format.
//!
//! ```text
//! rows cols n_pairs mode seed
//! <grid, one character per tile: # . S T k d>
//! batches 1 2
//! start r c
//! target r c
//! k1 r c
//! d1 r c
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Maze, Pos, Tile};

pub(super) fn render(m: &Maze) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {} {} {}", m.rows(), m.cols(), m.n_keys(), m.mode, m.seed);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let p = (i, j);
            s.push(if p == m.start {
                'S'
            } else if p == m.target {
                'T'
            } else {
                match m.get(p) {
                    Tile::Wall => '#',
                    Tile::Free => '.',
                    Tile::Key(_) => 'k',
                    Tile::Door(_) => 'd',
                }
            });
        }
        s.push('\n');
    }
    let b: Vec<String> = m.batches.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "batches {}", b.join(" "));
    let _ = writeln!(s, "start {} {}", m.start.0, m.start.1);
    let _ = writeln!(s, "target {} {}", m.target.0, m.target.1);
    let mut tagged: Vec<(char, usize, Pos)> = m
        .positions()
        .filter_map(|p| match m.get(p) {
            Tile::Key(k) => Some(('k', k, p)),
            Tile::Door(k) => Some(('d', k, p)),
            _ => None,
        })
        .collect();
    tagged.sort_by_key(|&(c, k, _)| (k, c == 'd'));
    for (c, k, p) in tagged {
        let _ = writeln!(s, "{c}{k} {} {}", p.0, p.1);
    }
    s
}

pub(super) fn parse(text: &str) -> Result<Maze> {
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, msg: &str| Error::Parse {
        line,
        msg: msg.into(),
    };
    let header: Vec<&str> = lines
        .first()
        .ok_or_else(|| err(1, "empty maze file"))?
        .split_whitespace()
        .collect();
    if header.len() != 5 {
        return Err(err(1, "expected: rows cols n_pairs mode seed"));
    }
    let num = |s: &str, line: usize| s.parse::<usize>().map_err(|_| err(line, "bad integer"));
    let rows = num(header[0], 1)?;
    let cols = num(header[1], 1)?;
    let n_pairs = num(header[2], 1)?;
    let mode = header[3].parse().map_err(|_| err(1, "bad mode"))?;
    let seed = header[4].parse::<u64>().map_err(|_| err(1, "bad seed"))?;
    if rows % 2 == 0 || cols % 2 == 0 || rows < 3 || cols < 3 {
        return Err(err(1, "grid dimensions must be odd and at least 3"));
    }
    if lines.len() < rows + 1 {
        return Err(err(lines.len() + 1, "grid is truncated"));
    }
    let mut m = Maze::closed(rows / 2, cols / 2, seed);
    m.mode = mode;
    let mut marked = Vec::new();
    for i in 0..rows {
        let row: Vec<char> = lines[i + 1].chars().collect();
        if row.len() != cols {
            return Err(err(i + 2, "grid row has the wrong length"));
        }
        for (j, &ch) in row.iter().enumerate() {
            let t = match ch {
                '#' => Tile::Wall,
                '.' | 'S' | 'T' => Tile::Free,
                'k' | 'd' => {
                    marked.push((ch, (i, j)));
                    Tile::Free
                }
                _ => return Err(err(i + 2, "unknown tile character")),
            };
            m.set((i, j), t);
        }
    }
    let mut seen_start = false;
    let mut seen_target = false;
    for (offset, line) in lines[rows + 1..].iter().enumerate() {
        let ln = rows + 2 + offset;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let Some(&tag) = parts.first() else { continue };
        if tag == "batches" {
            m.batches = parts[1..].iter().map(|s| num(s, ln)).collect::<Result<_>>()?;
            continue;
        }
        if parts.len() != 3 {
            return Err(err(ln, "expected: tag row col"));
        }
        let p = (num(parts[1], ln)?, num(parts[2], ln)?);
        if p.0 >= rows || p.1 >= cols {
            return Err(err(ln, "position outside the grid"));
        }
        match tag {
            "start" => {
                m.start = p;
                seen_start = true;
            }
            "target" => {
                m.target = p;
                seen_target = true;
            }
            _ => {
                let (kind, idx) = tag.split_at(1);
                let idx = num(idx, ln)?;
                if idx == 0 {
                    return Err(err(ln, "indices start at 1"));
                }
                let tile = match kind {
                    "k" => Tile::Key(idx),
                    "d" => Tile::Door(idx),
                    _ => return Err(err(ln, "unknown metadata tag")),
                };
                let expected = if kind == "k" { 'k' } else { 'd' };
                if !marked.contains(&(expected, p)) {
                    return Err(err(ln, "metadata does not match the grid"));
                }
                m.set(p, tile);
            }
        }
    }
    if !seen_start || !seen_target {
        return Err(err(lines.len(), "missing start or target line"));
    }
    if m.n_keys() != n_pairs || m.n_doors() != n_pairs || m.n_keys() != marked.iter().filter(|c| c.0 == 'k').count() {
        return Err(err(1, "key/door metadata does not match the header"));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use crate::maze::{generate_perfect_maze, place_keys_doors, Maze};

    #[test]
    fn roundtrip() {
        for seed in 0..10 {
            let m = place_keys_doors(&generate_perfect_maze(5, 7, seed), &[1, 2], seed);
            let text = m.render();
            assert_eq!(Maze::parse(&text).unwrap(), m);
        }
    }

    #[test]
    fn bad_header() {
        assert!(Maze::parse("4 5 0 release 1\n").is_err());
    }
}
