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
//! Built-in key-door environments drawn as character grids.
//!
//! Legend: `#` obstacle, `.` free, `S` start, `T` target, digits are
//! keys, letters `A`, `B`, ... are the doors of keys 1, 2, .... Each grid
//! character is a unit square; row 0 is the top row.

use std::collections::BTreeMap;

use crate::environment::{Environment, HalfSpaces};
use crate::error::{Error, Result};

/// Two keys in the first room, two doors in a row before the target.
pub const TWO_KEY: [&str; 3] = [
    ".1.#.#.", //
    "S..A.BT", //
    ".2.#.#.",
];

/// Five keys spread over six rooms.
pub const FIVE_KEY: [&str; 3] = [
    "1..#.3#..#.#..#..", //
    "S..A..B..C.D..E.T", //
    ".2.#..#4.#.#.5#..",
];

pub fn two_key() -> Environment {
    from_layout(&TWO_KEY).expect("built-in layout is valid")
}

pub fn five_key() -> Environment {
    from_layout(&FIVE_KEY).expect("built-in layout is valid")
}

pub fn by_name(name: &str) -> Option<Environment> {
    match name {
        "two-key" | "two_key" => Some(two_key()),
        "five-key" | "five_key" => Some(five_key()),
        _ => None,
    }
}

/// Square `[col, col+1] × [rows-1-row, rows-row]`.
fn cell_box(rows: usize, row: usize, col: usize) -> ([f64; 2], [f64; 2]) {
    let x = col as f64;
    let y = (rows - 1 - row) as f64;
    ([x, y], [x + 1.0, y + 1.0])
}

/// Converts a character grid into an environment. Keys or doors spanning
/// several cells become their bounding box.
pub fn from_layout(rows: &[&str]) -> Result<Environment> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, |r| r.chars().count());
    if n_rows == 0 || n_cols == 0 || rows.iter().any(|r| r.chars().count() != n_cols) {
        return Err(Error::InvalidParams("layout must be a nonempty rectangle".into()));
    }
    let mut obstacles = Vec::new();
    let mut keys: BTreeMap<usize, ([f64; 2], [f64; 2])> = BTreeMap::new();
    let mut doors: BTreeMap<usize, ([f64; 2], [f64; 2])> = BTreeMap::new();
    let mut start = None;
    let mut target = None;
    let grow = |m: &mut BTreeMap<usize, ([f64; 2], [f64; 2])>, k: usize, b: ([f64; 2], [f64; 2])| {
        let e = m.entry(k).or_insert(b);
        for i in 0..2 {
            e.0[i] = e.0[i].min(b.0[i]);
            e.1[i] = e.1[i].max(b.1[i]);
        }
    };
    for (i, row) in rows.iter().enumerate() {
        for (j, ch) in row.chars().enumerate() {
            let b = cell_box(n_rows, i, j);
            let center = vec![b.0[0] + 0.5, b.0[1] + 0.5];
            match ch {
                '.' => {}
                '#' => obstacles.push(HalfSpaces::from_box(&b.0, &b.1)),
                'S' => start = Some(center),
                'T' => target = Some(center),
                '1'..='9' => grow(&mut keys, ch as usize - '0' as usize, b),
                'A'..='R' => grow(&mut doors, ch as usize - 'A' as usize + 1, b),
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("unexpected character {other:?}"),
                    })
                }
            }
        }
    }
    let n = keys.len();
    if doors.len() != n || (1..=n).any(|i| !keys.contains_key(&i) || !doors.contains_key(&i)) {
        return Err(Error::InvalidParams("keys and doors must be numbered 1..n".into()));
    }
    let to_hs = |m: BTreeMap<usize, ([f64; 2], [f64; 2])>| {
        m.into_values()
            .map(|(lo, hi)| HalfSpaces::from_box(&lo, &hi))
            .collect()
    };
    Ok(Environment {
        dimension: 2,
        world: HalfSpaces::from_box(&[0.0, 0.0], &[n_cols as f64, n_rows as f64]),
        obstacles,
        keys: to_hs(keys),
        doors: to_hs(doors),
        start: start.ok_or_else(|| Error::InvalidParams("layout has no start".into()))?,
        target: target.ok_or_else(|| Error::InvalidParams("layout has no target".into()))?,
        velocity_set: None,
        precedence: None,
    })
}
