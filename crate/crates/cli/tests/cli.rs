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

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use keydoor::environment::Environment;
use keydoor::gcs::parse_trajectory;
use keydoor::scenarios;
use tempfile::TempDir;

fn keydoor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keydoor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_env(dir: &TempDir, name: &str, env: &Environment) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, env.to_json()).unwrap();
    p
}

fn open_box(dim: usize) -> Environment {
    let text = format!(
        r#"{{"dimension": {dim}, "world": {}, "start": {:?}, "target": {:?}}}"#,
        serde_json::to_string(&keydoor::environment::HalfSpaces::from_box(&vec![0.0; dim], &vec![2.0; dim])).unwrap(),
        vec![0.5; dim],
        vec![1.5; dim],
    );
    Environment::parse(&text).unwrap()
}

#[test]
fn partition_two_key_summary() {
    let dir = TempDir::new().unwrap();
    let env = write_env(&dir, "two.json", &scenarios::two_key());
    let out = keydoor(&["partition", s(&env), "-o", s(&dir.path().join("g.json"))]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("key vertices: 2") && text.contains("door vertices: 2"), "{text}");
    let dump: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert!(dump["vertices"].as_array().unwrap().len() >= 5);
}

#[test]
fn partition_open_box_is_one_vertex() {
    let dir = TempDir::new().unwrap();
    let env = write_env(&dir, "box.json", &open_box(2));
    let out = keydoor(&["partition", s(&env), "-o", s(&dir.path().join("g.json"))]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("free vertices: 1"));
    assert!(stdout(&out).contains("edges: 0"));
}

#[test]
fn malformed_file_reports_line() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\n  \"dimension\": 2,\n  \"world\" {}\n}").unwrap();
    let out = keydoor(&["partition", s(&p)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
}

#[test]
fn start_in_obstacle_is_a_geometry_error() {
    let dir = TempDir::new().unwrap();
    let mut env = scenarios::two_key();
    env.start = vec![3.5, 0.5];
    let p = write_env(&dir, "bad.json", &env);
    assert_eq!(code(&keydoor(&["partition", s(&p)])), 3);
    assert_eq!(code(&keydoor(&["plan", s(&p), "-o", s(&dir.path().join("t.txt"))])), 3);
}

#[test]
fn plan_two_key_writes_trajectory_and_svg() {
    let dir = TempDir::new().unwrap();
    let env_path = write_env(&dir, "two.json", &scenarios::two_key());
    let traj = dir.path().join("t.txt");
    let svg = dir.path().join("t.svg");
    let out = keydoor(&["plan", s(&env_path), "-o", s(&traj), "--svg", s(&svg)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("n_subgraphs=4"));
    let t = parse_trajectory(&std::fs::read_to_string(&traj).unwrap(), 2).unwrap();

    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("well-formed SVG");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let fills: Vec<&str> = doc.descendants().filter_map(|n| n.attribute("fill")).collect();
    assert!(fills.contains(&"#2ca02c") && fills.contains(&"#d62728"));
    let line = doc.descendants().find(|n| n.has_tag_name("polyline")).expect("trajectory drawn");
    let n_points = line.attribute("points").unwrap().split_whitespace().count();
    assert_eq!(n_points, 64 * t.segments.len());

    // Every sample lies in some drawn region.
    let g = scenarios::two_key().labeled_graph(0).unwrap();
    for x in t.sample(64) {
        assert!(g.vertices().iter().any(|v| v.polytope.contains(&x, 1e-6)), "{x:?}");
    }
}

#[test]
fn plan_blocked_maze_exits_infeasible() {
    let dir = TempDir::new().unwrap();
    let maze = dir.path().join("m.maze");
    let out = keydoor(&["gen-maze", "--rows", "6", "--cols", "6", "--batches", "1,1", "--add-wall", "--seed", "1", "-o", s(&maze)]);
    assert_eq!(code(&out), 0);
    let out = keydoor(&["plan", s(&maze), "-o", s(&dir.path().join("t.txt"))]);
    assert_eq!(code(&out), 4, "{}", stdout(&out));
    assert!(stderr(&out).contains("disconnected"));
    assert!(stdout(&out).contains("status=infeasible"));
}

#[test]
fn pure_shortest_path_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let maze = dir.path().join("m.maze");
    assert_eq!(code(&keydoor(&["gen-maze", "--rows", "4", "--cols", "4", "--batches", "1", "--seed", "2", "-o", s(&maze)])), 0);
    let flags = ["--beta", "0", "--degree", "1"];
    let mut args = vec!["plan", s(&maze), "-o"];
    let traj = dir.path().join("t.txt");
    args.push(s(&traj));
    args.extend(flags);
    let out = keydoor(&args);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let value = |text: &str, key: &str| -> f64 {
        text.lines().find_map(|l| l.strip_prefix(key)).unwrap().trim().parse().unwrap()
    };
    let round = value(&stdout(&out), "C_round=");
    let mut oargs = vec!["oracle", s(&maze)];
    oargs.extend(flags);
    let o = keydoor(&oargs);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let best = value(&stdout(&o), "C_oracle=");
    assert!((round - best).abs() <= 1e-6 * best, "{round} vs {best}");
}

#[test]
fn gen_maze_small_and_deterministic() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.maze"), dir.path().join("b.maze"));
    let args = |p: &Path| vec!["gen-maze".to_string(), "--rows".into(), "2".into(), "--cols".into(), "2".into(), "--batches".into(), "1".into(), "--seed".into(), "1".into(), "-o".into(), s(p).into()];
    let out = Command::new(env!("CARGO_BIN_EXE_keydoor")).args(args(&a)).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1 keys, 1 doors"), "{}", stdout(&out));
    Command::new(env!("CARGO_BIN_EXE_keydoor")).args(args(&b)).output().unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let narrow = keydoor(&["gen-maze", "--rows", "8", "--cols", "8", "--batches", "1,2,1,1,2", "--seed", "4"]);
    assert_eq!(code(&narrow), 0);
    assert!(stderr(&narrow).contains("realized"));
}

#[test]
fn gen_maze_rejects_bad_flags() {
    assert_eq!(code(&keydoor(&["gen-maze", "--rows", "0", "--cols", "3"])), 2);
    assert_eq!(code(&keydoor(&["gen-maze", "--rows", "3", "--cols", "3", "--batches", "1,0"])), 2);
    assert_eq!(code(&keydoor(&["gen-maze", "--rows", "3", "--cols", "3", "--p-remove", "2"])), 2);
    assert_eq!(code(&keydoor(&["gen-maze", "--rows", "x", "--cols", "3"])), 2);
}

fn csv_rows(p: &Path) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_path(p).unwrap();
    assert_eq!(
        r.headers().unwrap().iter().collect::<Vec<_>>(),
        ["id", "V", "V_hat", "n_keys", "max_width", "form_gcs_s", "solve_s", "delta_relax_percent", "status"]
    );
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}

#[test]
fn bench_small_suite() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("s.suite");
    std::fs::write(
        &suite,
        "# three small mazes and a blocked one\n\
         maze id=a rows=5 cols=5 batches=1,1 seed=0\n\
         maze id=b rows=6 cols=6 batches=1,1,1 seed=1\n\
         maze id=c rows=5 cols=5 batches=1 seed=2\n\
         maze id=blocked rows=6 cols=6 batches=1,1 add_wall=true seed=1\n",
    )
    .unwrap();
    let (x, y) = (dir.path().join("x.csv"), dir.path().join("y.csv"));
    let out = keydoor(&["bench", s(&suite), "-o", s(&x), "--jobs", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("max delta_relax"));
    let rows = csv_rows(&x);
    let ids: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ids, ["a", "b", "c", "blocked"]);
    for r in &rows[..3] {
        let delta: f64 = r[7].parse().unwrap();
        assert!((0.0..=2.0).contains(&delta));
    }
    assert_eq!(rows[3][8], "infeasible");
    assert!(rows[3][6].is_empty() && rows[3][7].is_empty());

    keydoor(&["bench", s(&suite), "-o", s(&y)]);
    let strip = |rows: Vec<Vec<String>>| -> Vec<Vec<String>> {
        rows.into_iter().map(|r| r.into_iter().enumerate().filter(|(i, _)| *i != 5 && *i != 6).map(|(_, v)| v).collect()).collect()
    };
    assert_eq!(strip(csv_rows(&x)), strip(csv_rows(&y)));
}

#[test]
fn bench_empty_suite_is_header_only() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("empty.suite");
    std::fs::write(&suite, "# nothing\n").unwrap();
    let csv_path = dir.path().join("e.csv");
    assert_eq!(code(&keydoor(&["bench", s(&suite), "-o", s(&csv_path)])), 0);
    assert!(csv_rows(&csv_path).is_empty());
}

#[test]
fn three_dimensional_plan_skips_svg() {
    let dir = TempDir::new().unwrap();
    let env = write_env(&dir, "cube.json", &open_box(3));
    let svg = dir.path().join("c.svg");
    let out = keydoor(&["plan", s(&env), "-o", s(&dir.path().join("t.txt")), "--svg", s(&svg)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("notice"));
    assert!(!svg.exists());
}

#[test]
fn log_variable_is_honoured() {
    let dir = TempDir::new().unwrap();
    let env = write_env(&dir, "box.json", &open_box(2));
    let out = Command::new(env!("CARGO_BIN_EXE_keydoor"))
        .args(["plan", s(&env), "-o", s(&dir.path().join("t.txt"))])
        .env("KEYDOOR_LOG", "info")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("INFO"));
}
