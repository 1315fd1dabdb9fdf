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

//! Benchmark suites and the experiment table.
//!
//! A suite file lists one instance per line; `#` starts a comment.
//!
//! ```text
//! maze rows=10 cols=10 batches=1,2,1 p_remove=0.1 add_wall=false seed=3 id=m1
//! file envs/two_key.json id=two
//! ```
//!
//! Relative file paths are resolved against the suite file's directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use keydoor::gcs::{plan_graph, SolveStatus};
use keydoor::maze::MazeConfig;
use keydoor::precedence::Mode;
use rayon::prelude::*;
use serde::Serialize;

use crate::instance::Instance;

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Maze(MazeConfig, Mode),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteEntry {
    pub id: String,
    pub source: Source,
}

pub const HEADER: [&str; 9] = [
    "id",
    "V",
    "V_hat",
    "n_keys",
    "max_width",
    "form_gcs_s",
    "solve_s",
    "delta_relax_percent",
    "status",
];

/// One table row. Cost columns stay empty for infeasible or failed runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: String,
    pub n_vertices: Option<usize>,
    pub n_aug_nodes: Option<usize>,
    pub n_keys: Option<usize>,
    pub max_width: Option<usize>,
    pub form_gcs_seconds: Option<f64>,
    pub solve_seconds: Option<f64>,
    pub delta_relax_percent: Option<f64>,
    pub status: String,
}

impl BenchRow {
    pub fn failed(&self) -> bool {
        self.status.starts_with("error")
    }
}

pub fn parse_suite(text: &str, base: &Path) -> Result<Vec<SuiteEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let entry = parse_entry(line, base, out.len())
            .with_context(|| format!("suite line {}", i + 1))?;
        out.push(entry);
    }
    Ok(out)
}

fn parse_entry(line: &str, base: &Path, index: usize) -> Result<SuiteEntry> {
    let mut words = line.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let mut id = None;
    let mut path = None;
    let mut cfg = MazeConfig::new(0, 0, Vec::new(), 0);
    let mut mode = Mode::Release;
    for w in words {
        let Some((k, v)) = w.split_once('=') else {
            if kind == "file" && path.is_none() {
                path = Some(base.join(w));
                continue;
            }
            bail!("expected key=value, got {w:?}");
        };
        let bad = || anyhow!("bad value for {k}: {v:?}");
        match k {
            "id" => id = Some(v.to_string()),
            "rows" => cfg.rows = v.parse().map_err(|_| bad())?,
            "cols" => cfg.cols = v.parse().map_err(|_| bad())?,
            "batches" => cfg.batches = parse_batches(v)?,
            "p_remove" => cfg.p_remove = v.parse().map_err(|_| bad())?,
            "add_wall" => cfg.add_wall = v.parse().map_err(|_| bad())?,
            "seed" => cfg.seed = v.parse().map_err(|_| bad())?,
            "mode" => mode = v.parse().map_err(|_| bad())?,
            _ => bail!("unknown key {k:?}"),
        }
    }
    let source = match kind {
        "maze" => {
            check_maze(&cfg)?;
            Source::Maze(cfg, mode)
        }
        "file" => Source::File(path.ok_or_else(|| anyhow!("file entry without a path"))?),
        other => bail!("unknown entry kind {other:?}"),
    };
    Ok(SuiteEntry {
        id: id.unwrap_or_else(|| (index + 1).to_string()),
        source,
    })
}

pub fn parse_batches(s: &str) -> Result<Vec<usize>> {
    let b = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| anyhow!("batches must be comma-separated positive integers"))?;
    if b.is_empty() || b.contains(&0) {
        bail!("batches must be comma-separated positive integers");
    }
    Ok(b)
}

pub fn check_maze(cfg: &MazeConfig) -> Result<()> {
    if cfg.rows == 0 || cfg.cols == 0 {
        bail!("maze needs at least one row and one column of cells");
    }
    if cfg.batches.is_empty() {
        bail!("maze needs batches");
    }
    if !(0.0..=1.0).contains(&cfg.p_remove) {
        bail!("p_remove must lie in [0, 1]");
    }
    Ok(())
}

/// Runs one entry; failures become a status string.
pub fn run_entry(entry: &SuiteEntry) -> BenchRow {
    let mut row = BenchRow {
        id: entry.id.clone(),
        ..Default::default()
    };
    if let Err(e) = run_into(entry, &mut row) {
        row.status = format!("error: {e:#}");
    }
    row
}

fn run_into(entry: &SuiteEntry, row: &mut BenchRow) -> Result<()> {
    let t0 = Instant::now();
    let inst = match &entry.source {
        Source::Maze(cfg, mode) => {
            let mut m = cfg.generate();
            m.mode = *mode;
            Instance::Maze(m)
        }
        Source::File(p) => Instance::load(p)?,
    };
    let g = inst.graph(0)?;
    let graph_time = t0.elapsed().as_secs_f64();
    let out = plan_graph(&g, &inst.spec(None), &inst.params()?)?;
    let r = &out.report;
    row.n_vertices = Some(r.n_vertices);
    row.n_aug_nodes = Some(r.n_aug_nodes);
    row.n_keys = Some(r.n_keys);
    row.max_width = Some(r.max_width);
    row.form_gcs_seconds = Some(graph_time + r.form_time);
    row.status = r.status.to_string();
    if r.status != SolveStatus::Infeasible {
        row.solve_seconds = Some(r.solve_time());
        row.delta_relax_percent = Some(100.0 * r.delta_relax.max(0.0));
    }
    Ok(())
}

/// Runs a suite on `jobs` worker threads; rows keep suite order.
pub fn run_suite(entries: &[SuiteEntry], jobs: usize) -> Result<Vec<BenchRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("cannot start worker pool")?;
    Ok(pool.install(|| entries.par_iter().map(run_entry).collect()))
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], w: W) -> Result<()> {
    let mut wr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wr.write_record(HEADER)?;
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}

/// Aggregate line: row count, failures, max gap and total time.
pub fn summary(rows: &[BenchRow]) -> String {
    let max_gap = rows
        .iter()
        .filter_map(|r| r.delta_relax_percent)
        .fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    let total: f64 = rows
        .iter()
        .map(|r| r.form_gcs_seconds.unwrap_or(0.0) + r.solve_seconds.unwrap_or(0.0))
        .sum();
    let failed = rows.iter().filter(|r| r.failed()).count();
    let gap = max_gap.map_or("n/a".to_string(), |g| format!("{g:.4}%"));
    format!(
        "rows: {}  failed: {failed}  max delta_relax: {gap}  total time: {total:.3} s",
        rows.len()
    )
}
