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

//! `keydoor` command-line front end.

mod bench;
mod instance;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use keydoor::augment::build_augmented;
use keydoor::gcs::{build_gcs, oracle_with_budget, plan_graph, PlannerParams, SolveStatus, PATH_BUDGET};
use keydoor::maze::MazeConfig;
use keydoor::precedence::Mode;
use log::info;

use crate::instance::Instance;

#[derive(Parser)]
#[command(name = "keydoor", version, about = "Key-door motion planning over graphs of convex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition an environment (or maze) into a labeled graph.
    Partition {
        input: PathBuf,
        /// Write the graph dump here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Plan a trajectory that respects the key-door specification.
    Plan {
        input: PathBuf,
        #[command(flatten)]
        opts: PlanOpts,
        /// Trajectory output file.
        #[arg(short, long, default_value = "trajectory.txt")]
        out: PathBuf,
        /// Also write the solve report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Generate a key-door maze.
    GenMaze {
        /// Cell rows.
        #[arg(long)]
        rows: usize,
        /// Cell columns.
        #[arg(long)]
        cols: usize,
        /// Keys reachable per stage, e.g. 1,2,1.
        #[arg(long, default_value = "1")]
        batches: String,
        #[arg(long, default_value_t = 0.0)]
        p_remove: f64,
        #[arg(long)]
        add_wall: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "release")]
        mode: Mode,
        /// Output maze file; standard output when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a suite and write the experiment table as CSV.
    Bench {
        suite: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Parallel worker slots.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exhaustive shortest path over simple augmented paths.
    Oracle {
        input: PathBuf,
        #[command(flatten)]
        opts: PlanOpts,
        /// Longest path considered, in augmented nodes.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = PATH_BUDGET)]
        budget: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print a built-in environment as JSON.
    Example { name: String },
}

#[derive(Args, Clone, Debug)]
struct PlanOpts {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    mode: Option<Mode>,
    /// Rounding trials.
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Drop the two-cycle cuts from the relaxation.
    #[arg(long)]
    no_cycle_cuts: bool,
}

impl PlanOpts {
    fn apply(&self, mut p: PlannerParams) -> PlannerParams {
        if let Some(a) = self.alpha {
            p.alpha = a;
        }
        if let Some(b) = self.beta {
            p.beta = b;
        }
        if let Some(d) = self.degree {
            p.degree = d;
        }
        if let Some(t) = self.trials {
            p.rounding_trials = t;
        }
        p.seed = self.seed;
        p.cycle_constraints = !self.no_cycle_cuts;
        p
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("KEYDOOR_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 input, 3 geometry, 4 infeasible, 5 solver failure.
fn exit_code(e: &anyhow::Error) -> u8 {
    use keydoor::Error as E;
    for cause in e.chain() {
        if let Some(k) = cause.downcast_ref::<E>() {
            return match k {
                E::Parse { .. } | E::InvalidParams(_) | E::DegreeTooLow | E::TooManyKeys { .. } => 2,
                E::Infeasible(_) => 4,
                k if k.is_geometric() => 3,
                _ => 5,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
    }
    2
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Partition { input, out, seed } => partition(&input, out.as_deref(), seed),
        Command::Plan {
            input,
            opts,
            out,
            report,
            svg,
        } => plan(&input, &opts, &out, report.as_deref(), svg.as_deref()),
        Command::GenMaze {
            rows,
            cols,
            batches,
            p_remove,
            add_wall,
            seed,
            mode,
            out,
            svg,
        } => {
            let cfg = MazeConfig {
                rows,
                cols,
                batches: bench::parse_batches(&batches).map_err(input_error)?,
                p_remove,
                add_wall,
                seed,
            };
            gen_maze(&cfg, mode, out.as_deref(), svg.as_deref())
        }
        Command::Bench { suite, out, jobs } => run_bench(&suite, &out, jobs),
        Command::Oracle {
            input,
            opts,
            max_len,
            budget,
            out,
        } => oracle(&input, &opts, max_len, budget, out.as_deref()),
        Command::Example { name } => {
            let Some(env) = keydoor::scenarios::by_name(&name) else {
                return Err(input_error(anyhow::anyhow!(
                    "unknown example {name:?}; try two-key or five-key"
                )));
            };
            println!("{}", env.to_json());
            Ok(0)
        }
    }
}

fn input_error(e: anyhow::Error) -> anyhow::Error {
    let msg = format!("{e:#}");
    anyhow::Error::new(keydoor::Error::InvalidParams(msg))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn partition(input: &Path, out: Option<&Path>, seed: u64) -> Result<u8> {
    let inst = Instance::load(input)?;
    let g = inst.graph(seed)?;
    match out {
        Some(p) => write(p, &g.to_json())?,
        None => println!("{}", g.to_json()),
    }
    println!("{}", g.summary());
    Ok(0)
}

fn plan(input: &Path, opts: &PlanOpts, out: &Path, report: Option<&Path>, svg: Option<&Path>) -> Result<u8> {
    let inst = Instance::load(input)?;
    let params = opts.apply(inst.params()?);
    params.validate(inst.dim())?;
    let t0 = Instant::now();
    let g = inst.graph(opts.seed)?;
    let graph_time = t0.elapsed().as_secs_f64();
    info!("labeled graph: {} vertices, {} edges", g.n_vertices(), g.edges().len());
    let mut res = plan_graph(&g, &inst.spec(opts.mode), &params)?;
    res.report.form_time += graph_time;
    let text = res.report.to_text();
    print!("{text}");
    if let Some(p) = report {
        write(p, &text)?;
    }
    if let Some(p) = svg {
        write_svg(&inst, &res.graph, res.trajectory.as_ref(), p)?;
    }
    if res.report.status == SolveStatus::Infeasible {
        eprintln!("infeasible: the target is disconnected from the start in the augmented graph");
        return Ok(4);
    }
    if let Some(t) = &res.trajectory {
        write(out, &t.to_text())?;
    }
    Ok(0)
}

fn write_svg(inst: &Instance, g: &keydoor::partition::LabeledGraph, t: Option<&keydoor::gcs::Trajectory>, p: &Path) -> Result<()> {
    match svg::render(inst, g, t) {
        Some(s) => write(p, &s),
        None => {
            eprintln!("notice: SVG output needs a planar instance; skipped");
            Ok(())
        }
    }
}

fn gen_maze(cfg: &MazeConfig, mode: Mode, out: Option<&Path>, svg_out: Option<&Path>) -> Result<u8> {
    bench::check_maze(cfg).map_err(input_error)?;
    let mut m = cfg.generate();
    m.mode = mode;
    let text = m.render();
    let realized = m
        .batches
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let note = format!(
        "batches requested {} realized {} ({} keys, {} doors)",
        cfg.batches.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(","),
        if realized.is_empty() { "-".into() } else { realized },
        m.n_keys(),
        m.n_doors()
    );
    match out {
        Some(p) => {
            write(p, &text)?;
            println!("{note}");
        }
        None => {
            print!("{text}");
            eprintln!("{note}");
        }
    }
    if let Some(p) = svg_out {
        let inst = Instance::Maze(m);
        let g = inst.graph(0)?;
        write_svg(&inst, &g, None, p)?;
    }
    Ok(0)
}

fn run_bench(suite: &Path, out: &Path, jobs: usize) -> Result<u8> {
    let text = fs::read_to_string(suite).with_context(|| format!("cannot read {}", suite.display()))?;
    let base = suite.parent().unwrap_or(Path::new("."));
    let entries = bench::parse_suite(&text, base).map_err(input_error)?;
    let rows = bench::run_suite(&entries, jobs)?;
    let file = fs::File::create(out).with_context(|| format!("cannot write {}", out.display()))?;
    bench::write_csv(&rows, file)?;
    println!("{}", bench::summary(&rows));
    if !rows.is_empty() && rows.iter().all(|r| r.failed()) {
        bail!(keydoor::Error::SolverFailure("every suite entry failed".into()));
    }
    Ok(0)
}

fn oracle(input: &Path, opts: &PlanOpts, max_len: Option<usize>, budget: usize, out: Option<&Path>) -> Result<u8> {
    let inst = Instance::load(input)?;
    let params = opts.apply(inst.params()?);
    params.validate(inst.dim())?;
    let g = inst.graph(opts.seed)?;
    let aug = std::sync::Arc::new(build_augmented(&g, &inst.spec(opts.mode))?);
    let prob = build_gcs(aug.clone(), &params)?;
    if !prob.has_path() {
        eprintln!("infeasible: the target is disconnected from the start in the augmented graph");
        return Ok(4);
    }
    let len = max_len.unwrap_or(prob.n_active());
    let (cost, path, traj) = oracle_with_budget(&prob, len, budget)?;
    println!("C_oracle={cost}");
    println!(
        "path={}",
        path.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
    );
    if let Some(p) = out {
        write(p, &traj.to_text())?;
    }
    Ok(0)
}
