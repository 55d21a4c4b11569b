use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mrp::batch::{run_batch, summarize};
use mrp::generate::{generate, Preset};
use mrp::io::{read_instance, read_json, to_json, write_json, write_log, SolutionFile};
use mrp::render::render;
use mrp_core::oracle::{count_walk_states, enumerate_routes, full_lp, solve_exact_over, validate_solution, EnumerationCaps};
use mrp_core::timegraph::build_augmented;
use mrp_core::{solve_with_master, CollisionMode, SolverConfig};
use serde::Serialize;

/// Multi-robot warehouse planning by column generation.
#[derive(Parser)]
#[command(name = "mrp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate {
        /// class1, class2, mapf-cmp or tiny.
        #[arg(long)]
        preset: Preset,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an instance.
    Solve {
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        /// Per-iteration CSV log.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Write the final restricted master in LP format.
        #[arg(long)]
        export_lp: Option<PathBuf>,
        /// Write the augmented graph under the final duals as text.
        #[arg(long)]
        dump_graph: Option<PathBuf>,
    },
    /// Check a solution against every constraint.
    Validate { instance: PathBuf, solution: PathBuf },
    /// Draw SVG snapshots of a solution.
    Render {
        instance: PathBuf,
        solution: PathBuf,
        /// Comma-separated snapshot times.
        #[arg(long, value_delimiter = ',', required = true)]
        times: Vec<u32>,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate and solve a run of seeds, writing per-instance CSV.
    Batch {
        #[arg(long)]
        preset: Preset,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed0: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exact LP and integer optima of a tiny instance by enumeration.
    Oracle {
        instance: PathBuf,
        /// Ignore vertex and edge conflicts.
        #[arg(long)]
        no_collision: bool,
    },
}

#[derive(Args)]
struct SolverArgs {
    /// Drop vertex and edge constraints.
    #[arg(long)]
    no_collision: bool,
    /// Bound item duals by the item rewards.
    #[arg(long)]
    doi_dual: bool,
    /// Rebuild the pricing distance table every K iterations.
    #[arg(long, default_value_t = 3)]
    refresh_period: usize,
    #[arg(long, default_value_t = 20)]
    columns_per_round: usize,
    #[arg(long, default_value_t = 500)]
    max_iterations: usize,
    /// Turn off label dominance in pricing.
    #[arg(long)]
    no_dominance: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            full_dual_refresh_period: self.refresh_period,
            columns_per_round: self.columns_per_round,
            doi_dual_mode: self.doi_dual,
            collision_mode: if self.no_collision { CollisionMode::NoCollision } else { CollisionMode::Full },
            max_iterations: self.max_iterations,
            dominance: !self.no_dominance,
            ..SolverConfig::default()
        }
    }
}

#[derive(Serialize)]
struct OracleReport {
    walk_states: u64,
    columns: usize,
    lp_objective: f64,
    exact_objective: f64,
    routes: Vec<mrp_core::Route>,
}

/// Exit 1: the solution is invalid.
const INVALID: u8 = 1;

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate { preset, seed, output } => {
            let inst = generate(&preset.params(seed))?;
            match output {
                Some(p) => write_json(&p, &inst)?,
                None => print!("{}", to_json(&inst)),
            }
        }
        Command::Solve { instance, output, solver, log, export_lp, dump_graph } => {
            let inst = read_instance(&instance)?;
            let (sol, master) = solve_with_master(&inst, &solver.config())?;
            write_json(&output, &SolutionFile::from(&sol))?;
            if let Some(p) = log {
                write_log(&p, &sol.log)?;
            }
            if let Some(p) = export_lp {
                fs::write(&p, master.to_lp_format()).with_context(|| format!("writing {}", p.display()))?;
            }
            if let Some(p) = dump_graph {
                let graph = build_augmented(&inst, &sol.final_duals);
                fs::write(&p, graph.dump()).with_context(|| format!("writing {}", p.display()))?;
            }
            println!(
                "objective {} lp bound {} gap {:.4} iterations {} time {:.2}s",
                sol.ilp_objective, sol.lp_bound, sol.relative_gap, sol.iterations, sol.wall_secs
            );
            if !sol.conflicts.is_empty() {
                println!("{} conflicts", sol.conflicts.len());
            }
        }
        Command::Validate { instance, solution } => {
            let inst = read_instance(&instance)?;
            let sol: SolutionFile = read_json(&solution)?;
            let report = validate_solution(&inst, &sol.routes);
            print!("{}", to_json(&report));
            if !report.is_valid() {
                return Ok(INVALID);
            }
        }
        Command::Render { instance, solution, times, output } => {
            let inst = read_instance(&instance)?;
            let sol: SolutionFile = read_json(&solution)?;
            let docs = render(&inst, &sol.routes, &times)?;
            fs::create_dir_all(&output)?;
            for (t, doc) in times.iter().zip(docs) {
                let p = output.join(format!("snapshot_t{t:03}.svg"));
                fs::write(&p, doc).with_context(|| format!("writing {}", p.display()))?;
            }
        }
        Command::Batch { preset, n, seed0, output, workers, solver } => {
            let rows = run_batch(preset, n, seed0, &solver.config(), workers);
            let mut w = csv::Writer::from_path(&output).with_context(|| format!("writing {}", output.display()))?;
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
            for r in rows.iter().filter(|r| r.error.is_some()) {
                eprintln!("seed {}: {}", r.seed, r.error.as_deref().unwrap_or_default());
            }
            print!("{}", summarize(&rows).table());
        }
        Command::Oracle { instance, no_collision } => {
            let inst = read_instance(&instance)?;
            let cols = enumerate_routes(&inst, EnumerationCaps::exhaustive(&inst))?;
            let exact = solve_exact_over(&inst, &cols, !no_collision)?;
            let report = OracleReport {
                walk_states: count_walk_states(&inst),
                columns: cols.len(),
                lp_objective: full_lp(&inst, &cols, !no_collision)?,
                exact_objective: exact.objective,
                routes: exact.routes,
            };
            print!("{}", to_json(&report));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
