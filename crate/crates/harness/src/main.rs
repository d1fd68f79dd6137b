use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use r1clique_harness::instance::{dimacs_files, load_dimacs, random_name};
use r1clique_harness::record::write_csv;
use r1clique_harness::runner::{best, run_restarts};
use r1clique_harness::verify::{run_all, VerifyOptions};
use r1clique_harness::{ingest, Algo, BenchRecord, Instance, RandomSpec, RunOptions};

#[derive(Parser)]
#[command(name = "r1clique", version, about = "Maximal clique finding by rank-one nonnegative approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm with restarts and report the best clique.
    Solve {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Algo::R1nm)]
        algo: Algo,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Random-graph table: every algorithm on `trials` graphs per density.
    BenchRandom {
        #[arg(long, default_value_t = 400)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.15,0.5,0.85")]
        densities: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Restrict to these algorithms (default: all).
        #[arg(long, value_enum, value_delimiter = ',')]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Every `.clq` file in a directory, every algorithm.
    BenchDimacs {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',')]
        algo: Vec<Algo>,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Check the invariant suite on one instance; exits nonzero on failure.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build word co-occurrence graphs from a coordinate document-term matrix.
    IngestText {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,10,20")]
        p: Vec<usize>,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    dimacs: Option<PathBuf>,
    /// `n=<int>,density=<float>[,seed=<int>]`; the graph seed defaults to --seed.
    #[arg(long)]
    random: Option<RandomSpec>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    d0: Option<f64>,
    #[arg(long)]
    dmax: Option<f64>,
    #[arg(long, default_value_t = 1.05)]
    eta: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Extend every clique greedily to a maximal one (not part of the reference methods).
    #[arg(long)]
    maximalize: bool,
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            d0: self.d0,
            dmax: self.dmax,
            eta: self.eta,
            maximalize: self.maximalize,
        }
    }
}

impl Source {
    fn load(&self, default_seed: u64) -> Result<Instance> {
        match (&self.dimacs, &self.random) {
            (Some(path), _) => Ok(load_dimacs(path)?),
            (None, Some(spec)) => Ok(spec.build(default_seed)?),
            (None, None) => bail!("one of --dimacs or --random is required"),
        }
    }
}

fn emit(records: &[BenchRecord], csv: Option<&Path>) -> Result<()> {
    match csv {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(records, BufWriter::new(file))?;
        }
        None => write_csv(records, io::stdout().lock())?,
    }
    Ok(())
}

fn algorithms(selected: &[Algo]) -> Vec<Algo> {
    if selected.is_empty() {
        Algo::ALL.to_vec()
    } else {
        let mut v = selected.to_vec();
        v.sort();
        v.dedup();
        v
    }
}

/// Each instance carries the first restart seed to use on it.
fn bench(instances: &[(Instance, u64)], algos: &[Algo], restarts: usize, run: &RunArgs) -> Result<Vec<BenchRecord>> {
    let opts = run.options();
    let mut records = Vec::new();
    for (inst, seed) in instances {
        for &algo in algos {
            let outcomes = run_restarts(inst, algo, *seed, restarts, &opts)
                .with_context(|| format!("{} with {algo}", inst.name))?;
            records.extend(outcomes.into_iter().map(|o| o.record));
        }
    }
    Ok(records)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve {
            source,
            algo,
            restarts,
            run,
        } => {
            let inst = source.load(run.seed)?;
            let outcomes = run_restarts(&inst, algo, run.seed, restarts, &run.options())?;
            let top = best(&outcomes).expect("at least one restart");
            emit(std::slice::from_ref(&top.record), run.csv.as_deref())?;
            let listing: Vec<String> = top.vertices.iter().map(|v| (v + 1).to_string()).collect();
            let mut out = io::stdout().lock();
            writeln!(out, "clique size {}: {}", top.record.clique_size, listing.join(" "))?;
            if !top.record.valid {
                writeln!(out, "warning: reported vertex set is not a clique")?;
            }
        }
        Command::BenchRandom {
            n,
            densities,
            trials,
            algo,
            restarts,
            run,
        } => {
            if let Some(bad) = densities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                bail!("density {bad} outside [0, 1]");
            }
            let mut instances = Vec::new();
            for &p in &densities {
                for t in 0..trials as u64 {
                    let seed = run.seed + t;
                    let inst = Instance {
                        name: random_name(n, p, seed),
                        graph: r1clique::Graph::random(n, p, seed)?,
                    };
                    instances.push((inst, seed));
                }
            }
            let records = bench(&instances, &algorithms(&algo), restarts, &run)?;
            emit(&records, run.csv.as_deref())?;
        }
        Command::BenchDimacs {
            dir,
            algo,
            restarts,
            run,
        } => {
            let instances = dimacs_files(&dir)?
                .iter()
                .map(|p| load_dimacs(p).map(|inst| (inst, run.seed)))
                .collect::<Result<Vec<_>, _>>()?;
            if instances.is_empty() {
                log::warn!("no .clq files in {}", dir.display());
            }
            let records = bench(&instances, &algorithms(&algo), restarts, &run)?;
            emit(&records, run.csv.as_deref())?;
        }
        Command::Verify { source, seed } => {
            let inst = source.load(seed)?;
            let opts = VerifyOptions {
                seed,
                ..VerifyOptions::default()
            };
            let checks = run_all(&inst.graph, &opts)?;
            let mut out = io::stdout().lock();
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                writeln!(out, "{status} {}: {}", c.name, c.detail)?;
            }
            return Ok(checks.iter().all(|c| c.passed));
        }
        Command::IngestText { input, p, out_dir } => {
            for path in ingest::ingest_text(&input, &p, &out_dir)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
