//! `twopart`: solve, check and generate instances of the
//! (out-branching, min-in-degree >= 1) 2-partition problem.
//!
//! Exit status: 0 for YES (or an accepted witness), 1 for NO (or a rejected
//! witness, or a fuzz mismatch), 2 for usage and input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twopart_core::format::{parse_digraph, render_digraph, ResultDocument};
use twopart_core::oracle::{self, brute_force_solve, generate, Constraints, GeneratorConfig};
use twopart_core::{
    params, solve, solve_reversed, solve_with_defaults, verify, Digraph, Instance, ParamOverrides,
};

#[derive(Parser)]
#[command(name = "twopart", version, about = "Out-branching / min-in-degree 2-partition solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Bounds {
    /// Lower bound on |V1|.
    #[arg(long)]
    k1: usize,
    /// Lower bound on |V2|.
    #[arg(long)]
    k2: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance with the fixed-parameter solver.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// Solve the in-branching / min-out-degree variant instead.
        #[arg(long)]
        reversed: bool,
        #[arg(long)]
        json: bool,
        /// Override the component threshold f.
        #[arg(long)]
        f: Option<u64>,
        /// Override the branchable out-degree threshold h.
        #[arg(long)]
        h: Option<u64>,
    },
    /// Check a witness document against an instance.
    Verify {
        file: PathBuf,
        witness: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        /// The witness is for the reversed digraph (as printed by `solve --reversed`).
        #[arg(long)]
        reversed: bool,
    },
    /// Decide an instance by exhaustive enumeration (at most 20 vertices).
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        json: bool,
    },
    /// Print a seeded random digraph as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        /// Arc probability for each ordered pair.
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, conflicts_with = "single_source")]
        min_in_degree_1: bool,
        #[arg(long)]
        single_source: bool,
        #[arg(long)]
        min_out_degree_1: bool,
    },
    /// Time the solver on random digraphs with every vertex entered and
    /// about four arcs per vertex. Prints CSV.
    Bench {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        /// Used for both k1 and k2.
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Compare the solver with the oracle on random instances.
    Fuzz {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_digraph(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_doc(doc: &ResultDocument, json: bool) {
    if json {
        println!("{}", doc.to_json());
    } else {
        print!("{}", doc.to_plain());
    }
}

fn answer_code(yes: bool) -> ExitCode {
    ExitCode::from(if yes { 0 } else { 1 })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { file, bounds, reversed, json, f, h } => {
            let inst = Instance::new(read_digraph(&file)?, bounds.k1, bounds.k2);
            let p = params(inst.k1, inst.k2, Some(ParamOverrides { f, h }))?;
            let start = Instant::now();
            let res = if reversed { solve_reversed(&inst, &p)? } else { solve(&inst, &p)? };
            let doc = ResultDocument::from_result(&res, elapsed_ms(start));
            print_doc(&doc, json);
            Ok(answer_code(res.is_yes()))
        }
        Command::Verify { file, witness, bounds, reversed } => {
            let mut d = read_digraph(&file)?;
            if reversed {
                d = d.reverse();
            }
            let text = fs::read_to_string(&witness)
                .with_context(|| format!("reading {}", witness.display()))?;
            let doc = ResultDocument::parse(&text)
                .with_context(|| format!("parsing {}", witness.display()))?;
            let partition = match doc.to_partition() {
                Ok(Some(p)) => p,
                Ok(None) => {
                    println!("rejected: the document answers NO and carries no witness");
                    return Ok(ExitCode::from(1));
                }
                Err(why) => {
                    println!("rejected: {why}");
                    return Ok(ExitCode::from(1));
                }
            };
            let report = verify(&Instance::new(d, bounds.k1, bounds.k2), &partition);
            if report.is_accepted() {
                println!("accepted");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &report.violations {
                    println!("rejected: {v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Oracle { file, bounds, json } => {
            let inst = Instance::new(read_digraph(&file)?, bounds.k1, bounds.k2);
            let start = Instant::now();
            let res = brute_force_solve(&inst)?;
            print_doc(&ResultDocument::from_result(&res, elapsed_ms(start)), json);
            Ok(answer_code(res.is_yes()))
        }
        Command::Gen { n, p, seed, min_in_degree_1, single_source, min_out_degree_1 } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("--p must lie in [0, 1], got {p}");
            }
            let constraints = Constraints { min_in_degree_1, min_out_degree_1, single_source };
            print!("{}", render_digraph(&generate(&GeneratorConfig::new(n, p, seed).with(constraints))));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { sizes, k, seed } => {
            println!("n,m,k1,k2,answer,elapsed_ms");
            let entered = Constraints { min_in_degree_1: true, ..Constraints::default() };
            for n in sizes {
                let p = if n > 1 { (4.0 / (n - 1) as f64).min(1.0) } else { 0.0 };
                let d = generate(&GeneratorConfig::new(n, p, seed).with(entered));
                let m = d.arc_count();
                let inst = Instance::new(d, k, k);
                let start = Instant::now();
                let res = solve_with_defaults(&inst)?;
                let answer = if res.is_yes() { "YES" } else { "NO" };
                println!("{n},{m},{k},{k},{answer},{:.3}", elapsed_ms(start));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz { trials, nmax, seed } => fuzz(trials, nmax, seed),
    }
}

fn fuzz(trials: u64, nmax: usize, seed: u64) -> Result<ExitCode> {
    if nmax == 0 || nmax > oracle::SOLVE_LIMIT {
        bail!("--nmax must lie in 1..={}", oracle::SOLVE_LIMIT);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let n = rng.gen_range(1..=nmax);
        let p = [0.1, 0.2, 0.3, 0.5][rng.gen_range(0..4)];
        let constraints = match trial % 3 {
            0 => Constraints::default(),
            1 => Constraints { min_in_degree_1: true, ..Constraints::default() },
            _ => Constraints { single_source: true, ..Constraints::default() },
        };
        let d = generate(&GeneratorConfig::new(n, p, rng.gen()).with(constraints));
        let inst = Instance::new(d, rng.gen_range(0..=4), rng.gen_range(0..=4));
        let expected = brute_force_solve(&inst)?.is_yes();
        let got = solve_with_defaults(&inst).map(|r| r.is_yes());
        if got.as_ref().ok() != Some(&expected) {
            println!("mismatch at trial {trial}: k1={} k2={}", inst.k1, inst.k2);
            match got {
                Ok(yes) => println!("solver {yes}, oracle {expected}"),
                Err(e) => println!("solver error: {e}; oracle {expected}"),
            }
            print!("{}", render_digraph(&inst.digraph));
            return Ok(ExitCode::from(1));
        }
    }
    println!("fuzz: {trials} trials, 0 mismatches");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
