use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::json;

use dturan::dyck::{
    complete_record_count, complete_record_count_checked, count_paths, extend_to_full, Bound,
    DyckPath,
};
use dturan::experiment::{halted_fraction, random_blowup, run_trials, write_csv};
use dturan::growth::{alpha, beta, gamma};
use dturan::io::{
    parse_rational, read_blowup, read_experiment_config, read_hypergraph, read_outcome,
    read_stream, to_canonical_json, OutcomeFile,
};
use dturan::search::{
    decode, injectivity_census, run_search, Algorithm, IntegerStream, RunConfig, CENSUS_GUARD,
};
use dturan::{bounds, Rational};

#[derive(Parser)]
#[command(
    name = "dturan",
    version,
    about = "Density Turán bounds, Dyck path counts and transversal searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds on the critical edge density of a hypergraph
    Bounds { hypergraph: PathBuf },
    /// Dyck path counts, growth constants and completions
    #[command(subcommand)]
    Dyck(DyckCommand),
    /// Run a transversal search on a blow-up
    Search(SearchArgs),
    /// Recover the consumed stream from a search outcome
    Decode {
        #[arg(long, value_parser = parse_algorithm)]
        alg: Algorithm,
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        outcome: PathBuf,
        /// Class size, used to range-check indices
        #[arg(long)]
        n: Option<usize>,
    },
    /// Sample a blow-up with every edge density at least the target
    GenBlowup {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_density)]
        density: Rational,
        #[arg(long)]
        seed: u64,
    },
    /// Batch trials on random blow-ups, written as CSV
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every stream of a given length and check the encodings are injective
    Census {
        #[arg(long)]
        hypergraph: PathBuf,
        #[arg(long)]
        blowup: PathBuf,
        #[arg(long)]
        len: usize,
        #[arg(long, value_parser = parse_algorithm, default_value = "A")]
        alg: Algorithm,
        #[arg(long, default_value_t = CENSUS_GUARD)]
        guard: u64,
    },
}

#[derive(Subcommand)]
enum DyckCommand {
    /// Number of partial m-Dyck paths of a given length and end level
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        end: usize,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        descent: Option<usize>,
    },
    /// Growth rate under a descent cap
    Alpha {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Growth rate under a height cap
    Beta {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        h: usize,
    },
    /// Unconstrained growth rate
    Gamma {
        #[arg(long)]
        m: usize,
    },
    /// Complete a partial path to a full one
    Extend {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        path: String,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        descent: usize,
    },
    /// Number of search records on the complete k-graph K_{k+l}
    CompleteCount {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        t: usize,
        /// Also count with the path DP and compare
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["stream", "seed"])))]
struct SearchArgs {
    #[arg(long, value_parser = parse_algorithm)]
    alg: Algorithm,
    #[arg(long)]
    blowup: PathBuf,
    #[arg(long)]
    stream: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_steps: usize,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: dturan::Error| e.to_string())
}

fn parse_density(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn emit<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", to_canonical_json(value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds { hypergraph } => emit(&bounds::report(&read_hypergraph(&hypergraph)?)?),
        Command::Dyck(cmd) => dyck(cmd),
        Command::Search(args) => search(args),
        Command::Decode {
            alg,
            hypergraph,
            outcome,
            n,
        } => {
            let hg = read_hypergraph(&hypergraph)?;
            let outcome = read_outcome(&outcome)?.into_outcome(hg.h())?;
            emit(&decode(
                alg,
                &hg,
                &outcome.records,
                &outcome.final_picks,
                n,
            )?)
        }
        Command::GenBlowup {
            hypergraph,
            n,
            density,
            seed,
        } => emit(&random_blowup(
            &read_hypergraph(&hypergraph)?,
            n,
            &density,
            seed,
        )?),
        Command::Experiment { config, out } => {
            let cfg = read_experiment_config(&config)?;
            let results = run_trials(&cfg)?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_csv(&results, BufWriter::new(file))?;
            emit(&json!({
                "trials": results.len(),
                "halted": results.iter().filter(|r| r.halted).count(),
                "halted_fraction": halted_fraction(&results),
            }))
        }
        Command::Census {
            hypergraph,
            blowup,
            len,
            alg,
            guard,
        } => {
            let hg = read_hypergraph(&hypergraph)?;
            let g = read_blowup(&blowup)?;
            if g.base() != &hg {
                bail!("the blow-up is over a different hypergraph");
            }
            emit(&injectivity_census(alg, &hg, &g, len, guard)?)
        }
    }
}

fn dyck(cmd: DyckCommand) -> Result<()> {
    match cmd {
        DyckCommand::Count {
            m,
            len,
            end,
            height,
            descent,
        } => {
            println!(
                "{}",
                count_paths(m, len, end, Bound::from(height), Bound::from(descent))?
            );
        }
        DyckCommand::Alpha { m, d } => println!("{}", alpha(m, d)?.value),
        DyckCommand::Beta { m, h } => println!("{}", beta(m, h)?.value),
        DyckCommand::Gamma { m } => println!("{}", gamma(m)?),
        DyckCommand::Extend {
            m,
            path,
            height,
            descent,
        } => println!(
            "{}",
            extend_to_full(&DyckPath::parse(m, &path)?, height, descent)?
        ),
        DyckCommand::CompleteCount { k, l, t, check } => {
            let count = if check {
                complete_record_count_checked(k, l, t)?
            } else {
                complete_record_count(k, l, t)?
            };
            println!("{count}");
        }
    }
    Ok(())
}

fn search(args: SearchArgs) -> Result<()> {
    let g = read_blowup(&args.blowup)?;
    let n = g
        .uniform_size()
        .context("search needs all classes of the same size")?;
    let mut z = match (args.stream, args.seed) {
        (Some(path), None) => IntegerStream::explicit(n, read_stream(&path)?)?,
        (None, Some(seed)) => IntegerStream::seeded(n, seed)?,
        _ => bail!("give exactly one of --stream and --seed"),
    };
    let outcome = run_search(
        args.alg,
        g.base(),
        &g,
        &mut z,
        RunConfig::new(args.max_steps),
    )?;
    emit(&OutcomeFile::from(&outcome))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let io = e
                .chain()
                .any(|c| c.downcast_ref::<std::io::Error>().is_some());
            ExitCode::from(if io { 1 } else { 2 })
        }
    }
}
