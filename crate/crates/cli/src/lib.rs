//! Command dispatch for the `bnconsensus` binary.
//!
//! Exit codes: 0 on success, 1 when a verification answers no, 2 on any
//! input or usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bnconsensus::consensus::{
    self, exact_consensus, heuristic_consensus, imap_violation, independence_count, reduce_fas_to_consensus,
    search_ordering, ConsensusInstance, Neighborhood, SearchConfig, Strategy,
};
use bnconsensus::io::{
    format_order, format_steps, format_transform, parse_dag, parse_edge_list, parse_order, parse_transform,
    serialize_dag,
};
use bnconsensus::mdi::{mdi_bruteforce, mdi_iamb, run_method, Method, TieBreak};
use bnconsensus::separation::{d_separated, SeparationQuery};
use bnconsensus::transform::{g2h, validate_trace, TransformTrace};
use bnconsensus::{BigUint, CardinalityMap, Dag, NodeId};
use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bnconsensus",
    version,
    about = "Consensus DAGs via minimal directed independence maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether X and Y are separated given Z.
    Dsep {
        file: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        x: Vec<String>,
        #[arg(long, num_args = 1.., required = true)]
        y: Vec<String>,
        #[arg(long, num_args = 0..)]
        z: Vec<String>,
    },
    /// Print the parameter count of a DAG.
    Params { file: PathBuf },
    /// Compute the minimal directed independence map relative to an ordering.
    Mdi {
        file: PathBuf,
        order: PathBuf,
        #[arg(long, value_enum, default_value_t = MdiMethod::B2)]
        method: MdiMethod,
        #[arg(long, value_enum, default_value_t = Tie::Corrected)]
        tie: Tie,
        /// Print the ADD/REVERSE/SWAP steps to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Union of the inputs' minimal maps relative to one ordering.
    Consensus {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        order: PathBuf,
    },
    /// Search orderings for a consensus with few parameters.
    ConsensusSearch {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = SearchStrategy::Restarts)]
        strategy: SearchStrategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Budget in objective evaluations.
        #[arg(long, default_value_t = 1000)]
        iters: usize,
        #[arg(long, value_enum, default_value_t = Moves::Adjacent)]
        neighborhood: Moves,
    },
    /// Every minimum-parameter consensus, by exhaustive enumeration.
    ConsensusExact {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = consensus::EXACT_LIMIT)]
        limit: usize,
    },
    /// Check that a candidate is an independence map of every input and,
    /// with --bound, that it has at most that many parameters.
    Verify {
        candidate: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        bound: Option<String>,
    },
    /// Turn G into H by arc additions and covered reversals; prints H.
    G2h {
        g: PathBuf,
        h: PathBuf,
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Replay an ADD/REVERSE trace from G and check it ends at H.
    ValidateTrace { g: PathBuf, h: PathBuf, trace: PathBuf },
    /// Write the three consensus DAGs for a feedback arc set instance.
    GenFas {
        edgelist: PathBuf,
        #[arg(long)]
        out_prefix: String,
        /// Feedback arc set budget, echoed in the file headers.
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MdiMethod {
    A,
    B,
    A2,
    B2,
    Bruteforce,
    Iamb,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Tie {
    Corrected,
    LegacyTrace,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SearchStrategy {
    HillClimb,
    Annealing,
    Restarts,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Moves {
    Adjacent,
    Arbitrary,
}

/// An input failure, reported on stderr with exit code 2.
#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<(Dag, CardinalityMap), Failure> {
    let text = read(path)?;
    parse_dag(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Loads every file and aligns node indices with the first one.
fn load_all(paths: &[PathBuf]) -> std::result::Result<(Vec<Dag>, CardinalityMap), Failure> {
    let (first, cards) = load(&paths[0])?;
    let names = first.names().to_vec();
    let mut dags = vec![first];
    for p in &paths[1..] {
        let (g, c) = load(p)?;
        let aligned = g
            .relabel(&names)
            .map_err(|e| Failure(format!("{}: {e}", p.display())))?;
        if c.relabel(&g, &names)? != cards {
            return Err(Failure(format!(
                "{}: cardinalities differ from {}",
                p.display(),
                paths[0].display()
            )));
        }
        dags.push(aligned);
    }
    Ok((dags, cards))
}

fn node_ids(g: &Dag, names: &[String]) -> std::result::Result<Vec<NodeId>, Failure> {
    names
        .iter()
        .map(|s| g.index_of(s).ok_or_else(|| Failure(format!("unknown node `{s}`"))))
        .collect()
}

fn parse_count(s: &str) -> std::result::Result<BigUint, Failure> {
    s.trim().parse().map_err(|_| Failure(format!("bad bound `{s}`")))
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Dsep { file, x, y, z } => {
            let (g, _) = load(&file)?;
            let q = SeparationQuery::new(node_ids(&g, &x)?, node_ids(&g, &y)?, node_ids(&g, &z)?)?;
            let word = if d_separated(&g, &q)? { "SEPARATED" } else { "CONNECTED" };
            writeln!(out, "{word}")?;
        }
        Command::Params { file } => {
            let (g, cards) = load(&file)?;
            writeln!(out, "{}", g.parameter_count(&cards)?)?;
        }
        Command::Mdi {
            file,
            order,
            method,
            tie,
            trace,
        } => {
            let (g, cards) = load(&file)?;
            let alpha = parse_order(&read(&order)?, &g)?;
            let tie = match tie {
                Tie::Corrected => TieBreak::Corrected,
                Tie::LegacyTrace => TieBreak::LegacyTrace,
            };
            let mut percolation = |m| -> std::result::Result<Dag, Failure> {
                let run = run_method(m, &g, &alpha, &tie)?;
                if trace {
                    write!(err, "{}", format_steps(&run.steps, &g))?;
                }
                Ok(run.dag)
            };
            let h = match method {
                MdiMethod::A => percolation(Method::A)?,
                MdiMethod::B => percolation(Method::B)?,
                MdiMethod::A2 => percolation(Method::A2)?,
                MdiMethod::B2 => percolation(Method::B2)?,
                MdiMethod::Bruteforce => mdi_bruteforce(&g, &alpha)?,
                MdiMethod::Iamb => mdi_iamb(&g, &alpha)?,
            };
            write!(out, "{}", serialize_dag(&h, &cards))?;
        }
        Command::Consensus { files, order } => {
            let (dags, cards) = load_all(&files)?;
            let alpha = parse_order(&read(&order)?, &dags[0])?;
            let inst = ConsensusInstance::new(dags, cards, None)?;
            let r = heuristic_consensus(&inst, &alpha)?;
            writeln!(out, "# parameters: {}", r.params)?;
            write!(out, "{}", serialize_dag(&r.dag, inst.cards()))?;
        }
        Command::ConsensusSearch {
            files,
            strategy,
            seed,
            iters,
            neighborhood,
        } => {
            let (dags, cards) = load_all(&files)?;
            let inst = ConsensusInstance::new(dags, cards, None)?;
            let strategy = match strategy {
                SearchStrategy::HillClimb => Strategy::HillClimb,
                SearchStrategy::Annealing => Strategy::Annealing,
                SearchStrategy::Restarts => Strategy::Restarts,
            };
            let neighborhood = match neighborhood {
                Moves::Adjacent => Neighborhood::AdjacentSwap,
                Moves::Arbitrary => Neighborhood::ArbitrarySwap,
            };
            let cfg = SearchConfig::new(strategy, seed, iters, neighborhood)?;
            let r = search_ordering(&inst, &cfg)?;
            writeln!(out, "# parameters: {}", r.params)?;
            if let Some(order) = &r.ordering {
                write!(out, "# order: {}", format_order(order, &r.dag))?;
            }
            write!(out, "{}", serialize_dag(&r.dag, inst.cards()))?;
        }
        Command::ConsensusExact { files, limit } => {
            let (dags, cards) = load_all(&files)?;
            let inst = ConsensusInstance::new(dags, cards, None)?;
            let optima = exact_consensus(&inst, limit)?;
            for (i, r) in optima.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(
                    out,
                    "# optimum {} of {}, parameters: {}, independences: {}",
                    i + 1,
                    optima.len(),
                    r.params,
                    independence_count(&r.dag)?
                )?;
                write!(out, "{}", serialize_dag(&r.dag, inst.cards()))?;
            }
        }
        Command::Verify {
            candidate,
            files,
            bound,
        } => {
            let (cand, cand_cards) = load(&candidate)?;
            let (dags, cards) = load_all(&files)?;
            let names = dags[0].names().to_vec();
            let cand_aligned = cand
                .relabel(&names)
                .map_err(|e| Failure(format!("{}: {e}", candidate.display())))?;
            if cand_cards.relabel(&cand, &names)? != cards {
                return Err(Failure(format!(
                    "{}: cardinalities differ from the inputs",
                    candidate.display()
                )));
            }
            let bound = bound.as_deref().map(parse_count).transpose()?;
            let inst = ConsensusInstance::new(dags, cards, bound)?;
            let params = cand_aligned.parameter_count(inst.cards())?;
            writeln!(out, "parameters: {params}")?;
            let mut ok = true;
            match imap_violation(&cand_aligned, inst.dags())? {
                None => writeln!(out, "independence map: yes")?,
                Some(v) => {
                    ok = false;
                    writeln!(out, "independence map: no")?;
                    writeln!(
                        err,
                        "input {} violates {} _|_ {{{}}} | {{{}}}",
                        v.dag + 1,
                        cand_aligned.name(v.node),
                        cand_aligned.format_nodes(&v.rest),
                        cand_aligned.format_nodes(&v.parents)
                    )?;
                }
            }
            if let Some(b) = inst.bound() {
                let within = params <= *b;
                ok &= within;
                writeln!(out, "within bound {b}: {}", if within { "yes" } else { "no" })?;
            }
            return Ok(if ok { EXIT_OK } else { EXIT_FALSE });
        }
        Command::G2h { g, h, emit_trace } => {
            let (gd, _) = load(&g)?;
            let (hd, hcards) = load(&h)?;
            let hd_aligned = hd
                .relabel(gd.names())
                .map_err(|e| Failure(format!("{}: {e}", h.display())))?;
            let tr = g2h(&gd, &hd_aligned)?;
            if let Some(path) = emit_trace {
                fs::write(&path, format_transform(&tr.steps, &gd))
                    .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            }
            writeln!(
                err,
                "{} additions, {} covered reversals",
                tr.additions(),
                tr.reversals()
            )?;
            write!(out, "{}", serialize_dag(&hd, &hcards))?;
        }
        Command::ValidateTrace { g, h, trace } => {
            let (gd, _) = load(&g)?;
            let (hd, _) = load(&h)?;
            let hd = hd
                .relabel(gd.names())
                .map_err(|e| Failure(format!("{}: {e}", h.display())))?;
            let steps = parse_transform(&read(&trace)?, &gd)?;
            let tr = TransformTrace {
                start: gd,
                end: hd.clone(),
                steps,
            };
            return Ok(match validate_trace(&tr, &hd) {
                Ok(()) => {
                    writeln!(out, "VALID")?;
                    EXIT_OK
                }
                Err(v) => {
                    writeln!(out, "INVALID")?;
                    writeln!(err, "{v}")?;
                    EXIT_FALSE
                }
            });
        }
        Command::GenFas {
            edgelist,
            out_prefix,
            k,
        } => {
            let digraph = parse_edge_list(&read(&edgelist)?)?;
            let red = reduce_fas_to_consensus(&digraph, k)?;
            for (i, g) in red.instance.dags().iter().enumerate() {
                let path = format!("{out_prefix}-c{}.dag", i + 1);
                let body = format!(
                    "# feedback arc set budget k = {}\n{}",
                    red.k,
                    serialize_dag(g, red.instance.cards())
                );
                fs::write(&path, body).map_err(|e| Failure(format!("{path}: {e}")))?;
                writeln!(out, "{path}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}
