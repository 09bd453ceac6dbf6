use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use glts_core::{ActionId, Condition, ReductionMap, Verdict};
use petri_game::{Marking, UnfoldError};
use query_logic::{nnf, parse_query, sat, Formula};
use stubborn_reduction::{reach_overapprox, stubborn_set, ExtInt};
use workbench::{
    bench, gen_chain, gen_choice_workflow, gen_nim, parse_model, render_csv, render_table,
    serialize_model, ModelFile,
};

#[derive(Parser)]
#[command(name = "workbench", version, about = "Strategy synthesis workbench for two-player Petri net games")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Dfs,
    Bfs,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a model and print WINNING or NOT WINNING
    Solve {
        model: PathBuf,
        /// Query overriding the one embedded in the model
        #[arg(long)]
        query: Option<String>,
        /// Explore the full game instead of the reduced one
        #[arg(long)]
        no_por: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[arg(long, value_enum, default_value_t = Order::Dfs)]
        order: Order,
        /// Keep expanding states whose goal is provably unreachable
        #[arg(long)]
        no_early_term: bool,
        /// Write the synthesized strategy to a file
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        /// Also print marking/edge counts and wall time
        #[arg(long)]
        stats: bool,
    },
    /// Re-check the reduction of a model against the stability conditions
    Check {
        model: PathBuf,
        #[arg(long)]
        query: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        max_states: usize,
    },
    /// Emit a generated model
    Gen {
        #[command(subcommand)]
        family: GenCmd,
    },
    /// Compare reduced and unreduced runs over a set of models
    Bench {
        #[arg(required = true)]
        models: Vec<PathBuf>,
        /// Also write the results as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        /// Include wall times (off by default so output is reproducible)
        #[arg(long)]
        times: bool,
    },
    /// Dump the interval analysis and stubborn set at the initial marking
    DebugStubborn {
        model: PathBuf,
        #[arg(long)]
        query: Option<String>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// n independent steps; interleavings blow up, the reduction does not
    Chain {
        n: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Misere counting game: add 1..=k per turn, reaching s loses
    Nim {
        k: u32,
        s: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// n opponent choices followed by commuting assembly steps
    Workflow {
        n: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Failures mapped to exit codes: usage 2, boundedness 3, violated
/// internal invariant 4.
enum Failure {
    Usage(String),
    Bounded(String),
    Invariant(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Bounded(_) => 3,
            Failure::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Bounded(m) | Failure::Invariant(m) => m,
        }
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn load_model(path: &Path, query: Option<&str>) -> Result<(ModelFile, Formula), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let model = parse_model(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let phi = match query {
        Some(q) => parse_query(&model.net, q)
            .map_err(|e| Failure::Usage(format!("in --query: {e}")))?,
        None => match &model.query {
            Some(q) => q.clone(),
            None => return usage(format!("{} has no query; pass --query", path.display())),
        },
    };
    Ok((model, phi))
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn marking_key(m: &Marking) -> String {
    m.as_slice()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Solve {
            model,
            query,
            no_por,
            max_states,
            order,
            no_early_term,
            strategy_out,
            stats,
        } => {
            let (model, phi) = load_model(&model, query.as_deref())?;
            let cfg = game_solver::SolveConfig {
                use_por: !no_por,
                max_states,
                search_order: match order {
                    Order::Dfs => game_solver::SearchOrder::Dfs,
                    Order::Bfs => game_solver::SearchOrder::Bfs,
                },
                early_termination: !no_early_term,
                ablate_condition_v: false,
            };
            let report = game_solver::solve(&model.net, &model.initial, &phi, &cfg)
                .map_err(|e| Failure::Bounded(e.to_string()))?;
            println!("{}", if report.winning { "WINNING" } else { "NOT WINNING" });
            if stats {
                println!("markings: {}", report.unique_markings);
                println!("edges: {}", report.edges_explored);
                println!("time: {:.3}s", report.wall_time.as_secs_f64());
            }
            if let Some(path) = strategy_out {
                let mut out = String::new();
                for (m, choice) in &report.strategy {
                    let name = match choice {
                        Some(t) => model.net.trans_name(*t),
                        None => "-",
                    };
                    writeln!(out, "{} -> {}", marking_key(m), name).unwrap();
                }
                write_out(Some(&path), &out)?;
            }
            Ok(())
        }
        Cmd::Check { model, query, max_states } => {
            let (model, phi) = load_model(&model, query.as_deref())?;
            let phi = nnf(&phi);
            let unfolding = model
                .net
                .unfold(&model.initial, |m| sat(&model.net, m, &phi), max_states)
                .map_err(|e| match e {
                    UnfoldError::Bounded { .. } => Failure::Bounded(e.to_string()),
                    other => Failure::Usage(other.to_string()),
                })?;
            let stubs: Vec<BTreeSet<ActionId>> = unfolding
                .markings
                .iter()
                .map(|m| {
                    stubborn_set(&model.net, m, &phi)
                        .stub
                        .into_iter()
                        .map(|t| ActionId(t.0))
                        .collect()
                })
                .collect();
            let red = ReductionMap::new(stubs);
            let report = unfolding
                .glts
                .check_stable(&red)
                .map_err(|e| Failure::Invariant(e.to_string()))?;
            println!("markings: {}", unfolding.markings.len());
            for c in Condition::ALL {
                match report.verdict(c) {
                    Verdict::Pass => println!("{c}: pass"),
                    Verdict::Fail(w) => println!(
                        "{c}: FAIL at {}",
                        marking_key(&unfolding.markings[w.state.0 as usize])
                    ),
                }
            }
            if report.all_pass() {
                println!("stable");
                Ok(())
            } else {
                Err(Failure::Invariant("reduction is not stable".to_string()))
            }
        }
        Cmd::Gen { family } => {
            let (model, out) = match family {
                GenCmd::Chain { n, out } => (gen_chain(n), out),
                GenCmd::Nim { k, s, out } => (gen_nim(k, s), out),
                GenCmd::Workflow { n, out } => (gen_choice_workflow(n), out),
            };
            let model = model.map_err(|e| Failure::Usage(e.to_string()))?;
            write_out(out.as_deref(), &serialize_model(&model))
        }
        Cmd::Bench { models, csv, max_states, times } => {
            let mut loaded = Vec::new();
            for path in &models {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                let (model, phi) = load_model(path, None)?;
                loaded.push((name, ModelFile { query: Some(phi), ..model }));
            }
            let rows = bench(&loaded, max_states);
            print!("{}", render_table(&rows, times));
            if let Some(path) = csv {
                write_out(Some(&path), &render_csv(&rows, times))?;
            }
            let errors: Vec<_> = rows.iter().filter_map(|r| r.outcome.as_ref().err()).collect();
            if let Some(e) = errors.iter().find(|e| e.invariant_violation) {
                return Err(Failure::Invariant(e.message.clone()));
            }
            if let Some(e) = errors.first() {
                return Err(Failure::Bounded(e.message.clone()));
            }
            Ok(())
        }
        Cmd::DebugStubborn { model, query } => {
            let (model, phi) = load_model(&model, query.as_deref())?;
            let phi = nnf(&phi);
            let net = &model.net;
            let (verdict, env) = reach_overapprox(net, &model.initial, &phi);
            println!("reach over-approximation: {verdict}");
            let fmt = |x: ExtInt| match x.as_finite() {
                Some(v) => v.to_string(),
                None => "inf".to_string(),
            };
            for p in net.places() {
                println!(
                    "place {}: lb {} ub {}",
                    net.place_name(p),
                    env.lb_place(p),
                    fmt(env.ub_place(p))
                );
            }
            for t in net.transitions() {
                if let Some(&u) = env.ub_t.get(&t) {
                    println!("trans {}: ub {}", net.trans_name(t), fmt(u));
                }
            }
            let r = stubborn_set(net, &model.initial, &phi);
            let names: Vec<&str> = r.stub.iter().map(|&t| net.trans_name(t)).collect();
            println!("stubborn [{}]: {}", r.reason.as_str(), names.join(" "));
            println!("early terminate: {}", r.early_terminate);
            let (en1, en2) = net.enabled(&model.initial);
            let en: Vec<&str> = en1
                .into_iter()
                .chain(en2)
                .map(|t| net.trans_name(t))
                .collect();
            println!("enabled: {}", en.join(" "));
            Ok(())
        }
    }
}
