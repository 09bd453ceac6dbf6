//! Synthesis over a net's reachable game graph: explore (optionally
//! through stubborn sets), label winning markings by a backward fixed
//! point, extract a player 1 strategy, verify strategies against the
//! full game, and pair reduced/unreduced runs for comparison.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use glts_core::{GltsBuilder, StateId};
use petri_game::{Marking, PetriNetGame, TransId};
use query_logic::{nnf, sat, Formula};
use stubborn_reduction::{stubborn_set_with, StubbornOptions};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    Dfs,
    Bfs,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    pub use_por: bool,
    pub max_states: usize,
    pub search_order: SearchOrder,
    pub early_termination: bool,
    /// Unsound test-only switch: drop the visibility bailout from the
    /// stubborn-set computation to reproduce the documented bug.
    pub ablate_condition_v: bool,
}

impl SolveConfig {
    pub fn normal(max_states: usize) -> Self {
        SolveConfig {
            use_por: false,
            max_states,
            search_order: SearchOrder::Dfs,
            early_termination: true,
            ablate_condition_v: false,
        }
    }

    pub fn por(max_states: usize) -> Self {
        SolveConfig { use_por: true, ..SolveConfig::normal(max_states) }
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub winning: bool,
    /// Player 1's move per explored winning marking; `None` where
    /// player 1 has no enabled transition.
    pub strategy: BTreeMap<Marking, Option<TransId>>,
    pub unique_markings: usize,
    pub edges_explored: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(
        "state budget of {max_states} markings exhausted \
         ({unique_markings} markings, {edges_explored} edges explored)"
    )]
    Bounded {
        max_states: usize,
        unique_markings: usize,
        edges_explored: usize,
    },
    #[error(
        "winner mismatch between unreduced and reduced run: \
         normal={normal}, por={por}"
    )]
    WinnerMismatch { normal: bool, por: bool },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("state budget of {max_states} markings exhausted during verification")]
    Bounded { max_states: usize },
    #[error("strategy undefined at reached marking {marking}")]
    Undefined { marking: Marking },
}

/// The reachable graph actually built by `solve`: markings in
/// discovery order, edges as index pairs, and goal membership.
#[derive(Debug, Clone)]
pub struct ExploredGraph {
    pub markings: Vec<Marking>,
    pub edges: Vec<(u32, TransId, u32)>,
    pub goal: Vec<bool>,
}

pub fn explore_graph(
    net: &PetriNetGame,
    m0: &Marking,
    phi: &Formula,
    cfg: &SolveConfig,
) -> Result<ExploredGraph, SolveError> {
    let mut index: BTreeMap<Marking, u32> = BTreeMap::new();
    let mut markings = vec![m0.clone()];
    let mut goal = vec![sat(net, m0, phi)];
    let mut edges: Vec<(u32, TransId, u32)> = Vec::new();
    index.insert(m0.clone(), 0);
    let mut frontier: VecDeque<u32> = VecDeque::new();
    frontier.push_back(0);

    while let Some(sid) = match cfg.search_order {
        SearchOrder::Dfs => frontier.pop_back(),
        SearchOrder::Bfs => frontier.pop_front(),
    } {
        if goal[sid as usize] {
            continue; // goal markings are absorbing
        }
        let m = markings[sid as usize].clone();
        let expansion: BTreeSet<TransId> = if cfg.use_por {
            let r = stubborn_set_with(
                net,
                &m,
                phi,
                StubbornOptions { skip_visibility_check: cfg.ablate_condition_v },
            );
            if cfg.early_termination && r.early_terminate {
                continue; // goal provably unreachable: losing leaf
            }
            r.stub
                .into_iter()
                .filter(|&t| net.is_enabled(&m, t))
                .collect()
        } else {
            let (mut en1, en2) = net.enabled(&m);
            en1.extend(en2);
            en1
        };
        for t in expansion {
            let m2 = net.fire(&m, t).expect("expansion contains only enabled transitions");
            let did = match index.get(&m2) {
                Some(&d) => d,
                None => {
                    if markings.len() >= cfg.max_states {
                        return Err(SolveError::Bounded {
                            max_states: cfg.max_states,
                            unique_markings: markings.len(),
                            edges_explored: edges.len(),
                        });
                    }
                    let d = markings.len() as u32;
                    index.insert(m2.clone(), d);
                    markings.push(m2.clone());
                    goal.push(sat(net, &m2, phi));
                    frontier.push_back(d);
                    d
                }
            };
            edges.push((sid, t, did));
        }
    }
    Ok(ExploredGraph { markings, edges, goal })
}

pub fn solve(
    net: &PetriNetGame,
    m0: &Marking,
    phi: &Formula,
    cfg: &SolveConfig,
) -> Result<SolveReport, SolveError> {
    let start = Instant::now();
    let phi = nnf(phi);
    let ex = explore_graph(net, m0, &phi, cfg)?;

    let players = net.transitions().map(|t| net.player_of(t)).collect();
    let mut b = GltsBuilder::new(ex.markings.len() as u32, players);
    for &(s, t, d) in &ex.edges {
        b = b.edge(s, t.0, d).expect("ids in range");
    }
    for (i, &g) in ex.goal.iter().enumerate() {
        if g {
            b = b.goal_state(i as u32).expect("id in range");
        }
    }
    let glts = b.build();
    let result = glts.solve();
    let sigma = glts.extract_strategy(&result);

    let mut strategy = BTreeMap::new();
    for (i, m) in ex.markings.iter().enumerate() {
        let s = StateId(i as u32);
        if result.winning(s) && !glts.is_goal(s) {
            strategy.insert(m.clone(), sigma.choice(s).map(|a| TransId(a.0)));
        }
    }

    Ok(SolveReport {
        winning: result.winning(StateId(0)),
        strategy,
        unique_markings: ex.markings.len(),
        edges_explored: ex.edges.len(),
        wall_time: start.elapsed(),
    })
}

/// Walks every maximal play of the full (unreduced) game where player
/// 1 follows `strategy` and player 2 does anything; true iff all of
/// them reach a goal marking. Cycles and dead ends that avoid the goal
/// fail the check.
pub fn verify_strategy(
    net: &PetriNetGame,
    m0: &Marking,
    phi: &Formula,
    strategy: &BTreeMap<Marking, Option<TransId>>,
    max_states: usize,
) -> Result<bool, VerifyError> {
    let phi = nnf(phi);

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        OnStack,
        Good,
    }

    // Iterative DFS with an explicit stack; a back edge to a non-goal
    // marking on the stack is a goal-avoiding cycle.
    let mut state: BTreeMap<Marking, Mark> = BTreeMap::new();
    let mut stack: Vec<(Marking, Vec<Marking>, usize)> = Vec::new();

    let successors = |m: &Marking| -> Result<Option<Vec<Marking>>, VerifyError> {
        let (en1, en2) = net.enabled(m);
        let mut next: Vec<Marking> = Vec::new();
        for &t in &en2 {
            next.push(net.fire(m, t).expect("enabled"));
        }
        match strategy.get(m) {
            Some(&Some(t)) if net.is_enabled(m, t) => {
                next.push(net.fire(m, t).expect("enabled"));
            }
            Some(_) => {}
            None => {
                if !en1.is_empty() {
                    return Err(VerifyError::Undefined { marking: m.clone() });
                }
            }
        }
        if next.is_empty() {
            return Ok(None); // maximal play ends here
        }
        Ok(Some(next))
    };

    if sat(net, m0, &phi) {
        return Ok(true);
    }
    let succ0 = match successors(m0)? {
        Some(s) => s,
        None => return Ok(false),
    };
    state.insert(m0.clone(), Mark::OnStack);
    stack.push((m0.clone(), succ0, 0));

    while let Some((m, succs, idx)) = stack.last_mut() {
        if *idx >= succs.len() {
            state.insert(m.clone(), Mark::Good);
            stack.pop();
            continue;
        }
        let next = succs[*idx].clone();
        *idx += 1;
        if sat(net, &next, &phi) {
            continue;
        }
        match state.get(&next) {
            Some(Mark::OnStack) => return Ok(false),
            Some(Mark::Good) => continue,
            None => {}
        }
        if state.len() >= max_states {
            return Err(VerifyError::Bounded { max_states });
        }
        match successors(&next)? {
            Some(s) => {
                state.insert(next.clone(), Mark::OnStack);
                stack.push((next, s, 0));
            }
            None => return Ok(false), // dead end without the goal
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub normal: SolveReport,
    pub por: SolveReport,
}

impl CompareReport {
    /// Percentage of unique markings saved by the reduction.
    pub fn pct_markings(&self) -> f64 {
        100.0 * (1.0 - self.por.unique_markings as f64 / self.normal.unique_markings as f64)
    }

    pub fn pct_time(&self) -> f64 {
        let n = self.normal.wall_time.as_secs_f64();
        if n == 0.0 {
            return 0.0;
        }
        100.0 * (1.0 - self.por.wall_time.as_secs_f64() / n)
    }
}

/// Solves the same instance without and with reduction; a differing
/// winner is an implementation bug and fails loudly.
pub fn compare_runs(
    net: &PetriNetGame,
    m0: &Marking,
    phi: &Formula,
    max_states: usize,
) -> Result<CompareReport, SolveError> {
    let normal = solve(net, m0, phi, &SolveConfig::normal(max_states))?;
    let por = solve(net, m0, phi, &SolveConfig::por(max_states))?;
    if normal.winning != por.winning {
        return Err(SolveError::WinnerMismatch { normal: normal.winning, por: por.winning });
    }
    Ok(CompareReport { normal, por })
}
