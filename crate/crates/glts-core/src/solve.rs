use std::collections::BTreeSet;

use crate::glts::{ActionId, ExplicitGlts, GltsError, StateId};

/// Result of the least-fixed-point winning computation. `rank[s]` is the
/// synchronous iteration round at which `s` became winning (goal states
/// have rank 0); `None` for losing states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    winning: Vec<bool>,
    rank: Vec<Option<u32>>,
}

impl SolveResult {
    pub fn winning(&self, s: StateId) -> bool {
        self.winning[s.0 as usize]
    }

    pub fn rank(&self, s: StateId) -> Option<u32> {
        self.rank[s.0 as usize]
    }
}

/// A memoryless strategy: a total map from states to a proposed player 1
/// action, or none where player 1 has no enabled action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    choice: Vec<Option<ActionId>>,
}

impl Strategy {
    pub fn new(choice: Vec<Option<ActionId>>) -> Self {
        Strategy { choice }
    }

    pub fn choice(&self, s: StateId) -> Option<ActionId> {
        self.choice[s.0 as usize]
    }

    /// The actions considered at `s` under this strategy: all enabled
    /// player 2 actions plus the proposed player 1 action, if any.
    pub fn next_actions(&self, glts: &ExplicitGlts, s: StateId) -> BTreeSet<ActionId> {
        let mut next = glts.en2(s);
        if let Some(a) = self.choice(s) {
            next.insert(a);
        }
        next
    }
}

impl ExplicitGlts {
    /// Least fixed point of the winning predicate for player 1.
    ///
    /// A state is winning iff it is a goal, or it is not a deadlock,
    /// every enabled player 2 action leads to a winning state, and
    /// player 1 either has no move or has some move to a winning state.
    /// The iteration is synchronous, so the rank of a winning non-goal
    /// state is strictly larger than the rank of its witnessing
    /// successors.
    pub fn solve(&self) -> SolveResult {
        let n = self.num_states() as usize;
        let mut winning = vec![false; n];
        let mut rank = vec![None; n];
        for &g in self.goal() {
            winning[g.0 as usize] = true;
            rank[g.0 as usize] = Some(0);
        }
        let mut round = 0u32;
        loop {
            round += 1;
            let mut added = Vec::new();
            for s in self.states() {
                if winning[s.0 as usize] {
                    continue;
                }
                let en1 = self.en1(s);
                let en2 = self.en2(s);
                if en1.is_empty() && en2.is_empty() {
                    continue;
                }
                let all2 = en2.iter().all(|&b| {
                    let t = self.succ(s, b).expect("enabled");
                    winning[t.0 as usize]
                });
                let some1 = en1.is_empty()
                    || en1.iter().any(|&a| {
                        let t = self.succ(s, a).expect("enabled");
                        winning[t.0 as usize]
                    });
                if all2 && some1 {
                    added.push(s);
                }
            }
            if added.is_empty() {
                return SolveResult { winning, rank };
            }
            for s in added {
                winning[s.0 as usize] = true;
                rank[s.0 as usize] = Some(round);
            }
        }
    }

    /// Extract a strategy from a solve result. At winning non-goal
    /// states the chosen action leads to a winning state of strictly
    /// smaller rank; everywhere else any enabled player 1 action is
    /// proposed (lowest id), keeping the strategy total.
    pub fn extract_strategy(&self, result: &SolveResult) -> Strategy {
        let mut choice = Vec::with_capacity(self.num_states() as usize);
        for s in self.states() {
            let en1 = self.en1(s);
            if en1.is_empty() {
                choice.push(None);
                continue;
            }
            let pick = if result.winning(s) && !self.is_goal(s) {
                let my_rank = result.rank(s).expect("winning state has a rank");
                en1.iter()
                    .copied()
                    .find(|&a| {
                        let t = self.succ(s, a).expect("enabled");
                        match result.rank(t) {
                            Some(r) => r < my_rank,
                            None => false,
                        }
                    })
                    .unwrap_or_else(|| *en1.iter().next().expect("nonempty"))
            } else {
                *en1.iter().next().expect("nonempty")
            };
            choice.push(Some(pick));
        }
        Strategy::new(choice)
    }

    /// The depth of `sigma` at `s`: the smallest n such that every
    /// maximal sigma-run from s first hits a goal within n steps.
    /// `None` when sigma is not winning at s.
    pub fn strategy_depth(&self, sigma: &Strategy, s: StateId) -> Result<Option<u64>, GltsError> {
        if s.0 >= self.num_states() {
            return Err(GltsError::UnknownState(s.0));
        }
        let n = self.num_states() as usize;
        // memo: None = unvisited, Some(None) = losing, Some(Some(d)) = depth d
        let mut memo: Vec<Option<Option<u64>>> = vec![None; n];
        let mut on_stack = vec![false; n];
        Ok(self.depth_rec(sigma, s, &mut memo, &mut on_stack))
    }

    fn depth_rec(
        &self,
        sigma: &Strategy,
        s: StateId,
        memo: &mut Vec<Option<Option<u64>>>,
        on_stack: &mut Vec<bool>,
    ) -> Option<u64> {
        if let Some(v) = memo[s.0 as usize] {
            return v;
        }
        if self.is_goal(s) {
            memo[s.0 as usize] = Some(Some(0));
            return Some(0);
        }
        if on_stack[s.0 as usize] {
            // A cycle of non-goal states closed under sigma: some run
            // never reaches the goal.
            return None;
        }
        let next = sigma.next_actions(self, s);
        let mut result = if next.is_empty() {
            None // non-goal deadlock under sigma
        } else {
            Some(0u64)
        };
        on_stack[s.0 as usize] = true;
        for a in next {
            if let Some(t) = self.succ(s, a) {
                match (result, self.depth_rec(sigma, t, memo, on_stack)) {
                    (Some(best), Some(d)) => result = Some(best.max(d + 1)),
                    _ => result = None,
                }
            }
            if result.is_none() {
                break;
            }
        }
        on_stack[s.0 as usize] = false;
        memo[s.0 as usize] = Some(result);
        result
    }
}
