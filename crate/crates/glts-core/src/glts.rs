use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// A state of an explicit GLTS. States are dense indices `0..num_states`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

/// An action label. Actions are dense indices `0..num_actions`, each owned
/// by exactly one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    One,
    Two,
}

/// Which player's enabled actions to query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlayerSel {
    One,
    Two,
    Both,
}

/// Classification of a state by which players can move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateClass {
    Player1,
    Player2,
    Mixed,
    Deadlock,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GltsError {
    #[error("unknown state id {0}")]
    UnknownState(u32),
    #[error("unknown action id {0}")]
    UnknownAction(u32),
    #[error("conflicting edge for state {state} action {action}")]
    ConflictingEdge { state: u32, action: u32 },
    #[error("state {0} is not a player 1 state (player 2 actions are enabled)")]
    NotPlayer1State(u32),
    #[error("reduction map covers {got} states, expected {expected}")]
    ReductionSize { got: usize, expected: usize },
}

/// A finite deterministic two-player labelled transition system with a
/// goal set. Determinism is structural: the edge map holds at most one
/// successor per (state, action) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGlts {
    num_states: u32,
    action_players: Vec<Player>,
    edges: BTreeMap<(StateId, ActionId), StateId>,
    goal: BTreeSet<StateId>,
}

/// Builder that validates edges and goal states against the declared
/// state and action universe.
#[derive(Debug, Clone)]
pub struct GltsBuilder {
    num_states: u32,
    action_players: Vec<Player>,
    edges: BTreeMap<(StateId, ActionId), StateId>,
    goal: BTreeSet<StateId>,
}

impl GltsBuilder {
    pub fn new(num_states: u32, action_players: Vec<Player>) -> Self {
        GltsBuilder {
            num_states,
            action_players,
            edges: BTreeMap::new(),
            goal: BTreeSet::new(),
        }
    }

    pub fn edge(mut self, src: u32, action: u32, dst: u32) -> Result<Self, GltsError> {
        if src >= self.num_states {
            return Err(GltsError::UnknownState(src));
        }
        if dst >= self.num_states {
            return Err(GltsError::UnknownState(dst));
        }
        if action as usize >= self.action_players.len() {
            return Err(GltsError::UnknownAction(action));
        }
        let key = (StateId(src), ActionId(action));
        if let Some(&prev) = self.edges.get(&key) {
            if prev != StateId(dst) {
                return Err(GltsError::ConflictingEdge {
                    state: src,
                    action,
                });
            }
        }
        self.edges.insert(key, StateId(dst));
        Ok(self)
    }

    pub fn goal_state(mut self, s: u32) -> Result<Self, GltsError> {
        if s >= self.num_states {
            return Err(GltsError::UnknownState(s));
        }
        self.goal.insert(StateId(s));
        Ok(self)
    }

    pub fn build(self) -> ExplicitGlts {
        ExplicitGlts {
            num_states: self.num_states,
            action_players: self.action_players,
            edges: self.edges,
            goal: self.goal,
        }
    }
}

impl ExplicitGlts {
    pub fn num_states(&self) -> u32 {
        self.num_states
    }

    pub fn num_actions(&self) -> u32 {
        self.action_players.len() as u32
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.num_states).map(StateId)
    }

    pub fn actions(&self) -> impl Iterator<Item = ActionId> {
        (0..self.action_players.len() as u32).map(ActionId)
    }

    pub fn player_of(&self, a: ActionId) -> Player {
        self.action_players[a.0 as usize]
    }

    pub fn goal(&self) -> &BTreeSet<StateId> {
        &self.goal
    }

    pub fn is_goal(&self, s: StateId) -> bool {
        self.goal.contains(&s)
    }

    pub fn succ(&self, s: StateId, a: ActionId) -> Option<StateId> {
        self.edges.get(&(s, a)).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (StateId, ActionId, StateId)> + '_ {
        self.edges.iter().map(|(&(s, a), &d)| (s, a, d))
    }

    fn check_state(&self, s: StateId) -> Result<(), GltsError> {
        if s.0 >= self.num_states {
            Err(GltsError::UnknownState(s.0))
        } else {
            Ok(())
        }
    }

    /// Enabled actions of `s` for the requested player(s).
    pub fn enabled(&self, s: StateId, sel: PlayerSel) -> Result<BTreeSet<ActionId>, GltsError> {
        self.check_state(s)?;
        Ok(self
            .edges
            .range((s, ActionId(0))..=(s, ActionId(u32::MAX)))
            .map(|(&(_, a), _)| a)
            .filter(|&a| match sel {
                PlayerSel::One => self.player_of(a) == Player::One,
                PlayerSel::Two => self.player_of(a) == Player::Two,
                PlayerSel::Both => true,
            })
            .collect())
    }

    pub(crate) fn en1(&self, s: StateId) -> BTreeSet<ActionId> {
        self.enabled(s, PlayerSel::One).expect("state in range")
    }

    pub(crate) fn en2(&self, s: StateId) -> BTreeSet<ActionId> {
        self.enabled(s, PlayerSel::Two).expect("state in range")
    }

    pub(crate) fn en(&self, s: StateId) -> BTreeSet<ActionId> {
        self.enabled(s, PlayerSel::Both).expect("state in range")
    }

    pub fn classify(&self, s: StateId) -> Result<StateClass, GltsError> {
        self.check_state(s)?;
        let has1 = !self.en1(s).is_empty();
        let has2 = !self.en2(s).is_empty();
        Ok(match (has1, has2) {
            (false, false) => StateClass::Deadlock,
            (true, false) => StateClass::Player1,
            (false, true) => StateClass::Player2,
            (true, true) => StateClass::Mixed,
        })
    }

    /// The reduced game: same states, actions and goal, but an edge
    /// (s, a, s') survives only when a is stubborn at s.
    pub fn reduce(&self, red: &ReductionMap) -> Result<ExplicitGlts, GltsError> {
        red.check_size(self)?;
        let edges = self
            .edges
            .iter()
            .filter(|(&(s, a), _)| red.stub(s).contains(&a))
            .map(|(&k, &v)| (k, v))
            .collect();
        Ok(ExplicitGlts {
            num_states: self.num_states,
            action_players: self.action_players.clone(),
            edges,
            goal: self.goal.clone(),
        })
    }

    /// Exact safe actions of a player 1 state, by synchronized product
    /// exploration. For each enabled candidate `a`, walks all sequences
    /// w over the other player 1 actions, tracking the pair of states
    /// reached by w and by aw; `a` is unsafe iff some pair has no
    /// player 2 actions on the w-side but some on the aw-side.
    pub fn safe_actions(&self, s: StateId) -> Result<BTreeSet<ActionId>, GltsError> {
        self.check_state(s)?;
        if !self.en2(s).is_empty() {
            return Err(GltsError::NotPlayer1State(s.0));
        }
        let en1 = self.en1(s);
        let mut safe = BTreeSet::new();
        for &a in &en1 {
            if self.is_safe_in(s, a) {
                safe.insert(a);
            }
        }
        Ok(safe)
    }

    fn is_safe_in(&self, s: StateId, a: ActionId) -> bool {
        let start = match self.succ(s, a) {
            Some(t) => t,
            None => return true,
        };
        // Pairs (x, y) with x = state after w and y = state after aw.
        // Once aw stops being executable no extension can violate safety.
        let mut seen = BTreeSet::new();
        let mut queue = vec![(s, start)];
        seen.insert((s, start));
        while let Some((x, y)) = queue.pop() {
            if self.en2(x).is_empty() && !self.en2(y).is_empty() {
                return false;
            }
            for &b in &self.en1(x) {
                if b == a {
                    continue;
                }
                let x2 = self.succ(x, b).expect("enabled action has successor");
                if let Some(y2) = self.succ(y, b) {
                    if seen.insert((x2, y2)) {
                        queue.push((x2, y2));
                    }
                }
            }
        }
        true
    }
}

/// A reduction: the per-state stubborn set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMap {
    stub: Vec<BTreeSet<ActionId>>,
}

impl ReductionMap {
    pub fn new(stub: Vec<BTreeSet<ActionId>>) -> Self {
        ReductionMap { stub }
    }

    /// The identity reduction: every action is stubborn everywhere.
    pub fn full(glts: &ExplicitGlts) -> Self {
        let all: BTreeSet<ActionId> = glts.actions().collect();
        ReductionMap {
            stub: vec![all; glts.num_states() as usize],
        }
    }

    pub fn stub(&self, s: StateId) -> &BTreeSet<ActionId> {
        &self.stub[s.0 as usize]
    }

    pub fn stub_mut(&mut self, s: StateId) -> &mut BTreeSet<ActionId> {
        &mut self.stub[s.0 as usize]
    }

    pub(crate) fn check_size(&self, glts: &ExplicitGlts) -> Result<(), GltsError> {
        if self.stub.len() != glts.num_states() as usize {
            Err(GltsError::ReductionSize {
                got: self.stub.len(),
                expected: glts.num_states() as usize,
            })
        } else {
            Ok(())
        }
    }
}
