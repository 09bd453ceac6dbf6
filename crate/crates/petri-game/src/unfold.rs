use std::collections::BTreeMap;
use std::collections::VecDeque;

use glts_core::{ActionId, ExplicitGlts, GltsBuilder, StateId};
use thiserror::Error;

use crate::net::{Marking, NetError, PetriNetGame};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UnfoldError {
    #[error("state budget of {max_states} markings exhausted ({frontier} markings still unexplored)")]
    Bounded { max_states: usize, frontier: usize },
    #[error("max_states must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Net(#[from] NetError),
}

/// The explicit game induced by a net: one state per reachable marking,
/// one action per transition (the action id equals the transition id).
#[derive(Debug, Clone)]
pub struct Unfolding {
    pub glts: ExplicitGlts,
    /// Marking behind each state id, in discovery (BFS) order.
    pub markings: Vec<Marking>,
}

impl Unfolding {
    pub fn marking(&self, s: StateId) -> &Marking {
        &self.markings[s.0 as usize]
    }

    pub fn state_of(&self, m: &Marking) -> Option<StateId> {
        self.markings
            .iter()
            .position(|x| x == m)
            .map(|i| StateId(i as u32))
    }
}

impl PetriNetGame {
    /// Breadth-first exploration of all markings reachable from `m0`,
    /// stopping with an error once more than `max_states` distinct
    /// markings have been discovered. `goal` decides goal membership.
    pub fn unfold(
        &self,
        m0: &Marking,
        goal: impl Fn(&Marking) -> bool,
        max_states: usize,
    ) -> Result<Unfolding, UnfoldError> {
        if max_states == 0 {
            return Err(UnfoldError::ZeroBudget);
        }
        self.check_marking(m0)?;

        let mut index: BTreeMap<Marking, u32> = BTreeMap::new();
        let mut markings: Vec<Marking> = Vec::new();
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        let mut queue = VecDeque::new();

        index.insert(m0.clone(), 0);
        markings.push(m0.clone());
        queue.push_back(0u32);

        while let Some(sid) = queue.pop_front() {
            let m = markings[sid as usize].clone();
            for t in self.transitions() {
                if !self.is_enabled(&m, t) {
                    continue;
                }
                let m2 = self.fire(&m, t).expect("enabled");
                let did = match index.get(&m2) {
                    Some(&d) => d,
                    None => {
                        if markings.len() >= max_states {
                            return Err(UnfoldError::Bounded {
                                max_states,
                                frontier: queue.len() + 1,
                            });
                        }
                        let d = markings.len() as u32;
                        index.insert(m2.clone(), d);
                        markings.push(m2);
                        queue.push_back(d);
                        d
                    }
                };
                edges.push((sid, t.0, did));
            }
        }

        let players = self.transitions().map(|t| self.player_of(t)).collect();
        let mut b = GltsBuilder::new(markings.len() as u32, players);
        for (s, a, d) in edges {
            b = b.edge(s, a, d).expect("ids in range");
        }
        for (i, m) in markings.iter().enumerate() {
            if goal(m) {
                b = b.goal_state(i as u32).expect("id in range");
            }
        }
        Ok(Unfolding {
            glts: b.build(),
            markings,
        })
    }
}

/// The transition behind a GLTS action in an unfolding.
pub fn action_to_trans(a: ActionId) -> crate::net::TransId {
    crate::net::TransId(a.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{algorithm_example, AlgorithmExample};
    use crate::net::NetBuilder;
    use glts_core::{Player, PlayerSel};

    /// Two independent one-shot producers: p_i --(t_i)--> q_i.
    fn two_chain() -> (PetriNetGame, Marking) {
        let mut b = NetBuilder::new();
        let mut qs = Vec::new();
        for i in 0..2 {
            let p = b.place(format!("p{i}"));
            let q = b.place(format!("q{i}"));
            let t = b.transition(format!("t{i}"), Player::One);
            b.arc_in(p, t, 1).arc_out(t, q, 1);
            qs.push(q);
        }
        let net = b.build().unwrap();
        let m0 = Marking::new(vec![1, 0, 1, 0]);
        (net, m0)
    }

    #[test]
    fn chain_of_two_has_four_markings() {
        let (net, m0) = two_chain();
        let goal = |m: &Marking| m.as_slice()[1] >= 1 && m.as_slice()[3] >= 1;
        let u = net.unfold(&m0, goal, 100).unwrap();
        assert_eq!(u.markings.len(), 4);
        assert_eq!(u.glts.goal().len(), 1);
        let g = u.glts.goal().iter().next().copied().unwrap();
        assert_eq!(u.marking(g), &Marking::new(vec![0, 1, 0, 1]));
    }

    #[test]
    fn deadlocked_net_is_one_state() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let t = b.transition("t", Player::Two);
        b.arc_in(p, t, 1);
        let net = b.build().unwrap();
        let u = net.unfold(&Marking::new(vec![0]), |_| false, 10).unwrap();
        assert_eq!(u.markings.len(), 1);
        assert!(u.glts.enabled(StateId(0), PlayerSel::Both).unwrap().is_empty());
    }

    #[test]
    fn unbounded_place_hits_budget() {
        let AlgorithmExample { net, m0, .. } = algorithm_example();
        match net.unfold(&m0, |_| false, 3) {
            Err(UnfoldError::Bounded { max_states: 3, frontier }) => assert!(frontier >= 1),
            other => panic!("expected boundedness error, got {other:?}"),
        }
    }

    #[test]
    fn unfolding_is_deterministic() {
        let (net, m0) = two_chain();
        let a = net.unfold(&m0, |_| false, 100).unwrap();
        let b = net.unfold(&m0, |_| false, 100).unwrap();
        assert_eq!(a.markings, b.markings);
        assert_eq!(
            a.glts.edges().collect::<Vec<_>>(),
            b.glts.edges().collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_budget_rejected() {
        let (net, m0) = two_chain();
        assert_eq!(
            net.unfold(&m0, |_| false, 0).unwrap_err(),
            UnfoldError::ZeroBudget
        );
    }
}
