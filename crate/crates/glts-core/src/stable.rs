use std::collections::{BTreeSet, VecDeque};

use crate::glts::{ActionId, ExplicitGlts, GltsError, Player, ReductionMap, StateClass, StateId};

/// The eight stable reduction conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Condition {
    I,
    W,
    R,
    G1,
    G2,
    S,
    V,
    D,
}

impl Condition {
    pub const ALL: [Condition; 8] = [
        Condition::I,
        Condition::W,
        Condition::R,
        Condition::G1,
        Condition::G2,
        Condition::S,
        Condition::V,
        Condition::D,
    ];

    fn index(self) -> usize {
        Condition::ALL.iter().position(|&c| c == self).unwrap()
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Where and how a condition failed: the state under scrutiny and a
/// minimal-length offending action sequence (meaning depends on the
/// condition; for I/V it is the single missing action).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub state: StateId,
    pub actions: Vec<ActionId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Per-condition verdicts for a reduction over a whole GLTS. All passes
/// iff the reduction is stable (with R in its semantic form).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    verdicts: [Verdict; 8],
}

impl ConditionReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.verdicts[c.index()]
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = (Condition, &Witness)> {
        Condition::ALL.iter().filter_map(move |&c| match self.verdict(c) {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some((c, w)),
        })
    }
}

impl ExplicitGlts {
    /// Exhaustively checks all stable reduction conditions for `red`,
    /// state by state. R is checked in its semantic form: from a
    /// non-goal state no goal may be reachable through non-stubborn
    /// actions alone. Failures carry a BFS-minimal witness.
    pub fn check_stable(&self, red: &ReductionMap) -> Result<ConditionReport, GltsError> {
        red.check_size(self)?;
        let mut verdicts: [Verdict; 8] = [
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
            Verdict::Pass,
        ];
        let fail = |verdicts: &mut [Verdict; 8], c: Condition, w: Witness| {
            let slot = &mut verdicts[c.index()];
            if slot.is_pass() {
                *slot = Verdict::Fail(w);
            }
        };

        for s in self.states() {
            let stub = red.stub(s);
            let en1 = self.en1(s);
            let en2 = self.en2(s);
            let reach = self.nonstub_reachable(s, stub);

            // I: no pruning at mixed states.
            if self.classify(s)? == StateClass::Mixed {
                if let Some(&a) = self.en(s).iter().find(|a| !stub.contains(a)) {
                    fail(&mut verdicts, Condition::I, Witness { state: s, actions: vec![a] });
                }
            }

            // W: every stubborn action commutes with non-stubborn sequences.
            for &a in stub {
                if let Some(w) = self.commutation_violation(s, a, stub) {
                    fail(&mut verdicts, Condition::W, Witness { state: s, actions: w });
                }
            }

            // R (semantic): no goal reachable through non-stubborn actions.
            if !self.is_goal(s) {
                for (x, path) in &reach {
                    if self.is_goal(*x) {
                        fail(&mut verdicts, Condition::R, Witness { state: s, actions: path.clone() });
                        break;
                    }
                }
            }

            // G1/G2: the opponent stays absent along non-stubborn sequences.
            if en2.is_empty() {
                for (x, path) in &reach {
                    if !self.en2(*x).is_empty() {
                        fail(&mut verdicts, Condition::G1, Witness { state: s, actions: path.clone() });
                        break;
                    }
                }
            }
            if en1.is_empty() {
                for (x, path) in &reach {
                    if !self.en1(*x).is_empty() {
                        fail(&mut verdicts, Condition::G2, Witness { state: s, actions: path.clone() });
                        break;
                    }
                }
            }

            // S: checked only at player 1 / deadlock states; at mixed
            // states I already forces all enabled actions in.
            if en2.is_empty() {
                let safe = self.safe_actions(s)?;
                let stub_en1: Vec<ActionId> =
                    en1.intersection(stub).copied().collect();
                let all_in = en1.iter().all(|a| stub.contains(a));
                if !all_in {
                    if let Some(&a) = stub_en1.iter().find(|a| !safe.contains(a)) {
                        fail(&mut verdicts, Condition::S, Witness { state: s, actions: vec![a] });
                    }
                }
            }

            // V: if the goal is reachable through player 2 actions only,
            // all enabled player 2 actions must be stubborn.
            if self.player2_goal_reachable(s) {
                if let Some(&a) = en2.iter().find(|a| !stub.contains(a)) {
                    fail(&mut verdicts, Condition::V, Witness { state: s, actions: vec![a] });
                }
            }

            // D: some enabled stubborn player 2 action survives every
            // non-stubborn sequence.
            if !en2.is_empty() {
                let candidates: Vec<ActionId> =
                    en2.intersection(stub).copied().collect();
                let ok = candidates.iter().any(|&a| {
                    reach.iter().all(|(x, _)| self.succ(*x, a).is_some())
                });
                if !ok {
                    let witness = candidates
                        .first()
                        .and_then(|&a| {
                            reach
                                .iter()
                                .find(|(x, _)| self.succ(*x, a).is_none())
                                .map(|(_, path)| path.clone())
                        })
                        .unwrap_or_default();
                    fail(&mut verdicts, Condition::D, Witness { state: s, actions: witness });
                }
            }
        }
        Ok(ConditionReport { verdicts })
    }

    /// States reachable from `s` using only actions outside `stub`,
    /// in BFS order with a shortest witness path each. Includes `s`.
    fn nonstub_reachable(
        &self,
        s: StateId,
        stub: &BTreeSet<ActionId>,
    ) -> Vec<(StateId, Vec<ActionId>)> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(s);
        queue.push_back((s, Vec::new()));
        while let Some((x, path)) = queue.pop_front() {
            order.push((x, path.clone()));
            for a in self.en(x) {
                if stub.contains(&a) {
                    continue;
                }
                let y = self.succ(x, a).expect("enabled");
                if seen.insert(y) {
                    let mut p = path.clone();
                    p.push(a);
                    queue.push_back((y, p));
                }
            }
        }
        order
    }

    /// Diamond check for Condition W at a single stubborn action: walks
    /// pairs (state after w, state after aw) over non-stubborn w; a
    /// violation is a w where wa is executable from s but aw does not
    /// land in the same state. Returns the offending sequence wa.
    fn commutation_violation(
        &self,
        s: StateId,
        a: ActionId,
        stub: &BTreeSet<ActionId>,
    ) -> Option<Vec<ActionId>> {
        let y0 = self.succ(s, a);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert((s, y0));
        queue.push_back((s, y0, Vec::new()));
        while let Some((x, y, path)) = queue.pop_front() {
            if let Some(end) = self.succ(x, a) {
                if y != Some(end) {
                    let mut w = path;
                    w.push(a);
                    return Some(w);
                }
            }
            for b in self.en(x) {
                if stub.contains(&b) {
                    continue;
                }
                let x2 = self.succ(x, b).expect("enabled");
                let y2 = y.and_then(|y| self.succ(y, b));
                if seen.insert((x2, y2)) {
                    let mut p = path.clone();
                    p.push(b);
                    queue.push_back((x2, y2, p));
                }
            }
        }
        None
    }

    /// Is a goal state reachable from `s` firing player 2 actions only?
    /// The empty sequence counts, so a goal state answers true.
    fn player2_goal_reachable(&self, s: StateId) -> bool {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(s);
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            if self.is_goal(x) {
                return true;
            }
            for a in self.en2(x) {
                debug_assert_eq!(self.player_of(a), Player::Two);
                let y = self.succ(x, a).expect("enabled");
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_figures::{condition_v_figure, stable_reduction_figure};

    fn all_enabled_reduction(g: &ExplicitGlts) -> ReductionMap {
        let stubs = g
            .states()
            .map(|s| g.enabled(s, crate::PlayerSel::Both).unwrap())
            .collect();
        ReductionMap::new(stubs)
    }

    #[test]
    fn identity_reduction_is_stable() {
        for g in [stable_reduction_figure(), condition_v_figure()] {
            let full = ReductionMap::full(&g);
            let report = g.check_stable(&full).unwrap();
            assert!(report.all_pass(), "failures: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn stable_reduction_figure_stub_passes() {
        let g = stable_reduction_figure();
        let mut red = all_enabled_reduction(&g);
        // stub(s1) = {a, c}
        *red.stub_mut(StateId(0)) = [ActionId(0), ActionId(2)].into_iter().collect();
        let report = g.check_stable(&red).unwrap();
        assert!(report.all_pass(), "failures: {:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn stable_reduction_removes_only_thin_edges() {
        let g = stable_reduction_figure();
        let mut red = all_enabled_reduction(&g);
        *red.stub_mut(StateId(0)) = [ActionId(0), ActionId(2)].into_iter().collect();
        let reduced = g.reduce(&red).unwrap();
        // The b-edge out of s1 is gone, everything else stays.
        assert_eq!(reduced.succ(StateId(0), ActionId(1)), None);
        assert_eq!(reduced.edges().count(), g.edges().count() - 1);
    }

    #[test]
    fn condition_v_violation_detected() {
        let g = condition_v_figure();
        let mut red = all_enabled_reduction(&g);
        // stub(s1) = {a} drops the b action even though the goal is
        // player 2 reachable from s1.
        *red.stub_mut(StateId(0)) = [ActionId(0)].into_iter().collect();
        let report = g.check_stable(&red).unwrap();
        assert!(!report.all_pass());
        let fails: Vec<Condition> = report.failures().map(|(c, _)| c).collect();
        assert_eq!(fails, vec![Condition::V]);
        match report.verdict(Condition::V) {
            Verdict::Fail(w) => {
                assert_eq!(w.state, StateId(0));
                assert_eq!(w.actions, vec![ActionId(1)]);
            }
            Verdict::Pass => unreachable!(),
        }
    }

    #[test]
    fn condition_v_unsoundness_shows_in_reduced_game() {
        // Dropping b at s1 flips the winner: the documented reason V exists.
        let g = condition_v_figure();
        let mut red = all_enabled_reduction(&g);
        *red.stub_mut(StateId(0)) = [ActionId(0)].into_iter().collect();
        let reduced = g.reduce(&red).unwrap();
        assert!(!g.solve().winning(StateId(0)));
        assert!(reduced.solve().winning(StateId(0)));
    }
}
