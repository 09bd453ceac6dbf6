//! Randomized checks of the headline properties: reductions passing the
//! stability checker preserve the winner everywhere, and any reduction
//! passing W and the semantic R keeps at least one enabled stubborn
//! action wherever the goal is reachable.

use std::collections::BTreeSet;

use glts_core::{
    ActionId, Condition, ExplicitGlts, GltsBuilder, Player, PlayerSel, ReductionMap, StateId,
    Verdict,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_glts(rng: &mut ChaCha8Rng) -> ExplicitGlts {
    let num_states = rng.gen_range(2..=12u32);
    let n1 = rng.gen_range(1..=3usize);
    let n2 = rng.gen_range(0..=3usize);
    let mut players = vec![Player::One; n1];
    players.extend(vec![Player::Two; n2]);
    let num_actions = players.len() as u32;
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut b = GltsBuilder::new(num_states, players);
    for s in 0..num_states {
        for a in 0..num_actions {
            if rng.gen_bool(density) {
                let d = rng.gen_range(0..num_states);
                b = b.edge(s, a, d).unwrap();
            }
        }
    }
    let goals = rng.gen_range(1..=2u32).min(num_states);
    for _ in 0..goals {
        b = b.goal_state(rng.gen_range(0..num_states)).unwrap();
    }
    b.build()
}

/// Random candidate reduction biased towards keeping most actions in,
/// so that a useful fraction passes the stability checker.
fn random_reduction(rng: &mut ChaCha8Rng, g: &ExplicitGlts) -> ReductionMap {
    let all: BTreeSet<ActionId> = g.actions().collect();
    let stubs = g
        .states()
        .map(|s| {
            if rng.gen_bool(0.6) {
                all.clone()
            } else {
                let mut set: BTreeSet<ActionId> = all
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.6))
                    .collect();
                if rng.gen_bool(0.5) {
                    set.extend(g.enabled(s, PlayerSel::Both).unwrap());
                }
                set
            }
        })
        .collect();
    ReductionMap::new(stubs)
}

#[test]
fn stable_reductions_preserve_winner() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut stable_seen = 0usize;
    let mut nontrivial_seen = 0usize;
    for _ in 0..600 {
        let g = random_glts(&mut rng);
        let red = random_reduction(&mut rng, &g);
        let report = g.check_stable(&red).unwrap();
        if !report.all_pass() {
            continue;
        }
        stable_seen += 1;
        let reduced = g.reduce(&red).unwrap();
        if reduced.edges().count() < g.edges().count() {
            nontrivial_seen += 1;
        }
        let full = g.solve();
        let red_solve = reduced.solve();
        for s in g.states() {
            assert_eq!(
                full.winning(s),
                red_solve.winning(s),
                "winner differs at state {:?}",
                s
            );
        }
    }
    assert!(stable_seen >= 50, "too few stable samples: {stable_seen}");
    assert!(
        nontrivial_seen >= 10,
        "too few pruning reductions: {nontrivial_seen}"
    );
}

#[test]
fn non_mixed_relaxation_preserves_winner() {
    // On GLTSs with no reachable mixed state, Condition S may be dropped.
    let mut rng = ChaCha8Rng::seed_from_u64(0xaa11);
    let mut checked = 0usize;
    for _ in 0..800 {
        let g = random_glts(&mut rng);
        let mixed = g
            .states()
            .any(|s| g.classify(s).unwrap() == glts_core::StateClass::Mixed);
        if mixed {
            continue;
        }
        let red = random_reduction(&mut rng, &g);
        let report = g.check_stable(&red).unwrap();
        let pass_except_s = Condition::ALL
            .iter()
            .filter(|&&c| c != Condition::S)
            .all(|&c| matches!(report.verdict(c), Verdict::Pass));
        if !pass_except_s {
            continue;
        }
        checked += 1;
        let reduced = g.reduce(&red).unwrap();
        let full = g.solve();
        let red_solve = reduced.solve();
        for s in g.states() {
            assert_eq!(full.winning(s), red_solve.winning(s));
        }
    }
    assert!(checked >= 30, "too few samples: {checked}");
}

#[test]
fn early_termination_lemma() {
    // W + semantic R imply: goal reachable from non-goal s means the
    // stubborn set intersects the enabled actions of s.
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    let mut checked = 0usize;
    for _ in 0..600 {
        let g = random_glts(&mut rng);
        let red = random_reduction(&mut rng, &g);
        let report = g.check_stable(&red).unwrap();
        let w_and_r = matches!(report.verdict(Condition::W), Verdict::Pass)
            && matches!(report.verdict(Condition::R), Verdict::Pass);
        if !w_and_r {
            continue;
        }
        checked += 1;
        for s in g.states() {
            if g.is_goal(s) || !goal_reachable(&g, s) {
                continue;
            }
            let en = g.enabled(s, PlayerSel::Both).unwrap();
            assert!(
                red.stub(s).intersection(&en).next().is_some(),
                "state {:?} can reach the goal but has no enabled stubborn action",
                s
            );
        }
    }
    assert!(checked >= 50, "too few samples: {checked}");
}

fn goal_reachable(g: &ExplicitGlts, s: StateId) -> bool {
    let mut seen = BTreeSet::new();
    let mut stack = vec![s];
    seen.insert(s);
    while let Some(x) = stack.pop() {
        if g.is_goal(x) {
            return true;
        }
        for a in g.enabled(x, PlayerSel::Both).unwrap() {
            let y = g.succ(x, a).unwrap();
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    false
}
