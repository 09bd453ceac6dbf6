use std::collections::BTreeSet;

use petri_game::{Marking, PetriNetGame, Player, TransId};
use query_logic::{interesting, sat, Formula};

use crate::reach::reach_overapprox;

/// How the stubborn set was obtained. Every `*Full` reason means the
/// computation bailed out to the full transition set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StubbornReason {
    /// No transition enabled; nothing to prune.
    DeadlockedFull,
    /// Both players enabled; pruning is never allowed there.
    MixedFull,
    /// Player 2 might reach the goal on its own, so every player 2
    /// option must stay visible.
    VisibilityFull,
    /// The closure pulled in an enabled player 1 transition that is not
    /// syntactically safe.
    UnsafeFull,
    /// The saturated closure itself.
    Saturated,
}

impl StubbornReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StubbornReason::DeadlockedFull => "deadlocked_full",
            StubbornReason::MixedFull => "mixed_full",
            StubbornReason::VisibilityFull => "visibility_full",
            StubbornReason::UnsafeFull => "unsafe_full",
            StubbornReason::Saturated => "saturated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StubbornResult {
    pub stub: BTreeSet<TransId>,
    pub reason: StubbornReason,
    /// The goal is provably unreachable from this marking; the caller
    /// may skip all successors.
    pub early_terminate: bool,
}

/// Options steering `stubborn_set`, used by ablation experiments.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubbornOptions {
    /// Skip the reach-based visibility bailout. Unsound: exists to
    /// demonstrate why the bailout is needed.
    pub skip_visibility_check: bool,
}

/// A transition is syntactically safe when it cannot enable any player
/// 2 transition: it grows no pre-place of player 2 and drains no
/// inhibitor place of player 2. Sound in every marking.
pub fn syntactic_safe(net: &PetriNetGame, t: TransId) -> bool {
    let t2: Vec<_> = net.transitions_of(Player::Two).collect();
    let incr_post = net.incr_postset(t);
    let decr_pre = net.decr_preset(t);
    t2.iter().all(|&u| {
        net.preset_of_trans(u).is_disjoint(&incr_post)
            && net.inhib_preset(u).is_disjoint(&decr_pre)
    })
}

/// Closes `y` under the dependency rules: a disabled member drags in
/// the transitions able to fix its (lowest-id) blocked place, an
/// enabled member drags in everything it might disable. Selection
/// points always take the lowest id.
pub fn saturate(net: &PetriNetGame, m: &Marking, y: &BTreeSet<TransId>) -> BTreeSet<TransId> {
    let mut x: BTreeSet<TransId> = BTreeSet::new();
    let mut work = y.clone();
    while let Some(&t) = work.iter().next() {
        work.remove(&t);
        let additions: BTreeSet<TransId> = if !net.is_enabled(m, t) {
            let deficient = net
                .preset_of_trans(t)
                .into_iter()
                .find(|&p| m.tokens(p) < net.weight_in(p, t));
            if let Some(p) = deficient {
                net.incr_preset(p)
            } else {
                let p = net
                    .inhib_preset(t)
                    .into_iter()
                    .find(|&p| m.tokens(p) >= net.inhibitor(p, t).unwrap())
                    .expect("disabled transition has a deficient or inhibited place");
                net.decr_postset(p)
            }
        } else {
            let mut add = BTreeSet::new();
            for p in net.decr_preset(t) {
                add.extend(net.postset_of_place(p));
            }
            for p in net.incr_postset(t) {
                add.extend(net.inhib_postset(p));
            }
            add
        };
        x.insert(t);
        for u in additions {
            if !x.contains(&u) {
                work.insert(u);
            }
        }
    }
    x
}

pub fn stubborn_set(net: &PetriNetGame, m: &Marking, phi: &Formula) -> StubbornResult {
    stubborn_set_with(net, m, phi, StubbornOptions::default())
}

pub fn stubborn_set_with(
    net: &PetriNetGame,
    m: &Marking,
    phi: &Formula,
    opts: StubbornOptions,
) -> StubbornResult {
    let all: BTreeSet<TransId> = net.transitions().collect();
    let safe_oracle = |t: TransId| syntactic_safe(net, t);
    let interest = interesting(net, m, phi, &safe_oracle);

    // Goal provably unreachable from here? Decided on the interesting
    // closure alone and reported, not acted upon: the exploration
    // loop owns the pruning decision.
    let early_terminate =
        !sat(net, m, phi) && saturate(net, m, &interest).is_disjoint(&enabled_set(net, m));

    let (en1, en2) = net.enabled(m);
    let full = |reason| StubbornResult { stub: all.clone(), reason, early_terminate };

    if en1.is_empty() && en2.is_empty() {
        return full(StubbornReason::DeadlockedFull);
    }
    if !en1.is_empty() && !en2.is_empty() {
        return full(StubbornReason::MixedFull);
    }

    let mut y: BTreeSet<TransId>;
    if en1.is_empty() {
        if !opts.skip_visibility_check && reach_overapprox(net, m, phi).0 {
            return full(StubbornReason::VisibilityFull);
        }
        let t = *en2.iter().next().expect("en2 nonempty");
        y = net.transitions_of(Player::One).collect();
        y.insert(t);
        for p in net.preset_of_trans(t) {
            y.extend(net.decr_postset(p));
        }
        for p in net.inhib_preset(t) {
            y.extend(net.incr_preset(p));
        }
    } else {
        y = net.transitions_of(Player::Two).collect();
    }
    y.extend(interest.iter().copied());

    let x = saturate(net, m, &y);
    if !en1.intersection(&x).all(|&t| syntactic_safe(net, t)) {
        return full(StubbornReason::UnsafeFull);
    }
    StubbornResult { stub: x, reason: StubbornReason::Saturated, early_terminate }
}

fn enabled_set(net: &PetriNetGame, m: &Marking) -> BTreeSet<TransId> {
    let (mut en1, en2) = net.enabled(m);
    en1.extend(en2);
    en1
}

#[cfg(test)]
mod tests {
    use super::*;
    use petri_game::fixtures::algorithm_example;
    use petri_game::NetBuilder;
    use query_logic::parse_query;

    #[test]
    fn safe_when_no_opponent() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let q = b.place("q");
        let t = b.transition("t", Player::One);
        b.arc_in(p, t, 1).arc_out(t, q, 1);
        let net = b.build().unwrap();
        assert!(syntactic_safe(&net, t));
    }

    #[test]
    fn feeding_the_opponent_is_unsafe() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let q = b.place("q");
        let t = b.transition("t", Player::One);
        let u = b.transition("u", Player::Two);
        b.arc_in(p, t, 1).arc_out(t, q, 1).arc_in(q, u, 1);
        let net = b.build().unwrap();
        assert!(!syntactic_safe(&net, t));
    }

    #[test]
    fn draining_an_inhibitor_place_is_unsafe() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let t = b.transition("t", Player::One);
        let u = b.transition("u", Player::Two);
        b.arc_in(p, t, 1).inhibitor(p, u, 1);
        let net = b.build().unwrap();
        assert!(!syntactic_safe(&net, t));
    }

    #[test]
    fn saturate_examples() {
        let ex = algorithm_example();
        assert_eq!(saturate(&ex.net, &ex.m0, &BTreeSet::new()), BTreeSet::new());
        // t2 is blocked on p3 (p1 is well stocked), so only the p3
        // producer t3 joins; t3 is enabled but detaches from nothing.
        let y = [ex.t2].into_iter().collect();
        assert_eq!(
            saturate(&ex.net, &ex.m0, &y),
            [ex.t2, ex.t3].into_iter().collect()
        );
    }

    #[test]
    fn saturate_is_monotone_and_idempotent() {
        let ex = algorithm_example();
        let all: Vec<TransId> = ex.net.transitions().collect();
        for bits in 0..(1u32 << all.len()) {
            let y: BTreeSet<TransId> = all
                .iter()
                .enumerate()
                .filter(|(i, _)| bits & (1 << i) != 0)
                .map(|(_, &t)| t)
                .collect();
            let x = saturate(&ex.net, &ex.m0, &y);
            assert!(y.is_subset(&x));
            assert_eq!(saturate(&ex.net, &ex.m0, &x), x);
        }
    }

    #[test]
    fn mixed_marking_returns_everything() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let t = b.transition("t", Player::One);
        let u = b.transition("u", Player::Two);
        b.arc_in(p, t, 1);
        b.arc_in(p, u, 1);
        let net = b.build().unwrap();
        let phi = parse_query(&net, "p = 0").unwrap();
        let r = stubborn_set(&net, &Marking::new(vec![1]), &phi);
        assert_eq!(r.reason, StubbornReason::MixedFull);
        assert_eq!(r.stub, net.transitions().collect());
    }

    #[test]
    fn deadlocked_marking_returns_everything() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let t = b.transition("t", Player::One);
        b.arc_in(p, t, 1);
        let net = b.build().unwrap();
        let phi = parse_query(&net, "p >= 1").unwrap();
        let r = stubborn_set(&net, &Marking::new(vec![0]), &phi);
        assert_eq!(r.reason, StubbornReason::DeadlockedFull);
        assert!(r.early_terminate);
    }

    #[test]
    fn player2_goal_reach_forces_visibility_bailout() {
        // A diamond of two player 2 steps towards the goal place.
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let goal = b.place("g");
        let a = b.transition("a", Player::Two);
        let c = b.transition("c", Player::Two);
        b.arc_in(p, a, 1).arc_out(a, goal, 1);
        b.arc_in(p, c, 1);
        let net = b.build().unwrap();
        let phi = parse_query(&net, "g >= 1").unwrap();
        let r = stubborn_set(&net, &Marking::new(vec![1, 0]), &phi);
        assert_eq!(r.reason, StubbornReason::VisibilityFull);
        assert!(!r.early_terminate);
        let ablated = stubborn_set_with(
            &net,
            &Marking::new(vec![1, 0]),
            &phi,
            StubbornOptions { skip_visibility_check: true },
        );
        assert_eq!(ablated.reason, StubbornReason::Saturated);
        let _ = a;
        let _ = c;
    }

    #[test]
    fn player1_marking_keeps_opponent_and_interesting_closure() {
        let ex = algorithm_example();
        // Make a player 1 variant of the example net: relabel owners.
        let mut b = NetBuilder::new();
        let p1 = b.place("p1");
        let _p2 = b.place("p2");
        let p3 = b.place("p3");
        let p4 = b.place("p4");
        let t1 = b.transition("t1", Player::One);
        let t2 = b.transition("t2", Player::One);
        let t3 = b.transition("t3", Player::One);
        b.arc_in(p1, t1, 1).arc_out(t1, _p2, 1);
        b.arc_in(p1, t2, 2).arc_in(p3, t2, 1).arc_out(t2, p4, 1);
        b.arc_out(t3, p3, 1);
        let net = b.build().unwrap();
        let phi = parse_query(&net, "p4 >= 1").unwrap();
        let r = stubborn_set(&net, &ex.m0, &phi);
        // No player 2 transitions: Y starts empty, the goal pulls in
        // t2, saturation adds its enabler t3.
        assert_eq!(r.reason, StubbornReason::Saturated);
        assert_eq!(r.stub, [t2, t3].into_iter().collect());
        assert!(!r.early_terminate);
    }
}
