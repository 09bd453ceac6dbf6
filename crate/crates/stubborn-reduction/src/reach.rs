use std::collections::BTreeMap;

use petri_game::{Marking, PetriNetGame, Player};
use query_logic::{nnf, Formula};

use crate::interval::{lusat, ExtInt, IntervalEnv};

/// Over-approximates whether some sequence of player 2 transitions
/// fired from `m` can reach a marking satisfying `phi`. A `false`
/// answer is definitive; `true` may be spurious.
///
/// The returned environment bounds every marking reachable from `m`
/// through player 2 transitions: lb(p) <= M'(p) <= ub(p), and ub_t
/// caps how often each player 2 transition can fire.
pub fn reach_overapprox(net: &PetriNetGame, m: &Marking, phi: &Formula) -> (bool, IntervalEnv) {
    let t2: Vec<_> = net.transitions_of(Player::Two).collect();

    let mut ub: Vec<ExtInt> = vec![ExtInt::PosInf; net.num_places()];
    let mut ub_t: BTreeMap<_, _> = t2.iter().map(|&t| (t, ExtInt::PosInf)).collect();

    // Places no player 2 producer can grow start out pinned to M(p).
    for p in net.places() {
        let non_increasable = net
            .preset_of_place(p)
            .into_iter()
            .filter(|&t| net.player_of(t) == Player::Two)
            .all(|t| net.weight_in(p, t) >= net.weight_out(t, p));
        if non_increasable {
            ub[p.0 as usize] = ExtInt::Fin(m.tokens(p) as i64);
        }
    }

    loop {
        let before = (ub.clone(), ub_t.clone());
        for &t in &t2 {
            // Every firing of t drains some decreasing pre-place, so
            // the smallest drained budget caps the firing count.
            let cap = net
                .decr_preset(t)
                .into_iter()
                .map(|p| {
                    let diff = net.weight_in(p, t) - net.weight_out(t, p);
                    ub[p.0 as usize].div_floor(diff)
                })
                .min()
                .unwrap_or(ExtInt::PosInf);
            ub_t.insert(t, cap);
        }
        for p in net.places() {
            let mut total = ExtInt::Fin(m.tokens(p) as i64);
            for &t in &t2 {
                let gain = net.weight_out(t, p) as i64 - net.weight_in(p, t) as i64;
                if net.weight_out(t, p) > 0 && gain > 0 {
                    total = total.add(ub_t[&t].mul(ExtInt::Fin(gain)));
                }
            }
            ub[p.0 as usize] = total;
        }
        if (ub.clone(), ub_t.clone()) == before {
            break;
        }
    }

    let lb: Vec<u64> = net
        .places()
        .map(|p| {
            let mut loss = ExtInt::Fin(0);
            for &t in &t2 {
                let w_in = net.weight_in(p, t) as i64;
                let w_out = net.weight_out(t, p) as i64;
                if w_in > w_out {
                    loss = loss.add(ub_t[&t].mul(ExtInt::Fin(w_in - w_out)));
                }
            }
            match ExtInt::Fin(m.tokens(p) as i64).sub(loss) {
                ExtInt::Fin(v) if v > 0 => v as u64,
                _ => 0,
            }
        })
        .collect();

    let env = IntervalEnv { lb, ub, ub_t };
    let verdict = lusat(&env, net, &nnf(phi)).expect("nnf output is in NNF");
    (verdict, env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use petri_game::fixtures::algorithm_example;
    use petri_game::NetBuilder;
    use query_logic::parse_query;

    #[test]
    fn worked_example_bounds() {
        let ex = algorithm_example();
        let phi = parse_query(&ex.net, "p4 >= 1").unwrap();
        let (reachable, env) = reach_overapprox(&ex.net, &ex.m0, &phi);
        assert!(reachable);
        assert_eq!(env.ub_place(ex.p1), ExtInt::Fin(3));
        assert_eq!(env.ub_place(ex.p2), ExtInt::Fin(3));
        assert_eq!(env.ub_place(ex.p3), ExtInt::PosInf);
        assert_eq!(env.ub_place(ex.p4), ExtInt::Fin(1));
        assert_eq!(env.ub_t[&ex.t1], ExtInt::Fin(3));
        assert_eq!(env.ub_t[&ex.t2], ExtInt::Fin(1));
        assert_eq!(env.ub_t[&ex.t3], ExtInt::PosInf);
        assert_eq!(env.lb, vec![0, 0, 0, 0]);
    }

    #[test]
    fn bound_excludes_two_tokens_in_sink() {
        let ex = algorithm_example();
        let phi = parse_query(&ex.net, "p4 >= 2").unwrap();
        let (reachable, _) = reach_overapprox(&ex.net, &ex.m0, &phi);
        assert!(!reachable);
    }

    #[test]
    fn player1_only_net_cannot_move() {
        let mut b = NetBuilder::new();
        let p = b.place("p");
        let q = b.place("q");
        let t = b.transition("t", Player::One);
        b.arc_in(p, t, 1).arc_out(t, q, 1);
        let net = b.build().unwrap();
        let m = Marking::new(vec![1, 0]);
        let phi = parse_query(&net, "q >= 1").unwrap();
        let (reachable, env) = reach_overapprox(&net, &m, &phi);
        assert!(!reachable);
        // No player 2 transitions: intervals collapse onto the marking.
        assert_eq!(env.lb, vec![1, 0]);
        assert_eq!(env.ub, vec![ExtInt::Fin(1), ExtInt::Fin(0)]);
    }
}
