use std::collections::BTreeSet;

use petri_game::{Marking, PetriNetGame, TransId};

use crate::ast::{eval_expr, sat, CmpOp, Expr, Formula};

/// Transitions whose firing can increase resp. decrease the value of
/// `e`. Marking independent for this expression grammar; the marking
/// parameter is kept so call sites read like the walk-based lemma
/// statements they are tested against.
pub fn incr_decr(
    net: &PetriNetGame,
    _m: &Marking,
    e: &Expr,
) -> (BTreeSet<TransId>, BTreeSet<TransId>) {
    match e {
        Expr::Const(_) => (BTreeSet::new(), BTreeSet::new()),
        Expr::Place(p) => (net.incr_preset(*p), net.decr_postset(*p)),
        Expr::Add(a, b) => {
            let (ia, da) = incr_decr(net, _m, a);
            let (ib, db) = incr_decr(net, _m, b);
            (&ia | &ib, &da | &db)
        }
        Expr::Sub(a, b) => {
            let (ia, da) = incr_decr(net, _m, a);
            let (ib, db) = incr_decr(net, _m, b);
            (&ia | &db, &da | &ib)
        }
        Expr::Mul(a, b) => {
            let (ia, da) = incr_decr(net, _m, a);
            let (ib, db) = incr_decr(net, _m, b);
            let all = &(&ia | &da) | &(&ib | &db);
            (all.clone(), all)
        }
    }
}

fn incr(net: &PetriNetGame, m: &Marking, e: &Expr) -> BTreeSet<TransId> {
    incr_decr(net, m, e).0
}

fn decr(net: &PetriNetGame, m: &Marking, e: &Expr) -> BTreeSet<TransId> {
    incr_decr(net, m, e).1
}

/// Transitions that could help make a currently-enabled `t` disabled:
/// drain its pre-places or feed its inhibitor places.
fn disablers(net: &PetriNetGame, t: TransId) -> BTreeSet<TransId> {
    let mut out = BTreeSet::new();
    for p in net.preset_of_trans(t) {
        out.extend(net.decr_postset(p));
    }
    for p in net.inhib_preset(t) {
        out.extend(net.incr_preset(p));
    }
    out
}

/// An over-approximation of the transitions that any path from `M` to
/// a `phi`-satisfying marking must use. Empty when `M` already
/// satisfies `phi`. Expects `phi` in negation normal form. The
/// `safe_oracle` answers whether a transition is safe at `M`; it
/// steers only the conjunction rule.
pub fn interesting(
    net: &PetriNetGame,
    m: &Marking,
    phi: &Formula,
    safe_oracle: &dyn Fn(TransId) -> bool,
) -> BTreeSet<TransId> {
    if sat(net, m, phi) {
        return BTreeSet::new();
    }
    match phi {
        Formula::True | Formula::False => BTreeSet::new(),
        Formula::Deadlock => {
            // Some enabled transition must go away; aim at the
            // lowest-id one.
            let t = net
                .transitions()
                .find(|&t| net.is_enabled(m, t))
                .expect("not a deadlock, some transition is enabled");
            let mut out = disablers(net, t);
            out.insert(t);
            out
        }
        Formula::Trans(t) => {
            // t is disabled; fix the lowest-id token-deficient
            // pre-place if any, otherwise the lowest-id violated
            // inhibitor place.
            let deficient = net
                .preset_of_trans(*t)
                .into_iter()
                .find(|&p| m.tokens(p) < net.weight_in(p, *t));
            if let Some(p) = deficient {
                return net.incr_preset(p);
            }
            let violated = net
                .inhib_preset(*t)
                .into_iter()
                .find(|&p| m.tokens(p) >= net.inhibitor(p, *t).unwrap())
                .expect("t disabled without deficient place must be inhibited");
            net.decr_postset(violated)
        }
        Formula::Cmp(a, op, b) => match op {
            CmpOp::Lt | CmpOp::Le => &decr(net, m, a) | &incr(net, m, b),
            CmpOp::Gt | CmpOp::Ge => &incr(net, m, a) | &decr(net, m, b),
            CmpOp::Eq => {
                if eval_expr(m, a) > eval_expr(m, b) {
                    &decr(net, m, a) | &incr(net, m, b)
                } else {
                    &incr(net, m, a) | &decr(net, m, b)
                }
            }
            CmpOp::Ne => {
                let (ia, da) = incr_decr(net, m, a);
                let (ib, db) = incr_decr(net, m, b);
                &(&ia | &da) | &(&ib | &db)
            }
        },
        Formula::And(f1, f2) => {
            if sat(net, m, f2) {
                return interesting(net, m, f1, safe_oracle);
            }
            if sat(net, m, f1) {
                return interesting(net, m, f2, safe_oracle);
            }
            let i1 = interesting(net, m, f1, safe_oracle);
            if i1.iter().all(|&t| safe_oracle(t)) {
                return i1;
            }
            let i2 = interesting(net, m, f2, safe_oracle);
            if i2.iter().all(|&t| safe_oracle(t)) {
                return i2;
            }
            if i1.len() <= i2.len() {
                i1
            } else {
                i2
            }
        }
        Formula::Or(f1, f2) => {
            &interesting(net, m, f1, safe_oracle) | &interesting(net, m, f2, safe_oracle)
        }
        Formula::Not(inner) => match inner.as_ref() {
            // ¬t holds once t becomes disabled.
            Formula::Trans(t) => disablers(net, *t),
            // ¬deadlock can never start holding later if it fails now:
            // the marking is dead, nothing fires.
            Formula::Deadlock => BTreeSet::new(),
            other => {
                debug_assert!(false, "formula not in NNF: not({other:?})");
                interesting(net, m, &crate::ast::nnf(phi), safe_oracle)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use petri_game::fixtures::{algorithm_example, AlgorithmExample};

    fn all_safe(_: TransId) -> bool {
        true
    }

    fn none_safe(_: TransId) -> bool {
        false
    }

    #[test]
    fn incr_decr_on_example_net() {
        let AlgorithmExample { net, m0, p1, p2, p4, t1, t2, .. } = algorithm_example();
        let diff = Expr::Sub(Box::new(Expr::Place(p1)), Box::new(Expr::Place(p4)));
        let (i, d) = incr_decr(&net, &m0, &diff);
        assert!(i.is_empty());
        assert_eq!(d, [t1, t2].into_iter().collect());

        assert_eq!(
            incr_decr(&net, &m0, &Expr::Const(7)),
            (BTreeSet::new(), BTreeSet::new())
        );

        let prod = Expr::Mul(Box::new(Expr::Place(p2)), Box::new(Expr::Place(p4)));
        let (i, d) = incr_decr(&net, &m0, &prod);
        let both: BTreeSet<TransId> = [t1, t2].into_iter().collect();
        assert_eq!(i, both);
        assert_eq!(d, both);
    }

    #[test]
    fn satisfied_formula_has_no_interesting_transitions() {
        let AlgorithmExample { net, m0, p1, .. } = algorithm_example();
        let phi = Formula::Cmp(Expr::Place(p1), CmpOp::Ge, Expr::Const(1));
        assert!(interesting(&net, &m0, &phi, &all_safe).is_empty());
    }

    #[test]
    fn comparison_goal_targets_producers() {
        let AlgorithmExample { net, m0, p4, t2, .. } = algorithm_example();
        let phi = Formula::Cmp(Expr::Place(p4), CmpOp::Ge, Expr::Const(1));
        assert_eq!(
            interesting(&net, &m0, &phi, &all_safe),
            [t2].into_iter().collect()
        );
    }

    #[test]
    fn deadlock_goal_aims_at_lowest_enabled_transition() {
        let AlgorithmExample { net, m0, t1, t2, .. } = algorithm_example();
        assert_eq!(
            interesting(&net, &m0, &Formula::Deadlock, &all_safe),
            [t1, t2].into_iter().collect()
        );
    }

    #[test]
    fn conjunction_skips_already_satisfied_side() {
        let AlgorithmExample { net, m0, p1, p4, t2, .. } = algorithm_example();
        let sat_side = Formula::Cmp(Expr::Place(p1), CmpOp::Ge, Expr::Const(1));
        let unsat_side = Formula::Cmp(Expr::Place(p4), CmpOp::Ge, Expr::Const(1));
        let expect: BTreeSet<TransId> = [t2].into_iter().collect();
        let lhs = Formula::And(Box::new(sat_side.clone()), Box::new(unsat_side.clone()));
        assert_eq!(interesting(&net, &m0, &lhs, &none_safe), expect);
        let rhs = Formula::And(Box::new(unsat_side), Box::new(sat_side));
        assert_eq!(interesting(&net, &m0, &rhs, &none_safe), expect);
    }

    #[test]
    fn disabled_transition_goal_feeds_deficient_place() {
        let AlgorithmExample { net, m0, t2, t3, .. } = algorithm_example();
        // t2 lacks a token in p3 (p1 holds plenty); only t3 feeds p3.
        assert_eq!(
            interesting(&net, &m0, &Formula::Trans(t2), &all_safe),
            [t3].into_iter().collect()
        );
    }
}
