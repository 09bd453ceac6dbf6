use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use petri_game::{Marking, PetriNetGame, PlaceId, TransId};
use query_logic::{CmpOp, Expr, Formula};

/// Integer extended with both infinities, for expression bounds.
/// Place upper bounds only ever use `Fin(n >= 0)` and `PosInf`.
///
/// Arithmetic conventions (each case is exercised in the unit tests):
///   x + ∞ = ∞ and x + (-∞) = -∞ for finite x;
///   ∞ + ∞ = ∞ and (-∞) + (-∞) = -∞ (∞ + (-∞) cannot arise: lower
///   bounds are never +∞ and upper bounds never -∞);
///   0 · (±∞) = 0; otherwise ±∞ · x follows the sign of x;
///   ⌊∞ / k⌋ = ∞ for k ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub fn add(self, other: ExtInt) -> ExtInt {
        use ExtInt::*;
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a + b),
            (PosInf, NegInf) | (NegInf, PosInf) => {
                unreachable!("opposite infinities never meet in interval bounds")
            }
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
        }
    }

    pub fn neg(self) -> ExtInt {
        match self {
            ExtInt::NegInf => ExtInt::PosInf,
            ExtInt::Fin(a) => ExtInt::Fin(-a),
            ExtInt::PosInf => ExtInt::NegInf,
        }
    }

    pub fn sub(self, other: ExtInt) -> ExtInt {
        self.add(other.neg())
    }

    pub fn mul(self, other: ExtInt) -> ExtInt {
        use ExtInt::*;
        let sign = |x: ExtInt| match x {
            NegInf => -1,
            Fin(v) => v.signum(),
            PosInf => 1,
        };
        match (self, other) {
            (Fin(a), Fin(b)) => Fin(a * b),
            (a, b) => match sign(a) * sign(b) {
                0 => Fin(0),
                s if s > 0 => PosInf,
                _ => NegInf,
            },
        }
    }

    /// Floor division by a positive finite divisor.
    pub fn div_floor(self, k: u64) -> ExtInt {
        assert!(k >= 1);
        match self {
            ExtInt::Fin(a) => ExtInt::Fin(a.div_euclid(k as i64)),
            inf => inf,
        }
    }

    pub fn as_finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(a) => Some(a),
            _ => None,
        }
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtInt::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(a) => write!(f, "{a}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

/// Token-count intervals per place plus firing-count upper bounds for
/// the player 2 transitions, as produced by the reach
/// over-approximation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalEnv {
    pub lb: Vec<u64>,
    pub ub: Vec<ExtInt>,
    pub ub_t: BTreeMap<TransId, ExtInt>,
}

impl IntervalEnv {
    /// Degenerate intervals pinning every place to its count in `m`.
    pub fn exact(m: &Marking) -> IntervalEnv {
        IntervalEnv {
            lb: m.as_slice().to_vec(),
            ub: m.as_slice().iter().map(|&v| ExtInt::Fin(v as i64)).collect(),
            ub_t: BTreeMap::new(),
        }
    }

    pub fn lb_place(&self, p: PlaceId) -> u64 {
        self.lb[p.0 as usize]
    }

    pub fn ub_place(&self, p: PlaceId) -> ExtInt {
        self.ub[p.0 as usize]
    }

    fn lb_expr(&self, e: &Expr) -> ExtInt {
        match e {
            Expr::Const(c) => ExtInt::Fin(*c as i64),
            Expr::Place(p) => ExtInt::Fin(self.lb_place(*p) as i64),
            Expr::Add(a, b) => self.lb_expr(a).add(self.lb_expr(b)),
            Expr::Sub(a, b) => self.lb_expr(a).sub(self.ub_expr(b)),
            Expr::Mul(a, b) => *self.products(a, b).iter().min().unwrap(),
        }
    }

    fn ub_expr(&self, e: &Expr) -> ExtInt {
        match e {
            Expr::Const(c) => ExtInt::Fin(*c as i64),
            Expr::Place(p) => self.ub_place(*p),
            Expr::Add(a, b) => self.ub_expr(a).add(self.ub_expr(b)),
            Expr::Sub(a, b) => self.ub_expr(a).sub(self.lb_expr(b)),
            Expr::Mul(a, b) => *self.products(a, b).iter().max().unwrap(),
        }
    }

    fn products(&self, a: &Expr, b: &Expr) -> [ExtInt; 4] {
        let (la, ua) = (self.lb_expr(a), self.ub_expr(a));
        let (lb, ub) = (self.lb_expr(b), self.ub_expr(b));
        [la.mul(lb), la.mul(ub), ua.mul(lb), ua.mul(ub)]
    }

    pub fn bounds(&self, e: &Expr) -> (ExtInt, ExtInt) {
        (self.lb_expr(e), self.ub_expr(e))
    }
}

/// The formula contains a negation somewhere other than directly on a
/// transition or deadlock atom, so the interval tables do not apply.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("formula is not in negation normal form")]
pub struct NotNnf;

fn trans_maybe_enabled(env: &IntervalEnv, net: &PetriNetGame, t: TransId) -> bool {
    net.preset_of_trans(t)
        .into_iter()
        .all(|p| env.ub_place(p) >= ExtInt::Fin(net.weight_in(p, t) as i64))
        && net
            .inhib_preset(t)
            .into_iter()
            .all(|p| env.lb_place(p) < net.inhibitor(p, t).unwrap())
}

fn trans_maybe_disabled(env: &IntervalEnv, net: &PetriNetGame, t: TransId) -> bool {
    net.preset_of_trans(t)
        .into_iter()
        .any(|p| env.lb_place(p) < net.weight_in(p, t))
        || net
            .inhib_preset(t)
            .into_iter()
            .any(|p| env.ub_place(p) >= ExtInt::Fin(net.inhibitor(p, t).unwrap() as i64))
}

/// Can some marking inside the interval range satisfy `phi`? Sound but
/// not complete. Expects `phi` in negation normal form.
pub fn lusat(env: &IntervalEnv, net: &PetriNetGame, phi: &Formula) -> Result<bool, NotNnf> {
    Ok(match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Trans(t) => trans_maybe_enabled(env, net, *t),
        // Some marking in range can be dead iff every transition can
        // be disabled somewhere in range.
        Formula::Deadlock => net.transitions().all(|t| trans_maybe_disabled(env, net, t)),
        Formula::Cmp(a, op, b) => {
            let (la, ua) = env.bounds(a);
            let (lb, ub) = env.bounds(b);
            match op {
                CmpOp::Lt => la < ub,
                CmpOp::Le => la <= ub,
                CmpOp::Eq => la.max(lb) <= ua.min(ub),
                CmpOp::Ne => !(la == lb && la == ua && la == ub),
                CmpOp::Ge => ua >= lb,
                CmpOp::Gt => ua > lb,
            }
        }
        Formula::And(a, b) => lusat(env, net, a)? && lusat(env, net, b)?,
        Formula::Or(a, b) => lusat(env, net, a)? || lusat(env, net, b)?,
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Trans(t) => trans_maybe_disabled(env, net, *t),
            Formula::Deadlock => net.transitions().any(|t| trans_maybe_enabled(env, net, t)),
            _ => return Err(NotNnf),
        },
    })
}
