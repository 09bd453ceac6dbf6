use std::fmt;

use petri_game::{Marking, PetriNetGame, PlaceId, TransId};

/// Marking expression: a constant, a place's token count, or an
/// arithmetic combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(u64),
    Place(PlaceId),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl CmpOp {
    pub fn apply(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Ge => a >= b,
            CmpOp::Gt => a > b,
        }
    }

    /// The comparison equivalent to the negation of this one.
    pub fn negated(self) -> CmpOp {
        match self {
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
            CmpOp::Ge => CmpOp::Lt,
            CmpOp::Gt => CmpOp::Le,
        }
    }
}

/// Reachability goal formula over markings of one net.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    /// Enabledness of a transition.
    Trans(TransId),
    Deadlock,
    Cmp(Expr, CmpOp, Expr),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
}

pub fn eval_expr(m: &Marking, e: &Expr) -> i64 {
    match e {
        Expr::Const(c) => *c as i64,
        Expr::Place(p) => m.tokens(*p) as i64,
        Expr::Add(a, b) => eval_expr(m, a) + eval_expr(m, b),
        Expr::Sub(a, b) => eval_expr(m, a) - eval_expr(m, b),
        Expr::Mul(a, b) => eval_expr(m, a) * eval_expr(m, b),
    }
}

pub fn sat(net: &PetriNetGame, m: &Marking, phi: &Formula) -> bool {
    match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Trans(t) => net.is_enabled(m, *t),
        Formula::Deadlock => !net.has_enabled(m),
        Formula::Cmp(a, op, b) => op.apply(eval_expr(m, a), eval_expr(m, b)),
        Formula::And(a, b) => sat(net, m, a) && sat(net, m, b),
        Formula::Or(a, b) => sat(net, m, a) || sat(net, m, b),
        Formula::Not(f) => !sat(net, m, f),
    }
}

/// Negation normal form: negations pushed down to transition and
/// deadlock atoms; negated comparisons are flipped away entirely.
pub fn nnf(phi: &Formula) -> Formula {
    match phi {
        Formula::Not(inner) => nnf_neg(inner),
        Formula::And(a, b) => Formula::And(Box::new(nnf(a)), Box::new(nnf(b))),
        Formula::Or(a, b) => Formula::Or(Box::new(nnf(a)), Box::new(nnf(b))),
        other => other.clone(),
    }
}

fn nnf_neg(phi: &Formula) -> Formula {
    match phi {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Trans(t) => Formula::Not(Box::new(Formula::Trans(*t))),
        Formula::Deadlock => Formula::Not(Box::new(Formula::Deadlock)),
        Formula::Cmp(a, op, b) => Formula::Cmp(a.clone(), op.negated(), b.clone()),
        Formula::And(a, b) => Formula::Or(Box::new(nnf_neg(a)), Box::new(nnf_neg(b))),
        Formula::Or(a, b) => Formula::And(Box::new(nnf_neg(a)), Box::new(nnf_neg(b))),
        Formula::Not(inner) => nnf(inner),
    }
}

/// Renders expressions and formulae back in the query text syntax;
/// binary nodes are parenthesized, so output always re-parses.
pub struct ExprDisplay<'a> {
    pub net: &'a PetriNetGame,
    pub expr: &'a Expr,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr| {
            write!(
                f,
                "({} {op} {})",
                ExprDisplay { net: self.net, expr: a },
                ExprDisplay { net: self.net, expr: b }
            )
        };
        match self.expr {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Place(p) => write!(f, "{}", self.net.place_name(*p)),
            Expr::Add(a, b) => bin(f, a, "+", b),
            Expr::Sub(a, b) => bin(f, a, "-", b),
            Expr::Mul(a, b) => bin(f, a, "*", b),
        }
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
        };
        f.write_str(s)
    }
}

pub struct FormulaDisplay<'a> {
    pub net: &'a PetriNetGame,
    pub formula: &'a Formula,
}

impl<'a> fmt::Display for FormulaDisplay<'a> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |x: &'a Formula| FormulaDisplay { net: self.net, formula: x };
        let ex = |x: &'a Expr| ExprDisplay { net: self.net, expr: x };
        match self.formula {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Trans(t) => write!(f, "en({})", self.net.trans_name(*t)),
            Formula::Deadlock => write!(f, "deadlock"),
            Formula::Cmp(a, op, b) => write!(f, "{} {op} {}", ex(a), ex(b)),
            Formula::And(a, b) => write!(f, "({} and {})", sub(a), sub(b)),
            Formula::Or(a, b) => write!(f, "({} or {})", sub(a), sub(b)),
            Formula::Not(x) => write!(f, "not ({})", sub(x)),
        }
    }
}
