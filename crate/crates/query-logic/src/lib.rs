//! Goal formulae over Petri net markings: the expression/formula ASTs,
//! satisfaction semantics, negation normal form, increasing/decreasing
//! transition analysis, interesting-transition computation, and the
//! query text parser.

mod analysis;
mod ast;
mod parse;

pub use analysis::{incr_decr, interesting};
pub use ast::{eval_expr, nnf, sat, CmpOp, Expr, ExprDisplay, Formula, FormulaDisplay};
pub use parse::{parse_query, ParseError};
