//! Petri-level stable reduction machinery: syntactically safe
//! transitions, the lower/upper bound reach over-approximation,
//! interval satisfiability, dependency-closure saturation, and the
//! stubborn-set computation with its early-termination signal.

mod interval;
mod reach;
mod stubborn;

pub use interval::{lusat, ExtInt, IntervalEnv, NotNnf};
pub use reach::reach_overapprox;
pub use stubborn::{
    saturate, stubborn_set, stubborn_set_with, syntactic_safe, StubbornOptions, StubbornReason,
    StubbornResult,
};
