//! Explicit finite game labelled transition systems (GLTS) with a
//! ground-truth game solver and exhaustive checkers for the stable
//! reduction conditions.
//!
//! Everything in this crate works on small, fully enumerated systems and
//! serves as the oracle layer against which the Petri-level engine is
//! validated.

mod glts;
mod solve;
mod stable;
#[cfg(test)]
mod test_figures;

pub use glts::{
    ActionId, ExplicitGlts, GltsBuilder, GltsError, Player, PlayerSel, ReductionMap, StateClass,
    StateId,
};
pub use solve::{SolveResult, Strategy};
pub use stable::{Condition, ConditionReport, Verdict, Witness};
