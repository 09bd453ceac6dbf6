//! Weighted Petri net games with inhibitor arcs: structure, firing
//! semantics, structural pre/post/increase/decrease sets, and bounded
//! unfolding into an explicit GLTS.

mod net;
mod unfold;

pub mod fixtures;

pub use net::{
    FireError, Marking, NetBuilder, NetError, PetriNetGame, PlaceId, StructuralSets, TransId,
};
pub use unfold::{action_to_trans, UnfoldError, Unfolding};

pub use glts_core::Player;
