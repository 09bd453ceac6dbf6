//! Small hand-built nets shared by tests across the workspace.

use crate::net::{Marking, NetBuilder, PetriNetGame, PlaceId, TransId};
use glts_core::Player;

/// The four-place, three-transition net used to exercise the reach
/// over-approximation: t1 moves a token p1 -> p2, t2 consumes two from
/// p1 plus one from p3 and produces into p4, t3 produces into p3 from
/// nothing. All transitions belong to player 2; initially p1 holds 3.
pub struct AlgorithmExample {
    pub net: PetriNetGame,
    pub m0: Marking,
    pub p1: PlaceId,
    pub p2: PlaceId,
    pub p3: PlaceId,
    pub p4: PlaceId,
    pub t1: TransId,
    pub t2: TransId,
    pub t3: TransId,
}

pub fn algorithm_example() -> AlgorithmExample {
    let mut b = NetBuilder::new();
    let p1 = b.place("p1");
    let p2 = b.place("p2");
    let p3 = b.place("p3");
    let p4 = b.place("p4");
    let t1 = b.transition("t1", Player::Two);
    let t2 = b.transition("t2", Player::Two);
    let t3 = b.transition("t3", Player::Two);
    b.arc_in(p1, t1, 1).arc_out(t1, p2, 1);
    b.arc_in(p1, t2, 2).arc_in(p3, t2, 1).arc_out(t2, p4, 1);
    b.arc_out(t3, p3, 1);
    let net = b.build().unwrap();
    let m0 = Marking::new(vec![3, 0, 0, 0]);
    AlgorithmExample { net, m0, p1, p2, p3, p4, t1, t2, t3 }
}
