//! Hand-encoded small game graphs used across the unit tests.

use crate::glts::{ExplicitGlts, GltsBuilder, Player};

/// Seven states s1..s7 (ids 0..6), player 1 actions a=0, b=1, c=2 and a
/// single player 2 action d=3; goal {s6}. s5 is mixed, s7 a deadlock.
pub fn safe_interesting_figure() -> ExplicitGlts {
    GltsBuilder::new(7, vec![Player::One, Player::One, Player::One, Player::Two])
        .edge(0, 0, 1) // s1 -a-> s2
        .unwrap()
        .edge(1, 1, 2) // s2 -b-> s3
        .unwrap()
        .edge(0, 2, 3) // s1 -c-> s4
        .unwrap()
        .edge(3, 0, 4) // s4 -a-> s5
        .unwrap()
        .edge(4, 1, 5) // s5 -b-> s6
        .unwrap()
        .edge(2, 2, 5) // s3 -c-> s6
        .unwrap()
        .edge(4, 3, 6) // s5 -d-> s7
        .unwrap()
        .goal_state(5)
        .unwrap()
        .build()
}

/// Ten states s1..s10 (ids 0..9), player 1 actions a=0, b=1, c=2, d=3 and
/// player 2 action e=4; goal {s8}. The stubborn set {a, c} at s1 is a
/// stable choice.
pub fn stable_reduction_figure() -> ExplicitGlts {
    GltsBuilder::new(
        10,
        vec![
            Player::One,
            Player::One,
            Player::One,
            Player::One,
            Player::Two,
        ],
    )
    .edge(0, 0, 1) // s1 -a-> s2
    .unwrap()
    .edge(0, 1, 2) // s1 -b-> s3
    .unwrap()
    .edge(0, 2, 3) // s1 -c-> s4
    .unwrap()
    .edge(1, 1, 4) // s2 -b-> s5
    .unwrap()
    .edge(1, 2, 5) // s2 -c-> s6
    .unwrap()
    .edge(2, 0, 4) // s3 -a-> s5
    .unwrap()
    .edge(2, 2, 6) // s3 -c-> s7
    .unwrap()
    .edge(3, 0, 5) // s4 -a-> s6
    .unwrap()
    .edge(3, 1, 6) // s4 -b-> s7
    .unwrap()
    .edge(4, 2, 7) // s5 -c-> s8
    .unwrap()
    .edge(5, 1, 7) // s6 -b-> s8
    .unwrap()
    .edge(6, 0, 7) // s7 -a-> s8
    .unwrap()
    .edge(6, 3, 8) // s7 -d-> s9
    .unwrap()
    .edge(8, 4, 9) // s9 -e-> s10
    .unwrap()
    .goal_state(7)
    .unwrap()
    .build()
}

/// The diamond with only player 2 actions a=0, b=1; goal {s2}. Pruning b
/// at s1 is unsound without the visibility condition.
pub fn condition_v_figure() -> ExplicitGlts {
    GltsBuilder::new(4, vec![Player::Two, Player::Two])
        .edge(0, 0, 1) // s1 -a-> s2
        .unwrap()
        .edge(0, 1, 2) // s1 -b-> s3
        .unwrap()
        .edge(1, 1, 3) // s2 -b-> s4
        .unwrap()
        .edge(2, 0, 3) // s3 -a-> s4
        .unwrap()
        .goal_state(1)
        .unwrap()
        .build()
}
