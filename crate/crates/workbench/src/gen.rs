use petri_game::{Marking, NetBuilder, Player};
use query_logic::parse_query;
use thiserror::Error;

use crate::model::ModelFile;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("chain length must be at least 1")]
    ChainTooShort,
    #[error("nim needs at least 1 allowed move per turn")]
    NimNoMoves,
    #[error("nim losing threshold must be at least 2")]
    NimThresholdTooLow,
    #[error("workflow needs at least 1 stage")]
    WorkflowTooShort,
}

fn finish(b: NetBuilder, init: Vec<(petri_game::PlaceId, u64)>, query: &str) -> ModelFile {
    let net = b.build().expect("generated net is well formed");
    let mut initial = Marking::zero(net.num_places());
    for (p, v) in init {
        initial.set(p, v);
    }
    let query = parse_query(&net, query).expect("generated query parses");
    ModelFile { net, initial, query: Some(query) }
}

/// `n` independent player 1 steps, each moving one token from its own
/// source place to its own sink; the goal needs every sink filled.
/// Interleaving all steps visits 2^n markings, serializing them n+1.
pub fn gen_chain(n: u32) -> Result<ModelFile, GenError> {
    if n == 0 {
        return Err(GenError::ChainTooShort);
    }
    let mut b = NetBuilder::new();
    let mut init = Vec::new();
    let mut goals = Vec::new();
    for i in 0..n {
        let src = b.place(format!("src{i}"));
        let done = b.place(format!("done{i}"));
        let t = b.transition(format!("step{i}"), Player::One);
        b.arc_in(src, t, 1);
        b.arc_out(t, done, 1);
        init.push((src, 1));
        goals.push(format!("done{i} >= 1"));
    }
    Ok(finish(b, init, &goals.join(" and ")))
}

/// Misere counting game: players alternately add 1..=k tokens to a
/// stack and whoever reaches `s` loses. Player 1 moves first; the
/// goal marks player 2's defeat. `detect` fires on player 1's turn
/// once the stack has hit `s` (player 2 must take it, losing), while
/// a crossing by player 1 leaves a non-goal deadlock.
pub fn gen_nim(k: u32, s: u64) -> Result<ModelFile, GenError> {
    if k == 0 {
        return Err(GenError::NimNoMoves);
    }
    if s < 2 {
        return Err(GenError::NimThresholdTooLow);
    }
    let mut b = NetBuilder::new();
    let stack = b.place("stack");
    let turn1 = b.place("turn1");
    let turn2 = b.place("turn2");
    let p2lost = b.place("p2lost");
    for i in 1..=k {
        let t = b.transition(format!("add1_{i}"), Player::One);
        b.arc_in(turn1, t, 1);
        b.arc_out(t, turn2, 1);
        b.arc_out(t, stack, i as u64);
        b.inhibitor(stack, t, s);
    }
    for i in 1..=k {
        let t = b.transition(format!("add2_{i}"), Player::Two);
        b.arc_in(turn2, t, 1);
        b.arc_out(t, turn1, 1);
        b.arc_out(t, stack, i as u64);
        b.inhibitor(stack, t, s);
    }
    let detect = b.transition("detect", Player::Two);
    b.arc_in(turn1, detect, 1);
    b.arc_in(stack, detect, s);
    b.arc_out(detect, stack, s);
    b.arc_out(detect, p2lost, 1);
    Ok(finish(b, vec![(turn1, 1)], "p2lost >= 1"))
}

/// `n` binary choices made by player 2, then player 1 assembles the
/// chosen parts in any order; player 1 always wins. The assembly
/// steps commute, so the reduced run serializes them.
pub fn gen_choice_workflow(n: u32) -> Result<ModelFile, GenError> {
    if n == 0 {
        return Err(GenError::WorkflowTooShort);
    }
    let mut b = NetBuilder::new();
    let sel: Vec<_> = (0..n).map(|i| b.place(format!("sel{i}"))).collect();
    let configured = b.place("configured");
    let mut goals = Vec::new();
    for i in 0..n {
        let next = if i + 1 < n { sel[i as usize + 1] } else { configured };
        for side in ["a", "b"] {
            let feat = b.place(format!("feat{i}{side}"));
            let done = b.place(format!("done{i}{side}"));
            let pick = b.transition(format!("pick{i}{side}"), Player::Two);
            b.arc_in(sel[i as usize], pick, 1);
            b.arc_out(pick, feat, 1);
            b.arc_out(pick, next, 1);
            let asm = b.transition(format!("asm{i}{side}"), Player::One);
            b.arc_in(feat, asm, 1);
            b.arc_in(configured, asm, 1);
            b.arc_out(asm, configured, 1);
            b.arc_out(asm, done, 1);
        }
        goals.push(format!("(done{i}a >= 1 or done{i}b >= 1)"));
    }
    Ok(finish(b, vec![(sel[0], 1)], &goals.join(" and ")))
}
