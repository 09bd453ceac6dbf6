use std::collections::BTreeSet;
use std::fmt;

use glts_core::Player;
use thiserror::Error;

/// Index of a place in its net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlaceId(pub u32);

/// Index of a transition in its net.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransId(pub u32);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetError {
    #[error("unknown place id {0}")]
    UnknownPlace(u32),
    #[error("unknown transition id {0}")]
    UnknownTransition(u32),
    #[error("inhibitor weight must be at least 1 (place {place}, transition {trans})")]
    ZeroInhibitor { place: u32, trans: u32 },
    #[error("marking covers {got} places, expected {expected}")]
    MarkingSize { got: usize, expected: usize },
}

/// Why a transition could not fire.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FireError {
    #[error("transition {trans} disabled: place {place} holds {tokens} tokens, needs {required}")]
    MissingTokens {
        trans: u32,
        place: u32,
        tokens: u64,
        required: u64,
    },
    #[error("transition {trans} inhibited: place {place} holds {tokens} tokens, threshold {threshold}")]
    Inhibited {
        trans: u32,
        place: u32,
        tokens: u64,
        threshold: u64,
    },
}

/// A weighted Petri net game with inhibitor arcs. Arc weight 0 means
/// "no arc"; inhibitor weight `None` means "no inhibitor arc".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetriNetGame {
    place_names: Vec<String>,
    trans_names: Vec<String>,
    trans_player: Vec<Player>,
    w_pt: Vec<Vec<u64>>,          // [place][trans]
    w_tp: Vec<Vec<u64>>,          // [trans][place]
    inhib: Vec<Vec<Option<u64>>>, // [place][trans]
}

#[derive(Debug, Clone, Default)]
pub struct NetBuilder {
    place_names: Vec<String>,
    trans_names: Vec<String>,
    trans_player: Vec<Player>,
    arcs_pt: Vec<(u32, u32, u64)>,
    arcs_tp: Vec<(u32, u32, u64)>,
    inhibs: Vec<(u32, u32, u64)>,
}

impl NetBuilder {
    pub fn new() -> Self {
        NetBuilder::default()
    }

    pub fn place(&mut self, name: impl Into<String>) -> PlaceId {
        self.place_names.push(name.into());
        PlaceId(self.place_names.len() as u32 - 1)
    }

    pub fn transition(&mut self, name: impl Into<String>, player: Player) -> TransId {
        self.trans_names.push(name.into());
        self.trans_player.push(player);
        TransId(self.trans_names.len() as u32 - 1)
    }

    /// Arc from a place to a transition (consumption).
    pub fn arc_in(&mut self, p: PlaceId, t: TransId, weight: u64) -> &mut Self {
        self.arcs_pt.push((p.0, t.0, weight));
        self
    }

    /// Arc from a transition to a place (production).
    pub fn arc_out(&mut self, t: TransId, p: PlaceId, weight: u64) -> &mut Self {
        self.arcs_tp.push((t.0, p.0, weight));
        self
    }

    pub fn inhibitor(&mut self, p: PlaceId, t: TransId, weight: u64) -> &mut Self {
        self.inhibs.push((p.0, t.0, weight));
        self
    }

    pub fn build(&self) -> Result<PetriNetGame, NetError> {
        let np = self.place_names.len();
        let nt = self.trans_names.len();
        let mut w_pt = vec![vec![0u64; nt]; np];
        let mut w_tp = vec![vec![0u64; np]; nt];
        let mut inhib = vec![vec![None; nt]; np];
        for &(p, t, w) in &self.arcs_pt {
            if p as usize >= np {
                return Err(NetError::UnknownPlace(p));
            }
            if t as usize >= nt {
                return Err(NetError::UnknownTransition(t));
            }
            w_pt[p as usize][t as usize] = w;
        }
        for &(t, p, w) in &self.arcs_tp {
            if p as usize >= np {
                return Err(NetError::UnknownPlace(p));
            }
            if t as usize >= nt {
                return Err(NetError::UnknownTransition(t));
            }
            w_tp[t as usize][p as usize] = w;
        }
        for &(p, t, w) in &self.inhibs {
            if p as usize >= np {
                return Err(NetError::UnknownPlace(p));
            }
            if t as usize >= nt {
                return Err(NetError::UnknownTransition(t));
            }
            if w == 0 {
                return Err(NetError::ZeroInhibitor { place: p, trans: t });
            }
            inhib[p as usize][t as usize] = Some(w);
        }
        Ok(PetriNetGame {
            place_names: self.place_names.clone(),
            trans_names: self.trans_names.clone(),
            trans_player: self.trans_player.clone(),
            w_pt,
            w_tp,
            inhib,
        })
    }
}

/// A total token assignment over the net's places, in place-id order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Marking(Vec<u64>);

impl Marking {
    pub fn new(tokens: Vec<u64>) -> Self {
        Marking(tokens)
    }

    pub fn zero(num_places: usize) -> Self {
        Marking(vec![0; num_places])
    }

    pub fn tokens(&self, p: PlaceId) -> u64 {
        self.0[p.0 as usize]
    }

    pub fn set(&mut self, p: PlaceId, tokens: u64) {
        self.0[p.0 as usize] = tokens;
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// All structural sets of one place or transition, per the usual
/// preset/postset notation extended with the increasing/decreasing
/// variants and inhibitor arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralSets {
    Place {
        preset: BTreeSet<TransId>,
        postset: BTreeSet<TransId>,
        inhib_postset: BTreeSet<TransId>,
        incr_preset: BTreeSet<TransId>,
        decr_postset: BTreeSet<TransId>,
    },
    Transition {
        preset: BTreeSet<PlaceId>,
        postset: BTreeSet<PlaceId>,
        inhib_preset: BTreeSet<PlaceId>,
        decr_preset: BTreeSet<PlaceId>,
        incr_postset: BTreeSet<PlaceId>,
    },
}

impl PetriNetGame {
    pub fn num_places(&self) -> usize {
        self.place_names.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.trans_names.len()
    }

    pub fn places(&self) -> impl Iterator<Item = PlaceId> {
        (0..self.place_names.len() as u32).map(PlaceId)
    }

    pub fn transitions(&self) -> impl Iterator<Item = TransId> {
        (0..self.trans_names.len() as u32).map(TransId)
    }

    pub fn transitions_of(&self, player: Player) -> impl Iterator<Item = TransId> + '_ {
        self.transitions()
            .filter(move |&t| self.player_of(t) == player)
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.place_names[p.0 as usize]
    }

    pub fn trans_name(&self, t: TransId) -> &str {
        &self.trans_names[t.0 as usize]
    }

    pub fn player_of(&self, t: TransId) -> Player {
        self.trans_player[t.0 as usize]
    }

    pub fn find_place(&self, name: &str) -> Option<PlaceId> {
        self.place_names
            .iter()
            .position(|n| n == name)
            .map(|i| PlaceId(i as u32))
    }

    pub fn find_transition(&self, name: &str) -> Option<TransId> {
        self.trans_names
            .iter()
            .position(|n| n == name)
            .map(|i| TransId(i as u32))
    }

    /// Weight of the arc place -> transition (0 = no arc).
    pub fn weight_in(&self, p: PlaceId, t: TransId) -> u64 {
        self.w_pt[p.0 as usize][t.0 as usize]
    }

    /// Weight of the arc transition -> place (0 = no arc).
    pub fn weight_out(&self, t: TransId, p: PlaceId) -> u64 {
        self.w_tp[t.0 as usize][p.0 as usize]
    }

    /// Inhibitor threshold, `None` when there is no inhibitor arc.
    pub fn inhibitor(&self, p: PlaceId, t: TransId) -> Option<u64> {
        self.inhib[p.0 as usize][t.0 as usize]
    }

    // -- structural sets ---------------------------------------------------

    pub fn preset_of_trans(&self, t: TransId) -> BTreeSet<PlaceId> {
        self.places().filter(|&p| self.weight_in(p, t) > 0).collect()
    }

    pub fn postset_of_trans(&self, t: TransId) -> BTreeSet<PlaceId> {
        self.places().filter(|&p| self.weight_out(t, p) > 0).collect()
    }

    pub fn preset_of_place(&self, p: PlaceId) -> BTreeSet<TransId> {
        self.transitions()
            .filter(|&t| self.weight_out(t, p) > 0)
            .collect()
    }

    pub fn postset_of_place(&self, p: PlaceId) -> BTreeSet<TransId> {
        self.transitions()
            .filter(|&t| self.weight_in(p, t) > 0)
            .collect()
    }

    pub fn inhib_preset(&self, t: TransId) -> BTreeSet<PlaceId> {
        self.places()
            .filter(|&p| self.inhibitor(p, t).is_some())
            .collect()
    }

    pub fn inhib_postset(&self, p: PlaceId) -> BTreeSet<TransId> {
        self.transitions()
            .filter(|&t| self.inhibitor(p, t).is_some())
            .collect()
    }

    /// Transitions whose firing strictly increases the tokens in `p`.
    pub fn incr_preset(&self, p: PlaceId) -> BTreeSet<TransId> {
        self.transitions()
            .filter(|&t| self.weight_out(t, p) > self.weight_in(p, t))
            .collect()
    }

    /// Transitions whose firing strictly decreases the tokens in `p`.
    pub fn decr_postset(&self, p: PlaceId) -> BTreeSet<TransId> {
        self.transitions()
            .filter(|&t| self.weight_in(p, t) > self.weight_out(t, p))
            .collect()
    }

    /// Places whose tokens strictly decrease when `t` fires.
    pub fn decr_preset(&self, t: TransId) -> BTreeSet<PlaceId> {
        self.places()
            .filter(|&p| self.weight_in(p, t) > self.weight_out(t, p))
            .collect()
    }

    /// Places whose tokens strictly increase when `t` fires.
    pub fn incr_postset(&self, t: TransId) -> BTreeSet<PlaceId> {
        self.places()
            .filter(|&p| self.weight_out(t, p) > self.weight_in(p, t))
            .collect()
    }

    pub fn structural_sets_place(&self, p: PlaceId) -> Result<StructuralSets, NetError> {
        if p.0 as usize >= self.num_places() {
            return Err(NetError::UnknownPlace(p.0));
        }
        Ok(StructuralSets::Place {
            preset: self.preset_of_place(p),
            postset: self.postset_of_place(p),
            inhib_postset: self.inhib_postset(p),
            incr_preset: self.incr_preset(p),
            decr_postset: self.decr_postset(p),
        })
    }

    pub fn structural_sets_trans(&self, t: TransId) -> Result<StructuralSets, NetError> {
        if t.0 as usize >= self.num_transitions() {
            return Err(NetError::UnknownTransition(t.0));
        }
        Ok(StructuralSets::Transition {
            preset: self.preset_of_trans(t),
            postset: self.postset_of_trans(t),
            inhib_preset: self.inhib_preset(t),
            decr_preset: self.decr_preset(t),
            incr_postset: self.incr_postset(t),
        })
    }

    // -- firing semantics --------------------------------------------------

    /// Why `t` cannot fire at `m`, or `None` if it is enabled.
    pub fn disabled_reason(&self, m: &Marking, t: TransId) -> Option<FireError> {
        for p in self.places() {
            let need = self.weight_in(p, t);
            if m.tokens(p) < need {
                return Some(FireError::MissingTokens {
                    trans: t.0,
                    place: p.0,
                    tokens: m.tokens(p),
                    required: need,
                });
            }
            if let Some(threshold) = self.inhibitor(p, t) {
                if m.tokens(p) >= threshold {
                    return Some(FireError::Inhibited {
                        trans: t.0,
                        place: p.0,
                        tokens: m.tokens(p),
                        threshold,
                    });
                }
            }
        }
        None
    }

    pub fn is_enabled(&self, m: &Marking, t: TransId) -> bool {
        self.disabled_reason(m, t).is_none()
    }

    /// Enabled transitions split by owner.
    pub fn enabled(&self, m: &Marking) -> (BTreeSet<TransId>, BTreeSet<TransId>) {
        let mut en1 = BTreeSet::new();
        let mut en2 = BTreeSet::new();
        for t in self.transitions() {
            if self.is_enabled(m, t) {
                match self.player_of(t) {
                    Player::One => en1.insert(t),
                    Player::Two => en2.insert(t),
                };
            }
        }
        (en1, en2)
    }

    pub fn has_enabled(&self, m: &Marking) -> bool {
        self.transitions().any(|t| self.is_enabled(m, t))
    }

    pub fn fire(&self, m: &Marking, t: TransId) -> Result<Marking, FireError> {
        if let Some(reason) = self.disabled_reason(m, t) {
            return Err(reason);
        }
        let mut out = m.clone();
        for p in self.places() {
            let v = m.tokens(p) - self.weight_in(p, t) + self.weight_out(t, p);
            out.set(p, v);
        }
        Ok(out)
    }

    pub fn check_marking(&self, m: &Marking) -> Result<(), NetError> {
        if m.len() != self.num_places() {
            Err(NetError::MarkingSize {
                got: m.len(),
                expected: self.num_places(),
            })
        } else {
            Ok(())
        }
    }
}
