use std::collections::BTreeMap;
use std::fmt::Write as _;

use glts_core::{ExplicitGlts, GltsBuilder, Player};
use thiserror::Error;

/// A game graph parsed from the text fixture format, keeping the
/// names used in the file.
#[derive(Debug, Clone)]
pub struct NamedGlts {
    pub glts: ExplicitGlts,
    pub state_names: Vec<String>,
    pub action_names: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct GltsParseError {
    pub line: u32,
    pub message: String,
}

fn err<T>(line: u32, message: impl Into<String>) -> Result<T, GltsParseError> {
    Err(GltsParseError { line, message: message.into() })
}

/// Parses the game-graph fixture format: one line per edge,
///
/// ```text
/// <src> <action> p1|p2 <dst>
/// goal: <state> <state> ...
/// ```
///
/// States and actions are arbitrary identifiers numbered in order of
/// first appearance; an action must carry the same owner on every
/// edge. `#` starts a comment.
pub fn parse_glts(text: &str) -> Result<NamedGlts, GltsParseError> {
    let mut state_names: Vec<String> = Vec::new();
    let mut action_names: Vec<String> = Vec::new();
    let mut state_ids: BTreeMap<String, u32> = BTreeMap::new();
    let mut action_ids: BTreeMap<String, (u32, Player)> = BTreeMap::new();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let mut goal: Vec<(u32, u32)> = Vec::new();
    let mut saw_goal = false;

    for (i, raw) in text.lines().enumerate() {
        let no = i as u32 + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut intern_state = |name: &str, names: &mut Vec<String>| -> u32 {
            *state_ids.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() as u32 - 1
            })
        };
        if let Some(rest) = line.strip_prefix("goal:") {
            if saw_goal {
                return err(no, "duplicate goal line");
            }
            saw_goal = true;
            for name in rest.split_whitespace() {
                let s = intern_state(name, &mut state_names);
                goal.push((no, s));
            }
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let [src, action, owner, dst] = words[..] else {
            return err(no, "expected: <src> <action> p1|p2 <dst>");
        };
        let player = match owner {
            "p1" => Player::One,
            "p2" => Player::Two,
            other => return err(no, format!("bad owner '{other}', expected p1 or p2")),
        };
        let s = intern_state(src, &mut state_names);
        let d = intern_state(dst, &mut state_names);
        let a = match action_ids.get(action) {
            Some(&(a, p)) => {
                if p != player {
                    return err(no, format!("action '{action}' changes owner"));
                }
                a
            }
            None => {
                action_names.push(action.to_string());
                let a = action_names.len() as u32 - 1;
                action_ids.insert(action.to_string(), (a, player));
                a
            }
        };
        edges.push((s, a, d));
    }

    let players = action_names
        .iter()
        .map(|n| action_ids[n].1)
        .collect::<Vec<_>>();
    let mut b = GltsBuilder::new(state_names.len() as u32, players);
    for (s, a, d) in edges {
        b = b
            .edge(s, a, d)
            .map_err(|e| GltsParseError { line: 0, message: e.to_string() })?;
    }
    for (no, s) in goal {
        b = b
            .goal_state(s)
            .map_err(|e| GltsParseError { line: no, message: e.to_string() })?;
    }
    Ok(NamedGlts {
        glts: b.build(),
        state_names,
        action_names,
    })
}

/// Renders a game graph in the fixture format; parsing the output
/// yields an identical graph.
pub fn serialize_glts(g: &NamedGlts) -> String {
    let mut out = String::new();
    for (s, a, d) in g.glts.edges() {
        let owner = match g.glts.player_of(a) {
            Player::One => "p1",
            Player::Two => "p2",
        };
        writeln!(
            out,
            "{} {} {} {}",
            g.state_names[s.0 as usize], g.action_names[a.0 as usize], owner, g.state_names[d.0 as usize]
        )
        .unwrap();
    }
    if !g.glts.goal().is_empty() {
        let names: Vec<&str> = g
            .glts
            .goal()
            .iter()
            .map(|s| g.state_names[s.0 as usize].as_str())
            .collect();
        writeln!(out, "goal: {}", names.join(" ")).unwrap();
    }
    out
}
