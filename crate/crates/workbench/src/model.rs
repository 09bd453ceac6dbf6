use std::collections::BTreeMap;
use std::fmt::Write as _;

use petri_game::{Marking, NetBuilder, PetriNetGame, Player};
use query_logic::{parse_query, Formula, FormulaDisplay};
use thiserror::Error;

/// A parsed model file: the net, its initial marking, and an optional
/// embedded query.
#[derive(Debug, Clone)]
pub struct ModelFile {
    pub net: PetriNetGame,
    pub initial: Marking,
    pub query: Option<Formula>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ModelError {
    pub line: u32,
    pub message: String,
}

fn err<T>(line: u32, message: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError { line, message: message.into() })
}

/// Parses the line-oriented model format:
///
/// ```text
/// # comment
/// place <name> <initial-tokens>
/// trans <name> p1|p2
/// arc <src> <dst> <weight>
/// inhib <place> <trans> <weight>
/// query <formula>
/// ```
pub fn parse_model(text: &str) -> Result<ModelFile, ModelError> {
    struct Line<'a> {
        no: u32,
        words: Vec<&'a str>,
        rest: &'a str,
    }
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let no = i as u32 + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let rest = trimmed.split_once(char::is_whitespace).map(|x| x.1.trim()).unwrap_or("");
            Some(Line { no, words: trimmed.split_whitespace().collect(), rest })
        })
        .collect();

    // Declarations first, so arcs may appear in any order.
    let mut b = NetBuilder::new();
    let mut places: BTreeMap<String, (petri_game::PlaceId, u64)> = BTreeMap::new();
    let mut trans: BTreeMap<String, petri_game::TransId> = BTreeMap::new();
    for l in &lines {
        match l.words[0] {
            "place" => {
                let [_, name, init] = l.words[..] else {
                    return err(l.no, "expected: place <name> <initial-tokens>");
                };
                let init: u64 = init
                    .parse()
                    .map_err(|_| ModelError { line: l.no, message: format!("bad token count '{init}'") })?;
                if places.contains_key(name) || trans.contains_key(name) {
                    return err(l.no, format!("duplicate id '{name}'"));
                }
                places.insert(name.to_string(), (b.place(name), init));
            }
            "trans" => {
                let [_, name, owner] = l.words[..] else {
                    return err(l.no, "expected: trans <name> p1|p2");
                };
                let player = match owner {
                    "p1" => Player::One,
                    "p2" => Player::Two,
                    other => return err(l.no, format!("bad owner '{other}', expected p1 or p2")),
                };
                if places.contains_key(name) || trans.contains_key(name) {
                    return err(l.no, format!("duplicate id '{name}'"));
                }
                trans.insert(name.to_string(), b.transition(name, player));
            }
            "arc" | "inhib" | "query" => {}
            other => return err(l.no, format!("unknown directive '{other}'")),
        }
    }

    let mut query_line: Option<(u32, &str)> = None;
    for l in &lines {
        match l.words[0] {
            "arc" => {
                let [_, src, dst, w] = l.words[..] else {
                    return err(l.no, "expected: arc <src> <dst> <weight>");
                };
                let w: u64 = w
                    .parse()
                    .map_err(|_| ModelError { line: l.no, message: format!("bad weight '{w}'") })?;
                if w == 0 {
                    return err(l.no, "arc weight must be at least 1");
                }
                match (places.get(src), trans.get(src), places.get(dst), trans.get(dst)) {
                    (Some(&(p, _)), _, _, Some(&t)) => {
                        b.arc_in(p, t, w);
                    }
                    (_, Some(&t), Some(&(p, _)), _) => {
                        b.arc_out(t, p, w);
                    }
                    (Some(_), _, Some(_), _) => {
                        return err(l.no, format!("arc between two places '{src}' and '{dst}'"))
                    }
                    (_, Some(_), _, Some(_)) => {
                        return err(l.no, format!("arc between two transitions '{src}' and '{dst}'"))
                    }
                    _ => return err(l.no, format!("unknown id in arc '{src}' -> '{dst}'")),
                }
            }
            "inhib" => {
                let [_, pname, tname, w] = l.words[..] else {
                    return err(l.no, "expected: inhib <place> <trans> <weight>");
                };
                let w: u64 = w
                    .parse()
                    .map_err(|_| ModelError { line: l.no, message: format!("bad weight '{w}'") })?;
                if w == 0 {
                    return err(l.no, "inhibitor weight must be at least 1");
                }
                let Some(&(p, _)) = places.get(pname) else {
                    return err(l.no, format!("unknown place '{pname}'"));
                };
                let Some(&t) = trans.get(tname) else {
                    return err(l.no, format!("unknown transition '{tname}'"));
                };
                b.inhibitor(p, t, w);
            }
            "query" => {
                if query_line.is_some() {
                    return err(l.no, "duplicate query line");
                }
                if l.rest.is_empty() {
                    return err(l.no, "expected: query <formula>");
                }
                query_line = Some((l.no, l.rest));
            }
            _ => {}
        }
    }

    let net = b
        .build()
        .map_err(|e| ModelError { line: 0, message: e.to_string() })?;
    let mut initial = Marking::zero(net.num_places());
    for (p, init) in places.values() {
        initial.set(*p, *init);
    }
    let query = match query_line {
        None => None,
        Some((no, text)) => Some(parse_query(&net, text).map_err(|e| ModelError {
            line: no,
            message: format!("in query: {e}"),
        })?),
    };
    Ok(ModelFile { net, initial, query })
}

/// Renders a model back into the file format; parsing the output gives
/// back an identical structure.
pub fn serialize_model(model: &ModelFile) -> String {
    let net = &model.net;
    let mut out = String::new();
    for p in net.places() {
        writeln!(out, "place {} {}", net.place_name(p), model.initial.tokens(p)).unwrap();
    }
    for t in net.transitions() {
        let owner = match net.player_of(t) {
            Player::One => "p1",
            Player::Two => "p2",
        };
        writeln!(out, "trans {} {}", net.trans_name(t), owner).unwrap();
    }
    for p in net.places() {
        for t in net.transitions() {
            let w = net.weight_in(p, t);
            if w > 0 {
                writeln!(out, "arc {} {} {}", net.place_name(p), net.trans_name(t), w).unwrap();
            }
        }
    }
    for t in net.transitions() {
        for p in net.places() {
            let w = net.weight_out(t, p);
            if w > 0 {
                writeln!(out, "arc {} {} {}", net.trans_name(t), net.place_name(p), w).unwrap();
            }
        }
    }
    for p in net.places() {
        for t in net.transitions() {
            if let Some(w) = net.inhibitor(p, t) {
                writeln!(out, "inhib {} {} {}", net.place_name(p), net.trans_name(t), w).unwrap();
            }
        }
    }
    if let Some(q) = &model.query {
        writeln!(out, "query {}", FormulaDisplay { net, formula: q }).unwrap();
    }
    out
}
