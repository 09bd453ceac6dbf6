use std::fmt::Write as _;
use std::time::Duration;

use game_solver::{compare_runs, SolveError};

use crate::model::ModelFile;

/// One benchmark line: an unreduced and a reduced run of the same
/// model, or the error that stopped them.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub model: String,
    pub outcome: Result<BenchNumbers, BenchError>,
}

/// A per-model failure. Winner mismatches are invariant violations;
/// everything else (boundedness, missing query) just truncates the row.
#[derive(Debug, Clone)]
pub struct BenchError {
    pub invariant_violation: bool,
    pub message: String,
}

#[derive(Debug, Clone, Copy)]
pub struct BenchNumbers {
    pub winning: bool,
    pub time_normal: Duration,
    pub time_por: Duration,
    pub markings_normal: usize,
    pub markings_por: usize,
}

impl BenchNumbers {
    /// Percentage of markings the reduction saved, rounded to the
    /// nearest integer.
    pub fn pct_markings(&self) -> i64 {
        pct(self.markings_por as f64, self.markings_normal as f64)
    }

    pub fn pct_time(&self) -> i64 {
        pct(self.time_por.as_secs_f64(), self.time_normal.as_secs_f64())
    }
}

fn pct(reduced: f64, full: f64) -> i64 {
    if full == 0.0 {
        return 0;
    }
    (100.0 * (1.0 - reduced / full)).round() as i64
}

/// Runs every model once with and once without reduction.
pub fn bench(models: &[(String, ModelFile)], max_states: usize) -> Vec<BenchRow> {
    models
        .iter()
        .map(|(name, model)| {
            let fail = |invariant_violation: bool, message: String| BenchError {
                invariant_violation,
                message,
            };
            let outcome = match &model.query {
                None => Err(fail(false, "model has no query".to_string())),
                Some(phi) => match compare_runs(&model.net, &model.initial, phi, max_states) {
                    Ok(cmp) => Ok(BenchNumbers {
                        winning: cmp.normal.winning,
                        time_normal: cmp.normal.wall_time,
                        time_por: cmp.por.wall_time,
                        markings_normal: cmp.normal.unique_markings,
                        markings_por: cmp.por.unique_markings,
                    }),
                    Err(e @ SolveError::Bounded { .. }) => Err(fail(false, e.to_string())),
                    Err(e @ SolveError::WinnerMismatch { .. }) => Err(fail(true, e.to_string())),
                },
            };
            BenchRow { model: name.clone(), outcome }
        })
        .collect()
}

/// CSV rendering. With `with_times` off the time columns are fixed at
/// 0.000 so repeated runs produce byte-identical files.
pub fn render_csv(rows: &[BenchRow], with_times: bool) -> String {
    let mut out = String::from(
        "model,time_normal,time_por,markings_normal,markings_por,pct_time,pct_markings\n",
    );
    for row in rows {
        match &row.outcome {
            Ok(n) => {
                let (tn, tp, pt) = if with_times {
                    (n.time_normal.as_secs_f64(), n.time_por.as_secs_f64(), n.pct_time())
                } else {
                    (0.0, 0.0, 0)
                };
                writeln!(
                    out,
                    "{},{:.3},{:.3},{},{},{},{}",
                    row.model, tn, tp, n.markings_normal, n.markings_por, pt, n.pct_markings()
                )
                .unwrap();
            }
            Err(_) => writeln!(out, "{},-,-,-,-,-,-", row.model).unwrap(),
        }
    }
    out
}

/// Aligned text table for the terminal, with error rows in-line.
pub fn render_table(rows: &[BenchRow], with_times: bool) -> String {
    let mut cells: Vec<[String; 6]> = vec![[
        "model".into(),
        "winner".into(),
        "markings".into(),
        "reduced".into(),
        "saved".into(),
        "time".into(),
    ]];
    for row in rows {
        cells.push(match &row.outcome {
            Ok(n) => [
                row.model.clone(),
                if n.winning { "WINNING".into() } else { "NOT WINNING".into() },
                n.markings_normal.to_string(),
                n.markings_por.to_string(),
                format!("{}%", n.pct_markings()),
                if with_times {
                    format!("{:.3}s vs {:.3}s", n.time_normal.as_secs_f64(), n.time_por.as_secs_f64())
                } else {
                    "-".into()
                },
            ],
            Err(e) => [
                row.model.clone(),
                format!("error: {}", e.message),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
            ],
        });
    }
    let mut widths = [0usize; 6];
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_chain, gen_nim};

    #[test]
    fn csv_is_deterministic_without_times() {
        let models = vec![
            ("chain4".to_string(), gen_chain(4).unwrap()),
            ("nim_2_5".to_string(), gen_nim(2, 5).unwrap()),
        ];
        let a = render_csv(&bench(&models, 10_000), false);
        let b = render_csv(&bench(&models, 10_000), false);
        assert_eq!(a, b);
        assert!(a.starts_with("model,time_normal,time_por,"));
        assert!(a.contains("chain4,0.000,0.000,16,5,0,69"));
    }

    #[test]
    fn bounded_models_get_error_rows() {
        let mut looping = gen_chain(1).unwrap();
        // A player 2 pump makes the net unbounded.
        let mut b = petri_game::NetBuilder::new();
        let p = b.place("p");
        let t = b.transition("pump", petri_game::Player::Two);
        b.arc_out(t, p, 1);
        looping.net = b.build().unwrap();
        looping.initial = petri_game::Marking::zero(1);
        looping.query = Some(
            query_logic::parse_query(&looping.net, "p >= 100000").unwrap(),
        );
        let rows = bench(&[("pump".to_string(), looping)], 100);
        assert!(rows[0].outcome.is_err());
        assert!(render_csv(&rows, false).contains("pump,-,-,-,-,-,-"));
    }
}
