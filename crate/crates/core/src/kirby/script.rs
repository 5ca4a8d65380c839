//! Move scripts: a sequence of Kirby moves replayed against a diagram while
//! monitoring the homology presentation after each step.
//!
//! ```text
//! kmoves v1
//! load base.kirby
//! params m=2 n=0
//! slide K E +
//! blowup - E
//! blowdown E
//! cancel x K
//! expect mazur_shape
//! ```

use std::fmt;
use std::str::FromStr;

use super::affine::Params;
use super::diagram::{HomologyPresentation, KirbyDiagram};
use crate::error::{KirbyError, ParseError};

/// A single scripted move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    Slide { slider: String, over: String, sign: i8 },
    BlowUp { sign: i8, name: Option<String> },
    BlowDown { name: String },
    Cancel { one: String, two: String },
    ExpectMazurShape,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |s: &i8| if *s > 0 { '+' } else { '-' };
        match self {
            Move::Slide { slider, over, sign: s } => write!(f, "slide {slider} {over} {}", sign(s)),
            Move::BlowUp { sign: s, name } => match name {
                Some(n) => write!(f, "blowup {} {n}", sign(s)),
                None => write!(f, "blowup {}", sign(s)),
            },
            Move::BlowDown { name } => write!(f, "blowdown {name}"),
            Move::Cancel { one, two } => write!(f, "cancel {one} {two}"),
            Move::ExpectMazurShape => write!(f, "expect mazur_shape"),
        }
    }
}

/// A parsed move script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    /// Diagram file, relative to the script's directory.
    pub load: String,
    /// Parameter sets the monitors are evaluated at.
    pub params: Vec<Params>,
    /// Moves with their 1-based source lines.
    pub moves: Vec<(usize, Move)>,
}

fn parse_sign(s: &str, line: usize) -> Result<i8, ParseError> {
    match s {
        "+" | "+1" => Ok(1),
        "-" | "-1" => Ok(-1),
        other => Err(ParseError::new(line, 1, format!("expected a sign, found '{other}'"))),
    }
}

fn parse_params(toks: &[&str], line: usize) -> Result<Params, ParseError> {
    toks.iter()
        .map(|t| {
            let (k, v) = t
                .split_once('=')
                .ok_or_else(|| ParseError::new(line, 1, format!("expected name=value, found '{t}'")))?;
            let v = v
                .parse::<i64>()
                .map_err(|_| ParseError::new(line, 1, format!("parameter '{k}' needs an integer value")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

impl FromStr for MoveScript {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "kmoves v1")) => {}
            _ => return Err(ParseError::new(1, 1, "expected header 'kmoves v1'")),
        }
        let mut load = None;
        let mut params = Vec::new();
        let mut moves = Vec::new();
        for (n, line) in lines {
            if line.starts_with('#') {
                continue;
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            let mv = match t.as_slice() {
                [] => continue,
                ["load", file] => {
                    load = Some(file.to_string());
                    continue;
                }
                ["params", rest @ ..] => {
                    params.push(parse_params(rest, n)?);
                    continue;
                }
                ["slide", a, b, s] => Move::Slide {
                    slider: a.to_string(),
                    over: b.to_string(),
                    sign: parse_sign(s, n)?,
                },
                ["blowup", s] => Move::BlowUp {
                    sign: parse_sign(s, n)?,
                    name: None,
                },
                ["blowup", s, name] => Move::BlowUp {
                    sign: parse_sign(s, n)?,
                    name: Some(name.to_string()),
                },
                ["blowdown", name] => Move::BlowDown { name: name.to_string() },
                ["cancel", one, two] => Move::Cancel {
                    one: one.to_string(),
                    two: two.to_string(),
                },
                ["expect", "mazur_shape"] => Move::ExpectMazurShape,
                _ => return Err(ParseError::new(n, 1, format!("unrecognised move '{line}'"))),
            };
            moves.push((n, mv));
        }
        let load = load.ok_or_else(|| ParseError::new(1, 1, "script has no 'load' line"))?;
        if params.is_empty() {
            params.push(Params::new());
        }
        Ok(Self { load, params, moves })
    }
}

/// Applies one move.
pub fn apply_move(d: &KirbyDiagram, mv: &Move) -> Result<KirbyDiagram, KirbyError> {
    match mv {
        Move::Slide { slider, over, sign } => d.handle_slide(slider, over, *sign),
        Move::BlowUp { sign, name } => {
            let name = name.clone().unwrap_or_else(|| d.fresh_name("E"));
            d.blow_up(*sign, &name)
        }
        Move::BlowDown { name } => d.blow_down(name),
        Move::Cancel { one, two } => d.cancel_pair(one, two),
        Move::ExpectMazurShape => Ok(d.clone()),
    }
}

/// One row of the replay table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayRow {
    pub step: String,
    pub params: String,
    pub presentation: HomologyPresentation,
}

/// The diagram after the script and the monitor table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayReport {
    pub result: KirbyDiagram,
    pub rows: Vec<ReplayRow>,
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{:<24} [{}] {}", r.step, r.params, r.presentation)?;
        }
        write!(f, "{}", self.result)
    }
}

/// Failures during replay.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("line {line}: {source}")]
    Move { line: usize, source: KirbyError },
    #[error("line {line}: '{step}' at [{params}] changed {monitor}: before {before}, after {after}")]
    Violation {
        line: usize,
        step: String,
        params: String,
        monitor: String,
        before: String,
        after: String,
    },
}

fn show_params(p: &Params) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

fn order_string(h: &HomologyPresentation) -> String {
    h.boundary_order
        .as_ref()
        .map_or_else(|| "infinite".to_string(), |o| o.to_string())
}

/// Replays a script, checking after every move that `H1`, the boundary
/// order and `H2` (adjusted by the net number of blow-ups) are unchanged.
pub fn replay(script: &MoveScript, start: &KirbyDiagram) -> Result<ReplayReport, ReplayError> {
    let mut rows = Vec::new();
    let present = |d: &KirbyDiagram, p: &Params, line: usize| {
        d.homology_presentation(p)
            .map_err(|source| ReplayError::Move { line, source })
    };
    let mut baseline = Vec::new();
    for p in &script.params {
        let h = present(start, p, 1)?;
        rows.push(ReplayRow {
            step: "start".into(),
            params: show_params(p),
            presentation: h.clone(),
        });
        baseline.push(h);
    }
    let mut d = start.clone();
    let mut blowups: i64 = 0;
    for (line, mv) in &script.moves {
        let line = *line;
        d = apply_move(&d, mv).map_err(|source| ReplayError::Move { line, source })?;
        match mv {
            Move::BlowUp { .. } => blowups += 1,
            Move::BlowDown { .. } => blowups -= 1,
            _ => {}
        }
        for (p, before) in script.params.iter().zip(&baseline) {
            let after = present(&d, p, line)?;
            let violation = |monitor: &str, b: String, a: String| ReplayError::Violation {
                line,
                step: mv.to_string(),
                params: show_params(p),
                monitor: monitor.to_string(),
                before: b,
                after: a,
            };
            if after.h1 != before.h1 {
                return Err(violation("H1", before.h1.to_string(), after.h1.to_string()));
            }
            if after.boundary_order != before.boundary_order {
                return Err(violation("boundary order", order_string(before), order_string(&after)));
            }
            let expected_h2 = before.h2_rank as i64 + blowups;
            if after.h2_rank as i64 != expected_h2 {
                return Err(violation("H2", expected_h2.to_string(), after.h2_rank.to_string()));
            }
            if *mv == Move::ExpectMazurShape && !after.mazur_shape {
                return Err(violation("mazur shape", "true".into(), "false".into()));
            }
            rows.push(ReplayRow {
                step: mv.to_string(),
                params: show_params(p),
                presentation: after,
            });
        }
    }
    Ok(ReplayReport { result: d, rows })
}
