//! Diagrams from Morse presentations: a top-to-bottom sequence of caps, cups
//! and crossings on a row of vertical strands.

use std::collections::HashMap;

use super::pd::{Arc, Component, Crossing, PDCode};
use crate::error::LinkError;

/// One elementary piece of a Morse presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorseEvent {
    /// A new pair of strand ends at positions `i`, `i + 1`.
    Cap(usize),
    /// Joins the strands at positions `i`, `i + 1`.
    Cup(usize),
    /// Swaps the strands at positions `i`, `i + 1`; `over_left` says whether
    /// the strand coming from the upper-left passes over.
    Cross { pos: usize, over_left: bool },
}

// Corner slots of a Morse crossing.
const TL: usize = 0;
const TR: usize = 1;
const BL: usize = 2;
const BR: usize = 3;

fn opposite(slot: usize) -> usize {
    match slot {
        TL => BR,
        BR => TL,
        TR => BL,
        _ => TR,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn fresh(&mut self) -> usize {
        self.0.push(self.0.len());
        self.0.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Builds the planar diagram of a Morse presentation. Components are
/// oriented by the order in which they are first met and named `K` for a
/// knot or `L1`, `L2`, ... for a link.
pub fn from_morse(events: &[MorseEvent]) -> Result<PDCode, LinkError> {
    let invalid = |msg: &str| LinkError::InvalidDiagram(msg.to_string());
    let mut uf = UnionFind(Vec::new());
    let mut state: Vec<usize> = Vec::new();
    let mut corners: Vec<([usize; 4], bool)> = Vec::new();
    for ev in events {
        match *ev {
            MorseEvent::Cap(i) => {
                if i > state.len() {
                    return Err(invalid("cap position out of range"));
                }
                let (a, b) = (uf.fresh(), uf.fresh());
                uf.union(a, b);
                state.splice(i..i, [a, b]);
            }
            MorseEvent::Cup(i) => {
                if i + 1 >= state.len() {
                    return Err(invalid("cup position out of range"));
                }
                uf.union(state[i], state[i + 1]);
                state.drain(i..i + 2);
            }
            MorseEvent::Cross { pos, over_left } => {
                if pos + 1 >= state.len() {
                    return Err(invalid("crossing position out of range"));
                }
                let e = [uf.fresh(), uf.fresh(), uf.fresh(), uf.fresh()];
                uf.union(e[TL], state[pos]);
                uf.union(e[TR], state[pos + 1]);
                state[pos] = e[BL];
                state[pos + 1] = e[BR];
                corners.push((e, over_left));
            }
        }
    }
    if !state.is_empty() {
        return Err(invalid("Morse presentation leaves open strands"));
    }
    let mut classes: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (ci, (e, _)) in corners.iter().enumerate() {
        for (slot, &p) in e.iter().enumerate() {
            classes.entry(uf.find(p)).or_default().push((ci, slot));
        }
    }
    let n_points = uf.0.len();
    let mut loop_roots: Vec<usize> = (0..n_points).filter(|&p| uf.find(p) == p).collect();
    loop_roots.retain(|r| !classes.contains_key(r));
    let mut other: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for ends in classes.values() {
        other.insert(ends[0], ends[1]);
        other.insert(ends[1], ends[0]);
    }
    // Trace components; an arc is labelled when it leaves a crossing corner.
    let mut arc_at: HashMap<(usize, usize), (Arc, bool)> = HashMap::new();
    let mut comps: Vec<Vec<Arc>> = Vec::new();
    let mut next_arc: Arc = 0;
    for ci in 0..corners.len() {
        for s0 in [TL, TR] {
            if arc_at.contains_key(&(ci, s0)) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = (ci, s0);
            loop {
                next_arc += 1;
                comp.push(next_arc);
                arc_at.insert(cur, (next_arc, false));
                let nxt = other[&cur];
                arc_at.insert(nxt, (next_arc, true));
                cur = (nxt.0, opposite(nxt.1));
                if arc_at.contains_key(&cur) {
                    break;
                }
            }
            comps.push(comp);
        }
    }
    let pos = |slot: usize| -> (i64, i64) {
        match slot {
            TL => (-1, 1),
            TR => (1, 1),
            BL => (-1, -1),
            _ => (1, -1),
        }
    };
    let ccw = [TL, BL, BR, TR];
    let mut crossings = Vec::new();
    for (ci, &(_, over_left)) in corners.iter().enumerate() {
        let (over_pair, under_pair) = if over_left {
            ([TL, BR], [TR, BL])
        } else {
            ([TR, BL], [TL, BR])
        };
        let incoming = |pair: [usize; 2]| pair.into_iter().find(|&s| arc_at[&(ci, s)].1).unwrap();
        let u_in = incoming(under_pair);
        let o_in = incoming(over_pair);
        let (ux, uy) = pos(u_in);
        let (ox, oy) = pos(o_in);
        // Directions of travel are the negated corner positions.
        let sign = if ox * uy - oy * ux > 0 { 1 } else { -1 };
        let k = ccw.iter().position(|&s| s == u_in).unwrap();
        let arcs = [0, 1, 2, 3].map(|j| arc_at[&(ci, ccw[(k + j) % 4])].0);
        crossings.push(Crossing::new(arcs, sign));
    }
    for _ in loop_roots {
        next_arc += 1;
        comps.push(vec![next_arc]);
    }
    let single = comps.len() == 1;
    let components = comps
        .into_iter()
        .enumerate()
        .map(|(i, arcs)| Component {
            name: if single { "K".to_string() } else { format!("L{}", i + 1) },
            arcs,
        })
        .collect();
    PDCode::new(crossings, components)
}

/// The closure of a braid word on `strands` strands. Generator `i` (1-based)
/// is a positive crossing between strands `i` and `i + 1`, `-i` a negative one.
pub fn braid_closure(word: &[i32], strands: usize) -> Result<PDCode, LinkError> {
    if strands == 0 || word.iter().any(|&g| g == 0 || g.unsigned_abs() as usize >= strands) {
        return Err(LinkError::InvalidDiagram("braid generator out of range".into()));
    }
    let mut events: Vec<MorseEvent> = (0..strands).map(MorseEvent::Cap).collect();
    events.extend(word.iter().map(|&g| MorseEvent::Cross {
        pos: g.unsigned_abs() as usize - 1,
        over_left: g < 0,
    }));
    events.extend((0..strands).rev().map(MorseEvent::Cup));
    from_morse(&events)
}
