//! Planar diagram codes of oriented links.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{LinkError, ParseError};

/// Arc identifier in a planar diagram code.
pub type Arc = u32;

/// One crossing: four arcs in counterclockwise order starting with the
/// incoming under-strand, plus the crossing sign.
///
/// The under-strand runs from slot 0 to slot 2. The over-strand runs from
/// slot 3 to slot 1 at a positive crossing and from slot 1 to slot 3 at a
/// negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [Arc; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn new(arcs: [Arc; 4], sign: i8) -> Self {
        Self { arcs, sign }
    }

    /// True when the given slot carries an incoming strand end.
    pub fn slot_is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.sign < 0,
            3 => self.sign > 0,
            _ => unreachable!("crossing slots are 0..4"),
        }
    }

    /// Slot through which the strand entering at `slot` leaves.
    pub fn passage(&self, slot: usize) -> usize {
        (slot + 2) % 4
    }

    /// Slot of the incoming over-strand.
    pub fn over_in_slot(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    /// Slot of the outgoing over-strand.
    pub fn over_out_slot(&self) -> usize {
        if self.sign > 0 {
            1
        } else {
            3
        }
    }

    /// The same crossing with over and under exchanged.
    pub fn mirrored(&self) -> Self {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            Self::new([d, a, b, c], -1)
        } else {
            Self::new([b, c, d, a], 1)
        }
    }
}

/// A named oriented component listed as a cycle of arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub name: String,
    pub arcs: Vec<Arc>,
}

/// A validated planar diagram of an oriented link.
///
/// Comment lines (`# ...`) are kept verbatim so that files round-trip
/// exactly; lines of the form `# key: value` double as metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    comments: Vec<String>,
}

impl PDCode {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<Crossing>, components: Vec<Component>) -> Result<Self, LinkError> {
        let pd = Self {
            crossings,
            components,
            comments: Vec::new(),
        };
        pd.validate()?;
        Ok(pd)
    }

    /// A crossingless unknot with a single arc.
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            components: vec![Component {
                name: "K".into(),
                arcs: vec![1],
            }],
            comments: Vec::new(),
        }
    }

    /// Replaces the comment lines (each without the leading `# `).
    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    /// Looks up a `key: value` comment.
    pub fn metadata(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(':')?;
            (k.trim() == key).then(|| v.trim())
        })
    }

    /// Sum of the crossing signs.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| i64::from(c.sign)).sum()
    }

    /// Index of the component containing each arc.
    pub fn component_of_arc(&self) -> HashMap<Arc, usize> {
        let mut map = HashMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            for &a in &comp.arcs {
                map.insert(a, i);
            }
        }
        map
    }

    fn component_index(&self, name: &str) -> Result<usize, LinkError> {
        self.components
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| LinkError::UnknownComponent(name.to_string()))
    }

    /// Half the signed count of crossings between the two named components.
    pub fn linking_number(&self, a: &str, b: &str) -> Result<i64, LinkError> {
        let ia = self.component_index(a)?;
        let ib = self.component_index(b)?;
        if ia == ib {
            return Err(LinkError::SameComponent(a.to_string()));
        }
        let comp = self.component_of_arc();
        let mut total = 0i64;
        for x in &self.crossings {
            let under = comp[&x.arcs[0]];
            let over = comp[&x.arcs[x.over_in_slot()]];
            if (under == ia && over == ib) || (under == ib && over == ia) {
                total += i64::from(x.sign);
            }
        }
        Ok(total / 2)
    }

    /// The mirror image: every crossing has over and under exchanged.
    pub fn mirror(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
            components: self.components.clone(),
            comments: self.comments.clone(),
        }
    }

    /// Successor of each arc along its oriented component, read off from the
    /// crossings. Free loops (single arcs meeting no crossing) are their own
    /// successor.
    pub fn successor_map(&self) -> HashMap<Arc, Arc> {
        let mut next = HashMap::new();
        for x in &self.crossings {
            for slot in [0, x.over_in_slot()] {
                next.insert(x.arcs[slot], x.arcs[x.passage(slot)]);
            }
        }
        for comp in &self.components {
            if comp.arcs.len() == 1 && !next.contains_key(&comp.arcs[0]) {
                next.insert(comp.arcs[0], comp.arcs[0]);
            }
        }
        next
    }

    /// Faces of the diagram on the sphere, each a cyclic list of darts
    /// `(arc, forward)` traversed with the face on the left. A dart is
    /// forward when it runs along the arc's orientation.
    ///
    /// Free loops are not part of any face listing.
    pub fn faces(&self) -> Vec<Vec<(Arc, bool)>> {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        for (xi, x) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                let end = if x.slot_is_incoming(slot) { &mut head } else { &mut tail };
                end.insert(x.arcs[slot], (xi, slot));
            }
        }
        let step = |(arc, fwd): (Arc, bool)| -> (Arc, bool) {
            let (xi, slot) = if fwd { head[&arc] } else { tail[&arc] };
            let x = &self.crossings[xi];
            let j = (slot + 3) % 4;
            (x.arcs[j], !x.slot_is_incoming(j))
        };
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        let mut darts: Vec<(Arc, bool)> = head.keys().flat_map(|&a| [(a, true), (a, false)]).collect();
        darts.sort();
        for start in darts {
            if seen.contains(&start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while seen.insert(d) {
                face.push(d);
                d = step(d);
            }
            faces.push(face);
        }
        faces
    }

    fn check_planar(&self) -> Result<(), LinkError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut first_seen: HashMap<Arc, usize> = HashMap::new();
        for (xi, x) in self.crossings.iter().enumerate() {
            for &a in &x.arcs {
                if let Some(&other) = first_seen.get(&a) {
                    let (r1, r2) = (find(&mut parent, xi), find(&mut parent, other));
                    parent[r1] = r2;
                } else {
                    first_seen.insert(a, xi);
                }
            }
        }
        let mut vertices: BTreeMap<usize, i64> = BTreeMap::new();
        for xi in 0..n {
            *vertices.entry(find(&mut parent, xi)).or_default() += 1;
        }
        let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
        for face in self.faces() {
            let (arc, _) = face[0];
            *faces.entry(find(&mut parent, first_seen[&arc])).or_default() += 1;
        }
        for (root, v) in vertices {
            // Each piece has v vertices and 2v edges; on the sphere it has v + 2 faces.
            if faces.get(&root).copied().unwrap_or(0) != v + 2 {
                return Err(LinkError::InvalidDiagram(
                    "crossing data does not describe a planar diagram".into(),
                ));
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<(), LinkError> {
        let invalid = |msg: String| Err(LinkError::InvalidDiagram(msg));
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return invalid(format!("crossing sign {} is not ±1", x.sign));
            }
        }
        let mut names = BTreeSet::new();
        let mut listed: BTreeMap<Arc, usize> = BTreeMap::new();
        for (i, comp) in self.components.iter().enumerate() {
            if comp.name.is_empty() || comp.name.chars().any(|c| c.is_whitespace() || c == ':') {
                return invalid(format!("component name '{}' is not a plain word", comp.name));
            }
            if !names.insert(comp.name.as_str()) {
                return invalid(format!("component name '{}' is repeated", comp.name));
            }
            if comp.arcs.is_empty() {
                return invalid(format!("component '{}' has no arcs", comp.name));
            }
            for &a in &comp.arcs {
                if listed.insert(a, i).is_some() {
                    return invalid(format!("arc {a} is listed in more than one place"));
                }
            }
        }
        let mut incoming: BTreeMap<Arc, usize> = BTreeMap::new();
        let mut outgoing: BTreeMap<Arc, usize> = BTreeMap::new();
        for x in &self.crossings {
            for slot in 0..4 {
                let a = x.arcs[slot];
                if !listed.contains_key(&a) {
                    return invalid(format!("arc {a} appears at a crossing but in no component"));
                }
                let side = if x.slot_is_incoming(slot) {
                    &mut incoming
                } else {
                    &mut outgoing
                };
                *side.entry(a).or_default() += 1;
            }
        }
        for (&a, _) in &listed {
            let i = incoming.get(&a).copied().unwrap_or(0);
            let o = outgoing.get(&a).copied().unwrap_or(0);
            let free = i == 0 && o == 0;
            if free {
                let comp = &self.components[listed[&a]];
                if comp.arcs.len() != 1 {
                    return invalid(format!("arc {a} meets no crossing but is not a free loop"));
                }
            } else if i != 1 || o != 1 {
                return invalid(format!(
                    "arc {a} must enter one crossing and leave one crossing (enters {i}, leaves {o}); \
                     check the crossing signs"
                ));
            }
        }
        let next = self.successor_map();
        for comp in &self.components {
            let k = comp.arcs.len();
            for (j, &a) in comp.arcs.iter().enumerate() {
                if next[&a] != comp.arcs[(j + 1) % k] {
                    return invalid(format!(
                        "component '{}' does not follow its strands after arc {a}",
                        comp.name
                    ));
                }
            }
        }
        self.check_planar()
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pd v1")?;
        for c in &self.comments {
            writeln!(f, "# {c}")?;
        }
        for x in &self.crossings {
            let [a, b, c, d] = x.arcs;
            let s = if x.sign > 0 { '+' } else { '-' };
            writeln!(f, "X {a} {b} {c} {d} {s}")?;
        }
        for comp in &self.components {
            write!(f, "C {}:", comp.name)?;
            for a in &comp.arcs {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Errors from reading a PD file: either malformed text or an inconsistent
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PdFileError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Link(#[from] LinkError),
}

fn parse_arc(tok: &str, line: usize, column: usize) -> Result<Arc, ParseError> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || (tok.len() > 1 && tok.starts_with('0')) {
        return Err(ParseError::new(line, column, format!("expected an arc id, found '{tok}'")));
    }
    tok.parse()
        .map_err(|_| ParseError::new(line, column, format!("arc id '{tok}' is too large")))
}

/// Splits a line on single spaces, returning tokens with 1-based columns.
fn tokens(text: &str, line: usize) -> Result<Vec<(usize, &str)>, ParseError> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in text.split(' ') {
        if tok.is_empty() {
            return Err(ParseError::new(line, col, "tokens must be separated by single spaces"));
        }
        out.push((col, tok));
        col += tok.len() + 1;
    }
    Ok(out)
}

impl PDCode {
    /// Parses the text format. The accepted layout is exactly the one
    /// [`Display`](fmt::Display) writes, which makes the round trip exact.
    pub fn parse(text: &str) -> Result<Self, PdFileError> {
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| ParseError::new(text.lines().count().max(1), 1, "file must end with a newline"))?;
        let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, "pd v1")) => {}
            Some((n, _)) => return Err(ParseError::new(n, 1, "expected header 'pd v1'").into()),
            None => return Err(ParseError::new(1, 1, "empty file").into()),
        }
        #[derive(PartialEq, PartialOrd)]
        enum Stage {
            Comments,
            Crossings,
            Components,
        }
        let mut stage = Stage::Comments;
        let mut comments = Vec::new();
        let mut crossings = Vec::new();
        let mut components = Vec::new();
        for (n, line) in lines {
            if let Some(rest) = line.strip_prefix("# ") {
                if stage != Stage::Comments {
                    return Err(ParseError::new(n, 1, "comments must precede crossings").into());
                }
                if rest.ends_with(' ') || rest.is_empty() {
                    return Err(ParseError::new(n, line.len(), "comment has trailing space").into());
                }
                comments.push(rest.to_string());
            } else if let Some(rest) = line.strip_prefix("X ") {
                if stage > Stage::Crossings {
                    return Err(ParseError::new(n, 1, "crossings must precede components").into());
                }
                stage = Stage::Crossings;
                let toks = tokens(rest, n)?;
                if toks.len() != 5 {
                    return Err(ParseError::new(n, 3, "crossing needs four arcs and a sign").into());
                }
                let mut arcs = [0; 4];
                for (slot, (col, tok)) in toks[..4].iter().enumerate() {
                    arcs[slot] = parse_arc(tok, n, col + 2)?;
                }
                let (col, s) = toks[4];
                let sign = match s {
                    "+" => 1,
                    "-" => -1,
                    _ => return Err(ParseError::new(n, col + 2, format!("sign must be + or -, found '{s}'")).into()),
                };
                crossings.push(Crossing::new(arcs, sign));
            } else if let Some(rest) = line.strip_prefix("C ") {
                stage = Stage::Components;
                let (name, arcs_text) = rest
                    .split_once(": ")
                    .ok_or_else(|| ParseError::new(n, 3, "component line needs 'name: arcs'"))?;
                if name.is_empty() || name.contains(' ') {
                    return Err(ParseError::new(n, 3, "component name must be a single word").into());
                }
                let offset = 2 + name.len() + 2;
                let arcs = tokens(arcs_text, n)?
                    .into_iter()
                    .map(|(col, tok)| parse_arc(tok, n, col + offset))
                    .collect::<Result<Vec<_>, _>>()?;
                components.push(Component {
                    name: name.to_string(),
                    arcs,
                });
            } else {
                return Err(ParseError::new(n, 1, format!("unrecognised line '{line}'")).into());
            }
        }
        Ok(Self::new(crossings, components)?.with_comments(comments))
    }
}

impl FromStr for PDCode {
    type Err = PdFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
