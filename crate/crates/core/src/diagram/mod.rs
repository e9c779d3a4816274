//! Gauss phrases and their decorated variants.
//!
//! A [`GaussPhrase`] is a collection of cyclic words in which every chord
//! label occurs exactly twice, together with a count of chordless circles.
//! It encodes a framed 4-graph: positions are the preimages of vertices on
//! the unicursal components, and the two occurrences of a label are the two
//! strands passing through that vertex.

mod canonical;
mod long;
mod smoothing;
mod virtual_diagram;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canonical::{canonical_key, CanonicalKey};
pub use long::LongGaussDiagram;
pub(crate) use smoothing::resolve;
pub use smoothing::{smooth, smooth_state, Smoothing};
pub use virtual_diagram::{parse_virtual, Role, Sign, VirtualGaussDiagram, VirtualKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A chord end: component index and offset inside that component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub comp: usize,
    pub idx: usize,
}

impl Pos {
    pub fn new(comp: usize, idx: usize) -> Self {
        Pos { comp, idx }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussPhrase {
    components: Vec<Vec<ChordId>>,
    free_loops: usize,
}

/// Diagrams whose chords can be deleted, i.e. made virtual.
pub trait ChordDiagram: Sized {
    fn chord_ids(&self) -> Vec<ChordId>;
    fn delete_chords(&self, doomed: &BTreeSet<ChordId>) -> Self;

    fn chord_count(&self) -> usize {
        self.chord_ids().len()
    }
}

impl GaussPhrase {
    /// Builds a phrase, checking that every label occurs exactly twice and
    /// that no component is empty.
    pub fn new(components: Vec<Vec<ChordId>>, free_loops: usize) -> Result<Self> {
        let mut seen: BTreeMap<ChordId, usize> = BTreeMap::new();
        for comp in &components {
            if comp.is_empty() {
                return Err(Error::MalformedCode("empty component".into()));
            }
            for &c in comp {
                *seen.entry(c).or_default() += 1;
            }
        }
        if let Some((c, n)) = seen.iter().find(|(_, &n)| n != 2) {
            return Err(Error::MalformedCode(format!(
                "label {c} occurs {n} times, expected 2"
            )));
        }
        Ok(GaussPhrase {
            components,
            free_loops,
        })
    }

    pub(crate) fn from_parts_unchecked(components: Vec<Vec<ChordId>>, free_loops: usize) -> Self {
        debug_assert!(Self::new(components.clone(), free_loops).is_ok());
        GaussPhrase {
            components,
            free_loops,
        }
    }

    /// The crossingless one-component diagram.
    pub fn unknot() -> Self {
        Self::trivial(1)
    }

    /// `n` chordless circles.
    pub fn trivial(n: usize) -> Self {
        GaussPhrase {
            components: Vec::new(),
            free_loops: n,
        }
    }

    /// One-component phrase from a list of integer labels.
    pub fn from_word(word: &[u32]) -> Result<Self> {
        if word.is_empty() {
            return Ok(Self::unknot());
        }
        Self::new(vec![word.iter().map(|&l| ChordId(l)).collect()], 0)
    }

    pub fn components(&self) -> &[Vec<ChordId>] {
        &self.components
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Number of unicursal components, free loops included.
    pub fn unicursal_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn chord_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn len_of(&self, comp: usize) -> usize {
        self.components[comp].len()
    }

    pub fn at(&self, pos: Pos) -> ChordId {
        self.components[pos.comp][pos.idx]
    }

    /// Chords in ascending label order.
    pub fn chords(&self) -> Vec<ChordId> {
        self.chord_positions().into_keys().collect()
    }

    pub fn contains(&self, c: ChordId) -> bool {
        self.components.iter().any(|comp| comp.contains(&c))
    }

    pub fn max_label(&self) -> u32 {
        self.components
            .iter()
            .flatten()
            .map(|c| c.0)
            .max()
            .unwrap_or(0)
    }

    /// Both ends of every chord, in traversal order.
    pub fn chord_positions(&self) -> BTreeMap<ChordId, [Pos; 2]> {
        let mut first: BTreeMap<ChordId, Pos> = BTreeMap::new();
        let mut out = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, &c) in comp.iter().enumerate() {
                let here = Pos::new(ci, i);
                match first.remove(&c) {
                    Some(p) => {
                        out.insert(c, [p, here]);
                    }
                    None => {
                        first.insert(c, here);
                    }
                }
            }
        }
        out
    }

    pub fn positions_of(&self, c: ChordId) -> Result<[Pos; 2]> {
        let mut found = Vec::with_capacity(2);
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, &d) in comp.iter().enumerate() {
                if d == c {
                    found.push(Pos::new(ci, i));
                }
            }
        }
        match found.as_slice() {
            [a, b] => Ok([*a, *b]),
            _ => Err(Error::UnknownChord(c)),
        }
    }

    /// Whether two chords are linked. Chords on different components, or
    /// with ends on two components, are never linked.
    pub fn linked(&self, c: ChordId, d: ChordId) -> Result<bool> {
        let [c0, c1] = self.positions_of(c)?;
        let [d0, d1] = self.positions_of(d)?;
        if c == d || c0.comp != c1.comp || d0.comp != d1.comp || c0.comp != d0.comp {
            return Ok(false);
        }
        let inside = |p: Pos| c0.idx < p.idx && p.idx < c1.idx;
        Ok(inside(d0) != inside(d1))
    }

    /// `|E_c|` for every chord.
    pub fn interlacement_counts(&self) -> BTreeMap<ChordId, usize> {
        let pos = self.chord_positions();
        let mut counts: BTreeMap<ChordId, usize> = pos.keys().map(|&c| (c, 0)).collect();
        for comp in &self.components {
            // every linked pair is seen exactly once: when the outer chord
            // closes while the inner chord has one end open
            let mut open: Vec<ChordId> = Vec::new();
            for &c in comp {
                if let Some(at) = open.iter().position(|&o| o == c) {
                    for &inner in &open[at + 1..] {
                        *counts.get_mut(&c).unwrap() += 1;
                        *counts.get_mut(&inner).unwrap() += 1;
                    }
                    open.remove(at);
                } else if pos[&c][1].comp == pos[&c][0].comp {
                    open.push(c);
                }
            }
        }
        counts
    }

    /// Removes the given chords; components left without chord ends turn
    /// into free loops.
    pub fn remove_chords(&self, doomed: &BTreeSet<ChordId>) -> GaussPhrase {
        let mut components = Vec::with_capacity(self.components.len());
        let mut free_loops = self.free_loops;
        for comp in &self.components {
            let kept: Vec<ChordId> = comp.iter().copied().filter(|c| !doomed.contains(c)).collect();
            if kept.is_empty() {
                free_loops += 1;
            } else {
                components.push(kept);
            }
        }
        GaussPhrase {
            components,
            free_loops,
        }
    }

    /// Splits the components into groups joined by chords. Free loops are
    /// not included.
    pub fn connected_groups(&self) -> Vec<Vec<usize>> {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for [a, b] in self.chord_positions().into_values() {
            let (ra, rb) = (find(&mut parent, a.comp), find(&mut parent, b.comp));
            parent[ra] = rb;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// True when the unicursal components fall into two nonempty groups
    /// with no chord between them. A free loop always forms such a group
    /// unless it is the only component.
    pub fn has_split_component(&self) -> bool {
        let groups = self.connected_groups().len() + self.free_loops;
        groups > 1
    }

    /// Relabels chords `1..=n` in order of first appearance.
    pub fn normalized_labels(&self) -> GaussPhrase {
        let mut map: BTreeMap<ChordId, ChordId> = BTreeMap::new();
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|c| {
                        let next = ChordId(map.len() as u32 + 1);
                        *map.entry(*c).or_insert(next)
                    })
                    .collect()
            })
            .collect();
        GaussPhrase {
            components,
            free_loops: self.free_loops,
        }
    }

    /// Serialization of the canonical representative.
    pub fn to_canonical_string(&self) -> String {
        canonical_key(self).to_phrase().to_string()
    }
}

impl ChordDiagram for GaussPhrase {
    fn chord_ids(&self) -> Vec<ChordId> {
        self.chords()
    }

    fn delete_chords(&self, doomed: &BTreeSet<ChordId>) -> Self {
        self.remove_chords(doomed)
    }

    fn chord_count(&self) -> usize {
        GaussPhrase::chord_count(self)
    }
}

/// Maps tokens to chord ids: decimal tokens keep their value, other
/// alphanumeric tokens get fresh ids above every numeric one.
pub(crate) struct Labeler {
    named: BTreeMap<String, ChordId>,
}

impl Labeler {
    pub(crate) fn new<'a>(tokens: impl Iterator<Item = &'a str>) -> Result<Self> {
        let mut named = BTreeMap::new();
        let mut pending = Vec::new();
        let mut max = 0u32;
        for tok in tokens {
            if tok.is_empty() || !tok.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_') {
                return Err(Error::MalformedCode(format!("bad label {tok:?}")));
            }
            if tok.chars().all(|ch| ch.is_ascii_digit()) {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| Error::MalformedCode(format!("label {tok} too large")))?;
                max = max.max(v);
                named.insert(tok.to_string(), ChordId(v));
            } else if !named.contains_key(tok) && !pending.contains(&tok) {
                pending.push(tok);
            }
        }
        for tok in pending {
            max += 1;
            named.insert(tok.to_string(), ChordId(max));
        }
        Ok(Labeler { named })
    }

    pub(crate) fn id(&self, tok: &str) -> ChordId {
        self.named[tok]
    }
}

/// Parses `"1 2 1 2"`, `"1 2 / 1 2"` or `"()"`.
pub fn parse_free(text: &str) -> Result<GaussPhrase> {
    let segments: Vec<Vec<&str>> = text
        .split('/')
        .map(|seg| seg.split_whitespace().collect())
        .collect();
    let labeler = Labeler::new(
        segments
            .iter()
            .flatten()
            .copied()
            .filter(|t| *t != "()"),
    )?;
    let mut components = Vec::new();
    let mut free_loops = 0;
    for seg in &segments {
        match seg.as_slice() {
            [] => return Err(Error::MalformedCode("empty component".into())),
            ["()"] => free_loops += 1,
            toks => {
                if toks.contains(&"()") {
                    return Err(Error::MalformedCode(
                        "\"()\" must stand alone as a component".into(),
                    ));
                }
                components.push(toks.iter().map(|t| labeler.id(t)).collect());
            }
        }
    }
    GaussPhrase::new(components, free_loops)
}

impl FromStr for GaussPhrase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_free(s)
    }
}

impl fmt::Display for GaussPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        parts.extend(std::iter::repeat("()".to_string()).take(self.free_loops));
        write!(f, "{}", parts.join(" / "))
    }
}
