use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ChordDiagram, ChordId, GaussPhrase, Labeler};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Which strand of the crossing a chord end sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

/// One-circle Gauss diagram with a sign per chord and an arrow running
/// from the over end to the under end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualGaussDiagram {
    ends: Vec<(ChordId, Role)>,
    signs: BTreeMap<ChordId, Sign>,
}

/// Rotation- and relabeling-invariant key of a [`VirtualGaussDiagram`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VirtualKey(Vec<u32>);

impl VirtualKey {
    /// The representative the key encodes.
    pub fn to_diagram(&self) -> VirtualGaussDiagram {
        let mut ends = Vec::new();
        let mut signs = BTreeMap::new();
        for t in self.0[1..].chunks(3) {
            let c = ChordId(t[0]);
            ends.push((c, if t[1] == 0 { Role::Over } else { Role::Under }));
            signs.insert(c, if t[2] == 0 { Sign::Plus } else { Sign::Minus });
        }
        VirtualGaussDiagram { ends, signs }
    }
}

impl fmt::Display for VirtualKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_diagram())
    }
}

impl VirtualGaussDiagram {
    pub fn new(ends: Vec<(ChordId, Role)>, signs: BTreeMap<ChordId, Sign>) -> Result<Self> {
        let mut roles: BTreeMap<ChordId, Vec<Role>> = BTreeMap::new();
        for &(c, r) in &ends {
            roles.entry(c).or_default().push(r);
        }
        for (c, rs) in &roles {
            let mut rs = rs.clone();
            rs.sort();
            if rs != [Role::Over, Role::Under] {
                return Err(Error::MalformedCode(format!(
                    "chord {c} needs exactly one over and one under end"
                )));
            }
            if !signs.contains_key(c) {
                return Err(Error::MalformedCode(format!("chord {c} has no sign")));
            }
        }
        if signs.len() != roles.len() {
            return Err(Error::MalformedCode("sign given for an absent chord".into()));
        }
        Ok(VirtualGaussDiagram { ends, signs })
    }

    pub fn unknot() -> Self {
        VirtualGaussDiagram {
            ends: Vec::new(),
            signs: BTreeMap::new(),
        }
    }

    pub fn ends(&self) -> &[(ChordId, Role)] {
        &self.ends
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    pub fn sign(&self, c: ChordId) -> Result<Sign> {
        self.signs.get(&c).copied().ok_or(Error::UnknownChord(c))
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ends.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn chords(&self) -> Vec<ChordId> {
        self.signs.keys().copied().collect()
    }

    pub fn max_label(&self) -> u32 {
        self.signs.keys().map(|c| c.0).max().unwrap_or(0)
    }

    /// Positions of the over and the under end of `c`.
    pub fn arrow(&self, c: ChordId) -> Result<(usize, usize)> {
        let mut over = None;
        let mut under = None;
        for (i, &(d, r)) in self.ends.iter().enumerate() {
            if d == c {
                match r {
                    Role::Over => over = Some(i),
                    Role::Under => under = Some(i),
                }
            }
        }
        match (over, under) {
            (Some(o), Some(u)) => Ok((o, u)),
            _ => Err(Error::UnknownChord(c)),
        }
    }

    /// Every chord's (over, under) positions.
    pub fn arrows(&self) -> BTreeMap<ChordId, (usize, usize)> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (i, &(c, r)) in self.ends.iter().enumerate() {
            match r {
                Role::Over => over.insert(c, i),
                Role::Under => under.insert(c, i),
            };
        }
        over.into_iter().map(|(c, o)| (c, (o, under[&c]))).collect()
    }

    /// The underlying free diagram: signs and arrows forgotten.
    pub fn base(&self) -> GaussPhrase {
        if self.ends.is_empty() {
            GaussPhrase::unknot()
        } else {
            GaussPhrase::from_parts_unchecked(vec![self.ends.iter().map(|e| e.0).collect()], 0)
        }
    }

    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|s| s.value()).sum()
    }

    /// Reverses the arrow of `c` and keeps its sign.
    pub fn virtualise(&self, c: ChordId) -> Result<Self> {
        if !self.signs.contains_key(&c) {
            return Err(Error::UnknownChord(c));
        }
        let ends = self
            .ends
            .iter()
            .map(|&(d, r)| if d == c { (d, r.flip()) } else { (d, r) })
            .collect();
        Ok(VirtualGaussDiagram {
            ends,
            signs: self.signs.clone(),
        })
    }

    pub fn remove_chords(&self, doomed: &BTreeSet<ChordId>) -> Self {
        VirtualGaussDiagram {
            ends: self
                .ends
                .iter()
                .copied()
                .filter(|(c, _)| !doomed.contains(c))
                .collect(),
            signs: self
                .signs
                .iter()
                .filter(|(c, _)| !doomed.contains(c))
                .map(|(&c, &s)| (c, s))
                .collect(),
        }
    }

    /// Minimum over rotations of the relabeled `(label, role, sign)`
    /// triples. Reversal is not a symmetry here: it changes the knot.
    pub fn canonical_key(&self) -> VirtualKey {
        let n = self.ends.len();
        let mut best: Option<Vec<u32>> = None;
        for start in 0..n.max(1) {
            let mut labels: Vec<(ChordId, u32)> = Vec::new();
            let mut enc = Vec::with_capacity(3 * n + 1);
            enc.push(n as u32);
            for step in 0..n {
                let (c, r) = self.ends[(start + step) % n];
                let l = match labels.iter().find(|(k, _)| *k == c) {
                    Some(&(_, l)) => l,
                    None => {
                        labels.push((c, labels.len() as u32 + 1));
                        labels.len() as u32
                    }
                };
                enc.push(l);
                enc.push(r as u32);
                enc.push(self.signs[&c] as u32);
            }
            if best.as_ref().map_or(true, |b| enc < *b) {
                best = Some(enc);
            }
        }
        VirtualKey(best.unwrap())
    }

    pub(crate) fn ends_mut(&mut self) -> &mut Vec<(ChordId, Role)> {
        &mut self.ends
    }

    pub(crate) fn signs_mut(&mut self) -> &mut BTreeMap<ChordId, Sign> {
        &mut self.signs
    }
}

impl ChordDiagram for VirtualGaussDiagram {
    fn chord_ids(&self) -> Vec<ChordId> {
        self.chords()
    }

    fn delete_chords(&self, doomed: &BTreeSet<ChordId>) -> Self {
        self.remove_chords(doomed)
    }

    fn chord_count(&self) -> usize {
        VirtualGaussDiagram::chord_count(self)
    }
}

/// Parses tokens like `O1+ U2- U1+ O2-`; `()` is the crossingless circle.
pub fn parse_virtual(text: &str) -> Result<VirtualGaussDiagram> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.as_slice() {
        [] => return Err(Error::MalformedCode("empty code".into())),
        ["()"] => return Ok(VirtualGaussDiagram::unknot()),
        _ => {}
    }
    let mut parsed = Vec::with_capacity(toks.len());
    for tok in &toks {
        let role = match tok.chars().next() {
            Some('O') | Some('o') => Role::Over,
            Some('U') | Some('u') => Role::Under,
            _ => return Err(Error::MalformedCode(format!("token {tok:?} must start with O or U"))),
        };
        let sign = match tok.chars().last() {
            Some('+') => Sign::Plus,
            Some('-') | Some('\u{2212}') => Sign::Minus,
            _ => return Err(Error::MalformedCode(format!("token {tok:?} must end with + or -"))),
        };
        let body = &tok[1..tok.len() - tok.chars().last().unwrap().len_utf8()];
        parsed.push((body, role, sign));
    }
    let labeler = Labeler::new(parsed.iter().map(|p| p.0))?;
    let mut signs: BTreeMap<ChordId, Sign> = BTreeMap::new();
    let mut ends = Vec::with_capacity(parsed.len());
    for (body, role, sign) in parsed {
        let c = labeler.id(body);
        if let Some(&prev) = signs.get(&c) {
            if prev != sign {
                return Err(Error::SignMismatch(c));
            }
        }
        signs.insert(c, sign);
        ends.push((c, role));
    }
    VirtualGaussDiagram::new(ends, signs)
}

impl FromStr for VirtualGaussDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_virtual(s)
    }
}

impl fmt::Display for VirtualGaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ends.is_empty() {
            return write!(f, "()");
        }
        let toks: Vec<String> = self
            .ends
            .iter()
            .map(|&(c, r)| {
                let role = if r == Role::Over { 'O' } else { 'U' };
                let sign = if self.signs[&c] == Sign::Plus { '+' } else { '-' };
                format!("{role}{c}{sign}")
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VirtualGaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn key_round_trip() {
        let d = v("U2- O1+ U1+ O2-");
        let k = d.canonical_key();
        assert_eq!(k.to_string(), "O1+ U1+ O2- U2-");
        assert_eq!(k.to_diagram().canonical_key(), k);
        assert_eq!(VirtualGaussDiagram::unknot().canonical_key().to_string(), "()");
    }

    #[test]
    fn parse_examples() {
        let d = v("O1+ U1+");
        assert_eq!(d.chord_count(), 1);
        assert_eq!(d.sign(ChordId(1)).unwrap(), Sign::Plus);
        assert_eq!(d.arrow(ChordId(1)).unwrap(), (0, 1));

        let d = v("O1+ O2- U1+ U2-");
        assert_eq!(d.sign(ChordId(2)).unwrap(), Sign::Minus);
        assert!(d.base().linked(ChordId(1), ChordId(2)).unwrap());

        assert_eq!(parse_virtual("O1+ U1-"), Err(Error::SignMismatch(ChordId(1))));
        assert!(matches!(parse_virtual("O1+ O1+"), Err(Error::MalformedCode(_))));
        assert!(matches!(parse_virtual("X1+ U1+"), Err(Error::MalformedCode(_))));
        assert!(matches!(parse_virtual("O1+"), Err(Error::MalformedCode(_))));
        assert!(v("()").is_empty());
    }

    #[test]
    fn virtualise_flips_arrow_only() {
        let d = v("O1+ U1+");
        let w = d.virtualise(ChordId(1)).unwrap();
        assert_eq!(w.to_string(), "U1+ O1+");
        assert_eq!(w.writhe(), d.writhe());
        assert_eq!(w.virtualise(ChordId(1)).unwrap(), d);
        assert_eq!(d.virtualise(ChordId(4)), Err(Error::UnknownChord(ChordId(4))));
    }

    #[test]
    fn writhe_sums_signs() {
        assert_eq!(v("O1+ U1+").writhe(), 1);
        assert_eq!(v("()").writhe(), 0);
        assert_eq!(v("O1+ U2+ O3+ U1+ O2+ U3+").writhe(), 3);
        assert_eq!(v("O1- U2+ U1- O2+").writhe(), 0);
    }

    #[test]
    fn key_ignores_rotation_and_labels() {
        let a = v("O1+ U2- U1+ O2-");
        let b = v("U7- U5+ O7- O5+");
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), v("O1+ U2+ U1+ O2+").canonical_key());
        assert_ne!(a.canonical_key(), a.virtualise(ChordId(1)).unwrap().canonical_key());
    }

    #[test]
    fn display_round_trip() {
        for s in ["O1+ U1+", "O1+ U2- U1+ O2-", "()"] {
            assert_eq!(v(s).to_string(), s);
        }
    }
}
