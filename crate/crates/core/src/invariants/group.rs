use std::fmt;

use serde::Serialize;

use crate::diagram::{ChordId, GaussPhrase, LongGaussDiagram};
use crate::error::{Error, Result};
use crate::parity::gaussian_parity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChordType {
    Even,
    /// Odd, linked with an odd number of odd chords.
    FirstOdd,
    /// Odd, linked with an odd number of even chords.
    SecondOdd,
}

/// Type of every chord of a one-component phrase.
pub fn chord_types(p: &GaussPhrase) -> Vec<(ChordId, ChordType)> {
    let parity = gaussian_parity(p);
    let chords = p.chords();
    chords
        .iter()
        .map(|&c| {
            if parity.is_even(c) {
                return (c, ChordType::Even);
            }
            let odd_partners = chords
                .iter()
                .filter(|&&d| parity.is_odd(d) && p.linked(c, d).unwrap_or(false))
                .count();
            let t = if odd_partners % 2 == 1 {
                ChordType::FirstOdd
            } else {
                ChordType::SecondOdd
            };
            (c, t)
        })
        .collect()
}

pub fn chord_type(p: &GaussPhrase, c: ChordId) -> Result<ChordType> {
    chord_types(p)
        .into_iter()
        .find(|(d, _)| *d == c)
        .map(|(_, t)| t)
        .ok_or(Error::UnknownChord(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    A,
    B,
    BPrime,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::A => "a",
            Letter::B => "b",
            Letter::BPrime => "b'",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GammaWord(pub Vec<Letter>);

impl fmt::Display for GammaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Letters read from the basepoint: `a` for even chords, `b` for odd
/// chords of the first type, `b'` for the second type.
pub fn gamma_word(d: &LongGaussDiagram) -> GammaWord {
    let types = chord_types(d.phrase());
    let letter = |c: ChordId| match types.iter().find(|(d, _)| *d == c).map(|x| x.1) {
        Some(ChordType::FirstOdd) => Letter::B,
        Some(ChordType::SecondOdd) => Letter::BPrime,
        _ => Letter::A,
    };
    GammaWord(d.word().into_iter().map(letter).collect())
}

/// A vertex `(x, y)` of the strip Cayley graph, `x ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub x: u8,
    pub y: i64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { x: 0, y: 0 };

    /// Right multiplication by one generator.
    pub fn step(self, l: Letter) -> GroupElement {
        let even = (self.x as i64 + self.y).rem_euclid(2) == 0;
        match l {
            Letter::A => GroupElement { x: 1 - self.x, y: self.y },
            Letter::B => GroupElement {
                x: self.x,
                y: self.y + if even { 1 } else { -1 },
            },
            Letter::BPrime => GroupElement {
                x: self.x,
                y: self.y + if even { -1 } else { 1 },
            },
        }
    }

    /// A word reaching this element from the identity.
    pub fn word(self) -> Vec<Letter> {
        let mut out = Vec::new();
        let mut cur = GroupElement::IDENTITY;
        while cur.y != self.y {
            let up = self.y > cur.y;
            let b_goes_up = cur.y.rem_euclid(2) == 0;
            let l = if up == b_goes_up { Letter::B } else { Letter::BPrime };
            out.push(l);
            cur = cur.step(l);
        }
        if self.x == 1 {
            out.push(Letter::A);
        }
        out
    }

    pub fn mul(self, other: GroupElement) -> GroupElement {
        other.word().into_iter().fold(self, GroupElement::step)
    }

    pub fn inverse(self) -> GroupElement {
        // every generator is an involution
        self.word().into_iter().rev().fold(GroupElement::IDENTITY, GroupElement::step)
    }

    /// `h⁻¹ g h`.
    pub fn conjugate_by(self, h: GroupElement) -> GroupElement {
        h.inverse().mul(self).mul(h)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

pub fn eval_group(w: &GammaWord) -> GroupElement {
    w.0.iter().copied().fold(GroupElement::IDENTITY, GroupElement::step)
}

/// `l` with `γ` landing on `(0, 4l)`.
pub fn l_invariant(d: &LongGaussDiagram) -> Result<i64> {
    let g = eval_group(&gamma_word(d));
    if g.x != 0 || g.y % 4 != 0 {
        return Err(Error::InvariantViolation(format!("word lands on {g}")));
    }
    Ok(g.y / 4)
}

/// `|l|` for a closed one-component phrase, cut at its stored start.
pub fn big_l_invariant(p: &GaussPhrase) -> Result<u64> {
    Ok(l_invariant(&LongGaussDiagram::from_phrase(p.clone())?)?.unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> GammaWord {
        GammaWord(
            s.split_whitespace()
                .map(|t| match t {
                    "a" => Letter::A,
                    "b" => Letter::B,
                    _ => Letter::BPrime,
                })
                .collect(),
        )
    }

    fn long(s: &str) -> LongGaussDiagram {
        LongGaussDiagram::from_phrase(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(eval_group(&word("a a")), GroupElement::IDENTITY);
        assert_eq!(eval_group(&word("a b")), GroupElement { x: 1, y: -1 });
        assert_eq!(eval_group(&word("b' a")), GroupElement { x: 1, y: -1 });
        assert_eq!(eval_group(&word("b b b b")), GroupElement::IDENTITY);
        assert_eq!(eval_group(&word("b' b'")), GroupElement::IDENTITY);
    }

    #[test]
    fn chord_types_examples() {
        let p: GaussPhrase = "1 2 1 2".parse().unwrap();
        assert!(chord_types(&p).iter().all(|(_, t)| *t == ChordType::FirstOdd));
        let q: GaussPhrase = "1 2 1 3 2 3".parse().unwrap();
        assert_eq!(chord_type(&q, ChordId(1)).unwrap(), ChordType::SecondOdd);
        assert_eq!(chord_type(&q, ChordId(2)).unwrap(), ChordType::Even);
        assert_eq!(chord_type(&q, ChordId(9)), Err(Error::UnknownChord(ChordId(9))));
    }

    #[test]
    fn gamma_examples() {
        assert!(gamma_word(&long("()")).0.is_empty());
        assert_eq!(gamma_word(&long("1 2 1 2")).to_string(), "b b b b");
        assert_eq!(gamma_word(&long("1 2 3 1 2 3")).to_string(), "a a a a a a");
        assert_eq!(l_invariant(&long("()")).unwrap(), 0);
        assert_eq!(l_invariant(&long("1 2 3 1 2 3")).unwrap(), 0);
    }

    #[test]
    fn group_laws() {
        let pts: Vec<GroupElement> = (0..2u8)
            .flat_map(|x| (-5..6).map(move |y| GroupElement { x, y }))
            .collect();
        for &g in &pts {
            assert_eq!(eval_group(&GammaWord(g.word())), g);
            assert_eq!(g.mul(g.inverse()), GroupElement::IDENTITY);
            for &h in &pts {
                let gh = g.mul(h);
                let mut w = g.word();
                w.extend(h.word());
                assert_eq!(eval_group(&GammaWord(w)), gh);
            }
        }
    }

    #[test]
    fn conjugacy_class_of_vertical_elements() {
        let g = GroupElement { x: 0, y: 8 };
        let a = GroupElement { x: 1, y: 0 };
        let b = GroupElement { x: 0, y: 1 };
        assert_eq!(g.conjugate_by(a).y.abs(), 8);
        assert_eq!(g.conjugate_by(b).y.abs(), 8);
    }
}
