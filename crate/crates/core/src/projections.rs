//! Deleting odd chords, and the filtration of virtual diagrams by index
//! divisibility.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{canonical_key, ChordDiagram, GaussPhrase, VirtualGaussDiagram};
use crate::error::{Error, Result};
use crate::moves::{
    apply_move, apply_move_traced, apply_virtual_move, apply_virtual_move_traced, find_moves,
    find_virtual_moves, MoveInstance, MoveKind, VirtualMove,
};
use crate::parity::{index, GaussianParity, HierarchyParity, Parity};

/// Removes every chord that `parity` calls odd.
pub fn f_map<D, P>(d: &D, parity: &P) -> Result<D>
where
    D: ChordDiagram + Clone,
    P: Parity<D>,
{
    let odd: BTreeSet<_> = parity.parity(d)?.odd_chords().into_iter().collect();
    if odd.is_empty() {
        return Ok(d.clone());
    }
    Ok(d.delete_chords(&odd))
}

/// Applies [`f_map`] with the Gaussian parity until every chord is even.
/// Returns the fixpoint and the number of rounds that removed chords.
pub fn gaussian_fixpoint(p: &GaussPhrase) -> (GaussPhrase, usize) {
    let mut cur = p.clone();
    let mut rounds = 0;
    loop {
        let next = f_map(&cur, &GaussianParity).expect("gaussian parity is total");
        if next.chord_count() == cur.chord_count() {
            return (cur, rounds);
        }
        cur = next;
        rounds += 1;
    }
}

/// A layer of the filtration: diagrams whose indices are all divisible by
/// `2^k`, or all zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(k) => write!(f, "{k}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Level::Infinite),
            _ => s
                .parse()
                .map(Level::Finite)
                .map_err(|_| Error::MalformedCode(format!("bad level {s:?}"))),
        }
    }
}

pub fn in_filtration(d: &VirtualGaussDiagram, level: Level) -> bool {
    let ind = index(d);
    match level {
        Level::Finite(k) => ind.divisible_by_pow2(k),
        Level::Infinite => ind.all_zero(),
    }
}

/// Largest `j` with every index divisible by `2^j`, capped at `cap`.
fn current_level(d: &VirtualGaussDiagram, cap: u32) -> u32 {
    let mut j = 0;
    while j < cap && in_filtration(d, Level::Finite(j + 1)) {
        j += 1;
    }
    j
}

/// Deletes odd chords layer by layer until the diagram lies in `level`.
/// Each round uses the parity of the highest layer the diagram is already
/// in, which always finds an odd chord, so at most `chord_count` rounds run.
pub fn project_level(d: &VirtualGaussDiagram, level: Level) -> VirtualGaussDiagram {
    let mut cur = d.clone();
    while !in_filtration(&cur, level) {
        let cap = match level {
            Level::Finite(k) => k,
            Level::Infinite => 64,
        };
        let j = current_level(&cur, cap);
        cur = f_map(&cur, &HierarchyParity { level: j }).expect("diagram lies on layer j");
    }
    cur
}

/// Whether `f(p)` and `f(m(p))` are isomorphic or one move apart.
pub fn f_well_defined<P: Parity<GaussPhrase>>(parity: &P, p: &GaussPhrase, m: &MoveInstance) -> Result<bool> {
    let q = apply_move_traced(p, m)?.phrase;
    let (fp, fq) = (f_map(p, parity)?, f_map(&q, parity)?);
    let (kp, kq) = (canonical_key(&fp), canonical_key(&fq));
    if kp == kq {
        return Ok(true);
    }
    let (big, small) = if fp.chord_count() >= fq.chord_count() { (&fp, &kq) } else { (&fq, &kp) };
    let kind = match fp.chord_count().abs_diff(fq.chord_count()) {
        0 => MoveKind::R3,
        1 => MoveKind::R1Remove,
        2 => MoveKind::R2Remove,
        _ => return Ok(false),
    };
    Ok(find_moves(big, kind)
        .iter()
        .any(|m| apply_move(big, m).map(|r| canonical_key(&r) == *small).unwrap_or(false)))
}

pub fn f_well_defined_virtual<P: Parity<VirtualGaussDiagram>>(
    parity: &P,
    d: &VirtualGaussDiagram,
    m: &VirtualMove,
) -> Result<bool> {
    let e = apply_virtual_move_traced(d, m)?.diagram;
    let (fd, fe) = (f_map(d, parity)?, f_map(&e, parity)?);
    let (kd, ke) = (fd.canonical_key(), fe.canonical_key());
    if kd == ke {
        return Ok(true);
    }
    let (big, small) = if fd.chord_count() >= fe.chord_count() { (&fd, &ke) } else { (&fe, &kd) };
    let kind = match fd.chord_count().abs_diff(fe.chord_count()) {
        0 => MoveKind::R3,
        1 => MoveKind::R1Remove,
        2 => MoveKind::R2Remove,
        _ => return Ok(false),
    };
    Ok(find_virtual_moves(big, kind)
        .iter()
        .any(|m| apply_virtual_move(big, m).map(|r| r.canonical_key() == *small).unwrap_or(false)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::ComponentParity;

    fn p(s: &str) -> GaussPhrase {
        s.parse().unwrap()
    }

    fn v(s: &str) -> VirtualGaussDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn f_examples() {
        let t = p("1 2 3 1 2 3");
        assert_eq!(f_map(&t, &GaussianParity).unwrap(), t);
        assert_eq!(f_map(&p("1 2 1 2"), &GaussianParity).unwrap().to_string(), "()");
        assert_eq!(f_map(&p("1 2 1 3 2 3"), &GaussianParity).unwrap().to_string(), "2 2");
        let link = f_map(&p("1 2 / 1 2 3 3"), &ComponentParity).unwrap();
        assert_eq!(canonical_key(&link), canonical_key(&p("3 3 / ()")));
    }

    #[test]
    fn filtration_examples() {
        let classical = v("O1+ U2+ O3+ U1+ O2+ U3+");
        for k in 0..6 {
            assert!(in_filtration(&classical, Level::Finite(k)));
        }
        assert!(in_filtration(&classical, Level::Infinite));
        assert!(!in_filtration(&v("O1+ O2+ U1+ U2+"), Level::Finite(1)));
        assert!(in_filtration(&v("()"), Level::Infinite));
    }

    #[test]
    fn projection_examples() {
        let classical = v("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(project_level(&classical, Level::Infinite), classical);
        assert!(project_level(&v("O1+ O2+ U1+ U2+"), Level::Finite(1)).is_empty());
        let d = v("O1+ O2+ O3+ O4+ O5+ U1+ U2+ U3+ U4+ U5+");
        for level in [Level::Finite(1), Level::Finite(2), Level::Finite(3), Level::Infinite] {
            assert!(in_filtration(&project_level(&d, level), level));
        }
    }

    #[test]
    fn fixpoint_is_all_even() {
        let (fix, rounds) = gaussian_fixpoint(&p("1 2 1 3 2 4 3 4"));
        assert!(crate::parity::gaussian_parity(&fix).all_even());
        assert!(rounds <= 4);
    }

    #[test]
    fn level_parse() {
        assert_eq!("inf".parse::<Level>().unwrap(), Level::Infinite);
        assert_eq!("3".parse::<Level>().unwrap(), Level::Finite(3));
        assert!("x".parse::<Level>().is_err());
    }
}
