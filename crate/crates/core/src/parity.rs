//! Parities on chords and the axioms they must satisfy.
//!
//! A parity assigns 0 (even) or 1 (odd) to each chord so that a loop chord
//! is even, the two chords of a bigon agree, a triangle has zero or two odd
//! chords, and no chord changes parity under a move unless it disappears.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::diagram::{ChordId, GaussPhrase, Role, VirtualGaussDiagram};
use crate::error::{Error, Result};
use crate::moves::{apply_move_traced, apply_virtual_move_traced, MoveInstance, MoveKind, VirtualMove};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityAssignment(BTreeMap<ChordId, u8>);

impl ParityAssignment {
    pub fn from_odd(values: impl IntoIterator<Item = (ChordId, bool)>) -> Self {
        ParityAssignment(values.into_iter().map(|(c, odd)| (c, odd as u8)).collect())
    }

    pub fn get(&self, c: ChordId) -> Option<u8> {
        self.0.get(&c).copied()
    }

    pub fn is_odd(&self, c: ChordId) -> bool {
        self.get(c) == Some(1)
    }

    pub fn is_even(&self, c: ChordId) -> bool {
        self.get(c) == Some(0)
    }

    pub fn odd_chords(&self) -> Vec<ChordId> {
        self.0.iter().filter(|(_, &v)| v == 1).map(|(&c, _)| c).collect()
    }

    pub fn even_chords(&self) -> Vec<ChordId> {
        self.0.iter().filter(|(_, &v)| v == 0).map(|(&c, _)| c).collect()
    }

    pub fn all_even(&self) -> bool {
        self.0.values().all(|&v| v == 0)
    }

    pub fn all_odd(&self) -> bool {
        self.0.values().all(|&v| v == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ChordId, u8)> + '_ {
        self.0.iter().map(|(&c, &v)| (c, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A parity on diagrams of type `D`.
pub trait Parity<D> {
    fn parity(&self, d: &D) -> Result<ParityAssignment>;
}

/// Odd chords are those linked with an odd number of chords. On a phrase
/// with several components only chords on the same component are counted.
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussianParity;

impl Parity<GaussPhrase> for GaussianParity {
    fn parity(&self, p: &GaussPhrase) -> Result<ParityAssignment> {
        Ok(gaussian_parity(p))
    }
}

impl Parity<VirtualGaussDiagram> for GaussianParity {
    fn parity(&self, d: &VirtualGaussDiagram) -> Result<ParityAssignment> {
        Ok(gaussian_parity(&d.base()))
    }
}

pub fn gaussian_parity(p: &GaussPhrase) -> ParityAssignment {
    ParityAssignment::from_odd(p.interlacement_counts().into_iter().map(|(c, n)| (c, n % 2 == 1)))
}

/// On a two-component link: a chord is odd when it joins the components.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComponentParity;

impl Parity<GaussPhrase> for ComponentParity {
    fn parity(&self, p: &GaussPhrase) -> Result<ParityAssignment> {
        component_parity(p)
    }
}

pub fn component_parity(p: &GaussPhrase) -> Result<ParityAssignment> {
    if p.unicursal_count() != 2 {
        return Err(Error::WrongComponentCount {
            expected: 2,
            found: p.unicursal_count(),
        });
    }
    Ok(ParityAssignment::from_odd(
        p.chord_positions().into_iter().map(|(c, [a, b])| (c, a.comp != b.comp)),
    ))
}

/// Parity read off the index on the `level`-th filtration layer: every
/// index must be divisible by `2^level`, and a chord is odd when its index
/// is not divisible by `2^(level + 1)`. Level 0 is the Gaussian parity.
#[derive(Clone, Copy, Debug)]
pub struct HierarchyParity {
    pub level: u32,
}

impl Parity<VirtualGaussDiagram> for HierarchyParity {
    fn parity(&self, d: &VirtualGaussDiagram) -> Result<ParityAssignment> {
        hierarchy_parity(d, self.level)
    }
}

pub fn hierarchy_parity(d: &VirtualGaussDiagram, level: u32) -> Result<ParityAssignment> {
    let ind = index(d);
    let step = 1u64.checked_shl(level).unwrap_or(0);
    if step == 0 {
        return Err(Error::NotInFiltrationLevel(level));
    }
    if ind.iter().any(|(_, v)| v % step != 0) {
        return Err(Error::NotInFiltrationLevel(level));
    }
    Ok(ParityAssignment::from_odd(ind.iter().map(|(c, v)| (c, (v / step) % 2 == 1))))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IndexAssignment(BTreeMap<ChordId, u64>);

impl IndexAssignment {
    pub fn get(&self, c: ChordId) -> Option<u64> {
        self.0.get(&c).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ChordId, u64)> + '_ {
        self.0.iter().map(|(&c, &v)| (c, v))
    }

    pub fn all_zero(&self) -> bool {
        self.0.values().all(|&v| v == 0)
    }

    /// Whether every index is divisible by `2^k`.
    pub fn divisible_by_pow2(&self, k: u32) -> bool {
        match 1u64.checked_shl(k) {
            Some(m) if k < 64 => self.0.values().all(|v| v % m == 0),
            _ => self.all_zero(),
        }
    }
}

/// For each chord, walk from its over end to its under end and collect the
/// chords with exactly one end on that arc. A crosser whose over end lies
/// on the arc counts with its sign, one whose under end lies there counts
/// with the opposite sign; the index is the absolute value of the sum.
pub fn index(d: &VirtualGaussDiagram) -> IndexAssignment {
    let n = d.len();
    let arrows = d.arrows();
    let mut out = BTreeMap::new();
    for (&c, &(o, u)) in &arrows {
        let mut seen: BTreeMap<ChordId, (usize, Role)> = BTreeMap::new();
        let mut i = (o + 1) % n;
        while i != u {
            let (e, r) = d.ends()[i];
            seen.entry(e).and_modify(|s| s.0 += 1).or_insert((1, r));
            i = (i + 1) % n;
        }
        let sum: i64 = seen
            .iter()
            .filter(|(_, &(k, _))| k == 1)
            .map(|(e, &(_, r))| match r {
                Role::Over => d.signs()[e].value(),
                Role::Under => -d.signs()[e].value(),
            })
            .sum();
        out.insert(c, sum.unsigned_abs());
    }
    IndexAssignment(out)
}

fn axioms_hold(
    kind: MoveKind,
    participants: &[ChordId],
    before: &ParityAssignment,
    after: &ParityAssignment,
) -> bool {
    // the side of the move on which the participants exist
    let local = if kind.is_increasing() { after } else { before };
    let odd = participants.iter().filter(|&&c| local.is_odd(c)).count();
    let local_ok = match kind {
        MoveKind::R1Add | MoveKind::R1Remove => odd == 0,
        MoveKind::R2Add | MoveKind::R2Remove => odd != 1,
        MoveKind::R3 => (odd == 0 || odd == 2) && participants.iter().all(|&c| before.get(c) == after.get(c)),
    };
    let survivors_ok = before
        .iter()
        .filter(|(c, _)| !participants.contains(c))
        .all(|(c, v)| after.get(c) == Some(v));
    local_ok && survivors_ok
}

/// Checks the parity axioms for `parity` on the move `m` applied to `p`.
pub fn check_parity_axioms<P: Parity<GaussPhrase>>(parity: &P, p: &GaussPhrase, m: &MoveInstance) -> Result<bool> {
    let applied = apply_move_traced(p, m)?;
    let before = parity.parity(p)?;
    let after = parity.parity(&applied.phrase)?;
    Ok(axioms_hold(m.kind(), &applied.participants, &before, &after))
}

pub fn check_virtual_parity_axioms<P: Parity<VirtualGaussDiagram>>(
    parity: &P,
    d: &VirtualGaussDiagram,
    m: &VirtualMove,
) -> Result<bool> {
    let applied = apply_virtual_move_traced(d, m)?;
    let before = parity.parity(d)?;
    let after = parity.parity(&applied.diagram)?;
    Ok(axioms_hold(m.kind(), &applied.participants, &before, &after))
}

/// Index behaviour under a move: a loop chord has index 0, the chords of a
/// bigon share their index, a triangle's indices cancel for some choice of
/// signs, and no index changes.
pub fn check_index_axioms(d: &VirtualGaussDiagram, m: &VirtualMove) -> Result<bool> {
    let applied = apply_virtual_move_traced(d, m)?;
    let before = index(d);
    let after = index(&applied.diagram);
    let kind = m.kind();
    let local = if kind.is_increasing() { &after } else { &before };
    let vals: Vec<i64> = applied
        .participants
        .iter()
        .map(|&c| local.get(c).unwrap_or(0) as i64)
        .collect();
    let local_ok = match kind {
        MoveKind::R1Add | MoveKind::R1Remove => vals[0] == 0,
        MoveKind::R2Add | MoveKind::R2Remove => vals[0] == vals[1],
        MoveKind::R3 => {
            let [a, b, c] = [vals[0], vals[1], vals[2]];
            [a + b + c, a + b - c, a - b + c, a - b - c].contains(&0)
                && applied.participants.iter().all(|&x| before.get(x) == after.get(x))
        }
    };
    let survivors_ok = before
        .iter()
        .filter(|(c, _)| !applied.participants.contains(c))
        .all(|(c, v)| after.get(c) == Some(v));
    Ok(local_ok && survivors_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{find_moves, find_virtual_moves};

    fn p(s: &str) -> GaussPhrase {
        s.parse().unwrap()
    }

    fn v(s: &str) -> VirtualGaussDiagram {
        s.parse().unwrap()
    }

    fn odd_labels(a: &ParityAssignment) -> Vec<u32> {
        a.odd_chords().iter().map(|c| c.0).collect()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(odd_labels(&gaussian_parity(&p("1 2 1 2"))), vec![1, 2]);
        assert!(gaussian_parity(&p("1 2 3 1 2 3")).all_even());
        assert_eq!(odd_labels(&gaussian_parity(&p("1 2 1 3 2 3"))), vec![1, 3]);
    }

    #[test]
    fn component_examples() {
        assert!(component_parity(&p("1 2 / 1 2")).unwrap().all_odd());
        let mixed = component_parity(&p("1 1 2 / 2")).unwrap();
        assert!(mixed.is_even(ChordId(1)));
        assert!(mixed.is_odd(ChordId(2)));
        assert!(matches!(component_parity(&p("1 1")), Err(Error::WrongComponentCount { .. })));
        assert!(component_parity(&p("1 1 / ()")).unwrap().all_even());
    }

    #[test]
    fn index_examples() {
        let ind = index(&v("O1+ O2+ U1+ U2+"));
        assert_eq!(ind.get(ChordId(1)), Some(1));
        assert_eq!(ind.get(ChordId(2)), Some(1));
        assert!(index(&v("O1+ U2+ O3+ U1+ O2+ U3+")).all_zero());
        assert!(index(&v("O1+ U1+ O2- U2-")).all_zero());
        assert!(index(&v("()")).all_zero());
    }

    #[test]
    fn hierarchy_levels() {
        // index 2: chord 1 crossed twice in the same direction by + chords
        let d = v("O1+ O2+ O3+ U1+ U2+ U3+");
        let ind = index(&d);
        assert_eq!(ind.get(ChordId(1)), Some(2));
        assert_eq!(ind.get(ChordId(2)), Some(0));
        assert_eq!(ind.get(ChordId(3)), Some(2));
        assert!(hierarchy_parity(&d, 1).unwrap().is_odd(ChordId(1)));
        assert!(hierarchy_parity(&d, 1).unwrap().is_even(ChordId(2)));
        assert!(matches!(hierarchy_parity(&v("O1+ O2+ U1+ U2+"), 1), Err(Error::NotInFiltrationLevel(1))));
        let classical = v("O1+ U2+ O3+ U1+ O2+ U3+");
        for k in 0..5 {
            assert!(hierarchy_parity(&classical, k).unwrap().all_even());
        }
    }

    #[test]
    fn index_four_is_even_on_first_layer() {
        let d = v("O1+ O2+ O3+ O4+ O5+ U1+ U2+ U3+ U4+ U5+");
        assert_eq!(index(&d).get(ChordId(1)), Some(4));
        assert!(hierarchy_parity(&d, 1).unwrap().is_even(ChordId(1)));
        // chord 2 has index 2, so the diagram is not on the second layer
        assert_eq!(index(&d).get(ChordId(2)), Some(2));
        assert!(hierarchy_parity(&d, 2).is_err());
    }

    #[test]
    fn gaussian_axioms_on_small_examples() {
        for s in ["1 1", "1 2 1 2", "1 2 3 1 2 3", "1 2 1 3 2 3", "1 2 3 4 1 2 3 4"] {
            let q = p(s);
            for kind in MoveKind::ALL {
                for m in find_moves(&q, kind) {
                    assert!(check_parity_axioms(&GaussianParity, &q, &m).unwrap(), "{s} {m:?}");
                }
            }
        }
    }

    struct AllOdd;

    impl Parity<GaussPhrase> for AllOdd {
        fn parity(&self, p: &GaussPhrase) -> Result<ParityAssignment> {
            Ok(ParityAssignment::from_odd(p.chords().into_iter().map(|c| (c, true))))
        }
    }

    #[test]
    fn constant_odd_fails_first_axiom() {
        let q = p("1 1");
        let m = &find_moves(&q, MoveKind::R1Remove)[0];
        assert!(!check_parity_axioms(&AllOdd, &q, m).unwrap());
    }

    #[test]
    fn index_axioms_on_small_examples() {
        for s in ["O1- U1-", "O1+ O2+ U1+ U2+", "OX+ OY+ UX+ OZ+ UY+ UZ+", "O1+ O2- U1+ U2-"] {
            let d = v(s);
            for kind in MoveKind::ALL {
                for m in find_virtual_moves(&d, kind) {
                    assert!(check_index_axioms(&d, &m).unwrap(), "{s} {m:?}");
                    assert!(check_virtual_parity_axioms(&GaussianParity, &d, &m).unwrap());
                }
            }
        }
    }

    #[test]
    fn index_matches_gaussian_parity_mod_two() {
        for s in ["O1+ O2+ U1+ U2+", "O1+ O2- O3+ U1+ U2- U3+", "O1- U2+ O3+ U1- O2+ U3+"] {
            let d = v(s);
            let g = gaussian_parity(&d.base());
            for (c, i) in index(&d).iter() {
                assert_eq!(g.get(c), Some((i % 2) as u8));
            }
        }
    }
}
