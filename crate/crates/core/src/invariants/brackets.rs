use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Z2GElement;
use crate::diagram::resolve;
use crate::diagram::{smooth, ChordId, GaussPhrase, Smoothing};
use crate::error::{Error, Result};
use crate::moves::{find_moves, MoveKind};
use crate::parity::{ComponentParity, Parity};

/// Every simultaneous smoothing of the chords the parity calls even; odd
/// chords are kept.
pub fn even_smoothings<P: Parity<GaussPhrase>>(p: &GaussPhrase, parity: &P) -> Result<Vec<GaussPhrase>> {
    let even = parity.parity(p)?.even_chords();
    let mut out = Vec::with_capacity(1 << even.len());
    for mask in 0u64..(1u64 << even.len()) {
        let state: BTreeMap<ChordId, Smoothing> = even
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, if mask >> i & 1 == 1 { Smoothing::Split } else { Smoothing::Join }))
            .collect();
        out.push(resolve(p, |c| state.get(&c).copied()));
    }
    Ok(out)
}

fn require_knot(p: &GaussPhrase) -> Result<()> {
    if p.unicursal_count() != 1 {
        return Err(Error::WrongComponentCount {
            expected: 1,
            found: p.unicursal_count(),
        });
    }
    Ok(())
}

/// The smoothings entering the bracket: those leaving one component.
pub fn bracket_summands<P: Parity<GaussPhrase>>(p: &GaussPhrase, parity: &P) -> Result<Vec<GaussPhrase>> {
    require_knot(p)?;
    let mut states = even_smoothings(p, parity)?;
    states.retain(|s| s.unicursal_count() == 1);
    Ok(states)
}

/// ℤ₂-sum of the bigon-reduced classes of all one-component smoothings
/// at even chords.
pub fn bracket<P: Parity<GaussPhrase>>(p: &GaussPhrase, parity: &P) -> Result<Z2GElement> {
    let mut out = Z2GElement::zero(1, false);
    for s in bracket_summands(p, parity)? {
        out.toggle(Z2GElement::class_of(&s, 1, false)?);
    }
    Ok(out)
}

/// Link version: smoothings keeping the component count, with split
/// results counted as zero.
pub fn bracket_links<P: Parity<GaussPhrase>>(p: &GaussPhrase, parity: &P) -> Result<Z2GElement> {
    let n = p.unicursal_count();
    let mut out = Z2GElement::zero(n, true);
    for s in even_smoothings(p, parity)? {
        if s.unicursal_count() == n {
            out.toggle(Z2GElement::class_of(&s, n, true)?);
        }
    }
    Ok(out)
}

/// At least one chord, all chords odd and no bigon to remove.
pub fn is_irreducibly_odd<P: Parity<GaussPhrase>>(p: &GaussPhrase, parity: &P) -> Result<bool> {
    Ok(p.chord_count() > 0 && parity.parity(p)?.all_odd() && find_moves(p, MoveKind::R2Remove).is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaFilter {
    All,
    Even,
    Odd,
}

fn delta_chords<P: Parity<GaussPhrase>>(p: &GaussPhrase, filter: DeltaFilter, parity: &P) -> Result<Vec<ChordId>> {
    require_knot(p)?;
    Ok(match filter {
        DeltaFilter::All => p.chords(),
        DeltaFilter::Even => parity.parity(p)?.even_chords(),
        DeltaFilter::Odd => parity.parity(p)?.odd_chords(),
    })
}

/// ℤ₂-sum over the selected chords of the two-component smoothing, taken
/// modulo bigon moves with split links set to zero.
pub fn turaev_delta<P: Parity<GaussPhrase>>(p: &GaussPhrase, filter: DeltaFilter, parity: &P) -> Result<Z2GElement> {
    let mut out = Z2GElement::zero(2, true);
    for c in delta_chords(p, filter, parity)? {
        out.toggle(Z2GElement::class_of(&smooth(p, c, Smoothing::Split)?, 2, true)?);
    }
    Ok(out)
}

/// [`turaev_delta`] with each summand replaced by its link bracket under
/// the component parity. The raw sum changes under all three moves, since
/// curls and triangles left in a summand survive bigon reduction; this one
/// does not.
pub fn turaev_delta_bracket<P: Parity<GaussPhrase>>(
    p: &GaussPhrase,
    filter: DeltaFilter,
    parity: &P,
) -> Result<Z2GElement> {
    let mut out = Z2GElement::zero(2, true);
    for c in delta_chords(p, filter, parity)? {
        let link = smooth(p, c, Smoothing::Split)?;
        out = out.z2_add(&bracket_links(&link, &ComponentParity)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::GaussianParity;

    fn p(s: &str) -> GaussPhrase {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_examples() {
        let g = GaussianParity;
        assert!(bracket(&p("1 2 3 1 2 3"), &g).unwrap().is_single(&GaussPhrase::unknot()));
        assert!(bracket(&p("()"), &g).unwrap().is_single(&GaussPhrase::unknot()));
        // both chords odd: the only state is the diagram, which reduces
        assert!(bracket(&p("1 2 1 2"), &g).unwrap().is_single(&GaussPhrase::unknot()));
        assert!(matches!(bracket(&p("1 / 1"), &g), Err(Error::WrongComponentCount { .. })));
    }

    #[test]
    fn all_even_count_is_odd() {
        let s = bracket_summands(&p("1 2 3 1 2 3"), &GaussianParity).unwrap();
        assert_eq!(s.len() % 2, 1);
    }

    #[test]
    fn link_bracket_examples() {
        let link = p("1 2 / 1 2");
        let b = bracket_links(&link, &ComponentParity).unwrap();
        // the two chords form a bigon between the components, which
        // reduces to a split pair of circles
        assert!(b.is_zero());
        let tied = p("1 2 3 / 1 3 2");
        let b = bracket_links(&tied, &ComponentParity).unwrap();
        assert!(b.is_single(&tied));
    }

    #[test]
    fn irreducibly_odd_examples() {
        assert!(!is_irreducibly_odd(&p("1 2 1 2"), &GaussianParity).unwrap());
        assert!(!is_irreducibly_odd(&p("1 2 3 1 2 3"), &GaussianParity).unwrap());
        assert!(!is_irreducibly_odd(&p("()"), &GaussianParity).unwrap());
    }

    #[test]
    fn delta_examples() {
        let g = GaussianParity;
        assert!(turaev_delta(&p("1 2 1 2"), DeltaFilter::All, &g).unwrap().is_zero());
        assert!(turaev_delta(&p("1 1"), DeltaFilter::All, &g).unwrap().is_zero());
        assert!(turaev_delta(&p("()"), DeltaFilter::All, &g).unwrap().is_zero());
    }
}
