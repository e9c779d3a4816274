use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ChordId, GaussPhrase};
use crate::error::{Error, Result};

/// The two reconnections at a vertex.
///
/// `Split` follows the orientation of both strands: at a self-crossing of
/// one component it cuts the component in two, at a crossing of two
/// components it merges them. `Join` pairs the two incoming half-edges
/// with each other and the two outgoing ones with each other, which keeps
/// a self-crossing component whole (one arc is traversed backwards) and
/// merges two components with one of them reversed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothing {
    Join,
    Split,
}

/// Smooths a single chord.
pub fn smooth(p: &GaussPhrase, c: ChordId, mode: Smoothing) -> Result<GaussPhrase> {
    if !p.contains(c) {
        return Err(Error::UnknownChord(c));
    }
    Ok(resolve(p, |d| (d == c).then_some(mode)))
}

/// Smooths every chord in `state` simultaneously. Reconnections are read
/// off the original orientation of `p`, so the result does not depend on
/// the order in which chords are listed.
pub fn smooth_state(p: &GaussPhrase, state: &BTreeMap<ChordId, Smoothing>) -> Result<GaussPhrase> {
    if let Some(c) = state.keys().find(|c| !p.contains(**c)) {
        return Err(Error::UnknownChord(*c));
    }
    Ok(resolve(p, |d| state.get(&d).copied()))
}

/// Half-edge walk over the phrase. Edge `e` (a global position index) runs
/// from position `e` to the next position on the same circle; chords for
/// which `choice` returns `None` stay as vertices of the result.
pub(crate) fn resolve(p: &GaussPhrase, choice: impl Fn(ChordId) -> Option<Smoothing>) -> GaussPhrase {
    let comps = p.components();
    let total: usize = comps.iter().map(Vec::len).sum();
    let mut label = Vec::with_capacity(total);
    let mut start = Vec::with_capacity(total);
    let mut len = Vec::with_capacity(total);
    for comp in comps {
        let s = label.len();
        for &c in comp {
            label.push(c);
            start.push(s);
            len.push(comp.len());
        }
    }
    let mut partner = vec![usize::MAX; total];
    let mut first: BTreeMap<ChordId, usize> = BTreeMap::new();
    for (g, &c) in label.iter().enumerate() {
        if let Some(h) = first.remove(&c) {
            partner[g] = h;
            partner[h] = g;
        } else {
            first.insert(c, g);
        }
    }
    let next = |g: usize| start[g] + (g - start[g] + 1) % len[g];
    let prev = |g: usize| start[g] + (g - start[g] + len[g] - 1) % len[g];
    let action: Vec<Option<Smoothing>> = label.iter().map(|&c| choice(c)).collect();

    let mut visited = vec![false; total];
    let mut components = Vec::new();
    let mut free_loops = p.free_loops();
    for e0 in 0..total {
        if visited[e0] {
            continue;
        }
        let mut word = Vec::new();
        let (mut e, mut forward) = (e0, true);
        loop {
            visited[e] = true;
            let at = if forward { next(e) } else { e };
            match action[at] {
                None => {
                    word.push(label[at]);
                    e = if forward { at } else { prev(at) };
                }
                Some(Smoothing::Split) => {
                    let q = partner[at];
                    e = if forward { q } else { prev(q) };
                }
                Some(Smoothing::Join) => {
                    let q = partner[at];
                    if forward {
                        e = prev(q);
                        forward = false;
                    } else {
                        e = q;
                        forward = true;
                    }
                }
            }
            if e == e0 {
                debug_assert!(forward);
                break;
            }
        }
        if word.is_empty() {
            free_loops += 1;
        } else {
            components.push(word);
        }
    }
    GaussPhrase::from_parts_unchecked(components, free_loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_key;

    fn p(s: &str) -> GaussPhrase {
        s.parse().unwrap()
    }

    fn same(a: &GaussPhrase, b: &str) -> bool {
        canonical_key(a) == canonical_key(&p(b))
    }

    #[test]
    fn split_examples() {
        let r = smooth(&p("1 2 1 2"), ChordId(1), Smoothing::Split).unwrap();
        assert_eq!(r.to_string(), "2 / 2");
        let r = smooth(&p("1 1"), ChordId(1), Smoothing::Split).unwrap();
        assert!(r.components().is_empty());
        assert_eq!(r.free_loops(), 2);
    }

    #[test]
    fn join_examples() {
        let r = smooth(&p("1 2 1 2"), ChordId(1), Smoothing::Join).unwrap();
        assert_eq!(r.to_string(), "2 2");
        let r = smooth(&p("1 1"), ChordId(1), Smoothing::Join).unwrap();
        assert_eq!(r.to_string(), "()");
    }

    #[test]
    fn join_reverses_one_arc() {
        // c X c Y  ->  X reverse(Y)
        let r = smooth(&p("1 2 3 1 2 3"), ChordId(1), Smoothing::Join).unwrap();
        assert!(same(&r, "2 3 3 2"));
        let r = smooth(&p("1 2 3 1 2 3"), ChordId(1), Smoothing::Split).unwrap();
        assert!(same(&r, "2 3 / 2 3"));
    }

    #[test]
    fn two_component_chord_merges() {
        let q = p("1 2 3 / 1 2 3");
        let split = smooth(&q, ChordId(1), Smoothing::Split).unwrap();
        let join = smooth(&q, ChordId(1), Smoothing::Join).unwrap();
        assert_eq!(split.unicursal_count(), 1);
        assert_eq!(join.unicursal_count(), 1);
        assert!(same(&split, "2 3 2 3"));
        assert!(same(&join, "2 3 3 2"));
    }

    #[test]
    fn unknown_chord() {
        assert_eq!(
            smooth(&p("1 1"), ChordId(2), Smoothing::Join),
            Err(Error::UnknownChord(ChordId(2)))
        );
    }

    #[test]
    fn split_halves_separate_linked_chords() {
        let q = p("1 2 3 1 4 2 5 3 4 5");
        for c in q.chords() {
            let halves = smooth(&q, c, Smoothing::Split).unwrap();
            assert_eq!(halves.unicursal_count(), 2);
            let join = smooth(&q, c, Smoothing::Join).unwrap();
            assert_eq!(join.unicursal_count(), 1);
            assert_eq!(join.chord_count(), q.chord_count() - 1);
            let pos = halves.chord_positions();
            for d in q.chords().into_iter().filter(|&d| d != c) {
                let spans = pos[&d][0].comp != pos[&d][1].comp;
                assert_eq!(spans, q.linked(c, d).unwrap(), "chord {d} at split {c}");
            }
        }
    }

    #[test]
    fn state_independent_of_order() {
        let q = p("1 2 3 1 4 2 5 3 4 5");
        let mut state = BTreeMap::new();
        state.insert(ChordId(1), Smoothing::Join);
        state.insert(ChordId(4), Smoothing::Split);
        let both = smooth_state(&q, &state).unwrap();
        // Split keeps the orientation of every arc, so a later smoothing
        // still sees the original orientation.
        let seq = smooth(&smooth(&q, ChordId(4), Smoothing::Split).unwrap(), ChordId(1), Smoothing::Join).unwrap();
        assert_eq!(canonical_key(&both), canonical_key(&seq));
    }
}
