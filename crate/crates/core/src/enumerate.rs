//! Exhaustive and random generation of diagrams.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{canonical_key, CanonicalKey, ChordId, GaussPhrase, Role, Sign, VirtualGaussDiagram};
use crate::error::{Error, Result};

/// Number of double-occurrence words on `n` labels up to relabeling,
/// `(2n - 1)!!`.
pub fn word_count(n: usize) -> u64 {
    (1..=n as u64).map(|k| 2 * k - 1).product()
}

/// Calls `f` on every double-occurrence word with `n` chords whose labels
/// appear in increasing order of first occurrence. Stops early once `f`
/// returns `false`; the return value says whether the walk completed.
pub fn for_each_word(n: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut word = vec![0u32; 2 * n];
    fill(&mut word, 1, &mut f)
}

fn fill(word: &mut [u32], next: u32, f: &mut impl FnMut(&[u32]) -> bool) -> bool {
    let Some(first) = word.iter().position(|&x| x == 0) else {
        return f(word);
    };
    word[first] = next;
    for j in first + 1..word.len() {
        if word[j] != 0 {
            continue;
        }
        word[j] = next;
        let go_on = fill(word, next + 1, f);
        word[j] = 0;
        if !go_on {
            word[first] = 0;
            return false;
        }
    }
    word[first] = 0;
    true
}

/// Canonical keys of all one-component phrases with at most `max_chords`
/// chords, in key order. `budget` caps the number of words visited.
pub fn knot_classes(max_chords: usize, budget: u64) -> Result<Vec<CanonicalKey>> {
    let total: u64 = (0..=max_chords).map(word_count).sum();
    if total > budget {
        return Err(Error::BudgetExceeded(budget as usize));
    }
    let mut keys = BTreeSet::new();
    for n in 0..=max_chords {
        for_each_word(n, |w| {
            let p = GaussPhrase::from_word(w).expect("generated words are valid");
            keys.insert(canonical_key(&p));
            true
        });
    }
    Ok(keys.into_iter().collect())
}

/// First word, by chord count and then generation order, satisfying
/// `pred`.
pub fn find_first(max_chords: usize, mut pred: impl FnMut(&GaussPhrase) -> bool) -> Option<GaussPhrase> {
    let mut found = None;
    for n in 0..=max_chords {
        for_each_word(n, |w| {
            let p = GaussPhrase::from_word(w).expect("generated words are valid");
            if pred(&p) {
                found = Some(p);
                false
            } else {
                true
            }
        });
        if found.is_some() {
            break;
        }
    }
    found
}

/// Uniform random one-component phrase with `n` chords.
pub fn random_knot<R: Rng>(rng: &mut R, n: usize) -> GaussPhrase {
    let mut word: Vec<u32> = (1..=n as u32).flat_map(|c| [c, c]).collect();
    word.shuffle(rng);
    GaussPhrase::from_word(&word).expect("shuffled pairs are valid")
}

/// Random phrase with `n` chords spread over `components` circles. Circles
/// that receive no chord end become free loops.
pub fn random_phrase<R: Rng>(rng: &mut R, n: usize, components: usize) -> GaussPhrase {
    let mut word: Vec<ChordId> = (1..=n as u32).flat_map(|c| [ChordId(c), ChordId(c)]).collect();
    word.shuffle(rng);
    let mut cuts: Vec<usize> = (0..components.saturating_sub(1)).map(|_| rng.gen_range(0..=word.len())).collect();
    cuts.sort_unstable();
    let mut comps = Vec::new();
    let mut loops = 0;
    let mut start = 0;
    for end in cuts.into_iter().chain([word.len()]) {
        if end == start {
            loops += 1;
        } else {
            comps.push(word[start..end].to_vec());
        }
        start = end;
    }
    if components == 0 {
        loops = 0;
    }
    GaussPhrase::new(comps, loops).expect("shuffled pairs are valid")
}

/// Random signs and arrows on a random one-component word.
pub fn random_virtual<R: Rng>(rng: &mut R, n: usize) -> VirtualGaussDiagram {
    let p = random_knot(rng, n);
    decorate(rng, &p)
}

/// Random signs and arrows on the chords of a one-component phrase.
pub fn decorate<R: Rng>(rng: &mut R, p: &GaussPhrase) -> VirtualGaussDiagram {
    let word = p.components().first().cloned().unwrap_or_default();
    let mut first_role: BTreeMap<ChordId, Role> = BTreeMap::new();
    let mut signs = BTreeMap::new();
    let ends = word
        .iter()
        .map(|&c| match first_role.get(&c) {
            Some(r) => (c, r.flip()),
            None => {
                let r = if rng.gen() { Role::Over } else { Role::Under };
                first_role.insert(c, r);
                signs.insert(c, if rng.gen() { Sign::Plus } else { Sign::Minus });
                (c, r)
            }
        })
        .collect();
    VirtualGaussDiagram::new(ends, signs).expect("each chord gets one over and one under end")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts_match_double_factorial() {
        for n in 0..6 {
            let mut seen = 0u64;
            for_each_word(n, |_| {
                seen += 1;
                true
            });
            assert_eq!(seen, word_count(n));
        }
        assert_eq!(word_count(6), 10395);
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let done = for_each_word(4, |_| {
            seen += 1;
            seen < 3
        });
        assert!(!done);
        assert_eq!(seen, 3);
    }

    #[test]
    fn small_class_counts() {
        // the circle, "1 1", "1 1 2 2" and "1 2 1 2"
        let keys = knot_classes(2, 1_000).unwrap();
        assert_eq!(keys.len(), 1 + 1 + 2);
        assert_eq!(knot_classes(3, 1_000).unwrap().len(), 4 + 5);
        assert_eq!(knot_classes(8, 1_000), Err(Error::BudgetExceeded(1_000)));
    }

    #[test]
    fn random_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let p = random_phrase(&mut rng, 4, 3);
            assert_eq!(p.chord_count(), 4);
            assert_eq!(p.unicursal_count(), 3);
            let d = random_virtual(&mut rng, 5);
            assert_eq!(d.chord_count(), 5);
        }
    }

    #[test]
    fn find_first_is_deterministic() {
        let odd = find_first(3, |p| p.chord_count() == 2 && p.interlacement_counts().values().all(|&k| k == 1));
        assert_eq!(odd.unwrap().to_string(), "1 2 1 2");
        assert!(find_first(2, |p| p.chord_count() > 2).is_none());
    }
}
