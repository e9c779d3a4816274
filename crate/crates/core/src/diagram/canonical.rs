use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ChordId, GaussPhrase};

/// Isomorphism-invariant encoding of a phrase.
///
/// Layout: component count, free-loop count, component lengths in
/// ascending order, then the relabeled tokens of every component. The key
/// is the lexicographic minimum over component permutations, rotations,
/// independent reversals of each component, and chord relabelings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn chord_count(&self) -> usize {
        let k = self.0[0] as usize;
        self.0[2..2 + k].iter().sum::<u32>() as usize / 2
    }

    pub fn unicursal_count(&self) -> usize {
        (self.0[0] + self.0[1]) as usize
    }

    /// The canonical representative itself.
    pub fn to_phrase(&self) -> GaussPhrase {
        let k = self.0[0] as usize;
        let loops = self.0[1] as usize;
        let lens = &self.0[2..2 + k];
        let mut rest = &self.0[2 + k..];
        let mut components = Vec::with_capacity(k);
        for &len in lens {
            let (head, tail) = rest.split_at(len as usize);
            components.push(head.iter().map(|&l| ChordId(l)).collect());
            rest = tail;
        }
        GaussPhrase::from_parts_unchecked(components, loops)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_phrase())
    }
}

struct Search<'a> {
    comps: Vec<&'a [ChordId]>,
    best: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Depth-first over component choices, pruning every branch whose
    /// prefix already exceeds the best complete encoding.
    fn run(&mut self, used: &mut Vec<bool>, labels: &mut Vec<(ChordId, u32)>, acc: &mut Vec<u32>) {
        let depth = used.iter().filter(|&&u| u).count();
        if depth == self.comps.len() {
            if self.best.as_ref().map_or(true, |b| acc[..] < b[..]) {
                self.best = Some(acc.clone());
            }
            return;
        }
        let want = self.comps[depth].len();
        let mut tried_equal: Vec<&[ChordId]> = Vec::new();
        for ci in 0..self.comps.len() {
            if used[ci] || self.comps[ci].len() != want {
                continue;
            }
            // comps sorted by length, so `depth` indexes the wanted length
            let comp = self.comps[ci];
            if tried_equal.iter().any(|t| *t == comp) {
                continue;
            }
            tried_equal.push(comp);
            used[ci] = true;
            let n = comp.len();
            for reversed in [false, true] {
                for start in 0..n {
                    let mark = acc.len();
                    let label_mark = labels.len();
                    let mut pruned = false;
                    for step in 0..n {
                        let i = if reversed {
                            (start + n - step) % n
                        } else {
                            (start + step) % n
                        };
                        let c = comp[i];
                        let l = match labels.iter().find(|(k, _)| *k == c) {
                            Some(&(_, l)) => l,
                            None => {
                                let l = labels.len() as u32 + 1;
                                labels.push((c, l));
                                l
                            }
                        };
                        acc.push(l);
                        if let Some(best) = &self.best {
                            match acc[..].cmp(&best[..acc.len()]) {
                                Ordering::Greater => {
                                    pruned = true;
                                    break;
                                }
                                Ordering::Less | Ordering::Equal => {}
                            }
                        }
                    }
                    if !pruned {
                        self.run(used, labels, acc);
                    }
                    acc.truncate(mark);
                    labels.truncate(label_mark);
                }
            }
            used[ci] = false;
        }
    }
}

/// Canonical key of a phrase; equal keys exactly for isomorphic phrases.
pub fn canonical_key(p: &GaussPhrase) -> CanonicalKey {
    let mut comps: Vec<&[ChordId]> = p.components().iter().map(Vec::as_slice).collect();
    comps.sort_by_key(|c| c.len());
    let mut header = vec![comps.len() as u32, p.free_loops() as u32];
    header.extend(comps.iter().map(|c| c.len() as u32));
    let mut search = Search {
        best: None,
        comps,
    };
    let n = search.comps.len();
    search.run(&mut vec![false; n], &mut Vec::new(), &mut Vec::new());
    header.extend(search.best.unwrap_or_default());
    CanonicalKey(header)
}
