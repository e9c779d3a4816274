use std::collections::{BTreeSet, VecDeque};

use super::{apply_move, find_all_moves};
use crate::diagram::{canonical_key, CanonicalKey, GaussPhrase};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: usize = 500_000;

/// Every isomorphism class reachable from `p` through moves that never
/// exceed `max_chords` chords.
pub fn bfs_reachable(p: &GaussPhrase, max_chords: usize) -> Result<BTreeSet<CanonicalKey>> {
    bfs_reachable_with_budget(p, max_chords, DEFAULT_NODE_BUDGET)
}

/// As [`bfs_reachable`], failing once more than `budget` classes are seen.
pub fn bfs_reachable_with_budget(
    p: &GaussPhrase,
    max_chords: usize,
    budget: usize,
) -> Result<BTreeSet<CanonicalKey>> {
    let start = canonical_key(p);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let cur = key.to_phrase();
        for m in find_all_moves(&cur, max_chords) {
            let next = canonical_key(&apply_move(&cur, &m)?);
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(s: &str) -> CanonicalKey {
        canonical_key(&s.parse().unwrap())
    }

    #[test]
    fn trefoil_shadow_trivializes() {
        let reach = bfs_reachable(&"1 2 3 1 2 3".parse().unwrap(), 4).unwrap();
        assert!(reach.contains(&key("()")));
    }

    #[test]
    fn unknot_reaches_small_unknots_only() {
        let reach = bfs_reachable(&GaussPhrase::unknot(), 2).unwrap();
        assert!(reach.contains(&key("()")));
        assert!(reach.contains(&key("1 1")));
        assert!(reach.contains(&key("1 2 1 2")));
        assert!(reach.iter().all(|k| k.chord_count() <= 2 && k.unicursal_count() == 1));
    }

    #[test]
    fn budget_is_enforced() {
        let r = bfs_reachable_with_budget(&GaussPhrase::unknot(), 4, 3);
        assert_eq!(r, Err(Error::BudgetExceeded(3)));
    }
}
