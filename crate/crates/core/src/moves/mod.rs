//! Reidemeister moves on Gauss phrases and searches through move space.
//!
//! Decreasing moves are located by adjacency patterns in the cyclic words:
//! a removable loop is a chord with adjacent ends, a removable bigon is a
//! pair of chords occupying two disjoint adjacent position pairs, and a
//! triangle is a triple of chords covered pairwise by three disjoint
//! adjacent position pairs. The triangle move swaps the two tokens inside
//! each of its three pairs.

mod search;
mod virtual_moves;
mod walk;

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{ChordId, GaussPhrase, Pos};
use crate::error::{Error, Result};

pub use search::{bfs_reachable, bfs_reachable_with_budget, DEFAULT_NODE_BUDGET};
pub use virtual_moves::{
    apply_virtual_move, apply_virtual_move_traced, find_virtual_moves, VirtualApplied,
    VirtualMove,
};
pub use walk::{
    random_walk, random_walk_bounded, random_walk_long, random_walk_virtual, WALK_HEADROOM,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
    ];

    /// Change in chord count.
    pub fn chord_delta(self) -> isize {
        match self {
            MoveKind::R1Add => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add => 2,
            MoveKind::R2Remove => -2,
            MoveKind::R3 => 0,
        }
    }

    pub fn is_increasing(self) -> bool {
        self.chord_delta() > 0
    }
}

/// An insertion point. `comp` indexes the components; values past the last
/// component address free loops (`components().len() + k` is the k-th
/// loop). `offset` counts the chord ends before the insertion point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gap {
    pub comp: usize,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveInstance {
    R1Remove { chord: ChordId },
    R1Add { gap: Gap },
    R2Remove { chords: [ChordId; 2] },
    /// Inserts `x y` at `first` and `x y` (or `y x` when `reversed`) at
    /// `second`. Equal gaps insert one block of four tokens.
    R2Add { first: Gap, second: Gap, reversed: bool },
    /// Each entry is the first position of an adjacent pair.
    R3 { pairs: [Pos; 3] },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Remove { .. } => MoveKind::R1Remove,
            MoveInstance::R1Add { .. } => MoveKind::R1Add,
            MoveInstance::R2Remove { .. } => MoveKind::R2Remove,
            MoveInstance::R2Add { .. } => MoveKind::R2Add,
            MoveInstance::R3 { .. } => MoveKind::R3,
        }
    }
}

/// Result of applying a move, with enough bookkeeping to undo it.
#[derive(Clone, Debug)]
pub struct Applied {
    pub phrase: GaussPhrase,
    /// A move on `phrase` restoring the original up to isomorphism.
    pub inverse: MoveInstance,
    /// Chords taking part in the move (new labels for increasing moves).
    pub participants: Vec<ChordId>,
}

pub(crate) fn next_idx(p: &GaussPhrase, pos: Pos) -> Pos {
    Pos::new(pos.comp, (pos.idx + 1) % p.len_of(pos.comp))
}

/// Adjacent position pairs `(a, next(a))` on circles with at least two
/// chord ends. On a circle of length two only one pair is listed.
pub(crate) fn adjacent_pairs(p: &GaussPhrase) -> Vec<(Pos, Pos)> {
    let mut out = Vec::new();
    for (ci, comp) in p.components().iter().enumerate() {
        let n = comp.len();
        let count = match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        };
        for i in 0..count {
            out.push((Pos::new(ci, i), Pos::new(ci, (i + 1) % n)));
        }
    }
    out
}

fn unordered(a: ChordId, b: ChordId) -> (ChordId, ChordId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn mixed_pairs(p: &GaussPhrase) -> BTreeMap<(ChordId, ChordId), Vec<(Pos, Pos)>> {
    let mut by_chords: BTreeMap<(ChordId, ChordId), Vec<(Pos, Pos)>> = BTreeMap::new();
    for (a, b) in adjacent_pairs(p) {
        let (ca, cb) = (p.at(a), p.at(b));
        if ca != cb {
            by_chords.entry(unordered(ca, cb)).or_default().push((a, b));
        }
    }
    by_chords
}

fn disjoint(x: (Pos, Pos), y: (Pos, Pos)) -> bool {
    x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1
}

fn gaps(p: &GaussPhrase, loops_wanted: usize) -> Vec<Gap> {
    let mut out = Vec::new();
    for (ci, comp) in p.components().iter().enumerate() {
        out.extend((0..comp.len()).map(|offset| Gap { comp: ci, offset }));
    }
    let n = p.components().len();
    out.extend((0..p.free_loops().min(loops_wanted)).map(|k| Gap {
        comp: n + k,
        offset: 0,
    }));
    out
}

fn r1_remove_sites(p: &GaussPhrase) -> Vec<MoveInstance> {
    let mut chords = BTreeSet::new();
    for (a, b) in adjacent_pairs(p) {
        if p.at(a) == p.at(b) {
            chords.insert(p.at(a));
        }
    }
    chords
        .into_iter()
        .map(|chord| MoveInstance::R1Remove { chord })
        .collect()
}

fn r2_remove_pairs(p: &GaussPhrase) -> Vec<((ChordId, ChordId), (Pos, Pos), (Pos, Pos))> {
    let mut out = Vec::new();
    for (chords, pairs) in mixed_pairs(p) {
        'found: for (i, &x) in pairs.iter().enumerate() {
            for &y in &pairs[i + 1..] {
                if disjoint(x, y) {
                    out.push((chords, x, y));
                    break 'found;
                }
            }
        }
    }
    out
}

fn r3_sites(p: &GaussPhrase) -> Vec<MoveInstance> {
    let by_chords = mixed_pairs(p);
    let keys: Vec<(ChordId, ChordId)> = by_chords.keys().copied().collect();
    let mut out = Vec::new();
    for (i, &(a, b)) in keys.iter().enumerate() {
        // the triangle {a, b, c} is listed once, from its smallest pair (a, b)
        for &(a2, c) in &keys[i + 1..] {
            if a2 != a || c == b {
                continue;
            }
            let third = unordered(b, c);
            let Some(third_pairs) = by_chords.get(&third) else {
                continue;
            };
            for &x in &by_chords[&(a, b)] {
                for &y in &by_chords[&(a, c)] {
                    if !disjoint(x, y) {
                        continue;
                    }
                    for &z in third_pairs {
                        if disjoint(x, z) && disjoint(y, z) {
                            out.push(MoveInstance::R3 {
                                pairs: [x.0, y.0, z.0],
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every instance of `kind` on `p`. Increasing moves are listed without a
/// chord budget; free loops are interchangeable, so at most the first one
/// (two for bigons) is offered as an insertion site.
pub fn find_moves(p: &GaussPhrase, kind: MoveKind) -> Vec<MoveInstance> {
    match kind {
        MoveKind::R1Remove => r1_remove_sites(p),
        MoveKind::R2Remove => r2_remove_pairs(p)
            .into_iter()
            .map(|((a, b), _, _)| MoveInstance::R2Remove { chords: [a, b] })
            .collect(),
        MoveKind::R3 => r3_sites(p),
        MoveKind::R1Add => gaps(p, 1)
            .into_iter()
            .map(|gap| MoveInstance::R1Add { gap })
            .collect(),
        MoveKind::R2Add => {
            let g = gaps(p, 2);
            let mut out = Vec::new();
            for (i, &first) in g.iter().enumerate() {
                for &second in &g[i..] {
                    for reversed in [false, true] {
                        out.push(MoveInstance::R2Add {
                            first,
                            second,
                            reversed,
                        });
                    }
                }
            }
            out
        }
    }
}

/// All moves whose result has at most `max_chords` chords.
pub fn find_all_moves(p: &GaussPhrase, max_chords: usize) -> Vec<MoveInstance> {
    let n = p.chord_count() as isize;
    MoveKind::ALL
        .iter()
        .filter(|k| n + k.chord_delta() <= max_chords as isize)
        .flat_map(|&k| find_moves(p, k))
        .collect()
}

pub fn apply_move(p: &GaussPhrase, m: &MoveInstance) -> Result<GaussPhrase> {
    apply_move_traced(p, m).map(|a| a.phrase)
}

fn invalid(m: &MoveInstance, why: &str) -> Error {
    Error::InvalidInstance(format!("{m:?}: {why}"))
}

/// Removes chords and reports, for each removed position, where an
/// insertion would put it back.
fn remove_tracking(p: &GaussPhrase, doomed: &BTreeSet<ChordId>) -> (GaussPhrase, BTreeMap<Pos, Gap>) {
    let mut kept_comps = Vec::new();
    let mut emptied = Vec::new();
    let mut raw: BTreeMap<Pos, (usize, usize)> = BTreeMap::new();
    for (ci, comp) in p.components().iter().enumerate() {
        let mut kept = Vec::new();
        for (i, &c) in comp.iter().enumerate() {
            if doomed.contains(&c) {
                raw.insert(Pos::new(ci, i), (ci, kept.len()));
            } else {
                kept.push(c);
            }
        }
        if kept.is_empty() {
            emptied.push(ci);
        } else {
            kept_comps.push((ci, kept));
        }
    }
    let n_new = kept_comps.len();
    let mut gaps = BTreeMap::new();
    for (pos, (ci, offset)) in raw {
        let gap = match kept_comps.iter().position(|(k, _)| *k == ci) {
            Some(new_ci) => Gap {
                comp: new_ci,
                offset,
            },
            None => Gap {
                comp: n_new + p.free_loops() + emptied.iter().position(|&e| e == ci).unwrap(),
                offset: 0,
            },
        };
        gaps.insert(pos, gap);
    }
    let phrase = GaussPhrase::from_parts_unchecked(
        kept_comps.into_iter().map(|(_, k)| k).collect(),
        p.free_loops() + emptied.len(),
    );
    (phrase, gaps)
}

/// Turns the free loops addressed by `gaps` into empty words so tokens can
/// be inserted; returns the mutable word list and loop count.
fn open_gaps(p: &GaussPhrase, gaps: &[Gap]) -> Option<(Vec<Vec<ChordId>>, usize)> {
    let n = p.components().len();
    let mut comps = p.components().to_vec();
    let mut loops = p.free_loops();
    let needed = gaps
        .iter()
        .filter(|g| g.comp >= n)
        .map(|g| g.comp - n + 1)
        .max()
        .unwrap_or(0);
    if needed > loops {
        return None;
    }
    loops -= needed;
    comps.extend(std::iter::repeat(Vec::new()).take(needed));
    for g in gaps {
        if g.offset > comps[g.comp].len() {
            return None;
        }
    }
    Some((comps, loops))
}

/// Inserts the tokens, then returns opened loops that stayed empty to the
/// loop count.
fn insert_at(mut comps: Vec<Vec<ChordId>>, loops: usize, inserts: &mut [(Gap, Vec<ChordId>)]) -> GaussPhrase {
    // later offsets first so earlier offsets stay valid
    inserts.sort_by(|a, b| b.0.cmp(&a.0));
    for (gap, toks) in inserts.iter() {
        let comp = &mut comps[gap.comp];
        comp.splice(gap.offset..gap.offset, toks.iter().copied());
    }
    let before = comps.len();
    comps.retain(|c| !c.is_empty());
    let loops = loops + before - comps.len();
    GaussPhrase::from_parts_unchecked(comps, loops)
}

pub fn apply_move_traced(p: &GaussPhrase, m: &MoveInstance) -> Result<Applied> {
    match *m {
        MoveInstance::R1Remove { chord } => {
            let [a, b] = p.positions_of(chord)?;
            let adjacent = a.comp == b.comp
                && p.len_of(a.comp) >= 2
                && (next_idx(p, a) == b || next_idx(p, b) == a);
            if !adjacent {
                return Err(invalid(m, "chord ends are not adjacent"));
            }
            let first = if next_idx(p, a) == b { a } else { b };
            let (phrase, gaps) = remove_tracking(p, &BTreeSet::from([chord]));
            Ok(Applied {
                phrase,
                inverse: MoveInstance::R1Add { gap: gaps[&first] },
                participants: vec![chord],
            })
        }
        MoveInstance::R2Remove { chords: [c, d] } => {
            if c == d {
                return Err(invalid(m, "needs two distinct chords"));
            }
            let key = unordered(c, d);
            let site = r2_remove_pairs(p).into_iter().find(|(k, _, _)| *k == key);
            let Some((_, x, y)) = site else {
                return Err(invalid(m, "no bigon"));
            };
            let (phrase, gaps) = remove_tracking(p, &BTreeSet::from([c, d]));
            let reversed = p.at(x.0) != p.at(y.0);
            Ok(Applied {
                phrase,
                inverse: MoveInstance::R2Add {
                    first: gaps[&x.0],
                    second: gaps[&y.0],
                    reversed,
                },
                participants: vec![c, d],
            })
        }
        MoveInstance::R3 { pairs } => {
            let mut spans = Vec::with_capacity(3);
            for &a in &pairs {
                if a.comp >= p.components().len()
                    || a.idx >= p.len_of(a.comp)
                    || p.len_of(a.comp) < 2
                {
                    return Err(invalid(m, "position out of range"));
                }
                spans.push((a, next_idx(p, a)));
            }
            let sets: Vec<(ChordId, ChordId)> =
                spans.iter().map(|&(a, b)| unordered(p.at(a), p.at(b))).collect();
            let chords: BTreeSet<ChordId> = sets.iter().flat_map(|&(a, b)| [a, b]).collect();
            let distinct: BTreeSet<_> = sets.iter().collect();
            let valid = sets.iter().all(|(a, b)| a != b)
                && distinct.len() == 3
                && chords.len() == 3
                && disjoint(spans[0], spans[1])
                && disjoint(spans[0], spans[2])
                && disjoint(spans[1], spans[2]);
            if !valid {
                return Err(invalid(m, "not a triangle"));
            }
            let mut comps = p.components().to_vec();
            for &(a, b) in &spans {
                let tmp = comps[a.comp][a.idx];
                comps[a.comp][a.idx] = comps[b.comp][b.idx];
                comps[b.comp][b.idx] = tmp;
            }
            Ok(Applied {
                phrase: GaussPhrase::from_parts_unchecked(comps, p.free_loops()),
                inverse: m.clone(),
                participants: chords.into_iter().collect(),
            })
        }
        MoveInstance::R1Add { gap } => {
            let Some((comps, loops)) = open_gaps(p, &[gap]) else {
                return Err(invalid(m, "no such gap"));
            };
            let x = ChordId(p.max_label() + 1);
            Ok(Applied {
                phrase: insert_at(comps, loops, &mut [(gap, vec![x, x])]),
                inverse: MoveInstance::R1Remove { chord: x },
                participants: vec![x],
            })
        }
        MoveInstance::R2Add {
            first,
            second,
            reversed,
        } => {
            let Some((comps, loops)) = open_gaps(p, &[first, second]) else {
                return Err(invalid(m, "no such gap"));
            };
            let x = ChordId(p.max_label() + 1);
            let y = ChordId(p.max_label() + 2);
            let tail = if reversed { vec![y, x] } else { vec![x, y] };
            let phrase = if first == second {
                let mut block = vec![x, y];
                block.extend(tail);
                insert_at(comps, loops, &mut [(first, block)])
            } else {
                insert_at(comps, loops, &mut [(first, vec![x, y]), (second, tail)])
            };
            Ok(Applied {
                phrase,
                inverse: MoveInstance::R2Remove { chords: [x, y] },
                participants: vec![x, y],
            })
        }
    }
}

/// Applies decreasing second moves until none is left. R1 is never used.
pub fn reduce_r2(p: &GaussPhrase) -> GaussPhrase {
    let mut cur = p.clone();
    while let Some(((a, b), _, _)) = r2_remove_pairs(&cur).into_iter().next() {
        cur = remove_tracking(&cur, &BTreeSet::from([a, b])).0;
    }
    cur
}

/// [`reduce_r2`] with the bigon removed at each step picked at random.
pub fn reduce_r2_random<R: Rng>(p: &GaussPhrase, rng: &mut R) -> GaussPhrase {
    let mut cur = p.clone();
    loop {
        let sites = r2_remove_pairs(&cur);
        if sites.is_empty() {
            return cur;
        }
        let ((a, b), _, _) = sites[rng.gen_range(0..sites.len())];
        cur = remove_tracking(&cur, &BTreeSet::from([a, b])).0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_key;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> GaussPhrase {
        s.parse().unwrap()
    }

    fn same(a: &GaussPhrase, b: &str) -> bool {
        canonical_key(a) == canonical_key(&p(b))
    }

    #[test]
    fn find_examples() {
        assert_eq!(
            find_moves(&p("1 1"), MoveKind::R1Remove),
            vec![MoveInstance::R1Remove { chord: ChordId(1) }]
        );
        assert_eq!(
            find_moves(&p("1 2 1 2"), MoveKind::R2Remove),
            vec![MoveInstance::R2Remove {
                chords: [ChordId(1), ChordId(2)]
            }]
        );
        let trefoil = find_moves(&p("1 2 3 1 2 3"), MoveKind::R2Remove);
        assert!(trefoil.contains(&MoveInstance::R2Remove {
            chords: [ChordId(1), ChordId(2)]
        }));
        assert!(find_moves(&p("1 2 1 3 2 3"), MoveKind::R1Remove).is_empty());
    }

    #[test]
    fn r2_patterns_both_orientations() {
        assert_eq!(find_moves(&p("1 2 3 3 2 1"), MoveKind::R2Remove).len(), 2);
        assert_eq!(find_moves(&p("1 2 / 2 1"), MoveKind::R2Remove).len(), 1);
        // "1 2 1" has two adjacencies of {1, 2}, but they overlap
        assert!(find_moves(&p("1 2 1 3 3 2 4 4"), MoveKind::R2Remove).is_empty());
    }

    #[test]
    fn apply_examples() {
        let r = apply_move(
            &p("1 2 1 2"),
            &MoveInstance::R2Remove {
                chords: [ChordId(1), ChordId(2)],
            },
        )
        .unwrap();
        assert_eq!(r.to_string(), "()");

        let r = apply_move(&p("1 2 2 1"), &MoveInstance::R1Remove { chord: ChordId(2) }).unwrap();
        assert_eq!(r.to_string(), "1 1");

        let r = apply_move(
            &p("1 2 3 1 2 3"),
            &MoveInstance::R3 {
                pairs: [Pos::new(0, 0), Pos::new(0, 2), Pos::new(0, 4)],
            },
        )
        .unwrap();
        assert_eq!(r.to_string(), "2 1 1 3 3 2");
    }

    #[test]
    fn r3_sites_on_trefoil() {
        let sites = find_moves(&p("1 2 3 1 2 3"), MoveKind::R3);
        assert_eq!(sites.len(), 2);
    }

    #[test]
    fn invalid_instances() {
        let q = p("1 2 1 2");
        assert!(matches!(
            apply_move(&q, &MoveInstance::R1Remove { chord: ChordId(1) }),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            apply_move(&p("1 2 1 3 2 3"), &MoveInstance::R2Remove { chords: [ChordId(1), ChordId(2)] }),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            apply_move(
                &q,
                &MoveInstance::R3 {
                    pairs: [Pos::new(0, 0), Pos::new(0, 1), Pos::new(0, 2)]
                }
            ),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            apply_move(&q, &MoveInstance::R1Add { gap: Gap { comp: 1, offset: 0 } }),
            Err(Error::InvalidInstance(_))
        ));
    }

    #[test]
    fn increasing_moves_on_free_loops() {
        let r = apply_move(&p("()"), &MoveInstance::R1Add { gap: Gap { comp: 0, offset: 0 } }).unwrap();
        assert!(same(&r, "1 1"));
        let loops = p("() / ()");
        let r = apply_move(
            &loops,
            &MoveInstance::R2Add {
                first: Gap { comp: 0, offset: 0 },
                second: Gap { comp: 1, offset: 0 },
                reversed: false,
            },
        )
        .unwrap();
        assert!(same(&r, "1 2 / 1 2"));
        assert_eq!(find_moves(&p("()"), MoveKind::R2Add).len(), 2);
    }

    #[test]
    fn moves_change_chord_count_as_declared() {
        let q = p("1 2 3 1 4 2 4 3 / 5 5 6 / 6");
        for kind in MoveKind::ALL {
            for m in find_moves(&q, kind) {
                let r = apply_move(&q, &m).unwrap();
                assert_eq!(
                    r.chord_count() as isize,
                    q.chord_count() as isize + kind.chord_delta(),
                    "{m:?}"
                );
                assert_eq!(r.unicursal_count(), q.unicursal_count(), "{m:?}");
            }
        }
    }

    #[test]
    fn inverse_restores_original() {
        for s in ["1 2 3 1 2 3", "1 2 1 3 2 3", "1 1 2 3 2 3 / 4 4", "1 2 / 2 1", "()", "1 2 3 2 1 3"] {
            let q = p(s);
            for kind in MoveKind::ALL {
                for m in find_moves(&q, kind) {
                    let a = apply_move_traced(&q, &m).unwrap();
                    let back = apply_move(&a.phrase, &a.inverse).unwrap();
                    assert_eq!(canonical_key(&back), canonical_key(&q), "{s} {m:?}");
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_r2(&p("1 2 1 2")).to_string(), "()");
        assert_eq!(reduce_r2(&p("1 1")).to_string(), "1 1");
        assert!(same(&reduce_r2(&p("1 2 3 4 3 4 1 2")), "()"));
    }

    #[test]
    fn random_reduction_orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = p("1 2 3 4 5 4 5 3 6 1 2 6");
        let base = canonical_key(&reduce_r2(&q));
        for _ in 0..20 {
            assert_eq!(canonical_key(&reduce_r2_random(&q, &mut rng)), base);
        }
    }

    #[test]
    fn insertion_into_a_later_loop_keeps_the_others() {
        let two_loops = GaussPhrase::new(vec![vec![ChordId(1), ChordId(1)]], 2).unwrap();
        let m = MoveInstance::R1Add { gap: Gap { comp: 2, offset: 0 } };
        let q = apply_move(&two_loops, &m).unwrap();
        assert_eq!(q.components().len(), 2);
        assert_eq!(q.free_loops(), 1);
        let m = MoveInstance::R2Add {
            first: Gap { comp: 2, offset: 0 },
            second: Gap { comp: 2, offset: 0 },
            reversed: true,
        };
        assert_eq!(apply_move(&two_loops, &m).unwrap().free_loops(), 1);
    }
}
