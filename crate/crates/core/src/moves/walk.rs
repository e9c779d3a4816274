use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    apply_move, apply_virtual_move, find_moves, find_virtual_moves, mixed_pairs, disjoint, Gap,
    MoveInstance, MoveKind,
};
use crate::diagram::{GaussPhrase, LongGaussDiagram, Pos, VirtualGaussDiagram};

/// Headroom above the starting chord count used by [`random_walk`].
pub const WALK_HEADROOM: usize = 4;

fn allowed(kind: MoveKind, chords: usize, max_chords: usize) -> bool {
    chords as isize + kind.chord_delta() <= max_chords as isize
}

/// Picks a kind uniformly among those with at least one instance, then an
/// instance of that kind uniformly.
fn pick<M, R: Rng>(
    kinds: &[MoveKind],
    chords: usize,
    max_chords: usize,
    rng: &mut R,
    mut find: impl FnMut(MoveKind) -> Vec<M>,
) -> Option<M> {
    let mut options: Vec<Vec<M>> = kinds
        .iter()
        .filter(|k| allowed(**k, chords, max_chords))
        .map(|&k| find(k))
        .filter(|v| !v.is_empty())
        .collect();
    if options.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..options.len());
    let mut chosen = options.swap_remove(i);
    let j = rng.gen_range(0..chosen.len());
    Some(chosen.swap_remove(j))
}

/// Applies `steps` random moves, never exceeding `WALK_HEADROOM` chords
/// more than `p` has.
pub fn random_walk(p: &GaussPhrase, steps: usize, seed: u64) -> GaussPhrase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_walk_bounded(p, steps, p.chord_count() + WALK_HEADROOM, &MoveKind::ALL, &mut rng)
}

pub fn random_walk_bounded<R: Rng>(
    p: &GaussPhrase,
    steps: usize,
    max_chords: usize,
    kinds: &[MoveKind],
    rng: &mut R,
) -> GaussPhrase {
    let mut cur = p.clone();
    for _ in 0..steps {
        let Some(m) = pick(kinds, cur.chord_count(), max_chords, rng, |k| find_moves(&cur, k)) else {
            break;
        };
        cur = apply_move(&cur, &m).expect("found moves apply");
    }
    cur
}

fn wraps(p: &GaussPhrase, a: Pos) -> bool {
    a.idx + 1 == p.len_of(a.comp)
}

/// Moves of `kind` on the word of a long diagram stored from its
/// basepoint, restricted to those that never use the cut.
fn long_moves(p: &GaussPhrase, kind: MoveKind) -> Vec<MoveInstance> {
    let mut out = find_moves(p, kind);
    match kind {
        MoveKind::R1Remove => out.retain(|m| {
            let MoveInstance::R1Remove { chord } = m else { return false };
            let [a, b] = p.positions_of(*chord).expect("chord present");
            b.idx == a.idx + 1
        }),
        MoveKind::R2Remove => out.retain(|m| {
            let MoveInstance::R2Remove { chords: [c, d] } = m else { return false };
            let key = if c < d { (*c, *d) } else { (*d, *c) };
            let linear: Vec<(Pos, Pos)> = mixed_pairs(p)
                .remove(&key)
                .unwrap_or_default()
                .into_iter()
                .filter(|(a, _)| !wraps(p, *a))
                .collect();
            linear
                .iter()
                .enumerate()
                .any(|(i, x)| linear[i + 1..].iter().any(|y| disjoint(*x, *y)))
        }),
        MoveKind::R3 => out.retain(|m| {
            let MoveInstance::R3 { pairs } = m else { return false };
            pairs.iter().all(|a| !wraps(p, *a))
        }),
        MoveKind::R1Add | MoveKind::R2Add => {
            // offset 0 inserts right after the cut; inserting right before
            // it needs the offset one past the end
            let len = p.components().first().map_or(0, Vec::len);
            if len > 0 {
                let end = Gap { comp: 0, offset: len };
                if kind == MoveKind::R1Add {
                    out.push(MoveInstance::R1Add { gap: end });
                } else {
                    for offset in 0..=len {
                        for reversed in [false, true] {
                            out.push(MoveInstance::R2Add {
                                first: Gap { comp: 0, offset },
                                second: end,
                                reversed,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Random walk through moves that avoid the basepoint. The result is
/// straightened, so its basepoint is 0.
pub fn random_walk_long<R: Rng>(
    d: &LongGaussDiagram,
    steps: usize,
    max_chords: usize,
    kinds: &[MoveKind],
    rng: &mut R,
) -> LongGaussDiagram {
    let mut cur = d.straightened().phrase().clone();
    for _ in 0..steps {
        let Some(m) = pick(kinds, cur.chord_count(), max_chords, rng, |k| long_moves(&cur, k)) else {
            break;
        };
        cur = apply_move(&cur, &m).expect("found moves apply");
    }
    LongGaussDiagram::from_phrase(cur).expect("moves keep one component")
}

pub fn random_walk_virtual<R: Rng>(
    d: &VirtualGaussDiagram,
    steps: usize,
    max_chords: usize,
    kinds: &[MoveKind],
    rng: &mut R,
) -> VirtualGaussDiagram {
    let mut cur = d.clone();
    for _ in 0..steps {
        let Some(m) = pick(kinds, cur.chord_count(), max_chords, rng, |k| {
            find_virtual_moves(&cur, k)
        }) else {
            break;
        };
        cur = apply_virtual_move(&cur, &m).expect("found moves apply");
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::canonical_key;

    #[test]
    fn zero_steps_is_identity() {
        let p: GaussPhrase = "1 2 3 1 2 3".parse().unwrap();
        assert_eq!(random_walk(&p, 0, 7), p);
    }

    #[test]
    fn same_seed_same_result() {
        let p: GaussPhrase = "1 2 1 2".parse().unwrap();
        assert_eq!(random_walk(&p, 25, 3), random_walk(&p, 25, 3));
    }

    #[test]
    fn chord_budget_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let start = GaussPhrase::unknot();
        let mut cur = start.clone();
        for _ in 0..50 {
            cur = random_walk_bounded(&cur, 1, 5, &MoveKind::ALL, &mut rng);
            assert!(cur.chord_count() <= 5);
        }
        assert_eq!(canonical_key(&start).unicursal_count(), canonical_key(&cur).unicursal_count());
    }

    #[test]
    fn long_walk_keeps_one_component() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let d = LongGaussDiagram::new("1 2 1 2".parse().unwrap(), 1).unwrap();
        for _ in 0..20 {
            let r = random_walk_long(&d, 15, 6, &MoveKind::ALL, &mut rng);
            assert_eq!(r.phrase().unicursal_count(), 1);
            assert_eq!(r.basepoint(), 0);
        }
    }

    #[test]
    fn long_moves_skip_the_cut() {
        // the ends of chord 1 are adjacent only across the cut
        let p: GaussPhrase = "1 2 2 1".parse().unwrap();
        let r1 = long_moves(&p, MoveKind::R1Remove);
        assert_eq!(r1, vec![MoveInstance::R1Remove { chord: crate::ChordId(2) }]);
    }
}
