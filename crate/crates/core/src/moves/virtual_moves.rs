//! Reidemeister moves that respect signs and arrows.
//!
//! A bigon is removable when one of its adjacent pairs holds both over ends
//! and the signs are opposite. A triangle needs one pair of over ends (top
//! strand), one pair of under ends (bottom strand) and one mixed pair; its
//! signs must match what a planar triangle with the given strand directions
//! produces. Writing X, Y, Z for the top/middle, top/bottom and
//! middle/bottom crossings and ε for the direction of each strand along its
//! side (X→Y on top, X→Z in the middle, Y→Z at the bottom), every crossing
//! sign is a fixed chirality times the product of the two ε of its strands,
//! which leaves `s(X)s(Y) = ε_mid·ε_bot` and `s(X)s(Z) = ε_top·ε_bot`.

use std::collections::{BTreeMap, BTreeSet};

use super::MoveKind;
use crate::diagram::{ChordId, Role, Sign, VirtualGaussDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VirtualMove {
    R1Remove {
        chord: ChordId,
    },
    /// Inserts a curl at `offset`; the first new end is the over end when
    /// `over_first`.
    R1Add {
        offset: usize,
        sign: Sign,
        over_first: bool,
    },
    R2Remove {
        chords: [ChordId; 2],
    },
    /// Inserts `x y` at `first` and `x y` (or `y x`) at `second`. The pair at
    /// `first` holds the over ends when `first_over`; `x` gets `sign`, `y`
    /// the opposite sign.
    R2Add {
        first: usize,
        second: usize,
        reversed: bool,
        first_over: bool,
        sign: Sign,
    },
    R3 {
        pairs: [usize; 3],
    },
}

impl VirtualMove {
    pub fn kind(&self) -> MoveKind {
        match self {
            VirtualMove::R1Remove { .. } => MoveKind::R1Remove,
            VirtualMove::R1Add { .. } => MoveKind::R1Add,
            VirtualMove::R2Remove { .. } => MoveKind::R2Remove,
            VirtualMove::R2Add { .. } => MoveKind::R2Add,
            VirtualMove::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VirtualApplied {
    pub diagram: VirtualGaussDiagram,
    pub inverse: VirtualMove,
    pub participants: Vec<ChordId>,
}

fn adjacent(d: &VirtualGaussDiagram) -> Vec<(usize, usize)> {
    let n = d.len();
    let count = match n {
        0 | 1 => 0,
        2 => 1,
        _ => n,
    };
    (0..count).map(|i| (i, (i + 1) % n)).collect()
}

fn disjoint(x: (usize, usize), y: (usize, usize)) -> bool {
    x.0 != y.0 && x.0 != y.1 && x.1 != y.0 && x.1 != y.1
}

fn unordered(a: ChordId, b: ChordId) -> (ChordId, ChordId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn mixed(d: &VirtualGaussDiagram) -> BTreeMap<(ChordId, ChordId), Vec<(usize, usize)>> {
    let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for (a, b) in adjacent(d) {
        let (ca, cb) = (d.ends()[a].0, d.ends()[b].0);
        if ca != cb {
            out.entry(unordered(ca, cb)).or_default().push((a, b));
        }
    }
    out
}

fn bigon_site(d: &VirtualGaussDiagram, c: ChordId, e: ChordId) -> Option<((usize, usize), (usize, usize))> {
    if d.signs().get(&c)? == d.signs().get(&e)? {
        return None;
    }
    let by = mixed(d);
    let pairs = by.get(&unordered(c, e))?;
    let role = |i: usize| d.ends()[i].1;
    for (i, &x) in pairs.iter().enumerate() {
        for &y in &pairs[i + 1..] {
            if disjoint(x, y) && role(x.0) == role(x.1) && role(y.0) == role(y.1) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Checks the sign and height conditions of a triangle given as three
/// adjacent pairs already known to cover three distinct chord pairs.
fn triangle_is_coherent(d: &VirtualGaussDiagram, spans: [(usize, usize); 3]) -> bool {
    let end = |i: usize| d.ends()[i];
    let kind = |(a, b): (usize, usize)| match (end(a).1, end(b).1) {
        (Role::Over, Role::Over) => 0,
        (Role::Under, Role::Under) => 2,
        _ => 1,
    };
    let mut by_level: [Option<(usize, usize)>; 3] = [None; 3];
    for s in spans {
        let k = kind(s);
        if by_level[k].is_some() {
            return false;
        }
        by_level[k] = Some(s);
    }
    let (Some(top), Some(mid), Some(bot)) = (by_level[0], by_level[1], by_level[2]) else {
        return false;
    };
    let chords = |(a, b): (usize, usize)| [end(a).0, end(b).0];
    let shared = |s: (usize, usize), t: (usize, usize)| {
        let ct = chords(t);
        chords(s).into_iter().find(|c| ct.contains(c))
    };
    let (Some(x), Some(y), Some(z)) = (shared(top, mid), shared(top, bot), shared(mid, bot)) else {
        return false;
    };
    let eps = |s: (usize, usize), first: ChordId| if end(s.0).0 == first { 1 } else { -1 };
    let (e_top, e_mid, e_bot) = (eps(top, x), eps(mid, x), eps(bot, y));
    let s = |c: ChordId| d.signs()[&c].value();
    s(x) * s(y) == e_mid * e_bot && s(x) * s(z) == e_top * e_bot
}

fn triangle_spans(d: &VirtualGaussDiagram, pairs: [usize; 3]) -> Option<[(usize, usize); 3]> {
    let n = d.len();
    if n < 2 || pairs.iter().any(|&a| a >= n) {
        return None;
    }
    let spans = pairs.map(|a| (a, (a + 1) % n));
    let sets: Vec<_> = spans
        .iter()
        .map(|&(a, b)| unordered(d.ends()[a].0, d.ends()[b].0))
        .collect();
    let chords: BTreeSet<ChordId> = sets.iter().flat_map(|&(a, b)| [a, b]).collect();
    let distinct: BTreeSet<_> = sets.iter().collect();
    let ok = sets.iter().all(|(a, b)| a != b)
        && distinct.len() == 3
        && chords.len() == 3
        && disjoint(spans[0], spans[1])
        && disjoint(spans[0], spans[2])
        && disjoint(spans[1], spans[2])
        && triangle_is_coherent(d, spans);
    ok.then_some(spans)
}

pub fn find_virtual_moves(d: &VirtualGaussDiagram, kind: MoveKind) -> Vec<VirtualMove> {
    let n = d.len();
    let offsets = n.max(1);
    let mut out = Vec::new();
    match kind {
        MoveKind::R1Remove => {
            let mut seen = BTreeSet::new();
            for (a, b) in adjacent(d) {
                let c = d.ends()[a].0;
                if c == d.ends()[b].0 && seen.insert(c) {
                    out.push(VirtualMove::R1Remove { chord: c });
                }
            }
        }
        MoveKind::R2Remove => {
            for &(c, e) in mixed(d).keys() {
                if bigon_site(d, c, e).is_some() {
                    out.push(VirtualMove::R2Remove { chords: [c, e] });
                }
            }
        }
        MoveKind::R3 => {
            let by = mixed(d);
            let keys: Vec<_> = by.keys().copied().collect();
            for (i, &(a, b)) in keys.iter().enumerate() {
                for &(a2, c) in &keys[i + 1..] {
                    if a2 != a || c == b {
                        continue;
                    }
                    let Some(third) = by.get(&unordered(b, c)) else {
                        continue;
                    };
                    for &x in &by[&(a, b)] {
                        for &y in &by[&(a, c)] {
                            for &z in third {
                                let pairs = [x.0, y.0, z.0];
                                if triangle_spans(d, pairs).is_some() {
                                    out.push(VirtualMove::R3 { pairs });
                                }
                            }
                        }
                    }
                }
            }
        }
        MoveKind::R1Add => {
            for offset in 0..offsets {
                for sign in [Sign::Plus, Sign::Minus] {
                    for over_first in [true, false] {
                        out.push(VirtualMove::R1Add {
                            offset,
                            sign,
                            over_first,
                        });
                    }
                }
            }
        }
        MoveKind::R2Add => {
            for first in 0..offsets {
                for second in first..offsets {
                    for reversed in [false, true] {
                        for first_over in [true, false] {
                            for sign in [Sign::Plus, Sign::Minus] {
                                out.push(VirtualMove::R2Add {
                                    first,
                                    second,
                                    reversed,
                                    first_over,
                                    sign,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn apply_virtual_move(d: &VirtualGaussDiagram, m: &VirtualMove) -> Result<VirtualGaussDiagram> {
    apply_virtual_move_traced(d, m).map(|a| a.diagram)
}

fn invalid(m: &VirtualMove, why: &str) -> Error {
    Error::InvalidInstance(format!("{m:?}: {why}"))
}

/// Removes chords; returns the new diagram and the insertion offset of each
/// removed position.
fn remove_tracking(d: &VirtualGaussDiagram, doomed: &[ChordId]) -> (VirtualGaussDiagram, Vec<usize>) {
    let mut offset_of = Vec::with_capacity(d.len());
    let mut kept = 0;
    for &(c, _) in d.ends() {
        offset_of.push(kept);
        if !doomed.contains(&c) {
            kept += 1;
        }
    }
    (d.remove_chords(&doomed.iter().copied().collect()), offset_of)
}

pub fn apply_virtual_move_traced(d: &VirtualGaussDiagram, m: &VirtualMove) -> Result<VirtualApplied> {
    let n = d.len();
    match *m {
        VirtualMove::R1Remove { chord } => {
            let (o, u) = d.arrow(chord)?;
            let first = if (o + 1) % n == u {
                o
            } else if (u + 1) % n == o {
                u
            } else {
                return Err(invalid(m, "chord ends are not adjacent"));
            };
            let (diagram, offsets) = remove_tracking(d, &[chord]);
            Ok(VirtualApplied {
                diagram,
                inverse: VirtualMove::R1Add {
                    offset: offsets[first],
                    sign: d.signs()[&chord],
                    over_first: first == o,
                },
                participants: vec![chord],
            })
        }
        VirtualMove::R2Remove { chords: [c, e] } => {
            let Some((x, y)) = bigon_site(d, c, e) else {
                return Err(invalid(m, "no removable bigon"));
            };
            let (diagram, offsets) = remove_tracking(d, &[c, e]);
            let (xc, xr) = d.ends()[x.0];
            Ok(VirtualApplied {
                diagram,
                inverse: VirtualMove::R2Add {
                    first: offsets[x.0],
                    second: offsets[y.0],
                    reversed: d.ends()[y.0].0 != xc,
                    first_over: xr == Role::Over,
                    sign: d.signs()[&xc],
                },
                participants: vec![c, e],
            })
        }
        VirtualMove::R3 { pairs } => {
            let Some(spans) = triangle_spans(d, pairs) else {
                return Err(invalid(m, "not a coherent triangle"));
            };
            let mut out = d.clone();
            for (a, b) in spans {
                out.ends_mut().swap(a, b);
            }
            let mut participants: Vec<ChordId> = spans
                .iter()
                .flat_map(|&(a, b)| [d.ends()[a].0, d.ends()[b].0])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            participants.sort();
            Ok(VirtualApplied {
                diagram: out,
                inverse: m.clone(),
                participants,
            })
        }
        VirtualMove::R1Add {
            offset,
            sign,
            over_first,
        } => {
            if offset > n {
                return Err(invalid(m, "offset out of range"));
            }
            let x = ChordId(d.max_label() + 1);
            let (r0, r1) = if over_first {
                (Role::Over, Role::Under)
            } else {
                (Role::Under, Role::Over)
            };
            let mut out = d.clone();
            out.ends_mut().splice(offset..offset, [(x, r0), (x, r1)]);
            out.signs_mut().insert(x, sign);
            Ok(VirtualApplied {
                diagram: out,
                inverse: VirtualMove::R1Remove { chord: x },
                participants: vec![x],
            })
        }
        VirtualMove::R2Add {
            first,
            second,
            reversed,
            first_over,
            sign,
        } => {
            if first > n || second > n {
                return Err(invalid(m, "offset out of range"));
            }
            let x = ChordId(d.max_label() + 1);
            let y = ChordId(d.max_label() + 2);
            let (ra, rb) = if first_over {
                (Role::Over, Role::Under)
            } else {
                (Role::Under, Role::Over)
            };
            let head = vec![(x, ra), (y, ra)];
            let tail = if reversed {
                vec![(y, rb), (x, rb)]
            } else {
                vec![(x, rb), (y, rb)]
            };
            let mut out = d.clone();
            let ends = out.ends_mut();
            if first == second {
                ends.splice(first..first, head.into_iter().chain(tail));
            } else if first > second {
                ends.splice(first..first, head);
                ends.splice(second..second, tail);
            } else {
                ends.splice(second..second, tail);
                ends.splice(first..first, head);
            }
            out.signs_mut().insert(x, sign);
            out.signs_mut().insert(y, sign.flip());
            Ok(VirtualApplied {
                diagram: out,
                inverse: VirtualMove::R2Remove { chords: [x, y] },
                participants: vec![x, y],
            })
        }
    }
}
