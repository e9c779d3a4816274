use crate::diagram::GaussPhrase;

/// Whether the edges can be oriented so that at every vertex one pair of
/// opposite half-edges points out and the other pair points in.
///
/// Along a component the orientation must flip at every vertex passage, so
/// a passage at offset `i` of component `k` is a source exactly when
/// `i + s_k` is even for some per-component bit `s_k`. The two passages of
/// one vertex must be of different kinds; the bits are found by
/// two-colouring the components.
pub fn source_sink(p: &GaussPhrase) -> bool {
    if p.components().iter().any(|c| c.len() % 2 == 1) {
        return false;
    }
    let n = p.components().len();
    // edges (a, b, w): s_a + s_b must equal w mod 2
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); n];
    for [x, y] in p.chord_positions().into_values() {
        let w = ((x.idx + y.idx + 1) % 2) as u8;
        adj[x.comp].push((y.comp, w));
        adj[y.comp].push((x.comp, w));
    }
    let mut colour: Vec<Option<u8>> = vec![None; n];
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(0);
        let mut stack = vec![root];
        while let Some(a) = stack.pop() {
            let ca = colour[a].unwrap();
            for &(b, w) in &adj[a] {
                let want = ca ^ w;
                match colour[b] {
                    None => {
                        colour[b] = Some(want);
                        stack.push(b);
                    }
                    Some(cb) if cb != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
