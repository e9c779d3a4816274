use std::collections::BTreeSet;

use crate::algebra::{FModuleElement, LaurentPoly};
use crate::diagram::resolve;
use crate::diagram::{ChordId, Sign, Smoothing, VirtualGaussDiagram};
use crate::error::Result;
use crate::parity::{GaussianParity, Parity};

pub fn writhe(d: &VirtualGaussDiagram) -> i64 {
    d.writhe()
}

/// The A-smoothing of a crossing: the oriented one at a positive crossing,
/// the unoriented one at a negative crossing. B is the other.
pub fn a_smoothing(sign: Sign) -> Smoothing {
    match sign {
        Sign::Plus => Smoothing::Split,
        Sign::Minus => Smoothing::Join,
    }
}

fn flip(s: Smoothing) -> Smoothing {
    match s {
        Smoothing::Split => Smoothing::Join,
        Smoothing::Join => Smoothing::Split,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Number of circles after smoothing every crossing. Half-edge `2e` is
/// the tail and `2e + 1` the head of edge `e`, which runs from position
/// `e` to the next one.
fn circle_count(d: &VirtualGaussDiagram, choices: &[(usize, usize, Smoothing)]) -> usize {
    let n = d.len();
    if n == 0 {
        return 1;
    }
    let mut uf = UnionFind::new(2 * n);
    for e in 0..n {
        uf.union(2 * e, 2 * e + 1);
    }
    let incoming = |p: usize| 2 * ((p + n - 1) % n) + 1;
    let outgoing = |p: usize| 2 * p;
    for &(p, q, s) in choices {
        match s {
            Smoothing::Split => {
                uf.union(incoming(p), outgoing(q));
                uf.union(incoming(q), outgoing(p));
            }
            Smoothing::Join => {
                uf.union(incoming(p), incoming(q));
                uf.union(outgoing(p), outgoing(q));
            }
        }
    }
    uf.classes()
}

/// Full state sum `Σ a^(α-β) δ^(γ-1)` over all `2^n` states.
pub fn kauffman_bracket(d: &VirtualGaussDiagram) -> LaurentPoly {
    let arrows: Vec<(ChordId, (usize, usize))> = d.arrows().into_iter().collect();
    let n = arrows.len();
    let delta = LaurentPoly::delta();
    let max_circles = n + 1;
    let powers: Vec<LaurentPoly> = (0..=max_circles as u32).map(|k| delta.pow(k)).collect();
    let mut total = LaurentPoly::zero();
    for mask in 0u64..(1u64 << n) {
        let mut choices = Vec::with_capacity(n);
        let mut alpha_minus_beta = 0i32;
        for (i, &(c, (o, u))) in arrows.iter().enumerate() {
            let a = a_smoothing(d.signs()[&c]);
            let s = if mask >> i & 1 == 0 {
                alpha_minus_beta += 1;
                a
            } else {
                alpha_minus_beta -= 1;
                flip(a)
            };
            choices.push((o, u, s));
        }
        let circles = circle_count(d, &choices);
        total += &powers[circles - 1].shift(alpha_minus_beta);
    }
    total
}

/// State sum over the chords `parity` calls even. Odd chords survive as
/// vertices of a free graph, normalized in the loop-quotient module.
pub fn even_kauffman_with<P: Parity<VirtualGaussDiagram>>(d: &VirtualGaussDiagram, parity: &P) -> Result<FModuleElement> {
    let even = parity.parity(d)?.even_chords();
    let base = d.base();
    let mut out = FModuleElement::zero();
    for mask in 0u64..(1u64 << even.len()) {
        let mut a_count = 0i32;
        let mut chosen = BTreeSet::new();
        for (i, &c) in even.iter().enumerate() {
            if mask >> i & 1 == 0 {
                a_count += 1;
                chosen.insert(c);
            }
        }
        let state = |c: ChordId| {
            let sign = d.signs().get(&c)?;
            if !even.contains(&c) {
                return None;
            }
            let a = a_smoothing(*sign);
            Some(if chosen.contains(&c) { a } else { flip(a) })
        };
        let smoothed = resolve(&base, state);
        let exp = 2 * a_count - even.len() as i32;
        out.add_term(&smoothed, &LaurentPoly::monomial(1, exp));
    }
    Ok(out)
}

pub fn even_kauffman(d: &VirtualGaussDiagram) -> FModuleElement {
    even_kauffman_with(d, &GaussianParity).expect("gaussian parity is total")
}

/// `(-a)^(-3w)` times the even bracket.
pub fn x_even(d: &VirtualGaussDiagram) -> FModuleElement {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    even_kauffman(d).scale(&LaurentPoly::monomial(sign, (-3 * w) as i32))
}
