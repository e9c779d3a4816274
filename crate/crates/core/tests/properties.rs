use knotparity::algebra::Z2GElement;
use knotparity::enumerate::{random_knot, random_phrase, random_virtual};
use knotparity::invariants::{
    big_l_invariant, bracket, chord_types, eval_group, gamma_word, kauffman_bracket, l_invariant, source_sink,
    turaev_delta_bracket, x_even, ChordType, DeltaFilter,
};
use knotparity::moves::{
    apply_move_traced, apply_virtual_move_traced, find_moves, find_virtual_moves, random_walk, random_walk_virtual,
    reduce_r2, MoveKind,
};
use knotparity::parity::{gaussian_parity, index, GaussianParity};
use knotparity::projections::{f_map, gaussian_fixpoint};
use knotparity::{canonical_key, GaussPhrase, LongGaussDiagram, VirtualGaussDiagram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn knot() -> impl Strategy<Value = GaussPhrase> {
    (0usize..=7, any::<u64>()).prop_map(|(n, seed)| random_knot(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn phrase() -> impl Strategy<Value = GaussPhrase> {
    (0usize..=6, 1usize..=3, any::<u64>())
        .prop_map(|(n, k, seed)| random_phrase(&mut ChaCha8Rng::seed_from_u64(seed), n, k))
}

fn signed() -> impl Strategy<Value = VirtualGaussDiagram> {
    (0usize..=6, any::<u64>()).prop_map(|(n, seed)| random_virtual(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn text_round_trip(p in phrase(), d in signed()) {
        prop_assert_eq!(p.to_string().parse::<GaussPhrase>().unwrap(), p);
        prop_assert_eq!(d.to_string().parse::<VirtualGaussDiagram>().unwrap(), d);
    }

    #[test]
    fn linking_is_symmetric(p in phrase()) {
        for a in p.chords() {
            prop_assert!(!p.linked(a, a).unwrap());
            for b in p.chords() {
                prop_assert_eq!(p.linked(a, b).unwrap(), p.linked(b, a).unwrap());
            }
        }
    }

    #[test]
    fn moves_undo(p in phrase(), pick in any::<prop::sample::Index>()) {
        let moves: Vec<_> = MoveKind::ALL.iter().flat_map(|&k| find_moves(&p, k)).collect();
        let m = pick.get(&moves);
        let done = apply_move_traced(&p, m).unwrap();
        let back = apply_move_traced(&done.phrase, &done.inverse).unwrap();
        prop_assert_eq!(canonical_key(&back.phrase), canonical_key(&p));
    }

    #[test]
    fn virtual_moves_undo(d in signed(), pick in any::<prop::sample::Index>()) {
        let moves: Vec<_> = MoveKind::ALL.iter().flat_map(|&k| find_virtual_moves(&d, k)).collect();
        let m = pick.get(&moves);
        let done = apply_virtual_move_traced(&d, m).unwrap();
        let back = apply_virtual_move_traced(&done.diagram, &done.inverse).unwrap();
        prop_assert_eq!(back.diagram.canonical_key(), d.canonical_key());
    }

    #[test]
    fn reduction_is_idempotent(p in phrase()) {
        let r = reduce_r2(&p);
        prop_assert!(find_moves(&r, MoveKind::R2Remove).is_empty());
        prop_assert_eq!(canonical_key(&reduce_r2(&r)), canonical_key(&r));
    }

    #[test]
    fn index_refines_parity(d in signed()) {
        let parity = gaussian_parity(&d.base());
        for (c, k) in index(&d).iter() {
            prop_assert_eq!(parity.get(c), Some((k % 2) as u8));
        }
    }

    #[test]
    fn gaussian_fixpoint_is_all_even(p in knot()) {
        let (q, rounds) = gaussian_fixpoint(&p);
        prop_assert!(gaussian_parity(&q).all_even());
        prop_assert!(rounds <= p.chord_count());
        let once = f_map(&p, &GaussianParity).unwrap();
        prop_assert!(once.chord_count() >= q.chord_count());
    }

    #[test]
    fn odd_chords_have_one_type(p in knot()) {
        let parity = gaussian_parity(&p);
        for (c, t) in chord_types(&p) {
            prop_assert_eq!(t == ChordType::Even, parity.is_even(c));
        }
    }

    #[test]
    fn words_land_on_the_vertical_axis(p in knot()) {
        let g = eval_group(&gamma_word(&LongGaussDiagram::from_phrase(p.clone()).unwrap()));
        prop_assert_eq!(g.x, 0);
        prop_assert_eq!(g.y % 4, 0);
    }

    #[test]
    fn big_l_ignores_the_basepoint(p in knot(), shift in 0usize..16) {
        let mut d = LongGaussDiagram::from_phrase(p.clone()).unwrap();
        for _ in 0..shift {
            d = d.shift_basepoint();
        }
        prop_assert_eq!(l_invariant(&d).unwrap().unsigned_abs(), big_l_invariant(&p).unwrap());
    }

    #[test]
    fn source_sink_means_all_even(p in knot()) {
        prop_assert_eq!(source_sink(&p), gaussian_parity(&p).all_even());
    }

    #[test]
    fn z2_sum_is_an_involution(p in knot(), q in knot()) {
        let x = Z2GElement::class_of(&p, 1, false).unwrap();
        let y = Z2GElement::class_of(&q, 1, false).unwrap();
        prop_assert_eq!(x.z2_add(&y).unwrap(), y.z2_add(&x).unwrap());
        prop_assert!(x.z2_add(&y).unwrap().z2_add(&y).unwrap() == x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_walks(p in knot(), seed in any::<u64>()) {
        let q = random_walk(&p, 12, seed);
        let g = GaussianParity;
        prop_assert_eq!(bracket(&p, &g).unwrap(), bracket(&q, &g).unwrap());
        prop_assert_eq!(big_l_invariant(&p).unwrap(), big_l_invariant(&q).unwrap());
        prop_assert_eq!(
            turaev_delta_bracket(&p, DeltaFilter::All, &g).unwrap(),
            turaev_delta_bracket(&q, DeltaFilter::All, &g).unwrap()
        );
    }

    #[test]
    fn kauffman_ignores_bigons_and_triangles(d in signed(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kinds = [MoveKind::R2Add, MoveKind::R2Remove, MoveKind::R3];
        let e = random_walk_virtual(&d, 8, d.chord_count() + 4, &kinds, &mut rng);
        prop_assert_eq!(kauffman_bracket(&d), kauffman_bracket(&e));
        prop_assert_eq!(x_even(&d), x_even(&e));
    }

    #[test]
    fn x_even_survives_loops(d in signed(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_walk_virtual(&d, 8, d.chord_count() + 4, &MoveKind::ALL, &mut rng);
        prop_assert_eq!(x_even(&d), x_even(&e));
    }
}
