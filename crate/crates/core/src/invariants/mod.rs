//! Invariants of free and virtual knots: graph-valued brackets, the
//! cobracket Δ, Kauffman-type state sums, the strip-group word and
//! source-sink orientability.

mod brackets;
mod group;
mod kauffman;
mod orientation;

pub use brackets::{
    bracket, bracket_links, bracket_summands, even_smoothings, is_irreducibly_odd, turaev_delta,
    turaev_delta_bracket, DeltaFilter,
};
pub use group::{
    big_l_invariant, chord_type, chord_types, eval_group, gamma_word, l_invariant, ChordType,
    GammaWord, GroupElement, Letter,
};
pub use kauffman::{
    a_smoothing, even_kauffman, even_kauffman_with, kauffman_bracket, writhe, x_even,
};
pub use orientation::source_sink;
