//! Parity-based invariants of free and virtual knots.
//!
//! Knots are encoded by Gauss diagrams: double-occurrence words on one or
//! more circles ([`GaussPhrase`]), optionally decorated with crossing signs
//! and over/under arrows ([`VirtualGaussDiagram`]). On top of that model the
//! crate provides
//!
//! - Reidemeister move detection, application and exhaustive move-space
//!   search ([`moves`]);
//! - parity functions (Gaussian, two-component, index hierarchy) and an
//!   axiom checker ([`parity`]);
//! - the odd-chord deleting projection and the index filtration
//!   ([`projections`]);
//! - exact Laurent polynomials and the graph-valued quotient modules used
//!   as invariant targets ([`algebra`]);
//! - the graph-valued brackets, the cobracket Δ, the even Kauffman
//!   bracket and the strip-group invariant ([`invariants`]).
//!
//! ```
//! use knotparity::{GaussPhrase, invariants, parity::GaussianParity};
//!
//! let trefoil: GaussPhrase = "1 2 3 1 2 3".parse().unwrap();
//! let bracket = invariants::bracket(&trefoil, &GaussianParity).unwrap();
//! // every chord is even, so the bracket collapses to the unknot class
//! assert!(bracket.is_single(&GaussPhrase::unknot()));
//! ```

pub mod algebra;
pub mod diagram;
pub mod enumerate;
mod error;
pub mod invariants;
pub mod moves;
pub mod parity;
pub mod projections;

pub use diagram::{
    canonical_key, CanonicalKey, ChordDiagram, ChordId, GaussPhrase, LongGaussDiagram, Pos, Role,
    Sign, Smoothing, VirtualGaussDiagram,
};
pub use error::{Error, Result};
