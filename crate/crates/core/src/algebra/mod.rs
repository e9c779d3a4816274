//! Coefficient rings and the graph-valued modules that invariants land in.

mod laurent;
mod module;

pub use laurent::LaurentPoly;
pub use module::{graph_class, FModuleElement, Z2GElement};
