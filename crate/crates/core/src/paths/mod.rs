//! Boundary paths: lasso normal forms, shifts, tail equivalence and exact
//! counting of `Z(v) ∩ Orb_x`.

mod automaton;
mod enumerate;
mod lasso;

pub use automaton::{connector_automaton, orbit_intersection_size, Cardinality, ConnectorAutomaton, OrbitCount, Pump};
pub use enumerate::{enumerate_boundary_prefixes, enumerate_boundary_prefixes_from, BoundaryPrefix};
pub use lasso::{is_rotation, lasso_normalize, min_rotation, primitive_root, shift, tail_equivalent, LassoDocument, LassoPath, Tail};
pub(crate) use lasso::normalize_unchecked;
