//! Decides whether the Kumjian–Pask algebra of a finite directed graph is
//! CCR, GCR but not CCR, or not GCR, from the topology of its orbit space, and
//! checks the supporting algebra on finite instances with exact arithmetic.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod paths;
pub mod topology;
pub mod family;
pub mod par;
pub mod field;
pub mod poly;
pub mod matrix;
pub mod group;
pub mod groupoid;
pub mod repn;
pub mod classify;
pub mod report;
