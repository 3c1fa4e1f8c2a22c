//! Exact right-angle-crossing (RAC) drawing toolkit.
//!
//! * [`geometry`]: rational arithmetic and exact predicates.
//! * [`graph`]: graphs, drawings, augmented antiprisms and their extension.
//! * [`checker`]: crossing enumeration, RAC verdicts and necessary-condition
//!   diagnostics.
//! * [`embedding`]: rotation systems of planarized drawings.
//! * [`reduction`]: the 3-SAT gadget construction, drawing synthesis and
//!   assignment extraction.
//! * [`layout`]: numerical crossing-angle optimization and embedding surveys.
//! * [`io`]: JSON formats and SVG rendering.

pub mod geometry;
pub mod graph;
pub mod checker;
pub mod embedding;
pub mod reduction;
pub mod layout;
pub mod io;
